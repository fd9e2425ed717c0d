"""Distinguishing a completely depolarizing channel from an identity channel.

Entangled probes help: a maximally entangled d x d input drops the error from
1/(2d) to 1/(2d^2), and a Werner input beats the best single-party probe as
soon as its entangled weight exceeds d/(d+1).  Every closed form is checked
against the brute-force trace-norm computation on the spot.
"""

import targetdetect as td

print("single-copy error probabilities, depolarizing vs identity")
print(f"{'d':>3} {'pure input':>12} {'entangled input':>16} {'oracle (pure)':>14}")
for d in (2, 3, 4, 5):
    pure = td.depolarizing_error(d, td.DepolarizingInput.PURE)
    ent = td.depolarizing_error(d, td.DepolarizingInput.MAX_ENTANGLED)
    pair = td.depolarizing_pair(td.number_ket(0, cutoff=d - 1))
    oracle = td.helstrom_error(pair).value
    print(f"{d:>3} {pure:>12.6f} {ent:>16.6f} {oracle:>14.6f}")

print()
print("Werner probes on d = 3: mixing weight vs error")
d = 3
x_star = td.werner_advantage_threshold(d)
print(f"advantage over the best pure single-party probe requires x > {x_star:.4f}")
print(f"{'x':>6} {'closed form':>12} {'oracle':>12} {'beats pure?':>12}")
for x in (0.0, 0.25, 0.5, x_star, 0.8, 1.0):
    closed = td.depolarizing_error(d, td.DepolarizingInput.WERNER, x=x)
    pair = td.depolarizing_pair(td.werner_state(d, x), bipartite=True)
    oracle = td.helstrom_error(pair).value
    beats = closed < td.depolarizing_error(d, td.DepolarizingInput.PURE)
    print(f"{x:>6.3f} {closed:>12.6f} {oracle:>12.6f} {str(beats):>12}")

print()
print("at the threshold weight the Werner probe exactly matches the pure probe:")
at_star = td.depolarizing_error(d, td.DepolarizingInput.WERNER, x=x_star)
print(f"  error({x_star:.4f}) = {at_star:.10f} = 1/(2*{d}) = {1/(2*d):.10f}")
