"""Photon-number probes vs two-mode N00N probes against thermal noise.

The N00N bound beats the number-state error exactly while the per-mode photon
number stays below arccosh(2)/beta.  Above it, even the *lower* bound on the
N00N error sits above the number-state error, so the entangled probe cannot
win at any copy count.
"""

import targetdetect as td

beta = 0.05
noise = td.NoiseSpec(beta=beta)
n_star = td.noon_threshold(noise)
print(f"thermal noise beta = {beta} (about {noise.n_b:.1f} thermal photons)")
print(f"N00N advantage threshold: n* = {n_star:.3f} photons per mode")
print()

for n in (20, 100):
    side = "below" if n < n_star else "above"
    print(f"n = {n} ({side} threshold)")
    print(f"{'copies':>7} {'number exact':>14} {'noon upper':>14} {'noon lower':>14}")
    for m in (1, 10, 50, 200):
        print(
            f"{m:>7} {td.number_state_error(n, noise, m):>14.3e} "
            f"{td.noon_qcb(n, noise, m):>14.3e} {td.noon_lower(n, noise, m):>14.3e}"
        )
    lower_wins = all(
        td.noon_lower(n, noise, m) < td.number_state_error(n, noise, m)
        for m in range(1, 201)
    )
    print(f"  noon lower bound below number-state error for every m <= 200: {lower_wins}")
    print()

print("cross-check against the brute-force oracle at n = 2, one copy:")
pair = td.target_pair_bipartite(td.noon_ket(2), noise, compress_idler=True)
upper = td.chernoff_bound(pair)
lower = td.bhattacharyya_lower(pair)
print(f"  oracle upper {upper.value:.12e} (minimizing s = {upper.s_star:.3f})"
      f" vs closed form {td.noon_qcb(2, noise, 1):.12e}")
print(f"  oracle lower {lower.value:.12e} vs closed form {td.noon_lower(2, noise, 1):.12e}")
