"""Recovery times: how long an orbit takes to cover the attractor at scale eps.

The deterministic chaos game iterates x_k = f_{s_k}(x_{k-1}) along a driver
sequence.  The recovery time n(eps) is the least n such that closed eps-balls
around x_0..x_n cover the attractor.  With a fast (disjunctive) driver the
log rate ln(n)/ln(1/eps) approaches ln(K)/ln(1/L); with the sparse block
driver it can be made as slow as any prescribed rate.
"""

import math

import chaosgame as cg


def main() -> None:
    cantor = cg.cantor_ifs()
    cloud = cg.build_cloud(cantor, 1e-6)
    print("Ternary system + concatenation driver, x0 = 0:")
    print("  eps        n        ln(n)/ln(1/eps)")
    for m in range(4, 11):
        eps = 3.0 ** -m
        rec = cg.recovery_time(cantor, cg.champernowne(2), [0.0], eps, cloud)
        print(f"  3^-{m:<2}    {rec.n:<8} {cg.log_rate(rec.n, eps):.4f}")
    print(f"  (limit ln2/ln3 = {math.log(2) / math.log(3):.4f}; convergence "
          "from above is slow)")

    print("\nSame system, de Bruijn driver (near-optimal coverage):")
    for m in (6, 8, 10):
        eps = 3.0 ** -m
        rec = cg.recovery_time(cantor, cg.infinite_de_bruijn(2), [0.0], eps,
                               cloud)
        print(f"  3^-{m:<2}    n = {rec.n:<8} vs 2.5 * 2^{m} = {2.5 * 2 ** m:g}")

    print("\nKey inequality: n + 1 >= covering number N(eps) (packing bound):")
    eps = 3.0 ** -6
    rec = cg.recovery_time(cantor, cg.champernowne(2), [0.0], eps, cloud)
    cover = cg.covering_estimate(cloud.points, eps)
    print(f"  eps = 3^-6: n + 1 = {rec.n + 1}, "
          f"N(eps) in [{cover.lower}, {cover.upper}] -> "
          f"{cg.key_inequality_check(rec, cover)}")


if __name__ == "__main__":
    main()
