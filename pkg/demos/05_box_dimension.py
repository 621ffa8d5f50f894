"""Box-counting dimension from covering-number brackets on a point cloud.

covering_estimate returns a certified bracket [lower, upper] for the covering
number N(eps): the lower bound comes from a maximal 2*eps-separated packing,
the upper from a greedy point-centered net.  The dimension estimate is the
slope of ln N against ln(1/eps) over a geometric ladder of radii.
"""

import math

import chaosgame as cg


def main() -> None:
    print("Unit segment (expected dimension 1):")
    cloud = cg.build_cloud(cg.segment_ifs(), 1e-4)
    est = cg.box_dimension(cloud, 1.0, 0.5, 4, 10)
    for sample, rl, ru in zip(est.samples, est.rates_lower, est.rates_upper):
        print(f"  eps = {sample.eps:.3g}: N in [{sample.lower}, "
              f"{sample.upper}], rate in [{rl:.4f}, {ru:.4f}]")
    print(f"  estimate: {est.value:.4f}")

    print("\nMiddle-thirds dust (expected ln2/ln3 = "
          f"{math.log(2) / math.log(3):.4f}):")
    cloud = cg.build_cloud(cg.cantor_ifs(), 1.5e-6)
    est = cg.box_dimension(cloud, 1.0, 1 / 3, 4, 10)
    for sample, rl, ru in zip(est.samples, est.rates_lower, est.rates_upper):
        print(f"  eps = {sample.eps:.3g}: N in [{sample.lower}, "
              f"{sample.upper}], rate in [{rl:.4f}, {ru:.4f}]")
    print(f"  estimate: {est.value:.4f}")


if __name__ == "__main__":
    main()
