"""Attractor point clouds: certified resolution, diameter brackets, caching.

Every cloud point lies exactly on the attractor (it is an orbit of a fixed
point), and every attractor point lies within `resolution` of some cloud
point.  Refining the cloud never moves points away from the coarse cloud by
more than the coarse resolution, which this script checks directly.
"""

import tempfile
from pathlib import Path

import chaosgame as cg


def main() -> None:
    cantor = cg.cantor_ifs()
    print("Two-map ternary system: x/3 and x/3 + 2/3")
    for target in (1e-2, 1e-4, 1e-6):
        cloud = cg.build_cloud(cantor, target)
        print(f"  target {target:g}: {cloud.size} points at depth "
              f"{cloud.depth}, certified resolution {cloud.resolution:.3g}, "
              f"diameter in [{cloud.diam_lower:.6f}, {cloud.diam_upper:.6f}]")

    coarse = cg.build_cloud(cantor, 1e-3)
    fine = cg.build_cloud(cantor, 1e-5)
    gap = cg.directed_hausdorff(fine.points, coarse.points)
    print(f"\nRefinement soundness: every fine point is within "
          f"{gap:.3g} of the coarse cloud (certified bound "
          f"{coarse.resolution:.3g})")

    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "cantor.ifsc"
        cg.write_cloud(path, fine)
        loaded = cg.read_cloud(path)
        print(f"\nCache round-trip: {path.stat().st_size} bytes, "
              f"{loaded.size} points, "
              f"identical={bool((loaded.points == fine.points).all())}")


if __name__ == "__main__":
    main()
