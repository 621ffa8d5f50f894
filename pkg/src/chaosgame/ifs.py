"""Affine iterated function systems, orbits, and attractor point clouds.

Everything here lives in R^d with affine Banach contractions.  The
attractor is approximated by a finite "cloud" of points that all lie on
the attractor exactly (each one is a finite composition of the maps
applied to a fixed point of the first map), together with a certified
resolution: every attractor point is within `resolution` of some cloud
point.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .errors import CapExceededError, ValidationError

_MAGIC = b"IFSC"
_FORMAT_VERSION = 1

DEFAULT_POINT_BUDGET = 2 ** 24


def _as_vector(x, dim):
    v = np.atleast_1d(np.asarray(x, dtype=float))
    if v.shape != (dim,):
        raise ValidationError(f"expected a {dim}-vector, got shape {v.shape}")
    return v


@dataclass(frozen=True)
class AffineMap:
    """x -> matrix @ x + offset with a certified Lipschitz upper bound."""

    matrix: np.ndarray
    offset: np.ndarray
    lip: float

    @classmethod
    def create(cls, matrix, offset) -> "AffineMap":
        matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
        offset = np.atleast_1d(np.asarray(offset, dtype=float))
        if matrix.shape[0] != matrix.shape[1] or matrix.shape[0] != offset.shape[0]:
            raise ValidationError("matrix must be d x d and offset a d-vector")
        # Operator 2-norm (largest singular value) is an exact Lipschitz
        # constant for an affine map; bump it by one ulp so it is a
        # certified upper bound under floating point.
        lip = float(np.linalg.norm(matrix, 2)) * (1.0 + 1e-12)
        if lip >= 1.0:
            raise ValidationError(
                f"not a contraction: Lipschitz constant {lip:.6g} >= 1"
            )
        return cls(matrix=matrix, offset=offset, lip=lip)

    @property
    def dim(self) -> int:
        return self.offset.shape[0]

    def __call__(self, x):
        """Apply to a single d-vector or to an (n, d) batch."""
        x = np.asarray(x, dtype=float)
        if x.ndim == 1:
            return self.matrix @ x + self.offset
        return x @ self.matrix.T + self.offset


def scalar_map(a: float, b: float) -> AffineMap:
    """1-d convenience: x -> a*x + b."""
    return AffineMap.create([[a]], [b])


@dataclass(frozen=True)
class IfsSystem:
    """An ordered list of affine contractions; symbols are 1-based."""

    maps: tuple
    dim: int
    lip_max: float

    @classmethod
    def create(cls, maps) -> "IfsSystem":
        maps = tuple(maps)
        if len(maps) < 1:
            raise ValidationError("an IFS needs at least one map")
        dim = maps[0].dim
        if any(m.dim != dim for m in maps):
            raise ValidationError("all maps must share the same dimension")
        return cls(maps=maps, dim=dim, lip_max=max(m.lip for m in maps))

    @property
    def alphabet_size(self) -> int:
        return len(self.maps)

    def map_for(self, symbol: int) -> AffineMap:
        if not 1 <= symbol <= len(self.maps):
            raise ValidationError(f"invalid symbol {symbol}, alphabet is 1..{len(self.maps)}")
        return self.maps[symbol - 1]


# Canonical systems used throughout tests and presets.

def cantor_ifs() -> IfsSystem:
    """{x/3, x/3 + 2/3}: middle-thirds Cantor set on [0, 1]."""
    return IfsSystem.create([scalar_map(1 / 3, 0.0), scalar_map(1 / 3, 2 / 3)])


def segment_ifs() -> IfsSystem:
    """{x/2, x/2 + 1/2}: attractor is the unit interval."""
    return IfsSystem.create([scalar_map(0.5, 0.0), scalar_map(0.5, 0.5)])


def halving_ifs() -> IfsSystem:
    """{x/2, constant 1}: attractor {0} union {2^-n}."""
    return IfsSystem.create([scalar_map(0.5, 0.0), scalar_map(0.0, 1.0)])


def sierpinski_ifs() -> IfsSystem:
    """Three planar similitudes with ratio 1/2 (Sierpinski triangle)."""
    h = np.sqrt(3.0) / 2.0
    half = 0.5 * np.eye(2)
    return IfsSystem.create([
        AffineMap.create(half, [0.0, 0.0]),
        AffineMap.create(half, [0.5, 0.0]),
        AffineMap.create(half, [0.25, 0.5 * h]),
    ])


def fixed_point(m: AffineMap) -> np.ndarray:
    """Unique fixed point of a contraction; linear solve with iterative fallback."""
    eye = np.eye(m.dim)
    try:
        x = np.linalg.solve(eye - m.matrix, m.offset)
    except np.linalg.LinAlgError:
        x = np.zeros(m.dim)
        for _ in range(10 ** 6):
            nxt = m(x)
            if np.linalg.norm(nxt - x) <= 1e-14 * (1.0 + np.linalg.norm(nxt)):
                x = nxt
                break
            x = nxt
        else:
            raise ValidationError("no contraction: fixed-point iteration did not converge")
    resid = np.linalg.norm(m(x) - x)
    if resid > 1e-10 * (1.0 + np.linalg.norm(x)):
        raise ValidationError(f"fixed point residual too large: {resid:.3g}")
    return x


@dataclass(frozen=True)
class Orbit:
    """Chaos-game orbit: points[k] = f_{driver_prefix[k-1]}(points[k-1])."""

    start: np.ndarray
    points: np.ndarray          # (n+1, d)
    driver_prefix: np.ndarray   # (n,) symbols actually consumed

    def __len__(self):
        return self.points.shape[0]


def run_orbit(ifs: IfsSystem, driver, x0, n: int) -> Orbit:
    """Run the deterministic chaos game for n steps, consuming n symbols."""
    if n < 0:
        raise ValidationError("orbit length must be >= 0")
    x0 = _as_vector(x0, ifs.dim)
    symbols = np.asarray(driver.take(n), dtype=np.int64)
    pts = np.empty((n + 1, ifs.dim))
    pts[0] = x0
    x = x0
    for k, s in enumerate(symbols, start=1):
        x = ifs.map_for(int(s))(x)
        pts[k] = x
    return Orbit(start=x0, points=pts, driver_prefix=symbols)


def _diameter(points: np.ndarray) -> float:
    """Max pairwise distance; exact via convex hull where possible."""
    if points.shape[0] == 1:
        return 0.0
    if points.shape[1] == 1:
        return float(points.max() - points.min())
    candidates = points
    if points.shape[0] > 64:
        try:
            from scipy.spatial import ConvexHull

            candidates = points[ConvexHull(points).vertices]
        except Exception:
            # Degenerate (e.g. collinear) input: keep coordinate extremes.
            idx = np.unique(np.concatenate([points.argmin(axis=0), points.argmax(axis=0)]))
            candidates = points[idx]
    diff = candidates[:, None, :] - candidates[None, :, :]
    return float(np.sqrt((diff ** 2).sum(axis=2)).max())


def _lexsort_points(points: np.ndarray) -> np.ndarray:
    order = np.lexsort(points.T[::-1])
    return points[order]


def _dedupe(points: np.ndarray, threshold: float) -> np.ndarray:
    """Keep the lexicographically-first point of every cluster of radius threshold."""
    if points.shape[0] >= 2:
        # Exact duplicates first (cheap, and maps with collapsing branches
        # can produce huge numbers of them); np.unique keeps the sort order.
        points = np.unique(points, axis=0)
    if threshold <= 0 or points.shape[0] < 2:
        return points
    tree = cKDTree(points)
    pairs = tree.query_pairs(threshold, output_type="ndarray")
    drop = np.zeros(points.shape[0], dtype=bool)
    if pairs.size:
        lo = pairs.min(axis=1)
        hi = pairs.max(axis=1)
        # Greedy in canonical order: a point is dropped iff a kept earlier
        # point sits within the threshold.
        order = np.argsort(lo, kind="stable")
        for a, b in zip(lo[order], hi[order]):
            if not drop[a]:
                drop[b] = True
    return points[~drop]


@dataclass(frozen=True)
class AttractorCloud:
    """Finite subset of the attractor with a certified covering radius."""

    points: np.ndarray      # (n, d), sorted lexicographically
    resolution: float       # every attractor point is within this of the cloud
    depth: int
    diam_lower: float       # max pairwise distance over cloud points
    diam_upper: float       # certified upper bound on diam A
    grid: cKDTree = field(repr=False, compare=False)

    @classmethod
    def from_points(cls, points, resolution: float, depth: int = 0,
                    diam_upper: float | None = None) -> "AttractorCloud":
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if points.ndim == 1:
            points = points[:, None]
        points = _lexsort_points(points)
        diam_lower = _diameter(points)
        if diam_upper is None:
            diam_upper = diam_lower + 2.0 * resolution
        return cls(points=points, resolution=float(resolution), depth=depth,
                   diam_lower=diam_lower, diam_upper=float(diam_upper),
                   grid=cKDTree(points))

    @property
    def size(self) -> int:
        return self.points.shape[0]


def _hutchinson_points(ifs: IfsSystem, depth: int) -> np.ndarray:
    """All K^depth compositions f_{w_1} o ... o f_{w_depth} applied to the
    fixed point of the first map; every output lies on the attractor."""
    pts = fixed_point(ifs.maps[0])[None, :]
    for _ in range(depth):
        pts = np.concatenate([m(pts) for m in ifs.maps], axis=0)
    return pts


def build_cloud(ifs: IfsSystem, target_resolution: float,
                point_budget: int = DEFAULT_POINT_BUDGET) -> AttractorCloud:
    """Smallest-depth cloud whose certified resolution meets the target.

    The certificate: every point of A is within L^m * diam A of some
    depth-m composition point, and diam A <= diam_lower / (1 - 2 L^m)
    once 2 L^m < 1 (each attractor point is within L^m diam A of the
    cloud, so the cloud's spread can undershoot by at most twice that).
    """
    if target_resolution <= 0:
        raise ValidationError("target resolution must be positive")
    L = ifs.lip_max
    K = ifs.alphabet_size
    depth = 0
    pts = _hutchinson_points(ifs, 0)
    while True:
        depth += 1
        if K ** depth > point_budget:
            raise CapExceededError(
                f"resolution infeasible: depth {depth} needs {K ** depth} points, "
                f"budget is {point_budget}"
            )
        pts = np.concatenate([m(pts) for m in ifs.maps], axis=0)
        shrink = L ** depth
        if 2.0 * shrink >= 1.0:
            continue
        diam_lower = _diameter(pts)
        diam_upper = diam_lower / (1.0 - 2.0 * shrink)
        resolution = shrink * diam_upper
        if resolution <= target_resolution or diam_upper == 0.0:
            break
    pts = _lexsort_points(pts)
    pts = _dedupe(pts, resolution / 4.0)
    return AttractorCloud(points=pts, resolution=resolution, depth=depth,
                          diam_lower=diam_lower, diam_upper=diam_upper,
                          grid=cKDTree(pts))


def cloud_at_depth(ifs: IfsSystem, depth: int,
                   point_budget: int = DEFAULT_POINT_BUDGET,
                   dedupe: bool = True) -> AttractorCloud:
    """Cloud from all depth-m compositions, with the same certificate."""
    K = ifs.alphabet_size
    if K ** depth > point_budget:
        raise CapExceededError("resolution infeasible: point budget exceeded")
    L = ifs.lip_max
    pts = _lexsort_points(_hutchinson_points(ifs, depth))
    diam_lower = _diameter(pts)
    shrink = L ** depth
    if 2.0 * shrink >= 1.0:
        raise ValidationError(f"depth {depth} too shallow to certify a diameter bound")
    diam_upper = diam_lower / (1.0 - 2.0 * shrink)
    resolution = shrink * diam_upper
    if dedupe:
        pts = _dedupe(pts, resolution / 4.0)
    return AttractorCloud(points=pts, resolution=resolution, depth=depth,
                          diam_lower=diam_lower, diam_upper=diam_upper,
                          grid=cKDTree(pts))


def hausdorff_distance(set_a, set_b, grid_b: cKDTree | None = None) -> float:
    """Symmetric Hausdorff distance between two finite point sets."""
    a = np.atleast_2d(np.asarray(set_a, dtype=float))
    b = np.atleast_2d(np.asarray(set_b, dtype=float))
    if a.ndim == 1:
        a = a[:, None]
    if b.ndim == 1:
        b = b[:, None]
    if a.shape[0] == 0 or b.shape[0] == 0:
        raise ValidationError("Hausdorff distance needs nonempty sets")
    tree_b = grid_b if grid_b is not None else cKDTree(b)
    d_ab = tree_b.query(a)[0].max()
    d_ba = cKDTree(a).query(b)[0].max()
    return float(max(d_ab, d_ba))


def directed_hausdorff(set_a, set_b) -> float:
    """sup over a in A of dist(a, B)."""
    a = np.atleast_2d(np.asarray(set_a, dtype=float))
    b = np.atleast_2d(np.asarray(set_b, dtype=float))
    return float(cKDTree(b).query(a)[0].max())


def write_cloud(path, cloud: AttractorCloud) -> None:
    """Binary cache: IFSC magic, version, dim, count, resolution, depth, floats.

    Little-endian throughout; identical clouds serialize byte-identically.
    """
    pts = np.ascontiguousarray(cloud.points, dtype="<f8")
    header = _MAGIC + struct.pack(
        "<IIQdI", _FORMAT_VERSION, pts.shape[1], pts.shape[0],
        cloud.resolution, cloud.depth,
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(pts.tobytes(order="C"))


def read_cloud(path) -> AttractorCloud:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _MAGIC:
            raise ValidationError(f"bad cloud cache magic {magic!r}")
        version, dim, count, resolution, depth = struct.unpack("<IIQdI", fh.read(28))
        if version != _FORMAT_VERSION:
            raise ValidationError(f"unsupported cloud cache version {version}")
        data = np.frombuffer(fh.read(count * dim * 8), dtype="<f8").reshape(count, dim)
    return AttractorCloud.from_points(data.copy(), resolution=resolution, depth=depth)
