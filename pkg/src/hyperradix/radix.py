"""Radix form of plane points and the fundamental domain of a base.

The fundamental domain is the set of pure fractional tails
``sum_{i>=1} mu_i q^-i``.  It is compact when ``q^-1`` has lattice norm
below one; the same factor ``r`` bounds the truncation error of a depth-``n``
expansion by ``D_P * r**n`` where ``D_P`` is the norm bound over the unit
cell of the lattice.
"""

from __future__ import annotations

import enum
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .algebra import DNum, HNum, format_rat, norm_A, norm_D
from .errors import CapExceeded, NoContraction
from .numsys import Base, DigitString, Family, digit_set, encode
from .rings import DGaussInt, HInt, gd

Point = Union[HNum, DNum]

GOLDEN = (1 + math.sqrt(5)) / 2


class BoundKind(enum.Enum):
    EXACT_NORM_D = "ExactNormD"
    DUAL_SQRT3_OVER_A = "DualSqrt3OverA"


@dataclass(frozen=True)
class ContractionReport:
    r: Union[Fraction, float]
    ok: bool
    bound_used: BoundKind
    paper_bound: Optional[float] = None


@dataclass(frozen=True)
class CellSplit:
    lattice: object
    frac: tuple


@dataclass
class DomainCloud:
    """Exact point cloud: point ``i`` is ``(num1[i]/den1, num2[i]/den2)``.

    ``basis`` is ``"idem"`` (idempotent coordinates) for hyperbolic bases and
    ``"std"`` for dual bases.
    """

    base: Base
    depth: int
    num1: np.ndarray
    num2: np.ndarray
    den1: int
    den2: int
    basis: str
    bbox: tuple
    sampled: bool
    seed: Optional[int] = None

    def __len__(self):
        return len(self.num1)

    def points(self) -> list[tuple[Fraction, Fraction]]:
        return [
            (Fraction(int(a), self.den1), Fraction(int(b), self.den2))
            for a, b in zip(self.num1, self.num2)
        ]

    def hull(self) -> tuple:
        """Exact componentwise interval hull of the points."""
        return (
            (Fraction(int(self.num1.min()), self.den1), Fraction(int(self.num1.max()), self.den1)),
            (Fraction(int(self.num2.min()), self.den2), Fraction(int(self.num2.max()), self.den2)),
        )

    def inside_bbox(self) -> bool:
        """Exact containment test against ``bbox`` (integer cross-multiplication)."""
        (lo1, hi1), (lo2, hi2) = self.bbox
        return _within(self.num1, self.den1, lo1, hi1) and _within(self.num2, self.den2, lo2, hi2)


def _within(nums: np.ndarray, den: int, lo: Fraction, hi: Fraction) -> bool:
    nmin, nmax = int(nums.min()), int(nums.max())
    return nmin * lo.denominator >= lo.numerator * den and nmax * hi.denominator <= hi.numerator * den


# --------------------------------------------------------------------------
# Norms and contraction


def lattice_norm(base: Base, z: Point):
    """``norm_D`` (exact) for hyperbolic bases, ``norm_A`` (float) for dual ones."""
    if base.ring == "GA":
        return norm_A(z if isinstance(z, DNum) else z.to_dnum())
    return norm_D(z if isinstance(z, HNum) else z.to_hnum())


def cell_diameter(base: Base):
    """Norm bound ``D_P`` over the half-open unit cell of the base's lattice."""
    if base.ring == "ZD":
        return Fraction(1)
    if base.ring == "GD":
        # max(|x + y|, |x - y|) over [0, 1)^2
        return Fraction(2)
    return GOLDEN


def contraction(base: Base) -> ContractionReport:
    if base.ring == "GA":
        a = base.q.x
        if a == 0:
            return ContractionReport(math.inf, False, BoundKind.DUAL_SQRT3_OVER_A, math.inf)
        r = norm_A(base.q_inverse())
        return ContractionReport(r, r < 1, BoundKind.DUAL_SQRT3_OVER_A, math.sqrt(3) / abs(a))
    q = base.q
    if q.n1 == 0 or q.n2 == 0:
        return ContractionReport(math.inf, False, BoundKind.EXACT_NORM_D)
    r = max(Fraction(1, abs(q.n1)), Fraction(1, abs(q.n2)))
    return ContractionReport(r, r < 1, BoundKind.EXACT_NORM_D)


def error_bound(base: Base, depth: int):
    """``D_P * r**depth``; exact for hyperbolic bases."""
    rep = contraction(base)
    if not rep.ok:
        raise NoContraction(f"{base} is not contracting (r = {rep.r})")
    return cell_diameter(base) * rep.r**depth


# --------------------------------------------------------------------------
# Cells and expansions


def cell_split(z: Point, base: Base) -> CellSplit:
    """``z = lattice + frac`` with ``frac`` in the half-open unit cell."""
    if base.ring == "ZD":
        z = _as_hnum(z)
        f1, f2 = math.floor(z.p1), math.floor(z.p2)
        return CellSplit(HInt(f1, f2), (z.p1 - f1, z.p2 - f2))
    if base.ring == "GD":
        z = _as_hnum(z)
        x, y = z.x, z.y
        fx, fy = math.floor(x), math.floor(y)
        return CellSplit(gd(fx, fy), (x - fx, y - fy))
    z = _as_dnum(z)
    fx, fy = math.floor(z.x), math.floor(z.y)
    return CellSplit(DGaussInt(fx, fy), (z.x - fx, z.y - fy))


def _as_hnum(z) -> HNum:
    if isinstance(z, HNum):
        return z
    if isinstance(z, (int, Fraction)):
        return HNum.scalar(z)
    return z.to_hnum()


def _as_dnum(z) -> DNum:
    if isinstance(z, DNum):
        return z
    if isinstance(z, (int, Fraction)):
        return DNum.scalar(z)
    return z.to_dnum()


def to_point(base: Base, z) -> Point:
    return _as_dnum(z) if base.ring == "GA" else _as_hnum(z)


def expand_point(z, base: Base, depth: int) -> DigitString:
    """Depth-``depth`` radix expansion of an exact plane point.

    Scales by ``q**depth``, floors to the lattice, encodes the lattice part
    and shifts the radix point.  The returned string is within
    :func:`error_bound` of ``z``; ``exact`` is set when nothing was floored
    away.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    rep = contraction(base)
    if not rep.ok:
        raise NoContraction(f"{base} is not contracting (r = {rep.r})")
    z = to_point(base, z)
    w = z * (base.q_plane() ** depth)
    split = cell_split(w, base)
    digits = [] if split.lattice == base.zero() else list(encode(split.lattice, base).int_digits)
    zero_digit = HInt(0, 0) if base.family is Family.HYPER_NH else 0
    digits += [zero_digit] * max(0, depth - len(digits))
    int_digits = tuple(digits[depth:])
    frac_digits = tuple(reversed(digits[:depth]))
    exact = split.frac[0] == 0 and split.frac[1] == 0
    return DigitString(base, int_digits, frac_digits, exact)


# --------------------------------------------------------------------------
# Fundamental domain


def fd_bbox(base: Base) -> tuple:
    """Exact componentwise hull of the fundamental domain."""
    rep = contraction(base)
    if not rep.ok:
        raise NoContraction(f"{base} is not contracting (r = {rep.r})")
    if base.ring == "GA":
        a, b = base.q.x, base.q.y
        dmax = base.digit_count - 1
        real = _scalar_hull(a, dmax)
        x = Fraction(1, a)
        y = x * x
        odd = -b * y * (1 + y) / (1 - y) ** 2
        even = -b * x * 2 * y / (1 - y) ** 2
        lo = dmax * (min(odd, 0) + min(even, 0))
        hi = dmax * (max(odd, 0) + max(even, 0))
        return real, (lo, hi)
    d1, d2 = _digit_extent(base)
    return _scalar_hull(base.q.n1, d1), _scalar_hull(base.q.n2, d2)


def _digit_extent(base: Base) -> tuple[int, int]:
    if base.family is Family.HYPER_NH:
        return abs(base.q.n1) - 1, abs(base.q.n2) - 1
    n = base.digit_count - 1
    return n, n


def _scalar_hull(b: int, dmax: int) -> tuple[Fraction, Fraction]:
    """Hull of ``sum_{i>=1} d_i b^-i`` with ``0 <= d_i <= dmax``."""
    b = Fraction(b)
    if b > 0:
        return Fraction(0), dmax / (b - 1)
    s = 1 - 1 / (b * b)
    return dmax * (1 / b) / s, dmax * (1 / (b * b)) / s


def _digit_components(base: Base) -> tuple[np.ndarray, np.ndarray]:
    ds = digit_set(base)
    if base.family is Family.HYPER_NH:
        return np.array([d.n1 for d in ds], dtype=object), np.array([d.n2 for d in ds], dtype=object)
    arr = np.array(ds, dtype=object)
    if base.ring == "GA":
        return arr, np.zeros(len(ds), dtype=object)
    return arr, arr.copy()


def _choose_dtype(base: Base, depth: int):
    dmax = max(base.digit_count, 1)
    if base.ring == "GA":
        mag = (abs(base.q.x) + abs(base.q.y) + 1) ** (depth + 1) * dmax * (depth + 1)
    else:
        mag = (max(abs(base.q.n1), abs(base.q.n2)) + 1) ** (depth + 1) * dmax
    return np.int64 if mag < 2**62 else object


def _horner(base: Base, mu: np.ndarray, dtype):
    """Tail numerators ``W = sum mu_i q^(k-i)`` for rows of digit indices."""
    D1, D2 = _digit_components(base)
    D1 = D1.astype(dtype)
    D2 = D2.astype(dtype)
    rows = mu.shape[0]
    W1 = np.zeros(rows, dtype=dtype)
    W2 = np.zeros(rows, dtype=dtype)
    if base.ring == "GA":
        a, b = base.q.x, base.q.y
        for col in range(mu.shape[1]):
            idx = mu[:, col]
            W1, W2 = W1 * a + D1[idx], W1 * b + W2 * a + D2[idx]
    else:
        b1, b2 = base.q.n1, base.q.n2
        for col in range(mu.shape[1]):
            idx = mu[:, col]
            W1, W2 = W1 * b1 + D1[idx], W2 * b2 + D2[idx]
    return W1, W2


def _enumerate_block(args):
    base, depth, first, dtype = args
    N = base.digit_count
    D1, D2 = _digit_components(base)
    D1 = D1.astype(dtype)
    D2 = D2.astype(dtype)
    W1 = np.array([D1[first]], dtype=dtype)
    W2 = np.array([D2[first]], dtype=dtype)
    if base.ring == "GA":
        a, b = base.q.x, base.q.y
        for _ in range(depth - 1):
            X = (W1[:, None] * a + D1[None, :]).ravel()
            Y = ((W1 * b + W2 * a)[:, None] + D2[None, :]).ravel()
            W1, W2 = X, Y
    else:
        b1, b2 = base.q.n1, base.q.n2
        for _ in range(depth - 1):
            W1 = (W1[:, None] * b1 + D1[None, :]).ravel()
            W2 = (W2[:, None] * b2 + D2[None, :]).ravel()
    assert len(W1) == N ** (depth - 1)
    return W1, W2


def _denominators(base: Base, depth: int, W1, W2):
    """Turn tail numerators into point numerators over positive denominators."""
    if base.ring == "GA":
        a, b = base.q.x, base.q.y
        den = a ** (depth + 1)
        n1 = W1 * a
        n2 = W2 * a - depth * b * W1
        if den < 0:
            n1, n2, den = -n1, -n2, -den
        return n1, n2, den, den
    b1, b2 = base.q.n1, base.q.n2
    d1, d2 = b1**depth, b2**depth
    n1, n2 = W1, W2
    if d1 < 0:
        n1, d1 = -n1, -d1
    if d2 < 0:
        n2, d2 = -n2, -d2
    return n1, n2, d1, d2


def fd_sample(
    base: Base,
    depth: int,
    cap: int = 10**7,
    seed: int = 0,
    samples: int = 100_000,
    allow_sampling: bool = True,
    workers: int = 1,
) -> DomainCloud:
    """Points ``sum_{i=1}^{depth} mu_i q^-i`` of the fundamental domain.

    All ``N**depth`` digit sequences are enumerated in lexicographic order
    (``mu_1`` slowest) when that count is within ``cap``; otherwise
    ``samples`` sequences are drawn uniformly with ``numpy.random`` seeded by
    ``seed``.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    bbox = fd_bbox(base)
    N = base.digit_count
    dtype = _choose_dtype(base, depth)
    basis = "std" if base.ring == "GA" else "idem"
    if depth == 0:
        z = np.zeros(1, dtype=dtype)
        return DomainCloud(base, 0, z, z.copy(), 1, 1, basis, bbox, False, None)
    total = N**depth
    if total <= cap:
        blocks = [(base, depth, first, dtype) for first in range(N)]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_enumerate_block, blocks))
        else:
            parts = [_enumerate_block(b) for b in blocks]
        W1 = np.concatenate([p[0] for p in parts])
        W2 = np.concatenate([p[1] for p in parts])
        sampled, used_seed = False, None
    else:
        if not allow_sampling:
            raise CapExceeded(f"{N}**{depth} = {total} sequences exceed cap {cap}")
        rng = np.random.default_rng(seed)
        mu = rng.integers(0, N, size=(samples, depth))
        W1, W2 = _horner(base, mu, dtype)
        sampled, used_seed = True, seed
    n1, n2, d1, d2 = _denominators(base, depth, W1, W2)
    return DomainCloud(base, depth, n1, n2, d1, d2, basis, bbox, sampled, used_seed)


# --------------------------------------------------------------------------
# Export


def cloud_to_csv(cloud: DomainCloud, exact: bool = True) -> str:
    out = io.StringIO()
    out.write("c1,c2,basis\n")
    if exact:
        for a, b in zip(cloud.num1.tolist(), cloud.num2.tolist()):
            out.write(
                f"{format_rat(Fraction(a, cloud.den1))},{format_rat(Fraction(b, cloud.den2))},{cloud.basis}\n"
            )
    else:
        x1 = _to_float(cloud.num1, cloud.den1)
        x2 = _to_float(cloud.num2, cloud.den2)
        for a, b in zip(x1.tolist(), x2.tolist()):
            out.write(f"{a!r},{b!r},{cloud.basis}\n")
    return out.getvalue()


def _to_float(nums: np.ndarray, den: int) -> np.ndarray:
    if nums.dtype == object:
        return np.array([float(Fraction(int(n), den)) for n in nums])
    return nums.astype(np.float64) / float(den)


def cloud_to_pgm(cloud: DomainCloud, width: int = 256, height: int = 256) -> bytes:
    """Binary PGM of hit counts (saturated at 255) over the cloud's bbox."""
    (lo1, hi1), (lo2, hi2) = cloud.bbox
    x = _to_float(cloud.num1, cloud.den1)
    y = _to_float(cloud.num2, cloud.den2)
    span1 = float(hi1 - lo1) or 1.0
    span2 = float(hi2 - lo2) or 1.0
    col = np.clip(((x - float(lo1)) / span1 * width).astype(np.int64), 0, width - 1)
    row = np.clip(((float(hi2) - y) / span2 * height).astype(np.int64), 0, height - 1)
    counts = np.zeros((height, width), dtype=np.int64)
    np.add.at(counts, (row, col), 1)
    img = np.minimum(counts, 255).astype(np.uint8)
    return f"P5\n{width} {height}\n255\n".encode("ascii") + img.tobytes()
