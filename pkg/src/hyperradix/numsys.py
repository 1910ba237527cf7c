"""Bases, digit sets, validation and digit extraction for the four families.

========================  ==============  ===================================
family                    ring            digits
========================  ==============  ===================================
``HYPER_NH``              Z_D             box ``0 <= nu <= |q| - 1``
``HYPER_CANONICAL``       Z_D             ``0 .. |N_D(q)| - 1``
``HGAUSS_CANONICAL``      G_D = Z[j]      ``0 .. |N_D(q)| - 1``
``DUAL_CANONICAL``        G_A = Z[e]      ``0 .. N_A(q) - 1``
========================  ==============  ===================================

Digit strings are little-endian: ``int_digits[i]`` multiplies ``q**i`` and
``frac_digits[i]`` multiplies ``q**-(i + 1)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union

from .algebra import DNum, HNum, d_inv, h_inv
from .errors import (
    BadBaseShape,
    DigitOutOfRange,
    InvalidBase,
    IterationLimit,
    NonTerminating,
    ZeroDivisorModulus,
)
from .rings import (
    DGaussInt,
    HInt,
    MqPair,
    RingElement,
    from_mq,
    ga_divides,
    gd,
    gd_divides,
    h_divides,
    h_exact_div,
    in_gd,
    quotient_key,
    residues,
    to_mq,
)


class Family(enum.Enum):
    HYPER_NH = "hN"
    HYPER_CANONICAL = "hC"
    HGAUSS_CANONICAL = "hG"
    DUAL_CANONICAL = "dG"

    @property
    def ring(self) -> str:
        return {"hN": "ZD", "hC": "ZD", "hG": "GD", "dG": "GA"}[self.value]


class Reason(enum.Enum):
    SHAPE = "Shape"
    SIGN = "Sign"
    NORM_TOO_SMALL = "NormTooSmall"
    IMBALANCED_IM = "ImbalancedIm"
    VERIFIED = "Verified"
    EMPIRICAL_CYCLE = "EmpiricalCycle"


class Mode(enum.Enum):
    PAPER = "paper"
    EMPIRICAL = "empirical"


Digit = Union[int, HInt]


# --------------------------------------------------------------------------
# Base


@dataclass(frozen=True)
class Base:
    """A radix base: family tag plus base element ``q``.

    ``a`` is the integer parameter of the family's canonical shape
    (``q = a e1 + (a-1) e2``, ``q = a ± j``, ``q = a ± e``) and is ``None``
    for HyperNh bases and off-shape canonical Z_D bases.  ``mirror`` is set
    for the conjugate shapes.
    """

    family: Family
    q: RingElement

    def __post_init__(self):
        ring = self.family.ring
        if ring == "GA" and not isinstance(self.q, DGaussInt):
            raise BadBaseShape(f"{self.family.value} needs a dual Gaussian integer")
        if ring in ("ZD", "GD") and not isinstance(self.q, HInt):
            raise BadBaseShape(f"{self.family.value} needs a hyperbolic integer")
        if ring == "GD" and not in_gd(self.q):
            raise BadBaseShape(f"{self.q} is not a hyperbolic Gaussian integer")

    # constructors ----------------------------------------------------------

    @classmethod
    def hyper_nh(cls, p1: int, p2: int) -> "Base":
        return cls(Family.HYPER_NH, HInt(p1, p2))

    @classmethod
    def hyper_canonical(cls, a: int, mirror: bool = False) -> "Base":
        q = HInt(a - 1, a) if mirror else HInt(a, a - 1)
        return cls(Family.HYPER_CANONICAL, q)

    @classmethod
    def hgauss(cls, a: int, b: int = 1) -> "Base":
        return cls(Family.HGAUSS_CANONICAL, gd(a, b))

    @classmethod
    def dual(cls, a: int, b: int = 1) -> "Base":
        return cls(Family.DUAL_CANONICAL, DGaussInt(a, b))

    # shape parameters ---------------------------------------------------------

    @property
    def ring(self) -> str:
        return self.family.ring

    @property
    def a(self) -> Optional[int]:
        f, q = self.family, self.q
        if f is Family.HYPER_CANONICAL:
            if q.n1 - q.n2 == 1:
                return q.n1
            if q.n2 - q.n1 == 1:
                return q.n2
            return None
        if f is Family.HGAUSS_CANONICAL:
            return q.std()[0]
        if f is Family.DUAL_CANONICAL:
            return q.x
        return None

    @property
    def imag(self) -> Optional[int]:
        """Imaginary part of ``q`` for G_D/G_A bases."""
        if self.family is Family.HGAUSS_CANONICAL:
            return self.q.std()[1]
        if self.family is Family.DUAL_CANONICAL:
            return self.q.y
        return None

    @property
    def mirror(self) -> bool:
        f, q = self.family, self.q
        if f is Family.HYPER_CANONICAL:
            return q.n2 - q.n1 == 1
        if f in (Family.HGAUSS_CANONICAL, Family.DUAL_CANONICAL):
            return self.imag < 0
        return False

    @property
    def norm(self) -> int:
        """Ring norm ``N(q)`` (signed for hyperbolic bases)."""
        return self.q.norm()

    @property
    def digit_count(self) -> int:
        return abs(self.norm)

    @property
    def descriptor(self) -> str:
        f, q = self.family, self.q
        if f is Family.HYPER_NH:
            return f"hN({q.n1},{q.n2})"
        if f is Family.HYPER_CANONICAL:
            a = self.a
            if a is None:
                return f"hCq({q.n1},{q.n2})"
            return f"hC({a},mirror)" if self.mirror else f"hC({a})"
        return f"{f.value}({self.a},{self.imag:+d})"

    def __str__(self):
        return self.descriptor

    # ring plumbing -------------------------------------------------------------

    def element(self, c1: int, c2: int) -> RingElement:
        """Ring element from box coordinates (idempotent for Z_D, standard otherwise)."""
        if self.ring == "ZD":
            return HInt(c1, c2)
        if self.ring == "GD":
            return gd(c1, c2)
        return DGaussInt(c1, c2)

    def box_coords(self, v: RingElement) -> tuple[int, int]:
        if self.ring == "GD":
            return v.std()
        return v.coords()

    def embed(self, d: Digit) -> RingElement:
        """Digit as a ring element."""
        if isinstance(d, (HInt, DGaussInt)):
            return d
        if self.ring == "GA":
            return DGaussInt(d, 0)
        return HInt(d, d)

    def zero(self) -> RingElement:
        return self.embed(0)

    def divide(self, v: RingElement) -> Optional[RingElement]:
        """``v / q`` in the base's ring, or ``None`` when not divisible."""
        if self.ring == "ZD":
            return h_exact_div(v, self.q)
        if self.ring == "GD":
            return gd_divides(self.q, v)[1]
        return ga_divides(self.q, v)[1]

    def divides(self, v: RingElement) -> bool:
        if self.ring == "ZD":
            return h_divides(self.q, v)
        if self.norm == 0:
            raise ZeroDivisorModulus(f"modulus {self.q} has zero norm")
        return self.divide(v) is not None

    def to_plane(self, v: RingElement) -> Union[HNum, DNum]:
        if self.ring == "GA":
            return v.to_dnum()
        return v.to_hnum()

    def q_plane(self) -> Union[HNum, DNum]:
        return self.to_plane(self.q)

    def q_inverse(self) -> Union[HNum, DNum]:
        if self.ring == "GA":
            return d_inv(self.q.to_dnum())
        return h_inv(self.q.to_hnum())


# --------------------------------------------------------------------------
# Verdict and digit strings


@dataclass(frozen=True)
class Verdict:
    is_ns: bool
    reason: Reason
    mode: Mode
    paper_is_ns: bool
    witness: Optional[RingElement] = None
    cycle: tuple = ()
    elements_tested: int = 0
    detail: str = ""

    @property
    def disagreement(self) -> bool:
        return self.mode is Mode.EMPIRICAL and self.is_ns != self.paper_is_ns


@dataclass(frozen=True)
class DigitString:
    base: Base
    int_digits: tuple
    frac_digits: tuple = ()
    exact: bool = True

    def __post_init__(self):
        digits = list(self.int_digits)
        zero = _zero_digit(self.base)
        while len(digits) > 1 and digits[-1] == zero:
            digits.pop()
        if not digits:
            digits = [zero]
        object.__setattr__(self, "int_digits", tuple(digits))
        object.__setattr__(self, "frac_digits", tuple(self.frac_digits))


def _zero_digit(base: Base) -> Digit:
    return HInt(0, 0) if base.family is Family.HYPER_NH else 0


# --------------------------------------------------------------------------
# Digit sets


def digit_set(base: Base) -> list:
    """Digits in ascending order (row-major box for HyperNh); empty when ``N(q) == 0``."""
    if base.family is Family.HYPER_NH:
        if base.norm == 0:
            return []
        return residues(base.q)
    return list(range(base.digit_count))


def in_digit_set(base: Base, d) -> bool:
    if base.family is Family.HYPER_NH:
        return (
            isinstance(d, HInt)
            and 0 <= d.n1 < abs(base.q.n1)
            and 0 <= d.n2 < abs(base.q.n2)
        )
    return isinstance(d, int) and not isinstance(d, bool) and 0 <= d < base.digit_count


def residue_system_check(base: Base, digits: Optional[Sequence] = None) -> bool:
    """Whether ``digits`` is a complete residue system modulo ``q``.

    Checks cardinality against ``N_D(|q|)`` (resp. ``N_A(q)``) and pairwise
    incongruence through ring divisibility.
    """
    if base.norm == 0:
        raise ZeroDivisorModulus(f"base {base} has zero norm")
    digits = digit_set(base) if digits is None else list(digits)
    if len(digits) != base.digit_count:
        return False
    elems = [base.embed(d) for d in digits]
    for i in range(len(elems)):
        for k in range(i + 1, len(elems)):
            if base.divides(elems[i] - elems[k]):
                return False
    return True


# --------------------------------------------------------------------------
# Scalar negative base


def negabase_encode(n: int, b: int) -> list[int]:
    """Little-endian digits of ``n`` in base ``b <= -2`` with digits ``0..|b|-1``."""
    if b > -2:
        raise ValueError("negative base must be <= -2")
    if n == 0:
        return [0]
    m = -b
    out = []
    while n:
        d = n % m
        out.append(d)
        n = (n - d) // b
    return out


# --------------------------------------------------------------------------
# Digit extraction


def residue_digit(v: RingElement, base: Base) -> Digit:
    """The digit congruent to ``v`` modulo ``q``."""
    return _extractor(base).digit(v)


def extraction_step(base: Base, v: RingElement) -> tuple[Digit, RingElement]:
    """One step ``v = d + q * v'``; returns ``(d, v')``."""
    return _extractor(base).step(v)


def iteration_cap(coords) -> int:
    return 64 + 4 * max((abs(c).bit_length() for c in coords), default=0)


def encode(v: RingElement, base: Base) -> DigitString:
    """Expand ``v`` by repeated ``d = v mod q``, ``v <- (v - d)/q``.

    Raises :class:`NonTerminating` when a state repeats and
    :class:`IterationLimit` when the hard cap is reached first.
    """
    return DigitString(base, tuple(_extractor(base).run(v)))


class _Extractor:
    """Family-specific digit extraction over raw integer states."""

    def __init__(self, base: Base):
        self.base = base
        fam = base.family
        q = base.q
        if base.norm == 0:
            raise InvalidBase(f"base {base} has zero norm; its digit set is empty")
        self.kind = "generic"
        if fam is Family.HYPER_NH:
            self.kind = "nh"
            self.b1, self.b2 = q.n1, q.n2
            self.m1, self.m2 = abs(q.n1), abs(q.n2)
        elif fam is Family.HYPER_CANONICAL and math.gcd(q.n1, q.n2) == 1:
            self.kind = "crt"
            self.b1, self.b2 = q.n1, q.n2
            self.m1, self.m2 = abs(q.n1), abs(q.n2)
            self.mod = self.m1 * self.m2
            self.inv = pow(self.m1, -1, self.m2) if self.m2 > 1 else 0
        elif fam in (Family.HGAUSS_CANONICAL, Family.DUAL_CANONICAL) and base.imag in (1, -1):
            self.kind = "mq"
            self.a = base.a
            self.n = base.norm
            self.m = abs(self.n)
        if self.kind == "generic":
            key = quotient_key(q, base.ring)
            table = {}
            for d in digit_set(base):
                table.setdefault(key(base.embed(d)), d)
            if len(table) != key.size or len(table) != base.digit_count:
                raise InvalidBase(
                    f"digit set of {base} is not a complete residue system"
                )
            self.key = key
            self.table = table

    # state <-> element ---------------------------------------------------------

    def to_state(self, v):
        if self.kind == "mq":
            p = to_mq(v, self.base.q)
            return (p.m, p.n)
        if self.kind == "generic":
            return v
        return (v.n1, v.n2)

    def from_state(self, s):
        if self.kind == "mq":
            return from_mq(MqPair(*s), self.base.q)
        if self.kind == "generic":
            return s
        return HInt(*s)

    def state_step(self, s):
        kind = self.kind
        if kind == "nh":
            d1 = s[0] % self.m1
            d2 = s[1] % self.m2
            return HInt(d1, d2), ((s[0] - d1) // self.b1, (s[1] - d2) // self.b2)
        if kind == "crt":
            n1, n2 = s
            d = (n1 + self.m1 * (((n2 - n1) * self.inv) % self.m2)) % self.mod
            return d, ((n1 - d) // self.b1, (n2 - d) // self.b2)
        if kind == "mq":
            m, n = s
            d = m % self.m
            t = (m - d) // self.n
            return d, (n + 2 * t * self.a, -t)
        d = self.table[self.key(s)]
        nxt = self.base.divide(s - self.base.embed(d))
        return d, nxt

    def is_zero(self, s) -> bool:
        if self.kind == "generic":
            return s == self.base.zero()
        return s[0] == 0 and s[1] == 0

    # public ---------------------------------------------------------------------

    def digit(self, v):
        return self.state_step(self.to_state(v))[0]

    def step(self, v):
        d, s = self.state_step(self.to_state(v))
        return d, self.from_state(s)

    def run(self, v) -> list:
        s = self.to_state(v)
        if self.is_zero(s):
            return [_zero_digit(self.base)]
        cap = iteration_cap(self.base.box_coords(v))
        seen = {s: 0}
        trail = [s]
        digits = []
        step = self.state_step
        while True:
            d, s = step(s)
            digits.append(d)
            if self.is_zero(s):
                return digits
            if s in seen:
                start = seen[s]
                cycle = [self.from_state(x) for x in trail[start:]]
                prefix = [self.from_state(x) for x in trail[:start]]
                raise NonTerminating(
                    f"digit extraction cycles with period {len(cycle)} "
                    f"from {self.from_state(s)}",
                    cycle,
                    prefix,
                )
            if len(digits) >= cap:
                raise IterationLimit(
                    f"no termination within {cap} steps for {v} in {self.base}"
                )
            seen[s] = len(trail)
            trail.append(s)


_EXTRACTORS: dict = {}


def _extractor(base: Base) -> _Extractor:
    ex = _EXTRACTORS.get(base)
    if ex is None:
        ex = _Extractor(base)
        if len(_EXTRACTORS) > 256:
            _EXTRACTORS.clear()
        _EXTRACTORS[base] = ex
    return ex


# --------------------------------------------------------------------------
# Proof-pipeline encoder (canonical Z_D bases)


def proof_mode_coefficients(m: int, n: int, a: int) -> list[int]:
    """Non-negative ``u0..u3`` with ``m + n q = u0 + u1 q + u2 q^2 + u3 q^3``.

    Substitutes ``c = |c| (q^2 - (2a-1) q + a^2 - a + sign(c))`` for ``m`` and ``n``.
    """
    u = [0, 0, 0, 0]
    for c, shift in ((m, 0), (n, 1)):
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        mag = abs(c)
        u[shift] += mag * (a * a - a + s)
        u[shift + 1] += mag * (1 - 2 * a)
        u[shift + 2] += mag
    return u


def encode_proof_mode(v: HInt, base: Base, max_steps: int = 100_000) -> DigitString:
    """Digits from the constructive non-negative-coefficient reduction.

    ``v`` may be given as an :class:`HInt` or an :class:`MqPair`.  The state is
    a coefficient vector ``(d0, d1, ...)`` with ``v_i = sum d_k q^k``; each
    step writes ``d0 = r + t*N`` and pushes ``t`` up using
    ``N = q^3 - 2a q^2 + (a^2 + a - 1) q``.  The coefficient sum ``sigma``
    drops by ``r`` per step; a repeated vector raises
    :class:`NonTerminating` with ``sigma`` attached.
    """
    if base.family is not Family.HYPER_CANONICAL or base.a is None:
        raise BadBaseShape(f"{base} is not a canonical Z_D base")
    a = base.a
    N = a * a - a
    if N < 2:
        raise InvalidBase(f"{base} has N_D(q) = {N} < 2")
    canon = HInt(a, a - 1)
    if isinstance(v, MqPair):
        v = from_mq(v, base.q)
    if base.mirror:
        # conj(v) in base conj(q) has the same integer digits
        v = v.conj()
    p = to_mq(v, canon)
    if p.m == 0 and p.n == 0:
        return DigitString(base, (0,))
    coeffs = proof_mode_coefficients(p.m, p.n, a)
    state = _trim(coeffs)
    sigma = sum(state)
    seen = {state: 0}
    trail = [state]
    digits = []
    c1 = a * a + a - 1
    for _ in range(max_steps):
        d = list(state) + [0] * max(0, 4 - len(state))
        r = d[0] % N
        t = (d[0] - r) // N
        nxt = d[1:]
        nxt[0] += c1 * t
        nxt[1] += -2 * a * t
        nxt[2] += t
        digits.append(r)
        sigma -= r
        state = _trim(nxt)
        if _eval_coeffs(state, canon) == HInt(0, 0):
            return DigitString(base, tuple(digits))
        if state in seen:
            start = seen[state]
            cycle = [_eval_coeffs(s, canon) for s in trail[start:]]
            prefix = [_eval_coeffs(s, canon) for s in trail[:start]]
            if base.mirror:
                cycle = [c.conj() for c in cycle]
                prefix = [c.conj() for c in prefix]
            raise NonTerminating(
                f"coefficient sum plateaus at {sigma} with a repeating state",
                cycle,
                prefix,
                sigma=sigma,
            )
        seen[state] = len(trail)
        trail.append(state)
    raise IterationLimit(f"proof pipeline did not finish in {max_steps} steps")


def proof_mode_trace(v: HInt, base: Base, steps: int) -> list[tuple[tuple, int]]:
    """First ``steps`` coefficient states of the proof pipeline with their sums.

    Works on the canonical (non-mirrored) shape; for inspection and tests.
    """
    a = base.a
    N = a * a - a
    if base.mirror:
        v = v.conj()
    p = to_mq(v, HInt(a, a - 1))
    state = _trim(proof_mode_coefficients(p.m, p.n, a))
    out = [(state, sum(state))]
    c1 = a * a + a - 1
    for _ in range(steps):
        if _eval_coeffs(state, HInt(a, a - 1)) == HInt(0, 0):
            break
        d = list(state) + [0] * max(0, 4 - len(state))
        r = d[0] % N
        t = (d[0] - r) // N
        nxt = d[1:]
        nxt[0] += c1 * t
        nxt[1] += -2 * a * t
        nxt[2] += t
        state = _trim(nxt)
        out.append((state, sum(state)))
    return out


def _trim(coeffs) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _eval_coeffs(coeffs, q: HInt) -> HInt:
    acc = HInt(0, 0)
    for c in reversed(coeffs):
        acc = acc * q + c
    return acc


# --------------------------------------------------------------------------
# Evaluation


def decode(ds: DigitString):
    """Horner evaluation.

    Returns a ring element when there are no fractional digits, otherwise an
    :class:`HNum` / :class:`DNum` with exact rational coordinates.
    """
    base = ds.base
    for d in ds.int_digits + ds.frac_digits:
        if not in_digit_set(base, d):
            raise DigitOutOfRange(f"digit {d} is not in the digit set of {base}")
    q = base.q
    acc = base.zero()
    for d in reversed(ds.int_digits):
        acc = acc * q + base.embed(d)
    if not ds.frac_digits:
        return acc
    k = len(ds.frac_digits)
    tail = base.zero()
    for d in ds.frac_digits:
        tail = tail * q + base.embed(d)
    inv = base.q_inverse()
    return base.to_plane(acc) + base.to_plane(tail) * (inv**k)


# --------------------------------------------------------------------------
# Validation


def box_elements(base: Base, bound: int) -> Iterator[RingElement]:
    """Elements with box coordinates in ``[-bound, bound]``, smallest first.

    Order: sup-norm, then l1-norm, then descending coordinates, so that the
    first failing element reported is as small and as positive as possible.
    """
    coords = [(c1, c2) for c1 in range(-bound, bound + 1) for c2 in range(-bound, bound + 1)]
    coords.sort(key=witness_key)
    for c1, c2 in coords:
        yield base.element(c1, c2)


def witness_key(c):
    c1, c2 = c
    return (max(abs(c1), abs(c2)), abs(c1) + abs(c2), -c1, -c2)


def cycle_representative(base: Base, cycle) -> RingElement:
    return min(cycle, key=lambda v: witness_key(base.box_coords(v)))


def paper_verdict(base: Base) -> tuple[bool, Reason]:
    """Apply exactly the printed theorem conditions for the family."""
    f, q = base.family, base.q
    if f is Family.HYPER_NH:
        ok = q.n1 <= -2 and q.n2 <= -2
        return ok, (Reason.VERIFIED if ok else Reason.SHAPE)
    if f is Family.HYPER_CANONICAL:
        if q.n1 > 0 or q.n2 > 0:
            return False, Reason.SIGN
        if q.norm() < 2:
            return False, Reason.NORM_TOO_SMALL
        if abs(q.n1 - q.n2) != 1:
            return False, Reason.IMBALANCED_IM
        return True, Reason.VERIFIED
    a, b = base.a, base.imag
    if b not in (1, -1):
        return False, Reason.IMBALANCED_IM
    if a > 0:
        return False, Reason.SIGN
    if a > -2:
        return False, Reason.NORM_TOO_SMALL
    return True, Reason.VERIFIED


def empirical_check(base: Base, bound: int = 50):
    """Encode and decode every element of the box.

    Returns ``(ok, witness, cycle, tested, detail)``; ``witness`` is the
    canonical representative of the first cycle found.
    """
    try:
        ex = _extractor(base)
    except InvalidBase as exc:
        return False, None, (), 0, str(exc)
    tested = 0
    for v in box_elements(base, bound):
        tested += 1
        try:
            digits = ex.run(v)
        except NonTerminating as exc:
            rep = cycle_representative(base, exc.cycle)
            cyc = rotate_cycle(exc.cycle, rep)
            return False, rep, cyc, tested, f"{v} enters a cycle of length {len(cyc)}"
        except IterationLimit as exc:
            return False, v, (), tested, str(exc)
        if decode(DigitString(base, tuple(digits))) != v:
            return False, v, (), tested, f"round trip failed for {v}"
    return True, None, (), tested, ""


def rotate_cycle(cycle, start) -> tuple:
    cycle = list(cycle)
    i = cycle.index(start)
    return tuple(cycle[i:] + cycle[:i])


def validate_base(base: Base, mode: Mode = Mode.PAPER, bound: int = 50) -> Verdict:
    paper_ok, reason = paper_verdict(base)
    if mode is Mode.PAPER:
        return Verdict(paper_ok, reason, mode, paper_ok)
    ok, witness, cycle, tested, detail = empirical_check(base, bound)
    if paper_ok and not ok:
        reason = Reason.EMPIRICAL_CYCLE
    return Verdict(ok, reason, mode, paper_ok, witness, cycle, tested, detail)
