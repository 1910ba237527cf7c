"""Brute-force verifiers, kept independent of the code paths they check.

* residue systems are checked by searching for the quotient ``kappa`` in a
  box instead of dividing;
* expansions are re-evaluated as explicit power sums;
* identities are evaluated with standard-coordinate multiplication
  (``j*j = 1``, ``e*e = 0``) rather than the idempotent storage;
* non-representability for rejected bases is certified by exhausting the
  finite graph of all admissible digit choices.
"""

from __future__ import annotations

import json
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .algebra import DNum, norm_A
from .errors import InvalidBase, IterationLimit, NonTerminating
from .numsys import (
    Base,
    Family,
    box_elements,
    cycle_representative,
    digit_set,
    encode,
    paper_verdict,
    rotate_cycle,
)
from .rings import DGaussInt, HInt, gd


# --------------------------------------------------------------------------
# Element text used in reports


def element_text(base: Base, v) -> str:
    if base.ring == "ZD":
        return f"h({v.n1},{v.n2})"
    if base.ring == "GD":
        x, y = v.std()
        return _std_text(x, y, "j")
    return _std_text(v.x, v.y, "e")


def _std_text(x: int, y: int, unit: str) -> str:
    if x == 0 and y == 0:
        return "0"
    out = str(x) if x else ""
    if y:
        sign = "-" if y < 0 else ("+" if x else "")
        out += sign + unit + ("" if abs(y) == 1 else str(abs(y)))
    return out


# --------------------------------------------------------------------------
# Residue systems


def _multiples(base: Base, diffs) -> set:
    """Every ``kappa * q`` with ``kappa`` in a box large enough for ``diffs``.

    Each component of ``q`` is a nonzero integer (in the idempotent view for
    the hyperbolic rings, the real part for G_A), so ``|kappa|`` never exceeds
    the size of the quotient it would produce.
    """
    q = base.q
    if base.ring == "GA":
        s = max((abs(d.x) + abs(d.y) for d in diffs), default=0)
        t = s * (1 + abs(q.y))
        return {DGaussInt(x, y) * q for x in range(-s, s + 1) for y in range(-t, t + 1)}
    if base.ring == "GD":
        s = max((abs(c) for d in diffs for c in d.std()), default=0) * 2
        return {gd(x, y) * q for x in range(-s, s + 1) for y in range(-s, s + 1)}
    s = max((abs(c) for d in diffs for c in d.coords()), default=0)
    return {HInt(x, y) * q for x in range(-s, s + 1) for y in range(-s, s + 1)}


def verify_residue_bruteforce(base: Base, digits: Optional[Iterable] = None) -> bool:
    """Cardinality equals ``|N(q)|`` and no two digits are congruent mod ``q``.

    Congruence is decided by searching for ``kappa`` with
    ``d_i - d_k == kappa * q`` rather than by dividing.
    """
    digits = digit_set(base) if digits is None else list(digits)
    if base.norm == 0 or len(digits) != abs(base.norm):
        return False
    elems = [base.embed(d) for d in digits]
    diffs = [elems[i] - elems[k] for i in range(len(elems)) for k in range(i + 1, len(elems))]
    multiples = _multiples(base, diffs)
    return not any(d in multiples for d in diffs)


# --------------------------------------------------------------------------
# Expansion checks


def power_sum(base: Base, digits) -> object:
    """``sum d_i q^i`` by explicit powers, independent of Horner decoding."""
    total = base.zero()
    for i, d in enumerate(digits):
        total = total + base.embed(d) * (base.q**i)
    return total


def reachable_states(base: Base, v, max_states: int = 20_000):
    """Explore every admissible digit choice from ``v``.

    Returns ``(representable, n_states, complete)``.  ``complete`` is true
    when the whole reachable graph was exhausted, in which case
    ``representable`` is decided for all expansion lengths.
    """
    digits = [base.embed(d) for d in digit_set(base)]
    zero = base.zero()
    if v == zero:
        return True, 1, True
    seen = {v}
    queue = deque([v])
    while queue:
        s = queue.popleft()
        for d in digits:
            nxt = base.divide(s - d)
            if nxt is None:
                continue
            if nxt == zero:
                return True, len(seen), False
            if nxt not in seen:
                if len(seen) >= max_states:
                    return False, len(seen), False
                seen.add(nxt)
                queue.append(nxt)
    return False, len(seen), True


@dataclass
class SweepReport:
    base: str
    family: str
    a: Optional[int]
    paper_verdict: bool
    paper_reason: str
    empirical_verdict: bool
    residue_complete: bool
    witness: Optional[str] = None
    witness_kind: Optional[str] = None
    cycle: list = field(default_factory=list)
    first_failure: Optional[str] = None
    elements_tested: int = 0
    max_digits: int = 0

    @property
    def agrees(self) -> bool:
        return self.paper_verdict == self.empirical_verdict

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))


def roundtrip_sweep(base: Base, bound: int = 25) -> SweepReport:
    """Encode every box element and re-evaluate the digits independently."""
    paper_ok, reason = paper_verdict(base)
    complete = base.norm != 0 and verify_residue_bruteforce(base)
    rep = SweepReport(
        base=base.descriptor,
        family=base.family.value,
        a=base.a,
        paper_verdict=paper_ok,
        paper_reason=reason.value,
        empirical_verdict=False,
        residue_complete=complete,
    )
    if not complete:
        _witness_unrepresentable(base, bound, rep)
        return rep
    for v in box_elements(base, bound):
        rep.elements_tested += 1
        try:
            ds = encode(v, base)
        except NonTerminating as exc:
            w = cycle_representative(base, exc.cycle)
            rep.witness = element_text(base, w)
            rep.witness_kind = "cycle"
            rep.cycle = [element_text(base, c) for c in rotate_cycle(exc.cycle, w)]
            rep.first_failure = element_text(base, v)
            return rep
        except (IterationLimit, InvalidBase) as exc:
            rep.witness = element_text(base, v)
            rep.witness_kind = type(exc).__name__
            rep.first_failure = rep.witness
            return rep
        if power_sum(base, ds.int_digits) != v:
            rep.witness = element_text(base, v)
            rep.witness_kind = "roundtrip"
            rep.first_failure = rep.witness
            return rep
        rep.max_digits = max(rep.max_digits, len(ds.int_digits))
    rep.empirical_verdict = True
    return rep


def _witness_unrepresentable(base: Base, bound: int, rep: SweepReport, tries: int = 64) -> None:
    """Find a box element whose full digit-choice graph never reaches zero."""
    if not digit_set(base):
        rep.witness = element_text(base, base.embed(1))
        rep.witness_kind = "empty-digit-set"
        return
    for i, v in enumerate(box_elements(base, bound)):
        if i >= tries:
            break
        if v == base.zero():
            continue
        representable, n_states, exhausted = reachable_states(base, v)
        if not representable and exhausted:
            rep.witness = element_text(base, v)
            rep.witness_kind = f"unrepresentable({n_states} states)"
            return
    rep.witness_kind = "incomplete-residue-system"


def sweep_shapes(family: Family, a_range: Iterable[int]) -> list[Base]:
    """Candidate bases for a family, including shapes the theorems reject."""
    a_vals = list(a_range)
    if family is Family.HYPER_NH:
        return [Base.hyper_nh(p1, p2) for p1 in a_vals for p2 in a_vals]
    out = []
    for a in a_vals:
        if family is Family.HYPER_CANONICAL:
            out += [
                Base.hyper_canonical(a),
                Base.hyper_canonical(a, mirror=True),
                Base(Family.HYPER_CANONICAL, HInt(a, a - 2)),
            ]
        elif family is Family.HGAUSS_CANONICAL:
            out += [Base.hgauss(a, 1), Base.hgauss(a, -1), Base.hgauss(a, 2)]
        else:
            out += [Base.dual(a, 1), Base.dual(a, -1), Base.dual(a, 2)]
    return out


def _sweep_one(args):
    base, bound = args
    return roundtrip_sweep(base, bound)


def theorem_sweep(family: Family, a_range: Iterable[int], bound: int = 25, workers: int = 1) -> list[SweepReport]:
    jobs = [(b, bound) for b in sweep_shapes(family, a_range)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_sweep_one, jobs))
    return [_sweep_one(j) for j in jobs]


def reports_to_jsonl(reports: Iterable[SweepReport]) -> str:
    return "".join(r.to_json() + "\n" for r in reports)


# --------------------------------------------------------------------------
# Identities in standard coordinates


class _Std:
    """Standard-coordinate element ``x + u*y`` with ``u*u == unit_sq``."""

    __slots__ = ("x", "y", "sq")

    def __init__(self, x, y, sq):
        self.x, self.y, self.sq = Fraction(x), Fraction(y), sq

    def __add__(self, o):
        o = self._c(o)
        return _Std(self.x + o.x, self.y + o.y, self.sq)

    def __sub__(self, o):
        o = self._c(o)
        return _Std(self.x - o.x, self.y - o.y, self.sq)

    def __mul__(self, o):
        o = self._c(o)
        return _Std(self.x * o.x + self.sq * self.y * o.y, self.x * o.y + self.y * o.x, self.sq)

    __rmul__ = __mul__

    def _c(self, o):
        return o if isinstance(o, _Std) else _Std(o, 0, self.sq)

    def __eq__(self, o):
        o = self._c(o)
        return self.x == o.x and self.y == o.y

    def power(self, n):
        out = _Std(1, 0, self.sq)
        for _ in range(n):
            out = out * self
        return out


def _poly(coeffs, q: _Std) -> _Std:
    """``sum coeffs[i] * q**i`` by Horner in standard coordinates."""
    acc = _Std(0, 0, q.sq)
    for c in reversed(coeffs):
        acc = acc * q + c
    return acc


def _canonical_bases(a: int):
    """(setting, q, N) for every canonical shape with parameter ``a``."""
    half = Fraction(1, 2)
    yield "ZD", _Std(a - half, half, 1), a * a - a
    yield "ZD", _Std(a - half, -half, 1), a * a - a
    yield "GD", _Std(a, 1, 1), a * a - 1
    yield "GD", _Std(a, -1, 1), a * a - 1
    yield "GA", _Std(a, 1, 0), a * a
    yield "GA", _Std(a, -1, 0), a * a


def identity_suite(a_range=range(-8, 0), c_range=range(-20, 21), n_max: int = 16, box: int = 10) -> dict:
    """Evaluate the structural identities exactly; returns ``{name: (passed, total)}``."""
    counts = {k: [0, 0] for k in ("hyperbolic_power", "dual_power", "norm_cubic", "substitution", "quadratic")}

    def tally(name, ok):
        counts[name][0] += bool(ok)
        counts[name][1] += 1

    for a in a_range:
        for setting, q, N in _canonical_bases(a):
            re2 = 2 * q.x
            if setting == "ZD":
                cubic = [0, a * a + a - 1, -2 * a, 1]
            elif setting == "GD":
                cubic = [0, a * a + 2 * a - 1, -(2 * a + 1), 1]
            else:
                cubic = [0, a * a + 2 * a, -(2 * a + 1), 1]
            tally("norm_cubic", _poly(cubic, q) == N)
            for c in c_range:
                if c == 0:
                    continue
                s = 1 if c > 0 else -1
                # c = |c| (q^2 - 2Re(q) q + N + sign(c))
                tally("substitution", _poly([abs(c) * (N + s), -abs(c) * re2, abs(c)], q) == c)
            for n in range(n_max + 1):
                qn = q.power(n)
                if setting == "GA":
                    tally("dual_power", qn.x == q.x**n and qn.y == n * q.y * q.x ** (n - 1 if n else 0) * (1 if n else 0))
                else:
                    p1, p2 = q.x + q.y, q.x - q.y
                    tally("hyperbolic_power", 2 * qn.y == p1**n - p2**n)
    for sq in (1, 0):
        for x in range(-box, box + 1):
            for y in range(-box, box + 1):
                v = _Std(x, y, sq)
                norm = x * x - y * y if sq == 1 else x * x
                tally("quadratic", v * v - 2 * x * v + norm == 0)
    return {k: tuple(v) for k, v in counts.items()}


# --------------------------------------------------------------------------
# Dual norm against its defining supremum


def norm_A_grid(x: float, y: float, grid_size: int = 4096) -> float:
    theta = np.linspace(0.0, 2 * np.pi, grid_size)
    vals = x * x + y * y * np.sin(theta) ** 2 + x * y * np.sin(2 * theta)
    return float(np.sqrt(np.max(vals)))


def norm_A_grid_check(samples: int = 1000, grid_size: int = 4096, seed: int = 0, scale: int = 100) -> float:
    """Max over random rational ``z`` of ``|closed form - grid sup| / (1 + closed form)``."""
    if grid_size < 1024:
        raise ValueError("grid_size must be at least 1024")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        nx, ny = rng.integers(-scale * 16, scale * 16 + 1, size=2)
        dx, dy = rng.integers(1, 17, size=2)
        z = DNum(Fraction(int(nx), int(dx)), Fraction(int(ny), int(dy)))
        closed = norm_A(z)
        grid = norm_A_grid(float(z.x), float(z.y), grid_size)
        worst = max(worst, abs(closed - grid) / (1 + closed))
    return worst
