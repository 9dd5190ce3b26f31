"""Ordinal arithmetic below omega^omega plus subrecursive hierarchy evaluation.

Ordinals live in Cantor normal form as (exponent, coefficient) term tuples
with strictly decreasing exponents and positive coefficients; tuple order on
the terms is exactly the ordinal order. The single value above them all,
omega^omega, is the distinguished TOP singleton.

The iteration hierarchies are evaluated exactly with unbounded integers
under a step budget; out-of-budget evaluation raises BudgetExceeded, which
callers report symbolically. Huge-but-finite bounds are absorbed into the
HUGE marker once they pass the digit cap, since past that point only their
ordering against small numbers matters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .core import Config, Vass, config_norm, vass_size
from .errors import BudgetExceeded

DEFAULT_STEP_BUDGET = 10**6
DIGIT_CAP = 10**5


@dataclass(frozen=True)
class OrdinalCNF:
    """Cantor normal form: ((e1, c1), ..., (ek, ck)) with e1 > ... > ek, ci > 0."""

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        exps = [e for e, _ in self.terms]
        if any(c <= 0 for _, c in self.terms) or exps != sorted(exps, reverse=True):
            raise ValueError("not in Cantor normal form")
        if any(e < 0 for e in exps):
            raise ValueError("negative exponent")

    def is_zero(self) -> bool:
        return not self.terms

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] == 0

    def is_limit(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] >= 1

    def __lt__(self, other: "OrdinalCNF") -> bool:
        return self.terms < other.terms

    def __le__(self, other: "OrdinalCNF") -> bool:
        return self.terms <= other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.terms:
            if e == 0:
                bits.append(str(c))
            elif e == 1:
                bits.append("w" if c == 1 else f"w*{c}")
            else:
                bits.append(f"w^{e}" if c == 1 else f"w^{e}*{c}")
        return "+".join(bits)


ZERO = OrdinalCNF(())


class _Top:
    """omega^omega, the least upper bound of every OrdinalCNF here."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "w^w"


TOP = _Top()

Ordinal = OrdinalCNF | _Top


def finite(n: int) -> OrdinalCNF:
    return OrdinalCNF(((0, n),)) if n > 0 else ZERO


def omega_power(exp: int, coeff: int = 1) -> OrdinalCNF:
    return OrdinalCNF(((exp, coeff),)) if coeff > 0 else ZERO


def ordinal_rank(rank: Sequence[int]) -> OrdinalCNF:
    """Embed a top-first rank tuple (r_d, ..., r_0) as w^d*r_d + ... + r_0."""
    d = len(rank) - 1
    terms = tuple((d - idx, v) for idx, v in enumerate(rank) if v > 0)
    return OrdinalCNF(terms)


def compare(a: Ordinal, b: Ordinal) -> int:
    """-1, 0, or 1; TOP dominates every normal form."""
    if a is TOP and b is TOP:
        return 0
    if a is TOP:
        return 1
    if b is TOP:
        return -1
    if a.terms == b.terms:
        return 0
    return -1 if a.terms < b.terms else 1


def cnf_size(a: Ordinal) -> int:
    """max(top exponent, largest coefficient); the control-norm of an ordinal."""
    if a is TOP:
        raise ValueError("TOP has no finite size")
    if not a.terms:
        return 0
    return max(a.terms[0][0], max(c for _, c in a.terms))


def fundamental(lam: Ordinal, x: int) -> OrdinalCNF:
    """The x-th member of the standard fundamental sequence of a limit."""
    if lam is TOP:
        return omega_power(x + 1)
    if not lam.is_limit():
        raise ValueError("fundamental sequences exist for limits only")
    head = lam.terms[:-1]
    e, c = lam.terms[-1]
    if c > 1:
        head = head + ((e, c - 1),)
    tail = ((e - 1, x + 1),)
    return OrdinalCNF(head + tail)


def _descend(
    h: Callable[[int], int],
    alpha: Ordinal,
    x: int,
    budget: int,
    h_iterate: Callable[[int, int], int] | None,
) -> tuple[int, int]:
    """Walk the canonical path from alpha to zero; return (final x, h-count)."""
    steps = 0
    count = 0
    while True:
        if alpha is TOP:
            alpha = fundamental(TOP, x)
        if alpha.is_zero():
            return x, count
        if alpha.is_successor():
            c = alpha.terms[-1][1]
            if h_iterate is not None:
                x = h_iterate(x, c)
                steps += 1
            else:
                if c > budget - steps:
                    raise BudgetExceeded("hierarchy evaluation", f"{steps + c} steps")
                for _ in range(c):
                    x = h(x)
                steps += c
            count += c
            alpha = OrdinalCNF(alpha.terms[:-1])
        else:
            alpha = fundamental(alpha, x)
            steps += 1
        if steps > budget:
            raise BudgetExceeded("hierarchy evaluation", f"{steps} steps")


def hardy(
    h: Callable[[int], int],
    alpha: Ordinal,
    x: int,
    budget: int = DEFAULT_STEP_BUDGET,
    h_iterate: Callable[[int, int], int] | None = None,
) -> int:
    """Transfinite iterate of h along alpha, evaluated at x."""
    return _descend(h, alpha, x, budget, h_iterate)[0]


def cichon(
    h: Callable[[int], int],
    alpha: Ordinal,
    x: int,
    budget: int = DEFAULT_STEP_BUDGET,
    h_iterate: Callable[[int, int], int] | None = None,
) -> int:
    """How many h-applications the transfinite iterate performs."""
    return _descend(h, alpha, x, budget, h_iterate)[1]


def successor(x: int) -> int:
    return x + 1


def successor_iterate(x: int, k: int) -> int:
    return x + k


# ---------------------------------------------------------------------------
# Huge-value absorption and the control functions used by the decomposition.


class _Huge:
    """A finite value too large to materialise; bigger than any int."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "HUGE"


HUGE = _Huge()

Bound = int | _Huge


def pow_or_huge(base: int, exp: Bound, digit_cap: int = DIGIT_CAP) -> Bound:
    if isinstance(exp, _Huge):
        return HUGE
    if base <= 1:
        return base**exp if exp >= 0 else 0
    try:
        digits = exp * math.log10(base)
    except OverflowError:
        return HUGE
    if digits > digit_cap:
        return HUGE
    return base**exp


def cleaning_control(x: Bound) -> Bound:
    """x^x, the growth envelope of one cleaning pass."""
    if isinstance(x, _Huge):
        return HUGE
    return pow_or_huge(x, x)


def decomposition_control(x: Bound) -> Bound:
    """x^(x^(1+x)), the growth envelope of one decomposition step."""
    if isinstance(x, _Huge):
        return HUGE
    inner = pow_or_huge(x, 1 + x)
    return pow_or_huge(x, inner)


def witness_length_cap(x: Bound) -> Bound:
    """x^(3x), the guaranteed cap on a shortest accepted word."""
    if isinstance(x, _Huge):
        return HUGE
    return pow_or_huge(x, 3 * x)


def bound_le(a: int, b: Bound) -> bool:
    return isinstance(b, _Huge) or a <= b


def check_controlled(
    ordinals: Iterable[Ordinal],
    n0: Bound,
    h: Callable[[Bound], Bound],
) -> bool:
    """Strictly descending and j-th size under the j-th h-iterate of n0."""
    bound = n0
    prev: Ordinal | None = None
    for alpha in ordinals:
        if prev is not None and compare(alpha, prev) >= 0:
            return False
        if not bound_le(cnf_size(alpha), bound):
            return False
        bound = h(bound)
        prev = alpha
    return True


@dataclass(frozen=True)
class SymbolicBound:
    """An honest 'beyond the evaluation budget' report."""

    description: str

    def __repr__(self) -> str:
        return f"> budget: {self.description}"


def descent_bound(
    d: int,
    n0: int,
    h: Callable[[int], int],
    budget: int = DEFAULT_STEP_BUDGET,
    h_iterate: Callable[[int, int], int] | None = None,
) -> int | SymbolicBound:
    """Maximal length of controlled descents below w^(d+1), if computable."""
    try:
        return cichon(h, omega_power(d + 1), n0, budget, h_iterate)
    except BudgetExceeded:
        return SymbolicBound(f"cichon at w^{d + 1} of {n0}")


def witness_bound(
    g: Vass, c_in: Config, c_out: Config, budget: int = DEFAULT_STEP_BUDGET
) -> int | SymbolicBound:
    """Witness-length envelope for a reachability instance, if computable.

    Almost always symbolic: the envelope composes the cleaning and
    decomposition controls transfinitely.
    """
    n = 2 * (g.dim + 1) ** (g.dim + 1) * (vass_size(g) + config_norm(c_in) + config_norm(c_out))
    desc = f"witness cap at dim {g.dim}, instance weight {n}"
    start = cleaning_control(n)
    if isinstance(start, _Huge):
        return SymbolicBound(desc)

    def ctrl(x: int) -> int:
        v = decomposition_control(x)
        if isinstance(v, _Huge):
            raise BudgetExceeded("hierarchy evaluation", "value over digit cap")
        return v

    try:
        reach = hardy(ctrl, omega_power(g.dim + 1), start, budget)
        cap = witness_length_cap(reach)
    except BudgetExceeded:
        return SymbolicBound(desc)
    if isinstance(cap, _Huge):
        return SymbolicBound(desc)
    return cap
