"""Exact linear algebra over the rationals and linear Diophantine solving over N.

Satisfiability of A*x = c with x ranging over the naturals is decided by a
Contejean-Devie frontier search on the homogenised system. Completeness
rests on two facts: minimal solutions have norm under the ceiling
(2 + max row absolute sum)^rows, so pruning at that ceiling is safe, and
the gradient condition only discards extensions that cannot reach a new
minimal solution. A node budget turns pathological instances into an
explicit BudgetExceeded instead of a silent wrong answer; BudgetExceeded is
never Unsat.

Rational feasibility questions (kernel membership with positivity) go
through an exact phase-1 simplex with Bland's rule. Nothing here touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Hashable, Sequence

from .errors import BudgetExceeded, UnsatInput

Row = tuple[int, ...]

DEFAULT_NODE_BUDGET = 10**7


@dataclass(frozen=True)
class LinSystem:
    """A*x = rhs with x over the naturals; labels name the columns."""

    rows: tuple[Row, ...]
    rhs: tuple[int, ...]
    labels: tuple[Hashable, ...]

    def __post_init__(self):
        if len(self.rows) != len(self.rhs):
            raise ValueError("row/rhs count mismatch")
        n = len(self.labels)
        if any(len(r) != n for r in self.rows):
            raise ValueError("row arity mismatch")

    @property
    def n_vars(self) -> int:
        return len(self.labels)

    def is_homogeneous(self) -> bool:
        return all(v == 0 for v in self.rhs)

    def homogenized(self) -> "LinSystem":
        """The same coefficient matrix with a zero right-hand side."""
        return LinSystem(self.rows, (0,) * len(self.rows), self.labels)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def index_of(self, label: Hashable) -> int:
        return self.labels.index(label)

    def evaluate(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * v for a, v in zip(row, x)) for row in self.rows)

    def satisfied_by(self, x: Sequence[int]) -> bool:
        return len(x) == self.n_vars and all(v >= 0 for v in x) and self.evaluate(x) == self.rhs

    def with_lower_bound(self, j: int, bound: int) -> "LinSystem":
        """Substitute x_j = bound + s, s >= 0; same columns, adjusted rhs."""
        rhs = tuple(c - row[j] * bound for row, c in zip(self.rows, self.rhs))
        return LinSystem(self.rows, rhs, self.labels)

    def with_pin(self, j: int, value: int) -> "LinSystem":
        """Add the equation x_j = value."""
        pin = tuple(1 if i == j else 0 for i in range(self.n_vars))
        return LinSystem(self.rows + (pin,), self.rhs + (value,), self.labels)

    def pottier_hom_bound(self) -> int:
        """Norm ceiling for minimal homogeneous solutions."""
        if not self.rows:
            return 2
        m = len(self.rows)
        biggest = max(sum(abs(a) for a in row) for row in self.rows)
        return (2 + biggest) ** m

    def pottier_particular_bound(self) -> int:
        """Norm ceiling for some particular solution when one exists."""
        return max(1, sum(abs(c) for c in self.rhs)) * self.pottier_hom_bound()


class Unsat:
    """Definite negative answer (as opposed to an exhausted budget)."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "Unsat"


UNSAT = Unsat()


class Unbounded:
    __slots__ = ()

    def __repr__(self) -> str:
        return "Unbounded"


UNBOUNDED = Unbounded()


# ---------------------------------------------------------------------------
# Exact Gaussian elimination.


def _normalize_int_vector(vec: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to integers with content 1, first nonzero > 0."""
    denom = 1
    for v in vec:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = [int(v * denom) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v != 0:
            if v < 0:
                ints = [-u for u in ints]
            break
    return tuple(ints)


def rational_kernel_basis(
    rows: Sequence[Sequence[int]], n_vars: int | None = None
) -> list[tuple[int, ...]]:
    """Basis of the rational kernel of a matrix, scaled to content-1 integers.

    Pivot order is left to right, so the result is deterministic: one basis
    vector per free column, in column order.
    """
    if n_vars is None:
        if not rows:
            raise ValueError("need n_vars for an empty matrix")
        n_vars = len(rows[0])
    mat = [[Fraction(v) for v in row] for row in rows]
    m = len(mat)
    pivots: list[tuple[int, int]] = []
    rank = 0
    for col in range(n_vars):
        sel = None
        for r in range(rank, m):
            if mat[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        mat[rank], mat[sel] = mat[sel], mat[rank]
        piv = mat[rank][col]
        mat[rank] = [v / piv for v in mat[rank]]
        for r in range(m):
            if r != rank and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [v - factor * p for v, p in zip(mat[r], mat[rank])]
        pivots.append((rank, col))
        rank += 1
    pivot_cols = {c for _, c in pivots}
    basis = []
    for free in range(n_vars):
        if free in pivot_cols:
            continue
        vec = [Fraction(0)] * n_vars
        vec[free] = Fraction(1)
        for r, c in pivots:
            vec[c] = -mat[r][free]
        basis.append(_normalize_int_vector(vec))
    return basis


def span_dimension(vectors: Sequence[Sequence[Fraction | int]]) -> int:
    """Rank of the span of the given rational vectors; empty input gives 0."""
    vecs = [list(map(Fraction, v)) for v in vectors]
    if not vecs:
        return 0
    n = len(vecs[0])
    rank = 0
    for col in range(n):
        sel = None
        for r in range(rank, len(vecs)):
            if vecs[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        vecs[rank], vecs[sel] = vecs[sel], vecs[rank]
        piv = vecs[rank][col]
        vecs[rank] = [v / piv for v in vecs[rank]]
        for r in range(len(vecs)):
            if r != rank and vecs[r][col] != 0:
                f = vecs[r][col]
                vecs[r] = [v - f * p for v, p in zip(vecs[r], vecs[rank])]
        rank += 1
        if rank == len(vecs):
            break
    return rank


# ---------------------------------------------------------------------------
# Exact LP feasibility (phase-1 simplex, Bland's rule).


def lp_feasible(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[Fraction] | None:
    """A rational x >= 0 with rows*x = rhs, or None if none exists."""
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    tab: list[list[Fraction]] = []
    for row, b in zip(rows, rhs):
        r = [Fraction(v) for v in row]
        bb = Fraction(b)
        if bb < 0:
            r = [-v for v in r]
            bb = -bb
        tab.append(r + [Fraction(0)] * m + [bb])
    for i in range(m):
        tab[i][n + i] = Fraction(1)
    basis = [n + i for i in range(m)]
    total = n + m

    # Reduced objective for minimizing the artificial sum, expressed so that
    # a positive entry marks an improving entering column.
    obj = [Fraction(0)] * (total + 1)
    for i in range(m):
        for j in range(total + 1):
            obj[j] += tab[i][j]
    for j in range(n, total):
        obj[j] -= 1

    while True:
        entering = None
        for j in range(total):
            if obj[j] > 0 and j not in basis:
                entering = j
                break
        if entering is None:
            break
        leaving = None
        best = None
        for i in range(m):
            if tab[i][entering] > 0:
                ratio = tab[i][total] / tab[i][entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:
            break
        piv = tab[leaving][entering]
        tab[leaving] = [v / piv for v in tab[leaving]]
        for i in range(m):
            if i != leaving and tab[i][entering] != 0:
                f = tab[i][entering]
                tab[i] = [v - f * p for v, p in zip(tab[i], tab[leaving])]
        f = obj[entering]
        if f != 0:
            obj = [v - f * p for v, p in zip(obj, tab[leaving])]
        basis[leaving] = entering

    if obj[total] != 0:
        return None
    x = [Fraction(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] = tab[i][total]
    return x


def scale_to_integer(vec: Sequence[Fraction]) -> tuple[int, ...]:
    """Clear denominators of a rational vector."""
    denom = 1
    for v in vec:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    return tuple(int(v * denom) for v in vec)


# ---------------------------------------------------------------------------
# Presolve: exact rewrites that shrink the frontier search.


@dataclass
class _Reduced:
    rows: list[Row]
    rhs: list[int]
    keep: list[int]
    pinned: dict[int, int]
    unsat: bool


def _presolve(system: LinSystem) -> _Reduced:
    """Pin variables forced by singleton or same-sign rows; fixpoint iteration.

    Every rewrite preserves the natural-number solution set exactly.
    """
    n = system.n_vars
    rows = [list(r) for r in system.rows]
    rhs = list(system.rhs)
    pinned: dict[int, int] = {}

    def pin(j: int, val: int) -> bool:
        if val < 0:
            return False
        pinned[j] = val
        for ri in range(len(rows)):
            coeff = rows[ri][j]
            if coeff:
                rhs[ri] -= coeff * val
                rows[ri][j] = 0
        return True

    changed = True
    while changed:
        changed = False
        for ri in range(len(rows)):
            row = rows[ri]
            nz = [(j, a) for j, a in enumerate(row) if a != 0]
            if not nz:
                if rhs[ri] != 0:
                    return _Reduced([], [], [], {}, True)
                continue
            if len(nz) == 1:
                j, a = nz[0]
                if rhs[ri] % a != 0 or not pin(j, rhs[ri] // a):
                    return _Reduced([], [], [], {}, True)
                changed = True
                continue
            pos = all(a > 0 for _, a in nz)
            neg = all(a < 0 for _, a in nz)
            if pos or neg:
                c = rhs[ri]
                if (pos and c < 0) or (neg and c > 0):
                    return _Reduced([], [], [], {}, True)
                if c == 0:
                    for j, _ in nz:
                        pin(j, 0)
                    changed = True

    out_rows: list[Row] = []
    out_rhs: list[int] = []
    for row, c in zip(rows, rhs):
        if any(row):
            out_rows.append(tuple(row))
            out_rhs.append(c)
        elif c != 0:
            return _Reduced([], [], [], {}, True)
    keep = [j for j in range(n) if j not in pinned]
    proj = [tuple(row[j] for j in keep) for row in out_rows]
    return _Reduced(proj, out_rhs, keep, pinned, False)


def _expand(reduced: _Reduced, x: Sequence[int], n: int) -> tuple[int, ...]:
    full = [0] * n
    for j, v in reduced.pinned.items():
        full[j] = v
    for pos, j in enumerate(reduced.keep):
        full[j] = x[pos]
    return tuple(full)


# ---------------------------------------------------------------------------
# Contejean-Devie frontier search.


def _cd_minimal_solutions(
    rows: list[Row],
    n: int,
    budget: int,
    norm_bound: int,
    stop_when=None,
    freeze_at_one: set[int] | None = None,
):
    """Minimal nonzero solutions of rows*x = 0 over the naturals.

    Breadth-first by norm with the classic gradient condition
    <A(x), A(e_j)> < 0 and pruning against already-found minimal solutions.
    ``stop_when`` may return a truthy value on a freshly found minimal
    solution to end the search early. Variables in ``freeze_at_one`` are
    never raised beyond value 1 (used for the homogenising column).
    """
    cols = [tuple(r[j] for r in rows) for j in range(n)]
    zero = (0,) * len(rows)

    def dot(u: Sequence[int], v: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(u, v))

    minimals: list[tuple[int, ...]] = []
    frontier: dict[tuple[int, ...], tuple[int, ...]] = {}
    for j in range(n):
        e = tuple(1 if i == j else 0 for i in range(n))
        frontier[e] = cols[j]
    nodes = 0
    while frontier:
        nxt: dict[tuple[int, ...], tuple[int, ...]] = {}
        for x in sorted(frontier):
            v = frontier[x]
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded("diophantine frontier", f"{nodes} nodes")
            if v == zero:
                if not any(all(u <= w for u, w in zip(m, x)) for m in minimals):
                    minimals.append(x)
                    if stop_when is not None:
                        res = stop_when(x)
                        if res:
                            return minimals, res
                continue
            if sum(x) + 1 > norm_bound:
                continue
            for j in range(n):
                if freeze_at_one is not None and j in freeze_at_one and x[j] >= 1:
                    continue
                if dot(v, cols[j]) < 0:
                    y = tuple(u + 1 if i == j else u for i, u in enumerate(x))
                    if y in nxt or y in frontier:
                        continue
                    if any(all(u <= w for u, w in zip(m, y)) for m in minimals):
                        continue
                    nxt[y] = tuple(a + b for a, b in zip(v, cols[j]))
        frontier = nxt
    return minimals, None


def hilbert_basis(system: LinSystem, budget: int = DEFAULT_NODE_BUDGET) -> list[tuple[int, ...]]:
    """All minimal nonzero natural solutions of a homogeneous system."""
    if not system.is_homogeneous():
        raise ValueError("hilbert_basis needs a homogeneous system")
    red = _presolve(system)
    if red.unsat:
        return []
    # Pinned-to-zero variables stay zero in every solution, so the reduced
    # search loses nothing. Pins with nonzero values cannot occur here.
    if any(v != 0 for v in red.pinned.values()):
        raise AssertionError("homogeneous presolve pinned a nonzero value")
    mins, _ = _cd_minimal_solutions(
        red.rows, len(red.keep), budget, system.pottier_hom_bound()
    )
    return sorted(_expand(red, x, system.n_vars) for x in mins)


def nat_satisfiable(
    system: LinSystem, budget: int = DEFAULT_NODE_BUDGET
) -> tuple[int, ...] | Unsat:
    """Some natural solution of A*x = c, or UNSAT.

    Complete: homogenise with a fresh unit column carrying -c and search for
    a minimal solution using that column exactly once; every solvable system
    has one. The rational relaxation runs first as a sound fast negative.
    """
    red = _presolve(system)
    if red.unsat:
        return UNSAT
    if not red.rows:
        return _expand(red, [0] * len(red.keep), system.n_vars)
    if lp_feasible(red.rows, red.rhs) is None:
        return UNSAT

    n = len(red.keep)
    rows_h = [row + (-c,) for row, c in zip(red.rows, red.rhs)]
    bound = 1 + max(
        LinSystem(tuple(rows_h), (0,) * len(rows_h), tuple(range(n + 1))).pottier_hom_bound(),
        1,
    )

    found: list[tuple[int, ...]] = []

    def stop(x: tuple[int, ...]):
        if x[n] == 1:
            found.append(x[:n])
            return True
        return None

    _cd_minimal_solutions(rows_h, n + 1, budget, bound, stop_when=stop, freeze_at_one={n})
    if found:
        return _expand(red, found[0], system.n_vars)
    return UNSAT


def positivity_support(
    system: LinSystem, budget: int = DEFAULT_NODE_BUDGET
) -> dict[int, tuple[int, ...]]:
    """Variables of a homogeneous system that some natural solution makes positive.

    Maps each such variable index to an integer certificate solution with
    that coordinate >= 1. Decided by exact rational feasibility, which is
    equivalent over a homogeneous cone (scale any rational point to
    integers). One query per variable, reusing earlier certificates.
    """
    if not system.is_homogeneous():
        raise ValueError("positivity_support needs a homogeneous system")
    n = system.n_vars
    out: dict[int, tuple[int, ...]] = {}
    for j in range(n):
        if j in out:
            continue
        # x_j >= 1 via x_j = 1 + s: move the column to the right-hand side.
        rhs = [-r[j] for r in system.rows]
        sol = lp_feasible(system.rows, rhs)
        if sol is None:
            continue
        point = [Fraction(v) for v in sol]
        point[j] += 1
        cert = scale_to_integer(point)
        if not system.homogenized().satisfied_by(cert):
            raise AssertionError("positivity certificate failed verification")
        for i, v in enumerate(cert):
            if v > 0 and i not in out:
                out[i] = cert
    return out


def coordinate_max(
    system: LinSystem, j: int, budget: int = DEFAULT_NODE_BUDGET
) -> int | Unbounded:
    """The exact maximum of x_j over natural solutions, or UNBOUNDED.

    Unboundedness reduces to positivity of x_j in the homogeneous part;
    otherwise gallop then bisect on feasibility of the system with x_j >= v,
    which stays under the particular-solution norm ceiling.
    """
    base = nat_satisfiable(system, budget)
    if base is UNSAT:
        raise UnsatInput("coordinate_max needs a satisfiable system")
    hom = system.homogenized()
    rhs = [-r[j] for r in hom.rows]
    if lp_feasible(hom.rows, rhs) is not None:
        return UNBOUNDED

    def sat(v: int) -> bool:
        return nat_satisfiable(system.with_lower_bound(j, v), budget) is not UNSAT

    ceiling = system.pottier_particular_bound() + 1
    lo = base[j]
    hi = max(lo + 1, 1)
    while sat(hi):
        lo = hi
        hi *= 2
        if hi > ceiling:
            raise AssertionError("bounded coordinate exceeded its norm ceiling")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if sat(mid):
            lo = mid
        else:
            hi = mid
    return lo


def pottier_decompose(
    system: LinSystem, x: Sequence[int], budget: int = DEFAULT_NODE_BUDGET
) -> tuple[tuple[int, ...], list[tuple[int, ...]]]:
    """Split a solution into a particular part plus minimal homogeneous parts.

    Greedily subtracts Hilbert-basis elements that fit under the remainder;
    the parts re-sum to the input and each homogeneous part is minimal.
    """
    if not system.satisfied_by(x):
        raise ValueError("input is not a solution of the system")
    basis = hilbert_basis(system.homogenized(), budget)
    remainder = list(x)
    parts: list[tuple[int, ...]] = []
    progress = True
    while progress:
        progress = False
        for h in basis:
            if all(u >= v for u, v in zip(remainder, h)):
                remainder = [u - v for u, v in zip(remainder, h)]
                parts.append(h)
                progress = True
                break
    particular = tuple(remainder)
    if not system.satisfied_by(particular):
        raise AssertionError("pottier decomposition lost the particular part")
    return particular, parts
