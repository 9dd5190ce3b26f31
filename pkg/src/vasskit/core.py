"""VASS data model and exact operational semantics.

Configurations are tuples over the naturals extended with the absorbing
symbol ``OMEGA`` ("arbitrarily large"). All arithmetic is exact Python
integer arithmetic; OMEGA is a distinct singleton, never a sentinel number.
Every value here is immutable and every function is pure, so concurrent use
is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import DimensionMismatch, MalformedPath, NegativityError


class _Omega:
    """The unique 'arbitrarily large' counter value."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "w"

    def __deepcopy__(self, memo):
        return self

    def __copy__(self):
        return self


OMEGA = _Omega()

#: A counter value: a nonnegative int or OMEGA.
Value = int | _Omega
#: A configuration: d counter values.
Config = tuple[Value, ...]
#: An action: d (possibly negative) integer increments.
Action = tuple[int, ...]


def is_omega(v: Value) -> bool:
    return v is OMEGA


def value_le(u: Value, v: Value) -> bool:
    """u <= v with n < OMEGA for every natural n."""
    if v is OMEGA:
        return True
    if u is OMEGA:
        return False
    return u <= v


def value_refines(u: Value, v: Value) -> bool:
    """The flat order: u is refined by v iff v is u itself or OMEGA."""
    return v is OMEGA or u == v


def config_le(x: Config, y: Config) -> bool:
    return len(x) == len(y) and all(value_le(u, v) for u, v in zip(x, y))


def config_refines(x: Config, y: Config) -> bool:
    """Componentwise flat order; implies config_le."""
    return len(x) == len(y) and all(value_refines(u, v) for u, v in zip(x, y))


def config_is_finite(x: Config) -> bool:
    return not any(v is OMEGA for v in x)


def restrict(x: Config, keep: Iterable[int]) -> Config:
    """Replace the components *not* in ``keep`` (0-based) by OMEGA."""
    keep = set(keep)
    return tuple(v if i in keep else OMEGA for i, v in enumerate(x))


def config_norm(x: Config) -> int:
    """Sum of the finite entries (an all-OMEGA vector has norm 0)."""
    return sum(v for v in x if v is not OMEGA)


def action_norm(a: Action) -> int:
    return sum(abs(z) for z in a)


def omega_vector(dim: int) -> Config:
    return (OMEGA,) * dim


def step(c: Config, a: Action) -> Config:
    """Add an action to a configuration; OMEGA absorbs every increment.

    Raises NegativityError naming the first (1-based) finite component that
    would become negative.
    """
    if len(c) != len(a):
        raise DimensionMismatch(f"config of dim {len(c)} vs action of dim {len(a)}")
    out = []
    for i, (v, z) in enumerate(zip(c, a)):
        if v is OMEGA:
            out.append(OMEGA)
        else:
            w = v + z
            if w < 0:
                raise NegativityError(i + 1)
            out.append(w)
    return tuple(out)


def try_step(c: Config, a: Action) -> Config | None:
    try:
        return step(c, a)
    except NegativityError:
        return None


def apply_word(c: Config, word: Sequence[Action]) -> Config:
    for a in word:
        c = step(c, a)
    return c


class Transition(NamedTuple):
    name: str
    source: str
    action: Action
    target: str


@dataclass(frozen=True)
class Vass:
    """A vector addition system with states.

    ``states`` keeps its given order but set-like iteration elsewhere always
    sorts by name, so all derived output is deterministic.
    """

    dim: int
    states: tuple[str, ...]
    q_in: str
    q_out: str
    transitions: tuple[Transition, ...]

    def __post_init__(self):
        if not self.states:
            raise ValueError("a VASS needs at least one state")
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate state names")
        if self.q_in not in self.states or self.q_out not in self.states:
            raise ValueError("q_in/q_out must be states")
        names = [t.name for t in self.transitions]
        if len(set(names)) != len(names):
            raise ValueError("duplicate transition names")
        for t in self.transitions:
            if t.source not in self.states or t.target not in self.states:
                raise ValueError(f"transition {t.name} has a dangling endpoint")
            if len(t.action) != self.dim:
                raise ValueError(f"transition {t.name} has wrong action arity")

    def by_name(self, name: str) -> Transition:
        for t in self.transitions:
            if t.name == name:
                return t
        raise KeyError(name)

    def outgoing(self, state: str) -> list[Transition]:
        return [t for t in sorted(self.transitions) if t.source == state]

    def is_strongly_connected(self) -> bool:
        comps, _ = scc_decompose(self)
        return len(comps) == 1


def vass_size(g: Vass) -> int:
    """|Q| + |T| + total action norm; the exact size measure used in bounds."""
    return len(g.states) + len(g.transitions) + sum(action_norm(t.action) for t in g.transitions)


def reverse_vass(g: Vass) -> Vass:
    """Swap input/output and reverse every transition, negating its action."""
    rev = tuple(
        Transition(t.name, t.target, tuple(-z for z in t.action), t.source)
        for t in g.transitions
    )
    return Vass(g.dim, g.states, g.q_out, g.q_in, rev)


def scc_decompose(g: Vass) -> tuple[list[tuple[str, ...]], list[tuple[int, int]]]:
    """Strongly connected components plus condensation edges.

    Components are sorted by smallest member name; states inside a component
    are sorted; condensation edges are a sorted, deduplicated list of
    component-index pairs. The condensation is acyclic.
    """
    adj: dict[str, list[str]] = {q: [] for q in g.states}
    for t in sorted(g.transitions):
        adj[t.source].append(t.target)

    index: dict[str, int] = {}
    lowlink: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    counter = [0]
    comps: list[tuple[str, ...]] = []

    def strongconnect(root: str) -> None:
        # Iterative Tarjan; recursion depth is unbounded otherwise.
        work = [(root, iter(adj[root]))]
        index[root] = lowlink[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = lowlink[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(adj[w])))
                    advanced = True
                    break
                elif w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(tuple(sorted(comp)))

    for q in sorted(g.states):
        if q not in index:
            strongconnect(q)

    comps.sort(key=lambda c: c[0])
    comp_of = {q: i for i, comp in enumerate(comps) for q in comp}
    edges = sorted(
        {
            (comp_of[t.source], comp_of[t.target])
            for t in g.transitions
            if comp_of[t.source] != comp_of[t.target]
        }
    )
    return comps, edges


def induced_vass(g: Vass, states: Iterable[str], q_in: str, q_out: str) -> Vass:
    """The sub-VASS induced by a state subset, with fresh input/output."""
    keep = set(states)
    trans = tuple(t for t in g.transitions if t.source in keep and t.target in keep)
    return Vass(g.dim, tuple(sorted(keep)), q_in, q_out, trans)


def parikh(g: Vass, path: Sequence[str]) -> dict[str, int]:
    """Occurrence counts of a path given as transition names.

    Raises MalformedPath on unknown names or mismatched endpoints.
    """
    counts = {t.name: 0 for t in g.transitions}
    prev_target: str | None = None
    for name in path:
        try:
            t = g.by_name(name)
        except KeyError:
            raise MalformedPath(f"unknown transition {name}")
        if prev_target is not None and t.source != prev_target:
            raise MalformedPath(f"{name} does not start where the previous transition ended")
        counts[name] += 1
        prev_target = t.target
    return counts


def parikh_displacement(g: Vass, counts: Mapping[str, int]) -> Action:
    total = [0] * g.dim
    for t in g.transitions:
        c = counts.get(t.name, 0)
        if c:
            for i, z in enumerate(t.action):
                total[i] += c * z
    return tuple(total)


def path_displacement(g: Vass, path: Sequence[str]) -> Action:
    return parikh_displacement(g, parikh(g, path))


def path_labels(g: Vass, path: Sequence[str]) -> list[Action]:
    return [g.by_name(name).action for name in path]


def run(g: Vass, state: str, config: Config, word: Sequence[Action]) -> set[tuple[str, Config]]:
    """All state-configurations reachable from ``state(config)`` reading ``word``.

    Configurations along a fixed word are prefix-determined, so the frontier
    never exceeds |Q| entries per position.
    """
    if state not in g.states:
        raise ValueError(f"unknown state {state}")
    if any(len(a) != g.dim for a in word):
        raise DimensionMismatch("word arity differs from VASS dimension")
    frontier: set[tuple[str, Config]] = {(state, config)}
    for a in word:
        nxt: set[tuple[str, Config]] = set()
        for p, c in frontier:
            for t in sorted(g.transitions):
                if t.source == p and t.action == a:
                    c2 = try_step(c, a)
                    if c2 is not None:
                        nxt.add((t.target, c2))
        if not nxt:
            return set()
        frontier = nxt
    return frontier


def run_reaches(g: Vass, src: Config, dst: Config, word: Sequence[Action]) -> bool:
    """Does q_in(src) reach q_out(dst) along ``word``?"""
    return (g.q_out, dst) in run(g, g.q_in, src, word)


def fixed_components(g: Vass) -> dict[int, dict[str, int]]:
    """Components whose value is a function of the control state.

    For each such component i (0-based) returns a potential f with
    f(target) = f(source) + action[i] on every transition. Propagation runs
    per weakly-connected piece; the piece containing q_in is anchored at
    f(q_in) = 0, other pieces at their smallest state. Offsets are resolved
    later by the rigidity check, so values may be negative here.
    """
    neighbours: dict[str, list[tuple[str, Action, int]]] = {q: [] for q in g.states}
    for t in sorted(g.transitions):
        neighbours[t.source].append((t.target, t.action, +1))
        neighbours[t.target].append((t.source, t.action, -1))

    anchors: list[str] = []
    seen: set[str] = set()
    for root in [g.q_in] + sorted(g.states):
        if root in seen:
            continue
        anchors.append(root)
        stack = [root]
        seen.add(root)
        while stack:
            v = stack.pop()
            for w, _, _ in neighbours[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)

    out: dict[int, dict[str, int]] = {}
    for i in range(g.dim):
        f: dict[str, int] = {}
        ok = True
        for root in anchors:
            f[root] = 0
            stack = [root]
            while stack and ok:
                v = stack.pop()
                for w, action, sign in neighbours[v]:
                    val = f[v] + sign * action[i]
                    if w in f:
                        if f[w] != val:
                            ok = False
                            break
                    else:
                        f[w] = val
                        stack.append(w)
            if not ok:
                break
        if not ok:
            continue
        # Propagation along the undirected closure fixes f up to the anchor;
        # re-check every directed transition exactly.
        if all(f[t.target] == f[t.source] + t.action[i] for t in g.transitions):
            out[i] = f
    return out
