"""Constrained sequences of VASS triples and their linear characterisations.

A sequence alternates triples (entry config, VASS, exit config) with single
connecting actions. Its action language consists of the words that thread a
complete path through every VASS piece while the counters stay nonnegative
and match every finite boundary entry. The characteristic system is the
linear over-approximation of that language: per-piece flow conservation plus
displacement accounting plus boundary pins, over natural unknowns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

from .core import (
    OMEGA,
    Action,
    Config,
    Vass,
    action_norm,
    config_is_finite,
    config_norm,
    config_refines,
    is_omega,
    parikh_displacement,
    scc_decompose,
    try_step,
    vass_size,
)
from .dioph import LinSystem, rational_kernel_basis, span_dimension
from .errors import DimensionMismatch

Rank = tuple[int, ...]


@dataclass(frozen=True)
class KlmTriple:
    x: Config
    vass: Vass
    y: Config

    def __post_init__(self):
        if len(self.x) != self.vass.dim or len(self.y) != self.vass.dim:
            raise DimensionMismatch("triple configs must match the VASS dimension")


@dataclass(frozen=True)
class KlmSequence:
    dim: int
    triples: tuple[KlmTriple, ...]
    connectors: tuple[Action, ...]

    def __post_init__(self):
        if not self.triples:
            raise ValueError("a sequence needs at least one triple")
        if len(self.connectors) != len(self.triples) - 1:
            raise ValueError("need exactly one connector between consecutive triples")
        for t in self.triples:
            if t.vass.dim != self.dim:
                raise DimensionMismatch("all pieces must share the dimension")
        for a in self.connectors:
            if len(a) != self.dim:
                raise DimensionMismatch("connector arity mismatch")

    @property
    def k(self) -> int:
        return len(self.triples) - 1


def single(x: Config, g: Vass, y: Config) -> KlmSequence:
    return KlmSequence(g.dim, (KlmTriple(x, g, y),), ())


def klm_size(seq: KlmSequence) -> int:
    """The exact size measure: 2(d+1)^(d+1) times the payload weight."""
    d = seq.dim
    payload = seq.k
    payload += sum(action_norm(a) for a in seq.connectors)
    payload += sum(
        config_norm(t.x) + vass_size(t.vass) + config_norm(t.y) for t in seq.triples
    )
    return 2 * (d + 1) ** (d + 1) * payload


def cycle_space_dimensions(g: Vass) -> dict[str, int]:
    """Per transition: dimension of the span of cycle displacements through it.

    Transitions bridging two strongly connected components lie on no cycle
    (dimension 0). Inside a component the span equals the displacement image
    of the rational kernel of the component's flow matrix, computed exactly;
    every transition of one component shares the same value.
    """
    comps, _ = scc_decompose(g)
    comp_of = {q: i for i, comp in enumerate(comps) for q in comp}
    dims: dict[str, int] = {}
    comp_dim: dict[int, int] = {}
    for t in g.transitions:
        ci = comp_of[t.source]
        if ci != comp_of[t.target]:
            dims[t.name] = 0
            continue
        if ci not in comp_dim:
            comp_states = comps[ci]
            trans = sorted(
                tt for tt in g.transitions if tt.source in comp_states and tt.target in comp_states
            )
            rows = []
            for q in comp_states:
                rows.append(
                    tuple(
                        (1 if tt.target == q else 0) - (1 if tt.source == q else 0)
                        for tt in trans
                    )
                )
            basis = rational_kernel_basis(rows, len(trans))
            displacements = []
            for vec in basis:
                total = [0] * g.dim
                for coeff, tt in zip(vec, trans):
                    for i, z in enumerate(tt.action):
                        total[i] += coeff * z
                displacements.append(tuple(total))
            comp_dim[ci] = span_dimension(displacements)
        dims[t.name] = comp_dim[ci]
    return dims


def vass_rank(g: Vass) -> Rank:
    """(r_d, ..., r_0): transition counts by cycle-span dimension, top first."""
    dims = cycle_space_dimensions(g)
    counts = [0] * (g.dim + 1)
    for v in dims.values():
        counts[v] += 1
    return tuple(reversed(counts))


def klm_rank(seq: KlmSequence) -> Rank:
    total = [0] * (seq.dim + 1)
    for t in seq.triples:
        for i, v in enumerate(vass_rank(t.vass)):
            total[i] += v
    return tuple(total)


def rank_less(a: Rank, b: Rank) -> bool:
    """Strict lexicographic comparison from the top dimension down."""
    return a < b


# ---------------------------------------------------------------------------
# Characteristic systems.

VarLabel = tuple  # ("m", j, i) | ("phi", j, transition name) | ("n", j, i)


def _variables(seq: KlmSequence) -> list[VarLabel]:
    labels: list[VarLabel] = []
    for j, t in enumerate(seq.triples):
        labels.extend(("m", j, i) for i in range(seq.dim))
        labels.extend(("phi", j, tt.name) for tt in sorted(t.vass.transitions))
        labels.extend(("n", j, i) for i in range(seq.dim))
    return labels


def _kirchhoff_rows(g: Vass, col: Mapping[Hashable, int], j: int, n_vars: int, homogeneous: bool):
    """Flow-balance rows: inflow minus outflow equals output minus input marker."""
    rows, rhs = [], []
    for q in sorted(g.states):
        row = [0] * n_vars
        for t in g.transitions:
            c = col[("phi", j, t.name)]
            if t.target == q:
                row[c] += 1
            if t.source == q:
                row[c] -= 1
        target = 0
        if not homogeneous:
            target = (1 if g.q_out == q else 0) - (1 if g.q_in == q else 0)
        rows.append(tuple(row))
        rhs.append(target)
    return rows, rhs


def _build_system(seq: KlmSequence, homogeneous: bool) -> LinSystem:
    labels = _variables(seq)
    col = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    rows: list[tuple[int, ...]] = []
    rhs: list[int] = []

    def unit(lab: VarLabel, coeff: int, row: list[int]):
        row[col[lab]] += coeff

    for j, t in enumerate(seq.triples):
        for i in range(seq.dim):
            if not is_omega(t.x[i]):
                row = [0] * n
                unit(("m", j, i), 1, row)
                rows.append(tuple(row))
                rhs.append(0 if homogeneous else t.x[i])
            if not is_omega(t.y[i]):
                row = [0] * n
                unit(("n", j, i), 1, row)
                rows.append(tuple(row))
                rhs.append(0 if homogeneous else t.y[i])
        krows, krhs = _kirchhoff_rows(t.vass, col, j, n, homogeneous)
        rows.extend(krows)
        rhs.extend(krhs)
        for i in range(seq.dim):
            row = [0] * n
            unit(("n", j, i), 1, row)
            unit(("m", j, i), -1, row)
            for tt in t.vass.transitions:
                unit(("phi", j, tt.name), -tt.action[i], row)
            rows.append(tuple(row))
            rhs.append(0)
    for j, a in enumerate(seq.connectors, start=1):
        for i in range(seq.dim):
            row = [0] * n
            unit(("m", j, i), 1, row)
            unit(("n", j - 1, i), -1, row)
            rows.append(tuple(row))
            rhs.append(0 if homogeneous else a[i])
    return LinSystem(tuple(rows), tuple(rhs), tuple(labels))


def build_char_system(seq: KlmSequence) -> LinSystem:
    """Boundary pins, flow conservation, displacement, connector coupling."""
    return _build_system(seq, homogeneous=False)


def build_hom_system(seq: KlmSequence) -> LinSystem:
    """Same shape with every constant zeroed; detects unbounded unknowns."""
    return _build_system(seq, homogeneous=True)


@dataclass(frozen=True)
class CharSequence:
    """A candidate model: per triple an entry vector, counts, exit vector."""

    triples: tuple[tuple[Config, tuple[tuple[str, int], ...], Config], ...]

    def norm(self) -> int:
        total = 0
        for m, phi, nn in self.triples:
            total += sum(m) + sum(c for _, c in phi) + sum(nn)
        return total

    def counts(self, j: int) -> dict[str, int]:
        return dict(self.triples[j][1])

    def to_vector(self, system: LinSystem) -> tuple[int, ...]:
        values: dict = {}
        for j, (m, phi, nn) in enumerate(self.triples):
            for i, v in enumerate(m):
                values[("m", j, i)] = v
            for name, c in phi:
                values[("phi", j, name)] = c
            for i, v in enumerate(nn):
                values[("n", j, i)] = v
        return tuple(values[lab] for lab in system.labels)


def char_sequence_from_vector(seq: KlmSequence, system: LinSystem, x: Sequence[int]) -> CharSequence:
    values = dict(zip(system.labels, x))
    triples = []
    for j, t in enumerate(seq.triples):
        m = tuple(values[("m", j, i)] for i in range(seq.dim))
        phi = tuple((tt.name, values[("phi", j, tt.name)]) for tt in sorted(t.vass.transitions))
        nn = tuple(values[("n", j, i)] for i in range(seq.dim))
        triples.append((m, phi, nn))
    return CharSequence(tuple(triples))


def is_model(seq: KlmSequence, h: CharSequence) -> bool:
    """Direct semantic check, independent of the matrix encoding."""
    if len(h.triples) != len(seq.triples):
        return False
    for j, (t, (m, phi, nn)) in enumerate(zip(seq.triples, h.triples)):
        counts = dict(phi)
        if set(counts) != {tt.name for tt in t.vass.transitions}:
            return False
        if any(v < 0 for v in m) or any(v < 0 for v in nn) or any(c < 0 for c in counts.values()):
            return False
        if not config_refines(m, t.x) or not config_refines(nn, t.y):
            return False
        balance: dict[str, int] = {q: 0 for q in t.vass.states}
        for tt in t.vass.transitions:
            balance[tt.target] += counts[tt.name]
            balance[tt.source] -= counts[tt.name]
        for q in t.vass.states:
            want = (1 if t.vass.q_out == q else 0) - (1 if t.vass.q_in == q else 0)
            if balance[q] != want:
                return False
        disp = parikh_displacement(t.vass, counts)
        if tuple(u + z for u, z in zip(m, disp)) != nn:
            return False
    for j, a in enumerate(seq.connectors, start=1):
        prev = h.triples[j - 1][2]
        here = h.triples[j][0]
        stepped = try_step(prev, a)
        if stepped != here:
            return False
    return True


# ---------------------------------------------------------------------------
# Membership.


@dataclass(frozen=True)
class MembershipWitness:
    """A successful threading of a word: split points, paths, entry config."""

    boundaries: tuple[tuple[int, int], ...]  # per triple: (start, end) positions
    paths: tuple[tuple[str, ...], ...]  # transition names per triple
    m0: Config

    def char_sequence(self, seq: KlmSequence, word: Sequence[Action]) -> CharSequence:
        prefix = [tuple([0] * seq.dim)]
        for a in word:
            prefix.append(tuple(u + z for u, z in zip(prefix[-1], a)))
        triples = []
        for j, t in enumerate(seq.triples):
            start, end = self.boundaries[j]
            m = tuple(u + v for u, v in zip(self.m0, prefix[start]))
            nn = tuple(u + v for u, v in zip(self.m0, prefix[end]))
            counts = {tt.name: 0 for tt in t.vass.transitions}
            for name in self.paths[j]:
                counts[name] += 1
            phi = tuple(sorted(counts.items()))
            triples.append((m, phi, nn))
        return CharSequence(tuple(triples))


class Reject:
    __slots__ = ()

    def __repr__(self) -> str:
        return "Reject"


REJECT = Reject()


def membership(seq: KlmSequence, word: Sequence[Action]) -> MembershipWitness | Reject:
    """Decide whether a word belongs to the sequence's action language.

    Searches over split points and control states. Counter values along a
    fixed word are the entry vector plus prefix sums, so the only unknowns
    are the entry values at coordinates the first entry config leaves open;
    each boundary pin is an equality in exactly one of those unknowns and
    the nonnegativity constraints give lower bounds, hence the minimal
    feasible choice per coordinate is forced.
    """
    word = [tuple(a) for a in word]
    if any(len(a) != seq.dim for a in word):
        raise DimensionMismatch("word arity differs from sequence dimension")
    d = seq.dim
    L = len(word)
    prefix = [tuple([0] * d)]
    for a in word:
        prefix.append(tuple(u + z for u, z in zip(prefix[-1], a)))
    min_prefix = [min(p[i] for p in prefix) for i in range(d)]

    x0 = seq.triples[0].x
    free = [i for i in range(d) if is_omega(x0[i])]
    # Fixed entry coordinates must survive the whole word on their own.
    for i in range(d):
        if not is_omega(x0[i]) and x0[i] + min_prefix[i] < 0:
            return REJECT

    def checkpoint(pins: tuple, cfg: Config, pos: int):
        """Constrain entry values so position ``pos`` refines ``cfg``."""
        pins = dict(pins)
        for i in range(d):
            if is_omega(cfg[i]):
                continue
            if i in pins or i in free_index:
                need = cfg[i] - prefix[pos][i]
                if need < 0:
                    return None
                old = pins.get(i)
                if old is not None and old != need:
                    return None
                pins[i] = need
            else:
                if x0[i] + prefix[pos][i] != cfg[i]:
                    return None
        return tuple(sorted(pins.items()))

    free_index = set(free)
    start_pins = checkpoint((), x0, 0)
    # Entry config constraints on non-free coordinates are tautological.
    if start_pins is None:
        return REJECT

    Entry = tuple  # (pos, triple, state, pins)
    start = (0, 0, seq.triples[0].vass.q_in, start_pins)
    parents: dict[tuple, tuple | None] = {start: None}
    frontier = [start]
    k = seq.k
    accept_key = None
    while frontier and accept_key is None:
        nxt = []
        for key in frontier:
            pos, j, state, pins = key
            triple = seq.triples[j]
            g = triple.vass
            if state == g.q_out:
                exit_pins = checkpoint(pins, triple.y, pos)
                if exit_pins is not None:
                    if j == k and pos == L:
                        final = (pos, j, "<done>", exit_pins)
                        if final not in parents:
                            parents[final] = (key, None)
                        accept_key = final
                        break
                    if j < k and pos < L and word[pos] == seq.connectors[j]:
                        entry_pins = checkpoint(exit_pins, seq.triples[j + 1].x, pos + 1)
                        if entry_pins is not None:
                            nkey = (pos + 1, j + 1, seq.triples[j + 1].vass.q_in, entry_pins)
                            if nkey not in parents:
                                parents[nkey] = (key, None)
                                nxt.append(nkey)
            if pos < L:
                for t in sorted(g.transitions):
                    if t.source == state and t.action == word[pos]:
                        nkey = (pos + 1, j, t.target, pins)
                        if nkey not in parents:
                            parents[nkey] = (key, t.name)
                            nxt.append(nkey)
        frontier = nxt

    if accept_key is None:
        return REJECT

    final_pins = dict(accept_key[3])
    m0 = []
    for i in range(d):
        if i in free_index:
            lower = max(0, -min_prefix[i])
            if i in final_pins:
                if final_pins[i] < lower:
                    return REJECT
                m0.append(final_pins[i])
            else:
                m0.append(lower)
        else:
            m0.append(x0[i])

    # Reconstruct the split and the transition paths.
    chain = []
    key = accept_key
    while key is not None:
        link = parents[key]
        if link is None:
            chain.append((key, None))
            break
        chain.append((key, link[1]))
        key = link[0]
    chain.reverse()
    boundaries = []
    paths: list[list[str]] = []
    cur_start = 0
    cur_path: list[str] = []
    prev = None
    for (pos, j, state, _), tname in chain:
        if prev is not None:
            ppos, pj = prev
            if j != pj or state == "<done>":
                boundaries.append((cur_start, ppos))
                paths.append(cur_path)
                cur_start = pos
                cur_path = []
            elif tname is not None:
                cur_path.append(tname)
        prev = (pos, j if state != "<done>" else j)
    witness = MembershipWitness(
        boundaries=tuple(boundaries),
        paths=tuple(tuple(p) for p in paths),
        m0=tuple(m0),
    )
    return witness
