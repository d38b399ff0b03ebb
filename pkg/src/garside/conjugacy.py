"""
Conjugacy invariants: cycling, decycling, cyclic sliding, transport, and enumeration of the
super summit set (SSS) and the set of sliding circuits (SC).
"""

from __future__ import annotations

import dataclasses
import enum
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable

from .braid import (
    BraidError,
    NormalForm,
    PermutationBraid,
    as_simple,
    complement,
    conjugate,
    conjugate_by_delta,
    left_weighted,
    meet,
    mul,
    inverse,
    prefix_le,
    prefixes,
    simple_elements,
    tau,
)

log = logging.getLogger(__name__)

DEFAULT_CAP = 10**6
SLIDING_CAP = 4096


class ResourceLimitError(RuntimeError):
    """An enumeration or iteration exceeded its cap. `partial` holds what was found so far."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class Kind(str, enum.Enum):
    SSS = "SSS"
    SC = "SC"


# ---------------------------------------------------------------------------
# Single-step operations
# ---------------------------------------------------------------------------

def initial_factor(x: NormalForm) -> PermutationBraid:
    """ι(x) = Δ^{-p} x_1 Δ^p."""
    if not x.factors:
        raise BraidError("initial factor of a braid of canonical length 0")
    x1 = x.factors[0]
    return tau(x1) if x.p % 2 else x1


def final_factor(x: NormalForm) -> PermutationBraid:
    if not x.factors:
        raise BraidError("final factor of a braid of canonical length 0")
    return x.factors[-1]


def cycling(x: NormalForm) -> NormalForm:
    if not x.factors:
        return x
    return conjugate(x, initial_factor(x))


def decycling(x: NormalForm) -> NormalForm:
    if not x.factors:
        return x
    phi = NormalForm.from_simple(final_factor(x))
    return mul(mul(phi, x), inverse(phi))


def preferred_prefix(x: NormalForm) -> PermutationBraid:
    if not x.factors:
        return PermutationBraid.identity(x.n)
    return meet(initial_factor(x), complement(final_factor(x)))


def cyclic_sliding(x: NormalForm) -> NormalForm:
    if not x.factors:
        return x
    s = preferred_prefix(x)
    return x if s.is_identity() else conjugate(x, s)


def is_rigid(x: NormalForm) -> bool:
    if not x.factors:
        return True
    return left_weighted(final_factor(x), initial_factor(x))


# ---------------------------------------------------------------------------
# Reaching the invariant sets
# ---------------------------------------------------------------------------

def _stall_bound(x: NormalForm) -> int:
    # inf fails to rise for ‖Δ‖ consecutive cyclings only when it is already maximal
    return max(x.n * (x.n - 1) // 2, len(x.factors))


def send_to_sss(x: NormalForm) -> NormalForm:
    """A conjugate of x with maximal inf and minimal sup, by iterated cycling then decycling."""
    y = x
    stall = 0
    while y.factors and stall < _stall_bound(y):
        z = cycling(y)
        stall = 0 if z.p > y.p else stall + 1
        y = z
    stall = 0
    while y.factors and stall < _stall_bound(y):
        z = decycling(y)
        stall = 0 if z.sup < y.sup else stall + 1
        y = z
    return y


def sliding_circuit(x: NormalForm, cap: int = SLIDING_CAP) -> tuple[list[NormalForm], int]:
    """
    Iterate cyclic sliding from x until an element repeats. Returns the visited sequence and the
    index at which the periodic part starts.
    """
    seen: dict[NormalForm, int] = {}
    path: list[NormalForm] = []
    y = x
    while y not in seen:
        if len(path) >= cap:
            raise ResourceLimitError(f"cyclic sliding did not become periodic within {cap} steps")
        seen[y] = len(path)
        path.append(y)
        y = cyclic_sliding(y)
    return path, seen[y]


def send_to_sc(x: NormalForm) -> NormalForm:
    """The element of the sliding circuit reached from send_to_sss(x) with the smallest key."""
    path, start = sliding_circuit(send_to_sss(x))
    return min(path[start:], key=NormalForm.key)


def in_sliding_circuit(y: NormalForm, cap: int = SLIDING_CAP) -> bool:
    """True iff y is a periodic point of cyclic sliding."""
    seen = {y}
    z = cyclic_sliding(y)
    steps = 1
    while z != y:
        if z in seen:
            return False
        if steps >= cap:
            raise ResourceLimitError(f"cyclic sliding did not become periodic within {cap} steps")
        seen.add(z)
        z = cyclic_sliding(z)
        steps += 1
    return True


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class ConjugacySet:
    kind: Kind
    base: NormalForm
    members: tuple[NormalForm, ...]
    edges: tuple[tuple[NormalForm, PermutationBraid, NormalForm], ...]
    inf: int
    sup: int

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: NormalForm) -> bool:
        return x in self.member_set

    @property
    def member_set(self) -> frozenset[NormalForm]:
        return frozenset(self.members)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "n": self.base.n,
            "inf": self.inf,
            "sup": self.sup,
            "base": self.base.key(),
            "size": len(self.members),
            "members": [m.key() for m in self.members],
            "edges": [[a.key(), s.serialize(), b.key()] for a, s, b in self.edges],
        }

    def to_dot(self) -> str:
        index = {m: i for i, m in enumerate(self.members)}
        lines = [f"digraph {self.kind.value} {{"]
        for m, i in index.items():
            lines.append(f'  m{i} [label="{m.key()}"];')
        for a, s, b in self.edges:
            lines.append(f'  m{index[a]} -> m{index[b]} [label="{s.serialize()}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _sorted_members(members: Iterable[NormalForm]) -> tuple[NormalForm, ...]:
    return tuple(sorted(members, key=NormalForm.key))


def _is_member(kind: Kind, y: NormalForm, inf: int, sup: int) -> bool:
    if y.p != inf or y.sup != sup:
        return False
    return kind is Kind.SSS or in_sliding_circuit(y)


def _expand(kind: Kind, x: NormalForm, inf: int, sup: int,
            candidates: tuple[PermutationBraid, ...]) -> list[tuple[PermutationBraid, NormalForm]]:
    return [(s, y) for s in candidates
            if _is_member(kind, y := conjugate(x, s), inf, sup)]


def _expand_batch(args) -> list[list[tuple[PermutationBraid, NormalForm]]]:
    kind, batch, inf, sup, candidates = args
    return [_expand(kind, x, inf, sup, candidates) for x in batch]


def enumerate_set(kind: Kind | str, x: NormalForm, cap: int = DEFAULT_CAP, jobs: int = 1) -> ConjugacySet:
    """
    The full SSS or SC of x, by breadth-first closure under conjugation by nontrivial simple
    braids. Both sets are connected under such conjugations, so the closure is complete.
    """
    kind = Kind(kind)
    base = send_to_sss(x) if kind is Kind.SSS else send_to_sc(x)
    inf, sup = base.p, base.sup
    candidates = tuple(s for s in simple_elements(x.n) if not s.is_identity())

    members = {base}
    edges: set[tuple[NormalForm, PermutationBraid, NormalForm]] = set()
    frontier = [base]
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while frontier:
            if pool is None:
                results = [_expand(kind, y, inf, sup, candidates) for y in frontier]
            else:
                size = max(1, len(frontier) // (4 * jobs))
                batches = [frontier[i:i + size] for i in range(0, len(frontier), size)]
                results = [r for chunk in pool.map(_expand_batch,
                                                   [(kind, b, inf, sup, candidates) for b in batches])
                           for r in chunk]
            nxt = []
            for y, found in zip(frontier, results):
                for s, z in found:
                    edges.add((y, s, z))
                    if z not in members:
                        members.add(z)
                        nxt.append(z)
            if len(members) > cap:
                partial = _make_set(kind, base, members, edges, inf, sup)
                raise ResourceLimitError(f"{kind.value} exceeds the cap of {cap} members", partial)
            # canonical order keeps edge discovery independent of scheduling
            frontier = sorted(nxt, key=NormalForm.key)
            log.debug("%s frontier %d, members %d", kind.value, len(frontier), len(members))
    finally:
        if pool is not None:
            pool.shutdown()
    return _make_set(kind, base, members, edges, inf, sup)


def _make_set(kind, base, members, edges, inf, sup) -> ConjugacySet:
    order = {m.key(): m for m in members}
    edge_list = sorted(edges, key=lambda e: (e[0].key(), e[1].serialize(), e[2].key()))
    return ConjugacySet(kind, base, tuple(order[k] for k in sorted(order)), tuple(edge_list), inf, sup)


def super_summit_set(x: NormalForm, cap: int = DEFAULT_CAP, jobs: int = 1) -> ConjugacySet:
    return enumerate_set(Kind.SSS, x, cap, jobs)


def sliding_circuits(x: NormalForm, cap: int = DEFAULT_CAP, jobs: int = 1) -> ConjugacySet:
    return enumerate_set(Kind.SC, x, cap, jobs)


def check_conjugacy_set(cs: ConjugacySet):
    """Raise AssertionError if cs violates any ConjugacySet invariant."""
    members = cs.member_set
    for m in cs.members:
        m.check()
        assert (m.inf, m.sup) == (cs.inf, cs.sup), m
    adjacency: dict[NormalForm, set[NormalForm]] = {m: set() for m in cs.members}
    for a, s, b in cs.edges:
        assert a in members and b in members
        assert conjugate(a, s) == b, (a, s, b)
        adjacency[a].add(b)
        adjacency[b].add(a)
    seen = {cs.base}
    stack = [cs.base]
    while stack:
        for b in adjacency[stack.pop()]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    assert seen == members, "edge graph is not connected"


# ---------------------------------------------------------------------------
# Transport and orbits
# ---------------------------------------------------------------------------

def summit_bounds(x: NormalForm) -> tuple[int, int]:
    """(inf, sup) shared by every element of the SSS of x."""
    y = send_to_sss(x)
    return y.p, y.sup


def transport(x: NormalForm, s: PermutationBraid, bounds: tuple[int, int] | None = None) -> PermutationBraid:
    """s^{(1)} = ι(x)^{-1} s ι(y) for y = s^{-1} x s."""
    if bounds is None:
        bounds = summit_bounds(x)
    y = conjugate(x, s)
    for z, name in ((x, "x"), (y, "s^-1 x s")):
        if (z.p, z.sup) != bounds:
            raise BraidError(f"{name} = {z} is not in the super summit set")
    if not x.factors:
        # cycling is trivial on Δ-powers
        return s
    ix, iy = initial_factor(x), initial_factor(y)
    t = mul(mul(inverse(NormalForm.from_simple(ix)), NormalForm.from_simple(s)), NormalForm.from_simple(iy))
    result = as_simple(t)
    assert result is not None, f"transport of {s} along {x} is not simple: {t}"
    assert conjugate(cycling(x), result) == cycling(y), "transport square does not commute"
    return result


@dataclasses.dataclass(frozen=True)
class OrbitSet:
    members: tuple[NormalForm, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: NormalForm) -> bool:
        return x in set(self.members)


def orbit_closure(x: NormalForm) -> OrbitSet:
    """Closure of {x} under cycling and conjugation by Δ, for rigid x."""
    if not is_rigid(x):
        raise BraidError(f"{x} is not rigid")
    seen = {x}
    stack = [x]
    while stack:
        y = stack.pop()
        for z in (cycling(y), conjugate_by_delta(y)):
            if z not in seen:
                seen.add(z)
                stack.append(z)
    return OrbitSet(_sorted_members(seen))


def sc_orbits(sc: ConjugacySet) -> list[tuple[NormalForm, ...]]:
    """Partition SC into classes linked by cycling or Δ-conjugation inside SC."""
    members = sc.member_set
    rest = set(members)
    classes = []
    while rest:
        start = min(rest, key=NormalForm.key)
        comp = {start}
        stack = [start]
        while stack:
            y = stack.pop()
            for z in (cycling(y), conjugate_by_delta(y)):
                if z in members and z not in comp:
                    comp.add(z)
                    stack.append(z)
        # cycling is not invertible in general; pull in preimages so classes partition
        changed = True
        while changed:
            changed = False
            for y in list(rest - comp):
                if cycling(y) in comp or conjugate_by_delta(y) in comp:
                    comp.add(y)
                    changed = True
        rest -= comp
        classes.append(_sorted_members(comp))
    return sorted(classes, key=lambda c: c[0].key())


# ---------------------------------------------------------------------------
# Single-orbit certificate for rigid braids
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class PrefixCheck:
    source: str                 # "iota" or "dphi"
    prefix: PermutationBraid
    conjugate: NormalForm
    rigid: bool
    in_sss: bool

    @property
    def canonical_length(self) -> int:
        return self.conjugate.canonical_length

    @property
    def excluded(self) -> bool:
        """Outside SC: either not in the SSS or, SC being made of rigid braids, not rigid."""
        return not self.in_sss or not self.rigid

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "prefix": self.prefix.serialize(),
            "prefix_word": list(self.prefix.word()),
            "normal_form": self.conjugate.key(),
            "inf": self.conjugate.inf,
            "canonical_length": self.canonical_length,
            "rigid": self.rigid,
            "in_sss": self.in_sss,
            "excluded": self.excluded,
        }


@dataclasses.dataclass(frozen=True)
class OrbitCertificate:
    x: NormalForm
    checks: tuple[PrefixCheck, ...]
    full_conjugates_in_orbit: bool
    orbit_size: int

    @property
    def passed(self) -> bool:
        return self.full_conjugates_in_orbit and all(c.excluded for c in self.checks)

    def to_json(self) -> dict:
        return {
            "braid": self.x.key(),
            "passed": self.passed,
            "orbit_size": self.orbit_size,
            "full_conjugates_in_orbit": self.full_conjugates_in_orbit,
            "prefixes": [c.to_json() for c in self.checks],
        }


def verify_single_orbit_certificate(x: NormalForm) -> OrbitCertificate:
    """
    Check that conjugating the rigid braid x by any strict prefix of ι(x) or of ∂φ(x) leaves SC,
    while conjugating by ι(x) and ∂φ(x) stays in the orbit of x under cycling and Δ. Together with
    the connectivity of SC under such prefix conjugations, this shows SC is that single orbit.
    """
    if not is_rigid(x) or not x.factors:
        raise BraidError(f"{x} is not a rigid braid of positive canonical length")
    inf, sup = x.p, x.sup
    iota, dphi = initial_factor(x), complement(final_factor(x))
    checks = []
    seen = set()
    for source, top in (("iota", iota), ("dphi", dphi)):
        for u in prefixes(top):
            if u.is_identity() or u == top or u in seen:
                continue
            seen.add(u)
            y = conjugate(x, u)
            checks.append(PrefixCheck(source, u, y, is_rigid(y), (y.p, y.sup) == (inf, sup)))
    orbit = orbit_closure(x)
    full = conjugate(x, iota) in orbit and conjugate(x, dphi) in orbit
    return OrbitCertificate(x, tuple(checks), full, len(orbit))
