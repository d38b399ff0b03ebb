"""
The classical Garside structure of the Artin braid group B_n.

A braid is stored in left normal form Δ^p x_1 ⋯ x_r, where every canonical factor x_i is a
permutation braid (a positive braid in which each pair of strands crosses at most once). A
permutation braid is kept as the tuple of images of the start positions 0, …, n-1: strand
starting at position j ends at position perm[j]. Products are read left to right, so the
permutation of s·t is j ↦ t[s[j]].

Generators are indexed from 1 in every public function, matching σ_1, …, σ_{n-1}; σ_i swaps the
0-based positions i-1 and i.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
from typing import Iterable, Iterator, Sequence


class BraidError(ValueError):
    """Raised on invalid input to a braid operation."""


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class BraidWord:
    """A signed word in the Artin generators: k stands for σ_k and -k for σ_k^{-1}."""
    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 2:
            raise BraidError(f"strand count must be at least 2, got {self.n}")
        object.__setattr__(self, "letters", tuple(int(a) for a in self.letters))
        for a in self.letters:
            if a == 0 or abs(a) > self.n - 1:
                raise BraidError(f"generator {a} out of range for {self.n} strands")

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: BraidWord) -> BraidWord:
        if self.n != other.n:
            raise BraidError("cannot concatenate words on different strand counts")
        return BraidWord(self.n, self.letters + other.letters)

    def __mul__(self, m: int) -> BraidWord:
        return self.power(m)

    def inverse(self) -> BraidWord:
        return BraidWord(self.n, tuple(-a for a in reversed(self.letters)))

    def power(self, m: int) -> BraidWord:
        base = self if m >= 0 else self.inverse()
        return BraidWord(self.n, base.letters * abs(m))

    def is_positive(self) -> bool:
        return all(a > 0 for a in self.letters)

    def __str__(self) -> str:
        return " ".join(str(a) for a in self.letters)


# ---------------------------------------------------------------------------
# Cached permutation primitives (tuples of 0-based images)
# ---------------------------------------------------------------------------

Perm = tuple[int, ...]


def _compose(s: Perm, t: Perm) -> Perm:
    """Permutation of the braid s·t."""
    return tuple(t[v] for v in s)


@functools.lru_cache(maxsize=None)
def _invert(s: Perm) -> Perm:
    inv = [0] * len(s)
    for j, v in enumerate(s):
        inv[v] = j
    return tuple(inv)


@functools.lru_cache(maxsize=None)
def _starting_mask(s: Perm) -> int:
    # bit i-1 set iff σ_i ≼ s, i.e. the strands starting at i-1, i cross
    m = 0
    for j in range(len(s) - 1):
        if s[j] > s[j + 1]:
            m |= 1 << j
    return m


@functools.lru_cache(maxsize=None)
def _finishing_mask(s: Perm) -> int:
    # bit i-1 set iff s ≽ σ_i, i.e. the strands ending at i-1, i cross
    return _starting_mask(_invert(s))


@functools.lru_cache(maxsize=None)
def _inversion_mask(s: Perm) -> int:
    n = len(s)
    m = 0
    bit = 0
    for a in range(n):
        for b in range(a + 1, n):
            if s[a] > s[b]:
                m |= 1 << bit
            bit += 1
    return m


@functools.lru_cache(maxsize=None)
def _length(s: Perm) -> int:
    return bin(_inversion_mask(s)).count("1")


def _swap_positions(s: Perm, j: int) -> Perm:
    """Permutation of σ_{j+1}^{-1}·s, valid when σ_{j+1} ≼ s."""
    t = list(s)
    t[j], t[j + 1] = t[j + 1], t[j]
    return tuple(t)


def _swap_values(s: Perm, j: int) -> Perm:
    """Permutation of s·σ_{j+1}."""
    return tuple(j + 1 if v == j else j if v == j + 1 else v for v in s)


@functools.lru_cache(maxsize=None)
def _identity(n: int) -> Perm:
    return tuple(range(n))


@functools.lru_cache(maxsize=None)
def _delta(n: int) -> Perm:
    return tuple(range(n - 1, -1, -1))


@functools.lru_cache(maxsize=None)
def _tau(s: Perm) -> Perm:
    n = len(s)
    return tuple(n - 1 - s[n - 1 - j] for j in range(n))


@functools.lru_cache(maxsize=None)
def _right_complement(s: Perm) -> Perm:
    # ∂(s) = s^{-1} Δ
    n = len(s)
    return tuple(n - 1 - v for v in _invert(s))


@functools.lru_cache(maxsize=None)
def _left_complement(s: Perm) -> Perm:
    # Δ s^{-1}, so that left_complement(s)·s = Δ
    n = len(s)
    inv = _invert(s)
    return tuple(inv[n - 1 - j] for j in range(n))


@functools.lru_cache(maxsize=None)
def _weight_pair(a: Perm, b: Perm) -> tuple[Perm, Perm]:
    """Move generators from the head of b onto the tail of a until the pair is left-weighted."""
    while True:
        movable = _starting_mask(b) & ~_finishing_mask(a)
        if not movable:
            return a, b
        j = (movable & -movable).bit_length() - 1
        a = _swap_values(a, j)
        b = _swap_positions(b, j)


@functools.lru_cache(maxsize=None)
def _word(s: Perm) -> tuple[int, ...]:
    # peel off the smallest left descent each time
    letters = []
    while True:
        m = _starting_mask(s)
        if not m:
            return tuple(letters)
        j = (m & -m).bit_length() - 1
        letters.append(j + 1)
        s = _swap_positions(s, j)


# ---------------------------------------------------------------------------
# Permutation braids
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True, order=True)
class PermutationBraid:
    """A simple braid, i.e. a divisor of Δ, identified with its permutation."""
    perm: Perm

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise BraidError(f"{self.perm} is not a permutation of 0..{len(self.perm) - 1}")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> PermutationBraid:
        return cls(_identity(n))

    @classmethod
    def delta(cls, n: int) -> PermutationBraid:
        return cls(_delta(n))

    @classmethod
    def generator(cls, n: int, i: int) -> PermutationBraid:
        if not 1 <= i <= n - 1:
            raise BraidError(f"generator {i} out of range for {n} strands")
        return cls(_swap_values(_identity(n), i - 1))

    @classmethod
    def from_word(cls, n: int, letters: Iterable[int]) -> PermutationBraid:
        """The simple braid spelled by a positive word; raises if the word is not simple."""
        letters = tuple(letters)
        s = is_simple(BraidWord(n, letters))
        if s is None:
            raise BraidError(f"{letters} does not spell a simple braid")
        return s

    @classmethod
    def from_oneline(cls, images: Sequence[int]) -> PermutationBraid:
        """Parse 1-based one-line notation."""
        return cls(tuple(int(v) - 1 for v in images))

    def oneline(self) -> list[int]:
        return [v + 1 for v in self.perm]

    def serialize(self) -> str:
        return ",".join(str(v + 1) for v in self.perm)

    def word(self) -> tuple[int, ...]:
        """A fixed positive word for this simple braid (left descents peeled greedily)."""
        return _word(self.perm)

    def length(self) -> int:
        return _length(self.perm)

    def is_identity(self) -> bool:
        return self.perm == _identity(self.n)

    def is_delta(self) -> bool:
        return self.perm == _delta(self.n)

    def inverse_perm(self) -> PermutationBraid:
        return PermutationBraid(_invert(self.perm))

    def __str__(self) -> str:
        if self.is_identity():
            return "1"
        return "".join(f"s{i}" for i in self.word())


@functools.lru_cache(maxsize=None)
def _interned(perm: Perm) -> PermutationBraid:
    return PermutationBraid(perm)


def delta(n: int) -> PermutationBraid:
    if n < 2:
        raise BraidError("n must be at least 2")
    return PermutationBraid.delta(n)


def tau(s: PermutationBraid) -> PermutationBraid:
    """Δ^{-1} s Δ."""
    return PermutationBraid(_tau(s.perm))


def complement(s: PermutationBraid) -> PermutationBraid:
    """∂(s) = s^{-1}Δ, the simple braid with s·∂(s) = Δ."""
    return PermutationBraid(_right_complement(s.perm))


def left_complement(s: PermutationBraid) -> PermutationBraid:
    """Δs^{-1}, the simple braid with left_complement(s)·s = Δ."""
    return PermutationBraid(_left_complement(s.perm))


def _same_n(s: PermutationBraid, t: PermutationBraid):
    if s.n != t.n:
        raise BraidError(f"strand counts differ: {s.n} and {t.n}")


def simple_product(s: PermutationBraid, t: PermutationBraid) -> PermutationBraid | None:
    """s·t if it is again simple, else None."""
    _same_n(s, t)
    st = _compose(s.perm, t.perm)
    if _length(st) != _length(s.perm) + _length(t.perm):
        return None
    return PermutationBraid(st)


def prefix_le(s: PermutationBraid, t: PermutationBraid) -> bool:
    """s ≼ t: the strands crossing in s form a subset of those crossing in t."""
    _same_n(s, t)
    inv_s = _inversion_mask(s.perm)
    return inv_s & _inversion_mask(t.perm) == inv_s


def suffix_ge(t: PermutationBraid, s: PermutationBraid) -> bool:
    """t ≽ s, i.e. t s^{-1} is positive."""
    _same_n(s, t)
    return prefix_le(PermutationBraid(_invert(s.perm)), PermutationBraid(_invert(t.perm)))


def meet(s: PermutationBraid, t: PermutationBraid) -> PermutationBraid:
    """Greatest common prefix s ∧ t, found by greedy ascent."""
    _same_n(s, t)
    inv_s, inv_t = _inversion_mask(s.perm), _inversion_mask(t.perm)
    u = _identity(s.n)
    extended = True
    while extended:
        extended = False
        free = ~_finishing_mask(u)
        for j in range(s.n - 1):
            if not free >> j & 1:
                continue
            v = _swap_values(u, j)
            inv_v = _inversion_mask(v)
            if inv_v & inv_s == inv_v and inv_v & inv_t == inv_v:
                u = v
                extended = True
                break
    return PermutationBraid(u)


def _mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(j + 1 for j in range(mask.bit_length()) if mask >> j & 1)


def starting_set(s: PermutationBraid) -> frozenset[int]:
    """{i : σ_i ≼ s}."""
    if s.is_identity():
        raise BraidError("starting set of the trivial braid is undefined")
    return _mask_to_set(_starting_mask(s.perm))


def finishing_set(s: PermutationBraid) -> frozenset[int]:
    """{i : s ≽ σ_i}."""
    if s.is_identity():
        raise BraidError("finishing set of the trivial braid is undefined")
    return _mask_to_set(_finishing_mask(s.perm))


def left_weighted(s: PermutationBraid, t: PermutationBraid) -> bool:
    _same_n(s, t)
    return _starting_mask(t.perm) & ~_finishing_mask(s.perm) == 0


def is_simple(w: BraidWord) -> PermutationBraid | None:
    """The permutation braid represented by w, or None if w is not a positive simple word."""
    u = _identity(w.n)
    for a in w.letters:
        if a < 0 or _finishing_mask(u) >> (a - 1) & 1:
            return None
        u = _swap_values(u, a - 1)
    return PermutationBraid(u)


def simple_elements(n: int) -> Iterator[PermutationBraid]:
    """All n! simple braids, in lexicographic order of their permutations."""
    for perm in itertools.permutations(range(n)):
        yield PermutationBraid(perm)


def prefixes(s: PermutationBraid) -> list[PermutationBraid]:
    """All simple u with u ≼ s (including 1 and s), sorted by length then permutation."""
    found = {_identity(s.n)}
    frontier = [_identity(s.n)]
    inv_s = _inversion_mask(s.perm)
    while frontier:
        nxt = []
        for u in frontier:
            free = ~_finishing_mask(u)
            for j in range(s.n - 1):
                if free >> j & 1:
                    v = _swap_values(u, j)
                    inv_v = _inversion_mask(v)
                    if inv_v & inv_s == inv_v and v not in found:
                        found.add(v)
                        nxt.append(v)
        frontier = nxt
    return sorted((PermutationBraid(u) for u in found), key=lambda b: (b.length(), b.perm))


# ---------------------------------------------------------------------------
# Left normal form
# ---------------------------------------------------------------------------

def _normalize(n: int, p: int, factors: Iterable[Perm]) -> tuple[int, tuple[Perm, ...]]:
    """
    Left-weight an arbitrary sequence Δ^p f_1 f_2 ⋯ of simple factors.

    Factors are pushed one at a time onto an already left-weighted list, each push followed by a
    right-to-left sweep that stops at the first pair left unchanged. Copies of Δ collect at the
    front and copies of the identity at the back; both are stripped.
    """
    out: list[Perm] = []
    for f in factors:
        out.append(f)
        j = len(out) - 2
        while j >= 0:
            a, b = _weight_pair(out[j], out[j + 1])
            if a == out[j]:
                break
            out[j], out[j + 1] = a, b
            j -= 1

    d, e = _delta(n), _identity(n)
    lo, hi = 0, len(out)
    while lo < hi and out[lo] == d:
        lo += 1
    while lo < hi and out[hi - 1] == e:
        hi -= 1
    return p + lo, tuple(out[lo:hi])


@dataclasses.dataclass(frozen=True)
class NormalForm:
    """
    A braid Δ^p x_1 ⋯ x_r in left normal form. Instances built through the functions of this
    module are always normalised, so field equality is group-element equality.
    """
    n: int
    p: int
    factors: tuple[PermutationBraid, ...] = ()

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> NormalForm:
        return cls(n, 0, ())

    @classmethod
    def delta_power(cls, n: int, m: int) -> NormalForm:
        return cls(n, m, ())

    @classmethod
    def from_simple(cls, s: PermutationBraid) -> NormalForm:
        return cls._build(s.n, 0, (s.perm,))

    @classmethod
    def from_factors(cls, n: int, p: int, factors: Iterable[PermutationBraid]) -> NormalForm:
        """Normal form of Δ^p f_1 ⋯ f_m for arbitrary simple f_i."""
        return cls._build(n, p, (f.perm for f in factors))

    @classmethod
    def _build(cls, n: int, p: int, perms: Iterable[Perm]) -> NormalForm:
        p, perms = _normalize(n, p, perms)
        return cls(n, p, tuple(_interned(f) for f in perms))

    # -- invariants ----------------------------------------------------------

    @property
    def inf(self) -> int:
        return self.p

    @property
    def sup(self) -> int:
        return self.p + len(self.factors)

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def is_delta_power(self) -> bool:
        return not self.factors

    def check(self):
        """Raise BraidError unless the fields satisfy the normal-form invariants."""
        d, e = _delta(self.n), _identity(self.n)
        for f in self.factors:
            if f.n != self.n:
                raise BraidError(f"factor {f} has the wrong strand count")
            if f.perm in (d, e):
                raise BraidError(f"factor {f} is trivial or Δ")
        for a, b in zip(self.factors, self.factors[1:]):
            if not left_weighted(a, b):
                raise BraidError(f"factors {a} and {b} are not left-weighted")

    # -- group law -----------------------------------------------------------

    def __mul__(self, other: NormalForm) -> NormalForm:
        if not isinstance(other, NormalForm):
            return NotImplemented
        return mul(self, other)

    def __pow__(self, m: int) -> NormalForm:
        return power(self, m)

    def __invert__(self) -> NormalForm:
        return inverse(self)

    # -- export --------------------------------------------------------------

    def word(self) -> BraidWord:
        """A word for this element: Δ^p spelled out, then each factor's fixed positive word."""
        dw = _word(_delta(self.n))
        if self.p >= 0:
            head = dw * self.p
        else:
            head = tuple(-a for a in reversed(dw)) * -self.p
        return BraidWord(self.n, head + tuple(a for f in self.factors for a in f.word()))

    def key(self) -> str:
        """Canonical serialisation, used for hashing into sets and byte-stable ordering."""
        return "|".join([str(self.p), *(f.serialize() for f in self.factors)])

    @classmethod
    def from_key(cls, n: int, key: str) -> NormalForm:
        """Inverse of key(); raises BraidError if the result is not a valid normal form."""
        p, *parts = key.split("|")
        try:
            factors = tuple(PermutationBraid.from_oneline(part.split(",")) for part in parts)
        except ValueError as e:
            raise BraidError(f"malformed normal form key {key!r}") from e
        nf = cls(n, int(p), factors)
        nf.check()
        return nf

    def to_json(self) -> dict:
        return {"n": self.n, "p": self.p, "factors": [f.oneline() for f in self.factors]}

    @classmethod
    def from_json(cls, data: dict) -> NormalForm:
        nf = cls(int(data["n"]), int(data["p"]),
                 tuple(PermutationBraid.from_oneline(f) for f in data["factors"]))
        nf.check()
        return nf

    def __str__(self) -> str:
        parts = []
        if self.p:
            parts.append(f"D^{self.p}")
        parts.extend(f"({f})" for f in self.factors)
        return " ".join(parts) if parts else "1"


def normal_form(w: BraidWord) -> NormalForm:
    n = w.n
    p = 0
    perms: list[Perm] = []
    for a in w.letters:
        g = _swap_values(_identity(n), abs(a) - 1)
        if a > 0:
            perms.append(g)
        else:
            # σ^{-1} = Δ^{-1}·(Δσ^{-1}); the Δ^{-1} passes left, twisting everything before it
            p -= 1
            perms = [_tau(f) for f in perms]
            perms.append(_left_complement(g))
    return NormalForm._build(n, p, perms)


def _check_n(x: NormalForm, y: NormalForm):
    if x.n != y.n:
        raise BraidError(f"strand counts differ: {x.n} and {y.n}")


def mul(x: NormalForm, y: NormalForm) -> NormalForm:
    _check_n(x, y)
    if not x.factors:
        head: Iterable[Perm] = ()
    elif y.p % 2:
        head = (_tau(f.perm) for f in x.factors)
    else:
        head = (f.perm for f in x.factors)
    return NormalForm._build(x.n, x.p + y.p, itertools.chain(head, (f.perm for f in y.factors)))


def inverse(x: NormalForm) -> NormalForm:
    # x^{-1} = Δ^{-p-r} Π_{i=r..1} τ^{i+p}(∂ x_i)
    r = len(x.factors)
    perms = []
    for i in range(r, 0, -1):
        f = _right_complement(x.factors[i - 1].perm)
        perms.append(_tau(f) if (i + x.p) % 2 else f)
    return NormalForm._build(x.n, -x.p - r, perms)


def power(x: NormalForm, m: int) -> NormalForm:
    acc = NormalForm.identity(x.n)
    base = x if m >= 0 else inverse(x)
    m = abs(m)
    while m:
        if m & 1:
            acc = mul(acc, base)
        m >>= 1
        if m:
            base = mul(base, base)
    return acc


def simple_inverse(s: PermutationBraid) -> NormalForm:
    """s^{-1} = Δ^{-1} τ(∂s)."""
    return NormalForm._build(s.n, -1, (_tau(_right_complement(s.perm)),))


def conjugate(x: NormalForm, s: PermutationBraid | NormalForm) -> NormalForm:
    """s^{-1} x s."""
    if isinstance(s, PermutationBraid):
        # s^{-1} Δ^p x_1⋯x_r s = Δ^{p-1} τ^{p+1}(∂s) x_1⋯x_r s
        head = _right_complement(s.perm)
        if x.p % 2 == 0:
            head = _tau(head)
        perms = itertools.chain((head,), (f.perm for f in x.factors), (s.perm,))
        return NormalForm._build(x.n, x.p - 1, perms)
    return mul(inverse(s), mul(x, s))


def conjugate_by_delta(x: NormalForm) -> NormalForm:
    """Δ^{-1} x Δ, which twists every factor by τ."""
    return NormalForm(x.n, x.p, tuple(tau(f) for f in x.factors))


def as_simple(x: NormalForm) -> PermutationBraid | None:
    """The simple braid equal to x, or None if x is not simple."""
    if x.p == 0 and len(x.factors) <= 1:
        return x.factors[0] if x.factors else PermutationBraid.identity(x.n)
    if x.p == 1 and not x.factors:
        return PermutationBraid.delta(x.n)
    return None
