"""
Round curves in the n-punctured disk and their images under braids.

A simple closed curve is modelled by the conjugacy class of the corresponding element of the free
group F_n = <x_1, ..., x_n>, where x_i is a loop around puncture i and x_1 ⋯ x_n is parallel to the
boundary. The round curve enclosing punctures p..q is the class of x_p x_{p+1} ⋯ x_q. Braids act by
the Artin automorphisms, applied letter by letter with the leftmost letter acting first.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable

from .braid import BraidWord, NormalForm, PermutationBraid


@dataclasses.dataclass(frozen=True, order=True)
class RoundCurve:
    """The round curve around the consecutive punctures p..q (1-based)."""
    p: int
    q: int

    def punctures(self) -> range:
        return range(self.p, self.q + 1)

    def disjoint_from(self, other: RoundCurve) -> bool:
        """Distinct round curves are disjoint iff their intervals are nested or separated."""
        if self == other:
            return False
        a, b = set(self.punctures()), set(other.punctures())
        return not (a & b) or a <= b or b <= a

    def __str__(self) -> str:
        return f"[{self.p},{self.q}]"


def all_round_curves(n: int) -> list[RoundCurve]:
    """Every essential round curve: intervals with at least 2 and at most n-1 punctures."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return [RoundCurve(p, q) for p in range(1, n + 1) for q in range(p + 1, n + 1) if (p, q) != (1, n)]


# ---------------------------------------------------------------------------
# Cyclic words in the free group
# ---------------------------------------------------------------------------

def _free_reduce(word: Iterable[int]) -> list[int]:
    out: list[int] = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return out


def _cyclic_reduce(word: list[int]) -> list[int]:
    lo, hi = 0, len(word)
    while hi - lo >= 2 and word[lo] == -word[hi - 1]:
        lo += 1
        hi -= 1
    return word[lo:hi]


def _least_rotation(word: list[int]) -> tuple[int, ...]:
    if not word:
        return ()
    return min(tuple(word[i:] + word[:i]) for i in range(len(word)))


@dataclasses.dataclass(frozen=True)
class CyclicClass:
    """
    A conjugacy class in F_n, stored as its least rotation after cyclic reduction. Letters are
    signed puncture indices: i for x_i, -i for x_i^{-1}.
    """
    n: int
    letters: tuple[int, ...]

    @classmethod
    def from_word(cls, n: int, word: Iterable[int]) -> CyclicClass:
        return cls(n, _least_rotation(_cyclic_reduce(_free_reduce(word))))

    @classmethod
    def of_curve(cls, n: int, c: RoundCurve) -> CyclicClass:
        return cls.from_word(n, c.punctures())

    def inverse(self) -> CyclicClass:
        return CyclicClass.from_word(self.n, [-a for a in reversed(self.letters)])

    def exponent_sums(self) -> tuple[int, ...]:
        sums = [0] * self.n
        for a in self.letters:
            sums[abs(a) - 1] += 1 if a > 0 else -1
        return tuple(sums)

    def __len__(self) -> int:
        return len(self.letters)


def _substitution(i: int, sign: int) -> dict[int, tuple[int, ...]]:
    """Images of x_i^{±1}, x_{i+1}^{±1} under σ_i (sign=+1) or its inverse."""
    j = i + 1
    if sign > 0:
        img = {i: (i, j, -i), j: (i,)}
    else:
        img = {i: (j,), j: (-j, i, j)}
    img.update({-a: tuple(-b for b in reversed(w)) for a, w in list(img.items())})
    return img


def _apply_letters(letters: Iterable[int], word: list[int]) -> list[int]:
    for g in letters:
        sub = _substitution(abs(g), 1 if g > 0 else -1)
        new: list[int] = []
        for a in word:
            new.extend(sub.get(a, (a,)))
        word = _cyclic_reduce(_free_reduce(new))
    return word


def artin_apply(w: BraidWord, c: CyclicClass) -> CyclicClass:
    if w.n != c.n:
        raise ValueError(f"braid on {w.n} strands acting on F_{c.n}")
    return CyclicClass.from_word(c.n, _apply_letters(w.letters, list(c.letters)))


def round_of_class(c: CyclicClass) -> RoundCurve | None:
    """The round curve whose class is c or c^{-1}, if any."""
    letters = c.letters if c.letters and c.letters[0] > 0 else c.inverse().letters
    if len(letters) < 2 or len(letters) >= c.n or any(a < 0 for a in letters):
        return None
    p, q = letters[0], letters[-1]
    if letters != tuple(range(p, q + 1)):
        return None
    return RoundCurve(p, q)


def enclosed_punctures(c: CyclicClass) -> frozenset[int] | None:
    """Punctures with exponent sum 1, if the abelianised class is a 0/1 vector; else None."""
    sums = c.exponent_sums()
    if set(sums) - {0, 1}:
        return None
    return frozenset(i + 1 for i, v in enumerate(sums) if v == 1)


# ---------------------------------------------------------------------------
# Images of round curves
# ---------------------------------------------------------------------------

def _prefix_words(x: NormalForm) -> list[tuple[str, tuple[int, ...]]]:
    """Labelled pieces of the word expansion: Δ^p first (if p != 0), then each factor."""
    pieces = []
    if x.p:
        pieces.append((f"D^{x.p}", NormalForm.delta_power(x.n, x.p).word().letters))
    for f in x.factors:
        pieces.append((str(f), f.word()))
    return pieces


def image_class(x: NormalForm | BraidWord, c: RoundCurve) -> CyclicClass:
    w = x.word() if isinstance(x, NormalForm) else x
    return artin_apply(w, CyclicClass.of_curve(w.n, c))


def image_of_round(x: NormalForm | BraidWord, c: RoundCurve) -> RoundCurve | None:
    return round_of_class(image_class(x, c))


def image_of_round_simple(s: PermutationBraid, c: RoundCurve) -> RoundCurve | None:
    return round_of_class(artin_apply(BraidWord(s.n, s.word()), CyclicClass.of_curve(s.n, c)))


@dataclasses.dataclass(frozen=True)
class ScanStep:
    label: str                  # "start", "D^p", or the factor
    curve: RoundCurve | None

    def render(self) -> str:
        return f"round {self.curve}" if self.curve else "non-round (exit)"


@dataclasses.dataclass(frozen=True)
class BGNTrace:
    braid: NormalForm
    curve: RoundCurve
    steps: tuple[ScanStep, ...]
    exited: bool                # stopped at a non-round prefix image

    @property
    def final(self) -> RoundCurve | None:
        """Image of the curve under the whole braid, None when it is not round."""
        return None if self.exited else self.steps[-1].curve

    def render(self) -> str:
        return "\n".join(f"{i:3d}  {s.label:<22} {s.render()}" for i, s in enumerate(self.steps))

    def to_json(self) -> dict:
        return {
            "curve": [self.curve.p, self.curve.q],
            "exited": self.exited,
            "final": None if self.final is None else [self.final.p, self.final.q],
            "steps": [{"label": s.label, "curve": None if s.curve is None else [s.curve.p, s.curve.q]}
                      for s in self.steps],
        }


def bgn_scan(x: NormalForm, c: RoundCurve, early_exit: bool = True) -> BGNTrace:
    """
    Apply Δ^p and then the factors of x one at a time to the round curve c, recording each
    prefix image. A non-round prefix image means the final image is not round either, so by
    default the scan stops there.
    """
    word = list(CyclicClass.of_curve(x.n, c).letters)
    steps = [ScanStep("start", c)]
    exited = False
    for label, letters in _prefix_words(x):
        word = _apply_letters(letters, word)
        r = round_of_class(CyclicClass.from_word(x.n, word))
        steps.append(ScanStep(label, r))
        if r is None:
            exited = True
            if early_exit:
                break
    if exited and not early_exit:
        exited = steps[-1].curve is None
    return BGNTrace(x, c, tuple(steps), exited)


def round_images(x: NormalForm) -> dict[RoundCurve, RoundCurve]:
    """All round curves whose image under x is round, with their images."""
    out = {}
    for c in all_round_curves(x.n):
        trace = bgn_scan(x, c)
        if trace.final is not None:
            out[c] = trace.final
    return out
