"""
Independent brute-force oracles. Nothing here uses permutations or the normal-form code: positive
braids are handled as words, and equality of positive words is decided by exploring the finite
set of words reachable through the braid relations.
"""

from __future__ import annotations

import functools
from collections import deque


@functools.lru_cache(maxsize=None)
def positive_class(word: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    """All positive words equal to `word` in the braid monoid."""
    seen = {word}
    queue = deque([word])
    while queue:
        w = queue.popleft()
        for i in range(len(w) - 1):
            a, b = w[i], w[i + 1]
            if abs(a - b) >= 2:
                v = w[:i] + (b, a) + w[i + 2:]
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
            if i + 2 < len(w) and w[i + 2] == a and abs(a - b) == 1:
                v = w[:i] + (b, a, b) + w[i + 3:]
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
    return frozenset(seen)


def crosses_at_most_once(n: int, word: tuple[int, ...]) -> bool:
    """Track strands through the word and count crossings of every pair."""
    pos = list(range(n))          # pos[k] = strand currently at position k
    count: dict[tuple[int, int], int] = {}
    for g in word:
        a, b = pos[g - 1], pos[g]
        key = (min(a, b), max(a, b))
        count[key] = count.get(key, 0) + 1
        if count[key] > 1:
            return False
        pos[g - 1], pos[g] = b, a
    return True


def delta_word(n: int) -> tuple[int, ...]:
    return tuple(a for m in range(n - 1, 0, -1) for a in range(1, m + 1))


def word_prefix_le(n: int, u: tuple[int, ...], w: tuple[int, ...]) -> bool:
    """u ≼ w for positive words: some word equal to w starts with some word equal to u."""
    if len(u) > len(w):
        return False
    us = positive_class(u)
    return any(v[:len(u)] in us for v in positive_class(w))


def is_simple_word(n: int, w: tuple[int, ...]) -> bool:
    return crosses_at_most_once(n, w)


def greedy_normal_form(n: int, word: tuple[int, ...]) -> tuple[int, list[tuple[int, ...]]]:
    """
    Left normal form of a positive word by the definition: repeatedly split off the longest
    simple prefix over all equal words. Returns (p, representative words of the factors).
    """
    dw = delta_word(n)
    factors: list[tuple[int, ...]] = []
    rest = word
    while rest:
        best: tuple[int, ...] = ()
        best_rest = rest
        for v in positive_class(rest):
            k = len(best)
            while k < len(v) and crosses_at_most_once(n, v[:k + 1]):
                k += 1
            if k > len(best):
                best, best_rest = v[:k], v[k:]
        factors.append(best)
        rest = best_rest
    p = 0
    while factors and len(factors[0]) == len(dw):
        p += 1
        factors.pop(0)
    return p, factors


def definitional_left_weighted(n: int, s: tuple[int, ...], t: tuple[int, ...]) -> bool:
    """No σ_i with sσ_i simple and σ_i ≼ t."""
    for i in range(1, n):
        if crosses_at_most_once(n, s + (i,)) and word_prefix_le(n, (i,), t):
            return False
    return True


def simple_words(n: int) -> list[tuple[int, ...]]:
    """One word for every simple braid, found by breadth-first search over positive words."""
    out = [()]
    seen_classes = {frozenset({()})}
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(1, n):
                v = w + (i,)
                if not crosses_at_most_once(n, v):
                    continue
                cls = positive_class(v)
                if cls not in seen_classes:
                    seen_classes.add(cls)
                    out.append(v)
                    nxt.append(v)
        frontier = nxt
    return out


def _reduce(word: list[int]) -> list[int]:
    out: list[int] = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return out


def artin_images(n: int, word) -> tuple[tuple[int, ...], ...]:
    """
    Images of the free generators x_1..x_n under the braid, as reduced words. The Artin
    representation is faithful, so two words are the same braid iff these tuples agree.
    Images are composed as automorphisms: letters act left to right on the generator images.
    """
    images = [[i] for i in range(1, n + 1)]
    for g in word:
        i = abs(g)
        new = [list(w) for w in images]
        # substitute inside each current image
        for k, w in enumerate(images):
            out: list[int] = []
            for a in w:
                b = abs(a)
                if g > 0:
                    img = [i, i + 1, -i] if b == i else [i] if b == i + 1 else [b]
                else:
                    img = [i + 1] if b == i else [-(i + 1), i, i + 1] if b == i + 1 else [b]
                out.extend(img if a > 0 else [-c for c in reversed(img)])
            new[k] = _reduce(out)
        images = new
    return tuple(tuple(w) for w in images)
