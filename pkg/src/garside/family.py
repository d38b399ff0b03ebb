"""
The five-strand family ψ_k = δ_3^{3k+1} σ_4^{2k+2} σ_3 σ_4^{2k-1}, its rigid conjugate β_k, and
the 2^{2k-2} super summit witnesses built from the atoms a_ij.
"""

from __future__ import annotations

import dataclasses
import itertools
import time
from typing import Callable, Sequence

from .braid import (
    BraidError,
    BraidWord,
    NormalForm,
    PermutationBraid,
    conjugate,
    inverse,
    left_weighted,
    normal_form,
    power,
    starting_set,
    finishing_set,
)
from .classify import Verdict, classify_nt, is_periodic
from .conjugacy import (
    DEFAULT_CAP,
    ResourceLimitError,
    enumerate_set,
    is_rigid,
    orbit_closure,
    verify_single_orbit_certificate,
)
from .curves import all_round_curves, bgn_scan

N = 5

# named positive words on 5 strands
DELTA_3 = (2, 1, 2)
SMALL_DELTA_3 = (2, 1)
SMALL_DELTA_3_TILDE = (1, 2)
D3S4 = DELTA_3 + (4,)
d3S4 = SMALL_DELTA_3 + (4,)
td3S4 = SMALL_DELTA_3_TILDE + (4,)
d3S4S3S4 = SMALL_DELTA_3 + (4, 3, 4)
S3S4 = (3, 4)
S3S4D3 = (3, 4) + DELTA_3
S1S3 = (1, 3)

ATOMS: dict[tuple[int, int], tuple[int, ...]] = {
    (1, 1): (1,),
    (1, 2): (1, 2),
    (2, 1): (2, 1),
    (2, 2): (2,),
}


def _check_k(k: int):
    if k < 2:
        raise BraidError(f"the family is defined for k >= 2, got k = {k}")


def _simple(letters: Sequence[int]) -> PermutationBraid:
    return PermutationBraid.from_word(N, letters)


def _nf(letters: Sequence[int]) -> NormalForm:
    return normal_form(BraidWord(N, tuple(letters)))


def psi_word(k: int) -> BraidWord:
    _check_k(k)
    return BraidWord(N, SMALL_DELTA_3 * (3 * k + 1) + (4,) * (2 * k + 2) + (3,) + (4,) * (2 * k - 1))


def psi_factor_words(k: int) -> list[tuple[int, ...]]:
    return [D3S4] * (2 * k) + [d3S4S3S4, S3S4] + [(4,)] * (2 * k - 3)


def beta_factor_words(k: int) -> list[tuple[int, ...]]:
    return ([S1S3] * (2 * k - 2) + [S3S4D3, D3S4] + [d3S4, td3S4] * (k - 1) + [d3S4S3S4])


def tau_word(k: int) -> BraidWord:
    _check_k(k)
    letters = D3S4 * (2 * k) + d3S4S3S4 + S3S4D3 + D3S4 * (2 * k - 1) + d3S4S3S4
    return BraidWord(N, letters)


def template(words: Sequence[Sequence[int]]) -> tuple[PermutationBraid, ...]:
    return tuple(_simple(w) for w in words)


def psi(k: int) -> NormalForm:
    return normal_form(psi_word(k))


def tau_conjugator(k: int) -> NormalForm:
    return normal_form(tau_word(k))


def beta(k: int) -> NormalForm:
    return conjugate(psi(k), tau_conjugator(k))


# ---------------------------------------------------------------------------
# Witnesses
# ---------------------------------------------------------------------------

def _check_bits(k: int, bits: Sequence[int]) -> tuple[int, ...]:
    _check_k(k)
    bits = tuple(bits)
    if len(bits) != 2 * k - 2 or set(bits) - {1, 2}:
        raise BraidError(f"expected {2 * k - 2} entries from {{1, 2}}, got {bits}")
    return bits


def atom_chain(bits: Sequence[int]) -> list[tuple[int, ...]]:
    """Words of a_{1,i_1}, a_{i_1,i_2}, …, a_{i_{m-1},i_m}."""
    seq = (1, *bits)
    return [ATOMS[seq[t], seq[t + 1]] for t in range(len(bits))]


def psi_variant(k: int, bits: Sequence[int]) -> NormalForm:
    """Normal form of A^{-1} ψ_k A for A = a_{1,i_1} a_{i_1,i_2} ⋯ a_{i_{2k-3},i_{2k-2}}."""
    bits = _check_bits(k, bits)
    return conjugate(psi(k), _nf([a for w in atom_chain(bits) for a in w]))


def twisted_inverse_atom(word: Sequence[int], l: int) -> PermutationBraid:
    """Δ_3^{l+1} a^{-1} Δ_3^{-l}, a simple braid on the first three strands."""
    d3 = _nf(DELTA_3)
    x = power(d3, l + 1) * inverse(_nf(word)) * power(d3, -l)
    if x.p or len(x.factors) != 1:
        raise BraidError(f"twisted inverse of {word} is not simple: {x}")
    return x.factors[0]


def psi_variant_template(k: int, bits: Sequence[int]) -> tuple[PermutationBraid, ...]:
    """
    Expected factors: (Δ_3σ_4)^2, then for t = m..1 the factor (Δ_3^t a_t^{-1} Δ_3^{1-t})σ_4,
    then δ_3σ_4σ_3σ_4, σ_3σ_4a_1, and σ_4a_t for t = 2..m, where a_t is the t-th atom and
    m = 2k-2.
    """
    atoms = atom_chain(_check_bits(k, bits))
    m = len(atoms)
    out = [_simple(D3S4)] * 2
    for t in range(m, 0, -1):
        f = twisted_inverse_atom(atoms[t - 1], t - 1)
        out.append(_simple(f.word() + (4,)))
    out += [_simple(d3S4S3S4), _simple(S3S4 + atoms[0])]
    out += [_simple((4,) + a) for a in atoms[1:]]
    return tuple(out)


def sss_witnesses(k: int) -> set[NormalForm]:
    """The 2^{2k-2} conjugates psi_variant(k, ·); each has canonical length 4k-1."""
    _check_k(k)
    out = set()
    for bits in itertools.product((1, 2), repeat=2 * k - 2):
        v = psi_variant(k, bits)
        if v.canonical_length != 4 * k - 1 or v.p != 0:
            raise AssertionError(f"witness {bits} has inf {v.p}, length {v.canonical_length}")
        out.add(v)
    return out


# ---------------------------------------------------------------------------
# Reproduction report
# ---------------------------------------------------------------------------

@dataclasses.dataclass
class Check:
    name: str
    passed: bool
    values: dict
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "values": self.values}


@dataclasses.dataclass
class FamilyReport:
    k: int
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"k": self.k, "passed": self.passed, "checks": [c.to_json() for c in self.checks]}

    def table(self) -> str:
        width = max(len(c.name) for c in self.checks)
        lines = [f"family psi_k, k = {self.k}"]
        for c in self.checks:
            summary = ", ".join(f"{key}={val}" for key, val in c.values.items()
                                if not isinstance(val, (list, dict)))
            lines.append(f"  {'PASS' if c.passed else 'FAIL'}  {c.name:<{width}}  {summary}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _run(name: str, fn: Callable[[], tuple[bool, dict]]) -> Check:
    t0 = time.perf_counter()
    try:
        ok, values = fn()
    except (BraidError, ResourceLimitError, AssertionError) as e:
        ok, values = False, {"error": f"{type(e).__name__}: {e}"}
    return Check(name, ok, values, time.perf_counter() - t0)


def verify_paper(k: int, cap: int = DEFAULT_CAP, enumerate_sc: bool = True, jobs: int = 1) -> FamilyReport:
    _check_k(k)
    x, b = psi(k), beta(k)
    r = 4 * k - 1

    def psi_nf():
        ok = x.p == 0 and x.sup == r and x.factors == template(psi_factor_words(k))
        return ok, {"inf": x.inf, "sup": x.sup, "normal_form": x.key()}

    def beta_nf():
        ok = b.p == 0 and b.sup == r and b.factors == template(beta_factor_words(k))
        return ok, {"inf": b.inf, "sup": b.sup, "normal_form": b.key()}

    def beta_rigid():
        return is_rigid(b), {"rigid": is_rigid(b)}

    def certificate():
        cert = verify_single_orbit_certificate(b)
        lengths = {"s".join([""] + [str(i) for i in c.prefix.word()]): c.canonical_length
                   for c in cert.checks}
        return cert.passed, {"prefixes": len(cert.checks), "orbit_size": cert.orbit_size,
                             "lengths": lengths}

    def single_orbit():
        sc = enumerate_set("SC", x, cap=cap, jobs=jobs)
        orbit = orbit_closure(b)
        ok = set(sc.members) == set(orbit.members) and len(orbit) <= 2 * r
        return ok, {"sc_size": len(sc), "orbit_size": len(orbit)}

    def not_periodic():
        per = is_periodic(b)
        return per is None, {"periodic": per is not None}

    def curve_scan():
        exits = {str(c): len(bgn_scan(b, c).steps) - 1 for c in all_round_curves(N)}
        ok = all(bgn_scan(b, c).final is None for c in all_round_curves(N))
        return ok, {"curves": len(exits), "exit_step": exits}

    def classification():
        v = classify_nt(x, cap=cap, jobs=jobs)
        return v.verdict is Verdict.PSEUDO_ANOSOV, {"verdict": v.verdict.value}

    def witnesses():
        ws = sss_witnesses(k)
        skeleton = all(psi_variant(k, bits).factors == psi_variant_template(k, bits)
                       for bits in itertools.product((1, 2), repeat=2 * k - 2))
        ok = len(ws) == 2 ** (2 * k - 2) and skeleton and all(w.canonical_length == r for w in ws)
        return ok, {"count": len(ws), "bound": 2 ** (2 * k - 2), "skeleton": skeleton}

    def weighting_chain():
        ok = True
        for bits in itertools.product((1, 2), repeat=2 * k - 2):
            atoms = atom_chain(bits)
            chain = [_simple(d3S4S3S4), _simple(S3S4 + atoms[0])] + [_simple((4,) + a) for a in atoms[1:]]
            ok &= all(left_weighted(s, t) for s, t in zip(chain, chain[1:]))
        atoms_ok = all(starting_set(_simple(w)) == {i} and finishing_set(_simple(w)) == {j}
                       for (i, j), w in ATOMS.items())
        return ok and atoms_ok, {"chain_left_weighted": ok, "atom_sets": atoms_ok}

    steps = [
        ("psi_normal_form", psi_nf),
        ("beta_conjugate_normal_form", beta_nf),
        ("beta_rigid", beta_rigid),
        ("nine_prefix_certificate", certificate),
        ("not_periodic", not_periodic),
        ("round_curve_scan", curve_scan),
        ("witness_left_weighting", weighting_chain),
        ("sss_witnesses", witnesses),
    ]
    if enumerate_sc:
        steps += [("sc_single_orbit", single_orbit), ("pseudo_anosov", classification)]
    return FamilyReport(k, [_run(name, fn) for name, fn in steps])

