"""
Acceptance suite. Every criterion prints one PASS/FAIL line (visible with `pytest -s` or in the
terminal summary of `pytest -v`) and fails the test if either the check or its time budget fails.
"""

from __future__ import annotations

import io
import json
import random
import time
import traceback
import zlib

import pytest

from conftest import random_word
from oracles import artin_images
from garside import (
    BraidWord,
    NormalForm,
    PermutationBraid,
    Verdict,
    all_round_curves,
    artin_apply,
    beta,
    bgn_scan,
    classify_nt,
    conjugate,
    cycling,
    enumerate_set,
    image_of_round,
    initial_factor,
    is_rigid,
    normal_form,
    orbit_closure,
    psi,
    send_to_sss,
    sss_witnesses,
    tau_conjugator,
    transport,
    verify_single_orbit_certificate,
)
from garside.braid import inverse, simple_elements
from garside.cli import run
from garside.curves import CyclicClass, RoundCurve
from garside.family import beta_factor_words, psi_factor_words, psi_word, template

LINES: list[str] = []


def criterion(number: int, title: str, budget: float, check):
    t0 = time.perf_counter()
    error = None
    try:
        check()
    except Exception as e:  # noqa: BLE001  reported, then re-raised below
        error = e
        traceback.print_exc()
    elapsed = time.perf_counter() - t0
    ok = error is None and elapsed < budget
    note = "" if error is None else f"  ({type(error).__name__}: {error})"
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  [{elapsed:.2f}s / {budget:g}s]{note}"
    LINES.append(line)
    print(line)
    if error is not None:
        raise error
    assert elapsed < budget, line


@pytest.fixture(scope="module", autouse=True)
def summary(request):
    yield
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None:
        reporter.write_line("")
        for line in LINES:
            reporter.write_line(line)


def S(*letters):
    return PermutationBraid.from_word(5, letters)


# 1 --------------------------------------------------------------------------

def test_criterion_1_psi_normal_form():
    def check():
        for k in range(2, 6):
            word = " ".join(map(str, psi_word(k).letters))
            out = io.StringIO()
            assert run(["nf", "-n", "5", word, "--format", "json"], out=out) == 0
            result = json.loads(out.getvalue())["result"]
            expected = template(psi_factor_words(k))
            assert result["p"] == 0 and result["inf"] == 0 and result["sup"] == 4 * k - 1
            assert result["factors"] == [f.oneline() for f in expected]
            assert psi(k).factors == expected
    criterion(1, "psi_k normal form for k=2..5", 1.0, check)


# 2 --------------------------------------------------------------------------

def test_criterion_2_rigid_conjugate():
    def check():
        for k in range(2, 6):
            t = tau_conjugator(k)
            b = beta(k)
            assert b == inverse(t) * psi(k) * t
            assert is_rigid(b)
            assert (b.inf, b.sup) == (0, 4 * k - 1)
            assert b.factors == template(beta_factor_words(k))
    criterion(2, "beta_k = tau^-1 psi_k tau, rigid, inf 0 / sup 4k-1", 1.0, check)


# 3 --------------------------------------------------------------------------

def test_criterion_3_nine_prefix_certificate():
    def check():
        for k in (2, 3):
            cert = verify_single_orbit_certificate(beta(k))
            got = {c.prefix: (c.canonical_length, c.rigid) for c in cert.checks}
            long = 4 * k
            expected = {
                S(1): long, S(2): long, S(2, 1): long, S(2, 3): long, S(2, 1, 3): long,
                S(2, 3, 4): long, S(2, 1, 3, 4): long, S(3): long - 1, S(2, 1, 3, 2): long - 1,
            }
            assert set(got) == set(expected), sorted(str(p) for p in got)
            for prefix, length in expected.items():
                assert got[prefix][0] == length, (prefix, got[prefix])
                if length == 4 * k - 1:
                    assert not got[prefix][1], f"{prefix} should be non-rigid"
            assert cert.passed
    criterion(3, "nine strict-prefix conjugates of beta_k, k=2,3", 5.0, check)


# 4 --------------------------------------------------------------------------

def test_criterion_4_single_orbit():
    def check():
        sc = enumerate_set("SC", psi(2))
        orbit = orbit_closure(beta(2))
        assert set(sc.members) == set(orbit.members)
        assert len(orbit) <= 14
    criterion(4, "SC(psi_2) = orbit_closure(beta_2), size <= 14", 60.0, check)


# 5 --------------------------------------------------------------------------

def test_criterion_5_exponential_witnesses():
    def check():
        for k in range(2, 7):
            ws = sss_witnesses(k)
            assert len(ws) == 2 ** (2 * k - 2)
            assert len({w.key() for w in ws}) == len(ws)
            assert all(w.canonical_length == 4 * k - 1 for w in ws)
        sss = enumerate_set("SSS", psi(2))
        assert sss_witnesses(2) <= sss.member_set
        assert len(sss) >= 4
    criterion(5, "2^(2k-2) SSS witnesses for k=2..6, contained in SSS(psi_2)", 60.0, check)


# 6 --------------------------------------------------------------------------

def test_criterion_6_round_curves():
    def check():
        curves = all_round_curves(5)
        assert len(curves) == 9
        s13 = normal_form(BraidWord(5, (1, 3)))
        fixed = {c for c in curves if image_of_round(s13, c) == c}
        assert fixed == {RoundCurve(1, 2), RoundCurve(3, 4), RoundCurve(3, 5), RoundCurve(1, 4)}
        b = beta(2)
        for c in curves:
            trace = bgn_scan(b, c)
            assert trace.exited and trace.steps[-1].curve is None, c
    criterion(6, "9 round curves, sigma1sigma3 fixes 4, beta_2 scan exits non-round", 5.0, check)


# 7 --------------------------------------------------------------------------

def test_criterion_7_classification():
    def check():
        for k in (2, 3, 4):
            assert classify_nt(psi(k)).verdict is Verdict.PSEUDO_ANOSOV, k
        assert classify_nt(NormalForm.delta_power(5, 1)).verdict is Verdict.PERIODIC
        v = classify_nt(normal_form(BraidWord(5, (1, 2, 3, 4))))
        assert v.verdict is Verdict.PERIODIC and v.evidence == {"m": 5, "l": 2}
        assert classify_nt(normal_form(BraidWord(5, (1,)))).verdict is Verdict.REDUCIBLE
    criterion(7, "psi_k pA for k=2..4, Delta and sigma1..sigma4 periodic, sigma1 reducible", 120.0, check)


# 8 --------------------------------------------------------------------------

def _rewrite(rng, letters):
    move = rng.randrange(4)
    if move == 0:
        i = rng.randrange(len(letters) + 1)
        g = rng.randint(1, 4) * rng.choice([1, -1])
        return letters[:i] + [g, -g] + letters[i:]
    idx = list(range(len(letters) - 1))
    rng.shuffle(idx)
    for i in idx:
        a, b = letters[i], letters[i + 1]
        if move == 1 and a == -b:
            return letters[:i] + letters[i + 2:]
        if move == 2 and abs(abs(a) - abs(b)) >= 2:
            return letters[:i] + [b, a] + letters[i + 2:]
        if (move == 3 and i + 2 < len(letters) and letters[i + 2] == a
                and abs(abs(a) - abs(b)) == 1 and (a > 0) == (b > 0)):
            return letters[:i] + [b, a, b] + letters[i + 3:]
    return letters


def _suite_rewriting(rng):
    for _ in range(1000):
        w = random_word(rng, 5, rng.randint(0, 16))
        x = normal_form(w)
        letters = list(w.letters)
        for _ in range(rng.randint(1, 25)):
            letters = _rewrite(rng, letters)
        assert normal_form(BraidWord(5, tuple(letters))) == x
        assert artin_images(5, x.word().letters) == artin_images(5, w.letters)


def _suite_transport(rng):
    simples = [s for s in simple_elements(5) if not s.is_identity()]
    done = 0
    while done < 200:
        x = send_to_sss(normal_form(random_word(rng, 5, rng.randint(3, 14))))
        if not x.factors:
            continue
        s = rng.choice(simples)
        y = conjugate(x, s)
        if (y.p, y.sup) != (x.p, x.sup):
            continue
        t = transport(x, s)
        assert conjugate(cycling(x), t) == cycling(y)
        assert transport(x, initial_factor(x)) == initial_factor(cycling(x))
        done += 1


def _suite_bgn(rng):
    curves = all_round_curves(5)
    for _ in range(500):
        x = normal_form(random_word(rng, 5, rng.randint(1, 14)))
        c = rng.choice(curves)
        full = bgn_scan(x, c, early_exit=False)
        assert full.final == image_of_round(x, c)
        if full.final is not None:
            assert all(step.curve is not None for step in full.steps)


def _suite_sc_in_sss(rng):
    done = 0
    while done < 50:
        x = normal_form(random_word(rng, 5, rng.randint(1, 8)))
        if x.canonical_length > 4:
            continue
        sss = enumerate_set("SSS", x)
        sc = enumerate_set("SC", x)
        assert sc.member_set <= sss.member_set
        done += 1


def _suite_relations(rng):
    for _ in range(1000):
        c = CyclicClass.from_word(5, [rng.randint(1, 5) * rng.choice([1, -1])
                                      for _ in range(rng.randint(1, 10))])
        i = rng.randint(1, 3)
        j = rng.choice([k for k in range(1, 5) if abs(k - i) >= 2])
        assert artin_apply(BraidWord(5, (i, i + 1, i)), c) == artin_apply(BraidWord(5, (i + 1, i, i + 1)), c)
        assert artin_apply(BraidWord(5, (i, j)), c) == artin_apply(BraidWord(5, (j, i)), c)
        assert artin_apply(BraidWord(5, (i, -i)), c) == c


@pytest.mark.parametrize("name,suite", [
    ("normal-form uniqueness under rewriting (1000)", _suite_rewriting),
    ("transport square on SSS elements (200)", _suite_transport),
    ("BGN prefix roundness (500)", _suite_bgn),
    ("SC subset of SSS, canonical length <= 4 (50)", _suite_sc_in_sss),
    ("Artin action braid relations (1000)", _suite_relations),
])
def test_criterion_8_property_suites(name, suite):
    criterion(8, name, 600.0, lambda: suite(random.Random(zlib.crc32(name.encode()))))
