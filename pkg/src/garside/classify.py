"""Partial Nielsen-Thurston classification of braids."""

from __future__ import annotations

import dataclasses
import enum

from .braid import NormalForm, power
from .conjugacy import DEFAULT_CAP, ResourceLimitError, sc_orbits, sliding_circuits
from .curves import RoundCurve, all_round_curves, image_of_round, round_images


class Verdict(str, enum.Enum):
    PERIODIC = "Periodic"
    PSEUDO_ANOSOV = "PseudoAnosovCertified"
    REDUCIBLE = "ReducibleCertified"
    UNKNOWN = "Unknown"


@dataclasses.dataclass(frozen=True)
class NTVerdict:
    verdict: Verdict
    evidence: dict

    def to_json(self) -> dict:
        return {"verdict": self.verdict.value, "evidence": self.evidence}


def is_periodic(x: NormalForm) -> tuple[int, int] | None:
    """
    (m, l) with x^m = Δ^l, or None. Periodic braids are conjugate to powers of σ_1⋯σ_{n-1} or of
    σ_1⋯σ_{n-1}σ_1, whose n-th and (n-1)-th powers are central, so m ∈ {n-1, n} suffices.
    """
    for m in (x.n - 1, x.n):
        y = power(x, m)
        if y.is_delta_power():
            return m, y.p
    return None


def invariant_round_family(x: NormalForm) -> list[RoundCurve] | None:
    """A nonempty family of pairwise disjoint round curves that x permutes, if one exists."""
    images = round_images(x)
    for c in sorted(images):
        orbit = [c]
        d = images[c]
        while d != c and d in images and len(orbit) <= len(images):
            orbit.append(d)
            d = images[d]
        if d != c:
            continue
        if all(a.disjoint_from(b) for i, a in enumerate(orbit) for b in orbit[i + 1:]):
            return sorted(orbit)
    return None


def classify_nt(x: NormalForm, cap: int = DEFAULT_CAP, paranoid: bool = False,
                jobs: int = 1) -> NTVerdict:
    """
    Periodicity test, then a scan of the sliding circuits of x against all round curves. If no
    SC element sends a round curve to a round curve and x is not periodic, x is pseudo-Anosov,
    since a reducible non-periodic braid has an SC conjugate doing so. An SC element permuting a
    disjoint family of round curves certifies reducibility. Anything else is left Unknown.
    """
    per = is_periodic(x)
    if per is not None:
        return NTVerdict(Verdict.PERIODIC, {"m": per[0], "l": per[1]})

    try:
        sc = sliding_circuits(x, cap=cap, jobs=jobs)
    except ResourceLimitError as e:
        return NTVerdict(Verdict.UNKNOWN, {"reason": str(e), "resource_limit": True})

    orbits = sc_orbits(sc)
    # cyclings and Δ-conjugates of an SC element that sends a round curve to a round curve do
    # likewise, so one representative per orbit decides the question
    scanned = list(sc.members) if paranoid else [o[0] for o in orbits]
    scans = []
    any_round = False
    for m in scanned:
        images = round_images(m)
        any_round |= bool(images)
        scans.append({"representative": m.key(),
                      "round_to_round": [[[c.p, c.q], [d.p, d.q]] for c, d in sorted(images.items())]})

    summary = {"sc_size": len(sc), "orbits": len(orbits), "paranoid": paranoid,
               "curves": len(all_round_curves(x.n)), "scans": scans}
    if not any_round:
        return NTVerdict(Verdict.PSEUDO_ANOSOV, summary)

    for m in sc.members:
        family = invariant_round_family(m)
        if family is not None:
            return NTVerdict(Verdict.REDUCIBLE, {"member": m.to_json(),
                                                 "family": [[c.p, c.q] for c in family]})

    summary["reason"] = "some SC element sends a round curve to a round curve, but no invariant round family"
    return NTVerdict(Verdict.UNKNOWN, summary)


def replay(x: NormalForm, v: NTVerdict, cap: int = DEFAULT_CAP) -> bool:
    """Re-run the checks named in the evidence and confirm they still support the verdict."""
    ev = v.evidence
    if v.verdict is Verdict.PERIODIC:
        y = power(x, ev["m"])
        return y.is_delta_power() and y.p == ev["l"]
    if v.verdict is Verdict.REDUCIBLE:
        m = NormalForm.from_json(ev["member"])
        if m.n != x.n or m not in sliding_circuits(x, cap=cap):
            return False
        family = [RoundCurve(p, q) for p, q in ev["family"]]
        images = {image_of_round(m, c) for c in family}
        return images == set(family) and all(
            a.disjoint_from(b) for i, a in enumerate(family) for b in family[i + 1:])
    if v.verdict is Verdict.PSEUDO_ANOSOV:
        if is_periodic(x) is not None:
            return False
        sc = sliding_circuits(x, cap=cap)
        if len(sc) != ev["sc_size"]:
            return False
        reps = {s["representative"] for s in ev["scans"]}
        by_key = {m.key(): m for m in sc.members}
        covered = set()
        for o in sc_orbits(sc):
            if not reps & {m.key() for m in o}:
                return False
            covered |= {m.key() for m in o}
        return covered == set(by_key) and all(
            reps <= set(by_key) and not round_images(by_key[r]) for r in reps)
    return True

