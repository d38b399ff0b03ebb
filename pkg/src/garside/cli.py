"""
Command-line interface.

Words are whitespace-separated nonzero integers, k for σ_k and -k for σ_k^{-1}. A group "(w)^m"
repeats w m times (m < 0 repeats the inverse); groups may nest.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import re
import sys
import time

from . import conjugacy as cj
from .braid import (
    BraidError,
    BraidWord,
    NormalForm,
    PermutationBraid,
    as_simple,
    conjugate,
    inverse,
    mul,
    normal_form,
)
from .classify import NTVerdict, Verdict, classify_nt, replay
from .curves import RoundCurve, all_round_curves, bgn_scan, image_of_round
from .family import psi, verify_paper

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

_GROUP = re.compile(r"\(([^()]*)\)\s*\^\s*(-?\d+)")


class UsageError(Exception):
    pass


def expand_macros(text: str) -> str:
    """Expand "(w)^m" groups, innermost first."""
    while True:
        m = _GROUP.search(text)
        if m is None:
            break
        body = m.group(1).split()
        times = int(m.group(2))
        if times < 0:
            body = [str(-int(a)) for a in reversed(body)]
        text = text[:m.start()] + " " + " ".join(body * abs(times)) + " " + text[m.end():]
    if "(" in text or ")" in text or "^" in text:
        raise UsageError(f"unbalanced repetition group in {text!r}")
    return text


def parse_word(n: int, text: str) -> BraidWord:
    tokens = expand_macros(text).split()
    try:
        letters = tuple(int(t) for t in tokens)
    except ValueError as e:
        raise UsageError(f"bad word {text!r}: {e}") from None
    return BraidWord(n, letters)


def parse_curve(text: str) -> RoundCurve:
    try:
        p, q = (int(v) for v in text.strip("[]").split(","))
    except ValueError:
        raise UsageError(f"bad curve {text!r}, expected p,q") from None
    return RoundCurve(p, q)


def _simple_arg(n: int, text: str) -> PermutationBraid:
    s = as_simple(normal_form(parse_word(n, text)))
    if s is None:
        raise BraidError(f"{text!r} is not a simple braid")
    return s


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _nf_payload(x: NormalForm) -> dict:
    return {**x.to_json(), "inf": x.inf, "sup": x.sup, "canonical_length": x.canonical_length,
            "key": x.key()}


def _nf_text(x: NormalForm) -> str:
    lines = [f"inf {x.inf}  sup {x.sup}  canonical length {x.canonical_length}"]
    if not x.factors and x.p == 0:
        lines.append("identity")
    else:
        lines.append(f"Delta^{x.p}")
    for i, f in enumerate(x.factors, 1):
        lines.append(f"{i:3d}  [{f.serialize()}]  {' '.join(map(str, f.word()))}")
    return "\n".join(lines)


def _set_text(cs: cj.ConjugacySet) -> str:
    lines = [f"{cs.kind.value}: {len(cs)} members, inf {cs.inf}, sup {cs.sup}, {len(cs.edges)} edges"]
    lines += [f"  {m.key()}" for m in cs.members]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Commands. Each returns (payload, text).
# ---------------------------------------------------------------------------

def _word(args) -> NormalForm:
    return normal_form(parse_word(args.n, args.word))


def cmd_nf(args):
    x = _word(args)
    return {"result": _nf_payload(x)}, _nf_text(x)


def cmd_inv(args):
    x = inverse(_word(args))
    return {"result": _nf_payload(x)}, _nf_text(x)


def cmd_mul(args):
    x = NormalForm.identity(args.n)
    for w in args.words:
        x = mul(x, normal_form(parse_word(args.n, w)))
    return {"result": _nf_payload(x)}, _nf_text(x)


def cmd_conj(args):
    x = conjugate(_word(args), normal_form(parse_word(args.n, args.by)))
    return {"result": _nf_payload(x)}, _nf_text(x)


def _iterate(op):
    def cmd(args):
        x = _word(args)
        for _ in range(args.times):
            x = op(x)
        return {"result": _nf_payload(x)}, _nf_text(x)
    return cmd


def cmd_rigid(args):
    x = _word(args)
    r = cj.is_rigid(x)
    payload = {"braid": _nf_payload(x), "rigid": r}
    if x.factors:
        payload["preferred_prefix"] = cj.preferred_prefix(x).serialize()
    return payload, f"{'rigid' if r else 'not rigid'}\n{_nf_text(x)}"


def _cmd_set(kind):
    def cmd(args):
        cs = cj.enumerate_set(kind, _word(args), cap=args.cap, jobs=args.jobs)
        if args.dot:
            return cs.to_json(), cs.to_dot()
        return cs.to_json(), _set_text(cs)
    return cmd


def cmd_transport(args):
    x = _word(args)
    s = _simple_arg(args.n, args.simple)
    t = cj.transport(x, s)
    payload = {"braid": _nf_payload(x), "simple": s.serialize(), "transport": t.serialize(),
               "cycling": _nf_payload(cj.cycling(x))}
    return payload, f"transport of [{s.serialize()}] along one cycling: [{t.serialize()}]  {' '.join(map(str, t.word()))}"


def cmd_curves(args):
    curves = all_round_curves(args.n)
    x = _word(args) if args.word is not None else None
    rows = []
    for c in curves:
        img = image_of_round(x, c) if x is not None else c
        rows.append({"curve": [c.p, c.q], "image": None if img is None else [img.p, img.q]})
    text = [f"{len(curves)} round curves on {args.n} strands"]
    for c, row in zip(curves, rows):
        if x is None:
            text.append(f"  {c}")
        else:
            img = RoundCurve(*row["image"]) if row["image"] else "non-round"
            text.append(f"  {c} -> {img}")
    return {"count": len(curves), "curves": rows}, "\n".join(text)


def cmd_bgn(args):
    x = _word(args)
    curves = [parse_curve(args.curve)] if args.curve else all_round_curves(args.n)
    traces = [bgn_scan(x, c) for c in curves]
    text = []
    for t in traces:
        text.append(f"curve {t.curve}: final {'round ' + str(t.final) if t.final else 'non-round'}")
        text.append(t.render())
    return {"braid": _nf_payload(x), "traces": [t.to_json() for t in traces]}, "\n".join(text)


def cmd_classify(args):
    x = _word(args)
    v = classify_nt(x, cap=args.cap, paranoid=args.paranoid, jobs=args.jobs)
    if v.evidence.get("resource_limit"):
        raise cj.ResourceLimitError(v.evidence["reason"])
    text = f"{v.verdict.value}\n" + json.dumps({k: val for k, val in v.evidence.items() if k != "scans"},
                                               sort_keys=True)
    return {"braid": _nf_payload(x), **v.to_json()}, text


def cmd_paper(args):
    report = verify_paper(args.k, cap=args.cap, enumerate_sc=not args.no_sc, jobs=args.jobs)
    return report.to_json(), report.table()


def bench_rows(kmin: int, kmax: int, sss_kmax: int, cap: int, jobs: int = 1) -> list[dict]:
    rows = []
    for k in range(kmin, kmax + 1):
        t0 = time.perf_counter()
        x = psi(k)
        sss = cj.enumerate_set("SSS", x, cap=cap, jobs=jobs) if k <= sss_kmax else None
        sc = cj.enumerate_set("SC", x, cap=cap, jobs=jobs)
        rows.append({"k": k, "canonical_length": x.canonical_length,
                     "sss_size": len(sss) if sss is not None else "",
                     "sc_size": len(sc),
                     "wall_time_ms": round(1000 * (time.perf_counter() - t0), 1)})
    return rows


def cmd_bench(args):
    rows = bench_rows(args.kmin, args.kmax, args.sss_kmax, args.cap, args.jobs)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["k", "canonical_length", "sss_size", "sc_size", "wall_time_ms"],
                            lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    payload = {"rows": rows}
    if args.plot:
        from .plotting import plot_bench
        payload["figure"] = plot_bench(rows, args.plot)
    return payload, buf.getvalue().rstrip("\n")


# ---------------------------------------------------------------------------
# --verify: deserialize our own JSON and re-check it
# ---------------------------------------------------------------------------

def _nf_dicts(obj):
    if isinstance(obj, dict):
        if {"n", "p", "factors"} <= obj.keys():
            yield obj
        for v in obj.values():
            yield from _nf_dicts(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _nf_dicts(v)


def _strip_volatile(obj):
    if isinstance(obj, dict):
        return {k: _strip_volatile(v) for k, v in obj.items() if k != "wall_time_ms"}
    if isinstance(obj, list):
        return [_strip_volatile(v) for v in obj]
    return obj


def verify_payload(command: str, args, data: dict) -> list[str]:
    """Problems found when re-checking a decoded payload; empty means verified."""
    problems = []
    for d in _nf_dicts(data):
        try:
            NormalForm.from_json(d)
        except (BraidError, ValueError, KeyError) as e:
            problems.append(f"invalid normal form {d}: {e}")
    if command in ("nf", "inv", "mul", "conj", "cycle", "decycle", "slide"):
        x = NormalForm.from_json(data["result"])
        if x.key() != data["result"]["key"]:
            problems.append("key does not match factors")
        if command == "nf" and x != _word(args):
            problems.append("re-parsed normal form differs from the input word")
    if command in ("sss", "sc"):
        members = [NormalForm.from_key(data["n"], k) for k in data["members"]]
        cs = cj.ConjugacySet(cj.Kind(data["kind"]), NormalForm.from_key(data["n"], data["base"]),
                             tuple(members),
                             tuple((NormalForm.from_key(data["n"], a), PermutationBraid.from_oneline(s.split(",")),
                                    NormalForm.from_key(data["n"], b)) for a, s, b in data["edges"]),
                             data["inf"], data["sup"])
        try:
            cj.check_conjugacy_set(cs)
        except AssertionError as e:
            problems.append(f"conjugacy set check failed: {e}")
    if command == "classify":
        x = NormalForm.from_json(data["braid"])
        if not replay(x, NTVerdict(Verdict(data["verdict"]), data["evidence"]), cap=args.cap):
            problems.append("verdict evidence does not replay")
    recomputed = json.loads(json.dumps(COMMANDS[command][0](args)[0], sort_keys=True))
    if _strip_volatile(recomputed) != _strip_volatile(data):
        problems.append("recomputed output differs")
    return problems


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

COMMANDS = {
    "nf": (cmd_nf, "left normal form of a word"),
    "inv": (cmd_inv, "normal form of the inverse"),
    "mul": (cmd_mul, "normal form of a product of words"),
    "conj": (cmd_conj, "normal form of B^-1 W B"),
    "cycle": (_iterate(cj.cycling), "apply cycling"),
    "decycle": (_iterate(cj.decycling), "apply decycling"),
    "slide": (_iterate(cj.cyclic_sliding), "apply cyclic sliding"),
    "rigid": (cmd_rigid, "test rigidity"),
    "sss": (_cmd_set("SSS"), "enumerate the super summit set"),
    "sc": (_cmd_set("SC"), "enumerate the set of sliding circuits"),
    "transport": (cmd_transport, "transport of a simple conjugator along one cycling"),
    "curves": (cmd_curves, "list round curves, optionally with their images under a word"),
    "bgn": (cmd_bgn, "prefix-by-prefix scan of round curve images"),
    "classify": (cmd_classify, "partial Nielsen-Thurston classification"),
    "paper": (cmd_paper, "reproduce the computations for the family psi_k"),
    "bench": (cmd_bench, "CSV of invariant-set sizes for psi_k"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--cap", type=int, default=cj.DEFAULT_CAP, help="member cap for enumerations")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for enumerations")
    common.add_argument("--verify", action="store_true", help="re-check the JSON output after producing it")

    strands = argparse.ArgumentParser(add_help=False)
    strands.add_argument("-n", type=int, default=5, help="number of strands (default 5)")

    parser = argparse.ArgumentParser(prog="garside", description=__doc__.strip().splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, *extra):
        return sub.add_parser(name, parents=[common, *extra], help=COMMANDS[name][1])

    for name in ("nf", "inv", "rigid", "classify"):
        p = add(name, strands)
        p.add_argument("word")
        if name == "classify":
            p.add_argument("--paranoid", action="store_true", help="scan every SC member")
    p = add("mul", strands)
    p.add_argument("words", nargs="+")
    p = add("conj", strands)
    p.add_argument("word")
    p.add_argument("by", help="conjugating word B")
    for name in ("cycle", "decycle", "slide"):
        p = add(name, strands)
        p.add_argument("word")
        p.add_argument("--times", type=int, default=1)
    for name in ("sss", "sc"):
        p = add(name, strands)
        p.add_argument("word")
        p.add_argument("--dot", action="store_true", help="print the conjugacy graph in DOT")
    p = add("transport", strands)
    p.add_argument("word")
    p.add_argument("simple", help="word of a simple conjugator s")
    p = add("curves", strands)
    p.add_argument("word", nargs="?")
    p = add("bgn", strands)
    p.add_argument("word")
    p.add_argument("--curve", help="p,q (default: all round curves)")
    p = add("paper")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--no-sc", action="store_true", help="skip the SC enumeration checks")
    p = add("bench")
    p.add_argument("--kmin", type=int, default=2)
    p.add_argument("--kmax", type=int, default=5)
    p.add_argument("--sss-kmax", type=int, default=2, help="enumerate the SSS only up to this k")
    p.add_argument("--plot", metavar="PATH", help="also write a figure of set sizes against k")
    return parser


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if getattr(args, "n", 2) < 2:
        parser.print_usage(sys.stderr)
        print("garside: error: -n must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    if args.cap < 1 or args.jobs < 1:
        parser.print_usage(sys.stderr)
        print("garside: error: --cap and --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE

    handler = COMMANDS[args.command][0]
    try:
        payload, text = handler(args)
        if args.verify:
            data = json.loads(json.dumps(payload, sort_keys=True))
            problems = verify_payload(args.command, args, data)
            if problems:
                for p in problems:
                    print(f"verify: {p}", file=sys.stderr)
                return EXIT_DOMAIN
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"garside: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except cj.ResourceLimitError as e:
        print(f"garside: resource limit: {e}", file=sys.stderr)
        if e.partial is not None:
            print(f"garside: partial result has {len(e.partial)} members", file=sys.stderr)
        return EXIT_CAP
    except (BraidError, ValueError) as e:
        print(f"garside: {e}", file=sys.stderr)
        return EXIT_DOMAIN

    if args.format == "json" and not getattr(args, "dot", False):
        print(json.dumps({"command": args.command, **payload}, sort_keys=True, indent=2), file=out)
    else:
        print(text, file=out)
    if args.verify:
        print("verify: ok", file=sys.stderr)
    if args.command == "paper" and not payload["passed"]:
        return EXIT_DOMAIN
    return EXIT_OK


def main():
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        sys.stderr.close()
        code = EXIT_OK
    sys.exit(code)
