"""Command-line front end.

Subcommands cover distance queries, minimal-transformation listings,
overlap reports, isometricity classification, witness construction and
checking, exhaustive enumeration, cube-oracle runs, graph export, and
the tilde/Hamming comparison.  ``--json`` switches every report from
human-readable lines to one deterministic JSON document (sorted keys,
stable list orders), which is what the golden tests pin down.

Exit codes: 0 success, 1 usage error, 2 invalid word input, 3
classifier anomaly (a matched case whose own witness failed to
confirm; loud on purpose so calibration regressions cannot hide).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import NoReturn

from . import cube
from .editops import enumerate_minimal_transformations, hamming_distance, tilde_distance
from .isometry import is_ham_isometric, is_tilde_isometric, verify_witness
from .overlaps import all_overlaps, condition_tilde, error_geometry
from .word import Word, parse_word

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BAD_WORD = 2
EXIT_ANOMALY = 3


class _UsageError(Exception):
    pass


class _BadWordError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; route that through exit code 1
    def error(self, message: str) -> NoReturn:
        raise _UsageError(f"{self.prog}: {message}")


def _word(text: str) -> Word:
    try:
        return parse_word(text)
    except ValueError as exc:
        raise _BadWordError(str(exc)) from exc


def _json_witness(pair) -> dict | None:
    if pair is None:
        return None
    return {"u": pair.u.text, "v": pair.v.text, "construction": pair.construction}


def _threads(value: int) -> int:
    return value if value > 0 else (os.cpu_count() or 1)


def cmd_dist(args) -> tuple[int, dict, list[str]]:
    u = _word(args.u)
    v = _word(args.v)
    if u.n != v.n:
        raise _UsageError(f"words must have equal length, got {u.n} and {v.n}")
    payload: dict = {
        "u": u.text,
        "v": v.text,
        "tilde": tilde_distance(u, v),
        "hamming": hamming_distance(u, v),
    }
    lines = [
        f"tilde distance:   {payload['tilde']}",
        f"hamming distance: {payload['hamming']}",
    ]
    if args.show_transforms:
        res = enumerate_minimal_transformations(u, v)
        payload["transformations"] = [str(t) for t in res.transformations]
        lines.append(f"minimal transformations ({len(res.transformations)}):")
        lines.extend(f"  {t}" for t in payload["transformations"])
    return EXIT_OK, payload, lines


def cmd_transforms(args) -> tuple[int, dict, list[str]]:
    u = _word(args.u)
    v = _word(args.v)
    if u.n != v.n:
        raise _UsageError(f"words must have equal length, got {u.n} and {v.n}")
    res = enumerate_minimal_transformations(u, v)
    payload = {
        "u": u.text,
        "v": v.text,
        "distance": tilde_distance(u, v),
        "count": len(res.transformations),
        "truncated": res.truncated,
        "transformations": [str(t) for t in res.transformations],
    }
    lines = [f"distance {payload['distance']}, {payload['count']} minimal transformations:"]
    lines.extend(f"  {t}" for t in payload["transformations"])
    if res.truncated:
        lines.append("  ... (truncated)")
    return EXIT_OK, payload, lines


def cmd_overlaps(args) -> tuple[int, list, list[str]]:
    f = _word(args.f)
    records = all_overlaps(f)
    if args.q is not None:
        records = tuple(r for r in records if r.q == args.q)
    payload = []
    lines = []
    for rec in records:
        two = rec.q == 2
        entry = {
            "length": rec.length,
            "shift": rec.shift,
            "q": rec.q,
            "hamming_q": rec.hamming_q,
            "transformations": [str(t) for t in rec.transformations],
            "geometry": error_geometry(rec) if two else None,
            "condition_tilde": condition_tilde(rec) if two else None,
        }
        payload.append(entry)
        geo = f", {entry['geometry']}, condition_tilde={entry['condition_tilde']}" if two else ""
        lines.append(
            f"length {rec.length} shift {rec.shift}: q={rec.q} "
            f"hamming_q={rec.hamming_q}{geo}"
        )
        lines.extend(f"  {t}" for t in entry["transformations"])
    if not records:
        lines.append("no overlaps")
    return EXIT_OK, payload, lines


def _classify_payload(args, f: Word) -> tuple[int, dict]:
    report = is_tilde_isometric(
        f,
        oracle_fallback=not args.no_oracle_fallback,
        oracle_bound=args.oracle_bound,
    )
    ham = True if f.n < 2 else is_ham_isometric(f)
    cases = []
    for i, match in enumerate(report.matches):
        rec = match.overlap
        cases.append(
            {
                "case": match.case_id,
                "shift": rec.shift,
                "length": rec.length,
                "symmetry": match.symmetry,
                "confirmed": i == report.confirming_index,
            }
        )
    payload = {
        "word": f.text,
        "tilde_isometric": report.isometric,
        "ham_isometric": ham,
        "cases": cases,
        "witness": _json_witness(report.witness),
        "anomalies": list(report.anomalies),
    }
    if report.oracle_used:
        payload["oracle"] = {
            "bound": report.oracle_bound,
            "isometric": report.isometric,
        }
    code = EXIT_ANOMALY if report.anomalies else EXIT_OK
    return code, payload


def cmd_classify(args) -> tuple[int, dict, list[str]]:
    f = _word(args.f)
    code, payload = _classify_payload(args, f)
    lines = [
        f"word:            {payload['word']}",
        f"tilde-isometric: {payload['tilde_isometric']}",
        f"ham-isometric:   {payload['ham_isometric']}",
    ]
    for c in payload["cases"]:
        mark = "confirmed" if c["confirmed"] else "unconfirmed"
        lines.append(
            f"case {c['case']} at length {c['length']} shift {c['shift']} "
            f"({c['symmetry']}): {mark}"
        )
    w = payload["witness"]
    if w is not None:
        lines.append(f"witness: {w['u']} / {w['v']} ({w['construction']})")
    for a in payload["anomalies"]:
        lines.append(f"anomaly: {a}")
    if "oracle" in payload:
        lines.append(f"oracle fallback used up to length {payload['oracle']['bound']}")
    return code, payload, lines


def cmd_witness(args) -> tuple[int, dict, list[str]]:
    f = _word(args.f)
    report = is_tilde_isometric(f)
    pair = report.witness
    payload = {
        "word": f.text,
        "tilde_isometric": report.isometric,
        "witness": _json_witness(pair),
        "verified": None if pair is None else pair.verified,
        "anomalies": list(report.anomalies),
    }
    if pair is None:
        lines = [f"{f.text}: no witness ({report.reason})"]
    else:
        lines = [f"{f.text}: {pair.u.text} / {pair.v.text} ({pair.construction}, {pair.verified})"]
    code = EXIT_ANOMALY if report.anomalies else EXIT_OK
    return code, payload, lines


def cmd_verify(args) -> tuple[int, dict, list[str]]:
    f = _word(args.f)
    u = _word(args.u)
    v = _word(args.v)
    if u.n != v.n:
        raise _UsageError(f"words must have equal length, got {u.n} and {v.n}")
    res = verify_witness(f, u, v)
    payload = {
        "word": f.text,
        "u": u.text,
        "v": v.text,
        "status": res.status,
        "reason": res.reason,
        "certificate": None if res.certificate is None else str(res.certificate),
    }
    lines = [f"{res.status}"]
    if res.reason:
        lines.append(f"reason: {res.reason}")
    if res.certificate is not None:
        lines.append(f"factor-avoiding transformation: {payload['certificate']}")
    return EXIT_OK, payload, lines


def cmd_enumerate(args) -> tuple[int, dict, list[str]]:
    n = args.len
    if not 1 <= n <= 16:
        raise _UsageError(f"--len must be in 1..16, got {n}")
    from .isometry import symmetry_closure

    chosen: list[tuple[str, bool]] = []
    anomalies: list[str] = []
    seen: set[str] = set()
    for x in range(1 << n):
        text = format(x, f"0{n}b")
        if args.canonical and text in seen:
            continue
        f = parse_word(text)
        if args.canonical:
            orbit = {w.text for w in symmetry_closure(f)}
            seen.update(orbit)
        report = is_tilde_isometric(f)
        for a in report.anomalies:
            anomalies.append(f"{text}: {a}")
        verdict = report.isometric
        if args.filter == "isometric" and not verdict:
            continue
        if args.filter == "non-isometric" and verdict:
            continue
        chosen.append((text, verdict))
    iso = sum(1 for _, v in chosen if v)
    payload = {
        "len": n,
        "filter": args.filter,
        "canonical": args.canonical,
        "words": [{"word": t, "tilde_isometric": v} for t, v in chosen],
        "counts": {"isometric": iso, "non-isometric": len(chosen) - iso},
        "anomalies": anomalies,
    }
    lines = [f"{t}  {'isometric' if v else 'non-isometric'}" for t, v in chosen]
    lines.append(
        f"total {len(chosen)}: {iso} isometric, {len(chosen) - iso} non-isometric"
    )
    code = EXIT_ANOMALY if anomalies else EXIT_OK
    return code, payload, lines


def cmd_oracle(args) -> tuple[int, dict, list[str]]:
    f = _word(args.f)
    try:
        report = cube.oracle_check(
            f,
            max_len=args.max_len,
            first_violation=args.first_violation,
            threads=_threads(args.threads),
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    viol = report.violation
    payload = {
        "word": f.text,
        "max_len": report.max_len,
        "verdict": report.verdict,
        "violation": None
        if viol is None
        else {
            "m": viol.m,
            "u": viol.u.text,
            "v": viol.v.text,
            "full_distance": viol.full_distance,
            "restricted_distance": viol.restricted_distance,
        },
        "minimal_pairs": None
        if report.minimal_pairs is None
        else [[p.u.text, p.v.text] for p in report.minimal_pairs],
        "methods": [[m, method] for m, method in report.methods],
    }
    lines = [f"verdict: {report.verdict} (lengths {f.n}..{report.max_len})"]
    if viol is not None:
        rd = "unreachable" if viol.restricted_distance is None else viol.restricted_distance
        lines.append(
            f"violation at length {viol.m}: {viol.u.text} / {viol.v.text} "
            f"(distance {viol.full_distance}, avoiding-path distance {rd})"
        )
    if report.minimal_pairs:
        lines.append(f"minimal violating pairs ({len(report.minimal_pairs)}):")
        lines.extend(f"  {p.u.text} {p.v.text}" for p in report.minimal_pairs)
    return EXIT_OK, payload, lines


def cmd_cube(args) -> tuple[int, None, list[str]]:
    avoid = None if args.avoid is None else _word(args.avoid)
    try:
        graph = cube.build_cube(args.len, avoid)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    blob = cube.export_graph(graph, args.format)
    if args.out is not None:
        with open(args.out, "wb") as handle:
            handle.write(blob)
        return EXIT_OK, None, [f"wrote {len(blob)} bytes to {args.out}"]
    sys.stdout.buffer.write(blob)
    sys.stdout.buffer.flush()
    return EXIT_OK, None, []


def cmd_compare(args) -> tuple[int, dict, list[str]]:
    f = _word(args.f)
    report = is_tilde_isometric(f)
    ham = True if f.n < 2 else is_ham_isometric(f)
    payload = {
        "word": f.text,
        "tilde_isometric": report.isometric,
        "ham_isometric": ham,
        "agreement": report.isometric == ham,
    }
    lines = [
        f"tilde-isometric: {report.isometric}",
        f"ham-isometric:   {ham}",
        "verdicts agree" if payload["agreement"] else "verdicts disagree",
    ]
    return EXIT_OK, payload, lines


def build_parser() -> _Parser:
    # the global flags live on the top parser (real defaults) and on every
    # subparser via a SUPPRESS-default parent, so both positions parse and
    # an absent trailing flag never clobbers a leading one
    common = _Parser(add_help=False)
    common.add_argument(
        "--json",
        action="store_true",
        default=argparse.SUPPRESS,
        help="emit one JSON document",
    )
    common.add_argument(
        "--quiet",
        action="store_true",
        default=argparse.SUPPRESS,
        help="suppress stdout; rely on exit codes",
    )
    common.add_argument(
        "--threads",
        type=int,
        default=argparse.SUPPRESS,
        metavar="K",
        help="worker threads for oracle sweeps (0 = auto)",
    )

    parser = _Parser(prog="tildeiso", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit one JSON document")
    parser.add_argument(
        "--quiet", action="store_true", help="suppress stdout; rely on exit codes"
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        metavar="K",
        help="worker threads for oracle sweeps (0 = auto)",
    )
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser(
        "dist", parents=[common], help="tilde and Hamming distance of two words"
    )
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--show-transforms", action="store_true")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("transforms", parents=[common], help="all minimal transformations")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_transforms)

    p = sub.add_parser("overlaps", parents=[common], help="aligned prefix/suffix error report")
    p.add_argument("f")
    p.add_argument("--q", type=int, default=None, help="only overlaps with q errors")
    p.set_defaults(func=cmd_overlaps)

    p = sub.add_parser("classify", parents=[common], help="isometricity verdict with evidence")
    p.add_argument("f")
    p.add_argument("--oracle-bound", type=int, default=None, metavar="M")
    p.add_argument("--no-oracle-fallback", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("witness", parents=[common], help="distance-defect pair for a word")
    p.add_argument("f")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", parents=[common], help="check a claimed witness pair")
    p.add_argument("f")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", parents=[common], help="classify every word of one length")
    p.add_argument("--len", type=int, required=True, metavar="N")
    p.add_argument(
        "--filter",
        choices=["isometric", "non-isometric", "all"],
        default="all",
    )
    p.add_argument(
        "--canonical",
        action="store_true",
        help="one representative per reverse/complement orbit",
    )
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive cube check up to a bound")
    p.add_argument("f")
    p.add_argument("--max-len", type=int, default=None, metavar="M")
    p.add_argument("--first-violation", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("cube", parents=[common], help="export a (restricted) tilde-hypercube")
    p.add_argument("--len", type=int, required=True, metavar="N")
    p.add_argument("--avoid", default=None, metavar="F")
    p.add_argument(
        "--format", choices=["dot", "edgelist", "json"], default="edgelist"
    )
    p.add_argument("--out", default=None, metavar="PATH")
    p.set_defaults(func=cmd_cube)

    p = sub.add_parser("compare", parents=[common], help="tilde verdict against Hamming verdict")
    p.add_argument("f")
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise _UsageError("a subcommand is required (see --help)")
        code, payload, lines = args.func(args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except _BadWordError as exc:
        print(f"invalid word: {exc}", file=sys.stderr)
        return EXIT_BAD_WORD
    if not args.quiet:
        if args.json:
            if payload is not None:
                print(json.dumps(payload, sort_keys=True))
        else:
            for line in lines:
                print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
