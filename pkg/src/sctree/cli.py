"""Command line entry point: ``sctree <command> [options]``.

Every command prints one report (JSON by default) and exits with
0 when all checks pass, 1 when a check fails, 2 on usage errors,
3 on a malformed map, 4 on an invalid prime and 5 when an enumeration cap is hit.
Set SCTREE_REPORT_DIR to also write each report to that directory.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time
from pathlib import Path
from typing import Any

from . import acceptance
from .automorphism import (
    CapExceeded,
    FactorizationError,
    PolyMap,
    ReducedWord,
    cyclic_reduce,
    jvdk_factorize,
    normalize,
    parse_map,
    standard_maps,
    translation_length,
)
from .bassserre import Vertex, distance, geodesic, parse_vertex, vertex_to_str
from .galois import Field, FieldError, get_field
from .seeds import child_seed
from .smallcancel import NotTight

SCHEMA_VERSION = 1
REPORT_DIR_ENV = "SCTREE_REPORT_DIR"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_MAP, EXIT_PRIME, EXIT_CAP = 0, 1, 2, 3, 4, 5


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input helpers


def field_of(args) -> Field:
    return get_field(args.prime, args.ext)


def map_of(F: Field, text: str) -> PolyMap:
    """A named map (t, b, bt, id, optionally ``^k``) or explicit ``(fx, fy)``."""
    s = text.strip()
    base, _, power = s.partition("^") if not s.startswith("(") else (s, "", "")
    named = standard_maps(F)
    if base in named:
        w = named[base].to_word()
        if power:
            try:
                w = w ** int(power)
            except ValueError as exc:
                raise FactorizationError(f"bad exponent in {text!r}") from exc
        return w.to_polymap()
    return parse_map(F, s)


def word_of(F: Field, text: str) -> ReducedWord:
    return map_of(F, text).to_word()


def vertex_of(F: Field, text: str) -> Vertex:
    """``B[1] A[0]|B`` or a letter word in t, b with a side, like ``tb.A``."""
    s = text.strip()
    if "|" in s:
        return parse_vertex(F, s)
    name, _, side = s.rpartition(".")
    if side not in ("A", "B") or not name or any(ch not in "tb" for ch in name.replace("id", "")):
        raise UsageError(f"cannot read vertex {text!r}")
    return acceptance.named_vertex(F, name, side)


def check(name: str, passed: bool, **details) -> dict:
    return {"name": name, "pass": bool(passed), "details": details}


def word_json(w: ReducedWord) -> dict:
    return {"word": w.describe(), "map": str(w.to_polymap())}


# ---------------------------------------------------------------------------
# commands; each returns (results, checks)


def cmd_factorize(args):
    F = field_of(args)
    f = map_of(F, args.map)
    syl = jvdk_factorize(f)
    back = PolyMap.identity(F)
    for s in syl:
        back = back(s.map)
    res = {"syllables": [{"kind": s.kind, "map": str(s.map)} for s in syl], "degree": f.degree()}
    return res, [check("recomposes to the input", back == f)]


def cmd_normalize(args):
    F = field_of(args)
    maps = [map_of(F, t) for t in args.word.split(";") if t.strip()]
    w = normalize(maps, F)
    return {"normal_form": w.describe(), "map": str(w.to_polymap()), "length": len(w)}, []


def cmd_dist(args):
    F = field_of(args)
    x, y = vertex_of(F, args.x), vertex_of(F, args.y)
    path = geodesic(x, y)
    return {"distance": distance(x, y), "geodesic": [vertex_to_str(F, v) for v in path]}, []


def cmd_translen(args):
    F = field_of(args)
    w = word_of(F, args.map)
    cw = cyclic_reduce(w)
    return {
        "translation_length": translation_length(w),
        "cyclic_core": cw.core.describe(),
        "conjugator": cw.conjugator.describe(),
    }, []


def cmd_stab(args):
    from .stabilizers import path_stabilizer

    F = field_of(args)
    P = [vertex_of(F, t) for t in args.path.split(",")]
    st = path_stabilizer(F, P, cap=args.enum_cap)
    res = {"order": st.order, "elements": [str(w.to_polymap()) for w in st.elements]}
    checks = []
    if args.expect_order is not None:
        checks.append(check("stabilizer order", st.order == args.expect_order, expected=args.expect_order))
    return res, checks


def cmd_wpd(args):
    from .stabilizers import WpdInconclusive, wpd_certify

    F = field_of(args)
    g = word_of(F, args.map)
    try:
        cert = wpd_certify(g, args.width, cap=args.enum_cap)
    except WpdInconclusive as exc:
        orders = sorted(set(exc.orders.values()))
        return {"certified": False, "orders_seen": orders}, [
            check("outcome", args.expect == "inconclusive", expected=args.expect, got="inconclusive")
        ]
    res = {
        "certified": True,
        "width": cert.width,
        "offset": cert.offset,
        "stabilizer_order": cert.stabilizer_order,
        "window": [vertex_to_str(F, v) for v in cert.path],
    }
    return res, [check("outcome", args.expect == "certified", expected=args.expect, got="certified")]


def cmd_tight(args):
    from .smallcancel import NotTight, certify_tight, minimal_tight_B, overlap_scan

    F = field_of(args)
    g = word_of(F, args.map)
    if args.b is not None:
        cert = certify_tight(g, args.b)
        res = {"B": args.b, "tight": cert.tight}
        if cert.counterexample is not None:
            res["counterexample"] = str(cert.counterexample.to_polymap())
        want = not args.expect_not_tight
        return res, [check("tightness", cert.tight == want, expected_tight=want)]
    try:
        B = minimal_tight_B(g, args.max_b)
    except NotTight as exc:
        cx = exc.certificate.counterexample
        res = {"tight": False, "max_b": args.max_b, "counterexample": str(cx.to_polymap())}
        return res, [check("tightness", args.expect_not_tight, expected_tight=not args.expect_not_tight)]
    res = {"tight": True, "B_min": B}
    checks = [check("tightness", not args.expect_not_tight, expected_tight=not args.expect_not_tight)]
    if args.scan is not None:
        s = overlap_scan(g, args.scan)
        res["scan"] = {"L": args.scan, "max_overlap": s}
        checks.append(check("scan agrees", s == B, scan=s))
    return res, checks


def _tightness_constant(g: ReducedWord, args) -> int:
    from .smallcancel import minimal_tight_B

    return args.b if getattr(args, "b", None) is not None else minimal_tight_B(g, args.max_b)


def cmd_delta(args):
    F = field_of(args)
    g = word_of(F, args.map)
    return {"delta": _tightness_constant(g, args)}, []


def _params(args, mode: str):
    from .smallcancel import choose_exponent

    F = field_of(args)
    g = word_of(F, args.map)
    B = _tightness_constant(g, args)
    return choose_exponent(g, mode, B, B)


def cmd_params(args):
    P = _params(args, args.mode)
    res = {"mode": args.mode, "B": P.B, "delta": P.delta, "n": P.n, "ell": P.ell}
    bound = 12 * P.B if args.mode == "greendlinger" else 7 * P.delta
    return res, [check("ell exceeds the mode bound", P.ell > bound, bound=bound)]


def _cfg(args):
    from .coneoff import ConeOffConfig

    return ConeOffConfig(_params(args, "coneoff"))


def cmd_coneoff(args):
    from .coneoff import (
        apex_forcing_instances,
        classify_edges,
        coneoff_distance,
        coneoff_oracle,
        sample_pairs,
    )

    cfg = _cfg(args)
    F = cfg.params.g.field
    if args.action == "dist":
        if not (args.x and args.y):
            raise UsageError("coneoff dist needs --x and --y")
        x, y = vertex_of(F, args.x), vertex_of(F, args.y)
        local = classify_edges(x, y, cfg)
        d = coneoff_distance(x, y, cfg, local)
        o, _ = coneoff_oracle(x, y, cfg, local)
        res = {**d.to_json(), "r0": str(cfg.r0), "tree_distance": distance(x, y)}
        return res, [check("formula equals oracle", d.value == o, oracle=str(o))]
    pairs = sample_pairs(cfg, args.samples, random.Random(args.seed))
    rows, mism, forced, bad = [], 0, 0, 0
    for x, y in pairs:
        local = classify_edges(x, y, cfg)
        d = coneoff_distance(x, y, cfg, local)
        o, _ = coneoff_oracle(x, y, cfg, local)
        mism += d.value != o
        rows.append({**d.to_json(), "r0": str(cfg.r0), "oracle": str(o)})
        for r in apex_forcing_instances(x, y, cfg):
            forced += 1
            bad += not r.holds
    res = {"pairs": rows, "n": cfg.params.n, "ell": cfg.params.ell}
    return res, [
        check("formula equals oracle", mism == 0, mismatches=mism),
        check("apex forcing", bad == 0, applicable=forced, violations=bad),
    ]


def cmd_windmill(args):
    from .coneoff import base_windmill, windmill_check

    cfg = _cfg(args)
    rep = windmill_check(base_windmill(cfg, args.radius), args.depth, cfg)
    return {"diagnostics": rep.diagnostics}, [check(k, v) for k, v in rep.checks.items()]


def cmd_twpath(args):
    from .coneoff import random_tw_path, tw_distance_check

    cfg = _cfg(args)
    rows, bad = [], 0
    for i in range(args.samples):
        rng = random.Random(child_seed(args.seed, i))
        rep = tw_distance_check(random_tw_path(cfg, rng.randint(1, args.k_max), rng), cfg)
        bad += not rep.ok
        rows.append({"distances": rep.distances, "bounds": rep.bounds, "ok": rep.ok})
    return {"paths": rows}, [check("distance bound", bad == 0, violations=bad)]


def cmd_admissible(args):
    from .greendlinger import compute_chain, is_admissible, make_admissible, random_presentation, reduce_pairs

    P = _params(args, "greendlinger")
    p0 = random_presentation(args.seed, args.m, args.conj_len, P)
    p, rounds = make_admissible(p0)
    q = reduce_pairs(p)
    res = {
        "m_initial": p0.m,
        "m_admissible": p.m,
        "m_reduced": q.m,
        "rewrite_rounds": rounds,
        "presentation": q.to_json(),
        "chain_length": distance(compute_chain(q).x[0], compute_chain(q).x[-1]),
    }
    same = p0.element() == q.element()
    return res, [check("admissible", is_admissible(q)), check("same element", same)]


def cmd_sct(args):
    from .greendlinger import sct_verify

    P = _params(args, args.mode)
    results = sct_verify(P, args.samples, args.seed, args.m_max, args.conj_len)
    rows = [r.to_json() for r in results]
    bad = [r.seed for r in results if r.verdict in ("FAIL", "FALSIFY")]
    res = {"n": P.n, "ell": P.ell, "samples": rows}
    return res, [check("every presented element long or conjugate to a relator power", not bad, failing_seeds=bad)]


def cmd_pingpong(args):
    F = field_of(args)
    total, ids, by_len = 0, 0, {}
    for letters, w in acceptance.pingpong_words(F, args.max_len):
        total += 1
        by_len[str(len(letters))] = by_len.get(str(len(letters)), 0) + 1
        ids += w.is_identity()
    return {"words": total, "by_length": by_len}, [check("no identities", ids == 0, identities=ids)]


def cmd_acceptance(args):
    numbers = sorted(acceptance.CRITERIA) if args.criterion is None else [args.criterion]
    results, checks = {}, []
    for n in numbers:
        r = acceptance.run_criterion(n)
        results[str(n)] = {"title": r.title}
        for c in r.checks:
            checks.append(check(f"[{n}] {c.name}", c.passed, **c.details))
    return results, checks


# ---------------------------------------------------------------------------
# parser


def _add_field(p, prime=3):
    p.add_argument("--prime", type=int, default=prime)
    p.add_argument("--ext", type=int, default=1, help="extension degree k of F_{p^k}")


def _add_map(p, default="bt"):
    p.add_argument("--map", default=default, help="t, b, bt, id (optionally ^k) or '(fx, fy)'")


def _add_tight(p):
    p.add_argument("--b", type=int, default=None, help="tightness constant (computed when omitted)")
    p.add_argument("--max-b", type=int, default=40)


def build_parser() -> argparse.ArgumentParser:
    # shared options are accepted before or after the command name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS, help="include wall-clock timing")
    common.add_argument("--enum-cap", type=int, default=argparse.SUPPRESS)
    ap = argparse.ArgumentParser(prog="sctree", description=__doc__.splitlines()[0], parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)
    _sub_add = sub.add_parser
    sub.add_parser = lambda name, **kw: _sub_add(name, parents=[common], **kw)

    p = sub.add_parser("factorize")
    _add_field(p), _add_map(p)
    p = sub.add_parser("normalize")
    _add_field(p)
    p.add_argument("--word", required=True, help="maps separated by ';', composed left to right")
    p = sub.add_parser("dist")
    _add_field(p)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p = sub.add_parser("translen")
    _add_field(p), _add_map(p)
    p = sub.add_parser("stab")
    _add_field(p, 7)
    p.add_argument("--path", required=True, help="comma-separated vertices, e.g. 'tb.A,t.B'")
    p.add_argument("--expect-order", type=int, default=None)
    p = sub.add_parser("wpd")
    _add_field(p), _add_map(p, "(x^2-y,x)")
    p.add_argument("--width", type=int, default=6)
    p.add_argument("--expect", choices=("certified", "inconclusive"), default="certified")
    p = sub.add_parser("tight")
    _add_field(p), _add_map(p), _add_tight(p)
    p.add_argument("--scan", type=int, default=None, help="cross-check with the conjugator scan of this length")
    p.add_argument("--expect-not-tight", action="store_true")
    p = sub.add_parser("delta")
    _add_field(p), _add_map(p), _add_tight(p)
    p = sub.add_parser("params")
    _add_field(p), _add_map(p), _add_tight(p)
    p.add_argument("--mode", choices=("greendlinger", "coneoff"), default="greendlinger")
    p = sub.add_parser("coneoff")
    p.add_argument("action", choices=("dist", "verify"))
    _add_field(p), _add_map(p), _add_tight(p)
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=None, help="required for verify")
    p = sub.add_parser("windmill")
    _add_field(p), _add_map(p), _add_tight(p)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--radius", type=int, default=12)
    p = sub.add_parser("twpath")
    _add_field(p), _add_map(p), _add_tight(p)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--k-max", type=int, default=4)
    p = sub.add_parser("admissible")
    _add_field(p), _add_map(p), _add_tight(p)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--conj-len", type=int, default=3)
    p = sub.add_parser("sct")
    _add_field(p), _add_map(p), _add_tight(p)
    p.add_argument("--mode", choices=("greendlinger",), default="greendlinger")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--m-max", type=int, default=4)
    p.add_argument("--conj-len", type=int, default=3)
    p = sub.add_parser("pingpong")
    _add_field(p)
    p.add_argument("--max-len", type=int, default=5)
    p = sub.add_parser("acceptance")
    p.add_argument("--criterion", type=int, choices=sorted(acceptance.CRITERIA), default=None)
    return ap


COMMANDS = {
    "factorize": cmd_factorize,
    "normalize": cmd_normalize,
    "dist": cmd_dist,
    "translen": cmd_translen,
    "stab": cmd_stab,
    "wpd": cmd_wpd,
    "tight": cmd_tight,
    "delta": cmd_delta,
    "params": cmd_params,
    "coneoff": cmd_coneoff,
    "windmill": cmd_windmill,
    "twpath": cmd_twpath,
    "admissible": cmd_admissible,
    "sct": cmd_sct,
    "pingpong": cmd_pingpong,
    "acceptance": cmd_acceptance,
}


# ---------------------------------------------------------------------------
# reports


def _config_echo(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("format", "timing")}


def make_report(args, results: Any, checks: list, seconds: float | None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "config": _config_echo(args),
        "results": results,
        "checks": checks,
        "timing": None if seconds is None else {"seconds": round(seconds, 3)},
    }


def emit_report(report: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False, default=str) + "\n"
    lines = [f"{report['command']}: {json.dumps(report['config'], sort_keys=True, default=str)}"]
    res = report["results"]
    if isinstance(res, dict):
        for k in sorted(res):
            v = res[k]
            text = v if isinstance(v, (str, int, float, bool)) or v is None else json.dumps(v, sort_keys=True, default=str)
            if len(str(text)) > 200:
                text = str(text)[:197] + "..."
            lines.append(f"  {k}: {text}")
    for c in report["checks"]:
        lines.append(f"{'PASS' if c['pass'] else 'FAIL'} {c['name']}")
    if report.get("timing"):
        lines.append(f"time: {report['timing']['seconds']} s")
    return "\n".join(lines) + "\n"


def _write_report_file(report: dict, text: str) -> None:
    out = os.environ.get(REPORT_DIR_ENV)
    if not out:
        return
    key = hashlib.sha256(json.dumps(report["config"], sort_keys=True, default=str).encode()).hexdigest()[:12]
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    (path / f"{report['command']}-{key}.json").write_text(emit_report(report, "json"))


POSITIVE = ("enum_cap", "width", "samples", "m_max", "conj_len", "max_b", "k_max", "max_len", "radius", "depth", "m")


GLOBAL_DEFAULTS = {"format": "json", "timing": False, "enum_cap": 10**7}


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    # applied after parsing: set_defaults would leak into the shared parent actions
    args = build_parser().parse_args(argv)
    for k, v in GLOBAL_DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    return args


def validate_args(args) -> None:
    for name in POSITIVE:
        v = getattr(args, name, None)
        if v is not None and v <= 0:
            raise UsageError(f"--{name.replace('_', '-')} must be positive")
    if args.command == "coneoff" and args.action == "verify" and args.seed is None:
        raise UsageError("coneoff verify needs --seed")


def main(argv: list[str] | None = None) -> int:
    args = parse_args(argv)
    t0 = time.perf_counter()
    try:
        validate_args(args)
        results, checks = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FieldError as exc:
        print(f"invalid field: {exc}", file=sys.stderr)
        return EXIT_PRIME
    except (FactorizationError, ValueError) as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_MAP
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except NotTight as exc:
        print(f"no tightness constant: {exc}; pass --b explicitly", file=sys.stderr)
        return EXIT_FAIL
    seconds = time.perf_counter() - t0 if args.timing else None
    report = make_report(args, results, checks, seconds)
    text = emit_report(report, args.format)
    sys.stdout.write(text)
    _write_report_file(report, text)
    return EXIT_OK if all(c["pass"] for c in checks) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
