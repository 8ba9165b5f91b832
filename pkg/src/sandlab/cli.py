"""Command line interface for simulation, search, certification and experiments.

One executable, subcommand style.  Human-readable text is the default;
``--out json`` (or ``csv`` where tabular) selects machine output.  Exit
codes: 0 on success, 1 when a checked property fails or a search comes
up empty, 2 on usage errors such as malformed files or flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .analysis import (
    antidiagonal_fraction,
    census_preservation,
    check_vip,
    classify_preservation,
    find_blocking_word,
    find_vip_cycle,
    goe_search,
    has_predecessor_word,
    realize_cycle,
    verify_blocking,
)
from .automaton import apply, iterate
from .config import INF, NEG_INF, format_config, load_config
from .embedding import embed, render_ascii, render_pgm
from .geography import (
    attractor_experiment,
    extended_segment_graph,
    format_graph,
    gamma_segment_graph,
    load_graph,
    save_series_csv,
)
from .repro import run_all
from .rules import resolve_table

ORBIT_FORMAT = "sandlab-orbit/1"


def _fmt_height(v) -> str:
    if v == INF:
        return "inf"
    if v == NEG_INF:
        return "-inf"
    return str(v)


def _parse_word(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"flag '{flag}' must be a comma-separated integer list, got {text!r}") from None


def _parse_range(text: str, flag: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"flag '{flag}' must look like LO..HI, got {text!r}")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise ValueError(f"flag '{flag}' must look like LO..HI with integers, got {text!r}") from None


def _config_doc(x) -> dict:
    return json.loads(format_config(x))


def _emit(doc: dict) -> int:
    print(json.dumps(doc, indent=2))
    return 0


# -- subcommands ----------------------------------------------------------


def cmd_simulate(args) -> int:
    t = resolve_table(args.rule)
    x = load_config(args.config)
    orbit = [x]
    for _ in range(args.steps):
        orbit.append(apply(t, orbit[-1]))
    if args.out == "json":
        doc = {
            "format": ORBIT_FORMAT,
            "rule": t.name or args.rule,
            "steps": [_config_doc(c) for c in orbit],
        }
        return _emit(doc)
    if args.out == "csv":
        print(f"# {ORBIT_FORMAT}")
        print("step,origin,left_word,left_drift,center,right_word,right_drift")
        for n, c in enumerate(orbit):
            lw = " ".join(_fmt_height(v) for v in c.left.word)
            rw = " ".join(_fmt_height(v) for v in c.right.word)
            ctr = " ".join(_fmt_height(v) for v in c.center)
            print(f"{n},{c.origin},{lw},{c.left.drift},{ctr},{rw},{c.right.drift}")
        return 0
    for n, c in enumerate(orbit):
        print(f"step {n}: {c.describe()}")
    return 0


def cmd_spacetime(args) -> int:
    t = resolve_table(args.rule)
    x = load_config(args.config)
    i_range = _parse_range(args.window, "--window")
    j_range = _parse_range(args.height, "--height")
    frames = []
    cur = x
    for n in range(args.steps + 1):
        frames.append(embed(cur, i_range, j_range))
        if n < args.steps:
            cur = apply(t, cur)
    if args.render == "pgm":
        if not args.out:
            raise ValueError("flag '--out' is required for pgm rendering")
        base, ext = os.path.splitext(args.out)
        for n, frame in enumerate(frames):
            path = f"{base}_{n:04d}{ext or '.pgm'}"
            with open(path, "w", encoding="ascii") as fh:
                fh.write(render_pgm(frame))
        print(f"wrote {len(frames)} frames to {base}_*.pgm")
        return 0
    text = "\n".join(f"step {n}\n{render_ascii(f)}\n" for n, f in enumerate(frames))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return 0


def cmd_predecessor(args) -> int:
    t = resolve_table(args.rule)
    word = _parse_word(args.word, "--word")
    wit = has_predecessor_word(t, word)
    if args.out == "json":
        doc = {"format": "sandlab-witness/1", "word": list(word)}
        if wit is None:
            doc["predecessor"] = None
        else:
            doc["predecessor"] = {
                "word": list(wit.word),
                "left_class": wit.left_class,
                "right_class": wit.right_class,
            }
        return _emit(doc)
    if wit is None:
        print("no predecessor")
    else:
        w = ",".join(str(v) for v in wit.word)
        print(f"predecessor {w} with boundary classes {wit.left_class},{wit.right_class}")
    return 0


def cmd_goe_search(args) -> int:
    t = resolve_table(args.rule)
    heights = _parse_word(args.heights, "--heights")
    word = goe_search(t, args.max_len, heights)
    if args.out == "json":
        doc = {
            "format": "sandlab-witness/1",
            "max_len": args.max_len,
            "heights": sorted(set(heights)),
            "orphan": None if word is None else list(word),
        }
        _emit(doc)
        return 0 if word is not None else 1
    if word is None:
        print(f"no orphan word up to length {args.max_len}")
        return 1
    print("orphan word: " + ",".join(str(v) for v in word))
    return 0


def _cycle_doc(c) -> dict:
    return {
        "format": "sandlab-cycle/1",
        "order": c.order,
        "pairs": [[p.L, p.R] for p in c.pairs],
        "realization": _config_doc(realize_cycle(c)),
    }


def cmd_find_vip(args) -> int:
    t = resolve_table(args.rule)
    c = find_vip_cycle(t, include_zero=args.include_zero)
    if args.out == "json":
        doc = {"format": "sandlab-cycle/1", "cycle": None if c is None else _cycle_doc(c)}
        _emit(doc)
        return 0 if c is not None else 1
    if c is None:
        print("no inducing cycle found")
        return 1
    pairs = " ".join(f"({p.L},{p.R})" for p in c.pairs)
    print(f"order {c.order} cycle: {pairs}")
    print(f"realization: {realize_cycle(c).describe()}")
    return 0


def cmd_check_vip(args) -> int:
    t = resolve_table(args.rule)
    x = load_config(args.config)
    ok = check_vip(t, x, args.order, args.horizon)
    if ok:
        print(f"vertical inducing of order {args.order}: confirmed for {args.horizon} steps")
        return 0
    print(f"not vertical inducing of order {args.order} within {args.horizon} steps")
    return 1


def cmd_check_blocking(args) -> int:
    t = resolve_table(args.rule)
    word = _parse_word(args.word, "--word")
    res = verify_blocking(t, word, args.k, args.s)
    if args.out == "json":
        doc = {
            "format": "sandlab-blocking/1",
            "word": list(word),
            "k": args.k,
            "s": args.s,
            "verified": res.verified,
            "increments": list(res.increments),
            "reason": res.reason,
        }
        _emit(doc)
        return 0 if res.verified else 1
    if res.verified:
        incs = ",".join(str(v) for v in res.increments)
        print(f"verified: interior increments {incs or '(empty window)'}")
        return 0
    print(f"not verified: {res.reason}")
    return 1


def cmd_find_blocking(args) -> int:
    t = resolve_table(args.rule)
    lo, hi = _parse_range(args.heights, "--heights")
    word = find_blocking_word(t, args.max_len, (lo, hi), args.k, args.s)
    if args.out == "json":
        doc = {
            "format": "sandlab-blocking/1",
            "max_len": args.max_len,
            "heights": [lo, hi],
            "k": args.k,
            "s": args.s,
            "word": None if word is None else list(word),
        }
        _emit(doc)
        return 0 if word is not None else 1
    if word is None:
        print(f"no certified word up to length {args.max_len}")
        return 1
    print("blocking word: " + ",".join(str(v) for v in word))
    return 0


def cmd_classify(args) -> int:
    t = resolve_table(args.rule)
    f = classify_preservation(t)
    if args.out == "json":
        return _emit(
            {
                "format": "sandlab-classification/1",
                "peak": f.peak,
                "valley": f.valley,
                "upslope": f.upslope,
                "downslope": f.downslope,
            }
        )
    for name, flag in (
        ("peaks", f.peak),
        ("valleys", f.valley),
        ("up-slopes", f.upslope),
        ("down-slopes", f.downslope),
    ):
        print(f"{name}: {'preserved' if flag else 'not preserved'}")
    return 0


def cmd_census(args) -> int:
    if args.kind == "preservation":
        count, frac = census_preservation()
        if args.out == "json":
            return _emit(
                {
                    "format": "sandlab-census/1",
                    "kind": "preservation",
                    "count": count,
                    "total": 625,
                    "fraction": f"{count}/625",
                }
            )
        print(f"{count} / 625 = {float(frac):.3f}")
        return 0
    frac = antidiagonal_fraction()
    if args.out == "json":
        return _emit(
            {
                "format": "sandlab-census/1",
                "kind": "antidiagonal",
                "fraction": f"{frac.numerator}/{frac.denominator}",
            }
        )
    print(f"{frac.numerator} / {frac.denominator} = {float(frac):.5f}")
    return 0


def cmd_segments(args) -> int:
    if args.graph:
        g = load_graph(args.graph)
    elif args.extended:
        g = extended_segment_graph()
    else:
        g = gamma_segment_graph()
    text = format_graph(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {len(g.segments)} segments to {args.out}")
    else:
        print(text, end="")
    return 0


def cmd_attractor(args) -> int:
    t = resolve_table(args.rule)
    graph = load_graph(args.graph) if args.graph else None
    series = attractor_experiment(
        t, args.samples, args.steps, args.radius, args.seed, graph=graph
    )
    if args.out:
        save_series_csv(series, args.out)
        print(
            f"wrote {args.samples} samples x {args.steps} steps to {args.out}; "
            f"mean proxy {series.mean[0]:.4f} -> {series.mean[-1]:.4f}"
        )
        return 0
    print("# sandlab-attractor-series/1")
    print("step,mean," + ",".join(f"sample_{k}" for k in range(len(series.proxies))))
    for n, m in enumerate(series.mean):
        row = [str(n), str(m)] + [str(r[n]) for r in series.proxies]
        print(",".join(row))
    return 0


def cmd_repro(args) -> int:
    results = run_all(out_dir=args.out_dir)
    width = max(len(r.name) for r in results)
    print(f"{'check':{width}}  status  {'time':>8}  expected vs computed")
    for r in results:
        status = "pass" if r.passed else "FAIL"
        print(f"{r.name:{width}}  {status:6}  {r.seconds:7.2f}s  {r.expected} | {r.computed}")
    failed = sum(1 for r in results if not r.passed)
    print(f"{len(results) - failed} of {len(results)} checks passed")
    return 0 if failed == 0 else 1


# -- parser ---------------------------------------------------------------


def _add_rule(p):
    p.add_argument("--rule", required=True, help="gamma, omega, linear:a,b or a rule file")


def _add_out_json(p):
    p.add_argument("--out", choices=("text", "json"), default="text", help="output format")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sandlab",
        description="Simulate and analyze radius-1 sand automata over extended integers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run an orbit and emit each step")
    _add_rule(p)
    p.add_argument("--config", required=True, help="configuration file")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("spacetime", help="render orbit frames as binary pictures")
    _add_rule(p)
    p.add_argument("--config", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--window", required=True, help="cell range, written --window=-8..8")
    p.add_argument("--height", required=True, help="height range, written --height=-6..6")
    p.add_argument("--render", choices=("ascii", "pgm"), default="ascii")
    p.add_argument("--out", help="output file (required for pgm; one file per frame)")
    p.set_defaults(func=cmd_spacetime)

    p = sub.add_parser("predecessor", help="search one-step preimages of a word")
    _add_rule(p)
    p.add_argument("--word", required=True, help="comma-separated heights")
    _add_out_json(p)
    p.set_defaults(func=cmd_predecessor)

    p = sub.add_parser("goe-search", help="search words with no preimage")
    _add_rule(p)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--heights", required=True, help="comma-separated height alphabet")
    _add_out_json(p)
    p.set_defaults(func=cmd_goe_search)

    p = sub.add_parser("find-vip", help="find a vertical inducing cycle")
    _add_rule(p)
    p.add_argument("--include-zero", action="store_true", help="also accept order 0")
    _add_out_json(p)
    p.set_defaults(func=cmd_find_vip)

    p = sub.add_parser("check-vip", help="check a configuration is vertical inducing")
    _add_rule(p)
    p.add_argument("--config", required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--horizon", type=int, default=20)
    p.set_defaults(func=cmd_check_vip)

    p = sub.add_parser("check-blocking", help="certify a word blocks its interior")
    _add_rule(p)
    p.add_argument("--word", required=True, help="comma-separated heights")
    p.add_argument("--k", type=int, required=True, help="interior offset from the left end")
    p.add_argument("--s", type=int, required=True, help="interior offset from the right end")
    _add_out_json(p)
    p.set_defaults(func=cmd_check_blocking)

    p = sub.add_parser("find-blocking", help="search for a certified blocking word")
    _add_rule(p)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--heights", required=True, help="height range, e.g. 0..4")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--s", type=int, default=1)
    _add_out_json(p)
    p.set_defaults(func=cmd_find_blocking)

    p = sub.add_parser("classify", help="which terrain features a rule preserves")
    _add_rule(p)
    _add_out_json(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("census", help="count rule tables by preservation behavior")
    p.add_argument("kind", choices=("preservation", "antidiagonal"))
    _add_out_json(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("segments", help="emit a segment graph as JSON")
    p.add_argument("--extended", action="store_true", help="include the four border words")
    p.add_argument("--graph", help="load and revalidate a graph file instead")
    p.add_argument("--out", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_segments)

    p = sub.add_parser("attractor", help="distance-proxy experiment along random orbits")
    _add_rule(p)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--radius", type=int, default=6)
    p.add_argument("--seed", type=int, default=20260816)
    p.add_argument("--graph", help="segment graph file (default: built-in extended graph)")
    p.add_argument("--out", help="CSV output file (default: stdout)")
    p.set_defaults(func=cmd_attractor)

    p = sub.add_parser("repro", help="run the full scripted check battery")
    p.add_argument("--out-dir", default=".", help="directory for emitted artifacts")
    p.set_defaults(func=cmd_repro)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
