"""Command-line front end: ``lingrowth <subcommand> [SPEC] [options]``.

Every subcommand prints one JSON report (or CSV rows with
``--format csv``).  Exit codes: 0 all assertions held, 1 a violation was
found, 2 usage error, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import acceptance, cayley, experiments, groups, quasirandom, sets
from .errors import CoverNotReached, LingrowthError, ResourceCap, SpecMismatch, UsageError
from .field import parse_field
from .groups import parse_spec
from .growth import check_ruzsa, check_subgroup_growth, coset_cover_count, slow_growth_verdict, tripling
from .reports import (
    STATUS_OK,
    STATUS_RESOURCE,
    STATUS_USAGE,
    STATUS_VIOLATION,
    ExperimentConfig,
    RunReport,
    read_config_file,
)
from .rng import stream
from .sets import ElementSet
from .structure import derived_series, require_subgroup, standard_generators
from .verdict import FINDING, HOLDS, VIOLATED, Verdict
from .words import parse_word

COMMON_KEYS = ("spec", "seed", "trials", "enumeration_cap", "product_cap", "memory_mb", "output", "format", "threads")


class Outcome:
    """What a handler produced: JSON-able results and optional CSV rows."""

    def __init__(self, results, rows=None, violated=None):
        self.results = results
        self.rows = rows
        self.violated = violated


# --- input helpers -------------------------------------------------------------------

def _spec(args):
    if not args.spec:
        raise UsageError("this command needs a group spec such as SL(2,5)")
    return parse_spec(args.spec)


def _input_set(args, spec, default="generators"):
    """The set named by ``--set`` / ``--random-size``, else ``default``."""
    if getattr(args, "set", None):
        S = ElementSet.load(args.set)
        if S.spec != spec:
            raise SpecMismatch(f"set file is over {S.spec}, command is over {spec}")
        return S
    if getattr(args, "random_size", None):
        G = ElementSet.whole_group(spec)
        S = G.sample(stream(args.seed, "cli-set"), args.random_size)
        if getattr(args, "symmetrize", False):
            S = S.symmetrized()
            # statements about S^k with S = S^-1 also want 1 in S
            return S.with_identity() if default == "generators+1" else S
        return S
    if default == "generators":
        return standard_generators(spec)
    return standard_generators(spec).with_identity()


def _subgroup(name, spec):
    if name is None:
        raise UsageError("--subgroup is required (a name or an element file)")
    pool = experiments.subgroup_pool(spec)
    if name in pool:
        return pool[name]
    H = ElementSet.load(name)
    if H.spec != spec:
        raise SpecMismatch(f"subgroup file is over {H.spec}, command is over {spec}")
    return H


def _graph_set(args, spec):
    if args.random_pair:
        graph, S, _ = cayley._random_pair_graph(spec, stream(args.seed, "cli-pair"))
        return graph, S
    S = _input_set(args, spec).symmetrized() if args.symmetrize else _input_set(args, spec)
    return cayley.cayley_graph(S, check=not args.no_check), S


def _row(spec, args, S, **values):
    row = {"spec": str(spec), "seed": args.seed, "trial": 0, "S_size": len(S.without_identity())}
    row.update(values)
    return row


def _batch_result(kind, out):
    return [{"kind": kind, **out}]


# --- handlers --------------------------------------------------------------------------

def cmd_field_check(args):
    F = parse_field(args.field or args.spec or "")
    q = F.q
    if q <= 64:
        a, b, c = (x.ravel() for x in np.meshgrid(np.arange(q), np.arange(q), np.arange(q), indexing="ij"))
        mode = "exhaustive"
    else:
        rng = stream(args.seed, "field-check")
        a, b, c = rng.integers(0, q, size=(3, 10**4))
        mode = "sampled"
    checks = {
        "add_associative": bool(np.all(F.vadd(F.vadd(a, b), c) == F.vadd(a, F.vadd(b, c)))),
        "mul_associative": bool(np.all(F.vmul(F.vmul(a, b), c) == F.vmul(a, F.vmul(b, c)))),
        "distributive": bool(np.all(F.vmul(a, F.vadd(b, c)) == F.vadd(F.vmul(a, b), F.vmul(a, c)))),
        "unit_group_order": all(F.power(x, q - 1) == 1 for x in range(1, q)),
        "frobenius_additive": bool(np.all(
            np.array([F.power(int(x), F.p) for x in F.vadd(a, b)])
            == F.vadd(np.array([F.power(int(x), F.p) for x in a]), np.array([F.power(int(x), F.p) for x in b]))
        )) if q <= 64 else None,
        "inverses": all(F.mul(x, F.inv(x)) == 1 for x in range(1, q)),
    }
    ok = all(v is not False for v in checks.values())
    v = Verdict("GF(q) satisfies the field axioms", f"GF({q})", {"mode": mode}, HOLDS if ok else VIOLATED, None,
                {"p": F.p, "e": F.e, "q": q, "modulus": list(F.modulus), "primitive_element": F.primitive_element, **checks})
    return Outcome([v.to_dict()])


def cmd_group_order(args):
    spec = _spec(args)
    formula = groups.group_order(spec)
    if not args.enumerate:
        return Outcome([{"kind": "order", "spec": str(spec), "order": formula}])
    n = len(groups.enumerate_codes(spec))
    v = Verdict("enumerated order equals the closed-form order", str(spec), {"enumerate": True},
                HOLDS if n == formula else VIOLATED, None, {"formula": formula, "enumerated": n})
    return Outcome([v.to_dict()])


def cmd_enumerate(args):
    spec = _spec(args)
    G = ElementSet.whole_group(spec)
    if args.save:
        G.save(args.save)
    return Outcome([{"kind": "enumeration", "spec": str(spec), "order": len(G), "formula": spec.order,
                     "saved": bool(args.save)}])


def cmd_tripling(args):
    spec = _spec(args)
    rep = tripling(_input_set(args, spec), kmax=args.kmax)
    return Outcome([{"kind": "growth_report", **rep.to_dict()}])


def cmd_ruzsa(args):
    spec = _spec(args)
    if args.trials:
        out = experiments.ruzsa_batch(spec, args.trials, (args.k,) if args.k else (3, 4, 5, 6), args.seed)
        return Outcome(_batch_result("ruzsa_batch", out), violated=bool(out["violations"]))
    return Outcome([check_ruzsa(_input_set(args, spec, "generators+1"), args.k or 3).to_dict()])


def cmd_subgroup_growth(args):
    spec = _spec(args)
    if args.trials:
        out = experiments.subgroup_growth_batch(spec, args.trials, args.seed)
        return Outcome(_batch_result("subgroup_growth_batch", out), violated=bool(out["violations"]))
    S = _input_set(args, spec, "generators+1")
    H = _subgroup(args.subgroup, spec)
    return Outcome([check_subgroup_growth(S, H, args.k).to_dict()])


def cmd_slow_growth(args):
    kw = {"budget": args.budget} if args.budget else {}
    return Outcome([slow_growth_verdict(args.n, args.seed, **kw).to_dict()])


def cmd_diameter(args):
    spec = _spec(args)
    graph, S = _graph_set(args, spec)
    d = cayley.diameter(graph)
    row = _row(spec, args, S, diameter=d)
    return Outcome([{"kind": "cayley", **row}], rows=[row])


def cmd_girth(args):
    spec = _spec(args)
    graph, S = _graph_set(args, spec)
    g = cayley.girth(graph)
    row = _row(spec, args, S, girth=g if math.isfinite(g) else None)
    return Outcome([{"kind": "cayley", **row}], rows=[row])


def cmd_gap(args):
    spec = _spec(args)
    graph, S = _graph_set(args, spec)
    sr = cayley.spectral_gap(graph, tol=args.tol, seed=args.seed)
    row = _row(spec, args, S, lambda2=sr.lambda2, gap=sr.spectral_gap)
    res = {"kind": "cayley", **row, "iterations": sr.iterations, "residual": sr.residual,
           "adjacency_gap": sr.adjacency_gap, "cheeger_bounds": list(sr.cheeger_bounds)}
    return Outcome([res], rows=[row])


def cmd_expansion(args):
    spec = _spec(args)
    graph, S = _graph_set(args, spec)
    N = graph.order
    samples = []
    for i in range(args.trials or 100):
        rng = stream(args.seed, "expansion", i)
        size = args.size or int(rng.integers(1, max(2, (N + 1) // 2)))
        A = rng.choice(N, size=min(size, N), replace=False)
        samples.append({"size": len(A), "c": cayley.expansion(graph, A)})
    res = {"kind": "expansion", "spec": str(spec), "samples": samples,
           "min_sampled": min(s["c"] for s in samples if s["size"] < N / 2) if any(s["size"] < N / 2 for s in samples) else None}
    if N <= cayley.EXACT_EXPANSION_MAX:
        res["exact_constant"] = cayley.exact_expansion_constant(graph)
    sr = cayley.spectral_gap(graph, seed=args.seed)
    res["cheeger_bounds"] = list(sr.cheeger_bounds)
    return Outcome([res])


def _ps_or_spec(args):
    if args.p_range:
        return [groups.make_spec(args.family, 2, p) for p in experiments.parse_p_range(args.p_range)]
    return [_spec(args)]


def cmd_babai_sweep(args):
    rows, summary = [], []
    for spec in _ps_or_spec(args):
        rep = cayley.babai_sweep(spec, args.trials or 100, args.seed, with_girth=args.girth)
        rows.extend(rep["rows"])
        summary.append({k: v for k, v in rep.items() if k != "rows"})
        summary[-1]["within_bound"] = rep["max_diameter"] <= rep["log2_order_squared"]
    return Outcome([{"kind": "babai_sweep", "summary": summary, "rows": rows}], rows=rows,
                   violated=not all(s["within_bound"] for s in summary))


def cmd_girth_gap_scan(args):
    rows = []
    for spec in _ps_or_spec(args):
        rows.extend(cayley.girth_gap_scan(spec, args.trials or 20, args.seed))
    return Outcome([{"kind": "girth_gap_scan", "rows": rows}], rows=rows)


def cmd_gowers(args):
    spec = _spec(args)
    G = ElementSet.whole_group(spec)
    k = args.k or quasirandom.degc_lookup(spec).k
    if args.set or args.random_size:
        return Outcome([quasirandom.gowers_check(G, _input_set(args, spec), k).to_dict()])
    out = experiments.gowers_batch(spec, args.trials or 200, args.seed, k)
    return Outcome(_batch_result("gowers_batch", out), violated=bool(out["violations"]))


def cmd_turbo(args):
    spec = _spec(args)
    out = experiments.turbo_batch(spec, args.t, args.trials or 20, args.seed)
    return Outcome(_batch_result("turbo_batch", out), violated=bool(out["violations"]))


def cmd_product_free(args):
    spec = _spec(args)
    return Outcome([quasirandom.product_free_search(ElementSet.whole_group(spec), args.budget, args.seed).to_dict()])


def cmd_psl_trick(args):
    spec = _spec(args)
    if args.set or args.random_size:
        return Outcome([quasirandom.psl_trick_check(spec, _input_set(args, spec)).to_dict()])
    out = experiments.psl_trick_batch(spec, args.trials or 200, args.seed)
    return Outcome(_batch_result("psl_trick_batch", out), violated=bool(out["violations"]))


def cmd_baby_product(args):
    if args.set:
        extras = ElementSet.load(args.set)
        return Outcome([quasirandom.baby_product_experiment(args.n, args.q, extras).to_dict()])
    out = experiments.baby_product_batch(args.n, args.q, args.trials or 20, args.seed)
    return Outcome(_batch_result("baby_product_batch", out), violated=out["counts"].get(VIOLATED, 0) > 0)


def cmd_sylow_cover(args):
    spec = _spec(args)
    try:
        v = quasirandom.sylow_product_cover(spec, args.max_factors)
    except CoverNotReached as exc:
        v = Verdict("G is a product of 5 Sylow p-subgroups (alternating U V U V U)", str(spec),
                    {"max_factors": args.max_factors}, FINDING, None, {"error": str(exc)})
    return Outcome([v.to_dict()])


def cmd_class_cover(args):
    spec = _spec(args)
    if args.element:
        g = next(iter(ElementSet.from_lines([str(spec), args.element])))
        return Outcome([quasirandom.class_cover_exponent(spec, g).to_dict()])
    out = experiments.class_cover_all(spec)
    return Outcome(_batch_result("class_cover", out), violated=bool(out["violations"]))


def cmd_conj_decomp(args):
    spec = _spec(args)
    out = experiments.conj_decomp_batch(spec, args.size, args.trials or 1, args.seed, args.budget)
    return Outcome(_batch_result("conj_decomp_batch", out), violated=out["counts"].get(VIOLATED, 0) > 0)


def cmd_waring(args):
    spec = _spec(args)
    w = parse_word(args.word)
    return Outcome([quasirandom.waring_check(w, spec, args.trials or 100, args.seed).to_dict()])


def cmd_coset_cover(args):
    spec = _spec(args)
    S = _input_set(args, spec)
    H = _subgroup(args.subgroup, spec)
    count = coset_cover_count(S, H)
    return Outcome([{"kind": "coset_cover", "spec": str(spec), "|S|": len(S), "|H|": len(H), "cosets": count,
                     "index": spec.order // len(H)}])


def cmd_soluble(args):
    spec = _spec(args)
    H = _subgroup(args.subgroup or "whole", spec)
    require_subgroup(H)
    series = derived_series(H, check=False)
    return Outcome([{"kind": "derived_series", "spec": str(spec), "sizes": [len(X) for X in series],
                     "soluble": len(series[-1]) == 1, "derived_length": len(series) - 1 if len(series[-1]) == 1 else None}])


def cmd_suite(args):
    results = acceptance.run_suite(args.profile, args.seed, echo=lambda s: print(s, file=sys.stderr))
    lines = [{"kind": "criterion", "number": r.number, "title": r.title, "passed": r.passed, "summary": r.summary}
             for r in results]
    return Outcome(lines, violated=not all(r.passed for r in results))


# --- parser ------------------------------------------------------------------------------

def _common(p, spec=True):
    if spec:
        p.add_argument("spec", nargs="?", help="group spec, e.g. SL(2,5), PSL(2,7), GL(3,GF(4))")
    p.add_argument("--config", help="key = value file; command-line flags override it")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int)
    p.add_argument("--enumeration-cap", type=int)
    p.add_argument("--product-cap", type=int)
    p.add_argument("--memory-mb", type=int)
    p.add_argument("--output", "-o")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--threads", type=int, default=1, help="worker cap (computation is vectorised, single process)")
    p.add_argument("--timing", action="store_true", help="add wall time to the report (breaks byte-identity)")


def _set_opts(p):
    p.add_argument("--set", help="element file (spec header, one hex code per line)")
    p.add_argument("--random-size", type=int, help="use a seeded random subset of this size")
    p.add_argument("--symmetrize", action="store_true",
                   help="close the random set under inverses (adding 1 for ruzsa and subgroup-growth)")


def _graph_opts(p):
    _set_opts(p)
    p.add_argument("--random-pair", action="store_true", help="seeded random pair {x^±1, y^±1}")
    p.add_argument("--no-check", action="store_true", help="skip the symmetric/generating checks")


COMMANDS = {}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lingrowth", description="Growth experiments in finite linear groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, helptext, spec=True):
        p = sub.add_parser(name, help=helptext, description=helptext)
        _common(p, spec)
        p.set_defaults(handler=handler)
        COMMANDS[name] = p
        return p

    p = add("field-check", cmd_field_check, "check the field axioms of GF(q)")
    p.add_argument("--field")
    p = add("group-order", cmd_group_order, "closed-form order, optionally checked by enumeration")
    p.add_argument("--enumerate", action="store_true")
    p = add("enumerate", cmd_enumerate, "enumerate the group, optionally saving an element file")
    p.add_argument("--save")
    p = add("tripling", cmd_tripling, "power-set sizes and tripling constant of a set")
    _set_opts(p)
    p.add_argument("--kmax", type=int, default=3)
    p = add("ruzsa", cmd_ruzsa, "Ruzsa-type inequality |S^k|/|S| <= (|S^3|/|S|)^(k-2)")
    _set_opts(p)
    p.add_argument("--k", type=int)
    p = add("subgroup-growth", cmd_subgroup_growth, "|S^k ∩ H|/|S^2 ∩ H| <= |S^(k+1)|/|S|")
    _set_opts(p)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--subgroup", help="trivial|center|upper|lower|diagonal|borel|whole or an element file")
    p = add("slow-growth", cmd_slow_growth, "slow-growth generating set of SL(n,3)", spec=False)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--budget", type=int)
    for name, handler, text in (("diameter", cmd_diameter, "Cayley graph diameter"),
                                ("girth", cmd_girth, "Cayley graph girth"),
                                ("gap", cmd_gap, "spectral gap of the lazy walk")):
        p = add(name, handler, text)
        _graph_opts(p)
        if name == "gap":
            p.add_argument("--tol", type=float, default=1e-9)
    p = add("expansion", cmd_expansion, "sampled vertex expansion c(A)")
    _graph_opts(p)
    p.add_argument("--size", type=int)
    for name, handler, text in (("babai-sweep", cmd_babai_sweep, "diameters of random generating pairs"),
                                ("girth-gap-scan", cmd_girth_gap_scan, "girth and spectral gap of random pairs")):
        p = add(name, handler, text)
        p.add_argument("--p-range", help='primes "a..b" or "5,7,11" (with --family)')
        p.add_argument("--family", choices=("SL", "PSL"), default="PSL")
        if name == "babai-sweep":
            p.add_argument("--girth", action="store_true", help="also record girth")
    p = add("gowers", cmd_gowers, "|A| > |G|/k^(1/3) implies A^3 = G")
    _set_opts(p)
    p.add_argument("--k", type=int, help="override the tabulated minimal degree")
    p = add("turbo", cmd_turbo, "prod |A_i| >= |G|^t/k^(t-2) implies A_1...A_t = G")
    p.add_argument("--t", type=int, default=4)
    p = add("product-free", cmd_product_free, "search for a large product-free set")
    p.add_argument("--budget", type=int, default=20000)
    p = add("psl-trick", cmd_psl_trick, "|A| >= 2|G|/q^((n-1)/3) implies A^3 = G")
    _set_opts(p)
    p = add("baby-product", cmd_baby_product, "S ⊇ SL(2,q) in SL(n,q): S^3 = G or S grows", spec=False)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--q", type=int, default=4)
    p.add_argument("--set", help="element file of extras")
    p = add("sylow-cover", cmd_sylow_cover, "least m with U V U ... (m factors) = G")
    p.add_argument("--max-factors", type=int, default=10)
    p = add("class-cover", cmd_class_cover, "least m with (K ∪ K^-1 ∪ 1)^m = G")
    p.add_argument("--element", help="hex code of g (default: every non-central class)")
    p = add("conj-decomp", cmd_conj_decomp, "greedy cover of G by conjugates of A")
    p.add_argument("--size", type=int, default=4)
    p.add_argument("--budget", type=int, default=64)
    p = add("waring", cmd_waring, "W ⊆ w(L) at threshold size gives W^3 = L")
    p.add_argument("--word", default="x^2")
    p = add("coset-cover", cmd_coset_cover, "number of right cosets of H meeting S")
    _set_opts(p)
    p.add_argument("--subgroup")
    p = add("soluble", cmd_soluble, "derived series of a subgroup")
    p.add_argument("--subgroup", help="subgroup name or element file (default: whole group)")
    p = add("suite", cmd_suite, "run the acceptance criteria", spec=False)
    p.add_argument("--profile", default="quick", help="quick or full")
    return parser


# --- driver --------------------------------------------------------------------------------

def _apply_config(parser, argv):
    args = parser.parse_args(argv)
    if not args.config:
        return args
    sub = COMMANDS[args.command]
    actions = {a.dest: a for a in sub._actions if a.dest not in ("help", "config", "handler")}
    values = read_config_file(args.config, set(actions) | {"command"})
    if values.pop("command", args.command) != args.command:
        raise UsageError("config file names a different command")
    defaults = {}
    for key, raw in values.items():
        action = actions[key]
        if isinstance(action, argparse._StoreTrueAction):
            defaults[key] = raw.lower() in ("1", "true", "yes", "on")
        else:
            try:
                defaults[key] = action.type(raw) if action.type else raw
            except ValueError:
                raise UsageError(f"config value for {key!r} is not valid: {raw!r}") from None
            if action.choices and defaults[key] not in action.choices:
                raise UsageError(f"config value for {key!r} must be one of {action.choices}")
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def _config_from_args(args) -> ExperimentConfig:
    skip = set(COMMON_KEYS) | {"command", "handler", "config", "timing"}
    options = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    return ExperimentConfig(
        command=args.command,
        spec=getattr(args, "spec", None),
        seed=args.seed,
        trials=args.trials,
        enumeration_cap=args.enumeration_cap,
        product_cap=args.product_cap,
        memory_mb=args.memory_mb,
        output=args.output,
        format=args.format,
        threads=args.threads,
        options=options,
    )


def _apply_caps(cfg: ExperimentConfig):
    if cfg.enumeration_cap is not None:
        groups.ENUMERATION_CAP = cfg.enumeration_cap
    if cfg.product_cap is not None:
        sets.PRODUCT_CAP = cfg.product_cap
    if cfg.memory_mb is not None:
        import resource

        limit = cfg.memory_mb * 2**20
        resource.setrlimit(resource.RLIMIT_AS, (limit, limit))
    if cfg.threads < 1:
        raise UsageError("--threads must be at least 1")


def _emit(text: str, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
    except UsageError as exc:
        print(f"lingrowth: error: {exc}", file=sys.stderr)
        return 2
    cfg = _config_from_args(args)
    saved_caps = (groups.ENUMERATION_CAP, sets.PRODUCT_CAP)
    t0 = time.perf_counter()
    outcome = None
    try:
        _apply_caps(cfg)
        outcome = args.handler(args)
        if outcome.violated is None:
            outcome.violated = any(isinstance(r, dict) and r.get("verdict") == VIOLATED for r in outcome.results)
        report = RunReport(cfg, STATUS_VIOLATION if outcome.violated else STATUS_OK, outcome.results)
    except ValueError as exc:  # UsageError and malformed literals such as bad hex
        report = RunReport(cfg, STATUS_USAGE, error=f"{type(exc).__name__}: {exc}")
    except (ResourceCap, MemoryError) as exc:
        report = RunReport(cfg, STATUS_RESOURCE, error=f"{type(exc).__name__}: {exc}")
    except LingrowthError as exc:
        report = RunReport(cfg, STATUS_VIOLATION, error=f"{type(exc).__name__}: {exc}")
    finally:
        groups.ENUMERATION_CAP, sets.PRODUCT_CAP = saved_caps
    if report.status in (STATUS_USAGE, STATUS_RESOURCE, STATUS_VIOLATION) and report.error:
        print(f"lingrowth: {report.error}", file=sys.stderr)
    if cfg.format == "csv" and outcome is not None and outcome.rows is not None:
        text = cayley.rows_to_csv(outcome.rows)
    else:
        text = report.to_json()
        if args.timing:
            d = report.to_dict()
            d["wall_time_s"] = round(time.perf_counter() - t0, 3)
            text = json.dumps(d, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    _emit(text, cfg.output)
    return report.exit_code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
