"""Command-line driver: ``flowsched <group> <command> [options]``.

Every command reads one JSON document (``--input FILE`` or stdin, or a
generated instance with ``--seed N``), validates it against the bundled
schema, and prints a JSON result. Exit status: 0 success, 1 every request
rejected, 2 input error, 3 oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import random
import sys
from importlib import resources

import jsonschema

from . import bruteforce
from .interval_coloring import ColoringOp, color_offline_dsu, color_offline_sweep, color_online
from .perm_count import count_permutations, count_table
from .revenue_path import CostRevenueTree, path_vertices, solve_max_revenue_path
from .trace import BatchConfig, load_trace, run_trace
from .tree_aggregates import AGGREGATIONS, EulerTour, LiftTables, WeightedRootedTree, euler_sequence
from .wireless_distribution import (
    MobilePathInstance,
    SensorPathInstance,
    mobile_makespan_bsearch,
    mobile_makespan_linear,
    sensor_duration_general,
    sensor_duration_uniform,
    sensor_duration_zero_d,
)

EXIT_OK, EXIT_REJECTED, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2, 3

log = logging.getLogger("flowsched")


class InputError(Exception):
    pass


def load_schema(name: str) -> dict:
    text = resources.files("flowsched").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)


def validate(doc, name: str) -> None:
    validator = jsonschema.Draft202012Validator(load_schema(name))
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        lines = []
        for err in errors:
            path = "/".join(str(p) for p in err.absolute_path) or "<root>"
            lines.append(f"{path}: {err.message}")
        raise InputError("schema violation:\n  " + "\n  ".join(lines))


def _finite(x):
    """JSON has no infinities; unreachable aggregates come out as null."""
    if isinstance(x, float) and math.isinf(x):
        return None
    return x


# ---------------------------------------------------------------- generators

def gen_link(rng: random.Random) -> dict:
    T = rng.randint(3, 8)
    reqs = []
    for i in range(rng.randint(2, 8)):
        S = rng.randint(1, T)
        F = rng.randint(S, min(T, S + 3))
        kind = rng.choice(["preemptive", "preemptive", "nonpreemptive_fixed", "nonpreemptive_unit"])
        r = {"id": f"r{i}", "kind": kind, "S": S, "F": F, "p": rng.randint(1, 20), "arrival": rng.randint(0, 5)}
        if kind == "nonpreemptive_unit":
            r["F"] = min(T, S + 2)
        if kind == "preemptive":
            r["TD"] = rng.randint(1, 12)
        else:
            r["B"] = rng.randint(1, 6)
        reqs.append(r)
    return {"timeline": {"T": T, "B_max": 10, "Q": 10, "avb": [rng.randint(0, 10) for _ in range(T)]},
            "requests": reqs, "config": {"R": rng.randint(1, 4), "flush_timeout": 2}}


def gen_color(rng: random.Random) -> dict:
    T = rng.randint(1, 30)
    ops = []
    for _ in range(rng.randint(0, 12)):
        a = rng.randint(1, T)
        ops.append({"a": a, "b": rng.randint(a, T), "color": rng.randint(0, 3)})
    return {"T": T, "col_init": 0, "ops": ops}


def _gen_tree(rng):
    n = rng.randint(1, 10)
    edges = [{"u": rng.randrange(i), "v": i, "we": rng.randint(-5, 9)} for i in range(1, n)]
    return {"n": n, "root": rng.randrange(n), "edges": edges, "wv": [rng.randint(-5, 9) for _ in range(n)]}


def gen_tree_build(rng):
    return _gen_tree(rng)


def gen_tree_query(rng):
    tree = _gen_tree(rng)
    n = tree["n"]
    qs = [{"type": rng.choice(["lca", "path", "path_root", "subtree"]), "u": rng.randrange(n), "v": rng.randrange(n)}
          for _ in range(10)]
    return {"tree": tree, "agg": rng.choice(["sum", "xor", "min", "max"]),
            "weights": rng.choice(["edge", "vertex"]), "queries": qs}


def gen_tree_update(rng):
    tree = _gen_tree(rng)
    n = tree["n"]
    weights = rng.choice(["edge", "vertex"])
    ops = []
    for _ in range(12):
        u = rng.randrange(n)
        if rng.random() < 0.4 and not (weights == "edge" and u == tree["root"]):
            ops.append({"type": "update", "u": u, "d": rng.randint(-3, 5)})
        else:
            ops.append({"type": rng.choice(["path", "path_root", "subtree"]), "u": u, "v": rng.randrange(n)})
    return {"tree": tree, "agg": rng.choice(["sum", "xor"]), "weights": weights, "ops": ops}


def gen_revpath(rng):
    n = rng.randint(1, 9)
    edges = [{"u": rng.randrange(i), "v": i, "C": rng.randint(0, 5), "P": rng.randint(0, 9)} for i in range(1, n)]
    return {"n": n, "edges": edges, "C_max": rng.randint(0, 10), "case": "zero_switching"}


def gen_mobile(rng):
    n = rng.randint(1, 10)
    return {"x": sorted(rng.randint(0, 100) for _ in range(n)), "D": rng.randint(1, 20), "v": rng.randint(1, 4)}


def gen_sensor(rng):
    n = rng.randint(2, 7)
    return {"x": sorted(rng.randint(0, 10) for _ in range(n)), "s": 1,
            "pt": [0] + sorted(rng.randint(0, 12) for _ in range(n - 1)),
            "d": [0] + [rng.randint(0, 3) for _ in range(n - 1)], "regime": "general_integer"}


# ----------------------------------------------------------------- commands

def _link(doc, args, online):
    cfg_doc = dict(doc.get("config") or {})
    if args.config:
        extra = _read_json(args.config)
        validate(extra, "config")
        cfg_doc.update(extra)
    if online:
        cfg_doc["R"] = 1
    cfg = BatchConfig.from_dict(cfg_doc)
    tl, events = load_trace(doc, cfg.backend)
    initial = tl.avb
    report = run_trace(events, tl, cfg)
    if args.oracle:
        report["oracle"] = _oracle(bruteforce.check_link_report(initial, events, tl.slot_d, report))
    code = EXIT_OK
    if report["decisions"] and report["summary"]["granted"] == 0:
        code = EXIT_REJECTED
    return report, code


def cmd_link_batch(doc, args):
    return _link(doc, args, online=False)


def cmd_link_online(doc, args):
    return _link(doc, args, online=True)


_COLOR = {"online": color_online, "sweep": color_offline_sweep, "dsu": color_offline_dsu}


def _color(method):
    def run(doc, args):
        ops = [ColoringOp.from_dict(o) for o in doc["ops"]]
        col_init = doc.get("col_init", 0)
        result = _COLOR[method](doc["T"], ops, col_init)
        out = {"method": method, "intervals": result.to_list()}
        if args.oracle:
            problems = []
            if doc["T"] <= 10**6:
                if result.slot_colors() != bruteforce.paint_slots(doc["T"], ops, col_init):
                    problems.append("differs from per-slot overwrite")
            elif color_online(doc["T"], ops, col_init) != result:
                problems.append("differs from the online structure")
            out["oracle"] = _oracle(problems)
        return out, EXIT_OK
    return run


def cmd_tree_build(doc, args):
    tree = WeightedRootedTree.from_dict(doc)
    seq, a, b = euler_sequence(tree)
    lift = LiftTables(tree)
    out = {"parent": tree.parent, "level": tree.level, "euler": {"seq": seq, "a": a, "b": b},
           "lift_levels": lift.levels}
    if args.oracle:
        problems = []
        for u in range(tree.n):
            for v in range(tree.n):
                x, walk = v, False
                while x != -1:
                    walk = walk or x == u
                    x = tree.parent[x]
                if walk != (a[u] <= a[v] and b[v] <= b[u]):
                    problems.append(f"nesting of {u} and {v} disagrees with parent walk")
        out["oracle"] = _oracle(problems)
    return out, EXIT_OK


def _tree_setup(doc):
    tree = WeightedRootedTree.from_dict(doc["tree"])
    agg = AGGREGATIONS[doc.get("agg", "sum")]
    weights = doc.get("weights", "edge")
    for key in ("queries", "ops"):
        for q in doc.get(key, []):
            for end in ("u", "v"):
                if end in q and not 0 <= q[end] < tree.n:
                    raise InputError(f"{key}: vertex {q[end]} out of range")
    return tree, agg, weights


def _naive_answer(tree, agg, weights, q):
    if q["type"] == "lca":
        return bruteforce.naive_path(tree, q["u"], q.get("v", q["u"]), agg, weights)[1]
    if q["type"] == "subtree":
        return bruteforce.naive_subtree(tree, q["u"], agg, weights)
    v = tree.root if q["type"] == "path_root" else q.get("v", q["u"])
    return bruteforce.naive_path(tree, q["u"], v, agg, weights)[0]


def cmd_tree_query(doc, args):
    tree, agg, weights = _tree_setup(doc)
    lift = LiftTables(tree, agg, weights)
    sub = EulerTour(tree, "subtree", agg, weights)
    answers = []
    for q in doc["queries"]:
        u, v = q["u"], q.get("v", q["u"])
        if q["type"] == "lca":
            answers.append(lift.lca(u, v))
        elif q["type"] == "path":
            answers.append(lift.path_aggregate(u, v))
        elif q["type"] == "path_root":
            answers.append(lift.path_aggregate(u, tree.root))
        else:
            answers.append(sub.subtree_aggregate(u))
    out = {"answers": [_finite(x) for x in answers]}
    if args.oracle:
        problems = [f"query {i}: got {got}, naive walk gives {want}"
                    for i, (q, got) in enumerate(zip(doc["queries"], answers))
                    if got != (want := _naive_answer(tree, agg, weights, q))]
        out["oracle"] = _oracle(problems)
    return out, EXIT_OK


def cmd_tree_update(doc, args):
    tree, agg, weights = _tree_setup(doc)
    lift = LiftTables(tree)  # structure only; weights change
    path = EulerTour(tree, "path", agg, weights) if agg.invertible else None
    sub = EulerTour(tree, "subtree", agg, weights)
    answers = []
    problems = []
    for i, q in enumerate(doc["ops"]):
        u, v = q["u"], q.get("v", q["u"])
        kind = q["type"]
        if kind == "update":
            if "d" not in q:
                raise InputError(f"ops/{i}: update needs 'd'")
            if path is not None:
                path.update_weight(u, q["d"])
            sub.update_weight(u, q["d"])
            if weights == "edge":
                tree.we[u] = agg.op(tree.we[u], q["d"])
            else:
                tree.wv[u] = agg.op(tree.wv[u], q["d"])
            continue
        if kind in ("path", "path_root") and path is None:
            raise InputError(f"ops/{i}: path queries under updates need an invertible aggregation")
        if kind == "lca":
            got = lift.lca(u, v)
        elif kind == "path":
            got = path.path_between(lift, u, v)
        elif kind == "path_root":
            got = path.path_between(lift, u, tree.root)
        else:
            got = sub.subtree_aggregate(u)
        answers.append(got)
        if args.oracle:
            want = _naive_answer(tree, agg, weights, q)
            if want != got:
                problems.append(f"op {i}: got {got}, naive walk gives {want}")
    out = {"answers": [_finite(x) for x in answers]}
    if args.oracle:
        out["oracle"] = _oracle(problems)
    return out, EXIT_OK


def cmd_revpath_solve(doc, args):
    tree = CostRevenueTree.from_dict(doc)
    method = doc.get("method") or ("per_son" if tree.case == "bounded_degree" else "global_sort")
    best = solve_max_revenue_path(tree, method)
    out = {"method": method, "best": best.to_dict() if best else None,
           "vertices": path_vertices(tree, best.u, best.v) if best else []}
    if args.oracle:
        want = bruteforce.best_revenue(tree)
        got = best.total_revenue if best else None
        out["oracle"] = _oracle([] if want == got else [f"solver {got}, all-paths enumeration {want}"])
    return out, EXIT_OK


def cmd_wireless_mobile(doc, args):
    inst = MobilePathInstance(doc["x"], doc["D"], doc["v"])
    sched = mobile_makespan_linear(inst)
    eps = doc.get("eps", 1e-9)
    bs = mobile_makespan_bsearch(inst, TM=sched.makespan + 1.0, eps=eps)
    out = {"makespan": sched.makespan, "bsearch_makespan": bs, "Tmin": sched.Tmin,
           "xmax": sched.xmax, "cases": sched.cases}
    if args.oracle:
        out["oracle"] = _oracle(bruteforce.check_mobile(inst, sched, bs))
    return out, EXIT_OK


def cmd_wireless_sensor(doc, args):
    inst = SensorPathInstance(doc["x"], doc["s"], doc["pt"], doc["d"], doc["regime"])
    out = {"regime": inst.regime}
    if inst.regime == "zero_d":
        out["total_duration"] = sensor_duration_zero_d(inst)
    else:
        plan = sensor_duration_uniform(inst) if inst.regime == "uniform_dp" else sensor_duration_general(inst)
        out["total_duration"] = plan.total_duration
        out["waiting"] = plan.Tmin
    if args.oracle:
        out["oracle"] = _oracle(bruteforce.check_sensor(inst, out["total_duration"]))
    return out, EXIT_OK


def cmd_permcount(args):
    n, k, m = args.n, args.k, args.mod
    out: dict = {}
    if k is not None:
        value = count_permutations(n, k, m)
        out["count"] = str(value)
        row = None
    else:
        row = count_table(n, m)[-1]
        out["row"] = [str(x) for x in row]
    if args.oracle:
        problems = []
        if n <= 8:
            brute = bruteforce.perm_row(n)
            want = brute if k is None else [brute[k]]
            got = row if k is None else [value]
            if m is not None:
                want = [x % m for x in want]
            if got != want:
                problems.append(f"recurrence {got}, enumeration {want}")
        elif k is None and m is None and sum(row) != math.factorial(n):
            problems.append("row does not sum to n!")
        out["oracle"] = _oracle(problems)
    return out, EXIT_OK


def _oracle(problems):
    for p in problems:
        log.error("oracle: %s", p)
    return {"agree": not problems, "problems": problems}


# ------------------------------------------------------------------- wiring

COMMANDS = {
    ("link", "batch"): ("link", cmd_link_batch, gen_link),
    ("link", "online"): ("link", cmd_link_online, gen_link),
    ("color", "online"): ("color", _color("online"), gen_color),
    ("color", "sweep"): ("color", _color("sweep"), gen_color),
    ("color", "dsu"): ("color", _color("dsu"), gen_color),
    ("tree", "build"): ("tree_build", cmd_tree_build, gen_tree_build),
    ("tree", "query"): ("tree_query", cmd_tree_query, gen_tree_query),
    ("tree", "update"): ("tree_update", cmd_tree_update, gen_tree_update),
    ("revpath", "solve"): ("revpath", cmd_revpath_solve, gen_revpath),
    ("wireless", "mobile"): ("wireless_mobile", cmd_wireless_mobile, gen_mobile),
    ("wireless", "sensor"): ("wireless_sensor", cmd_wireless_sensor, gen_sensor),
}


def _read_json(path):
    try:
        with open(path) as f:
            return json.load(f)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="FILE", help="input JSON (default: stdin)")
    common.add_argument("--config", metavar="FILE", help="batching config JSON (link commands)")
    common.add_argument("--oracle", action="store_true", help="cross-check against a brute-force oracle")
    common.add_argument("--seed", type=int, metavar="N", help="generate a random instance instead of reading input")
    common.add_argument("--format", choices=["json"], default="json")

    parser = argparse.ArgumentParser(prog="flowsched", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)
    subs = {}
    for group, command in COMMANDS:
        if group not in subs:
            subs[group] = groups.add_parser(group).add_subparsers(dest="command", required=True)
        subs[group].add_parser(command, parents=[common])
    perm = groups.add_parser("permcount", parents=[common], help="count permutations by 2-sequences")
    perm.add_argument("--n", type=int, required=True)
    perm.add_argument("--k", type=int)
    perm.add_argument("--mod", type=int)
    return parser


def _setup_logging():
    level = os.environ.get("SCHED_LOG", "error").upper()
    logging.basicConfig(level=getattr(logging, level, logging.ERROR), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def run(argv=None, stdin=None) -> tuple[dict | None, int]:
    args = build_parser().parse_args(argv)
    try:
        if args.group == "permcount":
            out, code = cmd_permcount(args)
        else:
            schema, handler, generator = COMMANDS[(args.group, args.command)]
            if args.seed is not None:
                doc = generator(random.Random(args.seed))
            elif args.input:
                doc = _read_json(args.input)
            else:
                text = (stdin or sys.stdin).read()
                try:
                    doc = json.loads(text)
                except json.JSONDecodeError as exc:
                    raise InputError(f"stdin: malformed JSON: {exc}") from exc
            validate(doc, schema)
            out, code = handler(doc, args)
    except (InputError, ValueError, IndexError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, EXIT_INPUT
    if "oracle" in out and not out["oracle"]["agree"]:
        code = EXIT_MISMATCH
    return out, code


def main(argv=None) -> int:
    _setup_logging()
    out, code = run(argv)
    if out is not None:
        sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
