"""Command line interface.

Exit codes: 0 success, 1 a checked law failed (counterexample JSON on
stdout), 2 input or usage error (structured JSON on stderr). All randomness
flows through --seed, so output is byte-identical for identical inputs.
"""
from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys

from .arrays import Array, kronecker, random_array
from .core import IndexSet, PlexusError
from .diagram import standard_diagram, to_dot
from .evaluator import default_binding, evaluate
from .rewrite import (
    Motif,
    check_concurrency,
    enumerate_compositions,
    multiway,
    semantic_confluence,
)
from .selftest import run_selftest
from .semiring import parse_semiring
from .ternary import (
    ETA_VARIANTS,
    biunit_pair_check,
    bijection_heap,
    check_heap,
    check_isotropy_biinvariance,
    check_semiheap,
    find_biunit_pairs,
    fish,
    fish_units_check,
    flat_fish_equiv,
    group_heap,
    heapoid_check,
    relation_semiheap,
    semiheap_law_arrays,
    vector_heap,
)
from .workspace import array_to_json, load_bindings, load_diagram, load_workspace

_STANDARD = ("vee", "zee", "chain", "fish", "long_fish", "bm", "trinity_mid", "trinity_right")


def _note(args, text):
    if not getattr(args, "json", False):
        print(text)


def _bind_by_label(ws, d):
    arrays = {}
    for eid, e in d.edges.items():
        if e.label not in ws.arrays:
            raise PlexusError("BAD_REFERENCE", f"edge {eid} wants array {e.label!r}, not in workspace")
        arrays[eid] = ws.arrays[e.label]
    return default_binding(d, arrays)


def _sole(mapping, kind, name=None):
    if name is not None:
        if name not in mapping:
            raise PlexusError("BAD_REFERENCE", f"no {kind} named {name!r} in workspace")
        return mapping[name]
    if len(mapping) != 1:
        raise PlexusError(
            "BAD_REFERENCE",
            f"workspace holds {len(mapping)} {kind}s, pick one by name",
        )
    return next(iter(mapping.values()))


def _load_array_arg(token):
    """An array argument is a workspace file, or file:name to pick one of
    several arrays."""
    path, name = token, None
    if ":" in token and not os.path.exists(token):
        path, name = token.rsplit(":", 1)
    ws = load_workspace(path)
    return _sole(ws.arrays, "array", name), ws.semiring


def _load_host(token, diagram_name):
    if os.path.exists(token):
        ws = load_workspace(token)
        return _sole(ws.diagrams, "diagram", diagram_name), ws
    if token in _STANDARD:
        return standard_diagram(token), None
    if token.startswith("chain"):
        tail = token[5:].lstrip("(").rstrip(")")
        if tail.isdigit():
            return standard_diagram("chain", n=int(tail)), None
    raise PlexusError("PARSE_ERROR", f"{token!r} is neither a file nor a standard diagram name")


def _cmd_eval(args):
    if args.bindings:
        d, isets = load_diagram(args.file)
        _, named = load_bindings(args.bindings, isets)
        arrays = {}
        for eid, e in d.edges.items():
            key = eid if eid in named else e.label
            if key not in named:
                raise PlexusError("BAD_REFERENCE", f"no bound array for edge {eid!r}")
            arrays[eid] = named[key]
        binding = default_binding(d, arrays)
    else:
        ws = load_workspace(args.file)
        d = _sole(ws.diagrams, "diagram", args.diagram)
        binding = _bind_by_label(ws, d)
    order = args.order.split(",") if args.order else None
    result = evaluate(d, binding, order)
    print(json.dumps(array_to_json(result)))
    return 0


def _cmd_fish(args):
    (a, sa), (b, sb), (c, sc) = (_load_array_arg(t) for t in (args.a, args.b, args.c))
    if sb != sa or sc != sa:
        raise PlexusError("SEMIRING_MISMATCH", "the three workspaces use different semirings")
    result = fish(a, b, c, args.variant, args.twist)
    print(json.dumps(array_to_json(result)))
    return 0


def _cmd_rewrite(args):
    host, _ = _load_host(args.host, args.diagram)
    motif_d, _ = _load_host(args.motif, None)
    motif = Motif(motif_d)
    report = check_concurrency(host, motif)
    g = multiway(host, motif)
    report["terminal_labels"] = sorted(
        sorted(e.label for e in d.edges.values()) for d in g.terminal_diagrams()
    )
    code = 0
    if args.semantic:
        semiring = parse_semiring(args.semantic)
        sem = semantic_confluence(host, motif, semiring, args.trials, args.seed)
        report["semantic"] = {k: v for k, v in sem.items() if k in ("ok", "trials", "sequences", "trial")}
        if not sem["ok"]:
            code = 1
    if args.json:
        print(json.dumps(report))
    else:
        for k, v in report.items():
            print(f"{k}: {json.dumps(v)}")
    return code


def _cmd_enumerate(args):
    reps, symmetric = enumerate_compositions(
        args.edges, args.order, args.free, args.variant, size=args.size
    )
    sym_ids = {id(d) for d in symmetric}
    classes = []
    for d in reps:
        edges = ["/".join(sorted(e.legs)) for e in d.edges.values()]
        marked = sorted(d.marked_vertices())
        classes.append({"edges": edges, "marked": marked, "symmetric": id(d) in sym_ids})
    if args.json:
        print(json.dumps({"classes": classes, "count": len(reps), "symmetric": len(symmetric)}))
        return 0
    for k, c in enumerate(classes):
        sym = " symmetric" if c["symmetric"] else ""
        print(f"class {k}: edges [{'; '.join(c['edges'])}] marked [{','.join(c['marked'])}]{sym}")
    print(f"count: {len(reps)}, symmetric: {len(symmetric)}")
    return 0


def _cmd_export_dot(args):
    d, _ = _load_host(args.file, args.diagram)
    text = to_dot(d)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text)
    return 0


def _fail_law(law, witness):
    print(json.dumps({"law": law, "counterexample": witness}))
    return 1


def _parse_sizes(text):
    try:
        sizes = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise PlexusError("PARSE_ERROR", f"bad --sizes {text!r}") from None
    if len(sizes) != 3 or any(s < 1 for s in sizes):
        raise PlexusError("PARSE_ERROR", "--sizes needs three positive integers i,j,k")
    return sizes


def _suite_semiheap(args, semiring, sizes):
    v = semiheap_law_arrays(args.variant, semiring, sizes, args.trials, args.seed, args.twist)
    if not v:
        return _fail_law(v.law, v.witness)
    _note(args, f"semiheap ok: {args.trials} trials, sizes {sizes}, semiring {semiring.name}")
    return 0


def _suite_heap(args, semiring, sizes):
    z2 = [[0, 1], [1, 0]]
    z3 = [[(r + c) % 3 for c in range(3)] for r in range(3)]
    heaps = [
        ("group_heap(Z2)", group_heap(z2)),
        ("group_heap(Z3)", group_heap(z3)),
        ("vector_heap(3,1)", vector_heap(3, 1)),
        ("bijection_heap(2)", bijection_heap(2)),
        ("bijection_heap(3)", bijection_heap(3)),
    ]
    for name, t in heaps:
        r = check_heap(t)
        if not r["ok"]:
            return _fail_law(f"heap:{name}", {"sh": r["sh"].law, "h": r["h"].law, "m": r["m"].law})
    rel = relation_semiheap(2, 2)
    if not check_semiheap(rel):
        return _fail_law("semiheap:relation(2,2)", None)
    if check_heap(rel)["ok"]:
        return _fail_law("relation(2,2) must not be a heap", None)
    _note(args, "heap ok: group Z2, group Z3, vectors, bijections; relations are semiheap only")
    return 0


def _suite_units(args, semiring, sizes):
    rng = random.Random(args.seed)
    axes = tuple(IndexSet(n, s) for n, s in zip("IJK", sizes))
    for t in range(args.trials):
        a = random_array(axes, semiring, rng)
        v = fish_units_check(a)
        if not v:
            return _fail_law(v.law, {"trial": t, "array": list(a.entries)})
    _note(args, f"units ok: {args.trials} trials, sizes {sizes}, semiring {semiring.name}")
    return 0


def _suite_biunit(args, semiring, sizes):
    if semiring.kind != "boolean":
        raise PlexusError("UNSUPPORTED", "the biunit suite searches the boolean semiring")
    I, J, K = (IndexSet(n, s) for n, s in zip("IJK", sizes))
    pairs = find_biunit_pairs(I, J, K, semiring)
    for e, e2 in pairs:
        if not biunit_pair_check(e, e2)["ok"]:
            return _fail_law("biunit-pair", {"entries": list(e.entries)})
    delta = kronecker(3, IndexSet("I", 2), semiring)
    if biunit_pair_check(delta, delta)["ok"]:
        return _fail_law("delta must fail the first biunit equation", None)
    _note(args, f"biunit ok: {len(pairs)} pairs at sizes {sizes}")
    return 0


def _suite_flatfish(args, semiring, sizes):
    rng = random.Random(args.seed)
    axes = tuple(IndexSet(n, s) for n, s in zip("IJK", sizes))
    for t in range(args.trials):
        arrays = [random_array(axes, semiring, rng) for _ in range(3)]
        v = flat_fish_equiv(*arrays)
        if not v:
            return _fail_law(v.law, {"trial": t})
    _note(args, f"flatfish ok: {args.trials} trials, sizes {sizes}, semiring {semiring.name}")
    return 0


def _suite_isotropy(args, semiring, sizes):
    for n in (2, 3):
        v = check_isotropy_biinvariance(n, n)
        if not v:
            return _fail_law(v.law, v.witness)
    _note(args, "isotropy ok: sizes 2 and 3, exhaustive")
    return 0


def _suite_heapoid(args, semiring, sizes):
    if semiring.kind != "boolean":
        raise PlexusError("UNSUPPORTED", "the heapoid suite runs on the boolean semiring")
    iset = IndexSet("I", 2)
    delta = kronecker(3, iset, semiring)
    r = heapoid_check([delta])
    if not (r["semiheapoid"] and not r["heapoid"]):
        return _fail_law("delta carrier must be a semiheapoid but not a heapoid", None)
    I4, J2, K2 = IndexSet("I", 4), IndexSet("J", 2), IndexSet("K", 2)
    carrier = []
    for sigma in itertools.permutations(range(4)):
        entries = [1 if sigma[p] == q * 2 + rr else 0 for p in range(4) for q in range(2) for rr in range(2)]
        carrier.append(Array((I4, J2, K2), entries, semiring))
    r = heapoid_check(carrier, "JKI")
    if not (r["semiheapoid"] and r["heapoid"] and r["malcev"]):
        return _fail_law("permutation carrier must be a Malcev heapoid", None)
    _note(args, "heapoid ok: delta carrier semiheapoid only; permutation carrier Malcev heapoid")
    return 0


_SUITES = {
    "semiheap": _suite_semiheap,
    "heap": _suite_heap,
    "units": _suite_units,
    "biunit": _suite_biunit,
    "flatfish": _suite_flatfish,
    "isotropy": _suite_isotropy,
    "heapoid": _suite_heapoid,
}


def _cmd_laws(args):
    semiring = parse_semiring(args.semiring)
    sizes = _parse_sizes(args.sizes)
    suites = list(_SUITES) if args.suite == "all" else [args.suite]
    for name in suites:
        code = _SUITES[name](args, semiring, sizes)
        if code:
            return code
    if args.json:
        print(json.dumps({"ok": True, "suites": suites}))
    return 0


def _cmd_selftest(args):
    ok, lines = run_selftest(args.seed)
    if args.json:
        print(json.dumps({"ok": ok, "lines": lines}))
    else:
        for line in lines:
            print(line)
    return 0 if ok else 1


def build_parser():
    p = argparse.ArgumentParser(prog="plexus", description="Semiring array algebra and diagram rewriting")
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate a diagram against bound arrays")
    pe.add_argument("file", help="workspace file, or a diagram file when --bindings is given")
    pe.add_argument("--bindings", default="", help="arrays file for a standalone diagram")
    pe.add_argument("--diagram", default=None, help="diagram name (default: the only one)")
    pe.add_argument("--order", default="", help="comma separated free vertex ids")
    pe.set_defaults(fn=_cmd_eval)

    pf = sub.add_parser("fish", help="ternary product of three arrays")
    pf.add_argument("a", help="workspace file (or file:name) holding the tail")
    pf.add_argument("b", help="workspace file (or file:name) holding the body")
    pf.add_argument("c", help="workspace file (or file:name) holding the head")
    pf.add_argument("--variant", default="IJK", choices=sorted(ETA_VARIANTS))
    pf.add_argument("--twist", action="store_true")
    pf.set_defaults(fn=_cmd_fish)

    pr = sub.add_parser("rewrite", help="multiway rewriting and concurrency report")
    pr.add_argument("host", help="workspace file or standard diagram name")
    pr.add_argument("--diagram", default=None, help="diagram name inside the workspace")
    pr.add_argument("--motif", default="vee", help="workspace file or standard diagram name")
    pr.add_argument("--semantic", default="", help="semiring for semantic confluence trials")
    pr.add_argument("--trials", type=int, default=20)
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--json", action="store_true", help="stable JSON report instead of text")
    pr.set_defaults(fn=_cmd_rewrite)

    pn = sub.add_parser("enumerate", help="census of edge compositions")
    pn.add_argument("--edges", type=int, default=3)
    pn.add_argument("--order", type=int, default=3)
    pn.add_argument("--free", type=int, default=3)
    pn.add_argument("--variant", default="default")
    pn.add_argument("--size", type=int, default=2)
    pn.add_argument("--json", action="store_true", help="stable JSON report instead of text")
    pn.set_defaults(fn=_cmd_enumerate)

    pd = sub.add_parser("export-dot", help="graphviz rendering of a diagram")
    pd.add_argument("file", help="workspace file or standard diagram name")
    pd.add_argument("--diagram", default=None)
    pd.add_argument("--out", default="")
    pd.set_defaults(fn=_cmd_export_dot)

    pl = sub.add_parser("laws", help="law suites with counterexample reporting")
    pl.add_argument("--suite", default="all", choices=sorted(_SUITES) + ["all"])
    pl.add_argument("--semiring", default="boolean")
    pl.add_argument("--sizes", default="2,2,2")
    pl.add_argument("--variant", default="IJK", choices=sorted(ETA_VARIANTS))
    pl.add_argument("--twist", action="store_true")
    pl.add_argument("--trials", type=int, default=20)
    pl.add_argument("--seed", type=int, default=0)
    pl.add_argument("--json", action="store_true", help="stable JSON report instead of text")
    pl.set_defaults(fn=_cmd_laws)

    ps = sub.add_parser("selftest", help="reduced mirror of the acceptance checks")
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--json", action="store_true", help="stable JSON report instead of text")
    ps.set_defaults(fn=_cmd_selftest)
    return p


def run_command(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except PlexusError as err:
        print(json.dumps({"error": err.code, "message": str(err)}), file=sys.stderr)
        return 2


def main(argv=None):
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
