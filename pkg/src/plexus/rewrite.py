"""Motif rewriting: find occurrences of a small marked hypergraph inside a
host diagram, collapse each occurrence to a single edge, and explore all
rewrite orders.

A match must (1) map edges injectively onto host edges of the same arity and
vertices injectively onto host vertices of the same cardinality, preserving
incidence exactly, and (2) be local: the image of a marked motif vertex is a
marked host vertex all of whose incident edges lie inside the match. Free
motif vertices may land on any host vertex; those images become the legs of
the replacement edge. Matches are reported up to motif automorphism.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .core import IndexSet, PlexusError, natural_key
from .arrays import random_array
from .diagram import Diagram, Hyperedge, Vertex, build_diagram, canonical_form, standard_diagram
from .evaluator import BoundEdge, default_binding, evaluate


@dataclass(frozen=True)
class Motif:
    """Pattern diagram plus the edge order used to build replacement labels."""

    pattern: Diagram
    role_order: tuple = ()

    def __post_init__(self):
        if not self.role_order:
            object.__setattr__(self, "role_order", tuple(self.pattern.edge_ids()))
        if sorted(self.role_order) != sorted(self.pattern.edges):
            raise PlexusError("BAD_REFERENCE", "role_order must list every motif edge once")
        if not self.pattern.free_vertices():
            raise PlexusError("INVALID_MOTIF", "motif needs at least one free vertex")
        if len(self.pattern.edges) > 1 and not _connected(
            [e.legs for e in self.pattern.edges.values()]
        ):
            raise PlexusError("INVALID_MOTIF", "motif must be connected")


def vee_motif(size: int = 2) -> Motif:
    return Motif(standard_diagram("vee", size=size))


def fish_motif(size: int = 2) -> Motif:
    return Motif(standard_diagram("fish", size=size))


@dataclass(frozen=True)
class Match:
    vertex_map: dict
    edge_map: dict


def _compatible_vertex(pattern, host, pv, hv, strict_marks):
    pvx, hvx = pattern.vertices[pv], host.vertices[hv]
    if pvx.index_set.size != hvx.index_set.size:
        return False
    if strict_marks:
        return pvx.marked == hvx.marked
    if pvx.marked and not hvx.marked:
        return False
    return True


def _find_raw(host: Diagram, pattern: Diagram, strict_marks: bool, require_locality: bool):
    pedges = pattern.edge_ids()
    results = []

    def backtrack(k, vmap, emap):
        if k == len(pedges):
            if require_locality:
                image = set(emap.values())
                for pv, hv in vmap.items():
                    if pattern.vertices[pv].marked:
                        for he, hedge in host.edges.items():
                            if hv in hedge.legs and he not in image:
                                return
            results.append(Match(dict(vmap), dict(emap)))
            return
        pe = pedges[k]
        plegs = pattern.edges[pe].legs
        taken = set(vmap.values())
        for he, hedge in host.edges.items():
            if he in emap.values() or len(hedge.legs) != len(plegs):
                continue
            hlegs = set(hedge.legs)
            fixed_ok = True
            for pv in plegs:
                if pv in vmap and vmap[pv] not in hlegs:
                    fixed_ok = False
                    break
            if not fixed_ok:
                continue
            free_plegs = [pv for pv in plegs if pv not in vmap]
            avail = [hv for hv in hedge.legs if hv not in taken]
            if len(avail) != len(free_plegs):
                continue
            for perm in itertools.permutations(avail):
                if all(
                    _compatible_vertex(pattern, host, pv, hv, strict_marks)
                    for pv, hv in zip(free_plegs, perm)
                ):
                    vmap.update(zip(free_plegs, perm))
                    emap[pe] = he
                    backtrack(k + 1, vmap, emap)
                    del emap[pe]
                    for pv in free_plegs:
                        del vmap[pv]

    backtrack(0, {}, {})
    return results


def motif_automorphisms(pattern: Diagram):
    """Mark- and cardinality-preserving self-isomorphisms."""
    return _find_raw(pattern, pattern, strict_marks=True, require_locality=False)


def find_matches(host: Diagram, motif: Motif):
    """Matches of the motif in the host, one representative per automorphism
    orbit: the one whose tuple of host images (motif vertices in natural-id
    order) is smallest."""
    raw = _find_raw(host, motif.pattern, strict_marks=False, require_locality=True)
    autos = motif_automorphisms(motif.pattern)
    vids = motif.pattern.vertex_ids()
    best_by_orbit = {}
    for m in raw:
        best_key, best_match = None, None
        for a in autos:
            vmap = {pv: m.vertex_map[a.vertex_map[pv]] for pv in m.vertex_map}
            emap = {pe: m.edge_map[a.edge_map[pe]] for pe in m.edge_map}
            key = tuple(natural_key(vmap[v]) for v in vids)
            if best_key is None or key < best_key:
                best_key, best_match = key, Match(vmap, emap)
        best_by_orbit[best_key] = best_match
    return [best_by_orbit[k] for k in sorted(best_by_orbit)]


def _replacement(host: Diagram, motif: Motif, match: Match):
    pattern = motif.pattern
    free_images = sorted(
        (match.vertex_map[pv] for pv in pattern.free_vertices()), key=natural_key
    )
    label = "(" + "".join(
        host.edges[match.edge_map[pe]].label for pe in motif.role_order
    ) + ")"
    n = 0
    while f"r{n}" in host.edges:
        n += 1
    return f"r{n}", tuple(free_images), label


def apply_rewrite(host: Diagram, match: Match, motif: Motif) -> Diagram:
    """Remove the matched edges, drop vertices left isolated, add one edge on
    the images of the motif's free vertices with the bracketed label."""
    d, _ = _apply(host, motif, match)
    return d


def _apply(host: Diagram, motif: Motif, match: Match):
    new_eid, legs, label = _replacement(host, motif, match)
    matched = set(match.edge_map.values())
    edges = {eid: e for eid, e in host.edges.items() if eid not in matched}
    edges[new_eid] = Hyperedge(new_eid, legs, label)
    used = {v for e in edges.values() for v in e.legs}
    vertices = {vid: vx for vid, vx in host.vertices.items() if vid in used}
    return Diagram(vertices, edges), new_eid


def apply_rewrite_bound(host: Diagram, binding: dict, match: Match, motif: Motif):
    """Rewrite and re-bind: the replacement edge carries the evaluation of the
    matched sub-diagram, where exactly the images of motif-marked vertices are
    summed and the replacement legs (natural order) are the output axes.
    Returns (diagram, binding, new_edge_id)."""
    pattern = motif.pattern
    marked_images = {match.vertex_map[pv] for pv in pattern.marked_vertices()}
    matched = set(match.edge_map.values())
    sub_vertices = {}
    for eid in matched:
        for v in host.edges[eid].legs:
            sub_vertices[v] = Vertex(v, host.vertices[v].index_set, v in marked_images)
    sub_d = Diagram(sub_vertices, {eid: host.edges[eid] for eid in matched})
    sub_binding = {eid: binding[eid] for eid in matched}
    out_order = sorted(
        (v for v in sub_vertices if v not in marked_images), key=natural_key
    )
    collapsed = evaluate(sub_d, sub_binding, output_order=out_order)
    new_d, new_eid = _apply(host, motif, match)
    new_binding = {eid: binding[eid] for eid in new_d.edges if eid != new_eid}
    new_binding[new_eid] = BoundEdge(collapsed, {v: t for t, v in enumerate(out_order)})
    return new_d, new_binding, new_eid


def state_key(d: Diagram):
    """Concrete unlabeled state: vertex ids with marks and cardinalities plus
    the multiset of edge leg-sets. Edge ids and labels are ignored."""
    vsig = tuple(
        sorted((v, d.vertices[v].marked, d.vertices[v].index_set.size) for v in d.vertices)
    )
    esig = tuple(sorted(tuple(sorted(e.legs, key=natural_key)) for e in d.edges.values()))
    return (vsig, esig)


class RewriteGraph:
    """Multiway rewrite graph: states keyed by `state_key`, transitions
    labeled by the replacement-edge label."""

    def __init__(self, states: dict, transitions: list, initial):
        self.states = states
        self.transitions = transitions
        self.initial = initial

    @property
    def terminals(self):
        sources = {t[0] for t in self.transitions}
        return [k for k in self.states if k not in sources]

    def terminal_diagrams(self):
        return [self.states[k] for k in self.terminals]


def multiway(host: Diagram, motif: Motif, max_states: int = 1000) -> RewriteGraph:
    """Breadth-first exploration of every rewrite order."""
    k0 = state_key(host)
    states = {k0: host}
    transitions = []
    frontier = [k0]
    while frontier:
        k = frontier.pop(0)
        d = states[k]
        for m in find_matches(d, motif):
            d2, new_eid = _apply(d, motif, m)
            k2 = state_key(d2)
            transitions.append((k, k2, d2.edges[new_eid].label))
            if k2 not in states:
                states[k2] = d2
                if len(states) > max_states:
                    raise PlexusError("REWRITE_EXPLOSION", f"more than {max_states} states")
                frontier.append(k2)
    return RewriteGraph(states, transitions, k0)


def check_concurrency(host: Diagram, motif: Motif) -> dict:
    """confluent: one terminal state. regular: every edge in every reachable
    state has the same arity. overlapping: every pair of initial matches
    shares a host edge. concurrent: all three."""
    g = multiway(host, motif)
    terminals = g.terminals
    arities = {len(e.legs) for d in g.states.values() for e in d.edges.values()}
    init = find_matches(host, motif)
    overlapping = all(
        set(m1.edge_map.values()) & set(m2.edge_map.values())
        for m1, m2 in itertools.combinations(init, 2)
    )
    confluent = len(terminals) == 1
    regular = len(arities) <= 1
    return {
        "confluent": confluent,
        "regular": regular,
        "overlapping": overlapping,
        "concurrent": confluent and regular and overlapping,
        "initial_matches": len(init),
        "states": len(g.states),
        "terminals": len(terminals),
    }


def semantic_confluence_binding(host: Diagram, binding: dict, motif: Motif) -> dict:
    """Run every maximal rewrite sequence on one bound host, collapsing
    matched sub-diagrams into bound arrays, and compare each final evaluation
    with evaluating the host directly."""
    direct = evaluate(host, binding)
    finals = []

    def rec(d, b):
        ms = find_matches(d, motif)
        if not ms:
            finals.append(evaluate(d, b))
            return
        for m in ms:
            d2, b2, _ = apply_rewrite_bound(d, b, m, motif)
            rec(d2, b2)

    rec(host, binding)
    ok = all(f == direct for f in finals)
    return {"ok": ok, "sequences": len(finals), "direct": direct, "finals": finals}


def random_binding(d: Diagram, semiring, rng) -> dict:
    """Bind every edge to a random array over the legs' index sets (legs in
    natural order, matching `default_binding`)."""
    arrays = {}
    for eid, e in d.edges.items():
        axes = [
            d.vertices[v].index_set for v in sorted(e.legs, key=natural_key)
        ]
        arrays[eid] = random_array(axes, semiring, rng)
    return default_binding(d, arrays)


def semantic_confluence(host: Diagram, motif: Motif, semiring, trials: int = 50,
                        seed: int = 0) -> dict:
    """Sample random bindings and check that every maximal rewrite sequence
    evaluates to the direct host value on each. Needs an exact semiring."""
    if not semiring.exact:
        raise PlexusError("INEXACT_SEMIRING", "semantic confluence needs an exact semiring")
    rng = random.Random(seed)
    sequences = 0
    for t in range(trials):
        binding = random_binding(host, semiring, rng)
        res = semantic_confluence_binding(host, binding, motif)
        sequences = res["sequences"]
        if not res["ok"]:
            res["trial"] = t
            return res
    return {"ok": True, "trials": trials, "sequences": sequences}


ENUMERATION_VARIANTS = {
    "default": (2, None),
    "tips-only": (2, 1),
    "loose": (1, 1),
    "all": (1, None),
}


def _connected(edge_sets) -> bool:
    edge_sets = [set(e) for e in edge_sets]
    reached = set(edge_sets[0])
    pending = edge_sets[1:]
    while pending:
        for e in pending:
            if e & reached:
                reached |= e
                pending.remove(e)
                break
        else:
            return False
    return True


def _edge_transitive(d: Diagram) -> bool:
    autos = motif_automorphisms(d)
    eids = d.edge_ids()
    orbit = {a.edge_map[eids[0]] for a in autos}
    return orbit == set(eids)


def enumerate_compositions(num_edges: int = 3, edge_order: int = 3,
                           free_vertices: int = 3, variant: str = "default",
                           size: int = 2):
    """Isomorphism classes of connected simple hypergraphs with `num_edges`
    edges of order `edge_order` and exactly `free_vertices` unmarked
    vertices. Variant sets the degree constraints (marked minimum degree,
    exact unmarked degree or None). Returns (all_classes, symmetric_classes);
    symmetric means the automorphism group is transitive on edges."""
    if variant not in ENUMERATION_VARIANTS:
        raise PlexusError("BAD_REFERENCE", f"unknown enumeration variant {variant!r}")
    if num_edges < 1 or edge_order < 1 or free_vertices < 0:
        raise PlexusError("CONFORMABILITY", "enumeration parameters must be positive")
    marked_min, unmarked_exact = ENUMERATION_VARIANTS[variant]
    iset = IndexSet("I", size)
    reps, symmetric, seen = [], [], set()
    pool = tuple(range(edge_order + (num_edges - 1) * (edge_order - 1)))
    for group in itertools.combinations(itertools.combinations(pool, edge_order), num_edges):
        used = sorted(set().union(*group))
        if not _connected(group):
            continue
        deg = {v: sum(v in e for e in group) for v in used}
        for unmarked in itertools.combinations(used, free_vertices):
            ok = True
            for v in used:
                if v in unmarked:
                    if unmarked_exact is not None and deg[v] != unmarked_exact:
                        ok = False
                        break
                elif deg[v] < marked_min:
                    ok = False
                    break
            if not ok:
                continue
            relabel = {v: f"v{i}" for i, v in enumerate(used)}
            d = build_diagram(
                [(relabel[v], iset, v not in unmarked) for v in used],
                [
                    (f"e{k}", tuple(relabel[v] for v in sorted(e)))
                    for k, e in enumerate(group)
                ],
            )
            cert = canonical_form(d)
            if cert in seen:
                continue
            seen.add(cert)
            reps.append(d)
            if _edge_transitive(d):
                symmetric.append(d)
    return reps, symmetric
