"""Plex diagrams: marked hypergraphs whose vertices carry index sets.

A diagram is a simple hypergraph (no repeated leg in an edge, no two edges on
the same leg set) with no isolated vertices. Marked vertices are summed over
during evaluation; unmarked ("free") vertices become output axes.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import IndexSet, PlexusError, natural_key


@dataclass(frozen=True)
class Vertex:
    id: str
    index_set: IndexSet
    marked: bool = False


@dataclass(frozen=True)
class Hyperedge:
    id: str
    legs: tuple
    label: str = ""

    def __post_init__(self):
        if not self.label:
            object.__setattr__(self, "label", self.id)


class Diagram:
    """Immutable marked hypergraph."""

    __slots__ = ("vertices", "edges")

    def __init__(self, vertices: dict, edges: dict):
        object.__setattr__(self, "vertices", dict(vertices))
        object.__setattr__(self, "edges", dict(edges))
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("Diagram is immutable")

    def _validate(self):
        seen_leg_sets = set()
        incident = {v: 0 for v in self.vertices}
        for e in self.edges.values():
            if len(e.legs) == 0:
                raise PlexusError("INVALID_DIAGRAM", f"edge {e.id} has no legs")
            if len(set(e.legs)) != len(e.legs):
                raise PlexusError("INVALID_DIAGRAM", f"edge {e.id} repeats a leg")
            for v in e.legs:
                if v not in self.vertices:
                    raise PlexusError("INVALID_DIAGRAM", f"edge {e.id} references unknown vertex {v}")
                incident[v] += 1
            key = frozenset(e.legs)
            if key in seen_leg_sets:
                raise PlexusError("INVALID_DIAGRAM", f"duplicate edge on legs {sorted(e.legs)}")
            seen_leg_sets.add(key)
        for v, deg in incident.items():
            if deg == 0:
                raise PlexusError("INVALID_DIAGRAM", f"isolated vertex {v}")

    def vertex_ids(self):
        return sorted(self.vertices, key=natural_key)

    def edge_ids(self):
        return sorted(self.edges, key=natural_key)

    def free_vertices(self):
        return [v for v in self.vertex_ids() if not self.vertices[v].marked]

    def marked_vertices(self):
        return [v for v in self.vertex_ids() if self.vertices[v].marked]

    def incident_edges(self, vertex_id: str):
        return [e for e in self.edge_ids() if vertex_id in self.edges[e].legs]

    def degree(self, vertex_id: str) -> int:
        return sum(1 for e in self.edges.values() if vertex_id in e.legs)

    def __repr__(self):
        vs = ", ".join(
            v + ("*" if self.vertices[v].marked else "") for v in self.vertex_ids()
        )
        es = "; ".join(
            f"{e}({','.join(self.edges[e].legs)})" for e in self.edge_ids()
        )
        return f"Diagram[{vs} | {es}]"


def build_diagram(vertices: Iterable, edges: Iterable) -> Diagram:
    """vertices: (id, index_set, marked) triples; edges: (id, legs) pairs or
    (id, legs, label) triples."""
    vmap = {}
    for spec in vertices:
        vid, index_set, marked = spec
        if vid in vmap:
            raise PlexusError("INVALID_DIAGRAM", f"duplicate vertex id {vid}")
        vmap[vid] = Vertex(vid, index_set, bool(marked))
    emap = {}
    for spec in edges:
        if len(spec) == 2:
            eid, legs = spec
            label = ""
        else:
            eid, legs, label = spec
        if eid in emap:
            raise PlexusError("INVALID_DIAGRAM", f"duplicate edge id {eid}")
        emap[eid] = Hyperedge(eid, tuple(legs), label)
    return Diagram(vmap, emap)


_STANDARD = {
    "vee": (3, [1], [(0, 1), (1, 2)]),
    "zee": (4, [1, 2], [(0, 1), (1, 2), (2, 3)]),
    "fish": (6, [2, 3, 4], [(0, 1, 2), (3, 4, 2), (3, 4, 5)]),
    "long_fish": (
        9,
        [2, 3, 4, 5, 6, 7],
        [(0, 1, 2), (3, 4, 2), (3, 4, 5), (6, 7, 5), (6, 7, 8)],
    ),
    "bm": (4, [3], [(0, 1, 3), (0, 3, 2), (3, 1, 2)]),
    "trinity_mid": (5, [3, 4], [(0, 3, 4), (1, 3, 4), (2, 3, 4)]),
    "trinity_right": (6, [3, 4, 5], [(0, 3, 4), (1, 4, 5), (2, 3, 5)]),
}


def standard_diagram(name: str, n: int | None = None, size: int = 2) -> Diagram:
    """Library of named diagrams, all on a single index set "I".

    chain(n): n edges in a path, inner vertices marked (chain(2) is the vee
    shape). fish / long_fish are the one- and two-body ternary motifs."""
    iset = IndexSet("I", size)
    if name == "chain":
        if n is None or n < 1:
            raise PlexusError("BAD_REFERENCE", "chain needs a positive edge count")
        vertices = [(f"v{t}", iset, 0 < t < n) for t in range(n + 1)]
        edges = [(f"e{t}", (f"v{t}", f"v{t + 1}")) for t in range(n)]
        return build_diagram(vertices, edges)
    if name not in _STANDARD:
        raise PlexusError("BAD_REFERENCE", f"unknown standard diagram {name!r}")
    nverts, marked, edge_legs = _STANDARD[name]
    vertices = [(f"v{t}", iset, t in marked) for t in range(nverts)]
    edges = [
        (f"e{k}", tuple(f"v{t}" for t in legs)) for k, legs in enumerate(edge_legs)
    ]
    return build_diagram(vertices, edges)


def _refine_colors(d: Diagram):
    """Color refinement. Initial color: (marked, cardinality). Each round a
    vertex also sees, per incident edge, the arity and the co-leg colors."""
    vids = d.vertex_ids()
    keys = {v: (d.vertices[v].marked, d.vertices[v].index_set.size) for v in vids}
    order = sorted(set(keys.values()))
    color = {v: order.index(keys[v]) for v in vids}
    nclasses = len(order)
    while True:
        keys = {}
        for v in vids:
            sig = []
            for e in d.edges.values():
                if v in e.legs:
                    co = sorted(color[w] for w in e.legs if w != v)
                    sig.append((len(e.legs), tuple(co)))
            keys[v] = (color[v], tuple(sorted(sig)))
        order = sorted(set(keys.values()))
        new_color = {v: order.index(keys[v]) for v in vids}
        if len(order) == nclasses:
            return new_color
        nclasses = len(order)
        color = new_color


def canonical_form(d: Diagram) -> str:
    """Label-independent certificate. Equal certificates = isomorphic diagrams
    (marks and cardinalities respected). Exhaustive tie-break inside color
    classes, so intended for small diagrams."""
    color = _refine_colors(d)
    classes = {}
    for v, c in color.items():
        classes.setdefault(c, []).append(v)
    blocks = [sorted(classes[c], key=natural_key) for c in sorted(classes)]
    best = None
    for perms in itertools.product(*(itertools.permutations(b) for b in blocks)):
        pos = {}
        t = 0
        for block in perms:
            for v in block:
                pos[v] = t
                t += 1
        vsig = tuple(
            (d.vertices[v].marked, d.vertices[v].index_set.size)
            for block in perms
            for v in block
        )
        esig = tuple(
            sorted(tuple(sorted(pos[w] for w in e.legs)) for e in d.edges.values())
        )
        cand = (vsig, esig)
        if best is None or cand < best:
            best = cand
    return repr(best)


def is_isomorphic(d1: Diagram, d2: Diagram) -> bool:
    return canonical_form(d1) == canonical_form(d2)


def to_dot(d: Diagram) -> str:
    """Graphviz rendering: vertices as points (filled black when marked,
    open when free), each hyperedge as a clique over its legs carrying the
    edge label on its first clique line."""
    lines = ["graph plex {"]
    for v in d.vertex_ids():
        vx = d.vertices[v]
        fill = "black" if vx.marked else "white"
        lines.append(
            f'  "{v}" [shape=point style=filled fillcolor={fill} xlabel="{v}:{vx.index_set.id}"];'
        )
    for e in d.edge_ids():
        ed = d.edges[e]
        pairs = list(itertools.combinations(ed.legs, 2))
        if not pairs:
            pairs = [(ed.legs[0], ed.legs[0])]
        for k, (u, v) in enumerate(pairs):
            tag = f' [label="{ed.label}"]' if k == 0 else ""
            lines.append(f'  "{u}" -- "{v}"{tag};')
    lines.append("}")
    return "\n".join(lines)
