"""Diagram evaluation: bind an array to every hyperedge, sum the product of
bound entries over all assignments to marked vertices.

`evaluate` is the engine; `evaluate_formula_oracle` is a deliberately separate
reference that loops over every total vertex assignment and does its own
offset arithmetic, so the two can cross-check each other.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .arrays import Array, kronecker
from .core import PlexusError, natural_key
from .diagram import Diagram, Hyperedge, Vertex


@dataclass(frozen=True)
class BoundEdge:
    """One edge's array plus the leg -> axis bijection (twists live here)."""

    array: Array
    leg_to_axis: dict


def default_binding(d: Diagram, arrays: dict) -> dict:
    """Bind arrays by edge id; legs in natural vertex-id order take axes
    0..n-1."""
    unknown = set(arrays) - set(d.edges)
    if unknown:
        raise PlexusError("BAD_REFERENCE", f"arrays for unknown edges {sorted(unknown)}")
    binding = {}
    for eid in d.edge_ids():
        if eid not in arrays:
            raise PlexusError("BAD_REFERENCE", f"no array bound to edge {eid}")
        a = arrays[eid]
        legs = sorted(d.edges[eid].legs, key=natural_key)
        if a.order != len(legs):
            raise PlexusError(
                "CONFORMABILITY",
                f"edge {eid} has {len(legs)} legs but array order {a.order}",
            )
        for t, v in enumerate(legs):
            if a.axes[t] != d.vertices[v].index_set:
                raise PlexusError(
                    "CONFORMABILITY",
                    f"edge {eid} axis {t}: array has {a.axes[t].id}:{a.axes[t].size}, "
                    f"vertex {v} has {d.vertices[v].index_set.id}:{d.vertices[v].index_set.size}",
                )
        binding[eid] = BoundEdge(a, {v: t for t, v in enumerate(legs)})
    return binding


def _check_binding(d: Diagram, binding: dict):
    semiring = None
    for eid in d.edge_ids():
        if eid not in binding:
            raise PlexusError("BAD_REFERENCE", f"no array bound to edge {eid}")
        be = binding[eid]
        legs = d.edges[eid].legs
        if sorted(be.leg_to_axis) != sorted(legs):
            raise PlexusError("CONFORMABILITY", f"edge {eid}: binding legs disagree")
        if sorted(be.leg_to_axis.values()) != list(range(len(legs))):
            raise PlexusError("CONFORMABILITY", f"edge {eid}: leg_to_axis not a bijection")
        for v, t in be.leg_to_axis.items():
            if be.array.axes[t] != d.vertices[v].index_set:
                raise PlexusError(
                    "CONFORMABILITY",
                    f"edge {eid} axis {t} does not match vertex {v}",
                )
        if semiring is None:
            semiring = be.array.semiring
        elif be.array.semiring != semiring:
            raise PlexusError("SEMIRING_MISMATCH", "binding mixes semirings")
    if semiring is None:
        raise PlexusError("BAD_REFERENCE", "nothing bound: diagram has no edges")
    return semiring


def evaluate(d: Diagram, binding: dict, output_order: list | None = None) -> Array:
    """Sum over marked-vertex assignments of the product of bound entries.
    Output axes follow `output_order` (default: free vertices by natural id)."""
    s = _check_binding(d, binding)
    free = d.free_vertices()
    if output_order is not None:
        if sorted(output_order, key=natural_key) != free:
            raise PlexusError("BAD_REFERENCE", "output_order must list every free vertex once")
        free = list(output_order)
    marked = d.marked_vertices()
    out_axes = tuple(d.vertices[v].index_set for v in free)
    edge_plan = []
    for eid in d.edge_ids():
        be = binding[eid]
        axis_to_leg = [None] * len(be.leg_to_axis)
        for v, t in be.leg_to_axis.items():
            axis_to_leg[t] = v
        edge_plan.append((be.array, axis_to_leg))
    entries = []
    assignment = {}
    for free_idx in itertools.product(*(range(ax.size) for ax in out_axes)):
        assignment.update(zip(free, free_idx))
        acc = s.zero()
        for marked_idx in itertools.product(
            *(range(d.vertices[v].index_set.size) for v in marked)
        ):
            assignment.update(zip(marked, marked_idx))
            term = s.one()
            for array, axis_to_leg in edge_plan:
                term = s.mul(term, array.entry([assignment[v] for v in axis_to_leg]))
            acc = s.add(acc, term)
        entries.append(acc)
    return Array(out_axes, entries, s)


def evaluate_formula_oracle(d: Diagram, binding: dict, output_order: list | None = None) -> Array:
    """Reference evaluation, kept independent of `evaluate`: iterate over every
    total vertex assignment, look entries up by hand-rolled offsets, and bucket
    the terms by the free part of the assignment."""
    vids = d.vertex_ids()
    free = [v for v in vids if not d.vertices[v].marked]
    if output_order is not None:
        if sorted(output_order, key=natural_key) != free:
            raise PlexusError("BAD_REFERENCE", "output_order must list every free vertex once")
        free = list(output_order)
    s = None
    for eid in d.edges:
        if eid not in binding:
            raise PlexusError("BAD_REFERENCE", f"no array bound to edge {eid}")
        s = binding[eid].array.semiring
    if s is None:
        raise PlexusError("BAD_REFERENCE", "nothing bound: diagram has no edges")
    buckets = {}
    for total in itertools.product(
        *(range(d.vertices[v].index_set.size) for v in vids)
    ):
        assign = dict(zip(vids, total))
        term = s.one()
        for eid in d.edges:
            be = binding[eid]
            arity = len(be.leg_to_axis)
            axis_value = [0] * arity
            for v, t in be.leg_to_axis.items():
                axis_value[t] = assign[v]
            off = 0
            for t in range(arity):
                off = off * be.array.axes[t].size + axis_value[t]
            term = s.mul(term, be.array.entries[off])
        key = tuple(assign[v] for v in free)
        buckets[key] = s.add(buckets.get(key, s.zero()), term)
    sizes = [d.vertices[v].index_set.size for v in free]
    count = 1
    for n in sizes:
        count *= n
    entries = [s.zero()] * count
    for key, val in buckets.items():
        off = 0
        for n, i in zip(sizes, key):
            off = off * n + i
        entries[off] = val
    axes = tuple(d.vertices[v].index_set for v in free)
    return Array(axes, entries, s)


def insert_kronecker(d: Diagram, binding: dict, vertex: str, edge: str):
    """Split `vertex` off the given incident edge through a fresh marked
    vertex joined back by an order-2 identity edge. Evaluation is unchanged.
    Returns (diagram, binding)."""
    if vertex not in d.vertices:
        raise PlexusError("BAD_REFERENCE", f"unknown vertex {vertex}")
    if edge not in d.edges:
        raise PlexusError("BAD_REFERENCE", f"unknown edge {edge}")
    old_edge = d.edges[edge]
    if vertex not in old_edge.legs:
        raise PlexusError("BAD_REFERENCE", f"edge {edge} is not incident to {vertex}")
    iset = d.vertices[vertex].index_set
    n = 0
    while f"k{n}" in d.vertices:
        n += 1
    fresh = f"k{n}"
    m = 0
    while f"dk{m}" in d.edges:
        m += 1
    fresh_edge = f"dk{m}"
    vertices = dict(d.vertices)
    vertices[fresh] = Vertex(fresh, iset, True)
    edges = dict(d.edges)
    edges[edge] = Hyperedge(
        edge,
        tuple(fresh if v == vertex else v for v in old_edge.legs),
        old_edge.label,
    )
    edges[fresh_edge] = Hyperedge(fresh_edge, (vertex, fresh))
    new_d = Diagram(vertices, edges)
    new_binding = dict(binding)
    old_be = binding[edge]
    relegged = {
        (fresh if v == vertex else v): t for v, t in old_be.leg_to_axis.items()
    }
    new_binding[edge] = BoundEdge(old_be.array, relegged)
    delta = kronecker(2, iset, old_be.array.semiring)
    new_binding[fresh_edge] = BoundEdge(delta, {vertex: 0, fresh: 1})
    return new_d, new_binding
