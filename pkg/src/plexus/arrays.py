"""Dense multi-index arrays over a semiring, with the index-manipulation
operations (reorder/flatten/broaden/slice), entry-wise operations, incidence
and contraction products, tensor products, and the Kronecker arrays.

Entries are stored row-major: entry(a, (i1,...,in)) sits at
((i1*|I2| + i2)*|I3| + ...) + in.
"""
from __future__ import annotations

import itertools
from typing import Sequence

from .core import IndexSet, PlexusError
from .semiring import Semiring


class Array:
    """Immutable dense array: ordered axes (the constellation) + entries."""

    __slots__ = ("axes", "entries", "semiring")

    def __init__(self, axes: Sequence[IndexSet], entries: Sequence, semiring: Semiring):
        object.__setattr__(self, "axes", tuple(axes))
        object.__setattr__(self, "entries", tuple(entries))
        object.__setattr__(self, "semiring", semiring)

    def __setattr__(self, name, value):
        raise AttributeError("Array is immutable")

    @property
    def order(self) -> int:
        return len(self.axes)

    @property
    def sizes(self) -> tuple:
        return tuple(ax.size for ax in self.axes)

    def offset(self, idx: Sequence[int]) -> int:
        off = 0
        for ax, i in zip(self.axes, idx):
            off = off * ax.size + i
        return off

    def entry(self, idx: Sequence[int]):
        if len(idx) != len(self.axes):
            raise PlexusError("BAD_INDEX", f"expected {len(self.axes)} indices, got {len(idx)}")
        for ax, i in zip(self.axes, idx):
            if not (0 <= i < ax.size):
                raise PlexusError("BAD_INDEX", f"index {i} out of range for {ax.id}:{ax.size}")
        return self.entries[self.offset(idx)]

    def indices(self):
        """All multi-indices in row-major order."""
        return itertools.product(*(range(ax.size) for ax in self.axes))

    def scalar(self):
        if self.axes:
            raise PlexusError("BAD_INDEX", "scalar() needs an order-0 array")
        return self.entries[0]

    def __eq__(self, other):
        if not isinstance(other, Array):
            return NotImplemented
        if self.semiring.kind != other.semiring.kind or self.semiring.modulus != other.semiring.modulus:
            return False
        if self.axes != other.axes:
            return False
        eq = self.semiring.eq
        return all(eq(x, y) for x, y in zip(self.entries, other.entries))

    __hash__ = None

    def __repr__(self):
        shape = ",".join(f"{ax.id}:{ax.size}" for ax in self.axes)
        return f"Array(({shape}), {list(self.entries)!r})"

    # Convenience wrappers so call sites can chain operations.
    def reorder(self, sigma):
        return reorder(self, sigma)

    def flatten(self, group):
        return flatten(self, group)

    def broaden(self, new_axis, position):
        return broaden(self, new_axis, position)

    def slice(self, assignment):
        return slice_axes(self, assignment)


def _entry_count(axes) -> int:
    n = 1
    for ax in axes:
        n *= ax.size
    return n


def make_array(axes: Sequence[IndexSet], entries: Sequence, semiring: Semiring) -> Array:
    axes = tuple(axes)
    expected = _entry_count(axes)
    if len(entries) != expected:
        raise PlexusError("SIZE_MISMATCH", f"expected {expected} entries, got {len(entries)}")
    for x in entries:
        semiring.validate(x)
    return Array(axes, entries, semiring)


def reorder(a: Array, sigma: Sequence[int]) -> Array:
    """Axis t of `a` becomes axis sigma[t] of the result:
    entry(result, sigma applied to idx) = entry(a, idx)."""
    n = a.order
    if sorted(sigma) != list(range(n)):
        raise PlexusError("BAD_PERMUTATION", f"{sigma!r} is not a permutation of 0..{n - 1}")
    new_axes = [None] * n
    for t, ax in enumerate(a.axes):
        new_axes[sigma[t]] = ax
    out = [a.semiring.zero()] * len(a.entries)
    for idx in a.indices():
        new_idx = [0] * n
        for t, i in enumerate(idx):
            new_idx[sigma[t]] = i
        off = 0
        for ax, i in zip(new_axes, new_idx):
            off = off * ax.size + i
        out[off] = a.entry(idx)
    return Array(new_axes, out, a.semiring)


def flatten(a: Array, group: Sequence[int]) -> Array:
    """Replace the grouped axes by one composite axis (row-major over the
    group order), placed where the first grouped axis was."""
    group = tuple(group)
    n = a.order
    if len(set(group)) != len(group) or any(not (0 <= g < n) for g in group):
        raise PlexusError("BAD_AXIS", f"invalid axis group {group!r}")
    if not group:
        raise PlexusError("BAD_AXIS", "empty axis group")
    card = 1
    for g in group:
        card *= a.axes[g].size
    composite = IndexSet("(" + "x".join(a.axes[g].id for g in group) + ")", card)
    new_axes = []
    for pos in range(n):
        if pos == group[0]:
            new_axes.append(composite)
        elif pos in group:
            continue
        else:
            new_axes.append(a.axes[pos])
    out = [a.semiring.zero()] * _entry_count(new_axes)
    for idx in a.indices():
        m = 0
        for g in group:
            m = m * a.axes[g].size + idx[g]
        new_idx = []
        for pos in range(n):
            if pos == group[0]:
                new_idx.append(m)
            elif pos in group:
                continue
            else:
                new_idx.append(idx[pos])
        off = 0
        for ax, i in zip(new_axes, new_idx):
            off = off * ax.size + i
        out[off] = a.entry(idx)
    return Array(new_axes, out, a.semiring)


def broaden(a: Array, new_axis: IndexSet, position: int) -> Array:
    """Insert a redundant axis: every section along it is a copy of `a`."""
    if not (0 <= position <= a.order):
        raise PlexusError("BAD_AXIS", f"broaden position {position} out of range")
    new_axes = a.axes[:position] + (new_axis,) + a.axes[position:]
    out = []
    for idx in itertools.product(*(range(ax.size) for ax in new_axes)):
        base = idx[:position] + idx[position + 1 :]
        out.append(a.entry(base))
    return Array(new_axes, out, a.semiring)


def slice_axes(a: Array, assignment: dict) -> Array:
    """Fix some axes to values (currying). Fixing all axes gives the 0-array
    holding that entry."""
    for pos, val in assignment.items():
        if not (0 <= pos < a.order):
            raise PlexusError("BAD_AXIS", f"slice axis {pos} out of range")
        if not (0 <= val < a.axes[pos].size):
            raise PlexusError("BAD_INDEX", f"slice value {val} out of range for axis {pos}")
    keep = [p for p in range(a.order) if p not in assignment]
    new_axes = tuple(a.axes[p] for p in keep)
    out = []
    for partial in itertools.product(*(range(a.axes[p].size) for p in keep)):
        idx = [0] * a.order
        for p, v in assignment.items():
            idx[p] = v
        for p, v in zip(keep, partial):
            idx[p] = v
        out.append(a.entry(idx))
    return Array(new_axes, out, a.semiring)


def _require_same_shape(a: Array, b: Array, what: str):
    if a.semiring != b.semiring:
        raise PlexusError("SEMIRING_MISMATCH", f"{what}: different semirings")
    if a.axes != b.axes:
        raise PlexusError("CONFORMABILITY", f"{what}: constellations differ")


def entrywise_add(a: Array, b: Array) -> Array:
    _require_same_shape(a, b, "entrywise_add")
    s = a.semiring
    return Array(a.axes, [s.add(x, y) for x, y in zip(a.entries, b.entries)], s)


def entrywise_mul(a: Array, b: Array) -> Array:
    _require_same_shape(a, b, "entrywise_mul")
    s = a.semiring
    return Array(a.axes, [s.mul(x, y) for x, y in zip(a.entries, b.entries)], s)


def _check_shared(arrays: Sequence[Array], shared_axes: Sequence[int]) -> IndexSet:
    if len(arrays) != len(shared_axes) or not arrays:
        raise PlexusError("BAD_AXIS", "need one shared axis per array")
    shared = None
    for a, pos in zip(arrays, shared_axes):
        if not (0 <= pos < a.order):
            raise PlexusError("BAD_AXIS", f"shared axis {pos} out of range")
        ax = a.axes[pos]
        if shared is None:
            shared = ax
        elif ax != shared:
            raise PlexusError("CONFORMABILITY", f"shared axes disagree: {shared} vs {ax}")
        if a.semiring != arrays[0].semiring:
            raise PlexusError("SEMIRING_MISMATCH", "incidence over mixed semirings")
    return shared


def _incidence_axes(arrays, shared_axes):
    """Result constellation: first array's axes intact, the rest minus their
    shared axis, concatenated. The shared index set appears once."""
    new_axes = list(arrays[0].axes)
    for a, pos in list(zip(arrays, shared_axes))[1:]:
        new_axes.extend(ax for p, ax in enumerate(a.axes) if p != pos)
    return tuple(new_axes)


def _incidence_entries(arrays, shared_axes, combine):
    first = arrays[0]
    p_pos = shared_axes[0]
    rest = list(zip(arrays, shared_axes))[1:]
    out = []
    rest_ranges = [
        [range(a.axes[p].size) for p in range(a.order) if p != pos] for a, pos in rest
    ]
    for first_idx in first.indices():
        p = first_idx[p_pos]
        for combo in itertools.product(*(itertools.product(*rr) for rr in rest_ranges)):
            vals = [first.entry(first_idx)]
            for (a, pos), partial in zip(rest, combo):
                idx = list(partial[:pos]) + [p] + list(partial[pos:])
                vals.append(a.entry(idx))
            acc = vals[0]
            for v in vals[1:]:
                acc = combine(acc, v)
            out.append(acc)
    return out


def additive_incidence(arrays: Sequence[Array], shared_axes: Sequence[int]) -> Array:
    _check_shared(arrays, shared_axes)
    s = arrays[0].semiring
    return Array(_incidence_axes(arrays, shared_axes), _incidence_entries(arrays, shared_axes, s.add), s)


def multiplicative_incidence(arrays: Sequence[Array], shared_axes: Sequence[int]) -> Array:
    _check_shared(arrays, shared_axes)
    s = arrays[0].semiring
    return Array(_incidence_axes(arrays, shared_axes), _incidence_entries(arrays, shared_axes, s.mul), s)


def contract(arrays: Sequence[Array], shared_axes: Sequence[int]) -> Array:
    """Multiply the arrays along one shared index and sum it out.
    Result order = sum of orders - arity."""
    shared = _check_shared(arrays, shared_axes)
    s = arrays[0].semiring
    new_axes = []
    free_positions = []
    for a, pos in zip(arrays, shared_axes):
        keep = [p for p in range(a.order) if p != pos]
        free_positions.append(keep)
        new_axes.extend(a.axes[p] for p in keep)
    out = []
    for free_idx in itertools.product(*(range(ax.size) for ax in new_axes)):
        acc = s.zero()
        for p in range(shared.size):
            term = s.one()
            cursor = 0
            for a, pos, keep in zip(arrays, shared_axes, free_positions):
                idx = [0] * a.order
                idx[pos] = p
                for k in keep:
                    idx[k] = free_idx[cursor]
                    cursor += 1
                term = s.mul(term, a.entry(idx))
            acc = s.add(acc, term)
        out.append(acc)
    return Array(tuple(new_axes), out, s)


def unary_contract(a: Array, axis: int) -> Array:
    """Sum one axis out (boolean 2-arrays: relation projections)."""
    if not (0 <= axis < a.order):
        raise PlexusError("BAD_AXIS", f"axis {axis} out of range")
    s = a.semiring
    new_axes = a.axes[:axis] + a.axes[axis + 1 :]
    out = []
    for idx in itertools.product(*(range(ax.size) for ax in new_axes)):
        acc = s.zero()
        for p in range(a.axes[axis].size):
            full = idx[:axis] + (p,) + idx[axis:]
            acc = s.add(acc, a.entry(full))
        out.append(acc)
    return Array(new_axes, out, s)


def self_contract(a: Array, axis_i: int, axis_j: int) -> Array:
    """Trace-style contraction of two axes of `a` over the same index set."""
    if axis_i == axis_j or not (0 <= axis_i < a.order) or not (0 <= axis_j < a.order):
        raise PlexusError("BAD_AXIS", f"bad self-contraction axes ({axis_i}, {axis_j})")
    if a.axes[axis_i] != a.axes[axis_j]:
        raise PlexusError("CONFORMABILITY", "self-contraction axes must share an index set")
    s = a.semiring
    keep = [p for p in range(a.order) if p not in (axis_i, axis_j)]
    new_axes = tuple(a.axes[p] for p in keep)
    out = []
    for idx in itertools.product(*(range(ax.size) for ax in new_axes)):
        acc = s.zero()
        for p in range(a.axes[axis_i].size):
            full = [0] * a.order
            full[axis_i] = p
            full[axis_j] = p
            for k, v in zip(keep, idx):
                full[k] = v
            acc = s.add(acc, a.entry(full))
        out.append(acc)
    return Array(new_axes, out, s)


def tensor_product(arrays: Sequence[Array]) -> Array:
    if not arrays:
        raise PlexusError("BAD_AXIS", "tensor product of nothing")
    s = arrays[0].semiring
    for a in arrays[1:]:
        if a.semiring != s:
            raise PlexusError("SEMIRING_MISMATCH", "tensor product over mixed semirings")
    new_axes = tuple(ax for a in arrays for ax in a.axes)
    out = []
    for idx in itertools.product(*(a.indices() for a in arrays)):
        acc = s.one()
        for a, sub in zip(arrays, idx):
            acc = s.mul(acc, a.entry(sub))
        out.append(acc)
    return Array(new_axes, out, s)


def zero_array(axes: Sequence[IndexSet], semiring: Semiring) -> Array:
    return Array(tuple(axes), [semiring.zero()] * _entry_count(axes), semiring)


def full_array(axes: Sequence[IndexSet], semiring: Semiring) -> Array:
    return Array(tuple(axes), [semiring.one()] * _entry_count(axes), semiring)


def kronecker(n: int, index_set: IndexSet, semiring: Semiring) -> Array:
    """The order-n identity array: 1 where all n indices agree, else 0."""
    if n < 1:
        raise PlexusError("BAD_AXIS", "kronecker order must be >= 1")
    axes = (index_set,) * n
    out = []
    for idx in itertools.product(range(index_set.size), repeat=n):
        out.append(semiring.one() if len(set(idx)) == 1 else semiring.zero())
    return Array(axes, out, semiring)


def random_array(axes: Sequence[IndexSet], semiring: Semiring, rng) -> Array:
    return Array(
        tuple(axes),
        [semiring.random_element(rng) for _ in range(_entry_count(axes))],
        semiring,
    )


def diagonal_extension(a: Array, axis: int, copies: int = 1) -> Array:
    """Duplicate one axis into copies+1 adjacent axes, entries on the joint
    diagonal; unary contraction of any added axis recovers `a`."""
    if not (0 <= axis < a.order):
        raise PlexusError("BAD_AXIS", f"axis {axis} out of range")
    if copies < 1:
        raise PlexusError("BAD_AXIS", "copies must be >= 1")
    ax = a.axes[axis]
    new_axes = a.axes[:axis] + (ax,) * (copies + 1) + a.axes[axis + 1 :]
    s = a.semiring
    out = []
    for idx in itertools.product(*(range(x.size) for x in new_axes)):
        dup = idx[axis : axis + copies + 1]
        if len(set(dup)) == 1:
            base = idx[:axis] + (dup[0],) + idx[axis + copies + 1 :]
            out.append(a.entry(base))
        else:
            out.append(s.zero())
    return Array(new_axes, out, s)
