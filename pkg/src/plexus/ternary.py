"""The ternary fish product on order-3 arrays, its unit and biunit theory,
and finite ternary operation tables with semiheap/heap law checkers.

The product of arrays a, b, c contracts the tail against the body along the
mouth axis and the body against the head along the two tip axes:

    (a b c)[i, j, k] = sum over p, q, r of a[i,j,p] * b[q,r,p] * c[q,r,k]

for the default variant, where axis 2 is the mouth. The six variants pick
which axis is the mouth and whether the arguments read forward or reversed;
`twist=True` swaps the body's tip axes before contracting with the head.
"""
from __future__ import annotations

import itertools
import random

from .arrays import Array, broaden, contract, flatten, kronecker, random_array, zero_array
from .core import IndexSet, PlexusError, Verdict, natural_key
from .diagram import Diagram, Hyperedge, Vertex
from .evaluator import BoundEdge
from .semiring import Semiring

# variant name -> (mouth axis position, reversed). The name XYZ reads: tips
# on axes X and Y, mouth on axis Z; reversed variants swap tail and head.
ETA_VARIANTS = {
    "IJK": (2, False),
    "JIK": (2, True),
    "KIJ": (1, False),
    "IKJ": (1, True),
    "JKI": (0, False),
    "KJI": (0, True),
}


def _conform(tail: Array, body: Array, head: Array, z: int, twist: bool):
    for name, x in (("tail", tail), ("body", body), ("head", head)):
        if x.order != 3:
            raise PlexusError("CONFORMABILITY", f"{name} must have order 3, got {x.order}")
    if body.semiring != tail.semiring or head.semiring != tail.semiring:
        raise PlexusError("SEMIRING_MISMATCH", "fish product over mixed semirings")
    t1, t2 = [p for p in range(3) if p != z]
    if tail.axes[z] != body.axes[z]:
        raise PlexusError("CONFORMABILITY", "tail and body disagree on the mouth axis")
    if twist:
        if body.axes[t1] != head.axes[t2] or body.axes[t2] != head.axes[t1]:
            raise PlexusError("CONFORMABILITY", "body and head tips do not cross-match")
    elif body.axes[t1] != head.axes[t1] or body.axes[t2] != head.axes[t2]:
        raise PlexusError("CONFORMABILITY", "body and head disagree on the tip axes")
    return t1, t2


def fish(a: Array, b: Array, c: Array, variant: str = "IJK", twist: bool = False) -> Array:
    """Ternary product of three order-3 arrays."""
    if variant not in ETA_VARIANTS:
        raise PlexusError("UNKNOWN_VARIANT", f"unknown fish variant {variant!r}")
    z, rev = ETA_VARIANTS[variant]
    tail, body, head = (c, b, a) if rev else (a, b, c)
    t1, t2 = _conform(tail, body, head, z, twist)
    s = tail.semiring
    out_axes = [None, None, None]
    out_axes[t1], out_axes[t2], out_axes[z] = tail.axes[t1], tail.axes[t2], head.axes[z]
    entries = []
    idx_t = [0, 0, 0]
    idx_b = [0, 0, 0]
    idx_h = [0, 0, 0]
    for out_idx in itertools.product(*(range(ax.size) for ax in out_axes)):
        idx_t[t1], idx_t[t2] = out_idx[t1], out_idx[t2]
        idx_h[z] = out_idx[z]
        acc = s.zero()
        for p in range(tail.axes[z].size):
            idx_t[z] = p
            idx_b[z] = p
            av = tail.entry(idx_t)
            for w1 in range(head.axes[t1].size):
                idx_h[t1] = w1
                for w2 in range(head.axes[t2].size):
                    idx_h[t2] = w2
                    if twist:
                        idx_b[t1], idx_b[t2] = w2, w1
                    else:
                        idx_b[t1], idx_b[t2] = w1, w2
                    acc = s.add(acc, s.mul(av, s.mul(body.entry(idx_b), head.entry(idx_h))))
        entries.append(acc)
    return Array(tuple(out_axes), entries, s)


def make_fish_binding(a: Array, b: Array, c: Array, variant: str = "IJK", twist: bool = False):
    """Build the one-body ternary diagram with a, b, c bound to its edges so
    that evaluating it reproduces fish(a, b, c, variant, twist).
    Returns (diagram, binding)."""
    if variant not in ETA_VARIANTS:
        raise PlexusError("UNKNOWN_VARIANT", f"unknown fish variant {variant!r}")
    z, rev = ETA_VARIANTS[variant]
    tail, body, head = (c, b, a) if rev else (a, b, c)
    t1, t2 = _conform(tail, body, head, z, twist)
    verts = {
        "v0": Vertex("v0", tail.axes[t1], False),
        "v1": Vertex("v1", tail.axes[t2], False),
        "v2": Vertex("v2", tail.axes[z], True),
        "v3": Vertex("v3", head.axes[t1], True),
        "v4": Vertex("v4", head.axes[t2], True),
        "v5": Vertex("v5", head.axes[z], False),
    }
    edges = {
        "e0": Hyperedge("e0", ("v0", "v1", "v2")),
        "e1": Hyperedge("e1", ("v3", "v4", "v2")),
        "e2": Hyperedge("e2", ("v3", "v4", "v5")),
    }
    d = Diagram(verts, edges)
    if twist:
        body_axes = {"v3": t2, "v4": t1, "v2": z}
    else:
        body_axes = {"v3": t1, "v4": t2, "v2": z}
    binding = {
        "e0": BoundEdge(tail, {"v0": t1, "v1": t2, "v2": z}),
        "e1": BoundEdge(body, body_axes),
        "e2": BoundEdge(head, {"v3": t1, "v4": t2, "v5": z}),
    }
    return d, binding


def fish_output_order(variant: str) -> list:
    """Free vertices of the diagram from make_fish_binding, ordered so the
    evaluated axes line up with fish(): tips at their positions, mouth at z."""
    z, _ = ETA_VARIANTS[variant]
    order = [None, None, None]
    t1, t2 = [p for p in range(3) if p != z]
    order[t1], order[t2], order[z] = "v0", "v1", "v5"
    return order


def fish_unit_arrays(index_set: IndexSet, semiring: Semiring):
    """Right units for the default variant: t is the order-3 identity, u is
    the order-2 identity broadened on the left. (a t t) = (a u t) = (a t u) = a."""
    t = kronecker(3, index_set, semiring)
    u = broaden(kronecker(2, index_set, semiring), index_set, 0)
    return t, u


def fish_units_check(a: Array) -> Verdict:
    """Verify the three right-unit identities on a's mouth axis:
    (a t t) = (a u t) = (a t u) = a."""
    if a.order != 3:
        raise PlexusError("CONFORMABILITY", "right units need an order-3 array")
    t, u = fish_unit_arrays(a.axes[2], a.semiring)
    for name, mid, top in (("att", t, t), ("aut", u, t), ("atu", t, u)):
        got = fish(a, mid, top)
        if got != a:
            return Verdict(False, name, {"expected": a.entries, "got": got.entries})
    return Verdict(True, "right-units")


def fish_sequentializations_check(a: Array, b: Array, c: Array) -> Verdict:
    """Cross-check the four explicit sequential forms of the product for
    regular arrays against the variant engine: form 1 is straight IJK, form 2
    its twist, form 4 straight JIK, form 3 its twist, and swapping tail and
    head arguments exchanges 1 with 4 and 2 with 3."""
    if any(x.order != 3 for x in (a, b, c)) or len(set(a.axes + b.axes + c.axes)) != 1:
        raise PlexusError("CONFORMABILITY", "sequentializations need regular arrays on one index set")
    checks = (
        ("form1-engine", fish_form1(a, b, c), fish(a, b, c, "IJK", twist=False)),
        ("form2-engine", fish_form2(a, b, c), fish(a, b, c, "IJK", twist=True)),
        ("form3-engine", fish_form3(a, b, c), fish(a, b, c, "JIK", twist=True)),
        ("form4-engine", fish_form4(a, b, c), fish(a, b, c, "JIK", twist=False)),
        ("relabel-1-4", fish_form1(c, b, a), fish_form4(a, b, c)),
        ("relabel-2-3", fish_form2(c, b, a), fish_form3(a, b, c)),
    )
    for law, left, right in checks:
        if left != right:
            return Verdict(False, law, {"left": left.entries, "right": right.entries})
    return Verdict(True, "sequentializations")


def semiheap_law_arrays(variant: str, semiring: Semiring, sizes, trials: int,
                        seed: int = 0, twist: bool = False, product=None) -> Verdict:
    """Para-associativity ((abc)de) = (a(dcb)e) = (ab(cde)) on seeded random
    order-3 arrays with the given axis sizes. `product` substitutes another
    ternary product for the law check (defaults to the fish engine)."""
    i, j, k = sizes
    axes = (IndexSet("I", i), IndexSet("J", j), IndexSet("K", k))
    rng = random.Random(seed)
    prod = product or (lambda x, y, z: fish(x, y, z, variant, twist))
    for t in range(trials):
        a, b, c, d, e = (random_array(axes, semiring, rng) for _ in range(5))
        left = prod(prod(a, b, c), d, e)
        mid = prod(a, prod(d, c, b), e)
        right = prod(a, b, prod(c, d, e))
        if left != mid:
            return Verdict(False, "sh-mid", {"trial": t, "left": left.entries, "mid": mid.entries})
        if left != right:
            return Verdict(False, "sh-right", {"trial": t, "left": left.entries, "right": right.entries})
    return Verdict(True, "sh")


def semiheap_check_arrays(a, b, c, d, e, variant: str = "IJK", twist: bool = False) -> Verdict:
    """Para-associativity on arrays:
    ((abc)de) = (a(dcb)e) = (ab(cde))."""
    left = fish(fish(a, b, c, variant, twist), d, e, variant, twist)
    mid = fish(a, fish(d, c, b, variant, twist), e, variant, twist)
    right = fish(a, b, fish(c, d, e, variant, twist), variant, twist)
    if left != mid:
        return Verdict(False, "sh-mid", {"left": left.entries, "mid": mid.entries})
    if left != right:
        return Verdict(False, "sh-right", {"left": left.entries, "right": right.entries})
    return Verdict(True, "sh")


def biunit_pair_check(e: Array, e_prime: Array) -> dict:
    """Check the two biunit equations for arrays on axes (I, J, K):
    Q1: sum over p of e[p,i,j]*e'[p,k,l] = [i=k][j=l]
    Q2: sum over q,r of e[i,q,r]*e'[j,q,r] = [i=j]."""
    if e.order != 3 or e_prime.order != 3 or e.axes != e_prime.axes:
        raise PlexusError("CONFORMABILITY", "biunit check needs two arrays on the same three axes")
    s = e.semiring
    if e_prime.semiring != s:
        raise PlexusError("SEMIRING_MISMATCH", "biunit check over mixed semirings")
    I, J, K = e.axes
    q1 = Verdict(True, "Q1")
    for i, k in itertools.product(range(J.size), repeat=2):
        for j, l in itertools.product(range(K.size), repeat=2):
            acc = s.zero()
            for p in range(I.size):
                acc = s.add(acc, s.mul(e.entry((p, i, j)), e_prime.entry((p, k, l))))
            want = s.one() if (i == k and j == l) else s.zero()
            if not s.eq(acc, want):
                q1 = Verdict(False, "Q1", {"i": i, "j": j, "k": k, "l": l, "got": acc})
                break
        if not q1:
            break
    q2 = Verdict(True, "Q2")
    for i, j in itertools.product(range(I.size), repeat=2):
        acc = s.zero()
        for q in range(J.size):
            for r in range(K.size):
                acc = s.add(acc, s.mul(e.entry((i, q, r)), e_prime.entry((j, q, r))))
        want = s.one() if i == j else s.zero()
        if not s.eq(acc, want):
            q2 = Verdict(False, "Q2", {"i": i, "j": j, "got": acc})
            break
    return {"Q1": q1, "Q2": q2, "ok": q1.ok and q2.ok}


def find_biunit_pairs(I: IndexSet, J: IndexSet, K: IndexSet, semiring: Semiring):
    """Exhaustive boolean search for biunit pairs on (I, J, K). Every
    candidate e is enumerated (entry count capped at 16) and its partner is
    solved for through the flattened matrix: a boolean two-sided inverse of
    flatten(e) transposed exists only when flatten(e) is a permutation
    matrix, and then e' = e. Survivors are re-verified entrywise."""
    if semiring.kind != "boolean":
        raise PlexusError("UNSUPPORTED", "biunit search is implemented for the boolean semiring")
    total = I.size * J.size * K.size
    if total > 16:
        raise PlexusError("UNSUPPORTED", f"search capped at 16 entries, got {total}")
    cols = J.size * K.size
    full = (1 << cols) - 1
    pairs = []
    for mask in range(1 << total):
        rows = [(mask >> (p * cols)) & full for p in range(I.size)]
        if any(bin(r).count("1") != 1 for r in rows):
            continue
        cover = 0
        for r in rows:
            cover |= r
        if I.size != cols or cover != full:
            continue
        entries = [(mask >> off) & 1 for off in range(total)]
        e = Array((I, J, K), entries, semiring)
        if biunit_pair_check(e, e)["ok"]:
            pairs.append((e, e))
    return pairs


def indicator_array(axes, position, semiring: Semiring) -> Array:
    """Basis array: 1 at one multi-index, 0 elsewhere."""
    a = zero_array(axes, semiring)
    entries = list(a.entries)
    off = 0
    for ax, i in zip(axes, position):
        off = off * ax.size + i
    entries[off] = semiring.one()
    return Array(tuple(axes), entries, semiring)


def unit_pair_via_basis(e: Array, e_prime: Array, variant: str = "JKI",
                        side: str = "right", twist: bool = False) -> Verdict:
    """Quantify a unit identity over every array by checking it on the basis
    indicators: right means (a e e') = a, left means (e e' a) = a. The
    product is linear in each slot, so the basis settles all arrays."""
    axes = e.axes
    for pos in itertools.product(*(range(ax.size) for ax in axes)):
        a = indicator_array(axes, pos, e.semiring)
        if side == "right":
            got = fish(a, e, e_prime, variant, twist)
        else:
            got = fish(e, e_prime, a, variant, twist)
        if got != a:
            return Verdict(False, f"{side}-unit", {"basis": pos})
    return Verdict(True, f"{side}-unit")


def flat_fish_equiv(a: Array, b: Array, c: Array) -> Verdict:
    """The mouth-first reversed product agrees with a three-factor matrix
    product after flattening the tip axes:
    flatten_12(fish(a,b,c,"KJI")) = flatten_12(a) . flatten_12(b)^T . flatten_12(c)."""
    lhs = flatten(fish(a, b, c, "KJI"), (1, 2))
    fa, fb, fc = flatten(a, (1, 2)), flatten(b, (1, 2)), flatten(c, (1, 2))
    ab = contract([fa, fb], [1, 1])
    rhs = contract([ab, fc], [1, 0])
    if lhs != rhs:
        return Verdict(False, "flat-fish", {"lhs": lhs.entries, "rhs": rhs.entries})
    return Verdict(True, "flat-fish")


def fish_form1(a: Array, b: Array, c: Array) -> Array:
    """out[i,j,k] = sum a[i,j,p] b[q,r,p] c[q,r,k] (explicit loops)."""
    return _explicit_form(a, b, c, body_swapped=False, reversed_=False)


def fish_form2(a: Array, b: Array, c: Array) -> Array:
    """out[i,j,k] = sum a[i,j,p] b[r,q,p] c[q,r,k]."""
    return _explicit_form(a, b, c, body_swapped=True, reversed_=False)


def fish_form3(a: Array, b: Array, c: Array) -> Array:
    """out[i,j,k] = sum c[i,j,p] b[r,q,p] a[q,r,k]."""
    return _explicit_form(a, b, c, body_swapped=True, reversed_=True)


def fish_form4(a: Array, b: Array, c: Array) -> Array:
    """out[i,j,k] = sum c[i,j,p] b[q,r,p] a[q,r,k]."""
    return _explicit_form(a, b, c, body_swapped=False, reversed_=True)


def _explicit_form(a, b, c, body_swapped, reversed_):
    first, last = (c, a) if reversed_ else (a, c)
    s = a.semiring
    ni, nj = first.axes[0].size, first.axes[1].size
    np_, nq, nr = first.axes[2].size, last.axes[0].size, last.axes[1].size
    nk = last.axes[2].size
    out_axes = (first.axes[0], first.axes[1], last.axes[2])
    entries = []
    for i in range(ni):
        for j in range(nj):
            for k in range(nk):
                acc = s.zero()
                for p in range(np_):
                    for q in range(nq):
                        for r in range(nr):
                            bv = b.entry((r, q, p)) if body_swapped else b.entry((q, r, p))
                            acc = s.add(
                                acc,
                                s.mul(first.entry((i, j, p)), s.mul(bv, last.entry((q, r, k)))),
                            )
                entries.append(acc)
    return Array(out_axes, entries, s)


class TernaryTable:
    """A ternary operation on {0..n-1} as a flat lookup table:
    table[(a*n + b)*n + c] = (a b c)."""

    __slots__ = ("n", "table", "labels", "kind")

    def __init__(self, n: int, table, labels=None, kind: str = "custom"):
        if n < 1:
            raise PlexusError("BAD_TABLE", "carrier must be nonempty")
        table = tuple(table)
        if len(table) != n ** 3:
            raise PlexusError("BAD_TABLE", f"expected {n ** 3} table entries, got {len(table)}")
        if any(not (0 <= x < n) for x in table):
            raise PlexusError("BAD_TABLE", "table value out of carrier range")
        self.n = n
        self.table = table
        self.labels = tuple(labels) if labels else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise PlexusError("BAD_TABLE", "need one label per element")
        self.kind = kind

    def op(self, a: int, b: int, c: int) -> int:
        return self.table[(a * self.n + b) * self.n + c]

    def __repr__(self):
        return f"TernaryTable(n={self.n}, kind={self.kind!r})"


def group_heap(mult) -> TernaryTable:
    """Heap of a finite group given by its multiplication table:
    (a b c) = a * inverse(b) * c."""
    n = len(mult)
    rows = [list(r) for r in mult]
    if any(len(r) != n for r in rows):
        raise PlexusError("BAD_TABLE", "multiplication table must be square")
    identity = None
    for e in range(n):
        if all(rows[e][x] == x and rows[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise PlexusError("BAD_TABLE", "no identity element")
    inv = []
    for a in range(n):
        try:
            ia = rows[a].index(identity)
        except ValueError:
            raise PlexusError("BAD_TABLE", f"element {a} has no inverse")
        if rows[ia][a] != identity:
            raise PlexusError("BAD_TABLE", f"element {a} has no two-sided inverse")
        inv.append(ia)
    for a, b, c in itertools.product(range(n), repeat=3):
        if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
            raise PlexusError("BAD_TABLE", f"multiplication not associative at {(a, b, c)}")
    table = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                table.append(rows[rows[a][inv[b]]][c])
    return TernaryTable(n, table, kind="group-heap")


def relation_semiheap(p: int, q: int) -> TernaryTable:
    """Semiheap of all relations between a p-set and a q-set, encoded as
    bitmasks (bit x*q+y is the pair (x, y)):
    (R1 R2 R3) = {(x, w) : exists y, z with (x,y) in R3, (z,y) in R2, (z,w) in R1}."""
    if p < 1 or q < 1 or p * q > 4:
        raise PlexusError("BAD_TABLE", "relation carrier supported up to 4 pairs")
    n = 1 << (p * q)

    def op(r1, r2, r3):
        out = 0
        for x in range(p):
            for w in range(q):
                hit = False
                for y in range(q):
                    if not (r3 >> (x * q + y)) & 1:
                        continue
                    for z in range(p):
                        if (r2 >> (z * q + y)) & 1 and (r1 >> (z * q + w)) & 1:
                            hit = True
                            break
                    if hit:
                        break
                if hit:
                    out |= 1 << (x * q + w)
        return out

    table = [op(r1, r2, r3) for r1 in range(n) for r2 in range(n) for r3 in range(n)]
    labels = [format(r, f"0{p * q}b") for r in range(n)]
    return TernaryTable(n, table, labels, kind="relation-semiheap")


def _perm_compose(f, g):
    return tuple(f[g[x]] for x in range(len(f)))


def _perm_inverse(f):
    out = [0] * len(f)
    for x, y in enumerate(f):
        out[y] = x
    return tuple(out)


def bijection_heap(n: int) -> TernaryTable:
    """Heap of bijections on an n-set: (f g h)(x) = f(g_inverse(h(x)))."""
    if n < 1 or n > 3:
        raise PlexusError("BAD_TABLE", "bijection carrier supported up to 3 points")
    perms = sorted(itertools.permutations(range(n)))
    index = {f: i for i, f in enumerate(perms)}
    table = []
    for f in perms:
        for g in perms:
            gi = _perm_inverse(g)
            for h in perms:
                table.append(index[_perm_compose(f, _perm_compose(gi, h))])
    labels = ["".join(map(str, f)) for f in perms]
    return TernaryTable(len(perms), table, labels, kind="bijection-heap")


def vector_heap(m: int, dim: int) -> TernaryTable:
    """Heap of (Z_m)^dim: (u v w) = u - v + w componentwise mod m."""
    if m < 1 or dim < 1:
        raise PlexusError("BAD_TABLE", "need m >= 1 and dim >= 1")
    elems = list(itertools.product(range(m), repeat=dim))
    index = {v: i for i, v in enumerate(elems)}
    table = []
    for u in elems:
        for v in elems:
            for w in elems:
                table.append(index[tuple((a - b + c) % m for a, b, c in zip(u, v, w))])
    labels = ["".join(map(str, v)) for v in elems]
    return TernaryTable(len(elems), table, labels, kind="vector-heap")


def make_ternary_table(kind: str, *args) -> TernaryTable:
    """Dispatcher for the example tables: group_heap(mult_table),
    relation_semiheap(p, q), bijection_heap(n), vector_heap(m, dim),
    custom(n, table)."""
    builders = {
        "group_heap": group_heap,
        "relation_semiheap": relation_semiheap,
        "bijection_heap": bijection_heap,
        "vector_heap": vector_heap,
        "custom": TernaryTable,
    }
    if kind not in builders:
        raise PlexusError("UNKNOWN_KIND", f"unknown ternary table kind {kind!r}")
    return builders[kind](*args)


def check_semiheap(t: TernaryTable) -> Verdict:
    """Para-associativity over all quintuples:
    ((abc)de) = (a(dcb)e) = (ab(cde))."""
    n, T = t.n, t.table
    rng = range(n)
    for a in rng:
        an = a * n
        for b in rng:
            abn = (an + b) * n
            for c in rng:
                abc = T[abn + c]
                abcn = abc * n
                cn = c * n
                for d in rng:
                    dcb = T[(d * n + c) * n + b]
                    adcb = (an + dcb) * n
                    cdn = (cn + d) * n
                    abcdn = (abcn + d) * n
                    for e in rng:
                        x = T[abcdn + e]
                        if x != T[adcb + e]:
                            return Verdict(False, "sh-mid", (a, b, c, d, e))
                        if x != T[abn + T[cdn + e]]:
                            return Verdict(False, "sh-right", (a, b, c, d, e))
    return Verdict(True, "sh")


def check_heap(t: TernaryTable) -> dict:
    """Heap laws on top of the semiheap law: (h): (a b b) = a,
    (m): (b b a) = a. Returns each verdict separately."""
    n = t.n
    h = Verdict(True, "h")
    m = Verdict(True, "m")
    for a in range(n):
        for b in range(n):
            if h.ok and t.op(a, b, b) != a:
                h = Verdict(False, "h", (a, b))
            if m.ok and t.op(b, b, a) != a:
                m = Verdict(False, "m", (a, b))
    sh = check_semiheap(t)
    return {"sh": sh, "h": h, "m": m, "ok": sh.ok and h.ok and m.ok}


def find_biunits(t: TernaryTable) -> list:
    """Elements e with (e e a) = a = (a e e) for every a."""
    return [
        e
        for e in range(t.n)
        if all(t.op(e, e, a) == a and t.op(a, e, e) == a for a in range(t.n))
    ]


def involuted_monoid(t: TernaryTable, e: int):
    """From a semiheap with biunit e: a*b = (a e b), a~ = (e a e). Verifies
    the monoid laws and the involution laws. Returns (mult, inv, verdict)."""
    n = t.n
    mult = [[t.op(a, e, b) for b in range(n)] for a in range(n)]
    inv = [t.op(e, a, e) for a in range(n)]
    verdict = Verdict(True, "involuted-monoid")
    for a in range(n):
        if mult[a][e] != a or mult[e][a] != a:
            return mult, inv, Verdict(False, "identity", a)
        if inv[inv[a]] != a:
            return mult, inv, Verdict(False, "involution-squared", a)
    for a, b in itertools.product(range(n), repeat=2):
        if inv[mult[a][b]] != mult[inv[b]][inv[a]]:
            return mult, inv, Verdict(False, "antihomomorphism", (a, b))
    for a, b, c in itertools.product(range(n), repeat=3):
        if mult[mult[a][b]][c] != mult[a][mult[b][c]]:
            return mult, inv, Verdict(False, "associativity", (a, b, c))
    return mult, inv, verdict


def biunit_transport(t: TernaryTable, e: int, e2: int):
    """phi(a) = (a e e2) maps the monoid at e isomorphically onto the monoid
    at e2, with phi(e) = e2. Returns (phi, verdict)."""
    n = t.n
    phi = [t.op(a, e, e2) for a in range(n)]
    if sorted(phi) != list(range(n)):
        return phi, Verdict(False, "bijection", phi)
    if phi[e] != e2:
        return phi, Verdict(False, "unit-image", phi[e])
    for a, b in itertools.product(range(n), repeat=2):
        if phi[t.op(a, e, b)] != t.op(phi[a], e2, phi[b]):
            return phi, Verdict(False, "multiplication", (a, b))
    for a in range(n):
        if phi[t.op(e, a, e)] != t.op(e2, phi[a], e2):
            return phi, Verdict(False, "involution", a)
    return phi, Verdict(True, "biunit-transport")


def reverse_table(t: TernaryTable) -> TernaryTable:
    """(a b c) of the reverse is (c b a) of the original."""
    n = t.n
    table = [
        t.op(c, b, a)
        for a in range(n)
        for b in range(n)
        for c in range(n)
    ]
    return TernaryTable(n, table, t.labels, kind=t.kind + "-reversed")


def check_reverse_semiheap(t: TernaryTable) -> Verdict:
    """The reversed operation (a b c) -> (c b a) also satisfies (sh)."""
    return check_semiheap(reverse_table(t))


def check_homomorphism(t1: TernaryTable, t2: TernaryTable, phi) -> Verdict:
    """phi carries the first operation onto the second."""
    if t1.n != len(phi) or t2.n <= max(phi):
        raise PlexusError("BAD_TABLE", "phi must map carrier 1 into carrier 2")
    for a, b, c in itertools.product(range(t1.n), repeat=3):
        if phi[t1.op(a, b, c)] != t2.op(phi[a], phi[b], phi[c]):
            return Verdict(False, "homomorphism", (a, b, c))
    return Verdict(True, "homomorphism")


def check_isotropy_biinvariance(A_size: int, B_size: int) -> Verdict:
    """For bijections f, g, h from a source set to a target set and
    relabelings a (source) and b (target): (f.a, b.g.a, b.h) = (f, g, h),
    and inversion is an isomorphism onto the reversed heap of backward
    bijections."""
    if A_size != B_size:
        raise PlexusError("BAD_TABLE", "bijections need equal source and target sizes")
    n = A_size
    if n < 1 or n > 3:
        raise PlexusError("BAD_TABLE", "isotropy check supported up to 3 points")
    perms = sorted(itertools.permutations(range(n)))

    def eta(f, g, h):
        return _perm_compose(f, _perm_compose(_perm_inverse(g), h))

    for f, g, h in itertools.product(perms, repeat=3):
        base = eta(f, g, h)
        for a in perms:
            fa = _perm_compose(f, a)
            ga = _perm_compose(g, a)
            for b in perms:
                if eta(fa, _perm_compose(b, ga), _perm_compose(b, h)) != base:
                    return Verdict(False, "biinvariance", (f, g, h, a, b))
        if _perm_inverse(base) != eta(
            _perm_inverse(h), _perm_inverse(g), _perm_inverse(f)
        ):
            return Verdict(False, "reverse-iso", (f, g, h))
    return Verdict(True, "isotropy-biinvariance")


def heapoid_check(carrier, variant: str = "IJK", twist: bool = False) -> dict:
    """Close a finite list of arrays under the fish product and report:
    semiheapoid (closure plus the semiheap law on the closure table), biunit
    pairs quantified over every array on the constellation (checked on basis
    indicators; the product is linear in each slot, so the basis suffices),
    heapoid (every element in some biunit pair), Malcev (every element pairs
    with itself), and whether the tridentity and extended partial identity
    are present and neutral (fish category units)."""
    n = len(carrier)
    if n == 0:
        raise PlexusError("BAD_TABLE", "empty carrier")
    table = []
    for a in carrier:
        for b in carrier:
            for c in carrier:
                r = fish(a, b, c, variant, twist)
                idx = next((i for i, x in enumerate(carrier) if x == r), None)
                if idx is None:
                    return {
                        "closed": Verdict(False, "closure", r),
                        "table": None,
                        "sh": None,
                        "semiheapoid": False,
                        "unit_pairs": [],
                        "co_unit_pairs": [],
                        "biunit_pairs": [],
                        "heapoid": False,
                        "malcev": False,
                        "fish_category": False,
                    }
                table.append(idx)
    tt = TernaryTable(n, table, kind="fish-carrier")
    sh = check_semiheap(tt)
    unit_pairs = [
        (i, j)
        for i in range(n)
        for j in range(n)
        if all(tt.op(k, i, j) == k for k in range(n))
    ]
    co_unit_pairs = [
        (i, j)
        for i in range(n)
        for j in range(n)
        if all(tt.op(i, j, k) == k for k in range(n))
    ]
    # neutrality on the carrier is necessary for neutrality on every array,
    # so only those candidates need the basis-level verification
    biunit_pairs = []
    for i, j in unit_pairs:
        if (i, j) not in co_unit_pairs:
            continue
        right = unit_pair_via_basis(carrier[i], carrier[j], variant, "right", twist)
        left = unit_pair_via_basis(carrier[i], carrier[j], variant, "left", twist)
        if right.ok and left.ok:
            biunit_pairs.append((i, j))
    heapoid = all(any(p[0] == i for p in biunit_pairs) for i in range(n))
    malcev = all((i, i) in biunit_pairs for i in range(n))
    fish_category = False
    axes = carrier[0].axes
    if len(set(axes)) == 1:
        t, u = fish_unit_arrays(axes[2], carrier[0].semiring)
        if any(x == t for x in carrier) and any(x == u for x in carrier):
            fish_category = all(
                unit_pair_via_basis(mid, top, variant, "right", twist).ok
                for mid, top in ((t, t), (u, t), (t, u))
            )
    return {
        "closed": Verdict(True, "closure"),
        "table": tt,
        "sh": sh,
        "semiheapoid": sh.ok,
        "unit_pairs": unit_pairs,
        "co_unit_pairs": co_unit_pairs,
        "biunit_pairs": biunit_pairs,
        "heapoid": heapoid,
        "malcev": malcev,
        "fish_category": fish_category,
    }
