"""Quick in-package diagnostics: a reduced mirror of the acceptance checks,
using the formula oracle and small trial counts. `plexus selftest` runs it."""
from __future__ import annotations

import itertools
import random

from .arrays import (
    Array,
    diagonal_extension,
    kronecker,
    random_array,
    unary_contract,
)
from .core import IndexSet
from .diagram import canonical_form, standard_diagram
from .evaluator import default_binding, evaluate, evaluate_formula_oracle, insert_kronecker
from .rewrite import (
    Motif,
    check_concurrency,
    enumerate_compositions,
    fish_motif,
    semantic_confluence_binding,
    vee_motif,
)
from .semiring import make_semiring
from .ternary import (
    ETA_VARIANTS,
    bijection_heap,
    biunit_pair_check,
    fish_units_check,
    check_heap,
    check_isotropy_biinvariance,
    check_semiheap,
    find_biunit_pairs,
    find_biunits,
    fish,
    fish_form3,
    fish_form4,
    flat_fish_equiv,
    group_heap,
    involuted_monoid,
    make_fish_binding,
    fish_output_order,
    relation_semiheap,
    semiheap_check_arrays,
    vector_heap,
)


def _conforming_triple(variant, twist, rng, semiring, sizes=(2, 3, 2, 2, 3, 2)):
    """Random (a, b, c) accepted by the given fish variant. sizes gives
    (tail tip1, tail tip2, mouth, head tip1, head tip2, output mouth)."""
    z, rev = ETA_VARIANTS[variant]
    t1, t2 = [p for p in range(3) if p != z]
    x1, x2, pp, w1, w2, mm = (IndexSet(n, s) for n, s in zip("XYPWVM", sizes))
    tail_axes, body_axes, head_axes = [None] * 3, [None] * 3, [None] * 3
    tail_axes[t1], tail_axes[t2], tail_axes[z] = x1, x2, pp
    head_axes[t1], head_axes[t2], head_axes[z] = w1, w2, mm
    if twist:
        body_axes[t1], body_axes[t2], body_axes[z] = w2, w1, pp
    else:
        body_axes[t1], body_axes[t2], body_axes[z] = w1, w2, pp
    tail = random_array(tail_axes, semiring, rng)
    body = random_array(body_axes, semiring, rng)
    head = random_array(head_axes, semiring, rng)
    return (head, body, tail) if rev else (tail, body, head)


def _check_fish_vs_evaluation(rng):
    for kind in ("boolean", "int_mod"):
        s = make_semiring(kind, 5 if kind == "int_mod" else None)
        for variant in ("IJK", "JKI", "KJI"):
            for twist in (False, True):
                for _ in range(3):
                    a, b, c = _conforming_triple(variant, twist, rng, s)
                    direct = fish(a, b, c, variant, twist)
                    d, binding = make_fish_binding(a, b, c, variant, twist)
                    order = fish_output_order(variant)
                    if evaluate(d, binding, order) != direct:
                        return False, f"engine vs evaluate at {variant} twist={twist}"
                    if evaluate_formula_oracle(d, binding, order) != direct:
                        return False, f"engine vs oracle at {variant} twist={twist}"
    return True, "engine, evaluator and formula oracle agree"


def _check_para_associativity(rng):
    iset = IndexSet("I", 2)
    for kind, mod in (("boolean", None), ("int_mod", 5)):
        s = make_semiring(kind, mod)
        axes = (iset, iset, iset)
        for _ in range(6):
            args = [random_array(axes, s, rng) for _ in range(5)]
            v = semiheap_check_arrays(*args)
            if not v:
                return False, f"{v.law} fails on {kind}"
    return True, "((abc)de) = (a(dcb)e) = (ab(cde)) on random arrays"


def _check_multiway(rng):
    rep1 = check_concurrency(standard_diagram("zee"), vee_motif())
    if (rep1["initial_matches"], rep1["states"], rep1["terminals"]) != (2, 4, 1):
        return False, f"zee counts {rep1}"
    if not rep1["concurrent"]:
        return False, "zee not concurrent"
    rep2 = check_concurrency(standard_diagram("long_fish"), fish_motif())
    if (rep2["initial_matches"], rep2["states"], rep2["terminals"]) != (3, 5, 1):
        return False, f"long_fish counts {rep2}"
    if not rep2["concurrent"]:
        return False, "long_fish not concurrent"
    return True, "zee 2/4/1 and long_fish 3/5/1, both concurrent"


def _check_semantic_confluence(rng):
    s = make_semiring("int_mod", 7)
    for name, motif, builder in (
        ("chain", vee_motif(), lambda: standard_diagram("chain", 4)),
        ("long_fish", fish_motif(), lambda: standard_diagram("long_fish")),
    ):
        d = builder()
        for _ in range(3):
            arrays = {
                eid: random_array(
                    [d.vertices[v].index_set for v in sorted(d.edges[eid].legs)], s, rng
                )
                for eid in d.edges
            }
            rep = semantic_confluence_binding(d, default_binding(d, arrays), motif)
            if not rep["ok"]:
                return False, f"{name} disagrees with direct evaluation"
    return True, "all rewrite orders evaluate like the host"


def _check_kronecker(rng):
    s = make_semiring("int_mod", 7)
    iset = IndexSet("I", 3)
    a = random_array((iset, iset), s, rng)
    if unary_contract(diagonal_extension(a, 0), 0) != a:
        return False, "diagonal extension round trip"
    d = standard_diagram("fish", size=2)
    iset2 = IndexSet("I", 2)
    for _ in range(3):
        arrays = {
            eid: random_array((iset2, iset2, iset2), s, rng) for eid in d.edges
        }
        binding = default_binding(d, arrays)
        base = evaluate(d, binding)
        d2, b2 = insert_kronecker(d, binding, "v3", "e1")
        if evaluate(d2, b2) != base:
            return False, "identity-edge insertion changed the value"
    return True, "identity edges are neutral"


def _check_right_units(rng):
    for kind, mod in (("boolean", None), ("int_mod", 5)):
        s = make_semiring(kind, mod)
        axes = (IndexSet("I", 2), IndexSet("J", 3), IndexSet("K", 2))
        for _ in range(5):
            a = random_array(axes, s, rng)
            v = fish_units_check(a)
            if not v:
                return False, f"{v.law} fails on {kind}"
    return True, "(att) = (aut) = (atu) = a"


def _check_flat_fish(rng):
    s = make_semiring("int_mod", 5)
    M, W1, W2, S, Y1, Y2 = (IndexSet(n, k) for n, k in zip("MWVSYZ", (2, 2, 3, 2, 3, 2)))
    for _ in range(5):
        a = random_array((M, W1, W2), s, rng)
        b = random_array((S, W1, W2), s, rng)
        c = random_array((S, Y1, Y2), s, rng)
        if not flat_fish_equiv(a, b, c):
            return False, "flattened product disagrees"
    return True, "mouth-first product = flattened matrix product"


def _check_biunits(rng):
    s = make_semiring("boolean")
    I4, J2, K2 = IndexSet("I", 4), IndexSet("J", 2), IndexSet("K", 2)
    pairs = find_biunit_pairs(I4, J2, K2, s)
    if len(pairs) != 24:
        return False, f"expected 24 pairs, got {len(pairs)}"
    e, e2 = pairs[0]
    if not biunit_pair_check(e, e2)["ok"]:
        return False, "returned pair fails the equations"
    a = random_array((I4, J2, K2), s, rng)
    if fish(a, e, e2, "JKI") != a or fish(e, e2, a, "JKI") != a:
        return False, "biunit pair is not a two-sided unit"
    if find_biunit_pairs(IndexSet("I", 3), J2, K2, s):
        return False, "pairs reported despite size mismatch"
    return True, "24 boolean pairs at sizes (4,2,2), none at (3,2,2)"


def _check_finite_tables(rng):
    z3 = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    rep = check_heap(group_heap(z3))
    if not rep["ok"]:
        return False, "cyclic group heap fails"
    rep = check_heap(vector_heap(3, 1))
    if not rep["ok"]:
        return False, "vector heap fails"
    rep = check_heap(bijection_heap(3))
    if not rep["ok"]:
        return False, "bijection heap fails"
    v = check_semiheap(relation_semiheap(2, 1))
    if not v:
        return False, f"relation semiheap fails {v.law} at {v.witness}"
    return True, "group, vector, bijection heaps and relation semiheap pass"


def _check_involuted_monoids(rng):
    t = vector_heap(5, 1)
    biunits = find_biunits(t)
    if not biunits:
        return False, "no biunits in vector heap"
    _, _, v = involuted_monoid(t, biunits[0])
    if not v:
        return False, f"monoid law {v.law} fails"
    return True, "biunits induce involuted monoids"


def _check_isotropy(rng):
    for n in (2, 3):
        v = check_isotropy_biinvariance(n, n)
        if not v:
            return False, f"fails at {n} points: {v.law}"
    return True, "relabelings leave the bijection heap invariant"


def _check_census(rng):
    reps, symmetric = enumerate_compositions()
    if len(reps) != 10 or len(symmetric) != 3:
        return False, f"got {len(reps)} classes, {len(symmetric)} symmetric"
    want = {
        canonical_form(standard_diagram(n))
        for n in ("bm", "trinity_mid", "trinity_right")
    }
    if {canonical_form(d) for d in symmetric} != want:
        return False, "symmetric classes are not the expected three"
    return True, "10 composition classes, 3 symmetric"


def _check_reversal(rng):
    s = make_semiring("int_mod", 5)
    for fwd, rev in (("IJK", "JIK"), ("KIJ", "IKJ"), ("JKI", "KJI")):
        for _ in range(3):
            a, b, c = _conforming_triple(fwd, False, rng, s)
            if fish(a, b, c, fwd) != fish(c, b, a, rev):
                return False, f"{fwd} vs {rev}"
    return True, "each variant is the reverse of its partner"


def _check_twist(rng):
    s = make_semiring("boolean")
    iset = IndexSet("I", 2)
    axes = (iset, iset, iset)
    basis = []
    for pos in itertools.product(range(2), repeat=3):
        entries = [0] * 8
        entries[(pos[0] * 2 + pos[1]) * 2 + pos[2]] = 1
        basis.append(Array(axes, entries, s))
    delta = kronecker(3, iset, s)
    witness = False
    for _ in range(40):
        b = random_array(axes, s, rng)
        differs = any(
            fish_form3(a, b, c) != fish_form4(a, b, c)
            for a in basis
            for c in basis
        )
        if b == delta and differs:
            return False, "twist visible through the order-3 identity"
        witness = witness or differs
    if any(fish_form3(a, delta, c) != fish_form4(a, delta, c) for a in basis for c in basis):
        return False, "twist visible through the order-3 identity"
    if not witness:
        return False, "no twist witness found"
    return True, "twist changes values, except through the order-3 identity"


CHECKS = [
    ("fish-matches-diagram-evaluation", _check_fish_vs_evaluation),
    ("fish-para-associativity", _check_para_associativity),
    ("multiway-concurrency", _check_multiway),
    ("semantic-confluence", _check_semantic_confluence),
    ("kronecker-identities", _check_kronecker),
    ("fish-right-units", _check_right_units),
    ("flat-fish", _check_flat_fish),
    ("biunit-pairs", _check_biunits),
    ("finite-semiheaps", _check_finite_tables),
    ("involuted-monoids", _check_involuted_monoids),
    ("isotropy-biinvariance", _check_isotropy),
    ("composition-census", _check_census),
    ("reversal-relations", _check_reversal),
    ("twist-witness", _check_twist),
]


def run_selftest(seed: int = 0):
    """Run every check. Returns (all_ok, lines)."""
    lines = []
    ok = True
    for name, fn in CHECKS:
        rng = random.Random(seed)
        passed, detail = fn(rng)
        ok = ok and passed
        lines.append(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
    return ok, lines
