"""Intersection lattice, exceptional classes, blow-down chains, thresholds.

Frozen expected values come from independent brute-force scans (coefficient
boxes, re-run here) or from hand-checked lattice arithmetic recorded next to
each test.
"""

import random
from fractions import Fraction as Q
from itertools import product

import pytest

from torus_census.errors import PreconditionError
from torus_census.homology import (
    Basis,
    HomologyClass,
    SymplecticData,
    area,
    basis_from_json,
    basis_to_json,
    blow_down_class,
    canonical_blowdown_chain,
    chern,
    class_from_json,
    class_to_json,
    enumerate_bounded_classes,
    enumerate_exceptional_candidates,
    intersect,
    min_capacity_threshold,
    minimal_blowdown_chains,
    minimal_exceptional_classes,
    poincare_dual,
    symplectic_from_json,
    symplectic_to_json,
)
from torus_census.linalg import signature


def rational_data(lam, *caps):
    basis = Basis("rational", 0, len(caps))
    return SymplecticData(basis, tuple(Q(c) for c in caps), lam=Q(lam))


def cls(data, *coeffs):
    return HomologyClass(data.basis, tuple(coeffs))


# ---------------------------------------------------------------------------
# Pairings


def test_rational_gram_diagonal():
    data = rational_data(1, Q(1, 3), Q(1, 4))
    l = cls(data, 1, 0, 0)
    e1 = cls(data, 0, 1, 0)
    e2 = cls(data, 0, 0, 1)
    assert intersect(l, l) == 1
    assert intersect(e1, e1) == -1
    assert intersect(e2, e2) == -1
    assert intersect(l, e1) == 0
    assert intersect(e1, e2) == 0
    assert chern(l) == 3
    assert chern(e1) == 1


def test_product_ruled_pairings():
    basis = Basis("product_ruled", 1, 1)
    b = HomologyClass(basis, (1, 0, 0))
    f = HomologyClass(basis, (0, 1, 0))
    e = HomologyClass(basis, (0, 0, 1))
    assert intersect(b, b) == 0
    assert intersect(f, f) == 0
    assert intersect(b, f) == 1
    assert intersect(e, e) == -1
    assert chern(b) == 2 - 2 * 1
    assert chern(f) == 2
    assert chern(e) == 1


def test_twisted_ruled_pairings():
    basis = Basis("twisted_ruled", 2, 0)
    b = HomologyClass(basis, (1, 0))
    f = HomologyClass(basis, (0, 1))
    assert intersect(b, b) == -1
    assert intersect(f, f) == 0
    assert intersect(b, f) == 1
    assert chern(b) == 1 - 2 * 2
    assert chern(f) == 2


def test_intersect_requires_same_basis():
    a = HomologyClass(Basis("rational", 0, 1), (1, 0))
    b = HomologyClass(Basis("rational", 0, 2), (1, 0, 0))
    with pytest.raises(PreconditionError):
        intersect(a, b)


def test_intersect_bilinear_and_symmetric():
    rng = random.Random(23)
    bases = [
        Basis("rational", 0, 3),
        Basis("product_ruled", 1, 2),
        Basis("twisted_ruled", 0, 2),
    ]
    for _ in range(1000):
        basis = rng.choice(bases)
        x, y, z = (
            HomologyClass(
                basis, tuple(rng.randrange(-5, 6) for _ in range(basis.rank))
            )
            for _ in range(3)
        )
        assert intersect(x, y) == intersect(y, x)
        s = HomologyClass(basis, tuple(a + b for a, b in zip(x.coeffs, y.coeffs)))
        assert intersect(s, z) == intersect(x, z) + intersect(y, z)


def test_every_basis_gram_has_one_positive_eigenvalue():
    shapes = [
        Basis("rational", 0, 0),
        Basis("rational", 0, 4),
        Basis("product_ruled", 0, 2),
        Basis("product_ruled", 2, 0),
        Basis("twisted_ruled", 1, 3),
    ]
    for basis in shapes:
        gram = [[Q(x) for x in row] for row in basis.gram()]
        pos, neg, zero = signature(gram)
        assert (pos, neg, zero) == (1, basis.rank - 1, 0)


def test_area_and_dual():
    data = rational_data(1, Q(1, 3), Q(1, 4))
    assert area(cls(data, 1, 0, 0), data) == Q(1)
    assert area(cls(data, 0, 1, 0), data) == Q(1, 3)
    assert area(cls(data, 1, -1, -1), data) == Q(5, 12)
    assert poincare_dual(data) == (Q(1), Q(-1, 3), Q(-1, 4))


# ---------------------------------------------------------------------------
# Exceptional candidates against an independent box scan


def brute_force_exceptional(data, bound, box=4):
    """Plain coefficient-box oracle: square -1, Chern 1, area in (0, bound]."""
    gram = data.basis.gram()
    chern_vec = data.basis.chern_vector()
    weight = data.area_vector()
    rank = data.basis.rank
    hits = set()
    for coeffs in product(range(-box, box + 1), repeat=rank):
        square = sum(
            gram[i][j] * coeffs[i] * coeffs[j]
            for i in range(rank)
            for j in range(rank)
        )
        if square != -1:
            continue
        if sum(t * c for t, c in zip(chern_vec, coeffs)) != 1:
            continue
        value = sum(w * c for w, c in zip(weight, coeffs))
        if 0 < value <= bound:
            hits.add(coeffs)
    return hits


EXPECTED_CANDIDATE_SIZES = {1: 1, 2: 3, 3: 6, 4: 10, 5: 16}


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_candidates_match_box_scan(k):
    data = rational_data(1, *([Q(1, 10)] * k))
    got = enumerate_exceptional_candidates(data, Q(2))
    assert {c.coeffs for c in got} == brute_force_exceptional(data, Q(2))
    assert len(got) == EXPECTED_CANDIDATE_SIZES[k]


def test_candidates_satisfy_defining_equations():
    data = rational_data(1, Q(1, 3), Q(1, 4), Q(1, 5))
    for candidate in enumerate_exceptional_candidates(data, Q(1)):
        assert intersect(candidate, candidate) == -1
        assert chern(candidate) == 1
        assert area(candidate, data) > 0


def test_candidates_on_positive_genus_base_pair_trivially_with_fiber():
    # Genus 1: E1 and the fiber through the blown-up point qualify; B + E1
    # solves the square and Chern equations but pairs 1 with the fiber, and
    # a sphere cannot map onto a positive-genus base.
    basis = Basis("product_ruled", 1, 1)
    data = SymplecticData(basis, (Q(1, 3),), mu=Q(2))
    candidates = enumerate_exceptional_candidates(data, Q(3))
    assert [c.coeffs for c in candidates] == [(0, 0, 1), (0, 1, -1)]
    assert (1, 0, 1) not in {c.coeffs for c in candidates}


def test_minimal_classes_distinct_capacities():
    data = rational_data(1, Q(1, 3), Q(1, 4), Q(1, 5))
    minimal = minimal_exceptional_classes(data)
    assert minimal.epsilon == Q(1, 5)
    assert [str(c) for c in minimal.classes] == ["E3"]


def test_minimal_classes_prefer_connecting_line():
    # On (1; 2/5, 2/5) the class L - E1 - E2 has area 1/5 < 2/5.
    data = rational_data(1, Q(2, 5), Q(2, 5))
    minimal = minimal_exceptional_classes(data)
    assert minimal.epsilon == Q(1, 5)
    assert [str(c) for c in minimal.classes] == ["L - E1 - E2"]


def test_minimal_classes_need_a_blowup():
    with pytest.raises(PreconditionError):
        minimal_exceptional_classes(rational_data(1))


# ---------------------------------------------------------------------------
# Bounded-class enumeration


def test_bounded_classes_area_anchor():
    # Anchor PD(omega) on (1; 1/10, 1/10, 1/10): the six low-degree
    # exceptional classes plus six classes L - Ei + Ej of area exactly 1.
    data = rational_data(1, Q(1, 10), Q(1, 10), Q(1, 10))
    got = enumerate_bounded_classes(
        poincare_dual(data), Q(0), Q(1), Q(1), Q(1), data
    )
    expected = {
        (0, 1, 0, 0),
        (0, 0, 1, 0),
        (0, 0, 0, 1),
        (1, -1, -1, 0),
        (1, -1, 0, -1),
        (1, 0, -1, -1),
        (1, -1, 1, 0),
        (1, -1, 0, 1),
        (1, 0, -1, 1),
        (1, 0, 1, -1),
        (1, 1, -1, 0),
        (1, 1, 0, -1),
    }
    assert {c.coeffs for c in got} == expected


def test_bounded_classes_tighter_area_bound():
    data = rational_data(1, Q(1, 5), Q(1, 5), Q(1, 5))
    got = enumerate_bounded_classes(
        poincare_dual(data), Q(0), Q(3, 4), Q(1), Q(1), data
    )
    assert sorted(str(c) for c in got) == [
        "E1",
        "E2",
        "E3",
        "L - E1 - E2",
        "L - E1 - E3",
        "L - E2 - E3",
    ]


def test_bounded_classes_orthogonal_to_line():
    data = rational_data(1, Q(1, 10), Q(1, 10))
    l = cls(data, 1, 0, 0)
    got = enumerate_bounded_classes(l, Q(0), Q(0), Q(1), Q(1), data)
    assert {c.coeffs for c in got} == {
        (0, 1, 0),
        (0, -1, 0),
        (0, 0, 1),
        (0, 0, -1),
    }


def test_bounded_classes_rejects_empty_interval():
    data = rational_data(1, Q(1, 10))
    with pytest.raises(PreconditionError):
        enumerate_bounded_classes(cls(data, 1, 0), Q(1), Q(0), Q(1), Q(1), data)


def test_bounded_classes_rejects_null_anchor():
    basis = Basis("product_ruled", 0, 0)
    data = SymplecticData(basis, (), mu=Q(1))
    fiber = HomologyClass(basis, (0, 1))
    with pytest.raises(PreconditionError):
        enumerate_bounded_classes(fiber, Q(0), Q(1), Q(1), Q(1), data)


# ---------------------------------------------------------------------------
# Blow-downs


def test_blow_down_last_exceptional_class():
    data = rational_data(1, Q(1, 3), Q(1, 4))
    down = blow_down_class(data, cls(data, 0, 0, 1))
    assert down.basis.kind == "rational"
    assert down.basis.blowups == 1
    assert down.lam == Q(1)
    assert down.capacities == (Q(1, 3),)


def test_blow_down_connecting_line_changes_base_kind():
    # Collapsing L - E1 - E2 on (1; 2/5, 2/5) leaves the even hyperbolic
    # lattice spanned by L - E1 and L - E2: a sphere product with factor
    # areas 3/5 and 3/5.
    data = rational_data(1, Q(2, 5), Q(2, 5))
    down = blow_down_class(data, cls(data, 1, -1, -1))
    assert down.basis.kind == "product_ruled"
    assert down.basis.blowups == 0
    assert (down.mu, down.fiber) == (Q(3, 5), Q(3, 5))


def test_blow_down_bookkeeping_deltas():
    data = rational_data(1, Q(2, 5), Q(2, 5))
    target = cls(data, 1, -1, -1)
    delta = area(target, data)
    down = blow_down_class(data, target)
    assert down.basis.rank == data.basis.rank - 1
    assert down.volume_quantity() == data.volume_quantity() + delta * delta
    assert down.chern_pairing() == data.chern_pairing() + delta


def test_blow_down_rejects_non_exceptional():
    data = rational_data(1, Q(1, 3))
    with pytest.raises(PreconditionError):
        blow_down_class(data, cls(data, 1, 0))


def test_blow_down_fuzz_bookkeeping():
    rng = random.Random(31)
    for _ in range(40):
        k = rng.randrange(1, 5)
        caps = sorted(
            (Q(1, rng.randrange(4, 12)) for _ in range(k)), reverse=True
        )
        data = rational_data(1, *caps)
        candidates = enumerate_exceptional_candidates(data, Q(1))
        target = candidates[rng.randrange(len(candidates))]
        delta = area(target, data)
        down = blow_down_class(data, target)
        assert down.basis.rank == data.basis.rank - 1
        assert down.volume_quantity() == data.volume_quantity() + delta * delta
        assert down.chern_pairing() == data.chern_pairing() + delta


# ---------------------------------------------------------------------------
# Minimal blow-down chains


def test_unique_chain_for_one_third_recipe():
    data = rational_data(1, Q(1, 3), Q(1, 4), Q(1, 5))
    chains = minimal_blowdown_chains(data)
    assert len(chains) == 1
    (chain,) = chains
    assert [str(s.chosen) for s in chain.steps] == ["E3", "E2", "E1"]
    assert [s.area for s in chain.steps] == [Q(1, 5), Q(1, 4), Q(1, 3)]
    assert chain.terminal.basis.kind == "rational"
    assert chain.terminal.basis.blowups == 0
    assert chain.terminal.lam == Q(1)


def test_equal_capacities_permute_ties():
    data = rational_data(1, Q(1, 10), Q(1, 10))
    chains = minimal_blowdown_chains(data)
    assert len(chains) == 2
    starts = {chain.steps[0].original_coeffs for chain in chains}
    assert starts == {(0, 1, 0), (0, 0, 1)}


def test_small_capacity_chains_follow_capacity_order():
    rng = random.Random(37)
    for _ in range(10):
        k = rng.randrange(1, 5)
        caps = sorted(
            {Q(1, rng.randrange(4, 16)) for _ in range(k)}, reverse=True
        )
        data = rational_data(1, *caps)
        chains = minimal_blowdown_chains(data)
        # Distinct capacities below lam/3: the unique chain peels the
        # smallest exceptional divisor at every stage.
        assert len(chains) == 1
        (chain,) = chains
        assert [s.area for s in chain.steps] == sorted(caps)
        assert chain.terminal.basis.blowups == 0


def test_large_capacity_chain_family():
    data = rational_data(1, Q(2, 5), Q(2, 5), Q(2, 5))
    chains = minimal_blowdown_chains(data)
    assert len(chains) == 6
    for chain in chains:
        assert chain.terminal.basis.kind == "rational"
        assert chain.terminal.basis.blowups == 0
        assert chain.terminal.lam == Q(4, 5)


def test_largest_family_count_and_canonical_branch():
    data = rational_data(1, Q(2, 5), Q(2, 5), Q(2, 5), Q(2, 5))
    chains = minimal_blowdown_chains(data)
    assert len(chains) == 48
    canonical = canonical_blowdown_chain(data)
    assert [str(s.chosen) for s in canonical.steps] == [
        "L - E1 - E2",
        "E3",
        "E2",
        "E1",
    ]
    assert [s.area for s in canonical.steps] == [
        Q(1, 5),
        Q(1, 5),
        Q(1, 5),
        Q(2, 5),
    ]
    assert canonical.terminal.lam == Q(4, 5)
    assert canonical in chains


def test_pair_chain_terminates_in_sphere_product():
    data = rational_data(1, Q(2, 5), Q(2, 5))
    canonical = canonical_blowdown_chain(data)
    assert [str(s.chosen) for s in canonical.steps] == ["L - E1 - E2"]
    terminal = canonical.terminal
    assert terminal.basis.kind == "product_ruled"
    assert (terminal.mu, terminal.fiber) == (Q(3, 5), Q(3, 5))


def test_chains_need_a_blowup():
    with pytest.raises(PreconditionError):
        minimal_blowdown_chains(rational_data(1))


# ---------------------------------------------------------------------------
# Capacity thresholds


def test_threshold_single_blowup():
    data = rational_data(1, Q(1, 5))
    threshold = min_capacity_threshold(data)
    assert threshold.value == Q(1, 2)
    assert [str(c) for c in threshold.binding] == ["L - E1"]


def test_threshold_with_fixed_first_capacity():
    data = rational_data(1, Q(1, 3), Q(1, 4))
    threshold = min_capacity_threshold(data)
    assert threshold.value == Q(1, 3)
    assert sorted(str(c) for c in threshold.binding) == ["E1", "L - E1 - E2"]


def test_threshold_needs_a_blowup():
    with pytest.raises(PreconditionError):
        min_capacity_threshold(rational_data(1))


def test_threshold_is_sharp():
    # Below the threshold the last class is the unique minimum; at the
    # threshold something else ties.
    data = rational_data(1, Q(1, 3), Q(1, 4))
    threshold = min_capacity_threshold(data)
    below = rational_data(1, Q(1, 3), threshold.value - Q(1, 100))
    minimal = minimal_exceptional_classes(below)
    assert [c.coeffs for c in minimal.classes] == [(0, 0, 1)]
    at = rational_data(1, Q(1, 3), threshold.value)
    tied = minimal_exceptional_classes(at)
    assert len(tied.classes) > 1


# ---------------------------------------------------------------------------
# Serialization


def test_basis_json_round_trip():
    for basis in [
        Basis("rational", 0, 3),
        Basis("product_ruled", 2, 1),
        Basis("twisted_ruled", 1, 0),
    ]:
        assert basis_from_json(basis_to_json(basis)) == basis


def test_class_json_round_trip():
    basis = Basis("rational", 0, 2)
    original = HomologyClass(basis, (1, -1, -1))
    assert class_from_json(class_to_json(original)) == original


def test_symplectic_json_round_trip():
    for data in [
        rational_data(Q(7, 3), Q(1, 3), Q(1, 4)),
        SymplecticData(Basis("product_ruled", 1, 1), (Q(1, 2),), mu=Q(5, 2)),
        SymplecticData(
            Basis("twisted_ruled", 0, 0), (), mu=Q(3, 2), fiber=Q(2, 3)
        ),
    ]:
        assert symplectic_from_json(symplectic_to_json(data)) == data
