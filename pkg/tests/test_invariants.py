from fractions import Fraction

import pytest

from zslen.atoms import davenport, enumerate_atoms
from zslen.errors import InvalidArgumentError, ResourceLimitError
from zslen.group import elements, make_group
from zslen.invariants import (
    all_subgroups,
    closed_form_system,
    compare_with_closed_form,
    delta_of_group,
    delta_star,
    elasticity,
    has_two_D_lengthset,
    interval_support_check,
    is_half_factorial,
    lambda_k,
    rho_k,
    system,
    union_k,
    unions_range,
)
from zslen.lengths import LengthSet, exhaustive_length_set, length_set
from zslen.sequence import enumerate_zero_sum, parse_sequence


def L(*values):
    return LengthSet.of(values)


# -- system --------------------------------------------------------------------


def test_system_c3_contents(c3):
    sys_ = system(c3, None, 6)
    sets = set(sys_.length_sets())
    assert L(2, 3) in sets
    for m in range(4):
        assert L(m) in sets
    # witnesses replay to their length sets
    atoms = enumerate_atoms(c3)
    for ls, witness in sys_.entries:
        assert length_set(witness, atoms) == ls
        assert witness.length <= 6


def test_system_half_factorial_groups():
    for mods in ([1], [2]):
        group = make_group(mods)
        sys_ = system(group, None, 8)
        assert all(len(ls) == 1 for ls in sys_.length_sets())


def test_system_c22_has_u2_witness(c22):
    sys_ = system(c22, None, 6)
    assert L(2, 3) in set(sys_.length_sets())
    w = sys_.witness(L(2, 3))
    assert w.length == 6  # U^2 = V0 V1 V2


# -- closed forms ----------------------------------------------------------------


def test_closed_form_c3_window(c3):
    fam = closed_form_system(c3, 5)
    assert L(2, 3) in fam
    assert L(3, 4) in fam
    assert L(4, 5, 6) not in fam  # max 6 exceeds the window
    assert all(ls.max <= 5 for ls in fam)


def test_closed_form_c4(c4):
    fam = closed_form_system(c4, 8)
    assert L(4, 6, 8) in fam  # y=0, k=2 in the dilated family
    assert L(2, 4) in fam
    assert L(2, 3) in fam


def test_closed_form_c33(c33):
    fam = closed_form_system(c33, 7)
    assert LengthSet.of(range(2, 6)) in fam  # [2,5]
    assert L(1) in fam
    assert L(0) in fam
    assert all(len(ls) == 1 or ls.is_interval() for ls in fam)


def test_closed_form_rejects_unsupported():
    with pytest.raises(InvalidArgumentError):
        closed_form_system(make_group([5]), 6)


@pytest.mark.parametrize("mods,bound", [([3], 12), ([2, 2], 12), ([4], 10), ([2, 2, 2], 10)])
def test_compare_with_closed_form(mods, bound):
    group = make_group(mods)
    cmp = compare_with_closed_form(group, bound)
    assert cmp.ok, (cmp.computed_not_in_family, cmp.missing_at_frontier)


def test_systems_c3_c22_equal(c3, c22):
    a = set(system(c3, None, 12).length_sets())
    b = set(system(c22, None, 12).length_sets())
    assert a == b


# -- unions -----------------------------------------------------------------------


def test_union_1(c3, c4):
    assert union_k(c3, 1).values == (1,)
    assert union_k(c4, 1).values == (1,)


def test_union_2_c3_brute(c3):
    # oracle: all pairs of atoms, exhaustive factorization
    atoms = enumerate_atoms(c3)
    acc = set()
    for i, u in enumerate(atoms.atoms):
        for v in atoms.atoms[i:]:
            from zslen.sequence import mul

            acc.update(exhaustive_length_set(mul(u, v), atoms).values)
    assert tuple(sorted(acc)) == (2, 3)
    assert union_k(c3, 2).values == (2, 3)


@pytest.mark.parametrize("mods", [[3], [4], [2, 2], [5]])
def test_rho_2k_equals_k_davenport(mods):
    group = make_group(mods)
    atoms = enumerate_atoms(group)
    d, _ = davenport(group, atoms)
    unions = unions_range(group, 6, atoms)
    for k in (1, 2, 3):
        assert unions[2 * k].rho == k * d
    assert all(u.is_interval() for u in unions.values())


def test_rho_3_c3(c3):
    assert rho_k(c3, 3) == 4
    assert lambda_k(c3, 3) == 2


def test_elasticity_examples(c3, c22):
    assert elasticity(c3) == Fraction(3, 2)
    assert elasticity(make_group([2])) == 1
    assert elasticity(make_group([2, 4])) == Fraction(5, 2)


def test_elasticity_cross_check(c3, c4):
    assert elasticity(c3, cross_check=True) == Fraction(3, 2)
    assert elasticity(c4, cross_check=True) == Fraction(2)


def test_union_resource_limit(c33):
    with pytest.raises(ResourceLimitError):
        unions_range(c33, 8, product_limit=10)


# -- distance sets ------------------------------------------------------------------


def test_delta_c3(c3):
    report = delta_of_group(c3, None, 12)
    assert report.distances == (1,)
    assert report.exact


def test_delta_small_groups_empty():
    for mods in ([1], [2]):
        report = delta_of_group(make_group(mods), None, 10)
        assert report.distances == ()
        assert report.exact


def test_delta_c4(c4):
    report = delta_of_group(c4, None, 10)
    assert report.distances == (1, 2)


def test_delta_star_c3(c3):
    report = delta_star(c3, 8)
    assert report.values == (1,)
    assert report.subsets_scanned == 7


def test_delta_star_subset_of_delta(c4):
    ds = delta_star(c4, 8)
    d = delta_of_group(c4, None, 10)
    assert set(ds.values) <= set(d.distances)
    assert 1 in ds.values  # G0 = G contributes min Delta(G) = 1


def test_delta_star_order_cap():
    with pytest.raises(ResourceLimitError):
        delta_star(make_group([4, 4]), 6)


# -- half-factoriality ----------------------------------------------------------------


def test_half_factorial_c2():
    verdict = is_half_factorial(make_group([2]))
    assert verdict.kind == "yes-exact"


def test_half_factorial_c3_witness(c3):
    verdict = is_half_factorial(c3)
    assert verdict.kind == "no-with-witness"
    assert verdict.witness == parse_sequence(c3, "[1:3,2:3]")
    assert verdict.witness_lengths == L(2, 3)


def test_half_factorial_c22_witness(c22):
    verdict = is_half_factorial(c22)
    assert verdict.kind == "no-with-witness"
    assert verdict.witness_lengths == L(2, 3)


def test_half_factorial_single_generator(c5):
    verdict = is_half_factorial(c5, [c5.element([1])], bound=10)
    assert verdict.kind == "yes-up-to-bound"


# -- {2, D(G)} criterion ---------------------------------------------------------------


def test_two_D_c5(c5):
    report = has_two_D_lengthset(c5)
    assert report.found
    assert report.witness == parse_sequence(c5, "[1:5,4:5]")


def test_two_D_c24_negative(c24):
    report = has_two_D_lengthset(c24)
    assert not report.found
    assert report.witness is None
    assert report.pairs_scanned > 0


# -- interval support sampling ------------------------------------------------------------


def test_all_subgroups_c4(c4):
    subs = all_subgroups(c4)
    assert [len(s) for s in subs] == [1, 2, 4]


def test_all_subgroups_c222(c222):
    subs = all_subgroups(c222)
    assert [len(s) for s in subs].count(2) == 7
    assert [len(s) for s in subs].count(4) == 7
    assert len(subs) == 16


def test_interval_support_check_c3_witness_family(c3):
    atoms = enumerate_atoms(c3)
    for k in range(1, 4):
        b = parse_sequence(c3, f"[1:{3*k},2:{3*k}]")
        sup = set(b.support) | {c3.zero()}
        assert sup == set(elements(c3))
        assert length_set(b, atoms).is_interval()


def test_interval_support_check_sampling(c4):
    report = interval_support_check(c4, samples=100, seed=7)
    assert report.ok
    assert report.samples == 100


# -- cross-cutting invariants -------------------------------------------------------------


@pytest.mark.parametrize("mods", [[3], [4], [2, 2], [5]])
def test_union_invariants(mods):
    group = make_group(mods)
    unions = unions_range(group, 6)
    for k, u in unions.items():
        assert k in u.values
        assert (1 in u.values) == (k == 1)
        assert u.lam <= k <= u.rho


@pytest.mark.parametrize("mods", [[3], [4], [2, 2], [3, 3]])
def test_zero_free_weight_bounds(mods):
    # for witnesses without zeros: 2 max L <= |B| <= D(G) min L
    group = make_group(mods)
    atoms = enumerate_atoms(group)
    d, _ = davenport(group, atoms)
    for b in enumerate_zero_sum(group, None, 8):
        if b.length == 0 or b.v(group.zero()) > 0:
            continue
        ls = length_set(b, atoms)
        assert 2 * ls.max <= b.length
        assert b.length <= d * ls.min


@pytest.mark.parametrize("mods", [[3], [4], [2, 2], [5]])
def test_elasticity_witness_attained(mods):
    # (-U)U with |U| = D(G) realizes rho(L) = D/2
    group = make_group(mods)
    atoms = enumerate_atoms(group)
    d, witness = davenport(group, atoms)
    from zslen.lengths import elasticity_of
    from zslen.sequence import mul, negate

    b = mul(witness, negate(witness))
    assert elasticity_of(length_set(b, atoms)) == elasticity(group, atoms)
