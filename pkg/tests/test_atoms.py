import itertools

import pytest

from zslen.atoms import (
    antichain_violations,
    davenport,
    davenport_star,
    davenport_star_witness,
    enumerate_atoms,
    is_atom,
)
from zslen.errors import ResourceLimitError
from zslen.group import elements, make_group, order_of
from zslen.sequence import (
    Sequence,
    divides,
    enumerate_zero_sum,
    is_zero_sum,
    parse_sequence,
)


def naive_atoms(group):
    """Oracle: scan every vector with v_g <= ord(g), keep zero-sum ones,
    then drop anything with a smaller zero-sum below it."""
    els = elements(group)
    zs = []
    for vec in itertools.product(*(range(order_of(g) + 1) for g in els)):
        if sum(vec) == 0:
            continue
        s = Sequence.make(group, {g: m for g, m in zip(els, vec) if m})
        if is_zero_sum(s):
            zs.append(s)
    return {
        s for s in zs
        if not any(t != s and divides(t, s) for t in zs)
    }


def test_atoms_c3_exact(c3):
    atoms = enumerate_atoms(c3)
    expected = {
        parse_sequence(c3, "[0:1]"),
        parse_sequence(c3, "[1:3]"),
        parse_sequence(c3, "[2:3]"),
        parse_sequence(c3, "[1:1,2:1]"),
    }
    assert set(atoms.atoms) == expected


def test_atoms_c22_exact(c22):
    atoms = enumerate_atoms(c22)
    expected = {
        parse_sequence(c22, "[(0,0):1]"),
        parse_sequence(c22, "[(0,1):2]"),
        parse_sequence(c22, "[(1,0):2]"),
        parse_sequence(c22, "[(1,1):2]"),
        parse_sequence(c22, "[(0,1):1,(1,0):1,(1,1):1]"),
    }
    assert set(atoms.atoms) == expected


@pytest.mark.parametrize("mods", [[3], [4], [2, 2], [5], [6], [2, 4]])
def test_atoms_match_naive_oracle(mods):
    group = make_group(mods)
    assert set(enumerate_atoms(group).atoms) == naive_atoms(group)


def test_atom_count_c4(c4):
    assert len(enumerate_atoms(c4)) == 7  # frozen from the naive oracle


def test_is_atom_examples(c3, c22):
    assert is_atom(parse_sequence(c3, "[1:3]"))
    assert is_atom(parse_sequence(c22, "[(0,1):1,(1,0):1,(1,1):1]"))
    assert not is_atom(parse_sequence(c3, "[1:2,2:2]"))  # ((-g)g)^2
    assert not is_atom(Sequence.empty(c3))
    assert not is_atom(parse_sequence(c3, "[1:1]"))  # not zero-sum


def test_subset_atoms(c3):
    g = c3.element([1])
    atoms = enumerate_atoms(c3, [g])
    assert [str(a) for a in atoms.atoms] == ["[1:3]"]


DAVENPORT_CASES = [
    ([2], 2),
    ([3], 3),
    ([4], 4),
    ([5], 5),
    ([6], 6),
    ([7], 7),
    ([8], 8),
    ([2, 2], 3),
    ([2, 2, 2], 4),
    ([2, 2, 2, 2], 5),
    ([3, 3], 5),
    ([2, 4], 5),
]


@pytest.mark.parametrize("mods,expected", DAVENPORT_CASES)
def test_davenport_equals_star(mods, expected):
    group = make_group(mods)
    d, witness = davenport(group)
    assert d == expected
    assert d == davenport_star(group)
    assert witness.length == d
    assert is_atom(witness)


def test_davenport_star_examples():
    assert davenport_star(make_group([9])) == 9
    assert davenport_star(make_group([2, 2, 2])) == 4
    assert davenport_star(make_group([3, 3])) == 5
    assert davenport_star(make_group([1])) == 1


@pytest.mark.parametrize("mods", [[3], [2, 2], [2, 4], [3, 3], [2, 2, 2]])
def test_star_witness_is_atom(mods):
    group = make_group(mods)
    w = davenport_star_witness(group)
    assert w.length == davenport_star(group)
    assert is_atom(w)
    assert davenport_star(group) <= davenport(group)[0]


@pytest.mark.parametrize("mods", [[3], [4], [2, 2], [6], [3, 3], [2, 2, 2]])
def test_antichain(mods):
    group = make_group(mods)
    assert antichain_violations(enumerate_atoms(group)) == []


@pytest.mark.parametrize("mods", [[3], [4], [2, 2], [6]])
def test_completeness_on_samples(mods):
    group = make_group(mods)
    atoms = enumerate_atoms(group)
    d, _ = davenport(group, atoms)
    for b in enumerate_zero_sum(group, None, d + 2):
        if b.length == 0:
            continue
        assert any(divides(a, b) for a in atoms.atoms), str(b)


def test_cyclic_and_elementary_families():
    for n in range(2, 9):
        assert davenport(make_group([n]))[0] == n
    for r in range(1, 5):
        assert davenport(make_group([2] * r))[0] == r + 1


def test_node_limit():
    group = make_group([3, 3])
    with pytest.raises(ResourceLimitError) as exc:
        enumerate_atoms(group, None, node_limit=10)
    assert exc.value.bound_name == "lattice node"


def test_zero_atom_inclusion(c3):
    full = enumerate_atoms(c3)
    assert parse_sequence(c3, "[0:1]") in full.atoms
    no_zero = enumerate_atoms(c3, [c3.element([1]), c3.element([2])])
    assert all(a.v(c3.zero()) == 0 for a in no_zero.atoms)
