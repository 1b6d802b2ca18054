import pytest
from hypothesis import given
from hypothesis import strategies as st

from realgrass.boundary import (
    CoefficientReport,
    CoverFinder,
    chi,
    coefficient,
    coefficient_from,
    covering_pairs,
    deleted_position,
    exact_multiple,
    fill_diagram_roots,
    kappa_closed_form,
    kappa_phi_oracle,
    kappa_sigma_oracle,
    reading_position,
    removal_root,
    sigma,
    three_way,
)
from realgrass.chain import ChainComplex
from realgrass.shapes import (
    DoublePartition,
    GrassmannianSpec,
    enumerate_cells,
    enumerate_removals,
    partition_to_permutation,
    reading_boxes,
    row_reading_word,
)
from realgrass.weyl import Root, beta_sequence, evaluate_word

from oracles import bruhat_covers

BIG = DoublePartition((5, 5, 4), (8, 7, 4, 1))
D7 = GrassmannianSpec("D", 7, 3)
TYPE0 = DoublePartition((5, 4, 3), (7, 6, 1), 0)
TYPE1 = DoublePartition((5, 4, 4), (7, 6, 1), 1)
TYPE2 = DoublePartition((5, 4, 4), (7, 6, 1), 2)


def e(size, *pairs):
    c = [0] * size
    for a, x in pairs:
        c[a - 1] += x
    return Root(tuple(c))


def specs(max_n, families="BCD"):
    return [GrassmannianSpec(f, n, k) for f in families for n in range(1, max_n + 1) for k in range(n)]


def removal(spec, cell, **match):
    for rem, small in enumerate_removals(spec, cell):
        if all(getattr(rem, key) == val for key, val in match.items()):
            return rem, small
    raise LookupError(match)


# κ from the shape of the removed box

@pytest.mark.parametrize("family,match,kappa,root", [
    ("C", dict(kind="alpha", t=2), 6, e(8, (5, 1), (3, -1))),
    ("C", dict(kind="lambda", t=4), 7, e(8, (1, 2))),
    ("C", dict(kind="lambda", t=2), 8, e(8, (7, 1), (6, -1))),
    ("C", dict(kind="lambda", t=3), 14, e(8, (4, 1), (3, -1))),
    ("B", dict(kind="lambda", t=4), 13, e(8, (1, 1))),
    ("B", dict(kind="lambda", t=2), 7, e(8, (7, 1), (6, -1))),
    ("B", dict(kind="lambda", t=3), 13, e(8, (4, 1), (3, -1))),
])
def test_kappa_examples_bc(family, match, kappa, root):
    spec = GrassmannianSpec(family, 8, 3)
    rem, small = removal(spec, BIG, **match)
    assert kappa_closed_form(spec, BIG, rem) == kappa
    assert removal_root(spec, BIG, rem) == root
    assert kappa_phi_oracle(spec, BIG, small) == (kappa, root)
    assert kappa_sigma_oracle(spec, BIG, small) == kappa


@pytest.mark.parametrize("cell,match,kappa,root", [
    (TYPE1, dict(kind="alpha", t=3), 6, e(8, (3, 1), (1, -1))),
    (TYPE0, dict(kind="lambda", t=3), 5, e(8, (2, 1), (1, 1))),
    (TYPE2, dict(kind="lambda", t=3), 11, e(8, (2, 1), (1, 1))),
])
def test_kappa_examples_d(cell, match, kappa, root):
    rem, small = removal(D7, cell, **match)
    assert kappa_closed_form(D7, cell, rem) == kappa
    assert kappa_phi_oracle(D7, cell, small) == (kappa, root)
    assert kappa_sigma_oracle(D7, cell, small) == kappa


def test_subkinds_of_examples():
    c8 = GrassmannianSpec("C", 8, 3)
    assert removal(c8, BIG, kind="lambda", t=4)[0].subkind == "diagonal"
    assert removal(c8, BIG, kind="lambda", t=2)[0].p == 1
    assert removal(c8, BIG, kind="lambda", t=3)[0].q == 1
    rem, small = removal(D7, TYPE0, kind="lambda", t=3)
    assert (rem.subkind, rem.p, small) == ("related", 3, DoublePartition((5, 4, 3), (7, 6), 1))
    rem, _ = removal(D7, TYPE1, kind="lambda", t=3)
    assert (rem.subkind, rem.q, rem.dtype_change) == ("nonrelated", 2, (1, 2))


def test_d_has_no_diagonal_case():
    from realgrass.shapes import Removal

    with pytest.raises(ValueError):
        kappa_closed_form(D7, TYPE0, Removal("lambda", 3, (3, 4), "diagonal"))


# χ and the coefficient

def test_chi_examples():
    c8 = GrassmannianSpec("C", 8, 3)
    rem, _ = removal(c8, BIG, kind="alpha", t=2)
    assert chi(c8, BIG, rem) == 25
    rem, _ = removal(c8, BIG, kind="lambda", t=4)
    assert chi(c8, BIG, rem) == 1
    spec = GrassmannianSpec("C", 3, 2)
    cell = DoublePartition((1, 1), ())
    rem, _ = removal(spec, cell, kind="alpha", t=2)
    assert chi(spec, cell, rem) == 1


def test_coefficient_examples():
    c8 = GrassmannianSpec("C", 8, 3)
    rep = coefficient(c8, BIG, DoublePartition((5, 4, 4), (8, 7, 4, 1)))
    assert (rep.kappa, rep.chi, rep.c) == (6, 25, -2)
    assert rep.beta == e(8, (5, 1), (3, -1))
    assert coefficient(c8, BIG, DoublePartition((5, 5, 4), (8, 7, 4))).c == 0
    assert coefficient(c8, BIG, DoublePartition((4, 4, 4), (8, 7, 4, 1))) == CoefficientReport(None, None, 0, None)


def test_coefficient_from_table():
    assert coefficient_from(6, 25) == -2
    assert coefficient_from(6, 24) == 2
    assert coefficient_from(7, 1) == 0
    with pytest.raises(ValueError):
        CoefficientReport(2, 1, 4, None)


@given(st.integers(-50, 50), st.integers(0, 100))
def test_coefficient_is_even_and_small(kappa, x):
    c = coefficient_from(kappa, x)
    assert c in (-2, 0, 2)
    assert (c == 0) == (kappa % 2 == 1)


# the two oracles

def test_deleting_the_last_letter_gives_kappa_one():
    spec = GrassmannianSpec("C", 4, 2)
    for cell in enumerate_cells(spec):
        word = row_reading_word(spec, cell)
        if not word:
            continue
        assert sigma(spec, word, len(word)) == 0


def test_sigma_of_diagonal_example():
    c8 = GrassmannianSpec("C", 8, 3)
    word = row_reading_word(c8, BIG)
    assert sigma(c8, word, 1) == -6


def test_exact_multiple():
    assert exact_multiple(e(3, (1, 6), (2, -6)), e(3, (1, 1), (2, -1))) == 6
    assert exact_multiple(e(3, (1, -4)), e(3, (1, 2))) == -2
    with pytest.raises(ValueError):
        exact_multiple(e(3, (1, 3)), e(3, (1, 2)))
    with pytest.raises(ValueError):
        exact_multiple(e(3, (1, 2), (2, -3)), e(3, (1, 1), (2, -1)))
    with pytest.raises(ValueError):
        exact_multiple(e(3, (1, 2), (3, 1)), e(3, (1, 1)))
    with pytest.raises(ValueError):
        exact_multiple(e(3), e(3))


def test_phi_oracle_needs_a_covering_pair():
    c8 = GrassmannianSpec("C", 8, 3)
    with pytest.raises(ValueError):
        kappa_phi_oracle(c8, BIG, DoublePartition((4, 4, 4), (8, 7, 4, 1)))


@pytest.mark.parametrize("spec", specs(4), ids=str)
def test_three_routes_agree(spec):
    for cell, rem, small in covering_pairs(spec):
        a = three_way(spec, cell, rem, small)
        assert a.ok, a


# the diagram of roots

def test_fill_top_left_box():
    roots = fill_diagram_roots(GrassmannianSpec("C", 8, 3), BIG)
    assert roots[("alpha", 1, 1)] == e(8, (6, 1), (8, 1))


@pytest.mark.parametrize("spec", specs(5), ids=str)
def test_fill_is_the_beta_sequence(spec):
    for cell in enumerate_cells(spec):
        roots = fill_diagram_roots(spec, cell)
        word = row_reading_word(spec, cell)
        betas = beta_sequence(spec.family, spec.n, word)
        assert [roots[b] for b in reading_boxes(spec, cell)] == betas


def test_position_matches_chi():
    spec = GrassmannianSpec("B", 4, 2)
    for cell, rem, small in covering_pairs(spec):
        assert reading_position(spec, cell, rem) == chi(spec, cell, rem) == deleted_position(spec, cell, small)


# general covers

@pytest.mark.parametrize("spec", specs(4), ids=str)
def test_cover_finder_finds_every_bruhat_cover(spec):
    finder = CoverFinder(spec)
    for cell in finder.cells:
        w = finder.perm[cell]
        found = {finder.perm[cov.smaller] for cov in finder.covers(cell)}
        assert found == bruhat_covers(spec, w)
        for cov in finder.covers(cell):
            word = finder.words[cell]
            sub = word[:cov.position - 1] + word[cov.position:]
            assert evaluate_word(spec.family, spec.n, sub) == finder.perm[cov.smaller]
            assert cov.c in (-2, 0, 2)
            if cov.removal is not None:
                assert cov.kappa == kappa_closed_form(spec, cell, cov.removal)
            else:
                assert kappa_phi_oracle(spec, cell, cov.smaller)[0] == cov.kappa


def test_closed_form_sign_differs_after_type_change():
    # deleting the letter does not give the reading word of the smaller
    # cell here, and the two words orient the cell oppositely
    spec = GrassmannianSpec("D", 4, 3)
    cell = DoublePartition((2, 2, 2), (1,), 1)
    smaller = DoublePartition((2, 2, 1), (1,), 0)
    assert coefficient(spec, cell, smaller).c == 2
    (cov,) = [c for c in CoverFinder(spec).covers(cell) if c.smaller == smaller]
    assert cov.orientation == -1
    assert cov.c == -2


def _complex(spec, column):
    finder = CoverFinder(spec)
    basis = {}
    for c in finder.cells:
        basis.setdefault(c.size, []).append(c)
    index = {c: i for cells in basis.values() for i, c in enumerate(cells)}
    bounds = {}
    for d in range(1, max(basis) + 1):
        bounds[d] = [{index[s]: v for s, v in column(finder, cell).items() if v} for cell in basis[d]]
    return ChainComplex(spec, basis, bounds)


def removals_only(finder, cell):
    return {s: coefficient(finder.spec, cell, s).c for _, s in enumerate_removals(finder.spec, cell)}


def without_orientation(finder, cell):
    return {cov.smaller: coefficient_from(cov.kappa, cov.position) for cov in finder.covers(cell)}


def with_orientation(finder, cell):
    return {cov.smaller: cov.c for cov in finder.covers(cell)}


@pytest.mark.parametrize("family,n,k,column,ok", [
    ("C", 5, 1, removals_only, False),
    ("D", 4, 3, without_orientation, False),
    ("D", 4, 3, with_orientation, True),
    ("C", 5, 1, with_orientation, True),
])
def test_which_coefficients_square_to_zero(family, n, k, column, ok):
    cx = _complex(GrassmannianSpec(family, n, k), column)
    if ok:
        cx.check_squares_zero()
    else:
        with pytest.raises(AssertionError):
            cx.check_squares_zero()


def test_extra_cover_coefficient():
    spec = GrassmannianSpec("C", 3, 1)
    covs = {c.smaller: c for c in CoverFinder(spec).covers(DoublePartition((1,), (3,)))}
    extra = covs[DoublePartition((2,), (1,))]
    assert extra.removal is None
    assert extra.kappa == 3
    assert extra.c == 0
    w = partition_to_permutation(spec, DoublePartition((1,), (3,)))
    assert w.values == (1, -3, 2)
