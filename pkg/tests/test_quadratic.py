"""Presentation-level duality, dimension tables, and the series model."""

import random
from fractions import Fraction

import pytest

from helixkit.bundles import ChernVector, euler_pairing
from helixkit.errors import DimensionCapExceeded, UnsupportedD
from helixkit.exact import RationalMatrix, TruncatedSeries, row_space_equal
from helixkit.helix import Seed, invariants_from_seed
from helixkit import quadratic
from helixkit.quadratic import (
    DimTable,
    EquigenModel,
    QuadraticPresentation,
    classical_euler_fixture,
    cross_check_hilbert,
    degree_dims,
    double_dual_check,
    equigenerated_detect,
    frobenius_profile,
    hilbert_A,
    hilbert_B,
    koszul_dual,
    koszulity_witness,
    normal_quotient_check,
)
from helixkit.sampling import random_presentation

M = RationalMatrix.from_rows


def commutator_rows(g):
    rows = []
    for a in range(g):
        for b in range(a + 1, g):
            row = [Fraction(0)] * (g * g)
            row[a * g + b] = Fraction(1)
            row[b * g + a] = Fraction(-1)
            rows.append(row)
    return rows


def sym_presentation(g):
    return QuadraticPresentation(1, (g,), (M(commutator_rows(g)),))


def free_presentation(g):
    return QuadraticPresentation(1, (g,), (M([], cols=g * g),))


def periodic_mixed():
    """Period 3, gen dims (2,3,2), a single relation at index 1 only."""
    rel1 = M([[1, 0, 0, 0, 0, -1]])
    return QuadraticPresentation(
        3,
        (2, 3, 2),
        (M([], cols=6), rel1, M([], cols=4)),
    )


# ------------------------------------------------------- construction rules


def test_presentation_rejects_dependent_relation_rows():
    dep = M([[1, 0, 0, 0], [2, 0, 0, 0]])
    with pytest.raises(ValueError):
        QuadraticPresentation(1, (2,), (dep,))


def test_presentation_rejects_shape_mismatches():
    with pytest.raises(ValueError):
        QuadraticPresentation(1, (2,), (M([], cols=5),))
    with pytest.raises(ValueError):
        QuadraticPresentation(2, (2,), (M([], cols=4), M([], cols=4)))
    with pytest.raises(ValueError):
        QuadraticPresentation(1, (0,), (M([], cols=0),))
    with pytest.raises(ValueError):
        QuadraticPresentation(0, (), ())


def test_periodic_relation_columns_follow_the_cycle():
    # index 2 pairs g_2 with g_0, so 2*2 columns, not 2*3
    p = periodic_mixed()
    assert p.relations[2].cols == 4
    with pytest.raises(ValueError):
        QuadraticPresentation(
            3, (2, 3, 2), (M([], cols=6), M([], cols=6), M([], cols=6))
        )


def test_json_round_trip():
    p = QuadraticPresentation(
        2,
        (2, 3),
        (M([[Fraction(3, 4), 0, 1, 0, 0, -1]]), M([], cols=6)),
    )
    doc = p.to_json_dict()
    assert doc["period"] == 2
    assert doc["gen_dims"] == [2, 3]
    assert doc["relations"][0]["index"] == 0
    assert doc["relations"][0]["rows"][0][0] == "3/4"
    back = QuadraticPresentation.from_json_dict(doc)
    assert back.period == p.period
    assert back.gen_dims == p.gen_dims
    for a, b in zip(back.relations, p.relations):
        assert a.entries == b.entries


# ----------------------------------------------------------------- the dual


def test_dual_of_two_variable_commutator_is_the_symmetric_annihilator():
    d = koszul_dual(sym_presentation(2))
    assert d.period == 1
    assert d.gen_dims == (2,)
    expected = M([[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]])
    assert row_space_equal(d.relations[0], expected)


def test_dual_relation_dims_are_complementary():
    for p in (sym_presentation(2), sym_presentation(3), periodic_mixed()):
        d = koszul_dual(p)
        for i in range(p.period):
            ambient = p.relations[i].cols
            assert p.relations[i].rows + d.relations[i].rows == ambient


def test_dual_of_free_algebra_has_all_relations():
    d = koszul_dual(free_presentation(3))
    assert d.relations[0].rows == 9
    dims = degree_dims(d, 3)
    assert [dims.dim(0, n) for n in range(4)] == [1, 3, 0, 0]


def test_double_dual_fixed_cases():
    assert double_dual_check(sym_presentation(2))
    assert double_dual_check(sym_presentation(3))
    assert double_dual_check(free_presentation(2))
    assert double_dual_check(periodic_mixed())


def test_double_dual_randomized():
    rng = random.Random(11)
    for _ in range(12):
        assert double_dual_check(random_presentation(rng))


# ------------------------------------------------------------- degree dims


def test_symmetric_two_variable_dims():
    dims = degree_dims(sym_presentation(2), 4)
    assert [dims.dim(0, n) for n in range(5)] == [1, 2, 3, 4, 5]


def test_symmetric_three_variable_cube_dim():
    dims = degree_dims(sym_presentation(3), 3)
    assert dims.dim(0, 2) == 6
    assert dims.dim(0, 3) == 10


def test_free_two_variable_degree_four():
    dims = degree_dims(free_presentation(2), 4)
    assert dims.dim(0, 4) == 16


def test_exterior_cube_vanishes():
    dims = degree_dims(koszul_dual(sym_presentation(2)), 3)
    assert [dims.dim(0, n) for n in range(4)] == [1, 2, 1, 0]


EXPECTED_MIXED = {
    0: [1, 2, 6, 10, 20],
    1: [1, 3, 5, 10, 30],
    2: [1, 2, 4, 12, 20],
}


def test_periodic_mixed_dims_match_hand_table():
    dims = degree_dims(periodic_mixed(), 4)
    for i, want in EXPECTED_MIXED.items():
        assert [dims.dim(i, n) for n in range(5)] == want


def test_periodic_index_reduces_mod_period():
    dims = degree_dims(periodic_mixed(), 4)
    assert dims.dim(3, 2) == dims.dim(0, 2)
    assert dims.dim(-2, 3) == dims.dim(1, 3)


def test_periodic_commutators_reproduce_the_classical_dims():
    # same commutator at every index of a period-3 cycle: polynomial growth
    rel = M([[0, 1, -1, 0]])
    p = QuadraticPresentation(3, (2, 2, 2), (rel, rel, rel))
    dims = degree_dims(p, 5)
    for i in range(3):
        assert [dims.dim(i, n) for n in range(6)] == [1, 2, 3, 4, 5, 6]


def test_free_periodic_dims_are_gen_products():
    p = QuadraticPresentation(
        3, (1, 2, 3), (M([], cols=2), M([], cols=6), M([], cols=3))
    )
    dims = degree_dims(p, 4)
    assert dims.dim(0, 3) == 6
    assert dims.dim(1, 3) == 6
    assert dims.dim(2, 3) == 6
    assert dims.dim(0, 4) == 6
    assert dims.dim(1, 4) == 12
    assert dims.dim(2, 4) == 18


def test_dimension_cap_guards_ambient_size(monkeypatch):
    monkeypatch.setenv("HELIXKIT_DIM_CAP", "10")
    with pytest.raises(DimensionCapExceeded):
        degree_dims(free_presentation(2), 4)
    monkeypatch.setenv("HELIXKIT_DIM_CAP", "1000000")
    assert degree_dims(free_presentation(2), 4).dim(0, 4) == 16


def test_dim_accessor_rejects_out_of_range_degrees():
    dims = degree_dims(sym_presentation(2), 3)
    with pytest.raises(ValueError):
        dims.dim(0, 4)
    with pytest.raises(ValueError):
        dims.dim(0, -1)


def test_dimtable_csv():
    dims = degree_dims(sym_presentation(2), 2)
    assert dims.to_csv() == (
        "index,degree,dim\n0,0,1\n0,1,2\n0,2,3\n"
    )


# ----------------------------------------------------------------- witness


def test_witness_symmetric_three_variables():
    rep = koszulity_witness(sym_presentation(3), 4)
    assert rep.passed
    assert rep.label == "witness"
    e = next(x for x in rep.entries if x.j == 0 and x.q == 2)
    assert e.value == 0 and e.ok


def test_witness_diagonal_is_one():
    rep = koszulity_witness(sym_presentation(2), 3)
    e = next(x for x in rep.entries if x.j == 0 and x.q == 0)
    assert e.value == 1 and e.ok


def test_witness_equigen_model_d5():
    rep = koszulity_witness(EquigenModel(5), 6)
    assert rep.passed
    e = next(x for x in rep.entries if x.j == 0 and x.q == 3)
    assert e.value == 0


def test_witness_holds_for_the_dual_too():
    assert koszulity_witness(koszul_dual(sym_presentation(3)), 4).passed
    assert koszulity_witness(koszul_dual(sym_presentation(2)), 4).passed


def test_witness_flags_perturbed_dimension_data(monkeypatch):
    real = quadratic.hilbert_A

    def bumped(model, n):
        s = real(model, n)
        cs = list(s.coeffs)
        cs[3] += 1
        return TruncatedSeries(cs)

    monkeypatch.setattr(quadratic, "hilbert_A", bumped)
    rep = koszulity_witness(EquigenModel(5), 6)
    assert not rep.passed
    assert rep.label == "failed"
    assert any(e.j == 0 and e.q == 3 and not e.ok for e in rep.entries)


def test_witness_on_periodic_mixed_reports_honestly():
    # arbitrary presentations may fail; the report just says where
    rep = koszulity_witness(periodic_mixed(), 4)
    assert all(e.ok == (e.value == (1 if e.j == e.q else 0)) for e in rep.entries)


# ------------------------------------------------------------------ series


H_A_5 = [1, 5, 20, 76, 285, 1065, 3976, 14840, 55385, 206701, 771420]
H_B_5 = [1, 5, 20, 75, 280, 1045, 3900, 14555, 54320, 202725, 756580]
H_B_3 = [1, 3, 6, 9, 12, 15, 18, 21, 24, 27, 30]


def test_hilbert_frozen_tables():
    assert list(hilbert_A(EquigenModel(5), 10).coeffs) == H_A_5
    assert list(hilbert_B(EquigenModel(5), 10).coeffs) == H_B_5
    assert list(hilbert_B(EquigenModel(3), 10).coeffs) == H_B_3


def test_hilbert_requires_order_three():
    with pytest.raises(ValueError):
        hilbert_A(EquigenModel(5), 2)
    with pytest.raises(ValueError):
        hilbert_B(EquigenModel(5), 2)


def test_hilbert_denominator_identity():
    for d in (3, 5, 7, 9, 11, 13):
        h = hilbert_A(EquigenModel(d), 24)
        poly = TruncatedSeries([1, -d, d, -1]).with_order(24)
        assert poly * h == TruncatedSeries([1]).with_order(24)


def test_hilbert_linear_recursion():
    for d in (3, 5, 7, 11):
        a = hilbert_A(EquigenModel(d), 12).coeffs
        for i in range(1, 10):
            assert a[i + 3] == d * a[i + 2] - d * a[i + 1] + a[i]
        b = hilbert_B(EquigenModel(d), 6).coeffs
        assert a[3] == d * a[2] - d * a[1] + a[0]
        assert b[3] == d * b[2] - d * b[1] + b[0] - 1


def test_hilbert_B_matches_table_degrees():
    for d in (5, 7):
        b = hilbert_B(EquigenModel(d), 8).coeffs
        table = invariants_from_seed(Seed(0, Fraction(d, 2), d), 8)
        origin = ChernVector(1, 0)
        for i in range(1, 9):
            row = table.rows[i]
            assert b[i] == euler_pairing(origin, ChernVector(row.r, row.d))


def test_cross_check_hilbert():
    assert cross_check_hilbert(EquigenModel(5), 10) == (True, None)
    assert cross_check_hilbert(EquigenModel(7), 10) == (True, None)
    assert cross_check_hilbert(EquigenModel(3), 10) == (True, None)
    with pytest.raises(UnsupportedD):
        cross_check_hilbert(EquigenModel(4), 10)
    with pytest.raises(UnsupportedD):
        cross_check_hilbert(EquigenModel(6), 10)


def test_normal_quotient_check():
    assert normal_quotient_check(EquigenModel(5), 30)
    assert normal_quotient_check(EquigenModel(7), 30)
    with pytest.raises(ValueError):
        normal_quotient_check(EquigenModel(5), 5)


def test_normal_quotient_detects_perturbation(monkeypatch):
    real = quadratic.hilbert_B

    def bumped(model, n):
        s = real(model, n)
        cs = list(s.coeffs)
        cs[3] += 1
        return TruncatedSeries(cs)

    monkeypatch.setattr(quadratic, "hilbert_B", bumped)
    assert not normal_quotient_check(EquigenModel(5), 12)


def test_frobenius_profile():
    assert frobenius_profile(EquigenModel(5)) == (1, 5, 5, 1)
    assert frobenius_profile(EquigenModel(3)) == (1, 3, 3, 1)


def test_equigenerated_detect():
    assert equigenerated_detect((5, 5, 5)) == 5
    assert equigenerated_detect((3, 3, 3)) == 3
    assert equigenerated_detect((2, 5, 3)) is None
    with pytest.raises(ValueError):
        equigenerated_detect((0, 1, 1))
    with pytest.raises(ValueError):
        equigenerated_detect((1, 1))


def test_equigen_model_rejects_small_d():
    with pytest.raises(UnsupportedD):
        EquigenModel(2)


# --------------------------------------------------------- classical fixture


def test_classical_fixture_dual_dims():
    for n in (1, 2, 3):
        p, expected = classical_euler_fixture(n)
        assert expected == tuple(
            _binom(n + 1, l) for l in range(n + 2)
        ) + (0,)
        dims = degree_dims(koszul_dual(p), n + 2)
        assert tuple(dims.dim(0, k) for k in range(n + 3)) == expected


def test_classical_fixture_bounds():
    with pytest.raises(ValueError):
        classical_euler_fixture(0)
    with pytest.raises(ValueError):
        classical_euler_fixture(5)


def test_classical_fixture_witness():
    p, _ = classical_euler_fixture(2)
    assert koszulity_witness(p, 4).passed


def _binom(n, k):
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out
