import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fourfold.catalog import catalog_get
from fourfold.errors import CapacityError, PremiseError
from fourfold.exact import quadratic_form
from fourfold.monopole import (
    CurvatureBounds,
    Inconclusive,
    MonopoleClassSet,
    adjunction_genus_bound,
    beta_squared,
    beta_squared_box,
    beta_squared_faces,
    beta_squared_with_witness,
    curvature_bounds,
    genus_lower_bound,
    invariant_Ir,
    invariant_Is_Y_K,
    lambda_bar_k,
    monopole_classes_for_sum,
    _beta_squared_support_sets,
)
from fourfold.surgery import connected_sum
from fourfold.symbolic import SymbolicValue

from oracles import (
    FULL_MESH_POINT_CAP,
    MESH_DEN,
    box_mesh_max,
    box_mesh_sample_max,
    mesh_error_bound,
)

K3 = catalog_get("K3")
SIGMA33 = catalog_get("Sigma(3,3)")
CP2BAR = catalog_get("CP2bar")
S1XS3 = catalog_get("S1xS3")


def _orbit(diag):
    d = len(diag)
    gram = tuple(tuple(diag[i] if i == j else 0 for j in range(d)) for i in range(d))
    classes = tuple(itertools.product((1, -1), repeat=d))
    return MonopoleClassSet(classes=classes, gram=gram)


def test_monopole_classes_for_sum():
    s = monopole_classes_for_sum([SIGMA33, SIGMA33])
    assert len(s.classes) == 4
    assert s.gram == ((32, 0), (0, 32))
    assert s.is_symmetric() and s.is_sign_orbit()
    s2 = monopole_classes_for_sum([SIGMA33, SIGMA33], CP2BAR)
    assert len(s2.classes) == 8
    assert (1, 1, 1) in s2.classes and (1, 1, -1) in s2.classes
    assert s2.gram == ((32, 0, 0), (0, 32, 0), (0, 0, -1))


def test_monopole_classes_premises():
    with pytest.raises(PremiseError):
        monopole_classes_for_sum([])
    with pytest.raises(PremiseError):
        monopole_classes_for_sum([SIGMA33, SIGMA33], K3)  # b+(N) != 0
    with pytest.raises(PremiseError):
        monopole_classes_for_sum([catalog_get("CP2"), K3])


def test_beta_squared_examples():
    assert beta_squared(_orbit([32, 32])) == 64
    assert beta_squared(_orbit([32, 32, -1])) == 64
    null = MonopoleClassSet(classes=((2, 0), (-2, 0)),
                            gram=((0, 1), (1, 0)))
    assert beta_squared(null) == 0


def test_beta_squared_witness_is_lex_least():
    value, witness = beta_squared_with_witness(_orbit([32, 32, -1]))
    assert value == 64
    assert witness == (Fraction(-1), Fraction(-1), Fraction(0))
    value2, witness2 = beta_squared_faces(_orbit([32, 32, -1]))
    assert (value2, witness2) == (value, witness)


def test_beta_squared_rejects_asymmetric():
    bad = MonopoleClassSet(classes=((1, 1), (1, -1), (-1, 1)),
                           gram=((1, 0), (0, 1)))
    with pytest.raises(PremiseError):
        beta_squared(bad)


def test_beta_squared_empty():
    with pytest.raises(PremiseError):
        beta_squared(MonopoleClassSet(classes=(), gram=()))


def test_general_cap():
    pts = tuple((i,) + (0,) * 16 for i in range(-9, 10) if i != 0)
    assert len(pts) > 16
    big = MonopoleClassSet(classes=pts, gram=tuple(
        tuple(1 if i == j else 0 for j in range(17)) for i in range(17)))
    with pytest.raises(CapacityError):
        beta_squared(big)


@given(st.integers(1, 5), st.integers())
@settings(max_examples=60, deadline=None)
def test_box_equals_faces_equals_positive_sum(d, seed):
    rng = random.Random(seed)
    diag = [rng.randint(-64, 64) for _ in range(d)]
    orbit = _orbit(diag)
    expected = sum(x for x in diag if x > 0)
    box_val, box_wit = beta_squared_box(orbit)
    face_val, face_wit = beta_squared_faces(orbit)
    assert box_val == expected
    assert face_val == expected
    assert box_wit == face_wit


def test_support_set_solver_agrees_on_small_orbits():
    rng = random.Random(7)
    for d in (1, 2, 3):
        for _ in range(10):
            diag = [rng.randint(-64, 64) for _ in range(d)]
            orbit = _orbit(diag)
            general_val, _ = _beta_squared_support_sets(orbit)
            assert general_val == sum(x for x in diag if x > 0)


def test_non_diagonal_sign_orbit():
    gram = ((2, 1), (1, 2))
    orbit = MonopoleClassSet(classes=tuple(itertools.product((1, -1), repeat=2)),
                             gram=gram)
    face_val, _ = beta_squared_faces(orbit)
    general_val, _ = _beta_squared_support_sets(orbit)
    assert face_val == general_val == 6
    with pytest.raises(PremiseError):
        beta_squared_box(orbit)  # box reduction needs a diagonal Gram
    assert face_val >= box_mesh_max(gram)


def test_general_solver_interior_maximum():
    # max of a negative-definite form over any hull is 0 at the origin
    pts = ((1, 0), (-1, 0), (0, 1), (0, -1))
    s = MonopoleClassSet(classes=pts, gram=((-2, 0), (0, -3)))
    val, wit = beta_squared_with_witness(s)
    assert val == 0
    assert wit == (Fraction(0), Fraction(0))


@pytest.mark.parametrize("d,seed", [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2),
                                    (3, 0), (3, 1), (3, 2), (4, 0), (4, 1)])
def test_mesh_oracle_bounds_solver(d, seed):
    rng = random.Random(seed)
    diag = [rng.randint(-64, 64) for _ in range(d)]
    orbit = _orbit(diag)
    solver = beta_squared(orbit)
    mesh = box_mesh_max(orbit.gram)
    assert solver >= mesh
    assert solver - mesh <= mesh_error_bound(orbit.gram)


def test_mesh_sample_lower_bounds_rank5():
    rng = random.Random(99)
    diag = [rng.randint(-64, 64) for _ in range(5)]
    orbit = _orbit(diag)
    solver = beta_squared(orbit)
    sample = box_mesh_sample_max(orbit.gram, rng, count=50_000)
    assert solver >= sample
    assert (2 * MESH_DEN + 1) ** 5 > FULL_MESH_POINT_CAP  # full mesh out of reach


@given(st.integers(1, 4), st.integers())
@settings(max_examples=60, deadline=None)
def test_beta_squared_symmetry_and_midpoints(d, seed):
    rng = random.Random(seed)
    diag = [rng.randint(-64, 64) for _ in range(d)]
    orbit = _orbit(diag)
    val = beta_squared(orbit)
    assert beta_squared(orbit.negated()) == val
    for v, w in itertools.combinations(orbit.classes, 2):
        mid = [Fraction(a + b, 2) for a, b in zip(v, w)]
        assert val >= quadratic_form(orbit.gram, mid)


def test_beta_squared_lower_bound_sum_c1sq():
    s2 = monopole_classes_for_sum([SIGMA33, SIGMA33], CP2BAR)
    assert beta_squared(s2) >= 32 + 32


def test_curvature_bounds():
    m = connected_sum([SIGMA33, SIGMA33])
    s = monopole_classes_for_sum([SIGMA33, SIGMA33])
    cb = curvature_bounds(m, s)
    assert cb.scalar_bound == SymbolicValue(2048, 2)
    assert cb.mixed_bound == SymbolicValue(72 * 64, 2)
    assert cb.ricci_bound == SymbolicValue(8 * (8 - 4 + 64), 2)
    m2 = connected_sum([SIGMA33, SIGMA33, CP2BAR])
    s2 = monopole_classes_for_sum([SIGMA33, SIGMA33], CP2BAR)
    cb2 = curvature_bounds(m2, s2)
    assert cb2.ricci_bound == SymbolicValue(552, 2)
    # beta^2 = 0: scalar bound degenerates to 0
    y = catalog_get("Y(2)")
    m3 = connected_sum([y, y])
    s3 = monopole_classes_for_sum([y, y])
    cb3 = curvature_bounds(m3, s3)
    assert cb3.scalar_bound == SymbolicValue(0)


def test_curvature_ricci_inconclusive_without_decomposition():
    s = monopole_classes_for_sum([SIGMA33, SIGMA33])
    lone = catalog_get("K3")
    cb = curvature_bounds(lone, s)
    assert isinstance(cb.ricci_bound, Inconclusive)


def test_invariant_is_y_k():
    m = connected_sum([SIGMA33, SIGMA33])
    inv = invariant_Is_Y_K(m)
    assert inv.Is == SymbolicValue(2048, 2)
    assert inv.Y == SymbolicValue(-32, 1, 2)
    assert inv.K == inv.Y
    # Is = |Y|^2 as symbolic values
    assert abs(inv.Y).squared() == inv.Is
    m3 = connected_sum([SIGMA33, SIGMA33, SIGMA33, S1XS3])
    inv3 = invariant_Is_Y_K(m3)
    assert inv3.Is == SymbolicValue(32 * 96, 2)
    # total c1^2 = 0: the formula degenerates to zero
    y = catalog_get("Y(2)")
    inv0 = invariant_Is_Y_K(connected_sum([y, y]))
    assert inv0.Is == SymbolicValue(0)
    assert inv0.Y == SymbolicValue(0)


def test_invariant_is_y_k_premises():
    kod = catalog_get("Kodaira")
    # Kodaira is not Kaehler
    res = invariant_Is_Y_K(connected_sum([kod, kod]))
    assert isinstance(res, Inconclusive)
    assert "MinimalKaehler" in res.reason
    # a lone manifold is not a 2-3 piece sum
    assert isinstance(invariant_Is_Y_K(K3), Inconclusive)


def test_lambda_bar_k():
    m = connected_sum([SIGMA33, SIGMA33])
    y = invariant_Is_Y_K(m).Y
    assert lambda_bar_k(m, 1) == y
    assert lambda_bar_k(m, Fraction(2, 3)) == y.scale(Fraction(2, 3))
    assert lambda_bar_k(m, Fraction(2, 3)) == SymbolicValue(Fraction(-64, 3), 1, 2)
    assert isinstance(lambda_bar_k(m, Fraction(1, 2)), Inconclusive)
    cp2 = catalog_get("CP2")
    assert lambda_bar_k(cp2, 1) == SymbolicValue.plus_infinity()
    assert lambda_bar_k(cp2, Fraction(1, 10)) == SymbolicValue.plus_infinity()
    assert isinstance(lambda_bar_k(cp2, 0), Inconclusive)


def test_invariant_ir():
    m = connected_sum([SIGMA33, SIGMA33, CP2BAR])
    assert invariant_Ir(m) == SymbolicValue(552, 2)
    m0 = connected_sum([SIGMA33, SIGMA33])
    assert invariant_Ir(m0) == SymbolicValue(544, 2)
    # strict gap Ir > Is/4
    inv = invariant_Is_Y_K(m0)
    assert invariant_Ir(m0) > inv.Is.scale(Fraction(1, 4))
    # c1^2 = 0 parts rejected
    y = catalog_get("Y(2)")
    assert isinstance(invariant_Ir(connected_sum([y, y])), Inconclusive)


def test_invariant_ir_gap_property():
    # Ir > Is/4 whenever both are defined and 2chi+3tau(N) <= 4
    cases = [
        connected_sum([SIGMA33, SIGMA33]),
        connected_sum([SIGMA33, SIGMA33, CP2BAR]),
        connected_sum([SIGMA33, catalog_get("Sigma(3,5)"), CP2BAR, CP2BAR, S1XS3]),
        connected_sum([SIGMA33, SIGMA33, SIGMA33, S1XS3, S1XS3]),
    ]
    for m in cases:
        ir = invariant_Ir(m)
        inv = invariant_Is_Y_K(m)
        assert not isinstance(ir, Inconclusive)
        assert ir > inv.Is.scale(Fraction(1, 4))


def test_invariant_ir_specialized_formula():
    # N = k CP2bar # l (S1xS3): bracket = k + 4(n + l - 1) + sum c1^2
    for k, l in ((1, 0), (2, 3), (0, 2)):
        m = connected_sum([SIGMA33, SIGMA33] + [CP2BAR] * k + [S1XS3] * l)
        expected = SymbolicValue(8 * (k + 4 * (2 + l - 1) + 64), 2)
        assert invariant_Ir(m) == expected


def test_genus_lower_bound_examples():
    assert genus_lower_bound(0, -2) == 2
    assert genus_lower_bound(0, 0) == 1
    assert genus_lower_bound(4, 0) == 3
    with pytest.raises(PremiseError):
        genus_lower_bound(-1, 0)


def test_adjunction_wrapper():
    m = connected_sum([SIGMA33, SIGMA33])
    g = m.canonical_spinc
    assert adjunction_genus_bound(m, g, (1, 0, 0, 0)) == 1
    assert adjunction_genus_bound(m, g, (1, 1, 0, 0)) == 1
    # class of negative square is rejected
    with pytest.raises(PremiseError):
        adjunction_genus_bound(m, g, (1, -1, 0, 0))
    # declared self-intersection must match the lattice
    with pytest.raises(PremiseError):
        adjunction_genus_bound(m, g, (1, 0, 0, 0), self_int=2)
    # inadmissible base: a lone K3 is not a certified 2-3 piece sum
    with pytest.raises(PremiseError):
        adjunction_genus_bound(K3, K3.canonical_spinc, (1, 0))
