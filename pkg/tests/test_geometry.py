import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypersem.errors import (
    DegenerateProjection,
    DimensionMismatch,
    NonFinite,
    OutOfRange,
    SpaceMismatch,
    UnitNormViolation,
    ZeroVector,
)
from hypersem.geometry import (
    ConditionSet,
    LatentCode,
    SemanticDirection,
    condition,
    cosine,
    distance,
    edit,
    interpolate,
    normalize,
)


def unit(values):
    v = np.asarray(values, dtype=np.float64)
    return v / np.linalg.norm(v)


def direction(values, name="n", space="Z"):
    return SemanticDirection(name=name, normal=unit(values), space=space)


def e(i, d=4):
    v = np.zeros(d)
    v[i] = 1.0
    return v


@st.composite
def latent_and_direction(draw, d=8):
    z = draw(
        st.lists(st.floats(-10, 10, allow_nan=False, width=64), min_size=d, max_size=d)
    )
    n = draw(
        st.lists(st.floats(-1, 1, allow_nan=False, width=64), min_size=d, max_size=d).filter(
            lambda v: np.linalg.norm(v) > 1e-3
        )
    )
    return LatentCode(np.array(z)), direction(n)


class TestNormalize:
    def test_axis_scaling(self):
        assert np.array_equal(normalize([3.0, 0.0, 0.0, 0.0]), [1.0, 0.0, 0.0, 0.0])

    def test_zero_vector(self):
        with pytest.raises(ZeroVector):
            normalize([0.0, 0.0, 0.0, 0.0])

    def test_diagonal(self):
        expected = np.array([1.0, 1.0, 0.0, 0.0]) / np.sqrt(2.0)
        assert np.allclose(normalize([1.0, 1.0, 0.0, 0.0]), expected, atol=1e-15)

    def test_parallel(self):
        v = np.array([0.3, -2.0, 5.0, 1.0])
        u = normalize(v)
        assert abs(np.linalg.norm(u) - 1.0) < 1e-12
        assert abs(u @ v - np.linalg.norm(v)) < 1e-9


class TestDistance:
    def test_axis_projection(self):
        z = LatentCode([3.0, 0.0, 0.0, 0.0])
        assert distance(direction(e(0)), z) == 3.0

    def test_origin_on_every_hyperplane(self):
        z = LatentCode(np.zeros(4))
        assert distance(direction([0.2, -0.5, 1.0, 0.1]), z) == 0.0

    def test_diagonal_dot(self):
        n = direction([1.0, 1.0, 0.0, 0.0])
        z = LatentCode([1.0, 1.0, 0.0, 0.0])
        assert abs(distance(n, z) - np.sqrt(2.0)) < 1e-15

    def test_signed(self):
        n = direction(e(1))
        assert distance(n, LatentCode([0.0, -2.5, 0.0, 0.0])) == -2.5

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            distance(direction(e(0, 5), "n"), LatentCode(np.zeros(4)))

    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatch):
            distance(direction(e(0), space="W"), LatentCode(np.zeros(4), "Z"))


class TestEdit:
    def test_from_origin(self):
        z = edit(LatentCode(np.zeros(6)), direction(e(0, 6)), 2.0)
        assert np.array_equal(z.values, [2.0, 0, 0, 0, 0, 0])

    def test_alpha_zero_identity(self):
        z = LatentCode([0.7, -0.2, 1.1, 0.0])
        assert edit(z, direction([1, 2, 3, 4]), 0.0) == z

    def test_distance_cancellation(self):
        n = direction([0.3, 1.0, -0.4, 0.8])
        z = LatentCode([1.0, -2.0, 0.5, 0.3])
        d0 = distance(n, z)
        assert abs(distance(n, edit(z, n, -d0))) < 1e-12

    def test_nonfinite_alpha(self):
        with pytest.raises(NonFinite):
            edit(LatentCode(np.zeros(4)), direction(e(0)), float("nan"))

    @given(latent_and_direction(), st.floats(-50, 50), st.floats(-50, 50))
    @settings(max_examples=200, deadline=None)
    def test_additivity_exact(self, zn, alpha, beta):
        z, n = zn
        chained = edit(edit(z, n, alpha), n, beta)
        direct = edit(z, n, alpha + beta)
        assert chained == direct

    @given(latent_and_direction(), st.floats(-20, 20))
    @settings(max_examples=200, deadline=None)
    def test_round_trip_exact(self, zn, alpha):
        z, n = zn
        assert edit(edit(z, n, alpha), n, -alpha) == z

    @given(latent_and_direction(), st.floats(-20, 20))
    @settings(max_examples=200, deadline=None)
    def test_distance_shift(self, zn, alpha):
        z, n = zn
        assert distance(n, edit(z, n, alpha)) - distance(n, z) == pytest.approx(alpha, abs=1e-9)


class TestInterpolate:
    def test_endpoints(self):
        z1 = LatentCode([1.0, 2.0, 3.0, 4.0])
        z2 = LatentCode([-1.0, 0.0, 1.0, 2.0])
        assert interpolate(z1, z2, 0.0) == z1
        assert interpolate(z1, z2, 1.0) == z2

    def test_midpoint(self):
        z1 = LatentCode(np.zeros(4))
        z2 = LatentCode([2.0, 2.0, 0.0, 0.0])
        assert np.array_equal(interpolate(z1, z2, 0.5).values, [1.0, 1.0, 0.0, 0.0])

    def test_t_out_of_range(self):
        z = LatentCode(np.zeros(4))
        with pytest.raises(OutOfRange):
            interpolate(z, z, 1.5)

    def test_distance_linearity(self):
        rng = np.random.default_rng(3)
        n = direction(rng.standard_normal(16))
        z1 = LatentCode(rng.standard_normal(16))
        z2 = LatentCode(rng.standard_normal(16))
        d1, d2 = distance(n, z1), distance(n, z2)
        for t in (0.1, 0.25, 0.5, 0.9):
            assert distance(n, interpolate(z1, z2, t)) == pytest.approx(
                (1 - t) * d1 + t * d2, abs=1e-9
            )


class TestCosine:
    def test_self(self):
        n = direction([0.2, 0.5, -1.0, 0.3])
        assert cosine(n, n) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_axes(self):
        assert cosine(direction(e(0)), direction(e(2))) == 0.0

    def test_diagonal(self):
        assert cosine(direction(e(0)), direction([1, 1, 0, 0])) == pytest.approx(
            1 / np.sqrt(2), abs=1e-15
        )


class TestCondition:
    def test_orthogonal_primal_unchanged(self):
        primal = direction(e(0), "a")
        cond = ConditionSet((direction(e(1), "b"),))
        out = condition(primal, cond)
        assert np.allclose(out.normal, primal.normal, atol=1e-15)

    def test_primal_equals_condition(self):
        primal = direction([1, 2, 3, 4], "a")
        cond = ConditionSet((direction([1, 2, 3, 4], "b"),))
        with pytest.raises(DegenerateProjection):
            condition(primal, cond)

    def test_single_condition_formula(self):
        # e1 conditioned on (1,1,0,0)/sqrt(2) -> (1,-1,0,0)/sqrt(2)
        out = condition(direction(e(0), "a"), ConditionSet((direction([1, 1, 0, 0], "b"),)))
        assert np.allclose(out.normal, unit([1.0, -1.0, 0.0, 0.0]), atol=1e-12)

    def test_orthogonality_and_idempotence(self):
        rng = np.random.default_rng(11)
        d = 24
        primal = direction(rng.standard_normal(d), "p")
        conds = ConditionSet(
            tuple(direction(rng.standard_normal(d), f"c{i}") for i in range(4))
        )
        out = condition(primal, conds)
        for c in conds.directions:
            assert abs(cosine(out, c)) <= 1e-9
        again = condition(out, conds)
        assert np.allclose(again.normal, out.normal, atol=1e-9)

    def test_single_condition_equals_general_path(self):
        rng = np.random.default_rng(5)
        d = 12
        p = direction(rng.standard_normal(d), "p")
        c = direction(rng.standard_normal(d), "c")
        general = condition(p, ConditionSet((c,)))
        explicit = p.normal - (p.normal @ c.normal) * c.normal
        assert np.max(np.abs(general.normal * np.linalg.norm(explicit) - explicit)) < 1e-12

    def test_motion_preserves_condition_distance(self):
        rng = np.random.default_rng(7)
        d = 16
        p = direction(rng.standard_normal(d), "p")
        c = direction(rng.standard_normal(d), "c")
        out = condition(p, ConditionSet((c,)))
        z = LatentCode(rng.standard_normal(d))
        for alpha in (-7.5, -1.0, 0.5, 4.0):
            assert distance(c, edit(z, out, alpha)) == pytest.approx(
                distance(c, z), abs=1e-9
            )

    def test_degenerate_condition_set(self):
        a = direction([1, 0, 0, 0], "a")
        b = direction([1, 1e-8, 0, 0], "b")
        with pytest.raises(DegenerateProjection):
            ConditionSet((a, b))

    def test_duplicate_names_rejected(self):
        with pytest.raises(DegenerateProjection):
            ConditionSet((direction(e(0), "x"), direction(e(1), "x")))


class TestTypes:
    def test_min_dimension(self):
        with pytest.raises(DimensionMismatch):
            LatentCode([1.0, 2.0, 3.0])

    def test_nonfinite_rejected(self):
        with pytest.raises(NonFinite):
            LatentCode([1.0, np.inf, 0.0, 0.0])

    def test_direction_must_be_unit(self):
        with pytest.raises(UnitNormViolation):
            SemanticDirection(name="bad", normal=np.array([0.5, 0.0, 0.0, 0.0]))

    def test_latent_immutable(self):
        z = LatentCode(np.zeros(4))
        with pytest.raises(AttributeError):
            z.space = "W"
        with pytest.raises(ValueError):
            z.values[0] = 1.0
