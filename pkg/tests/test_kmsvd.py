import numpy as np
import pytest

from tsvdkit import (
    best_trank_one,
    frobenius_norm,
    identity_tensor,
    idft_mode3,
    is_f_diagonal,
    is_orthogonal,
    km_equal,
    km_mapping,
    random_orthogonal,
    sigma1,
    sigma1_upper_bound_check,
    singular_values,
    tprod,
    transpose,
    truncate_trank,
    tsvd,
)

from conftest import fdiagonal_fixture, fdiagonal_fixture_image, random_tensor


def reconstruct(fac):
    return tprod(fac.u, tprod(fac.s, transpose(fac.v)))


def diagonal_tubes(s):
    r = min(s.shape[0], s.shape[1])
    return s[np.arange(r), np.arange(r), :]


class TestKmMapping:
    def test_worked_example(self):
        s = km_mapping(fdiagonal_fixture())
        np.testing.assert_allclose(s, fdiagonal_fixture_image(), atol=1e-9)
        assert is_f_diagonal(s, tol=1e-12)

    def test_single_entry(self, rng):
        for _ in range(5):
            a = np.zeros((4, 3, 5))
            i, j, k = rng.integers(0, [4, 3, 5])
            value = float(rng.standard_normal()) or 1.0
            a[i, j, k] = value
            s = km_mapping(a)
            assert s[0, 0, 0] == pytest.approx(abs(value), rel=1e-12)
            mask = np.ones_like(s, dtype=bool)
            mask[0, 0, 0] = False
            assert np.abs(s[mask]).max() <= 1e-12 * abs(value)

    def test_p_one_reduces_to_matrix_svd(self, rng):
        a = rng.standard_normal((4, 3, 1))
        s = km_mapping(a)
        np.testing.assert_allclose(
            np.diag(s[:, :, 0])[:3], np.linalg.svd(a[:, :, 0], compute_uv=False),
            atol=1e-12,
        )

    def test_first_slice_diagonal_nonnegative(self, rng):
        for _ in range(5):
            s = km_mapping(random_tensor(rng))
            assert diagonal_tubes(s)[:, 0].min() >= 0

    def test_self_dominance(self, rng):
        # the (1, 1, 1) entry dominates every diagonal entry of the image
        for _ in range(10):
            s = km_mapping(random_tensor(rng))
            tubes = diagonal_tubes(s)
            assert s[0, 0, 0] >= np.abs(tubes).max() - 1e-12 * (1 + s[0, 0, 0])

    def test_sigma_multiset_is_fixed_point(self, rng):
        for _ in range(5):
            s = km_mapping(random_tensor(rng))
            s2 = km_mapping(s)
            first = np.sort(np.abs(diagonal_tubes(s)), axis=None)
            second = np.sort(np.abs(diagonal_tubes(s2)), axis=None)
            np.testing.assert_allclose(
                second, first, atol=1e-9 * (1 + first.max())
            )


class TestTsvd:
    def test_reconstruction_random(self, rng):
        a = rng.standard_normal((6, 5, 4))
        fac = tsvd(a)
        assert frobenius_norm(a - reconstruct(fac)) <= 1e-9 * frobenius_norm(a)
        assert is_orthogonal(fac.u, tol=1e-9)
        assert is_orthogonal(fac.v, tol=1e-9)
        assert is_f_diagonal(fac.s, tol=1e-10 * frobenius_norm(fac.s))
        np.testing.assert_allclose(fac.s, km_mapping(a), atol=1e-10)

    def test_tube_energy_ordering(self, rng):
        for _ in range(10):
            fac = tsvd(random_tensor(rng))
            energy = (diagonal_tubes(fac.s) ** 2).sum(axis=1)
            assert np.all(np.diff(energy) <= 1e-9 * (1 + energy.max()))

    def test_forward_construction_oracle(self, rng):
        # assemble a tensor from a known f-diagonal middle factor whose
        # transform has sorted nonnegative symmetric diagonals, then recover it
        m = n = 4
        p = 5
        vals = np.sort(rng.random((min(m, n), p)), axis=0)[::-1]
        vals[:, 1:] = (vals[:, 1:] + vals[:, :0:-1]) / 2.0  # symmetric tubes
        spec = np.zeros((m, n, p), dtype=complex)
        spec[np.arange(m), np.arange(n), :] = vals
        d = idft_mode3(spec)
        q1 = random_orthogonal(m, p, 31)
        q2 = random_orthogonal(n, p, 32)
        a = tprod(q1, tprod(d, transpose(q2)))
        np.testing.assert_allclose(tsvd(a).s, km_mapping(d), atol=1e-8)
        np.testing.assert_allclose(km_mapping(d), d, atol=1e-8)

    def test_zero_tensor(self):
        fac = tsvd(np.zeros((3, 4, 2)))
        assert np.array_equal(fac.s, np.zeros((3, 4, 2)))
        assert is_orthogonal(fac.u, tol=1e-9)
        assert is_orthogonal(fac.v, tol=1e-9)


class TestSingularValues:
    def test_worked_example_report(self):
        report = singular_values(fdiagonal_fixture())
        np.testing.assert_allclose(
            report.singular_values, [12, 6, 5, 3, 3, 0, 0, 0, 0], atol=1e-9
        )
        np.testing.assert_allclose(
            report.t_singular_values, [np.sqrt(162.0), 6.0, 5.0], atol=1e-9
        )
        assert report.t_rank == 5
        assert report.tubal_rank == 3

    def test_single_entry(self):
        a = np.zeros((3, 3, 3))
        a[1, 2, 1] = 7.0
        report = singular_values(a)
        assert report.singular_values[0] == pytest.approx(7.0, rel=1e-12)
        assert report.t_rank == 1
        assert report.tubal_rank == 1

    def test_zero_tensor(self):
        report = singular_values(np.zeros((2, 3, 4)))
        assert np.all(report.singular_values == 0)
        assert report.t_rank == 0
        assert report.tubal_rank == 0

    def test_report_invariants(self, rng):
        for _ in range(10):
            a = random_tensor(rng)
            m, n, p = a.shape
            report = singular_values(a)
            assert report.singular_values.shape == (p * min(m, n),)
            assert np.all(np.diff(report.singular_values) <= 0)
            assert np.all(np.diff(report.t_singular_values) <= 1e-12)
            assert report.singular_values[0] == pytest.approx(
                km_mapping(a)[0, 0, 0], abs=1e-12 * (1 + report.singular_values[0])
            )
            assert report.tubal_rank <= report.t_rank
            assert report.t_rank <= p * report.tubal_rank

    def test_energy_identity(self, rng):
        for _ in range(10):
            a = random_tensor(rng)
            report = singular_values(a)
            assert (report.singular_values**2).sum() == pytest.approx(
                frobenius_norm(a) ** 2, rel=1e-9
            )

    def test_rejects_negative_tol(self, rng):
        with pytest.raises(ValueError, match=">= 0"):
            singular_values(random_tensor(rng), tol=-1.0)


class TestNonSubAdditivityFixture:
    def test_summands_have_rank_one_but_sum_has_rank_five(self):
        parts = []
        for (i, j, k), value in [
            ((1, 1, 0), 6.0),
            ((0, 0, 1), 5.0),
            ((2, 2, 1), 9.0),
            ((2, 2, 2), 9.0),
        ]:
            part = np.zeros((3, 3, 3))
            part[i, j, k] = value
            parts.append(part)
        ranks = [singular_values(part).t_rank for part in parts]
        assert ranks == [1, 1, 1, 1]
        report = singular_values(sum(parts))
        assert report.t_rank == 5
        assert report.tubal_rank == 3
        assert report.t_rank > sum(ranks)


class TestTruncation:
    def test_full_rank_reconstructs(self, rng):
        a = rng.standard_normal((4, 3, 5))
        fac = tsvd(a)
        full = truncate_trank(fac, 5 * 3)
        assert frobenius_norm(a - full) <= 1e-9 * frobenius_norm(a)

    def test_worked_example_residual(self):
        a = fdiagonal_fixture()
        a1 = truncate_trank(tsvd(a), 1)
        assert frobenius_norm(a - a1) ** 2 == pytest.approx(79.0, rel=1e-8)

    def test_zero_tensor(self):
        fac = tsvd(np.zeros((2, 2, 3)))
        assert np.array_equal(truncate_trank(fac, 3), np.zeros((2, 2, 3)))

    @pytest.mark.parametrize("s", [0, -1, 16])
    def test_rejects_out_of_range(self, rng, s):
        fac = tsvd(rng.standard_normal((3, 5, 5)))
        with pytest.raises(ValueError, match="1..15"):
            truncate_trank(fac, s)

    def test_monotone_residuals(self, rng):
        a = rng.standard_normal((3, 3, 4))
        fac = tsvd(a)
        report = singular_values(a)
        residuals = [
            frobenius_norm(a - truncate_trank(fac, s)) for s in range(1, 13)
        ]
        assert all(x >= y - 1e-12 for x, y in zip(residuals, residuals[1:]))
        # kept energy accounts for the residual exactly
        for s, res in zip(range(1, 13), residuals):
            tail = np.sqrt((report.singular_values[s:] ** 2).sum())
            assert res == pytest.approx(tail, abs=1e-9 * (1 + tail))


class TestBestTrankOne:
    def test_result_has_t_rank_one(self, rng):
        a = rng.standard_normal((4, 4, 3))
        assert singular_values(best_trank_one(a)).t_rank == 1

    def test_energy_split(self, rng):
        for _ in range(5):
            a = random_tensor(rng)
            a1 = best_trank_one(a)
            lhs = frobenius_norm(a - a1) ** 2
            rhs = frobenius_norm(a) ** 2 - sigma1(a) ** 2
            assert lhs == pytest.approx(rhs, abs=1e-8 * (1 + frobenius_norm(a) ** 2))

    def test_beats_random_competitors(self, rng):
        a = rng.standard_normal((4, 3, 4))
        a1 = best_trank_one(a)
        best = frobenius_norm(a - a1)
        report = singular_values(a)
        for trial in range(100):
            q1 = random_orthogonal(4, 4, 1000 + trial)
            q2 = random_orthogonal(3, 4, 2000 + trial)
            d = np.zeros((4, 3, 4))
            d[0, 0, 0] = report.singular_values[0] * (0.5 + rng.random())
            competitor = tprod(q1, tprod(d, transpose(q2)))
            assert best <= frobenius_norm(a - competitor)


class TestSigma1Bound:
    def test_random_tensors(self, rng):
        for _ in range(20):
            assert sigma1_upper_bound_check(random_tensor(rng))

    def test_identity_equality(self):
        ident = identity_tensor(3, 4)
        assert sigma1(ident) == pytest.approx(1.0, abs=1e-12)
        assert sigma1_upper_bound_check(ident)

    def test_single_entry_equality(self, rng):
        a = np.zeros((3, 4, 5))
        a[2, 1, 3] = -2.5
        assert sigma1(a) == pytest.approx(2.5, abs=1e-10)

    def test_subadditivity(self, rng):
        for _ in range(20):
            m, n, p = 4, 3, 4
            x = rng.standard_normal((m, n, p))
            y = rng.standard_normal((m, n, p))
            assert sigma1(x + y) <= sigma1(x) + sigma1(y) + 1e-9


class TestKmEqual:
    def test_orthogonal_equivalence(self, rng):
        a = rng.standard_normal((5, 4, 3))
        y = random_orthogonal(5, 3, 71)
        z = random_orthogonal(4, 3, 72)
        assert km_equal(a, tprod(y, tprod(a, transpose(z))), tol=1e-8)

    def test_scaling_changes_image(self, rng):
        a = rng.standard_normal((3, 3, 2))
        assert not km_equal(a, 2.0 * a, tol=1e-8)

    def test_reflexive(self, rng):
        a = rng.standard_normal((3, 3, 2))
        assert km_equal(a, a, tol=1e-15)

    def test_dimension_mismatch(self, rng):
        with pytest.raises(ValueError, match="mismatch"):
            km_equal(rng.standard_normal((3, 3, 2)), rng.standard_normal((3, 3, 3)))


class TestTubalRankFactorization:
    def test_synthesized_rank_detected(self, rng):
        m, n, p, r = 6, 5, 4, 2
        b = rng.standard_normal((m, r, p))
        c = rng.standard_normal((r, n, p))
        a = tprod(b, c)
        assert singular_values(a).tubal_rank == r

    def test_truncated_factorization_reconstructs(self, rng):
        m, n, p, r0 = 5, 6, 3, 3
        a = tprod(rng.standard_normal((m, r0, p)), rng.standard_normal((r0, n, p)))
        report = singular_values(a)
        r = report.tubal_rank
        fac = tsvd(a)
        b = tprod(fac.u, fac.s)[:, :r, :]
        c = transpose(fac.v)[:r, :, :]
        assert frobenius_norm(a - tprod(b, c)) <= 1e-9 * (1 + frobenius_norm(a))

    def test_lower_rank_factorizations_fall_short(self, rng):
        a = rng.standard_normal((4, 4, 3))
        report = singular_values(a)
        r = report.tubal_rank
        lam_r = report.t_singular_values[r - 1]
        for _ in range(5):
            b = rng.standard_normal((4, r - 1, 3))
            c = rng.standard_normal((r - 1, 4, 3))
            assert frobenius_norm(a - tprod(b, c)) > lam_r / 2.0


def test_worker_cap_does_not_change_results(rng):
    from tsvdkit import set_max_workers

    a = rng.standard_normal((6, 5, 6))
    serial = tsvd(a)
    set_max_workers(4)
    parallel = tsvd(a)
    assert np.array_equal(serial.u, parallel.u)
    assert np.array_equal(serial.s, parallel.s)
    assert np.array_equal(serial.v, parallel.v)


class TestInvarianceProperty:
    def test_mapping_invariant_under_orthogonal_products(self, rng):
        for seed in range(10):
            a = random_tensor(rng)
            m, n, p = a.shape
            y = random_orthogonal(m, p, 3 * seed)
            z = random_orthogonal(n, p, 3 * seed + 1)
            b = tprod(y, tprod(a, transpose(z)))
            sa = km_mapping(a)
            sb = km_mapping(b)
            assert frobenius_norm(sa - sb) <= 1e-8 * (1 + frobenius_norm(sa))
            ra = singular_values(a)
            rb = singular_values(b)
            np.testing.assert_allclose(
                ra.singular_values, rb.singular_values,
                atol=1e-8 * (1 + ra.singular_values[0]),
            )
            assert ra.t_rank == rb.t_rank
            assert ra.tubal_rank == rb.tubal_rank
