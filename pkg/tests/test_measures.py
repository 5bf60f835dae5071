import numpy as np
import pytest

from lupullback.errors import ShapeError
from lupullback.measures import (RR_PER_CTC, concurrence, correlation_block,
                                 entanglement_entropy, measure_report, schlienz_mahler,
                                 segre_quantity, tangle, trace_rr)
from lupullback.orbits import haar_unitary, random_pure_state
from lupullback.pullback import pullback_tensor, symmetric_spectrum
from lupullback.states import (density_from_pure, density_matrix, maximally_entangled,
                               product_pure, pure_state, schmidt_state)
from lupullback.subasis import local_family

from conftest import random_density, reduced_by_reshape


def beta(alpha):
    s = np.sin(2 * alpha)
    return (s**4 + 2 * s**2) / 3


class TestSchlienzMahler:
    def test_zero(self):
        assert schlienz_mahler(np.zeros((3, 3)), 2) == 0

    @pytest.mark.parametrize("alpha", np.linspace(0, np.pi / 4, 9))
    def test_schmidt_curve(self, alpha):
        c = correlation_block(density_from_pure(schmidt_state(alpha)))
        assert schlienz_mahler(c, 2) == pytest.approx(beta(alpha), abs=1e-12)

    def test_maximum(self):
        c = correlation_block(density_from_pure(schmidt_state(np.pi / 4)))
        assert schlienz_mahler(c, 2) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("n", [3, 4])
    def test_maximally_entangled_qudits_reach_one(self, n):
        c = correlation_block(density_from_pure(maximally_entangled(n)))
        assert schlienz_mahler(c, n) == pytest.approx(1.0, abs=1e-12)

    def test_shape(self):
        with pytest.raises(ShapeError):
            schlienz_mahler(np.zeros((3, 3)), 3)


class TestTraceRR:
    def test_product_zero(self, rng):
        rho = density_matrix(np.kron(random_density(2, rng), random_density(3, rng)), (2, 3))
        assert trace_rr(rho) == pytest.approx(0, abs=1e-14)

    def test_bell(self):
        # direct 4x4 oracle: R = rho - I/4
        rho = density_from_pure(schmidt_state(np.pi / 4)).matrix
        r = rho - np.eye(4) / 4
        assert np.trace(r @ r).real == pytest.approx(0.75, abs=1e-15)
        assert trace_rr(density_from_pure(schmidt_state(np.pi / 4))) == pytest.approx(0.75, abs=1e-14)

    def test_mixed_states_accepted(self, rng):
        for _ in range(5):
            r = random_density(4, rng)
            red1, red2 = reduced_by_reshape(r, (2, 2), 1), reduced_by_reshape(r, (2, 2), 2)
            d = r - np.kron(red1, red2)
            want = np.trace(d @ d.conj().T).real
            assert trace_rr(density_matrix(r, (2, 2))) == pytest.approx(want, abs=1e-12)

    def test_proportional_to_ctc(self, rng):
        xs, ys = [], []
        for _ in range(50):
            rho = density_from_pure(random_pure_state((2, 2), rng))
            xs.append(np.sum(correlation_block(rho) ** 2))
            ys.append(trace_rr(rho))
        xs, ys = np.array(xs), np.array(ys)
        c = xs @ ys / (xs @ xs)
        assert c == pytest.approx(RR_PER_CTC, abs=1e-12)
        assert np.max(np.abs(ys - c * xs)) < 1e-9


class TestTangle:
    def test_product(self):
        assert tangle(schmidt_state(0)) == 0

    @pytest.mark.parametrize("alpha", np.linspace(0, np.pi / 4, 9))
    def test_schmidt(self, alpha):
        assert tangle(schmidt_state(alpha)) == pytest.approx(np.sin(2 * alpha) ** 2 / 4, abs=1e-14)
        assert concurrence(schmidt_state(alpha)) == pytest.approx(np.sin(2 * alpha) / 2, abs=1e-12)

    def test_bell(self):
        assert tangle(schmidt_state(np.pi / 4)) == pytest.approx(0.25, abs=1e-15)
        assert concurrence(schmidt_state(np.pi / 4)) == pytest.approx(0.5, abs=1e-15)

    def test_reduced_states_agree(self, rng):
        for _ in range(10):
            psi = random_pure_state((2, 2), rng)
            rho = np.outer(psi.amplitudes, psi.amplitudes.conj())
            d1 = np.linalg.det(reduced_by_reshape(rho, (2, 2), 1)).real
            d2 = np.linalg.det(reduced_by_reshape(rho, (2, 2), 2)).real
            assert abs(d1 - d2) < 1e-12
            assert tangle(psi) == pytest.approx(d1, abs=1e-12)

    def test_wrong_dims(self):
        with pytest.raises(ShapeError):
            tangle(maximally_entangled(3))


class TestSegre:
    def test_product_zero(self):
        assert segre_quantity(pure_state([1, 0, 0, 0], (2, 2))) == 0

    @pytest.mark.parametrize("alpha", np.linspace(0, np.pi / 4, 9))
    def test_schmidt_direct_expansion(self, alpha):
        # Z0 Z3 - Z1 Z2 = cos a sin a
        got = segre_quantity(schmidt_state(alpha))
        assert got == pytest.approx(np.sin(2 * alpha) / 2, abs=1e-15)

    def test_modulus_is_sqrt_tangle(self, rng):
        for _ in range(100):
            psi = random_pure_state((2, 2), rng)
            coeff = psi.amplitudes.reshape(2, 2)
            oracle = abs(np.linalg.det(coeff))
            assert abs(segre_quantity(psi)) == pytest.approx(oracle, abs=1e-14)
            assert abs(segre_quantity(psi)) == pytest.approx(np.sqrt(tangle(psi)), abs=1e-10)

    def test_modulus_invariant_under_local_unitaries(self, rng):
        bell = schmidt_state(np.pi / 4)
        ref = abs(segre_quantity(bell))
        for _ in range(20):
            u = np.kron(haar_unitary(2, rng), haar_unitary(2, rng))
            img = pure_state(u @ bell.amplitudes, (2, 2))
            assert abs(segre_quantity(img)) == pytest.approx(ref, abs=1e-12)


class TestEntropy:
    def test_product(self):
        assert entanglement_entropy(schmidt_state(0), (2, 2)) == 0

    def test_bell(self):
        assert entanglement_entropy(schmidt_state(np.pi / 4), (2, 2)) == pytest.approx(np.log(2), abs=1e-14)

    def test_schmidt_closed_form_and_monotone(self):
        alphas = np.linspace(0.001, np.pi / 4, 50)
        vals = [entanglement_entropy(schmidt_state(a)) for a in alphas]
        for a, v in zip(alphas, vals):
            c2, s2 = np.cos(a) ** 2, np.sin(a) ** 2
            assert v == pytest.approx(-c2 * np.log(c2) - s2 * np.log(s2), abs=1e-12)
        assert np.all(np.diff(vals) > 0)

    def test_qutrit_maximal(self):
        assert entanglement_entropy(maximally_entangled(3)) == pytest.approx(np.log(3), abs=1e-13)

    def test_dims_reinterpretation_and_error(self):
        psi = pure_state(np.ones(6), (6, 1))
        assert entanglement_entropy(psi, (2, 3)) == pytest.approx(0, abs=1e-14)
        with pytest.raises(ShapeError):
            entanglement_entropy(psi, (2, 2))


class TestReport:
    def test_product_all_zero(self):
        rep = measure_report(schmidt_state(0), (2, 2))
        assert rep.schlienz_mahler == 0 and rep.trace_rr == 0 and rep.tangle == 0
        assert rep.concurrence == 0 and rep.segre == 0 and rep.entropy == 0

    def test_bell(self):
        rep = measure_report(schmidt_state(np.pi / 4))
        assert rep.schlienz_mahler == pytest.approx(1, abs=1e-12)
        assert rep.tangle == pytest.approx(0.25, abs=1e-14)
        assert rep.entropy == pytest.approx(np.log(2), abs=1e-14)

    def test_pi_over_8(self):
        rep = measure_report(schmidt_state(np.pi / 8))
        assert rep.schlienz_mahler == pytest.approx(5 / 12, abs=1e-12)

    def test_qutrit_omits_two_qubit_fields(self, rng):
        rep = measure_report(random_pure_state((3, 3), rng))
        assert rep.tangle is None and rep.segre is None and rep.concurrence is None
        assert 0 <= rep.schlienz_mahler <= 1

    def test_unequal_dims(self, rng):
        rep = measure_report(random_pure_state((2, 3), rng))
        assert rep.schlienz_mahler is None and rep.entropy > 0

    def test_concurrence_is_sqrt_tangle(self, rng):
        for _ in range(10):
            rep = measure_report(random_pure_state((2, 2), rng))
            assert rep.concurrence == pytest.approx(np.sqrt(rep.tangle), abs=1e-10)
            assert -1e-10 <= rep.schlienz_mahler <= 1 + 1e-10

    def test_strict_monotone_along_family(self):
        alphas = np.arange(0, np.pi / 4, 0.01)
        reps = [measure_report(schmidt_state(a)) for a in alphas]
        for field in ("schlienz_mahler", "trace_rr", "tangle", "concurrence", "entropy"):
            vals = np.array([getattr(r, field) for r in reps])
            assert np.all(np.diff(vals) > 1e-12), field
        seg = np.array([abs(r.segre) for r in reps])
        assert np.all(np.diff(seg) > 1e-12)

    def test_local_unitary_invariance(self, rng):
        for _ in range(20):
            psi = random_pure_state((2, 2), rng)
            u = np.kron(haar_unitary(2, rng), haar_unitary(2, rng))
            a = measure_report(psi)
            b = measure_report(pure_state(u @ psi.amplitudes, (2, 2)))
            for field in ("schlienz_mahler", "trace_rr", "tangle", "concurrence", "entropy"):
                assert getattr(a, field) == pytest.approx(getattr(b, field), abs=1e-9)
            assert abs(a.segre) == pytest.approx(abs(b.segre), abs=1e-9)

    def test_zero_equivalence(self, rng):
        states = [schmidt_state(a) for a in (0.0, 1e-3, 0.2, np.pi / 4)]
        states += [product_pure(haar_unitary(2, rng)[:, 0], haar_unitary(2, rng)[:, 0]) for _ in range(5)]
        for psi in states:
            rep = measure_report(psi)
            zeros = [rep.schlienz_mahler <= 1e-9, rep.trace_rr <= 1e-9, rep.tangle <= 1e-9,
                     abs(rep.segre) <= 1e-9, rep.entropy <= 1e-9]
            assert all(zeros) or not any(zeros)

    def test_sin2a_from_largest_eigenvalue(self):
        fam = local_family(2)
        for a in np.linspace(0.05, np.pi / 4 - 0.05, 10):
            w = symmetric_spectrum(pullback_tensor(density_from_pure(schmidt_state(a)), fam))
            tau = tangle(schmidt_state(a))
            assert w[0] - 1 == pytest.approx(2 * np.sqrt(tau), abs=1e-9)
