import json
import math

import pytest

from cdtlab import chebotarev as ch
from cdtlab import densities as de
from cdtlab import quadforms as qf
from cdtlab.arith import is_prime, li
from cdtlab.betasieve import SieveSpec, beta_sieve_weights
from cdtlab.errorterms import ErrorModel, SiegelData


def brute_prime_points(f, x, cond=None):
    total = 0
    bound = math.isqrt(int(4 * max(f.a, f.c) * x)) + 2
    for u in range(-bound, bound + 1):
        for v in range(-bound, bound + 1):
            n = f(u, v)
            if 1 <= n <= x and is_prime(n) and (cond is None or cond(u, v, n)):
                total += 1
    return total


class TestCounting:
    @pytest.mark.parametrize(
        "f,x",
        [(qf.Form(1, 0, 1), 300), (qf.Form(1, 1, 6), 500), (qf.Form(2, 1, 3), 400)],
    )
    def test_vs_bruteforce(self, f, x):
        assert ch.count_prime_points(f, x) == brute_prime_points(f, x)

    def test_worker_count_invariance(self):
        f = qf.Form(1, 1, 6)
        base = ch.count_prime_points(f, 1e5, workers=1)
        assert ch.count_prime_points(f, 1e5, workers=2) == base
        assert ch.count_prime_points(f, 1e5, workers=4) == base

    def test_pi_class_vs_scan(self):
        for D in (-23, -47):
            for f in qf.class_representatives(D).representatives:
                lattice = ch.pi_class(f, 2e4)
                scan = ch.pi_class_scan(f, 2e4)
                # lattice additionally sees ramified primes and split 2
                assert 0 <= lattice - scan <= 3, (D, tuple(f))

    def test_equidistribution_report(self, tmp_path):
        rep = ch.equidistribution_report(-23, 1e5)
        assert rep["h"] == 3
        assert rep["max_rel_error"] < 0.05
        assert sum(r["count"] for r in rep["rows"]) == pytest.approx(
            li(1e5), rel=0.02
        )
        path = tmp_path / "eq.csv"
        ch.equidistribution_csv(rep, path)
        lines = path.read_text().strip().splitlines()
        assert len(lines) == 4 and lines[0].startswith("a,b,c")


class TestPsi:
    def test_principal_gauss_oracle(self):
        # independent bookkeeping for D = -4 via the splitting of
        # rational primes in the Gaussian field
        x = 30000
        target = qf.Form(1, 0, 1)
        oracle = 0.0
        for p in range(3, x + 1):
            if not is_prime(p):
                continue
            if p % 4 == 1:
                n = p
                while n <= x:
                    oracle += 2 * math.log(p)
                    n *= p
            else:
                n = p * p
                while n <= x:
                    oracle += 2 * math.log(p)
                    n *= p * p
        assert ch.psi_class(target, x) == pytest.approx(oracle, abs=1e-9)

    def test_total_psi_near_x(self):
        # summed over all classes, psi tracks x (prime ideal theorem)
        x = 200000
        total = sum(
            ch.psi_class(f, x) for f in qf.class_representatives(-23).representatives
        )
        assert total == pytest.approx(x, rel=0.02)

    def test_split_prime_membership(self):
        # events at j = 1 match brute-force representability
        D = -23
        x = 2000
        cl = qf.class_representatives(D)
        events = {f: ch.psi_events(f, x) for f in cl.representatives}
        for p in range(3, x):
            if not is_prime(p) or D % p == 0:
                continue
            g = qf.prime_to_class(p, D)
            if g is None:
                continue
            for f in cl.representatives:
                hits = sum(1 for n, _, first in events[f] if first and n == p)
                expected = (g == f) + (qf.inverse_form(g) == f)
                assert hits == expected, (p, tuple(f))

    def test_inert_to_principal(self):
        D = -23
        principal = qf.Form(1, 1, 6)
        other = qf.Form(2, 1, 3)
        # 5 is inert in Q(sqrt(-23)); 25 must appear only for the
        # principal class with weight 2 log 5
        ev_p = [e for e in ch.psi_events(principal, 100) if e[0] == 25]
        ev_o = [e for e in ch.psi_events(other, 100) if e[0] == 25]
        assert ev_p == [(25, pytest.approx(2 * math.log(5)), True)]
        assert ev_o == []

    def test_smooth_bracket(self):
        p_target = qf.Form(1, 0, 1)
        from cdtlab.weights import WeightParams

        params = WeightParams(x=1e5, epsilon=0.1, ell=3)
        smooth = ch.psi_class_smooth(p_target, params)
        lo, hi = 1e5**0.5, 1e5
        inner = ch.psi_class(p_target, hi) - ch.psi_class(p_target, lo)
        w = 0.1 / math.log(1e5)
        outer = ch.psi_class(p_target, 1e5 ** (1 + w)) - ch.psi_class(
            p_target, 1e5 ** (0.5 - w) - 1
        )
        assert inner - 1e-9 <= smooth <= outer + 1e-9


class TestMainTermAndBridge:
    def test_main_term(self):
        assert ch.main_term(1e6, 3) == pytest.approx(li(1e6) / 3)
        s = SiegelData(beta1=0.95, theta1=1)
        assert ch.main_term(1e6, 3, s) == pytest.approx(
            (li(1e6) - li(1e6**0.95)) / 3
        )
        with pytest.raises(ValueError):
            ch.main_term(1e6, 0)

    def test_bridge_small_C(self):
        for f in qf.class_representatives(-23).representatives:
            out = ch.bridge_check(f, 1e5)
            assert out["smallest_C"] <= 5.0, tuple(f)

    def test_li_identity(self):
        for x in (1e4, 1e6):
            assert ch.li_identity_check(x, 0.9) <= 2 * math.sqrt(x) / math.log(x)


class TestCongruence:
    def test_A_vs_bruteforce(self):
        f = qf.Form(1, 0, 1)
        x = 400
        for d1, d2 in ((1, 1), (3, 1), (1, 5), (3, 5)):
            brute = brute_prime_points(
                f, x, cond=lambda u, v, n: u % d1 == 0 and v % d2 == 0
            )
            assert ch.congruence_sum_A(f, d1, d2, x) == brute / 4

    def test_predicted_density(self):
        f = qf.Form(1, 0, 1)
        P = de.SievingModulus.from_int(15)
        from fractions import Fraction

        out = ch.congruence_sum_predicted(f, 3, 5, 1e6, P)
        assert out["density"] == Fraction(1, 4) * Fraction(1, 4)
        assert out["value"] == pytest.approx(li(1e6) / 16)
        out = ch.congruence_sum_predicted(f, 3, 5, 1e6, P, model=ErrorModel())
        assert out["budget"] is not None and out["budget"] > 0


class TestSievedSum:
    def test_orders_agree_and_bracket(self):
        f = qf.Form(1, 1, 6)
        P = de.SievingModulus.from_int(105)
        x = 3e4
        # R beyond 7^11 so the upper weights are full Moebius on {3,5,7}
        w_up = beta_sieve_weights(
            SieveSpec(z=8.0, R=1e10, kind="upper", support=P.prime_factors)
        )
        w_low = beta_sieve_weights(
            SieveSpec(z=8.0, R=50.0, kind="lower", support=P.prime_factors)
        )
        assert len(w_up.lam) == 8
        assert w_low.lam == {1: 1, 3: -1, 5: -1, 7: -1}
        up = ch.sieved_sum_S(f, w_up, w_up, P, x)  # internal exact equality
        low = ch.sieved_sum_S(f, w_low, w_low, P, x)
        sifted = ch.theorem15_experiment(f, P, x).lhs
        # full Moebius weights on both axes give the sifted count exactly
        assert up["S"] == sifted

    def test_support_mismatch_rejected(self):
        f = qf.Form(1, 1, 6)
        P = de.SievingModulus.from_int(15)
        w = beta_sieve_weights(
            SieveSpec(z=8.0, R=1e10, kind="upper", support=(3, 7))
        )
        assert 7 in w.lam
        with pytest.raises(ValueError):
            ch.sieved_sum_S(f, w, w, P, 1e3)


class TestExperiment:
    def test_plain(self):
        f = qf.Form(1, 0, 1)
        P = de.SievingModulus.from_int(15)
        rep = ch.theorem15_experiment(f, P, 1e6)
        assert not rep.obstructed
        assert rep.rel_error < 0.02
        assert rep.passed
        data = json.loads(rep.to_json())
        assert data["config"]["P"] == 15

    def test_obstructed(self):
        f = qf.Form(1, 0, 1)
        P = de.SievingModulus.from_int(2 * 3 * 5)
        rep = ch.theorem15_experiment(f, P, 1e5)
        assert rep.obstructed and rep.trivially_true and rep.passed
        assert rep.lhs == 0.0

    def test_budget(self):
        f = qf.Form(1, 0, 1)
        P = de.SievingModulus.from_int(15)
        rep = ch.theorem15_experiment(f, P, 1e5, model=ErrorModel(D_K=4.0))
        assert rep.budget is not None and rep.budget > 0
