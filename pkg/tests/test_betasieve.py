import math
import random
from fractions import Fraction

import pytest

from cdtlab import betasieve as bs
from cdtlab.arith import mobius


def random_instance(rng):
    support = tuple(sorted(rng.sample([2, 3, 5, 7, 11, 13, 17], rng.randrange(2, 6))))
    g1 = {p: Fraction(1, rng.randrange(3, 12)) for p in support}
    g2 = {p: Fraction(1, rng.randrange(3, 12)) for p in support}
    dens = bs.DensityPair(g1, g2)
    z = max(support) + 0.5
    R = z ** rng.uniform(1.2, 4.5)
    w1 = bs.beta_sieve_weights(
        bs.SieveSpec(z=z, R=R, kind=rng.choice(["upper", "lower"]), support=support)
    )
    w2 = bs.beta_sieve_weights(
        bs.SieveSpec(z=z, R=R, kind=rng.choice(["upper", "lower"]), support=support)
    )
    return w1, w2, dens


class TestSpec:
    def test_beta_default(self):
        spec = bs.SieveSpec(z=10.0, R=1e4, kind="upper", kappa=2.0)
        assert spec.beta == 19.0
        assert spec.s == pytest.approx(4.0)

    def test_rejects(self):
        with pytest.raises(ValueError):
            bs.SieveSpec(z=10.0, R=1e4, kind="sideways")
        with pytest.raises(ValueError):
            bs.SieveSpec(z=100.0, R=10.0, kind="upper")
        with pytest.raises(ValueError):
            bs.SieveSpec(z=5.0, R=100.0, kind="upper", support=(2, 3, 7))


class TestWeights:
    def test_lambda_is_mobius(self):
        spec = bs.SieveSpec(z=20.0, R=1e6, kind="upper", support=(2, 3, 5, 7, 11, 13, 17, 19))
        w = bs.beta_sieve_weights(spec)
        for d, lam in w.lam.items():
            assert lam == mobius(d)
            assert d < spec.R

    def test_untruncated_equals_full_mobius(self):
        # R beyond p_max^(beta+1), so every squarefree product survives
        support = (2, 3, 5, 7)
        spec = bs.SieveSpec(z=8.0, R=1e11, kind="upper", support=support)
        w = bs.beta_sieve_weights(spec)
        assert len(w.lam) == 2 ** len(support)

    def test_theta_bounding_property(self):
        # upper: theta_n >= [gcd(n, P) = 1]; lower: theta_n <= [gcd(n, P) = 1]
        support = (2, 3, 5, 7, 11)
        P = 2 * 3 * 5 * 7 * 11
        for kind, cmp in (("upper", lambda t, i: t >= i), ("lower", lambda t, i: t <= i)):
            for R in (20.0, 100.0, 1000.0):
                spec = bs.SieveSpec(z=12.0, R=R, kind=kind, support=support)
                w = bs.beta_sieve_weights(spec)
                theta = bs.theta_from_lambda(w, 2000)
                for n in range(1, 2001):
                    assert cmp(theta[n], int(math.gcd(n, P) == 1)), (kind, R, n)

    def test_trivial(self):
        w = bs.SieveWeights.trivial()
        assert w.lam == {1: 1}


class TestCompositionIdentity:
    def test_exact_on_100_random_instances(self):
        rng = random.Random(20260824)
        for _ in range(100):
            w1, w2, dens = random_instance(rng)
            lhs = bs.reduced_composition(w1, w2, dens)
            rhs = bs.invert_composition(w1, w2, dens)
            assert lhs == rhs  # exact rational identity

    def test_density_invariants(self):
        with pytest.raises(ValueError):
            bs.DensityPair({3: Fraction(2, 3)}, {3: Fraction(1, 3)})


class TestTilde:
    def test_pointwise_relations(self):
        dens = bs.DensityPair(
            {3: Fraction(1, 4), 5: Fraction(1, 6)},
            {3: Fraction(1, 5), 5: Fraction(1, 6)},
        )
        h1, h2, g1, g2 = bs.tilde_transforms(dens)
        assert h1[3] == Fraction(1, 4) / (1 - Fraction(1, 4) - Fraction(1, 5))
        assert g1[3] == Fraction(1, 4) / (1 - Fraction(1, 5))
        for p in (3, 5):
            assert h1[p] == g1[p] / (1 - g1[p])
            assert h2[p] == g2[p] / (1 - g2[p])


class TestCompositionBounds:
    def make(self, kind1, kind2):
        support = (2, 3, 5, 7, 11, 13)
        g1 = {p: Fraction(1, p + 1) for p in support}
        g2 = {p: Fraction(1, p + 2) for p in support}
        dens = bs.DensityPair(g1, g2)
        z = 14.0
        R = z**27  # s = 27 > 9*kappa + 1 + 10*log(K) for K = 5
        spec1 = bs.SieveSpec(z=z, R=R, kind=kind1, support=support, K_const=5.0)
        spec2 = bs.SieveSpec(z=z, R=R, kind=kind2, support=support, K_const=5.0)
        return spec1, spec2, dens

    def test_upper_upper(self):
        spec1, spec2, dens = self.make("upper", "upper")
        rep = bs.composition_bounds_check(spec1, spec2, dens)
        assert rep.ok
        assert rep.upper_bound is not None
        assert float(rep.G) <= rep.upper_bound

    def test_lower_upper(self):
        spec1, spec2, dens = self.make("lower", "upper")
        rep = bs.composition_bounds_check(spec1, spec2, dens)
        assert rep.ok
        assert rep.lower_bound is not None
        assert float(rep.G) >= rep.lower_bound

    def test_fundamental_sums_bracket_one(self):
        spec1, spec2, dens = self.make("lower", "upper")
        rep = bs.composition_bounds_check(spec1, spec2, dens)
        err = math.exp(9 * rep.kappa - rep.s) * rep.K_const**10
        assert float(rep.fundamental_sums["theta1_h1"]) >= 1 - err
        assert float(rep.fundamental_sums["theta2_h2"]) <= 1 + err

    def test_hypothesis_violation_raises(self):
        support = (2, 3, 5)
        dens = bs.DensityPair(
            {p: Fraction(1, p + 1) for p in support},
            {p: Fraction(1, p + 2) for p in support},
        )
        spec = bs.SieveSpec(z=6.0, R=6.0**3, kind="upper", support=support)
        with pytest.raises(ValueError):
            bs.composition_bounds_check(spec, spec, dens)

    def test_report_json(self):
        import json

        spec1, spec2, dens = self.make("upper", "upper")
        rep = bs.composition_bounds_check(spec1, spec2, dens)
        data = json.loads(rep.to_json())
        assert data["ok"] is True
        assert data["s"] == pytest.approx(27.0)
