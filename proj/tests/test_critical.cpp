#include <bcut/critical.hpp>
#include <bcut/equilibrium.hpp>
#include <bcut/potentials.hpp>

#include <gtest/gtest.h>

#include <cmath>

using R = bcut::real128;
using bcut::Poly;

namespace {

double d(const R& x) { return bcut::to_double(x); }

R binom(int n, int k) { return exp(lgamma(R(n + 1)) - lgamma(R(k + 1)) - lgamma(R(n - k + 1))); }

} // namespace

TEST(Critical, GSatisfiesItsDifferentialIdentity) {
    for (int nu = 1; nu <= 6; ++nu) {
        R zeta("1.17772");
        auto G = bcut::G_polynomial(nu, zeta);
        EXPECT_EQ(G.degree(), 2 * nu - 2);
        EXPECT_NEAR(d(G.leading()), 1.0, 1e-35);
        // (2nu-2) G - xi G' = 4 zeta^2 (G - G(2 zeta)) / (xi^2 - 4 zeta^2)
        Poly<R> lhs = G * Poly<R>::constant(R(2 * nu - 2)) - Poly<R>::monomial(1) * G.derivative();
        Poly<R> num = (G - Poly<R>::constant(G(2 * zeta))) * Poly<R>::constant(4 * zeta * zeta);
        Poly<R> den{-4 * zeta * zeta, R(0), R(1)};
        auto qr = num.divmod(den);
        for (int i = 0; i <= qr.second.degree(); ++i) EXPECT_LT(d(abs(qr.second[i])), 1e-30) << nu;
        auto diff = lhs - qr.first;
        for (int i = 0; i <= std::max(diff.degree(), 0); ++i) EXPECT_LT(d(abs(diff[i])), 1e-30) << nu << " " << i;
        for (const char* xs : {"0.3", "-1.7", "2.9"}) EXPECT_NEAR(d(G(R(xs)) - G(-R(xs))), 0.0, 1e-30);
    }
}

TEST(Critical, GLowOrders) {
    R z("0.8");
    auto G1 = bcut::G_polynomial(1, z);
    EXPECT_EQ(G1.degree(), 0);
    EXPECT_NEAR(d(G1[0]), 1.0, 1e-35);
    auto G2 = bcut::G_polynomial(2, z);
    EXPECT_NEAR(d(G2[0] - 2 * z * z), 0.0, 1e-35);
    EXPECT_NEAR(d(G2[1]), 0.0, 1e-35);
    EXPECT_NEAR(d(G2[2]), 1.0, 1e-35);
    EXPECT_THROW(bcut::G_polynomial(0, z), bcut::domain_error);
}

TEST(Critical, ZetaAndConstantC) {
    auto s = bcut::make_quartic_spec<R>(R(1));
    auto ns = bcut::newborn_scaling(s, R("1e-4"));
    EXPECT_NEAR(d(ns.zeta), 1.17772, 1e-5);
    EXPECT_NEAR(d(ns.C), 5.54806, 1e-5);
    EXPECT_NEAR(d(4 * ns.zeta * ns.zeta * ns.G(2 * ns.zeta) / ns.C), 1.0, 1e-30);
    // nu = 1: zeta^2 = phi_e / (sinh phi_e Q(e))
    EXPECT_NEAR(d(ns.zeta * ns.zeta - s.phi_e / (sinh(s.phi_e) * s.Q(s.e))), 0.0, 1e-30);
}

TEST(Critical, ZetaIdentitiesForHigherNu) {
    for (int nu = 1; nu <= 4; ++nu) {
        auto s = bcut::make_critical_spec<R>(nu, R(3), Poly<R>::constant(R(1)));
        auto ns = bcut::newborn_scaling(s, R("1e-4"));
        EXPECT_NEAR(d(4 * ns.zeta * ns.zeta * ns.G(2 * ns.zeta) / ns.C), 1.0, 1e-28) << nu;
        R ratio = ns.G(2 * ns.zeta) / pow(ns.zeta, 2 * nu - 2);
        R expect = exp(lgamma(R(2 * nu + 1)) - lgamma(R(nu)) - lgamma(R(nu + 1))) / 2;
        EXPECT_NEAR(d(ratio / expect), 1.0, 1e-28) << nu;
    }
}

TEST(Critical, GSinhForm) {
    for (int nu = 1; nu <= 6; ++nu) {
        R z("0.9");
        auto G = bcut::G_polynomial(nu, z);
        for (int i = 1; i <= 20; ++i) {
            R psi = R(i) / 8;
            R lhs = G(2 * z * cosh(psi)) / pow(z, 2 * nu - 2);
            R rhs = 0;
            for (int j = 0; j < nu; ++j) rhs += binom(2 * nu - 1, nu + j) * sinh((2 * j + 1) * psi) / sinh(psi);
            EXPECT_NEAR(d(lhs / rhs), 1.0, 1e-25) << nu << " " << i;
        }
    }
}

TEST(Critical, DriftAtZeroAndSigns) {
    auto s = bcut::make_quartic_spec<R>(R(1));
    auto z = bcut::one_cut_drift(s, R(0));
    EXPECT_NEAR(d(z.a), -2.0, 1e-35);
    EXPECT_NEAR(d(z.b), 2.0, 1e-35);
    EXPECT_NEAR(d(z.gamma_n), 1.0, 1e-35);
    EXPECT_NEAR(d(z.beta_n), 0.0, 1e-35);
    EXPECT_LT(d(s.Q(R(2))), 0.0);
    EXPECT_LT(d(s.Q(R(-2))), 0.0);
    auto n = bcut::one_cut_drift(s, R("-1e-3"));
    EXPECT_GT(d(n.a), -2.0);
    EXPECT_LT(d(n.b), 2.0);
    EXPECT_LT(d(n.gamma_n), 1.0);
    EXPECT_THROW(bcut::one_cut_drift(s, R("1e-3")), bcut::domain_error);
}

TEST(Critical, DriftSlopeMatchesSolver) {
    auto s = bcut::make_critical_spec<R>(2, R(3), Poly<R>::constant(R(1)));
    R t = -R("1e-4") * s.Tc, h = t / 10000;
    auto dr = bcut::one_cut_drift(s, t);
    auto m1 = bcut::solve_one_cut(s.V, s.Tc + h, {dr.a, dr.b});
    R slope_a = (m1.ends[0] + 2) / h, slope_b = (m1.ends[1] - 2) / h;
    EXPECT_NEAR(d(slope_a / ((dr.a + 2) / t)), 1.0, 1e-3);
    EXPECT_NEAR(d(slope_b / ((dr.b - 2) / t)), 1.0, 1e-3);
}

TEST(Critical, NewbornScalingFields) {
    auto s = bcut::make_quartic_spec<R>(R(1));
    R t("1e-4");
    auto ns = bcut::newborn_scaling(s, t);
    EXPECT_LT(d(ns.c), d(s.e));
    EXPECT_GT(d(ns.d), d(s.e));
    EXPECT_NEAR(d((ns.c + ns.d) / 2 - s.e), 0.0, 1e-35);
    EXPECT_LT(d(ns.delta_x0), 0.0);
    EXPECT_GT(d(ns.m_asym), 0.0);
    EXPECT_GT(d(ns.tau_asym), 0.0);
    EXPECT_GT(d(ns.epsilon), 0.0);
    EXPECT_THROW(bcut::newborn_scaling(s, R(0)), bcut::domain_error);
    EXPECT_THROW(bcut::newborn_scaling(s, R("-1e-4")), bcut::domain_error);
}

TEST(Critical, NewbornEndpointsBracketSolver) {
    auto s = bcut::make_quartic_spec<R>(R(1));
    double prev = 1e9;
    for (const char* ts : {"1e-3", "1e-4", "1e-5"}) {
        R t = R(ts) * s.Tc;
        auto ns = bcut::newborn_scaling(s, t);
        auto mu = bcut::solve_two_cut(s.V, s.Tc + t, {R(-2), R(2), ns.c, ns.d});
        EXPECT_LT(d(ns.c), d(mu.ends[2])) << ts;
        EXPECT_GT(d(ns.d), d(mu.ends[3])) << ts;
        double gap = d(1 - (mu.ends[3] - mu.ends[2]) / (ns.d - ns.c));
        EXPECT_LT(gap, prev) << ts;
        prev = gap;
    }
}

TEST(Critical, ExpectedCount) {
    auto s = bcut::make_quartic_spec<R>(R(1));
    R N(80);
    EXPECT_NEAR(d(bcut::expected_count(s, N, N)), 0.0, 1e-35);
    R p = log(N) / (2 * s.phi_e);
    EXPECT_NEAR(d(bcut::expected_count(s, N, N + p)), 1.0, 1e-30);
    EXPECT_THROW(bcut::expected_count(s, N, N - 1), bcut::domain_error);
}

TEST(Critical, TransitionCurvature) {
    auto s = bcut::make_quartic_spec<R>(R(1));
    EXPECT_THROW(bcut::transition_curvature(s, R(0)), bcut::domain_error);
    double lo = 1e9, hi = 1e9;
    for (const char* ts : {"1e-3", "1e-6", "1e-9", "1e-12"}) {
        R t(ts);
        double m = d(bcut::transition_curvature(s, -t)), p = d(bcut::transition_curvature(s, t));
        EXPECT_LT(p, 0.0);
        EXPECT_LT(std::abs(m), lo);
        EXPECT_LT(std::abs(p), hi);
        lo = std::abs(m);
        hi = std::abs(p);
    }
    // t < 0 side agrees with -2 ln gamma from the drift
    R t("-1e-6");
    auto dr = bcut::one_cut_drift(s, t);
    EXPECT_NEAR(d(-2 * log(dr.gamma_n) / bcut::transition_curvature(s, t)), 1.0, 1e-5);
}
