#include <bcut/potentials.hpp>

#include <gtest/gtest.h>

#include <cmath>

using R = bcut::real128;
using bcut::Poly;

namespace {

double d(const R& x) { return bcut::to_double(x); }

R quartic_integral(const R& e, const R& et) {
    // int_2^e (x-e)(x-et) sqrt(x^2-4) dx with x = 2 cosh t
    using std::acosh; using std::cosh; using std::sinh;
    R tmax = acosh(e / 2);
    auto f = [&](const R& t) {
        R x = 2 * cosh(t), s = 2 * sinh(t);
        return (x - e) * (x - et) * s * s;
    };
    return bcut::integrate(f, R(0), tmax, R("1e-34")).value;
}

} // namespace

TEST(Potentials, QuarticEtildeMatchesRatioOfIntegrals) {
    for (const char* ph : {"0.2", "0.5", "1", "1.5", "2"}) {
        R phi(ph);
        auto q = bcut::build_critical_Q(1, R(2 * cosh(phi)), Poly<R>::constant(R(1)));
        R et = bcut::quartic_etilde(phi);
        EXPECT_LT(d(abs(q.e_tilde - et) / et), 1e-10) << "phi_e = " << ph;
    }
}

TEST(Potentials, QuarticEtildeValueAtOne) {
    // frozen from a 40-digit mpmath ratio of integrals
    EXPECT_NEAR(d(bcut::quartic_etilde(R(1))), 2.47267282545338, 1e-13);
}

TEST(Potentials, QuarticEtildeAnnulsTheWellIntegral) {
    R e = 2 * cosh(R(1));
    R et = bcut::quartic_etilde(R(1));
    EXPECT_LT(d(abs(quartic_integral(e, et))), 1e-30);
    EXPECT_GT(d(et), 2.0);
    EXPECT_LT(d(et), d(e));
}

TEST(Potentials, QuarticVprimeAndTc) {
    auto s = bcut::make_quartic_spec<R>(R(1));
    R e = s.e, et = s.e_tilde;
    auto Vp = s.V.derivative();
    EXPECT_NEAR(d(Vp[3]), 1.0, 1e-30);
    EXPECT_NEAR(d(Vp[2] + e + et), 0.0, 1e-30);
    EXPECT_NEAR(d(Vp[1] - (e * et - 2)), 0.0, 1e-30);
    EXPECT_NEAR(d(Vp[0] - 2 * (e + et)), 0.0, 1e-30);
    EXPECT_NEAR(d(s.Tc - (1 + e * et)), 0.0, 1e-30);
    EXPECT_NEAR(d(s.Tc), 8.631067106382009, 1e-12);
    EXPECT_EQ(s.d, 3);
}

TEST(Potentials, FormalSpecialisation) {
    // e = e_tilde = 0 formally: V' = x^3 - 2x, Tc = 1
    auto pot = bcut::build_potential(1, R(0), Poly<R>{R(0), R(1)});
    auto Vp = pot.V.derivative();
    EXPECT_NEAR(d(Vp[3]), 1.0, 1e-30);
    EXPECT_NEAR(d(Vp[1]), -2.0, 1e-30);
    EXPECT_NEAR(d(Vp[2]), 0.0, 1e-30);
    EXPECT_NEAR(d(Vp[0]), 0.0, 1e-30);
    EXPECT_NEAR(d(pot.Tc), 1.0, 1e-30);
}

TEST(Potentials, NuTwoDegreesAndTemperature) {
    auto s = bcut::make_critical_spec<R>(2, R(3), Poly<R>::constant(R(1)));
    EXPECT_EQ(s.V.derivative().degree(), 5);
    EXPECT_EQ(s.d, 5);
    EXPECT_GT(d(s.Tc), 0.0);
    // frozen from the series residue, cross-checked by a large-circle contour integral
    EXPECT_NEAR(d(s.Tc), 110.945924256975, 1e-10);
    EXPECT_NEAR(d(s.e_tilde), 2.27627567380486, 1e-12);
}

TEST(Potentials, ValidateQuarticAllPass) {
    auto s = bcut::make_quartic_spec<R>(R(1));
    auto rep = bcut::validate_critical(s);
    for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << " value " << c.value;
    EXPECT_TRUE(rep.all_passed());
}

TEST(Potentials, ValidateNuTwoAllPass) {
    auto s = bcut::make_critical_spec<R>(2, R(3), Poly<R>::constant(R(1)));
    EXPECT_TRUE(bcut::validate_critical(s).all_passed());
}

TEST(Potentials, ValidateFlagsNegativeQAtE) {
    auto s = bcut::make_quartic_spec<R>(R(1));
    s.Q = Poly<R>{R(2), R(-1)};  // Q(e) = 2 - e < 0
    auto rep = bcut::validate_critical(s);
    const auto* c = rep.find(bcut::check_names::q_e);
    ASSERT_NE(c, nullptr);
    EXPECT_FALSE(c->passed);
    EXPECT_FALSE(rep.all_passed());
}

TEST(Potentials, ValidateFlagsUnbalancedWell) {
    auto s = bcut::make_quartic_spec<R>(R(1));
    s.e_tilde += R("0.05");
    s.Q = Poly<R>::linear_factor(s.e_tilde);
    auto rep = bcut::validate_critical(s);
    const auto* c = rep.find(bcut::check_names::veff_e);
    ASSERT_NE(c, nullptr);
    EXPECT_FALSE(c->passed);
}

TEST(Potentials, BuildQRejectsBadQtilde) {
    EXPECT_THROW(bcut::build_critical_Q(1, R(3), Poly<R>{R(-1), R(0), R(1)}), bcut::domain_error);
    EXPECT_THROW(bcut::build_critical_Q(1, R(3), Poly<R>{R(1), R(1)}), bcut::domain_error);
    EXPECT_THROW(bcut::build_critical_Q(1, R(1), Poly<R>::constant(R(1))), bcut::domain_error);
}

TEST(Potentials, EtildeInsideGapForRandomQtilde) {
    for (const char* c : {"0.3", "1", "4"}) {
        Poly<R> qt{R(c), R(0), R(1)};  // x^2 + c, no real roots
        R e(3.5);
        auto q = bcut::build_critical_Q(1, e, qt);
        EXPECT_GT(d(q.e_tilde), 2.0);
        EXPECT_LT(d(q.e_tilde), 3.5);
    }
}

TEST(Potentials, QuarticEtildeRejectsNonPositivePhi) {
    EXPECT_THROW(bcut::quartic_etilde(R(0)), bcut::domain_error);
}
