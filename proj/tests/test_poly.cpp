#include <bcut/poly.hpp>

#include <gtest/gtest.h>

using bcut::Poly;
using R = bcut::real128;

namespace {

double d(const R& x) { return bcut::to_double(x); }

} // namespace

TEST(Poly, DegreeAndStripping) {
    Poly<R> p{R(1), R(2), R(0), R(0)};
    EXPECT_EQ(p.degree(), 1);
    EXPECT_TRUE(Poly<R>().is_zero());
    EXPECT_EQ(Poly<R>::monomial(3).degree(), 3);
}

TEST(Poly, ArithmeticAndEvaluation) {
    Poly<R> a{R(1), R(1)};   // 1 + x
    Poly<R> b{R(-1), R(1)};  // x - 1
    auto c = a * b;          // x^2 - 1
    EXPECT_EQ(c.degree(), 2);
    EXPECT_NEAR(d(c(R(3))), 8.0, 1e-30);
    EXPECT_NEAR(d((a + b)(R(2))), 4.0, 1e-30);
    EXPECT_NEAR(d(a.pow(3)(R(1))), 8.0, 1e-30);
}

TEST(Poly, DerivativeUndoesAntiderivative) {
    Poly<R> p{R(3), R(-2), R(5), R("0.25")};
    auto q = p.antiderivative(R(7)).derivative();
    for (int i = 0; i <= p.degree(); ++i) EXPECT_NEAR(d(q[i] - p[i]), 0.0, 1e-35);
}

TEST(Poly, Divmod) {
    auto num = Poly<R>::from_roots({R(1), R(2), R(3)}) + Poly<R>::constant(R(5));
    auto den = Poly<R>::linear_factor(R(2));
    auto [q, r] = num.divmod(den);
    EXPECT_EQ(q.degree(), 2);
    EXPECT_NEAR(d(r(R(0))), 5.0, 1e-30);
    auto back = q * den + r;
    for (int i = 0; i <= 3; ++i) EXPECT_NEAR(d(back[i] - num[i]), 0.0, 1e-30);
}

TEST(Poly, SturmCountsAndRoots) {
    auto p = Poly<R>::from_roots({R(-1.5), R("0.25"), R(2), R(3)});
    EXPECT_EQ(bcut::count_real_roots(p), 4);
    EXPECT_EQ(bcut::count_real_roots(p, R(0), R(2.5)), 2);
    auto r = bcut::real_roots(p);
    ASSERT_EQ(r.size(), 4u);
    EXPECT_NEAR(d(r[1]), 0.25, 1e-30);
    Poly<R> none{R(1), R(0), R(1)};
    EXPECT_EQ(bcut::count_real_roots(none), 0);
}

TEST(Poly, CauchyBoundEnclosesRoots) {
    auto p = Poly<R>::from_roots({R(-7), R(4)}) * R(3);
    R b = bcut::cauchy_root_bound(p);
    EXPECT_GT(d(b), 7.0);
}

TEST(Poly, SqrtAtInfinity) {
    // sqrt(x^2 - 4) = x - 2/x - 2/x^3 - ...
    Poly<R> sig{R(-4), R(0), R(1)};
    auto L = bcut::sqrt_power_at_infinity(sig, false, 6);
    EXPECT_NEAR(d(L.coeff(1)), 1.0, 1e-30);
    EXPECT_NEAR(d(L.coeff(-1)), -2.0, 1e-30);
    EXPECT_NEAR(d(L.coeff(-3)), -2.0, 1e-30);
    auto Li = bcut::sqrt_power_at_infinity(sig, true, 6);
    EXPECT_NEAR(d(Li.coeff(-1)), 1.0, 1e-30);
    EXPECT_NEAR(d(Li.coeff(-3)), 2.0, 1e-30);
}
