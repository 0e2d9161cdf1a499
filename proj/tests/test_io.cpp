#include <bcut/critical.hpp>
#include <bcut/equilibrium.hpp>
#include <bcut/io.hpp>
#include <bcut/potentials.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

using R = bcut::real128;
using bcut::Poly;

namespace {

double d(const R& x) { return bcut::to_double(x); }

bcut::KeyValues kv(const std::string& text) {
    std::istringstream is(text);
    return bcut::parse_key_values(is);
}

int error_line(const std::string& text) {
    try {
        kv(text);
    } catch (const bcut::parse_error& e) {
        return e.line;
    }
    return -1;
}

} // namespace

TEST(KeyValues, ParsesCommentsAndWhitespace) {
    auto k = kv("# header\n  nu = 2  \n\ne=3 # trailing\nQ_tilde = 1 0 1\n");
    EXPECT_EQ(k.integer("nu"), 2);
    EXPECT_EQ(k.raw("e"), "3");
    EXPECT_EQ(k.line_of("e"), 4);
    auto q = k.reals<R>("Q_tilde");
    ASSERT_EQ(q.size(), 3u);
    EXPECT_EQ(d(q[2]), 1.0);
    EXPECT_FALSE(k.has("V"));
}

TEST(KeyValues, ErrorsCarryLineNumbers) {
    EXPECT_EQ(error_line("nu = 1\nbogus line\n"), 2);
    EXPECT_EQ(error_line("nu = 1\n\n = 4\n"), 3);
    EXPECT_EQ(error_line("nu = 1\ne =\n"), 2);
    EXPECT_EQ(error_line("nu = 1\ne = 3\nnu = 2\n"), 3);
    auto k = kv("nu = x1\ne = abc\n");
    try {
        k.integer("nu");
        FAIL();
    } catch (const bcut::parse_error& e) {
        EXPECT_EQ(e.line, 1);
    }
    try {
        k.real<R>("e");
        FAIL();
    } catch (const bcut::parse_error& e) {
        EXPECT_EQ(e.line, 2);
    }
    EXPECT_THROW(k.raw("missing"), bcut::parse_error);
}

TEST(SpecIO, ConstructedForm) {
    auto s = bcut::spec_from_key_values<R>(kv("nu = 1\nphi_e = 1\n"));
    auto ref = bcut::make_quartic_spec<R>(R(1));
    EXPECT_NEAR(d(s.e_tilde - ref.e_tilde), 0.0, 1e-30);
    EXPECT_NEAR(d(s.Tc - ref.Tc), 0.0, 1e-28);
    EXPECT_THROW(bcut::spec_from_key_values<R>(kv("nu = 0\ne = 3\n")), bcut::parse_error);
    EXPECT_THROW(bcut::spec_from_key_values<R>(kv("nu = 1\ne = 1.5\n")), bcut::parse_error);
    EXPECT_THROW(bcut::spec_from_key_values<R>(kv("nu = 1\n")), bcut::parse_error);
}

TEST(SpecIO, RoundTripIsExact) {
    auto s = bcut::make_critical_spec<R>(2, R(3), Poly<R>::constant(R(1)));
    std::ostringstream os;
    bcut::write_spec(os, s);
    std::istringstream is(os.str());
    auto t = bcut::spec_from_key_values<R>(bcut::parse_key_values(is));
    EXPECT_EQ(t.nu, s.nu);
    EXPECT_TRUE(t.e == s.e);
    EXPECT_TRUE(t.Tc == s.Tc);
    EXPECT_TRUE(t.e_tilde == s.e_tilde);
    ASSERT_EQ(t.V.degree(), s.V.degree());
    for (int i = 0; i <= s.V.degree(); ++i) EXPECT_TRUE(t.V[i] == s.V[i]) << i;
    for (int i = 0; i <= s.Q.degree(); ++i) EXPECT_TRUE(t.Q[i] == s.Q[i]) << i;
    EXPECT_TRUE(bcut::validate_critical(t).all_passed());
}

TEST(MeasureIO, RoundTripTwoCut) {
    auto s = bcut::make_quartic_spec<R>(R(1));
    R t("1e-4");
    auto ns = bcut::newborn_scaling(s, t);
    auto mu = bcut::solve_two_cut(s.V, s.Tc + t, {R(-2), R(2), ns.c, ns.d});
    std::ostringstream os;
    bcut::write_measure(os, mu);
    std::istringstream is(os.str());
    auto nu = bcut::measure_from_key_values<R>(bcut::parse_key_values(is));
    EXPECT_EQ(nu.s, 2);
    for (int i = 0; i < 4; ++i) EXPECT_TRUE(nu.ends[i] == mu.ends[i]);
    EXPECT_NEAR(d(nu.x0 - mu.x0), 0.0, 1e-30);
    EXPECT_NEAR(d(nu.m - mu.m), 0.0, 1e-30);
    EXPECT_NEAR(d(nu.density(R("3.1")) - mu.density(R("3.1"))), 0.0, 1e-30);
}

TEST(MeasureIO, RejectsInconsistentBlocks) {
    EXPECT_THROW(bcut::measure_from_key_values<R>(kv("s = 3\nT = 1\nends = -2 2\nV = 0 0 0.5\nM = 1\n")),
                 bcut::parse_error);
    EXPECT_THROW(bcut::measure_from_key_values<R>(kv("s = 1\nT = 1\nends = -2 2 3\nV = 0 0 0.5\nM = 1\n")),
                 bcut::parse_error);
    EXPECT_THROW(bcut::measure_from_key_values<R>(kv("s = 1\nT = 1\nends = 2 -2\nV = 0 0 0.5\nM = 1\n")),
                 bcut::parse_error);
    auto mu = bcut::measure_from_key_values<R>(kv("s = 1\nT = 1\nends = -2 2\nV = 0 0 0.5\nM = 1\n"));
    EXPECT_NEAR(d(mu.density(R(0))), 1.0 / M_PI, 1e-30);
}

TEST(FileIO, MissingFileThrows) {
    EXPECT_THROW(bcut::read_key_values("/nonexistent/spec.txt"), std::ios_base::failure);
}

TEST(Csv, RowsAndColumns) {
    std::ostringstream os;
    bcut::CsvWriter w(os, {"a", "b", "c", "d"});
    w.row(1, 0.5, std::string("x"), R("0.25"));
    w.row(2L, true, "y", 1e-20);
    EXPECT_EQ(os.str(), "a,b,c,d\n1,0.5,x,2.50000000000000000000e-01\n2,1,y,9.9999999999999995e-21\n");
    EXPECT_THROW(w.row(1, 2), std::logic_error);
}

TEST(Tables, ChainTableHasOneRowPerIndex) {
    auto ch = bcut::build_chain<R>(1, 5, R(1), 512);
    std::ostringstream os;
    bcut::write_chain_table(os, ch);
    std::string text = os.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 7);
    EXPECT_EQ(text.rfind("k,ln_zeta,gamma,ln_A\n", 0), 0u);
}
