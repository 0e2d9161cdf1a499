#pragma once

#include "poly.hpp"
#include "quadrature.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace bcut {

template <class T>
struct CriticalSpec {
    int nu = 1;
    T e;
    T phi_e;
    Poly<T> Q;
    T e_tilde;
    Poly<T> V;
    T Tc;
    int d = 0;  // deg V = d + 1

    // (x - e)^(2nu-1) Q(x), the polynomial multiplying sqrt(x^2 - 4) in V'
    Poly<T> P() const { return Poly<T>::linear_factor(e).pow(2 * nu - 1) * Q; }
    // same, evaluated in factored form
    T eval_P(const T& x) const {
        T f = x - e, r = Q(x);
        for (int i = 0; i < 2 * nu - 1; ++i) r *= f;
        return r;
    }
};

namespace detail {

// int_0^tmax P(+-2 cosh t) g(+-2cosh t) 4 sinh^2 t dt, i.e. int of P(x) g(x) sqrt(x^2-4) dx
// from 2 to 2cosh(tmax) (side = +1) or from -2cosh(tmax) to -2 (side = -1)
template <class T, class PF, class G>
QuadResult<T> cosh_integral(PF&& P, G&& g, const T& tmax, int side, const T& rel_tol) {
    auto f = [&](const T& t) {
        using std::cosh; using std::sinh;
        T x = T(2 * side) * cosh(t);
        T s = sinh(t);
        return P(x) * g(x) * 4 * s * s;
    };
    return integrate(f, T(0), tmax, rel_tol);
}

template <class T>
T default_tol() {
    using std::max;
    return max(T(eps<T>() * 1000), T("1e-32"));
}

} // namespace detail

template <class T>
struct QResult {
    Poly<T> Q;
    T e_tilde;
};

template <class T>
QResult<T> build_critical_Q(int nu, const T& e, const Poly<T>& Q_tilde, const T& rel_tol = detail::default_tol<T>()) {
    using std::acosh;
    if (nu < 1) throw domain_error("build_critical_Q: nu must be >= 1");
    if (!(e > 2)) throw domain_error("build_critical_Q: e must exceed 2");
    if (Q_tilde.is_zero() || Q_tilde.degree() % 2 != 0)
        throw domain_error("build_critical_Q: Q_tilde must have even degree");
    if (Q_tilde.leading() <= 0) throw domain_error("build_critical_Q: Q_tilde must have positive leading coefficient");
    if (Q_tilde.degree() > 0 && count_real_roots(Q_tilde) > 0)
        throw domain_error("build_critical_Q: Q_tilde has a real root");
    T phi = acosh(e / 2);
    auto P = [&](const T& x) {
        T f = x - e, r = Q_tilde(x);
        for (int i = 0; i < 2 * nu - 1; ++i) r *= f;
        return r;
    };
    auto one = [](const T&) { return T(1); };
    auto ident = [](const T& x) { return x; };
    T I0 = detail::cosh_integral(P, one, phi, 1, rel_tol).value;
    T I1 = detail::cosh_integral(P, ident, phi, 1, rel_tol).value;
    if (I0 == 0) throw numerical_error("build_critical_Q: vanishing normalisation integral");
    T et = I1 / I0;
    if (!(et > 2 && et < e)) throw numerical_error("build_critical_Q: e_tilde " + to_string(et, 12) + " not in (2,e)");
    return {Poly<T>::linear_factor(et) * Q_tilde, et};
}

template <class T>
struct PotentialResult {
    Poly<T> V;
    T Tc;
};

// V' = polynomial part of (x-e)^(2nu-1) Q sqrt(x^2-4) at infinity, Tc = -1/2 coefficient of 1/x
template <class T>
PotentialResult<T> build_potential(int nu, const T& e, const Poly<T>& Q) {
    Poly<T> P = Poly<T>::linear_factor(e).pow(2 * nu - 1) * Q;
    Poly<T> sig{T(-4), T(0), T(1)};
    auto L = P * sqrt_power_at_infinity(sig, false, P.degree() + 4);
    Poly<T> Vp = L.polynomial_part();
    T Tc = -L.coeff(-1) / 2;
    if (!(Tc > 0)) throw domain_error("build_potential: residue gives non-positive temperature " + to_string(Tc, 12));
    return {Vp.antiderivative(T(0)), Tc};
}

// closed form of e_tilde for the quartic nu = 1, Q_tilde = 1 family
template <class T>
T quartic_etilde(const T& phi_e) {
    using std::abs; using std::cosh; using std::sinh;
    if (!(phi_e > 0)) throw domain_error("quartic_etilde: phi_e must be positive");
    T ch = cosh(phi_e), sh = sinh(phi_e);
    T num = sh * ch * (5 - 2 * ch * ch) / 3 - phi_e;
    T den = 2 * (phi_e * ch - sh * (2 + ch * ch) / 3);
    if (abs(den) <= eps<T>() * 64 * (phi_e * ch))
        throw domain_error("quartic_etilde: vanishing denominator at phi_e = " + to_string(phi_e, 12));
    return num / den;
}

template <class T>
CriticalSpec<T> make_critical_spec(int nu, const T& e, const Poly<T>& Q_tilde) {
    using std::acosh;
    CriticalSpec<T> s;
    s.nu = nu;
    s.e = e;
    s.phi_e = acosh(e / 2);
    auto q = build_critical_Q(nu, e, Q_tilde);
    s.Q = q.Q;
    s.e_tilde = q.e_tilde;
    auto pot = build_potential(nu, e, s.Q);
    s.V = pot.V;
    s.Tc = pot.Tc;
    s.d = s.V.degree() - 1;
    return s;
}

template <class T>
CriticalSpec<T> make_quartic_spec(const T& phi_e) {
    using std::cosh;
    return make_critical_spec<T>(1, 2 * cosh(phi_e), Poly<T>::constant(T(1)));
}

struct Check {
    std::string name;
    bool passed = false;
    double value = 0;
    std::string detail;
};

struct ValidationReport {
    std::vector<Check> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    const Check* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

namespace check_names {
inline const char* nu = "nu >= 1";
inline const char* degree = "d odd, d > 2nu";
inline const char* deg_q = "deg Q = d - 2nu";
inline const char* q_lead = "Q leading coefficient > 0";
inline const char* q_neg = "Q < 0 on [-2,2]";
inline const char* q_e = "Q(e) > 0";
inline const char* q_odd = "Q has an odd number of roots in (2,e)";
inline const char* e_tilde = "e_tilde is a root of Q in (2,e)";
inline const char* phi = "e = 2 cosh(phi_e)";
inline const char* veff_e = "V_eff(e) = V_eff(2)";
inline const char* veff_left = "V_eff(x) > V_eff(-2) for x < -2";
inline const char* veff_right = "V_eff(x) > V_eff(2) for x > 2, x != e";
inline const char* vprime = "V' = Pol[(x-e)^(2nu-1) Q sqrt(x^2-4)]";
inline const char* tc = "Tc = Res/2";
inline const char* v_even = "deg V even";
inline const char* v_lead = "V leading coefficient > 0";
} // namespace check_names

namespace detail {

// log-spaced distances in (0, span]
template <class T>
std::vector<T> log_grid(const T& lo, const T& hi, int n) {
    using std::exp; using std::log;
    std::vector<T> g;
    T a = log(lo), b = log(hi);
    for (int i = 0; i < n; ++i) g.push_back(exp(a + (b - a) * T(i) / T(n - 1)));
    return g;
}

} // namespace detail

template <class T>
ValidationReport validate_critical(const CriticalSpec<T>& s) {
    using std::abs; using std::acosh; using std::cosh; using std::max; using std::min;
    ValidationReport rep;
    auto add = [&](const char* name, bool ok, double value, std::string detail = {}) {
        rep.checks.push_back({name, ok, value, std::move(detail)});
    };
    namespace cn = check_names;
    const T tol = T("1e-10");

    add(cn::nu, s.nu >= 1, s.nu);
    int degV = s.V.degree();
    int d = degV - 1;
    add(cn::degree, d % 2 != 0 && d > 2 * s.nu, d, "d = deg V - 1");
    add(cn::deg_q, s.Q.degree() == d - 2 * s.nu, s.Q.degree());
    add(cn::q_lead, s.Q.leading() > 0, to_double(s.Q.leading()));

    // Q < 0 on [-2,2]: no root there and negative at a point between consecutive roots
    {
        auto roots = s.Q.is_zero() ? std::vector<std::pair<T, T>>{} : isolate_real_roots(s.Q, T(-2) - eps<T>(), T(2));
        T qmax = s.Q(T(-2));
        for (const T& x : {T(-2), T(0), T(2)}) qmax = max(qmax, s.Q(x));
        bool ok = roots.empty() && qmax < 0;
        add(cn::q_neg, ok, to_double(qmax), roots.empty() ? "max of Q at probe points" : "Q has a root in [-2,2]");
    }
    T Qe = s.Q(s.e);
    add(cn::q_e, Qe > 0, to_double(Qe));
    {
        int n = s.Q.is_zero() ? 0 : count_real_roots(s.Q, T(2), s.e);
        add(cn::q_odd, n % 2 == 1, n);
    }
    {
        T qe = abs(s.Q(s.e_tilde)) / max(T(1), s.Q.max_abs_coeff());
        bool ok = s.e_tilde > 2 && s.e_tilde < s.e && qe < tol;
        add(cn::e_tilde, ok, to_double(qe));
    }
    {
        T diff = abs(2 * cosh(s.phi_e) - s.e) / s.e;
        add(cn::phi, diff < tol, to_double(diff));
    }

    auto P = [&s](const T& x) { return s.eval_P(x); };
    auto one = [](const T&) { return T(1); };
    const T qtol = detail::default_tol<T>();
    // int_2^e P sqrt(x^2-4) dx = 0
    T phi_e = acosh(s.e / 2);
    {
        auto r = detail::cosh_integral(P, one, phi_e, 1, qtol);
        T rel = r.abs_value > 0 ? abs(r.value) / r.abs_value : T(0);
        add(cn::veff_e, rel < tol, to_double(rel), "relative to int_2^e |P| sqrt(x^2-4)");
    }
    // positivity of int_x^{-2} and int_2^x on log grids, integrated incrementally
    {
        T span = max(T(10), 4 * s.e);
        auto grid = detail::log_grid(T("1e-6"), span, 160);
        auto f = [&](const T& tt) {
            using std::cosh; using std::sinh;
            T sh = sinh(tt);
            return P(-2 * cosh(tt)) * 4 * sh * sh;
        };
        T acc = 0, tprev = 0, worst = 0;
        bool ok = true, first = true;
        for (const T& delta : grid) {
            T t = acosh((2 + delta) / 2);
            acc += integrate(f, tprev, t, qtol).value;
            tprev = t;
            if (!(acc > 0)) ok = false;
            if (first || acc < worst) worst = acc;
            first = false;
        }
        add(cn::veff_left, ok, to_double(worst), "minimum over log-spaced grid");
    }
    {
        T span = max(T(10), 4 * s.e);
        std::vector<T> xs;
        for (const T& delta : detail::log_grid(T("1e-6"), span, 160)) xs.push_back(2 + delta);
        T gap = s.e - 2;
        for (const T& delta : detail::log_grid(gap * T("1e-4"), gap / 2, 40)) {
            xs.push_back(s.e - delta);
            xs.push_back(s.e + delta);
        }
        std::sort(xs.begin(), xs.end());
        T acc = 0, tprev = 0, worst = 0;
        bool ok = true, first = true;
        for (const T& x : xs) {
            T t = acosh(x / 2);
            // piece between consecutive grid points
            auto f = [&](const T& tt) {
                using std::cosh; using std::sinh;
                T sh = sinh(tt);
                return P(2 * cosh(tt)) * 4 * sh * sh;
            };
            acc += integrate(f, tprev, t, qtol).value;
            tprev = t;
            if (!(acc > 0)) ok = false;
            if (first || acc < worst) worst = acc;
            first = false;
        }
        add(cn::veff_right, ok, to_double(worst), "minimum over log-spaced grid");
    }
    {
        Poly<T> sig{T(-4), T(0), T(1)};
        auto L = s.P() * sqrt_power_at_infinity(sig, false, s.P().degree() + 4);
        Poly<T> Vp = L.polynomial_part();
        Poly<T> diff = Vp - s.V.derivative();
        T scale = max(T(1), Vp.max_abs_coeff());
        T rel = diff.max_abs_coeff() / scale;
        add(cn::vprime, rel < tol, to_double(rel));
        T Tc = -L.coeff(-1) / 2;
        T relT = abs(Tc - s.Tc) / max(T(1), abs(Tc));
        add(cn::tc, relT < tol && s.Tc > 0, to_double(relT));
    }
    add(cn::v_even, degV % 2 == 0 && degV > 0, degV);
    add(cn::v_lead, s.V.leading() > 0, to_double(s.V.leading()));
    return rep;
}

} // namespace bcut
