#pragma once

#include "potentials.hpp"
#include "real.hpp"
#include "specialfn.hpp"

#include <cmath>

namespace bcut {

namespace detail {

// (e -+ 2)^(2nu-1) Q(+-2)
template <class T>
T edge_factor(const CriticalSpec<T>& s, int side) {
    using std::pow;
    T x = T(2 * side);
    T f = side > 0 ? T(s.e - 2) : T(s.e + 2);
    return pow(f, 2 * s.nu - 1) * s.Q(x);
}

template <class T>
T ln_ratio(const CriticalSpec<T>& s, const T& t) {
    using std::log;
    return log(t / s.Tc);
}

} // namespace detail

template <class T>
struct OneCutDrift {
    T a, b;
    T gamma_n, beta_n;
};

template <class T>
OneCutDrift<T> one_cut_drift(const CriticalSpec<T>& s, const T& t) {
    if (t > 0) throw domain_error("one_cut_drift: t must be <= 0");
    T fm = detail::edge_factor(s, -1), fp = detail::edge_factor(s, 1);
    OneCutDrift<T> r;
    r.a = -2 + t / fm;
    r.b = 2 - t / fp;
    r.gamma_n = 1 - t / 4 * (1 / fp + 1 / fm);
    r.beta_n = -t / 2 * (1 / fp - 1 / fm);
    return r;
}

// G(xi) = sum_{k<nu} (2k)!/(k!)^2 zeta^(2k) xi^(2(nu-1-k))
template <class T>
Poly<T> G_polynomial(int nu, const T& zeta) {
    using std::pow;
    if (nu < 1) throw domain_error("G_polynomial: nu must be >= 1");
    std::vector<T> c(2 * nu - 1, T(0));
    T binom = 1;  // (2k)!/(k!)^2
    for (int k = 0; k < nu; ++k) {
        c[2 * (nu - 1 - k)] = binom * pow(zeta, 2 * k);
        binom = binom * T(2 * (2 * k + 1)) / T(k + 1);
    }
    return Poly<T>(std::move(c));
}

template <class T>
T newborn_zeta(const CriticalSpec<T>& s) {
    using std::lgamma; using std::exp; using std::pow; using std::sinh;
    int nu = s.nu;
    T sh = sinh(s.phi_e);
    T lf = lgamma(T(nu + 1)) + lgamma(T(nu)) - lgamma(T(2 * nu + 1));
    T base = 2 * T(nu) * T(nu) * s.phi_e / (sh * s.Q(s.e)) * exp(lf);
    return pow(base, T(1) / T(2 * nu));
}

template <class T>
struct NewbornScaling {
    T zeta;
    T C;
    Poly<T> G;
    T c, d;
    T delta_x0;
    T m_asym;
    T tau_asym;  // tau = i * tau_asym
    T epsilon;
};

template <class T>
NewbornScaling<T> newborn_scaling(const CriticalSpec<T>& s, const T& t) {
    using std::pow; using std::sinh;
    if (!(t > 0)) throw domain_error("newborn_scaling: t must be > 0");
    int nu = s.nu;
    T sh = sinh(s.phi_e);
    T lt = detail::ln_ratio(s, t);
    NewbornScaling<T> r;
    r.zeta = newborn_zeta(s);
    r.C = 4 * T(nu) * T(nu) * s.phi_e / (sh * s.Q(s.e));
    r.G = G_polynomial(nu, r.zeta);
    T w = pow(T(-t / lt), T(1) / T(2 * nu));
    r.c = s.e - 2 * r.zeta * w;
    r.d = s.e + 2 * r.zeta * w;
    r.delta_x0 = 4 * T(nu) * s.phi_e * sh / lt;
    r.m_asym = 4 * r.zeta / (sh * sh) * w;
    r.tau_asym = -lt / (2 * T(nu) * pi<T>());
    r.epsilon = -2 * T(nu) * s.phi_e * t / (s.Tc * lt);
    return r;
}

// mean number of eigenvalues in the newborn well, k ~ 2 nu phi_e (n - N) / ln N
template <class T>
T expected_count(const CriticalSpec<T>& s, const T& N, const T& n) {
    using std::log;
    if (n < N) throw domain_error("expected_count: n must be >= N");
    return 2 * T(s.nu) * s.phi_e * (n - N) / log(N);
}

// d^2 F / dt^2 on either side of the transition
template <class T>
T transition_curvature(const CriticalSpec<T>& s, const T& t) {
    if (t == 0) throw domain_error("transition_curvature: t must be nonzero");
    if (t < 0) {
        T fm = detail::edge_factor(s, -1), fp = detail::edge_factor(s, 1);
        return t / 2 * (1 / fp + 1 / fm);
    }
    return 4 * T(s.nu) * s.phi_e * s.phi_e / detail::ln_ratio(s, t);
}

} // namespace bcut
