#pragma once

#include "asymptotics.hpp"
#include "critical.hpp"
#include "equilibrium.hpp"
#include "modelchain.hpp"
#include "oracle.hpp"
#include "potentials.hpp"

#include <cmath>
#include <vector>

namespace bcut {

// Integer n and real N with n = N + p, p = u ln N / (2 nu phi_e), N close to N0
template <class T>
struct UPoint {
    T N;
    int n = 0;
    T p;
    T u;
};

template <class T>
UPoint<T> continuous_u_point(const CriticalSpec<T>& s, int N0, const T& u) {
    using std::abs; using std::ceil; using std::log;
    if (N0 < 3) throw domain_error("continuous_u_point: N0 must be >= 3");
    T k = 2 * T(s.nu) * s.phi_e;
    T p0 = u * log(T(N0)) / k;
    UPoint<T> r;
    r.u = u;
    r.n = N0 + static_cast<int>(to_double(ceil(p0)));
    T N = T(r.n) - p0;
    for (int it = 0; it < 200; ++it) {
        T Nn = T(r.n) - u * log(N) / k;
        if (abs(Nn - N) < eps<T>() * 16 * N) {
            N = Nn;
            break;
        }
        N = Nn;
    }
    r.N = N;
    r.p = T(r.n) - N;
    return r;
}

template <class T>
int default_n_extra(int N0) {
    return static_cast<int>(std::ceil(3 * std::log(double(N0))));
}

template <class T>
struct ScanRow {
    T N;
    int n = 0;
    T p, u;
    int ubar = 0;
    int eps_u = 1;
    bool valid = false;  // outside the guard bands around integer and half-integer u
    T gamma_oracle, gamma_reduced, gamma_full;
    T beta_oracle, beta_reduced, beta_full;
    T rel_err_gamma, rel_err_beta;
};

inline bool away_from_guards(double u, double guard = regime_guard) {
    double to_int = std::abs(u - std::round(u));
    double to_half = std::abs(u - std::floor(u) - 0.5);
    return u > guard && to_int >= guard && to_half >= guard;
}

// Oracle and asymptotic recurrence coefficients at one u
template <class T>
ScanRow<T> scan_point(const CriticalSpec<T>& s, const ModelChain<T>& ch, int N0, const T& u, int nodes = 6000) {
    using std::abs; using std::pow;
    auto up = continuous_u_point(s, N0, u);
    auto rc = build_rec_chain(s.V, up.N, s.Tc, up.n + 2, nodes);
    auto rp = make_regime(s, up.N, up.p);
    ScanRow<T> r;
    r.N = up.N;
    r.n = up.n;
    r.p = up.p;
    r.u = rp.u;
    r.ubar = rp.ubar;
    r.eps_u = rp.eps_u;
    r.valid = away_from_guards(to_double(rp.u));
    r.gamma_oracle = rc.gamma[up.n];
    r.beta_oracle = rc.beta[up.n];
    r.gamma_reduced = gamma_reduced(s, ch, rp);
    r.beta_reduced = beta_reduced(s, ch, rp);
    r.gamma_full = gamma_full(s, ch, rp);
    r.beta_full = beta_full(s, ch, rp);
    T floor_ = pow(up.N, T(-1) / T(2 * s.nu));
    r.rel_err_gamma = abs(r.gamma_oracle - r.gamma_reduced) / (r.gamma_reduced - 1 + floor_);
    r.rel_err_beta = abs(r.beta_oracle - r.beta_reduced) / (abs(r.beta_reduced) + floor_);
    return r;
}

// chain covering the sector sums for u up to u_max
template <class T>
ModelChain<T> chain_for(const CriticalSpec<T>& s, double u_max, int nodes = 2048) {
    int k = static_cast<int>(std::floor(u_max + 0.5)) + 12;
    return build_chain<T>(s.nu, k, A_constant(s), nodes);
}

// expected number of eigenvalues above e_tilde at the point u
template <class T>
struct CountPoint {
    UPoint<T> point;
    int ubar = 0;
    T count_sum;  // diagonal by direct summation
    T count_cd;   // diagonal from the Christoffel-Darboux derivative form
    T count_formula;
};

template <class T>
CountPoint<T> count_at_u(const CriticalSpec<T>& s, int N0, const T& u, int nodes = 6000) {
    CountPoint<T> c;
    c.point = continuous_u_point(s, N0, u);
    auto rc = build_rec_chain(s.V, c.point.N, s.Tc, c.point.n + 1, nodes);
    c.ubar = make_regime(s, c.point.N, c.point.p).ubar;
    c.count_sum = expected_count_exact(rc, c.point.n, s.e_tilde, rc.x_max);
    c.count_cd = expected_count_exact(rc, c.point.n, s.e_tilde, rc.x_max, true);
    c.count_formula = expected_count(s, c.point.N, T(c.point.N + c.point.p));
    return c;
}

// second derivative of F from the equilibrium solver (-2 ln gamma) and from the closed forms
template <class T>
struct TransitionRow {
    T t;
    T solver;
    T formula;
    bool ok = false;
};

template <class T>
TransitionRow<T> transition_point(const CriticalSpec<T>& s, const T& t) {
    TransitionRow<T> r;
    r.t = t;
    r.formula = transition_curvature(s, t);
    if (t < 0) {
        auto d = one_cut_drift(s, t);
        auto mu = solve_one_cut(s.V, T(s.Tc + t), {d.a, d.b});
        r.solver = thermo_derivatives(mu).d2F_dT2;
    } else {
        auto ns = newborn_scaling(s, t);
        auto mu = solve_two_cut(s.V, T(s.Tc + t), {T(-2), T(2), ns.c, ns.d});
        r.solver = thermo_derivatives(mu).d2F_dT2;
    }
    r.ok = true;
    return r;
}

} // namespace bcut
