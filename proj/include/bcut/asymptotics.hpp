#pragma once

#include "critical.hpp"
#include "equilibrium.hpp"
#include "modelchain.hpp"
#include "potentials.hpp"
#include "real.hpp"
#include "specialfn.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace bcut {

// A point n = N + p of the ln N scaling regime; N and p are real (see README)
template <class T>
struct RegimePoint {
    T N;
    T p;
    T u;
    int ubar = 0;
    int eps_u = 1;
    bool valid_Z = false;
    bool valid_psi = false;
};

inline constexpr double regime_guard = 0.02;

template <class T>
RegimePoint<T> make_regime(const CriticalSpec<T>& s, const T& N, const T& p) {
    using std::abs; using std::floor; using std::log; using std::round;
    if (!(N >= 3)) throw domain_error("make_regime: N must be >= 3");
    RegimePoint<T> r;
    r.N = N;
    r.p = p;
    r.u = 2 * T(s.nu) * s.phi_e * p / log(N);
    r.ubar = r.u >= 0 ? static_cast<int>(floor(to_double(r.u) + 0.5)) : 0;
    r.eps_u = (r.u > 0 && r.u < T(r.ubar)) ? -1 : 1;
    double ud = to_double(r.u);
    double to_int = std::abs(ud - std::round(ud));
    double to_half = std::abs(ud - std::floor(ud) - 0.5);
    r.valid_Z = ud > regime_guard && to_int >= regime_guard;
    r.valid_psi = ud > 0.5 + regime_guard && to_half >= regime_guard;
    return r;
}

template <class T>
RegimePoint<T> make_regime_u(const CriticalSpec<T>& s, const T& N, const T& u) {
    using std::log;
    return make_regime(s, N, T(u * log(N) / (2 * T(s.nu) * s.phi_e)));
}

// x = e + scale * y, scale = N^(-1/2nu) (2 sinh(phi_e) Q(e) / Tc)^(-1/2nu)
template <class T>
struct ScalingMap {
    T e;
    T scale;
    T x_of_y(const T& y) const { return e + scale * y; }
    T y_of_x(const T& x) const { return (x - e) / scale; }
    T dy_dx() const { return 1 / scale; }
};

template <class T>
ScalingMap<T> make_scaling(const CriticalSpec<T>& s, const T& N) {
    using std::pow; using std::sinh;
    T c = 2 * sinh(s.phi_e) * s.Q(s.e) / s.Tc;
    return {s.e, pow(T(N * c), T(-1) / T(2 * s.nu))};
}

namespace detail {

template <class T>
T log_sum_exp(const std::vector<T>& v) {
    using std::exp; using std::log;
    T m = v.front();
    for (const auto& x : v)
        if (x > m) m = x;
    T s = 0;
    for (const auto& x : v) s += exp(x - m);
    return m + log(s);
}

template <class T>
int sum_limit(const ModelChain<T>& ch, const RegimePoint<T>& rp) {
    int need = rp.ubar + 10;
    if (need > ch.k_max) throw domain_error("chain too short: need k_max >= " + std::to_string(need));
    return ch.k_max;
}

} // namespace detail

// ln sum_k N^(-k^2/2nu) e^(2 k q phi_e) A_k
template <class T>
T ln_sector_sum(const CriticalSpec<T>& s, const ModelChain<T>& ch, const T& N, const T& q, int kmax) {
    using std::log;
    T lN = log(N);
    std::vector<T> t;
    for (int k = 0; k <= kmax; ++k)
        t.push_back(-T(k) * T(k) / T(2 * s.nu) * lN + 2 * T(k) * q * s.phi_e + ch.ln_A[k]);
    return detail::log_sum_exp(t);
}

// mean sector index <k> at shift q
template <class T>
T mean_sector(const CriticalSpec<T>& s, const ModelChain<T>& ch, const T& N, const T& q, int kmax) {
    using std::exp; using std::log;
    T lN = log(N);
    std::vector<T> t;
    for (int k = 0; k <= kmax; ++k)
        t.push_back(-T(k) * T(k) / T(2 * s.nu) * lN + 2 * T(k) * q * s.phi_e + ch.ln_A[k]);
    T L = detail::log_sum_exp(t);
    T m = 0;
    for (int k = 0; k <= kmax; ++k) m += T(k) * exp(t[k] - L);
    return m;
}

template <class T>
struct ZSum {
    T ln_sum;             // ln sum_k N^((2ku-k^2)/2nu) A_k
    T ln_known_prefactor; // ln H_N + p ln 2pi - p N Veff(e)/Tc (F-bar factors left out)
    int dominant_k;
    int terms;
};

template <class T>
ZSum<T> sum_Z(const CriticalSpec<T>& s, const ModelChain<T>& ch, const RegimePoint<T>& rp, const T& veff_e = T(0)) {
    using std::log;
    int kmax = detail::sum_limit(ch, rp);
    T lN = log(rp.N);
    std::vector<T> t;
    int best = 0;
    for (int k = 0; k <= kmax; ++k) {
        t.push_back((2 * T(k) * rp.u - T(k) * T(k)) / T(2 * s.nu) * lN + ch.ln_A[k]);
        if (t.back() > t[best]) best = k;
    }
    ZSum<T> z;
    z.ln_sum = detail::log_sum_exp(t);
    long Ni = static_cast<long>(to_double(rp.N));
    z.ln_known_prefactor = ln_Hn<T>(Ni) + rp.p * log(two_pi<T>()) - rp.p * rp.N * veff_e / s.Tc;
    z.dominant_k = best;
    z.terms = kmax + 1;
    return z;
}

template <class T>
T gamma_full(const CriticalSpec<T>& s, const ModelChain<T>& ch, const RegimePoint<T>& rp) {
    using std::exp;
    int kmax = detail::sum_limit(ch, rp);
    T a = ln_sector_sum(s, ch, rp.N, T(rp.p + 1), kmax);
    T b = ln_sector_sum(s, ch, rp.N, T(rp.p - 1), kmax);
    T c = ln_sector_sum(s, ch, rp.N, rp.p, kmax);
    return exp((a + b) / 2 - c);
}

template <class T>
T beta_full(const CriticalSpec<T>& s, const ModelChain<T>& ch, const RegimePoint<T>& rp) {
    using std::sinh;
    int kmax = detail::sum_limit(ch, rp);
    return 2 * sinh(s.phi_e) *
           (mean_sector(s, ch, rp.N, T(rp.p + 1), kmax) - mean_sector(s, ch, rp.N, rp.p, kmax));
}

namespace detail {

// N^((|u-ubar| - 1/2)/nu) A_{ubar+eps}/A_ubar
template <class T>
T sector_ratio(const CriticalSpec<T>& s, const ModelChain<T>& ch, const RegimePoint<T>& rp) {
    using std::abs; using std::exp; using std::log;
    int k2 = rp.ubar + rp.eps_u;
    if (k2 < 0) k2 = rp.ubar + 1;
    return exp((abs(rp.u - T(rp.ubar)) - T(1) / 2) / T(s.nu) * log(rp.N) + ch.ln_A.at(k2) - ch.ln_A.at(rp.ubar));
}

} // namespace detail

template <class T>
T gamma_reduced(const CriticalSpec<T>& s, const ModelChain<T>& ch, const RegimePoint<T>& rp) {
    using std::sinh;
    T sh = sinh(s.phi_e);
    return 1 + 2 * sh * sh * detail::sector_ratio(s, ch, rp);
}

template <class T>
T beta_reduced(const CriticalSpec<T>& s, const ModelChain<T>& ch, const RegimePoint<T>& rp) {
    using std::exp; using std::sinh;
    T sh = sinh(s.phi_e);
    return 4 * sh * sh * detail::sector_ratio(s, ch, rp) * exp(T(rp.eps_u) * s.phi_e);
}

namespace detail {

// sqrt(A_{k+1} A_k) psihat_k for k >= -1
template <class T>
T weighted_psihat(const CriticalSpec<T>& s, const ModelChain<T>& ch, int k, const T& y, const std::vector<T>& ph) {
    using std::exp; using std::pow; using std::sqrt;
    if (k == -1) return sqrt(two_pi<T>() / ch.A_const) * exp(pow(y, 2 * s.nu) / T(4 * s.nu));
    return exp((ch.ln_A[k] + ch.ln_A[k + 1]) / 2) * ph[k];
}

} // namespace detail

// psi_{N+q}(x(y)) from the full sector sum, q = p for psi_n and q = p - 1 for psi_{n-1}
template <class T>
T psi_full_at(const CriticalSpec<T>& s, const ModelChain<T>& ch, const T& N, const T& q, const T& y, int kmax,
              T* deriv = nullptr) {
    using std::exp; using std::log; using std::sinh; using std::sqrt;
    T lN = log(N);
    T sh = sinh(s.phi_e);
    std::vector<T> ps, dps;
    psi_model_all(ch, kmax - 1, y, ps, deriv ? &dps : nullptr);
    T num = 0, dnum = 0;
    for (int k = 0; k < kmax; ++k) {
        T kh = T(k) + T(1) / 2;
        T w = exp(-kh * kh / T(2 * s.nu) * lN + 2 * kh * q * s.phi_e + kh * s.phi_e + (ch.ln_A[k] + ch.ln_A[k + 1]) / 2);
        num += w * ps[k];
        if (deriv) dnum += w * dps[k];
    }
    T den = exp((ln_sector_sum(s, ch, N, T(q + 1), kmax) + ln_sector_sum(s, ch, N, q, kmax)) / 2);
    T pre = exp(lN / T(8 * s.nu)) * sqrt(ch.A_const / (2 * sh)) / den;
    if (deriv) *deriv = pre * dnum;
    return pre * num;
}

// phi_{N+q-1}(x(y)) from the full sum shifted to start at k = -1
template <class T>
T phi_full_at(const CriticalSpec<T>& s, const ModelChain<T>& ch, const T& N, const T& q, const T& y, int kmax) {
    using std::exp; using std::log; using std::sinh; using std::sqrt;
    T lN = log(N);
    T sh = sinh(s.phi_e);
    std::vector<T> ph;
    psihat_model_all(ch, kmax - 1, y, ph);
    T num = 0;
    for (int k = -1; k < kmax; ++k) {
        T kh = T(k) + T(1) / 2;
        T w = exp(-kh * kh / T(2 * s.nu) * lN + 2 * kh * q * s.phi_e - kh * s.phi_e);
        num += w * detail::weighted_psihat(s, ch, k, y, ph);
    }
    T den = exp((ln_sector_sum(s, ch, N, q, kmax) + ln_sector_sum(s, ch, N, T(q - 1), kmax)) / 2);
    return exp(lN / T(8 * s.nu)) * sqrt(ch.A_const / (2 * sh)) * num / den;
}

template <class T>
using Mat2 = std::array<std::array<T, 2>, 2>;

// [[psi_{n-1}, phi_{n-1}], [psi_n, phi_n]] from the full sums
template <class T>
Mat2<T> Psi_full(const CriticalSpec<T>& s, const ModelChain<T>& ch, const RegimePoint<T>& rp, const T& y) {
    int kmax = detail::sum_limit(ch, rp) - 1;
    Mat2<T> m;
    m[0][0] = psi_full_at(s, ch, rp.N, T(rp.p - 1), y, kmax);
    m[1][0] = psi_full_at(s, ch, rp.N, rp.p, y, kmax);
    m[0][1] = phi_full_at(s, ch, rp.N, rp.p, y, kmax);
    m[1][1] = phi_full_at(s, ch, rp.N, T(rp.p + 1), y, kmax);
    return m;
}

// two-sector reduction sqrt(A/2sh) L^-1 [[e^(phi/2), e^(-phi/2)], [e^(-phi/2), e^(phi/2)]] R [[psi, psihat]_{ubar-1}; [psi, psihat]_ubar]
template <class T>
Mat2<T> Psi_matrix(const CriticalSpec<T>& s, const ModelChain<T>& ch, const RegimePoint<T>& rp, const T& y) {
    using std::cosh; using std::exp; using std::log; using std::sinh; using std::sqrt;
    const int ub = rp.ubar;
    if (ub + 1 > ch.k_max) throw domain_error("Psi_matrix: chain too short");
    T lN = log(rp.N);
    T sh = sinh(s.phi_e), ph = s.phi_e;
    T du = (rp.u - T(ub)) / T(2 * s.nu) * lN;
    std::vector<T> ps, phat;
    psi_model_all(ch, ub, y, ps);
    psihat_model_all(ch, ub, y, phat);
    // R-weighted rows: R1 * (psi_{ub-1}, psihat_{ub-1}), R2 * (psi_ub, psihat_ub)
    T r1psi = 0, r1hat;
    T lnAu = ch.ln_A[ub];
    if (ub >= 1) {
        T R1 = exp(-du + (ch.ln_A[ub - 1] - lnAu) / 2);
        r1psi = R1 * ps[ub - 1];
        r1hat = R1 * phat[ub - 1];
    } else {
        // sqrt(A_{-1}/A_0) psihat_{-1} = sqrt(A_0 A_{-1}) psihat_{-1} / A_0
        r1hat = exp(-du) * detail::weighted_psihat(s, ch, -1, y, phat);
    }
    T R2 = exp(du + (ch.ln_A[ub + 1] - lnAu) / 2);
    T r2psi = R2 * ps[ub], r2hat = R2 * phat[ub];
    T ep = exp(ph / 2), em = exp(-ph / 2);
    T corr = cosh(ph) * detail::sector_ratio(s, ch, rp);
    T L1 = 1 + corr * exp(-T(rp.eps_u) * ph);
    T L2 = 1 + corr * exp(T(rp.eps_u) * ph);
    T pre = sqrt(ch.A_const / (2 * sh));
    Mat2<T> m;
    m[0][0] = pre * (ep * r1psi + em * r2psi) / L1;
    m[0][1] = pre * (ep * r1hat + em * r2hat) / L1;
    m[1][0] = pre * (em * r1psi + ep * r2psi) / L2;
    m[1][1] = pre * (em * r1hat + ep * r2hat) / L2;
    return m;
}

template <class T>
T psi_reduced(const CriticalSpec<T>& s, const ModelChain<T>& ch, const RegimePoint<T>& rp, const T& y, int shift = 0) {
    return Psi_matrix(s, ch, rp, y)[shift == 0 ? 1 : 0][0];
}

template <class T>
T phi_reduced(const CriticalSpec<T>& s, const ModelChain<T>& ch, const RegimePoint<T>& rp, const T& y, int shift = 0) {
    return Psi_matrix(s, ch, rp, y)[shift == 0 ? 1 : 0][1];
}

// K_ubar(y, y'), the reduced kernel per unit y
template <class T>
T kernel_reduced_y(const ModelChain<T>& ch, const RegimePoint<T>& rp, const T& y, const T& y2) {
    if (rp.ubar < 1) return 0;
    return kernel_model(ch, rp.ubar, y, y2);
}

// K_n(x, x') ~ K_ubar(y, y') dy/dx
template <class T>
T kernel_reduced(const CriticalSpec<T>& s, const ModelChain<T>& ch, const RegimePoint<T>& rp, const T& x, const T& x2) {
    auto sm = make_scaling(s, rp.N);
    return kernel_reduced_y(ch, rp, sm.y_of_x(x), sm.y_of_x(x2)) * sm.dy_dx();
}

// Christoffel-Darboux kernel from the full-sum psi_n, psi_{n-1}, per unit y
template <class T>
T kernel_full_y(const CriticalSpec<T>& s, const ModelChain<T>& ch, const RegimePoint<T>& rp, const T& y, const T& y2) {
    using std::abs;
    int kmax = detail::sum_limit(ch, rp) - 1;
    T g = gamma_full(s, ch, rp);
    if (abs(y - y2) < T("1e-8")) {
        T d1, d0;
        T f1 = psi_full_at(s, ch, rp.N, rp.p, y, kmax, &d1);
        T f0 = psi_full_at(s, ch, rp.N, T(rp.p - 1), y, kmax, &d0);
        return g * (d1 * f0 - d0 * f1);
    }
    T a1 = psi_full_at(s, ch, rp.N, rp.p, y, kmax), a0 = psi_full_at(s, ch, rp.N, T(rp.p - 1), y, kmax);
    T b1 = psi_full_at(s, ch, rp.N, rp.p, y2, kmax), b0 = psi_full_at(s, ch, rp.N, T(rp.p - 1), y2, kmax);
    return g * (a1 * b0 - a0 * b1) / (y - y2);
}

template <class T>
struct LargeUReport {
    T u_center;
    T t;  // matched temperature offset Tc p / N
    T gamma_full_min, gamma_full_max;
    T gamma_red_min, gamma_red_max;
    T beta_full_min, beta_full_max;
    T beta_red_min, beta_red_max;
    // asymptotic bounds 1 + zeta w <= gamma <= cosh phi_e, 2 zeta w <= beta <= e - 2
    T gamma_lo, gamma_hi, beta_lo, beta_hi;
    // classical bounds from the two-cut equilibrium measure, when it could be solved
    bool have_solver = false;
    ClassicalGammaBeta<T> solver{};
    bool full_inside = false;
    bool reduced_inside = false;
};

// scan u over [u0 - 0.48, u0 + 0.48] at fixed N and compare envelopes with the two-cut bounds
template <class T>
LargeUReport<T> large_u_match(const CriticalSpec<T>& s, const ModelChain<T>& ch, const T& N, const T& u0,
                              const T& rel_tol = T("0.02"), int samples = 49) {
    using std::cosh; using std::log; using std::pow; using std::sqrt;
    if (u0 < 3) throw domain_error("large_u_match: u must be >= 3");
    LargeUReport<T> r;
    r.u_center = u0;
    bool first = true;
    for (int i = 0; i < samples; ++i) {
        T u = u0 - T("0.48") + T("0.96") * T(i) / T(samples - 1);
        auto rp = make_regime_u(s, N, u);
        T gf = gamma_full(s, ch, rp), gr = gamma_reduced(s, ch, rp);
        T bf = beta_full(s, ch, rp), br = beta_reduced(s, ch, rp);
        if (first) {
            r.gamma_full_min = r.gamma_full_max = gf;
            r.gamma_red_min = r.gamma_red_max = gr;
            r.beta_full_min = r.beta_full_max = bf;
            r.beta_red_min = r.beta_red_max = br;
            first = false;
        }
        r.gamma_full_min = std::min(r.gamma_full_min, gf);
        r.gamma_full_max = std::max(r.gamma_full_max, gf);
        r.gamma_red_min = std::min(r.gamma_red_min, gr);
        r.gamma_red_max = std::max(r.gamma_red_max, gr);
        r.beta_full_min = std::min(r.beta_full_min, bf);
        r.beta_full_max = std::max(r.beta_full_max, bf);
        r.beta_red_min = std::min(r.beta_red_min, br);
        r.beta_red_max = std::max(r.beta_red_max, br);
    }
    auto rp0 = make_regime_u(s, N, u0);
    r.t = s.Tc * rp0.p / N;
    T lt = log(r.t / s.Tc);
    T zeta = newborn_zeta(s);
    T w = pow(T(-r.t / lt), T(1) / T(2 * s.nu));
    r.gamma_lo = 1 + zeta * w;
    r.gamma_hi = cosh(s.phi_e);
    r.beta_lo = 2 * zeta * w;
    r.beta_hi = s.e - 2;
    try {
        auto ns = newborn_scaling(s, r.t);
        auto mu = solve_two_cut(s.V, T(s.Tc + r.t), {T(-2), T(2), ns.c, ns.d});
        r.solver = classical_gamma_beta(mu);
        r.have_solver = true;
    } catch (const std::exception&) {
        r.have_solver = false;
    }
    auto near = [&](const T& v, const T& target) {
        using std::abs;
        return abs(v - target) <= rel_tol * abs(target);
    };
    r.full_inside = near(r.gamma_full_min, r.gamma_lo) && near(r.gamma_full_max, r.gamma_hi) &&
                    r.gamma_full_max <= r.gamma_hi * (1 + rel_tol) && r.beta_full_max <= r.beta_hi * (1 + rel_tol);
    r.reduced_inside = r.gamma_red_max <= r.gamma_hi * (1 + rel_tol) && r.gamma_red_min >= r.gamma_lo * (1 - rel_tol) &&
                       r.beta_red_max <= r.beta_hi * (1 + rel_tol);
    return r;
}

} // namespace bcut
