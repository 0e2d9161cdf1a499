#pragma once

#include "poly.hpp"
#include "quadrature.hpp"
#include "real.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace bcut {

// Exact finite-N recurrence data for the weight exp(-(N/Tc) V(x)).
//
// h_n, gamma_n, beta_n are defined through Z_n(T, V) at the n-dependent temperature
// T = Tc n / N. The coupling n / T = N / Tc does not depend on n, so every Z_n is a
// fixed-weight partition function and one Stieltjes pass over that weight gives them all.
template <class T>
struct RecChain {
    T N;
    T Tc;
    Poly<T> V;
    int n_max = 0;
    T v_shift;  // weight stored as exp(-(N/Tc)(V - v_shift))
    std::vector<T> ln_h;    // ln h_n of the true weight, n = 0..n_max
    std::vector<T> gamma;   // gamma[n] = gamma_n for n >= 1
    std::vector<T> beta;    // beta[n] = beta_n
    T x_min, x_max;
    int nodes = 0;
    int bits = 0;
    T ortho_error = 0;

    T coupling() const { return N / Tc; }
    T shifted_weight(const T& x) const {
        using std::exp;
        return exp(-coupling() * (V(x) - v_shift));
    }
    T ln_h_shifted(int n) const { return ln_h.at(n) + coupling() * v_shift; }
};

namespace detail {

template <class T>
T oracle_ln_threshold() {
    using std::log;
    return -T("0.3") * T(bits<T>()) * log(T(10));
}

// walk outward from x0 in direction dir until ln(weight x^(2n)) stays below the threshold
template <class T>
T oracle_bound(const Poly<T>& V, const T& c, const T& vmin, const T& x0, int dir, int n_max) {
    using std::abs; using std::log;
    const T thr = oracle_ln_threshold<T>();
    auto lw = [&](const T& x) { return -c * (V(x) - vmin) + 2 * T(n_max) * log(1 + abs(x)); };
    T step = T("0.05");
    T x = x0;
    for (int i = 0; i < 200000; ++i) {
        x += T(dir) * step;
        if (lw(x) < thr && lw(x + T(dir) * step) < lw(x)) return x;
        if (i % 200 == 199) step *= 2;
    }
    throw numerical_error("oracle: weight support did not close");
}

} // namespace detail

template <class T>
RecChain<T> build_rec_chain(const Poly<T>& V, const T& N, const T& Tc, int n_max, int nodes = 6000) {
    using std::abs; using std::log; using std::sqrt;
    if (!(N > 0) || !(Tc > 0)) throw domain_error("build_rec_chain: N and Tc must be positive");
    if (n_max < 1) throw domain_error("build_rec_chain: n_max must be >= 1");
    if (V.degree() < 2 || V.degree() % 2 != 0 || !(V.leading() > 0))
        throw domain_error("build_rec_chain: V must have even degree and positive leading coefficient");
    RecChain<T> ch;
    ch.N = N;
    ch.Tc = Tc;
    ch.V = V;
    ch.n_max = n_max;
    ch.bits = bits<T>();
    const T c = N / Tc;
    auto crit = real_roots(V.derivative());
    T lo = crit.front(), hi = crit.back();
    T vmin = V(crit.front());
    for (const auto& r : crit)
        if (V(r) < vmin) vmin = V(r);
    ch.v_shift = vmin;
    ch.x_min = detail::oracle_bound(V, c, vmin, lo, -1, n_max);
    ch.x_max = detail::oracle_bound(V, c, vmin, hi, 1, n_max);
    int panels = (nodes + 63) / 64;
    ch.nodes = panels * 64;
    auto rule = composite_gauss_legendre(ch.x_min, ch.x_max, panels, 64);
    const std::size_t M = rule.size();
    std::vector<T> W(M);
    T h0 = 0;
    for (std::size_t i = 0; i < M; ++i) {
        W[i] = rule.w[i] * ch.shifted_weight(rule.x[i]);
        h0 += W[i];
    }
    std::vector<T> q0(M, T(0)), q1(M), r(M);
    for (std::size_t i = 0; i < M; ++i) q1[i] = 1 / sqrt(h0);
    ch.ln_h.assign(n_max + 1, T(0));
    ch.gamma.assign(n_max + 1, T(0));
    ch.beta.assign(n_max + 1, T(0));
    T lnh = log(h0);
    ch.ln_h[0] = lnh - c * vmin;
    T g = 0, worst = 0;
    for (int n = 0; n < n_max; ++n) {
        T b = 0;
        for (std::size_t i = 0; i < M; ++i) b += W[i] * rule.x[i] * q1[i] * q1[i];
        ch.beta[n] = b;
        T nn = 0;
        for (std::size_t i = 0; i < M; ++i) {
            r[i] = (rule.x[i] - b) * q1[i] - g * q0[i];
            nn += W[i] * r[i] * r[i];
        }
        g = sqrt(nn);
        ch.gamma[n + 1] = g;
        lnh += 2 * log(g);
        ch.ln_h[n + 1] = lnh - c * vmin;
        T d1 = 0, d2 = 0, nrm = 0;
        for (std::size_t i = 0; i < M; ++i) {
            T v = r[i] / g;
            d1 += W[i] * v * q1[i];
            d2 += W[i] * v * q0[i];
            nrm += W[i] * v * v;
            q0[i] = q1[i];
            q1[i] = v;
        }
        for (const T& e : {abs(d1), abs(d2), T(abs(nrm - 1))})
            if (e > worst) worst = e;
    }
    {
        T b = 0;
        for (std::size_t i = 0; i < M; ++i) b += W[i] * rule.x[i] * q1[i] * q1[i];
        ch.beta[n_max] = b;
    }
    ch.ortho_error = worst;
    if (worst > T("1e-15"))
        throw numerical_error("build_rec_chain: orthogonality residual " + to_string(worst, 6) +
                              "; increase bits or nodes");
    return ch;
}

// psi_0..psi_n at x (psi_j = pi_j e^{-NV/2Tc} / sqrt(h_j)) and optional x-derivatives
template <class T>
void eval_psi_all(const RecChain<T>& ch, int n, const T& x, std::vector<T>& psi, std::vector<T>* dpsi = nullptr) {
    using std::exp; using std::sqrt;
    if (n < 0 || n > ch.n_max) throw domain_error("eval_psi: index out of range");
    std::vector<T> p(n + 1), dp(n + 1);
    p[0] = exp(-ch.ln_h_shifted(0) / 2);
    dp[0] = 0;
    for (int j = 0; j < n; ++j) {
        T prev = j > 0 ? p[j - 1] : T(0);
        T dprev = j > 0 ? dp[j - 1] : T(0);
        T gj = j > 0 ? ch.gamma[j] : T(0);
        p[j + 1] = ((x - ch.beta[j]) * p[j] - gj * prev) / ch.gamma[j + 1];
        dp[j + 1] = (p[j] + (x - ch.beta[j]) * dp[j] - gj * dprev) / ch.gamma[j + 1];
    }
    T w = sqrt(ch.shifted_weight(x));
    psi.resize(n + 1);
    for (int j = 0; j <= n; ++j) psi[j] = p[j] * w;
    if (dpsi) {
        T dlw = -ch.coupling() * ch.V.derivative()(x) / 2;
        dpsi->resize(n + 1);
        for (int j = 0; j <= n; ++j) (*dpsi)[j] = (dp[j] + dlw * p[j]) * w;
    }
}

template <class T>
T eval_psi_exact(const RecChain<T>& ch, int n, const T& x) {
    std::vector<T> v;
    eval_psi_all(ch, n, x, v);
    return v[n];
}

// int w(x') / (x - x') dx' over the grid interval, principal value inside it
template <class T>
T oracle_hilbert_seed(const RecChain<T>& ch, const T& x) {
    using std::abs; using std::log; using std::max;
    T tol = max(T(eps<T>() * 1000), T("1e-40"));
    const T &lo = ch.x_min, &hi = ch.x_max;
    if (x <= lo || x >= hi) {
        auto f = [&](const T& s) { return ch.shifted_weight(s) / (x - s); };
        return integrate(f, lo, hi, tol, 14, 16).value;
    }
    T wx = ch.shifted_weight(x);
    T dwx = -ch.coupling() * ch.V.derivative()(x) * wx;
    auto f = [&](const T& s) {
        T d = x - s;
        if (abs(d) < T("1e-30")) return T(-dwx);
        return (ch.shifted_weight(s) - wx) / d;
    };
    return integrate(f, lo, hi, tol, 14, 16).value + wx * log((x - lo) / (hi - x));
}

template <class T>
struct PhiValue {
    T value;
    T digits_lost;  // forward-recurrence loss estimate
    bool direct = false;  // true when the recurrence was abandoned for direct quadrature
};

// pihat_n(x) = PV int pi_n(s) w(s) / (x - s) ds, integrated from the orthonormal psi_n
template <class T>
T oracle_pihat_direct(const RecChain<T>& ch, int n, const T& x) {
    using std::abs; using std::exp; using std::log; using std::max; using std::sqrt;
    T tol = max(T(eps<T>() * 1000), T("1e-40"));
    const T &lo = ch.x_min, &hi = ch.x_max;
    // pi_n w = psi_n sqrt(w) sqrt(h_n)
    auto g = [&](const T& s) { return eval_psi_exact(ch, n, s) * sqrt(ch.shifted_weight(s)); };
    T scale = exp(ch.ln_h_shifted(n) / 2);
    if (x <= lo || x >= hi) {
        auto f = [&](const T& s) { return g(s) / (x - s); };
        return scale * integrate(f, lo, hi, tol, 14, 16).value;
    }
    T gx = g(x);
    std::vector<T> ps, dps;
    eval_psi_all(ch, n, x, ps, &dps);
    T sw = sqrt(ch.shifted_weight(x));
    T dgx = dps[n] * sw - ps[n] * sw * ch.coupling() * ch.V.derivative()(x) / 2;
    auto f = [&](const T& s) {
        T d = x - s;
        if (abs(d) < T("1e-30")) return T(-dgx);
        return (g(s) - gx) / d;
    };
    return scale * (integrate(f, lo, hi, tol, 14, 16).value + gx * log((x - lo) / (hi - x)));
}

// phi_n = pihat_n e^{NV/2Tc} / sqrt(h_n); pihat from the inhomogeneous recurrence,
// or by direct quadrature when the recurrence loses too many digits
template <class T>
PhiValue<T> eval_phi_exact(const RecChain<T>& ch, int n, const T& x) {
    using std::abs; using std::exp; using std::log10; using std::max; using std::sqrt;
    if (n < 0 || n > ch.n_max) throw domain_error("eval_phi: index out of range");
    T h0 = exp(ch.ln_h_shifted(0));
    T Cm = 0, C = oracle_hilbert_seed(ch, x);
    T Em = 0, E = abs(C);
    for (int j = 0; j < n; ++j) {
        T g2 = j > 0 ? ch.gamma[j] * ch.gamma[j] : T(0);
        T inh = j == 0 ? h0 : T(0);
        T Cn = (x - ch.beta[j]) * C - g2 * Cm - inh;
        T En = abs(x - ch.beta[j]) * E + g2 * Em + inh;
        Cm = C; C = Cn;
        Em = E; E = En;
    }
    PhiValue<T> r;
    const T budget = T(std::numeric_limits<T>::digits10 - 30);
    r.digits_lost = C == 0 ? T(std::numeric_limits<T>::digits10) : T(max(T(0), T(log10(E / abs(C)))));
    if (r.digits_lost > budget) {
        C = oracle_pihat_direct(ch, n, x);
        r.direct = true;
    }
    r.value = C / (sqrt(ch.shifted_weight(x)) * exp(ch.ln_h_shifted(n) / 2));
    return r;
}

// Christoffel-Darboux kernel K_n(x, x2) = sum_{j<n} psi_j(x) psi_j(x2)
template <class T>
T kernel_exact(const RecChain<T>& ch, int n, const T& x, const T& x2) {
    using std::abs;
    if (n < 1 || n > ch.n_max) throw domain_error("kernel_exact: index out of range");
    std::vector<T> a, b, da;
    if (abs(x - x2) < T("1e-8")) {
        eval_psi_all(ch, n, x, a, &da);
        return ch.gamma[n] * (da[n] * a[n - 1] - da[n - 1] * a[n]);
    }
    eval_psi_all(ch, n, x, a);
    eval_psi_all(ch, n, x2, b);
    return ch.gamma[n] * (a[n] * b[n - 1] - a[n - 1] * b[n]) / (x - x2);
}

// K_n(x, x) by direct summation
template <class T>
T kernel_diagonal_sum(const RecChain<T>& ch, int n, const T& x) {
    if (n < 1 || n > ch.n_max) throw domain_error("kernel_diagonal: index out of range");
    std::vector<T> a;
    eval_psi_all(ch, n - 1, x, a);
    T s = 0;
    for (const auto& v : a) s += v * v;
    return s;
}

// int_lo^hi K_n(x, x) dx, clipped to the grid interval
template <class T>
T expected_count_exact(const RecChain<T>& ch, int n, const T& lo, const T& hi, bool use_cd = false) {
    using std::max; using std::min;
    T a = max(lo, ch.x_min), b = min(hi, ch.x_max);
    if (!(a < b)) return 0;
    auto f = [&](const T& x) { return use_cd ? kernel_exact(ch, n, x, x) : kernel_diagonal_sum(ch, n, x); };
    return integrate(f, a, b, T("1e-14"), 12, 8).value;
}

} // namespace bcut
