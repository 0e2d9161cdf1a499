#pragma once

#include "potentials.hpp"
#include "quadrature.hpp"
#include "real.hpp"

#include <cmath>
#include <vector>

namespace bcut {

// Orthogonal polynomials of the weight exp(-y^(2nu)/(2nu)).
// gamma[k] = sqrt(h_k / h_{k-1}) (gamma[0] unused), h_k monic norms, ln_zeta[k] = sum_{j<k} ln h_j.
template <class T>
struct ModelChain {
    int nu = 1;
    int k_max = 0;
    T A_const = 1;
    std::vector<T> ln_h;
    std::vector<T> gamma;
    std::vector<T> rec_beta;
    std::vector<T> ln_zeta;
    std::vector<T> ln_A;
    T ortho_error = 0;
    T R = 0;
    int nodes = 0;

    T weight(const T& y) const {
        using std::exp; using std::pow;
        return exp(-pow(y, 2 * nu) / T(2 * nu));
    }
    // ln A_k for k >= 0; ln A_{-1} is never needed directly
    T lnA(int k) const { return ln_A.at(k); }
};

template <class T>
T A_constant(const CriticalSpec<T>& s) {
    using std::pow; using std::sinh;
    T sh = sinh(s.phi_e);
    return 4 * sh * sh * pow(T(2 * sh * s.Q(s.e) / s.Tc), T(1) / T(2 * s.nu));
}

namespace detail {

// half-width R with R^(2nu)/(2nu) - 2 k ln(2R) >= digits ln 10
template <class T>
T chain_half_width(int nu, int k_max, int digits) {
    using std::log; using std::pow;
    T target = T(digits) * log(T(10));
    T R = 1;
    while (pow(R, 2 * nu) / T(2 * nu) - 2 * T(k_max) * log(2 * R) < target) R *= T("1.05");
    return R;
}

} // namespace detail

template <class T>
ModelChain<T> build_chain(int nu, int k_max, const T& A = T(1), int nodes = 4096) {
    using std::abs; using std::log; using std::sqrt;
    if (nu < 1) throw domain_error("build_chain: nu must be >= 1");
    if (k_max < 1 || k_max > 200) throw domain_error("build_chain: k_max must lie in [1,200]");
    ModelChain<T> ch;
    ch.nu = nu;
    ch.k_max = k_max;
    ch.A_const = A;
    int digits = std::numeric_limits<T>::digits10;
    ch.R = detail::chain_half_width<T>(nu, k_max, digits);
    int panels = (nodes + 63) / 64;
    ch.nodes = panels * 64;
    auto rule = composite_gauss_legendre(T(-ch.R), ch.R, panels, 64);
    const std::size_t M = rule.size();
    std::vector<T> W(M);
    T h0 = 0;
    for (std::size_t i = 0; i < M; ++i) {
        W[i] = rule.w[i] * ch.weight(rule.x[i]);
        h0 += W[i];
    }
    // discretized Stieltjes on orthonormal vectors
    std::vector<T> q0(M, T(0)), q1(M), r(M);
    for (std::size_t i = 0; i < M; ++i) q1[i] = 1 / sqrt(h0);
    ch.ln_h.assign(k_max + 1, T(0));
    ch.gamma.assign(k_max + 1, T(0));
    ch.rec_beta.assign(k_max + 1, T(0));
    ch.ln_h[0] = log(h0);
    T g = 0;
    T worst = 0;
    for (int k = 0; k < k_max; ++k) {
        T b = 0;
        for (std::size_t i = 0; i < M; ++i) b += W[i] * rule.x[i] * q1[i] * q1[i];
        ch.rec_beta[k] = b;
        T nn = 0;
        for (std::size_t i = 0; i < M; ++i) {
            r[i] = (rule.x[i] - b) * q1[i] - g * q0[i];
            nn += W[i] * r[i] * r[i];
        }
        g = sqrt(nn);
        ch.gamma[k + 1] = g;
        ch.ln_h[k + 1] = ch.ln_h[k] + 2 * log(g);
        T dot_prev = 0, dot_prev2 = 0, norm1 = 0;
        for (std::size_t i = 0; i < M; ++i) {
            T v = r[i] / g;
            dot_prev += W[i] * v * q1[i];
            dot_prev2 += W[i] * v * q0[i];
            norm1 += W[i] * v * v;
            q0[i] = q1[i];
            q1[i] = v;
        }
        T e1 = abs(dot_prev), e2 = abs(dot_prev2), e3 = abs(norm1 - 1);
        if (e1 > worst) worst = e1;
        if (e2 > worst) worst = e2;
        if (e3 > worst) worst = e3;
    }
    {
        T b = 0;
        for (std::size_t i = 0; i < M; ++i) b += W[i] * rule.x[i] * q1[i] * q1[i];
        ch.rec_beta[k_max] = b;
    }
    ch.ortho_error = worst;
    if (worst > T("1e-20")) throw numerical_error("build_chain: orthonormality lost (" + to_string(worst, 6) + ")");
    ch.ln_zeta.assign(k_max + 1, T(0));
    for (int k = 1; k <= k_max; ++k) ch.ln_zeta[k] = ch.ln_zeta[k - 1] + ch.ln_h[k - 1];
    ch.ln_A.assign(k_max + 1, T(0));
    T lnA = log(A), ln2pi = log(two_pi<T>());
    for (int k = 0; k <= k_max; ++k) ch.ln_A[k] = -T(k) * T(k) * lnA - T(k) * ln2pi + ch.ln_zeta[k];
    return ch;
}

// psi_0..psi_k at y and their y-derivatives
template <class T>
void psi_model_all(const ModelChain<T>& ch, int k, const T& y, std::vector<T>& psi, std::vector<T>* dpsi = nullptr) {
    using std::exp; using std::pow; using std::sqrt;
    if (k < 0 || k > ch.k_max) throw domain_error("psi_model: index out of range");
    psi.assign(k + 1, T(0));
    std::vector<T> p(k + 1), dp(k + 1);
    p[0] = exp(-ch.ln_h[0] / 2);
    dp[0] = 0;
    for (int j = 0; j < k; ++j) {
        T prev = j > 0 ? p[j - 1] : T(0);
        T dprev = j > 0 ? dp[j - 1] : T(0);
        T gj = j > 0 ? ch.gamma[j] : T(0);
        p[j + 1] = ((y - ch.rec_beta[j]) * p[j] - gj * prev) / ch.gamma[j + 1];
        dp[j + 1] = (p[j] + (y - ch.rec_beta[j]) * dp[j] - gj * dprev) / ch.gamma[j + 1];
    }
    T w = exp(-pow(y, 2 * ch.nu) / T(4 * ch.nu));
    T dw = -pow(y, 2 * ch.nu - 1) / 2;
    for (int j = 0; j <= k; ++j) psi[j] = p[j] * w;
    if (dpsi) {
        dpsi->assign(k + 1, T(0));
        for (int j = 0; j <= k; ++j) (*dpsi)[j] = (dp[j] + dw * p[j]) * w;
    }
}

template <class T>
T psi_model(const ModelChain<T>& ch, int k, const T& y) {
    if (k < 0) return 0;
    std::vector<T> v;
    psi_model_all(ch, k, y, v);
    return v[k];
}

// principal value of int w(x)/(y-x) dx over the real line
template <class T>
T model_hilbert_seed(const ModelChain<T>& ch, const T& y) {
    using std::abs; using std::log; using std::max; using std::pow;
    T R = max(ch.R, T(abs(y) + 1));
    T wy = ch.weight(y);
    T dwy = -pow(y, 2 * ch.nu - 1) * wy;
    auto f = [&](const T& x) {
        T dx = y - x;
        if (abs(dx) < T("1e-30")) return T(-dwy);
        return (ch.weight(x) - wy) / dx;
    };
    T tol = max(T(eps<T>() * 1000), T("1e-40"));
    T I = integrate(f, T(-R), R, tol, 14, 16).value;
    return I + wy * log((y + R) / (R - y));
}

// psihat_0..psihat_k at y; psihat_j = Chat_j e^{y^(2nu)/4nu} / sqrt(h_j)
template <class T>
void psihat_model_all(const ModelChain<T>& ch, int k, const T& y, std::vector<T>& out) {
    using std::exp; using std::pow; using std::sqrt;
    if (k < 0 || k > ch.k_max) throw domain_error("psihat_model: index out of range");
    std::vector<T> C(k + 1);
    C[0] = model_hilbert_seed(ch, y);
    T h0 = exp(ch.ln_h[0]);
    for (int j = 0; j < k; ++j) {
        T prev = j > 0 ? C[j - 1] : T(0);
        T g2 = j > 0 ? ch.gamma[j] * ch.gamma[j] : T(0);
        C[j + 1] = (y - ch.rec_beta[j]) * C[j] - g2 * prev - (j == 0 ? h0 : T(0));
    }
    T e = exp(pow(y, 2 * ch.nu) / T(4 * ch.nu));
    out.assign(k + 1, T(0));
    for (int j = 0; j <= k; ++j) out[j] = C[j] * e * exp(-ch.ln_h[j] / 2);
}

template <class T>
T psihat_model(const ModelChain<T>& ch, int k, const T& y) {
    std::vector<T> v;
    psihat_model_all(ch, k, y, v);
    return v[k];
}

// Christoffel-Darboux kernel sum_{j<k} psi_j(y) psi_j(y2)
template <class T>
T kernel_model(const ModelChain<T>& ch, int k, const T& y, const T& y2) {
    using std::abs;
    if (k < 1) throw domain_error("kernel_model: k must be >= 1");
    std::vector<T> a, b, da;
    T g = ch.gamma[k];
    if (abs(y - y2) < T("1e-8")) {
        psi_model_all(ch, k, y, a, &da);
        return g * (da[k] * a[k - 1] - da[k - 1] * a[k]);
    }
    psi_model_all(ch, k, y, a);
    psi_model_all(ch, k, y2, b);
    return g * (a[k] * b[k - 1] - a[k - 1] * b[k]) / (y - y2);
}

} // namespace bcut
