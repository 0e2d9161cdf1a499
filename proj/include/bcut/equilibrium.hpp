#pragma once

#include "poly.hpp"
#include "quadrature.hpp"
#include "real.hpp"
#include "specialfn.hpp"

#include <array>
#include <functional>
#include <vector>

namespace bcut {

template <class T>
struct EqMeasure {
    int s = 1;
    std::vector<T> ends;  // a, b (, c, d), increasing
    Poly<T> M;
    T temp = 0;
    Poly<T> V;
    // two-cut data
    T x0 = 0;
    T m = 0;
    cplx<T> u_inf{0, 0};
    EllipticParams<T> ell{};

    T residual = 0;
    int iterations = 0;

    Poly<T> sigma() const { return Poly<T>::from_roots(ends); }
    T first() const { return ends.front(); }
    T last() const { return ends.back(); }

    // number of endpoints strictly above x
    int above(const T& x) const {
        int k = 0;
        for (const auto& e : ends) k += e > x ? 1 : 0;
        return k;
    }
    bool in_support(const T& x) const { return above(x) % 2 == 1; }

    // branch of sqrt(sigma) ~ x^s at +infinity, real x off the support
    T sqrt_sigma(const T& x) const {
        using std::abs; using std::sqrt;
        int k = above(x);
        if (k % 2) throw domain_error("sqrt_sigma: x = " + to_string(x, 12) + " lies on the support");
        T r = 1;
        for (const auto& e : ends) r *= abs(x - e);
        r = sqrt(r);
        return (k / 2) % 2 ? -r : r;
    }

    T density(const T& x) const {
        using std::abs; using std::sqrt;
        int k = above(x);
        if (k % 2 == 0) return 0;
        T r = 1;
        for (const auto& e : ends) r *= abs(x - e);
        T v = M(x) * sqrt(r) / (two_pi<T>() * temp);
        return ((k - 1) / 2) % 2 ? -v : v;
    }
};

namespace detail {

// polynomial part at infinity of Vp / sqrt(sigma)
template <class T>
Poly<T> m_polynomial(const Poly<T>& Vp, const std::vector<T>& ends) {
    auto sig = Poly<T>::from_roots(ends);
    auto L = Vp * sqrt_power_at_infinity(sig, true, Vp.degree() + 3);
    return L.polynomial_part();
}

template <class T>
T solver_tol() {
    using std::pow;
    return pow(eps<T>(), T(3) / 4);
}

// n-point Gauss-Chebyshev mean of f over [a,b] and its partial derivatives in a and b
template <class T>
void cheb_moment(const Poly<T>& f, const T& a, const T& b, int n, T& val, T& da, T& db) {
    using std::cos;
    Poly<T> fp = f.derivative();
    T mid = (a + b) / 2, h = (b - a) / 2;
    val = 0; da = 0; db = 0;
    for (int j = 1; j <= n; ++j) {
        T ct = cos(pi<T>() * T(2 * j - 1) / T(2 * n));
        T x = mid + h * ct;
        val += f(x);
        T d = fp(x);
        da += d * (1 - ct) / 2;
        db += d * (1 + ct) / 2;
    }
    val /= T(n); da /= T(n); db /= T(n);
}

template <class T>
void check_density(const EqMeasure<T>& mu) {
    using std::abs;
    for (std::size_t i = 0; i + 1 < mu.ends.size(); i += 2) {
        T lo = mu.ends[i], hi = mu.ends[i + 1];
        std::vector<T> pts{lo};
        for (const auto& r : real_roots(mu.M, lo, hi))
            if (r < hi) pts.push_back(r);
        pts.push_back(hi);
        T scale = mu.M.max_abs_coeff();
        for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
            T x = (pts[j] + pts[j + 1]) / 2;
            if (x <= lo || x >= hi) continue;
            if (mu.density(x) < -eps<T>() * 1024 * scale)
                throw domain_error("negative density on the support near x = " + to_string(x, 12));
        }
    }
}

template <class T>
std::array<T, 4> two_cut_residual(const Poly<T>& Vp, const T& temp, const std::array<T, 4>& e, const T& qtol) {
    using std::sqrt;
    const T &a = e[0], &b = e[1], &c = e[2], &d = e[3];
    std::array<T, 4> r;
    Poly<T> f = Vp;
    for (int k = 0; k < 3; ++k) {
        T I2 = integrate_chebyshev1([&](const T& x) { return f(x) / sqrt((x - a) * (x - b)); }, c, d, qtol);
        T I1 = integrate_chebyshev1([&](const T& x) { return f(x) / sqrt((c - x) * (d - x)); }, a, b, qtol);
        r[k] = (I2 - I1) / pi<T>();
        f = f * Poly<T>{T(0), T(1)};
    }
    r[2] -= 2 * temp;
    Poly<T> M = m_polynomial(Vp, {a, b, c, d});
    r[3] = integrate_chebyshev2([&](const T& x) { return M(x) * sqrt((x - a) * (d - x)); }, b, c, qtol);
    return r;
}

template <class T>
std::array<T, 4> solve4(std::array<std::array<T, 4>, 4> A, std::array<T, 4> y) {
    using std::abs;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (abs(A[r][col]) > abs(A[piv][col])) piv = r;
        if (A[piv][col] == 0) throw numerical_error("singular Jacobian in two-cut solver");
        std::swap(A[piv], A[col]);
        std::swap(y[piv], y[col]);
        for (int r = col + 1; r < 4; ++r) {
            T f = A[r][col] / A[col][col];
            for (int k = col; k < 4; ++k) A[r][k] -= f * A[col][k];
            y[r] -= f * y[col];
        }
    }
    std::array<T, 4> x;
    for (int r = 3; r >= 0; --r) {
        T s = y[r];
        for (int k = r + 1; k < 4; ++k) s -= A[r][k] * x[k];
        x[r] = s / A[r][r];
    }
    return x;
}

template <class T>
T norm_inf(const std::array<T, 4>& v) {
    using std::abs;
    T m = 0;
    for (const auto& x : v)
        if (abs(x) > m) m = abs(x);
    return m;
}

} // namespace detail

template <class T>
EqMeasure<T> solve_one_cut(const Poly<T>& V, const T& temp, const std::array<T, 2>& guess) {
    using std::abs; using std::max;
    if (!(temp > 0)) throw domain_error("solve_one_cut: T must be positive");
    if (!(guess[0] < guess[1])) throw domain_error("solve_one_cut: guess must satisfy a < b");
    Poly<T> Vp = V.derivative();
    Poly<T> xVp = Vp * Poly<T>{T(0), T(1)};
    int n = xVp.degree() / 2 + 2;
    T a = guess[0], b = guess[1];
    auto F = [&](const T& aa, const T& bb, T J[2][2]) {
        std::array<T, 2> r;
        detail::cheb_moment(Vp, aa, bb, n, r[0], J[0][0], J[0][1]);
        detail::cheb_moment(xVp, aa, bb, n, r[1], J[1][0], J[1][1]);
        r[1] -= 2 * temp;
        return r;
    };
    T J[2][2], Jt[2][2];
    auto r = F(a, b, J);
    T rn = max(abs(r[0]), abs(r[1]));
    const T stol = detail::solver_tol<T>();
    int it = 0;
    for (; it < 100; ++it) {
        T det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        if (det == 0) throw numerical_error("solve_one_cut: singular Jacobian");
        T da = -(J[1][1] * r[0] - J[0][1] * r[1]) / det;
        T db = -(-J[1][0] * r[0] + J[0][0] * r[1]) / det;
        T lam = 1;
        std::array<T, 2> rt;
        T an, bn, rtn;
        for (int h = 0; h < 40; ++h) {
            an = a + lam * da;
            bn = b + lam * db;
            if (an < bn) {
                rt = F(an, bn, Jt);
                rtn = max(abs(rt[0]), abs(rt[1]));
                if (rtn < rn || rn == 0) break;
            }
            lam /= 2;
        }
        if (!(an < bn)) throw numerical_error("solve_one_cut: endpoints collapsed");
        T step = max(abs(an - a), abs(bn - b));
        a = an; b = bn; r = rt; rn = rtn;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) J[i][j] = Jt[i][j];
        if (step <= stol * (1 + abs(a) + abs(b))) break;
        if (it == 99) throw numerical_error("solve_one_cut: Newton did not converge in 100 iterations");
    }
    if (!(rn <= T("1e-12") * temp)) throw numerical_error("solve_one_cut: residual " + to_string(rn, 6) + " too large");
    EqMeasure<T> mu;
    mu.s = 1;
    mu.ends = {a, b};
    mu.temp = temp;
    mu.V = V;
    mu.M = detail::m_polynomial(Vp, mu.ends);
    mu.residual = rn;
    mu.iterations = it + 1;
    detail::check_density(mu);
    return mu;
}

namespace detail {

template <class T>
void fill_two_cut(EqMeasure<T>& mu) {
    using std::atan; using std::sqrt;
    const T &a = mu.ends[0], &b = mu.ends[1], &c = mu.ends[2], &d = mu.ends[3];
    mu.m = (b - a) * (d - c) / ((c - a) * (d - b));
    mu.ell = complete_integrals(mu.m);
    T s0 = sqrt((d - b) / (b - a));
    T vinf = incomplete_F(atan(s0), T(1 - mu.m));
    mu.u_inf = cplx<T>(0, vinf);
    cplx<T> Eu = incomplete_E(mu.u_inf, mu.m);
    mu.x0 = d - sqrt((c - a) * (d - b)) * (Eu.imag() - (1 - mu.ell.Eprime / mu.ell.Kprime) * vinf);
}

} // namespace detail

template <class T>
EqMeasure<T> solve_two_cut(const Poly<T>& V, const T& temp, const std::array<T, 4>& guess) {
    using std::abs; using std::cbrt; using std::exp; using std::log; using std::max;
    if (!(temp > 0)) throw domain_error("solve_two_cut: T must be positive");
    if (!(guess[0] < guess[1] && guess[1] < guess[2] && guess[2] < guess[3]))
        throw domain_error("solve_two_cut: guess must satisfy a < b < c < d");
    Poly<T> Vp = V.derivative();
    const T qtol = max(T(eps<T>() * 1000), T("1e-32"));
    auto ends_of = [](const std::array<T, 4>& v) {
        T h = exp(v[3]);
        return std::array<T, 4>{v[0], v[1], v[2] - h, v[2] + h};
    };
    auto F = [&](const std::array<T, 4>& v) {
        auto e = ends_of(v);
        if (!(e[0] < e[1] && e[1] < e[2])) throw domain_error("solve_two_cut: cuts collided (one-cut phase)");
        return detail::two_cut_residual(Vp, temp, e, qtol);
    };
    std::array<T, 4> v{guess[0], guess[1], (guess[2] + guess[3]) / 2, log((guess[3] - guess[2]) / 2)};
    auto r = F(v);
    T rn = detail::norm_inf(r);
    const T fd = cbrt(eps<T>());
    const T stol = detail::solver_tol<T>();
    int it = 0;
    for (; it < 100; ++it) {
        std::array<std::array<T, 4>, 4> J;
        for (int j = 0; j < 4; ++j) {
            T hstep = fd * max(T(1), abs(v[j]));
            auto vp = v, vm = v;
            vp[j] += hstep;
            vm[j] -= hstep;
            auto rp = F(vp), rm = F(vm);
            for (int i = 0; i < 4; ++i) J[i][j] = (rp[i] - rm[i]) / (2 * hstep);
        }
        std::array<T, 4> neg{-r[0], -r[1], -r[2], -r[3]};
        auto dv = detail::solve4(J, neg);
        T lam = 1;
        std::array<T, 4> vn, rt;
        T rtn = rn;
        bool accepted = false;
        for (int h = 0; h < 40; ++h) {
            for (int i = 0; i < 4; ++i) vn[i] = v[i] + lam * dv[i];
            try {
                rt = F(vn);
                rtn = detail::norm_inf(rt);
                if (rtn < rn || rn == 0) {
                    accepted = true;
                    break;
                }
            } catch (const domain_error&) {
            }
            lam /= 2;
        }
        if (!accepted) break;  // residual at its floor
        T step = 0;
        for (int i = 0; i < 4; ++i) step = max(step, T(abs(vn[i] - v[i])));
        v = vn; r = rt; rn = rtn;
        if (step <= stol * (1 + abs(v[0]) + abs(v[1]) + abs(v[2]))) break;
        if (it == 99) throw numerical_error("solve_two_cut: Newton did not converge in 100 iterations");
    }
    if (!(rn <= T("1e-12") * temp)) throw numerical_error("solve_two_cut: residual " + to_string(rn, 6) + " too large");
    auto e = ends_of(v);
    EqMeasure<T> mu;
    mu.s = 2;
    mu.ends = {e[0], e[1], e[2], e[3]};
    mu.temp = temp;
    mu.V = V;
    mu.M = detail::m_polynomial(Vp, mu.ends);
    mu.residual = rn;
    mu.iterations = it + 1;
    detail::check_density(mu);
    detail::fill_two_cut(mu);
    return mu;
}

// V_eff(x) - V_eff(b_s) = int M sqrt(sigma), integrated from the nearest endpoint
template <class T>
T effective_potential(const EqMeasure<T>& mu, const T& x) {
    using std::abs; using std::max; using std::sqrt;
    int k = mu.above(x);
    if (k % 2) throw domain_error("effective_potential: x = " + to_string(x, 12) + " lies inside the support");
    int n = static_cast<int>(mu.ends.size());
    T end;
    if (k == 0) end = mu.last();
    else if (k == n) end = mu.first();
    else {
        T lo = mu.ends[n - k - 1], hi = mu.ends[n - k];
        end = (x - lo <= hi - x) ? lo : hi;
    }
    if (x == end) return 0;
    int dir = x > end ? 1 : -1;
    T sgn = (k / 2) % 2 ? T(-1) : T(1);
    T W = sqrt(abs(x - end));
    auto f = [&](const T& w) {
        T xp = end + T(dir) * w * w;
        T r = 1;
        for (const auto& e : mu.ends)
            if (e != end) r *= abs(xp - e);
        return mu.M(xp) * sqrt(r) * 2 * w * w;
    };
    T tol = max(T(eps<T>() * 1000), T("1e-32"));
    return sgn * T(dir) * integrate(f, T(0), W, tol, 14).value;
}

template <class T>
struct AbelianObjects {
    std::function<T(const T&)> Omega;
    std::function<T(const T&)> Lambda;
    T gamma;
};

template <class T>
AbelianObjects<T> abelian_objects(const EqMeasure<T>& mu) {
    using std::atan; using std::exp; using std::sqrt;
    AbelianObjects<T> ab;
    if (mu.s == 1) {
        T a = mu.ends[0], b = mu.ends[1];
        ab.Omega = [mu](const T& x) { return 1 / mu.sqrt_sigma(x); };
        ab.Lambda = [mu, a, b](const T& x) {
            if (mu.in_support(x)) throw domain_error("Lambda: x on the cut");
            T w = (2 * x - a - b) / (b - a);
            T r = sqrt(w * w - 1);
            return w > 0 ? w + r : w - r;
        };
        ab.gamma = (b - a) / 4;
        return ab;
    }
    if (mu.s != 2) throw domain_error("abelian_objects: only s = 1, 2 supported");
    const T &a = mu.ends[0], &b = mu.ends[1], &c = mu.ends[2], &d = mu.ends[3];
    const T K = mu.ell.K, Kp = mu.ell.Kprime, tau = mu.ell.tau_im;
    const T vinf = mu.u_inf.imag();
    ab.Omega = [mu](const T& x) { return (x - mu.x0) / mu.sqrt_sigma(x); };
    ab.Lambda = [=](const T& x) {
        if (!(x > d)) throw domain_error("Lambda: two-cut evaluation implemented for x > d only");
        T w = (x - a) * (d - b) / ((x - d) * (b - a));
        T v = incomplete_F(atan(sqrt(w)), T(1 - mu.m));
        cplx<T> num = theta1(cplx<T>(0, (v + vinf) / (2 * K)), tau);
        cplx<T> den = theta1(cplx<T>(0, (v - vinf) / (2 * K)), tau);
        return exp(-pi<T>() * v * vinf / (K * Kp)) * num.imag() / den.imag();
    };
    cplx<T> th = theta1(cplx<T>(0, vinf / K), tau);
    ab.gamma = sqrt((d - b) * (c - a)) * exp(pi<T>() * vinf * vinf / (K * Kp)) * theta1_prime0(tau) / (4 * K * th.imag());
    return ab;
}

// gamma = lim x / Lambda(x) from ln gamma = -int_{b_s}^inf [Omega - 1/(x - b_s + 1)] dx
template <class T>
T gamma_limit(const EqMeasure<T>& mu) {
    using std::exp; using std::max; using std::sqrt;
    const T d = mu.last();
    auto g = [&](const T& w) {
        T x = d + w * w;
        T r = 1;
        for (std::size_t i = 0; i + 1 < mu.ends.size(); ++i) r *= x - mu.ends[i];
        T num = mu.s == 2 ? T(x - mu.x0) : T(1);
        return 2 * num / sqrt(r) - 2 * w / (w * w + 1);
    };
    auto f = [&](const T& s) {
        if (s >= 1) return T(0);
        T om = 1 - s;
        return g(s / om) / (om * om);
    };
    T tol = max(T(eps<T>() * 1000), T("1e-30"));
    T I = integrate(f, T(0), T(1), tol, 16, 4).value;
    return exp(-I);
}

// (1/2 pi i) oint Omega f around the support
template <class T>
T omega_moment(const EqMeasure<T>& mu, const Poly<T>& f) {
    using std::max; using std::sqrt;
    if (mu.s == 1) return chebyshev_mean(f, mu.ends[0], mu.ends[1], f.degree() / 2 + 2);
    const T &a = mu.ends[0], &b = mu.ends[1], &c = mu.ends[2], &d = mu.ends[3];
    T tol = max(T(eps<T>() * 1000), T("1e-32"));
    auto g = [&](const T& x) { return (x - mu.x0) * f(x); };
    T I2 = integrate_chebyshev1([&](const T& x) { return g(x) / sqrt((x - a) * (x - b)); }, c, d, tol);
    T I1 = integrate_chebyshev1([&](const T& x) { return g(x) / sqrt((c - x) * (d - x)); }, a, b, tol);
    return (I2 - I1) / pi<T>();
}

// absolute V_eff(x); V_eff(b_s) = (1/2 pi i) oint Omega V - 2 T ln gamma
template <class T>
T effective_potential_abs(const EqMeasure<T>& mu, const T& x) {
    using std::log;
    T gam = abelian_objects(mu).gamma;
    return omega_moment(mu, mu.V) - 2 * mu.temp * log(gam) + effective_potential(mu, x);
}

template <class T>
struct PrimeForm {
    T H;
    T E;
};

template <class T>
PrimeForm<T> prime_form_one_cut(const EqMeasure<T>& mu, const T& x, const T& xi) {
    if (mu.s != 1) throw domain_error("prime_form_one_cut: one-cut measure required");
    if (mu.in_support(x) || mu.in_support(xi)) throw domain_error("prime_form_one_cut: argument on the cut");
    auto ab = abelian_objects(mu);
    T L = ab.Lambda(x) * ab.Lambda(xi);
    return {ab.Omega(x) / (L - 1), 1 - 1 / L};
}

template <class T>
struct ThermoDerivatives {
    T dF_dT;
    T d2F_dT2;
    T dcalT_dT;
};

template <class T>
ThermoDerivatives<T> thermo_derivatives(const EqMeasure<T>& mu) {
    using std::log;
    ThermoDerivatives<T> r;
    T gam = abelian_objects(mu).gamma;
    r.dF_dT = omega_moment(mu, mu.V) - 2 * mu.temp * log(gam);
    r.d2F_dT2 = -2 * log(gam);
    T sum = 0;
    for (const auto& e : mu.ends) sum += e;
    r.dcalT_dT = mu.s == 1 ? sum / 2 : sum / 2 - mu.x0;
    return r;
}

// d calT / d r for a simple pole of V' at xi with residue r (one cut)
template <class T>
T dcalT_dr(const EqMeasure<T>& mu, const T& xi) {
    auto ab = abelian_objects(mu);
    return ab.gamma / ab.Lambda(xi);
}

template <class T>
struct ClassicalGammaBeta {
    T gamma_lo, gamma_hi;
    T beta_lo, beta_hi;
};

template <class T>
ClassicalGammaBeta<T> classical_gamma_beta(const EqMeasure<T>& mu) {
    if (mu.s == 1) {
        T g = (mu.ends[1] - mu.ends[0]) / 4, b = (mu.ends[0] + mu.ends[1]) / 2;
        return {g, g, b, b};
    }
    const T &a = mu.ends[0], &b = mu.ends[1], &c = mu.ends[2], &d = mu.ends[3];
    return {(d - a - c + b) / 4, (d - a + c - b) / 4, (d + a - c + b) / 2, (d + a + c - b) / 2};
}

} // namespace bcut
