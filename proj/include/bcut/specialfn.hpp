#pragma once

#include "quadrature.hpp"
#include "real.hpp"

#include <boost/math/special_functions/ellint_1.hpp>

#include <vector>

namespace bcut {

template <class T>
struct EllipticParams {
    T m, K, Kprime, E, Eprime;
    T tau_im;  // tau = i * tau_im = i K'/K
    T q;       // nome exp(i pi tau), real
};

namespace detail {

// K and E of parameter m by the arithmetic-geometric mean
template <class T>
void agm_KE(const T& m, T& K, T& E) {
    using std::abs; using std::sqrt; using std::ldexp;
    T a = 1, b = sqrt(1 - m), c2 = m;
    T sum = c2 / 2;  // sum 2^(n-1) c_n^2 starting at n = 0
    T pow2 = 1;
    for (int it = 0; it < 200; ++it) {
        T an = (a + b) / 2;
        T cn = (a - b) / 2;
        b = sqrt(a * b);
        a = an;
        sum += pow2 * cn * cn;
        pow2 *= 2;
        if (abs(cn) <= eps<T>() * a) break;
    }
    K = pi<T>() / (2 * a);
    E = K * (1 - sum);
}

} // namespace detail

template <class T>
EllipticParams<T> complete_integrals(const T& m) {
    using std::exp;
    if (!(m >= 0 && m < 1)) throw domain_error("complete_integrals: m must lie in [0,1), got " + to_string(m, 12));
    EllipticParams<T> p;
    p.m = m;
    detail::agm_KE(m, p.K, p.E);
    if (m == 0) {
        p.Kprime = std::numeric_limits<T>::infinity();
        p.Eprime = 1;
        p.tau_im = std::numeric_limits<T>::infinity();
        p.q = 0;
        return p;
    }
    detail::agm_KE(T(1 - m), p.Kprime, p.Eprime);
    p.tau_im = p.Kprime / p.K;
    p.q = exp(-pi<T>() * p.tau_im);
    return p;
}

template <class T>
struct Jacobi {
    T sn, cn, dn;
};

// real argument, descending Landen / AGM scheme
template <class T>
Jacobi<T> sn_cn_dn_real(const T& u, const T& m) {
    using std::abs; using std::asin; using std::cos; using std::cosh; using std::sin; using std::sqrt; using std::tanh;
    if (!(m >= 0 && m <= 1)) throw domain_error("sn_cn_dn: m must lie in [0,1]");
    if (m == 0) return {sin(u), cos(u), T(1)};
    if (m == 1) {
        T s = 1 / cosh(u);
        return {tanh(u), s, s};
    }
    std::vector<T> a{T(1)}, c{sqrt(m)};
    T b = sqrt(1 - m);
    for (int it = 0; it < 200 && abs(c.back()) > eps<T>() * a.back(); ++it) {
        T an = (a.back() + b) / 2;
        T cn = (a.back() - b) / 2;
        b = sqrt(a.back() * b);
        a.push_back(an);
        c.push_back(cn);
    }
    int N = static_cast<int>(a.size()) - 1;
    T phi = ldexp(a[N] * u, N);
    for (int n = N; n >= 1; --n) phi = (phi + asin(c[n] * sin(phi) / a[n])) / 2;
    T s = sin(phi), cc = cos(phi);
    return {s, cc, sqrt(1 - m * s * s)};
}

template <class T>
struct JacobiC {
    cplx<T> sn, cn, dn;
};

// complex argument via Jacobi's imaginary transformation and the addition theorem
template <class T>
JacobiC<T> sn_cn_dn(const cplx<T>& u, const T& m) {
    using std::abs;
    if (!(m >= 0 && m < 1)) throw domain_error("sn_cn_dn: m must lie in [0,1)");
    auto r = sn_cn_dn_real(u.real(), m);
    if (u.imag() == 0) return {{r.sn, 0}, {r.cn, 0}, {r.dn, 0}};
    auto i = sn_cn_dn_real(u.imag(), T(1 - m));
    T s = r.sn, c = r.cn, d = r.dn;
    T s1 = i.sn, c1 = i.cn, d1 = i.dn;
    T den = c1 * c1 + m * s * s * s1 * s1;
    if (abs(den) <= eps<T>() * 1024) throw numerical_error("sn_cn_dn: argument too close to a pole");
    return {cplx<T>(s * d1, c * d * s1 * c1) / den, cplx<T>(c * c1, -s * d * s1 * d1) / den,
            cplx<T>(d * c1 * d1, -m * s * c * s1) / den};
}

// E(u,m) = int_0^u dn^2(w) dw along the straight segment [0,u]
template <class T>
cplx<T> incomplete_E(const cplx<T>& u, const T& m) {
    using std::abs; using std::floor; using std::round;
    if (!(m >= 0 && m < 1)) throw domain_error("incomplete_E: m must lie in [0,1)");
    if (u == cplx<T>(0, 0)) return {0, 0};
    if (m == 0) return u;
    auto ell = complete_integrals(m);
    // poles of dn sit at 2jK + (2l+1) i K'; refuse paths passing close to one
    {
        T K = ell.K, Kp = ell.Kprime;
        T guard = T("1e-3") * (K < Kp ? K : Kp);
        int jmax = static_cast<int>(to_double(abs(u.real()) / (2 * K))) + 1;
        int lmax = static_cast<int>(to_double(abs(u.imag()) / (2 * Kp))) + 1;
        for (int j = -jmax; j <= jmax; ++j)
            for (int l = -lmax - 1; l <= lmax; ++l) {
                cplx<T> pole(2 * T(j) * K, (2 * T(l) + 1) * Kp);
                // distance from pole to segment
                T uu = u.real() * u.real() + u.imag() * u.imag();
                T t = (pole.real() * u.real() + pole.imag() * u.imag()) / uu;
                if (t < 0) t = 0;
                if (t > 1) t = 1;
                cplx<T> nearest(u.real() * t, u.imag() * t);
                if (cabs(cplx<T>(pole - nearest)) < guard)
                    throw numerical_error("incomplete_E: path passes through a pole of dn (branch ambiguity)");
            }
    }
    auto fr = [&](const T& s) {
        auto j = sn_cn_dn(cplx<T>(u.real() * s, u.imag() * s), m);
        return cplx<T>(j.dn * j.dn);
    };
    const T tol = eps<T>() * 1000;
    T re = integrate([&](const T& s) { return fr(s).real(); }, T(0), T(1), tol, 14).value;
    T im = integrate([&](const T& s) { return fr(s).imag(); }, T(0), T(1), tol, 14).value;
    cplx<T> I(re, im);
    return u * I;
}

// incomplete integral of the first kind F(phi|m) = int_0^phi dt / sqrt(1 - m sin^2 t), real phi
template <class T>
T incomplete_F(const T& phi, const T& m) {
    using std::sqrt;
    if (!(m >= 0 && m < 1)) throw domain_error("incomplete_F: m must lie in [0,1)");
    return boost::math::ellint_1(T(sqrt(m)), phi);
}

// theta_1(z | tau) = 2 sum (-1)^n q^((n+1/2)^2) sin((2n+1) pi z), tau = i tau_im
template <class T>
cplx<T> theta1(const cplx<T>& z, const T& tau_im) {
    using std::abs; using std::exp; using std::log;
    if (!(tau_im > 0)) throw domain_error("theta1: Im tau must be positive");
    T lq = -pi<T>() * tau_im;  // ln q
    cplx<T> s(0, 0);
    T sabs = 0;
    const T tol = eps<T>();
    for (int n = 0; n < 100000; ++n) {
        T h = T(n) + T(1) / 2;
        T amp = 2 * exp(lq * h * h);
        cplx<T> arg(T(2 * n + 1) * pi<T>() * z.real(), T(2 * n + 1) * pi<T>() * z.imag());
        cplx<T> term = csin(arg) * amp;
        if (n % 2) term = -term;
        s += term;
        T ta = cabs(term);
        sabs += ta;
        // terms decay once the gaussian beats the hyperbolic growth
        bool decaying = lq * (2 * h + 1) + 2 * pi<T>() * abs(z.imag()) < 0;
        if (decaying && ta <= tol * sabs) return s;
    }
    throw numerical_error("theta1: series did not converge");
}

template <class T>
T theta1_prime0(const T& tau_im) {
    using std::exp;
    if (!(tau_im > 0)) throw domain_error("theta1_prime0: Im tau must be positive");
    T lq = -pi<T>() * tau_im;
    T s = 0, sabs = 0;
    for (int n = 0; n < 100000; ++n) {
        T h = T(n) + T(1) / 2;
        T term = T(2 * n + 1) * exp(lq * h * h);
        s += (n % 2) ? -term : term;
        sabs += term;
        if (n > 0 && term <= eps<T>() * sabs) return 2 * pi<T>() * s;
    }
    throw numerical_error("theta1_prime0: series did not converge");
}

template <class T>
T ln_factorial(long n) {
    using std::log;
    if (n < 0) throw domain_error("ln_factorial: negative argument");
    if (n <= 10000) {
        T s = 0;
        for (long k = 2; k <= n; ++k) s += log(T(k));
        return s;
    }
    return lgamma(T(n + 1));
}

// ln H_n ~ n ln 2pi - ln(n)/12
template <class T>
T ln_Hn(long n) {
    using std::log;
    if (n <= 0) return 0;
    return T(n) * log(two_pi<T>()) - log(T(n)) / 12;
}

// H_n = (2pi)^(n/2) n^(-n^2/2) e^(3n^2/4) prod_{j<n} j!
template <class T>
T ln_Hn_exact(long n) {
    using std::log;
    if (n <= 0) return 0;
    T s = T(n) / 2 * log(two_pi<T>()) - T(n) * T(n) / 2 * log(T(n)) + T(3) * T(n) * T(n) / 4;
    for (long j = 0; j < n; ++j) s += ln_factorial<T>(j);
    return s;
}

// ln zeta_{k,nu} ~ k^2/(2nu) ln k - 3k^2/(4nu) + (k/nu) ln k
template <class T>
T ln_zeta_asymptotic(long k, int nu) {
    using std::log;
    if (k <= 0) return 0;
    T kk = T(k), lk = log(kk);
    return kk * kk / (2 * nu) * lk - 3 * kk * kk / (4 * nu) + kk / nu * lk;
}

// k^2/(2nu) ln k - k^2 [3/(4nu) + ln(binom(2nu,nu)/2)/(2nu)], the monomial-model energy
template <class T>
T ln_zeta_leading(long k, int nu) {
    using std::lgamma; using std::log;
    if (k <= 0) return 0;
    T kk = T(k);
    T lbin = lgamma(T(2 * nu + 1)) - 2 * lgamma(T(nu + 1));
    T energy = T(3) / T(4 * nu) + (lbin - log(T(2))) / T(2 * nu);
    return kk * kk / (2 * nu) * log(kk) - kk * kk * energy;
}

// Gaussian model: ln zeta_{k,1} = (k/2) ln 2pi + sum_{j<k} ln j!
template <class T>
T ln_zeta_gaussian(long k) {
    using std::log;
    T s = T(k) / 2 * log(two_pi<T>());
    for (long j = 0; j < k; ++j) s += ln_factorial<T>(j);
    return s;
}

} // namespace bcut
