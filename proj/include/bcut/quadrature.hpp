#pragma once

#include "real.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace bcut {

template <class T>
struct Rule {
    std::vector<T> x;
    std::vector<T> w;
    std::size_t size() const { return x.size(); }
};

namespace detail {

template <class T>
Rule<T> compute_gauss_legendre(int n) {
    using std::abs; using std::cos;
    Rule<T> r;
    r.x.resize(n);
    r.w.resize(n);
    const T tol = eps<T>() * 8;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        T z = cos(pi<T>() * (T(i) + T(3) / 4) / (T(n) + T(1) / 2));
        T dp = 1;
        for (int it = 0; it < 100; ++it) {
            T p0 = 1, p1 = z;
            for (int k = 2; k <= n; ++k) {
                T p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / T(k);
                p0 = p1;
                p1 = p2;
            }
            dp = T(n) * (z * p1 - p0) / (z * z - 1);
            T dz = p1 / dp;
            z -= dz;
            if (abs(dz) < tol) {
                p0 = 1; p1 = z;
                for (int k = 2; k <= n; ++k) {
                    T p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / T(k);
                    p0 = p1;
                    p1 = p2;
                }
                dp = T(n) * (z * p1 - p0) / (z * z - 1);
                break;
            }
        }
        T w = T(2) / ((1 - z * z) * dp * dp);
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.x[n / 2] = 0;
    return r;
}

} // namespace detail

// n-point Gauss-Legendre rule on [-1,1]
template <class T>
const Rule<T>& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, Rule<T>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, detail::compute_gauss_legendre<T>(n)).first;
    return it->second;
}

// composite rule: `panels` equal panels of an n-point Gauss-Legendre rule
template <class T>
Rule<T> composite_gauss_legendre(const T& a, const T& b, int panels, int nodes_per_panel = 64) {
    const auto& base = gauss_legendre<T>(nodes_per_panel);
    Rule<T> r;
    r.x.reserve(panels * nodes_per_panel);
    r.w.reserve(panels * nodes_per_panel);
    T h = (b - a) / T(panels);
    for (int p = 0; p < panels; ++p) {
        T lo = a + h * T(p);
        T c = lo + h / 2;
        for (int i = 0; i < nodes_per_panel; ++i) {
            r.x.push_back(c + h / 2 * base.x[i]);
            r.w.push_back(h / 2 * base.w[i]);
        }
    }
    return r;
}

template <class T>
struct QuadResult {
    T value;
    T abs_value;  // integral of |f|, the scale used for convergence
    int evaluations = 0;
};

template <class T, class F>
T gl_panels(F&& f, const T& a, const T& b, int panels, const Rule<T>& base, T* abs_acc = nullptr) {
    using std::abs;
    T h = (b - a) / T(panels), s = 0, sa = 0;
    for (int p = 0; p < panels; ++p) {
        T c = a + h * T(p) + h / 2;
        for (std::size_t i = 0; i < base.size(); ++i) {
            T v = f(c + h / 2 * base.x[i]) * base.w[i];
            s += v;
            sa += abs(v);
        }
    }
    if (abs_acc) *abs_acc = sa * h / 2;
    return s * h / 2;
}

// Composite 64-node Gauss-Legendre, panel count doubled until the change
// falls below rel_tol times the integral of |f|.
template <class T, class F>
QuadResult<T> integrate(F&& f, const T& a, const T& b, const T& rel_tol, int max_doublings = 12,
                        int start_panels = 1) {
    using std::abs;
    const auto& base = gauss_legendre<T>(64);
    int panels = start_panels;
    T sa;
    T prev = gl_panels(f, a, b, panels, base, &sa);
    int evals = panels * 64;
    for (int d = 0; d < max_doublings; ++d) {
        panels *= 2;
        T cur = gl_panels(f, a, b, panels, base, &sa);
        evals += panels * 64;
        if (abs(cur - prev) <= rel_tol * sa) return {cur, sa, evals};
        prev = cur;
    }
    throw numerical_error("quadrature did not converge on [" + to_string(a, 8) + ", " + to_string(b, 8) + "]");
}

// integral over [a, inf) of f, split as geometric panels [a, a+h], [a+h, a+2h], ..., up to b_split,
// then the tail mapped by x = b_split + s/(1-s)
template <class T, class F>
T integrate_to_infinity(F&& f, const T& a, const T& h0, const T& b_split, const T& rel_tol) {
    T total = 0;
    T lo = a, h = h0;
    while (lo < b_split) {
        T hi = lo + h;
        if (hi > b_split) hi = b_split;
        total += integrate(f, lo, hi, rel_tol).value;
        lo = hi;
        h *= 2;
    }
    auto tail = [&](const T& s) {
        T one_m = 1 - s;
        return f(b_split + s / one_m) / (one_m * one_m);
    };
    total += integrate(tail, T(0), T(1), rel_tol).value;
    return total;
}

// int_a^b g(x) / sqrt((x-a)(b-x)) dx by Gauss-Chebyshev (first kind), node count doubled to convergence
template <class T, class F>
T integrate_chebyshev1(F&& g, const T& a, const T& b, const T& rel_tol, int n0 = 32, int max_doublings = 14) {
    using std::abs; using std::cos;
    T mid = (a + b) / 2, half = (b - a) / 2;
    auto rule = [&](int n, T& sa) {
        T s = 0;
        sa = 0;
        for (int j = 1; j <= n; ++j) {
            T v = g(mid + half * cos(pi<T>() * T(2 * j - 1) / T(2 * n)));
            s += v;
            sa += abs(v);
        }
        sa *= pi<T>() / T(n);
        return s * pi<T>() / T(n);
    };
    int n = n0;
    T sa;
    T prev = rule(n, sa);
    for (int d = 0; d < max_doublings; ++d) {
        n *= 2;
        T cur = rule(n, sa);
        if (abs(cur - prev) <= rel_tol * sa) return cur;
        prev = cur;
    }
    throw numerical_error("Chebyshev quadrature did not converge");
}

// int_a^b g(x) sqrt((x-a)(b-x)) dx by Gauss-Chebyshev (second kind form in theta)
template <class T, class F>
T integrate_chebyshev2(F&& g, const T& a, const T& b, const T& rel_tol, int n0 = 32, int max_doublings = 14) {
    using std::abs; using std::cos; using std::sin;
    T mid = (a + b) / 2, half = (b - a) / 2;
    auto rule = [&](int n, T& sa) {
        T s = 0;
        sa = 0;
        for (int j = 1; j <= n; ++j) {
            T th = pi<T>() * T(2 * j - 1) / T(2 * n);
            T st = sin(th);
            T v = g(mid + half * cos(th)) * st * st;
            s += v;
            sa += abs(v);
        }
        sa *= half * half * pi<T>() / T(n);
        return s * half * half * pi<T>() / T(n);
    };
    int n = n0;
    T sa;
    T prev = rule(n, sa);
    for (int d = 0; d < max_doublings; ++d) {
        n *= 2;
        T cur = rule(n, sa);
        if (abs(cur - prev) <= rel_tol * sa) return cur;
        prev = cur;
    }
    throw numerical_error("Chebyshev quadrature did not converge");
}

// fixed n-point Gauss-Chebyshev (first kind) mean: (1/pi) int_0^pi g(mid + half cos t) dt,
// exact for polynomials of degree < 2n
template <class T, class F>
T chebyshev_mean(F&& g, const T& a, const T& b, int n) {
    using std::cos;
    T mid = (a + b) / 2, half = (b - a) / 2;
    T s = 0;
    for (int j = 1; j <= n; ++j) s += g(mid + half * cos(pi<T>() * T(2 * j - 1) / T(2 * n)));
    return s / T(n);
}

} // namespace bcut
