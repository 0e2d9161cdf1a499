#pragma once

#include "real.hpp"

#include <algorithm>
#include <ostream>
#include <utility>
#include <vector>

namespace bcut {

// Dense real polynomial, coefficients in ascending degree.
template <class T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> c) : c_(std::move(c)) { strip(); }
    Poly(std::initializer_list<T> c) : c_(c) { strip(); }

    static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }
    static Poly monomial(int k, const T& a = T(1)) {
        std::vector<T> c(k + 1, T(0));
        c[k] = a;
        return Poly(std::move(c));
    }
    // (x - r)
    static Poly linear_factor(const T& r) { return Poly(std::vector<T>{-r, T(1)}); }
    static Poly from_roots(const std::vector<T>& roots) {
        Poly p = constant(T(1));
        for (const auto& r : roots) p = p * linear_factor(r);
        return p;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T operator[](int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : T(0); }
    T leading() const { return c_.empty() ? T(0) : c_.back(); }

    template <class U>
    U eval(const U& x) const {
        U r = U(0);
        for (int i = degree(); i >= 0; --i) r = r * x + U(c_[i]);
        return r;
    }
    T operator()(const T& x) const { return eval<T>(x); }

    T max_abs_coeff() const {
        using std::abs;
        T m = 0;
        for (const auto& a : c_) m = std::max(m, T(abs(a)));
        return m;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<T> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
        return Poly(std::move(d));
    }

    Poly antiderivative(const T& c0 = T(0)) const {
        std::vector<T> a(c_.size() + 1);
        a[0] = c0;
        for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / T(static_cast<long>(i + 1));
        return Poly(std::move(a));
    }

    Poly operator-() const {
        std::vector<T> c(c_);
        for (auto& a : c) a = -a;
        return Poly(std::move(c));
    }
    friend Poly operator+(const Poly& p, const Poly& q) {
        std::vector<T> c(std::max(p.c_.size(), q.c_.size()), T(0));
        for (std::size_t i = 0; i < p.c_.size(); ++i) c[i] += p.c_[i];
        for (std::size_t i = 0; i < q.c_.size(); ++i) c[i] += q.c_[i];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& p, const Poly& q) { return p + (-q); }
    friend Poly operator*(const Poly& p, const Poly& q) {
        if (p.is_zero() || q.is_zero()) return Poly();
        std::vector<T> c(p.c_.size() + q.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < p.c_.size(); ++i)
            for (std::size_t j = 0; j < q.c_.size(); ++j) c[i + j] += p.c_[i] * q.c_[j];
        return Poly(std::move(c));
    }
    friend Poly operator*(const T& a, const Poly& p) {
        std::vector<T> c(p.c_);
        for (auto& x : c) x *= a;
        return Poly(std::move(c));
    }
    friend Poly operator*(const Poly& p, const T& a) { return a * p; }

    Poly pow(int k) const {
        Poly r = constant(T(1));
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    // quotient and remainder
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw domain_error("polynomial division by zero");
        std::vector<T> r(c_);
        int n = degree(), m = d.degree();
        if (n < m) return {Poly(), *this};
        std::vector<T> q(n - m + 1, T(0));
        for (int k = n - m; k >= 0; --k) {
            q[k] = r[k + m] / d.leading();
            for (int j = 0; j <= m; ++j) r[k + j] -= q[k] * d.c_[j];
        }
        r.resize(m);
        return {Poly(std::move(q)), Poly(std::move(r))};
    }

    // drop leading coefficients below tol * max|coeff|
    Poly trimmed(const T& rel_tol) const {
        using std::abs;
        std::vector<T> c(c_);
        T scale = max_abs_coeff();
        while (!c.empty() && abs(c.back()) <= rel_tol * scale) c.pop_back();
        return Poly(std::move(c));
    }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) {
        for (std::size_t i = 0; i < p.c_.size(); ++i) os << (i ? " " : "") << to_string(p.c_[i]);
        return os;
    }

private:
    void strip() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<T> c_;
};

// Sturm sequence p, p', -rem(p, p'), ...
template <class T>
std::vector<Poly<T>> sturm_sequence(const Poly<T>& p) {
    std::vector<Poly<T>> seq;
    if (p.is_zero()) return seq;
    T tol = T(64) * eps<T>() * T(p.degree() + 1);
    seq.push_back(p);
    seq.push_back(p.derivative());
    while (!seq.back().is_zero() && seq.back().degree() > 0) {
        const auto& a = seq[seq.size() - 2];
        const auto& b = seq.back();
        auto r = -(a.divmod(b).second);
        // remainders that are pure rounding noise mean an exact gcd was reached
        T scale = std::max(a.max_abs_coeff(), b.max_abs_coeff());
        if (r.is_zero() || r.max_abs_coeff() <= tol * scale) break;
        seq.push_back(r.trimmed(tol));
    }
    return seq;
}

template <class T>
int sturm_sign_changes(const std::vector<Poly<T>>& seq, const T& x) {
    int changes = 0, last = 0;
    for (const auto& q : seq) {
        T v = q(x);
        int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

// sign changes at -inf (at_plus=false) or +inf (at_plus=true)
template <class T>
int sturm_sign_changes_inf(const std::vector<Poly<T>>& seq, bool at_plus) {
    int changes = 0, last = 0;
    for (const auto& q : seq) {
        if (q.is_zero()) continue;
        int s = q.leading() > 0 ? 1 : -1;
        if (!at_plus && q.degree() % 2 == 1) s = -s;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

// number of distinct real roots in (lo, hi]
template <class T>
int count_real_roots(const Poly<T>& p, const T& lo, const T& hi) {
    auto seq = sturm_sequence(p);
    return sturm_sign_changes(seq, lo) - sturm_sign_changes(seq, hi);
}

template <class T>
int count_real_roots(const Poly<T>& p) {
    auto seq = sturm_sequence(p);
    return sturm_sign_changes_inf(seq, false) - sturm_sign_changes_inf(seq, true);
}

// isolating intervals (lo, hi] each holding exactly one distinct root
template <class T>
std::vector<std::pair<T, T>> isolate_real_roots(const Poly<T>& p, const T& lo, const T& hi) {
    using std::abs;
    std::vector<std::pair<T, T>> out;
    auto seq = sturm_sequence(p);
    T width_floor = eps<T>() * T(1024) * (T(1) + abs(lo) + abs(hi));
    std::vector<std::pair<T, T>> stack{{lo, hi}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        int n = sturm_sign_changes(seq, a) - sturm_sign_changes(seq, b);
        if (n <= 0) continue;
        if (n == 1 || b - a < width_floor) {
            out.emplace_back(a, b);
            continue;
        }
        T mid = (a + b) / 2;
        stack.emplace_back(mid, b);
        stack.emplace_back(a, mid);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// root in an isolating interval, bisection on the Sturm count then on sign
template <class T>
T refine_root(const Poly<T>& p, T a, T b) {
    auto seq = sturm_sequence(p);
    int target = sturm_sign_changes(seq, b);
    for (int it = 0; it < 4 * bits<T>(); ++it) {
        T mid = (a + b) / 2;
        if (mid == a || mid == b) break;
        if (sturm_sign_changes(seq, mid) > target) a = mid;
        else b = mid;
    }
    return (a + b) / 2;
}

template <class T>
std::vector<T> real_roots(const Poly<T>& p, const T& lo, const T& hi) {
    std::vector<T> r;
    for (auto& iv : isolate_real_roots(p, lo, hi)) r.push_back(refine_root(p, iv.first, iv.second));
    return r;
}

// Cauchy bound: every root has |x| < 1 + max |a_k / a_n|
template <class T>
T cauchy_root_bound(const Poly<T>& p) {
    using std::abs;
    T m = 0;
    for (int k = 0; k < p.degree(); ++k) {
        T r = abs(p.coeffs()[k] / p.leading());
        if (r > m) m = r;
    }
    return 1 + m;
}

template <class T>
std::vector<T> real_roots(const Poly<T>& p) {
    T R = cauchy_root_bound(p);
    return real_roots(p, T(-R), R);
}

// Expansion at x -> infinity: f(x) = sum_j c[j] x^(top - j)
template <class T>
struct Laurent {
    int top = 0;
    std::vector<T> c;

    T coeff(int power) const {
        int j = top - power;
        return (j >= 0 && j < static_cast<int>(c.size())) ? c[j] : T(0);
    }
    Poly<T> polynomial_part() const {
        if (top < 0) return Poly<T>();
        std::vector<T> a(top + 1, T(0));
        for (int k = 0; k <= top; ++k) a[k] = coeff(k);
        return Poly<T>(std::move(a));
    }
};

// sigma(x)^(+-1/2) at infinity for monic-leading sigma of even degree, nterms coefficients
template <class T>
Laurent<T> sqrt_power_at_infinity(const Poly<T>& sigma, bool inverse, int nterms) {
    int n = sigma.degree();
    if (n < 0 || n % 2 != 0) throw domain_error("sqrt_power_at_infinity: sigma must have even degree");
    if (sigma.leading() <= 0) throw domain_error("sqrt_power_at_infinity: leading coefficient must be positive");
    T lead = sigma.leading();
    // f(t) = sigma(x)/(lead x^n), t = 1/x
    std::vector<T> f(nterms, T(0));
    for (int k = 0; k < nterms && k <= n; ++k) f[k] = sigma[n - k] / lead;
    T alpha = inverse ? T(-1) / 2 : T(1) / 2;
    std::vector<T> g(nterms, T(0));
    g[0] = 1;
    for (int k = 1; k < nterms; ++k) {
        T s = 0;
        for (int j = 1; j <= k; ++j) s += ((alpha + 1) * T(j) - T(k)) * f[j] * g[k - j];
        g[k] = s / T(k);
    }
    using std::sqrt;
    T scale = inverse ? T(1) / sqrt(lead) : sqrt(lead);
    for (auto& x : g) x *= scale;
    Laurent<T> L;
    L.top = inverse ? -n / 2 : n / 2;
    L.c = std::move(g);
    return L;
}

template <class T>
Laurent<T> operator*(const Poly<T>& p, const Laurent<T>& L) {
    Laurent<T> r;
    int dp = p.degree();
    if (dp < 0) return r;
    r.top = L.top + dp;
    r.c.assign(L.c.size(), T(0));
    for (std::size_t j = 0; j < r.c.size(); ++j)
        for (int i = 0; i <= dp && static_cast<std::size_t>(i) <= j; ++i)
            r.c[j] += p[dp - i] * L.c[j - i];
    return r;
}

} // namespace bcut
