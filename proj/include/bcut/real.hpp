#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace bcut {

namespace bmp = boost::multiprecision;

template <unsigned Digits10>
using mpfr_real = bmp::number<bmp::mpfr_float_backend<Digits10, bmp::allocate_stack>, bmp::et_off>;

using real128 = mpfr_real<40>;  // 134 bits
using real256 = mpfr_real<78>;  // 260 bits
using real320 = mpfr_real<97>;  // 323 bits
using real512 = mpfr_real<155>; // 516 bits

template <class T>
using cplx = std::complex<T>;

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
inline T pi() { return boost::math::constants::pi<T>(); }

template <class T>
inline T two_pi() { return boost::math::constants::two_pi<T>(); }

template <class T>
inline T eps() { return std::numeric_limits<T>::epsilon(); }

template <class T>
inline int bits() { return std::numeric_limits<T>::digits; }

template <class T>
inline T from_string(const std::string& s) {
    return T(s);
}

template <class T>
inline std::string to_string(const T& x, int digits = 30) {
    std::ostringstream os;
    os << std::setprecision(digits) << std::scientific << x;
    return os.str();
}

template <class T>
inline double to_double(const T& x) { return static_cast<double>(x); }

inline double to_double(double x) { return x; }

template <class T>
inline T sign(const T& x) { return x < 0 ? T(-1) : T(1); }

// sin and cos of a complex argument built from real functions only
template <class T>
inline cplx<T> csin(const cplx<T>& z) {
    using std::cos; using std::cosh; using std::sin; using std::sinh;
    return {sin(z.real()) * cosh(z.imag()), cos(z.real()) * sinh(z.imag())};
}

template <class T>
inline cplx<T> cexp(const cplx<T>& z) {
    using std::cos; using std::exp; using std::sin;
    T r = exp(z.real());
    return {r * cos(z.imag()), r * sin(z.imag())};
}

template <class T>
inline T cabs(const cplx<T>& z) {
    using std::sqrt;
    return sqrt(z.real() * z.real() + z.imag() * z.imag());
}

} // namespace bcut
