#pragma once

#include <boost/multiprecision/mpfr.hpp>

namespace dtbc::mp {

/// Variable-precision real; precision is set per pipeline entry through
/// ScopedPrecision and every temporary created inside inherits it.
using BigFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                               boost::multiprecision::et_off>;

class ScopedPrecision {
public:
    explicit ScopedPrecision(unsigned digits10) : saved_(BigFloat::default_precision()) {
        BigFloat::default_precision(digits10);
    }
    ~ScopedPrecision() { BigFloat::default_precision(saved_); }
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

private:
    unsigned saved_;
};

/// Minimal complex type over BigFloat; only the operations the Pade/root
/// pipeline needs.
struct BigComplex {
    BigFloat re{0};
    BigFloat im{0};

    BigComplex() = default;
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    explicit BigComplex(double r, double i = 0.0) : re(r), im(i) {}
};

inline BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re + b.re, a.im + b.im};
}
inline BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re - b.re, a.im - b.im};
}
inline BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }
inline BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline BigComplex operator*(const BigFloat& s, const BigComplex& a) { return {s * a.re, s * a.im}; }
inline BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    const BigFloat n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
inline BigComplex& operator+=(BigComplex& a, const BigComplex& b) {
    a.re += b.re;
    a.im += b.im;
    return a;
}
inline BigComplex& operator-=(BigComplex& a, const BigComplex& b) {
    a.re -= b.re;
    a.im -= b.im;
    return a;
}
inline BigFloat abs(const BigComplex& a) {
    return boost::multiprecision::sqrt(a.re * a.re + a.im * a.im);
}
inline BigComplex conj(const BigComplex& a) { return {a.re, -a.im}; }

} // namespace dtbc::mp
