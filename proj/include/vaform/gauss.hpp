#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "vaform/errors.hpp"
#include "vaform/halfint.hpp"

namespace vaform {

/// Exact rational number. mpq_class keeps the canonical form we need:
/// reduced, positive denominator.
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat parse_rat(const std::string& s);
std::string rat_str(const Rat& r);

inline Rat rat_of(HalfInt h) { return make_rat(h.twice, 2); }

/// Generalized binomial C(x, j) for rational x and integer j >= 0.
Rat binomial(const Rat& x, long j);

/// Rational roots of an integer-coefficient polynomial are found through the
/// divisors of its extreme coefficients; factoring is exact (trial division
/// plus Pollard rho on what remains).
std::vector<mpz_class> divisors(const mpz_class& n);

/// Element of Q(i).
struct GaussRat {
    Rat re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(Rat r) : re(std::move(r)), im(0) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussRat(long n) : re(n), im(0) {}

    static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    bool is_imaginary() const { return re == 0 && im != 0; }

    GaussRat conj() const { return GaussRat(re, -im); }
    Rat norm2() const { return re * re + im * im; }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re + b.re, a.im + b.im);
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re - b.re, a.im - b.im);
    }
    friend GaussRat operator-(const GaussRat& a) { return GaussRat(-a.re, -a.im); }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    GaussRat inv() const {
        if (is_zero()) throw Error("division by zero in Q(i)");
        Rat n = norm2();
        return GaussRat(re / n, -im / n);
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) { return a * b.inv(); }
    GaussRat& operator+=(const GaussRat& b) { re += b.re; im += b.im; return *this; }
    GaussRat& operator-=(const GaussRat& b) { re -= b.re; im -= b.im; return *this; }
    GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    std::string str() const;
};

GaussRat parse_gauss(const std::string& s);

} // namespace vaform
