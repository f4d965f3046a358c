#pragma once

#include <optional>
#include <string>

#include "vaform/poly.hpp"

namespace vaform {

/// Rational function in the level k over Q(i), the coefficient field of the
/// whole calculator. Canonical form: monic denominator, gcd(num, den) = 1.
class Scalar {
  public:
    Scalar() : num_(), den_(GaussRat(1)) {}
    Scalar(GaussRat c) : num_(std::move(c)), den_(GaussRat(1)) {}
    Scalar(Rat r) : Scalar(GaussRat(std::move(r))) {}
    Scalar(long n) : Scalar(GaussRat(n)) {}
    Scalar(Poly num, Poly den);

    static Scalar k() { return Scalar(Poly::k(), Poly(GaussRat(1))); }
    static Scalar i() { return Scalar(GaussRat::i()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.is_one(); }
    /// Constant value; requires is_constant().
    GaussRat constant() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar inv() const;
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Conjugation fixing k (meaningful for real k).
    Scalar conj() const;

    std::string str() const;

  private:
    Poly num_, den_;
    void reduce();
};

/// Evaluate s at k = k0. Throws PoleError naming the vanishing factor.
GaussRat specialize(const Scalar& s, const Rat& k0);

/// Fourth root of unity (-i)^q tracked by its exponent. Every phase produced
/// by the conjugation operator has this form because 2*delta + parity is an
/// integer.
struct Phase {
    int quarter_turns = 0; // value is (-i)^quarter_turns

    Phase() = default;
    explicit Phase(int q) : quarter_turns(((q % 4) + 4) % 4) {}

    friend Phase operator*(Phase a, Phase b) { return Phase(a.quarter_turns + b.quarter_turns); }
    friend bool operator==(Phase a, Phase b) { return a.quarter_turns == b.quarter_turns; }
    Phase inv() const { return Phase(-quarter_turns); }

    GaussRat value() const {
        switch (quarter_turns) {
            case 0: return GaussRat(Rat(1));
            case 1: return GaussRat(Rat(0), Rat(-1));
            case 2: return GaussRat(Rat(-1));
            default: return GaussRat(Rat(0), Rat(1));
        }
    }
};

/// e^{-pi i (delta + p/2)} = (-i)^{2 delta + p} for a state of conformal
/// weight delta and parity p.
Phase phase_of(HalfInt delta, int parity);

/// Recursive-descent parser for scalar expressions: rationals, i, k,
/// + - * / ^ and parentheses. Accepts everything Scalar::str() emits.
Scalar parse_scalar(const std::string& s);

} // namespace vaform
