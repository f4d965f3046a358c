#pragma once

#include <vector>

#include "vaform/gauss.hpp"

namespace vaform {

/// Dense univariate polynomial in the level indeterminate k over Q(i).
/// Coefficients are stored by ascending degree with no trailing zeros.
class Poly {
  public:
    Poly() = default;
    Poly(GaussRat c) { coeffs_.push_back(std::move(c)); trim(); }
    explicit Poly(Rat c) : Poly(GaussRat(std::move(c))) {}
    static Poly k() { return monomial(GaussRat(1), 1); }
    static Poly monomial(GaussRat c, int degree);

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const;
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const GaussRat& leading() const { return coeffs_.back(); }
    GaussRat coeff(int d) const {
        if (d < 0 || d > degree()) return GaussRat();
        return coeffs_[static_cast<std::size_t>(d)];
    }
    const std::vector<GaussRat>& coeffs() const { return coeffs_; }

    bool is_monic() const { return !is_zero() && leading() == GaussRat(1); }

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator*(const GaussRat& c) const;
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Exact division with remainder over the field Q(i).
    static void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r);
    friend Poly operator/(const Poly& a, const Poly& b);

    static Poly gcd(Poly a, Poly b); // monic

    GaussRat eval(const GaussRat& x) const;
    Poly conj() const; // conjugates coefficients, fixes k
    Poly derivative() const;

    void push_coeff(GaussRat c) { coeffs_.push_back(std::move(c)); }
    void trim();

  private:
    std::vector<GaussRat> coeffs_;
};

/// All rational r with p(r) = 0, sorted ascending. A rational root of a
/// polynomial with complex coefficients must kill the real and imaginary
/// parts simultaneously; each candidate is verified by exact evaluation.
std::vector<Rat> rational_roots(const Poly& p);

} // namespace vaform
