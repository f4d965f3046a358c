#include "vaform/poly.hpp"

#include <algorithm>

namespace vaform {

Poly Poly::monomial(GaussRat c, int degree) {
    Poly p;
    if (c.is_zero()) return p;
    p.coeffs_.assign(static_cast<std::size_t>(degree) + 1, GaussRat());
    p.coeffs_.back() = std::move(c);
    return p;
}

bool Poly::is_one() const { return degree() == 0 && coeffs_[0] == GaussRat(1); }

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    r.coeffs_.resize(n);
    for (std::size_t d = 0; d < n; ++d) {
        if (d < a.coeffs_.size()) r.coeffs_[d] += a.coeffs_[d];
        if (d < b.coeffs_.size()) r.coeffs_[d] += b.coeffs_[d];
    }
    r.trim();
    return r;
}

Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, GaussRat());
    for (std::size_t da = 0; da < a.coeffs_.size(); ++da) {
        if (a.coeffs_[da].is_zero()) continue;
        for (std::size_t db = 0; db < b.coeffs_.size(); ++db)
            r.coeffs_[da + db] += a.coeffs_[da] * b.coeffs_[db];
    }
    r.trim();
    return r;
}

Poly Poly::operator*(const GaussRat& c) const {
    Poly r;
    if (c.is_zero()) return r;
    r.coeffs_ = coeffs_;
    for (auto& x : r.coeffs_) x *= c;
    return r;
}

void Poly::divrem(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    q = Poly();
    r = a;
    if (a.degree() >= b.degree())
        q.coeffs_.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, GaussRat());
    GaussRat lead_inv = b.leading().inv();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        GaussRat c = r.leading() * lead_inv;
        q.coeffs_[static_cast<std::size_t>(shift)] = c;
        for (int d = 0; d <= b.degree(); ++d)
            r.coeffs_[static_cast<std::size_t>(d + shift)] -= c * b.coeffs_[static_cast<std::size_t>(d)];
        r.trim();
    }
    q.trim();
}

Poly operator/(const Poly& a, const Poly& b) {
    Poly q, r;
    Poly::divrem(a, b, q, r);
    if (!r.is_zero()) throw Error("inexact polynomial division");
    return q;
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly q, r;
        divrem(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a * a.leading().inv(); // monic
}

GaussRat Poly::eval(const GaussRat& x) const {
    GaussRat acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::conj() const {
    Poly r = *this;
    for (auto& c : r.coeffs_) c = c.conj();
    return r;
}

Poly Poly::derivative() const {
    Poly r;
    for (int d = 1; d <= degree(); ++d)
        r.coeffs_.push_back(coeff(d) * GaussRat(Rat(d)));
    r.trim();
    return r;
}

std::vector<Rat> rational_roots(const Poly& p) {
    if (p.is_zero()) throw DegenerateInputError("rational_roots of the zero polynomial");

    // Real and imaginary coefficient parts must both vanish at a rational
    // root; run the candidate search on whichever part is nonzero.
    Poly part_re, part_im;
    for (int d = 0; d <= p.degree(); ++d) {
        part_re.push_coeff(GaussRat(p.coeff(d).re));
        part_im.push_coeff(GaussRat(p.coeff(d).im));
    }
    part_re.trim();
    part_im.trim();
    const Poly& base = part_re.is_zero() ? part_im : part_re;

    std::vector<Rat> roots;
    if (base.eval(GaussRat()).is_zero() && p.eval(GaussRat()).is_zero()) roots.push_back(Rat(0));

    // Scale to integer coefficients, drop the power of k.
    mpz_class lcm = 1;
    for (int d = 0; d <= base.degree(); ++d)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), base.coeff(d).re.get_den().get_mpz_t());
    std::vector<mpz_class> ic;
    for (int d = 0; d <= base.degree(); ++d) {
        Rat scaled = base.coeff(d).re * Rat(lcm);
        ic.push_back(scaled.get_num());
    }
    std::size_t low = 0;
    while (low < ic.size() && ic[low] == 0) ++low;
    if (low >= ic.size()) return roots; // base was c*k^v; only root 0

    mpz_class a0 = ic[low], ad = ic.back();
    if (ic.size() - low == 1) { // constant after stripping k^v: no further roots
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    for (const mpz_class& top : divisors(a0)) {
        for (const mpz_class& bot : divisors(ad)) {
            for (int sign : {1, -1}) {
                Rat cand(sign * top, bot);
                cand.canonicalize();
                if (p.eval(GaussRat(cand)).is_zero() &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace vaform
