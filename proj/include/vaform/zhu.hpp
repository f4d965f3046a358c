#pragma once

#include "vaform/engine.hpp"

namespace vaform {

/// Generator of the minimal-W Zhu algebra: a weight-3/2 element (Half), a
/// weight-1 element (Nat) or the shifted central element L'.
struct ZhuGen {
    enum class Kind { Half = 0, Nat = 1, Lp = 2 } kind = Kind::Lp;
    int index = 0;

    friend bool operator==(const ZhuGen& a, const ZhuGen& b) {
        return a.kind == b.kind && a.index == b.index;
    }
    friend auto operator<=>(const ZhuGen& a, const ZhuGen& b) {
        if (a.kind != b.kind) return a.kind <=> b.kind;
        return a.index <=> b.index;
    }
};

using ZhuWord = std::vector<ZhuGen>;

/// Scalar-linear combination of PBW words (Half letters, then Nat letters,
/// then powers of L'; indices non-decreasing, odd letters never repeat).
class ZhuElement {
  public:
    ZhuElement() = default;
    static ZhuElement one() {
        ZhuElement e;
        e.terms_[ZhuWord{}] = Scalar(1);
        return e;
    }
    static ZhuElement generator(ZhuGen g) {
        ZhuElement e;
        e.terms_[ZhuWord{g}] = Scalar(1);
        return e;
    }

    void add(const ZhuWord& w, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(w, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void add_scaled(const ZhuElement& e, const Scalar& c) {
        for (auto& [w, v] : e.terms_) add(w, v * c);
    }
    bool is_zero() const { return terms_.empty(); }
    const std::map<ZhuWord, Scalar>& terms() const { return terms_; }

    friend ZhuElement operator+(const ZhuElement& a, const ZhuElement& b) {
        ZhuElement r = a;
        r.add_scaled(b, Scalar(1));
        return r;
    }
    friend ZhuElement operator-(const ZhuElement& a, const ZhuElement& b) {
        ZhuElement r = a;
        r.add_scaled(b, Scalar(-1));
        return r;
    }
    friend ZhuElement operator*(const Scalar& c, const ZhuElement& e) {
        ZhuElement r;
        r.add_scaled(e, c);
        return r;
    }
    friend bool operator==(const ZhuElement& a, const ZhuElement& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const ZhuElement& a, const ZhuElement& b) { return !(a == b); }

  private:
    std::map<ZhuWord, Scalar> terms_;
};

/// The Zhu algebra of a minimal W-algebra, presented by generators and the
/// derived commutation rules. With use_lprime the quadratic relation is
/// level-free; with the plain conformal generator it keeps its k-dependence.
class ZhuPresentation {
  public:
    explicit ZhuPresentation(MinimalWDatum datum, bool use_lprime = true);

    const MinimalWDatum& datum() const { return datum_; }
    bool uses_lprime() const { return use_lprime_; }
    int parity(ZhuGen g) const;
    std::string name(ZhuGen g) const;
    /// Super-commutator [x, y] for generators, already in PBW normal form.
    const ZhuElement& rule(ZhuGen x, ZhuGen y) const;

    ZhuElement normalize(std::vector<std::pair<Scalar, ZhuWord>> words) const;

    std::string str(const ZhuElement& e) const;

  private:
    MinimalWDatum datum_;
    bool use_lprime_;
    std::map<std::pair<ZhuGen, ZhuGen>, ZhuElement> rules_;
    ZhuElement empty_rule_;
};

/// PBW normal form of x * y.
ZhuElement zhu_multiply(const ZhuPresentation& zp, const ZhuElement& x, const ZhuElement& y);

/// The conjugate-linear anti-involution: generator rule, word reversal with
/// the Koszul sign, coefficient conjugation.
ZhuElement zhu_omega(const ZhuPresentation& zp, const ZhuElement& x);

/// The engine-level Zhu product a*b = sum_j binom(Delta_a, j) a_(-1+j) b.
/// a must be weight-homogeneous.
State zhu_star(const AlgebraPresentation& p, const State& a, const State& b);

/// True when no straightening rule carries any k-dependence.
bool k_independence_check(const ZhuPresentation& zp);

} // namespace vaform
