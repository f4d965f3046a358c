#pragma once

#include "vaform/presentation.hpp"

namespace vaform {

/// One creation/annihilation mode X_{-j} in the shifted convention
/// Y(v,z) = sum v_n z^{-n-Delta}; j is the depth (-n), so creators have
/// j >= Delta and annihilators j < Delta.
struct Mode {
    HalfInt j;
    int gen = 0;

    friend bool operator==(const Mode& a, const Mode& b) { return a.j == b.j && a.gen == b.gen; }
    /// Canonical order: deeper modes first, generator index breaks ties.
    friend bool operator<(const Mode& a, const Mode& b) {
        if (a.j != b.j) return a.j > b.j;
        return a.gen < b.gen;
    }
};

/// PBW monomial X^{(1)}_{-j_1} ... X^{(r)}_{-j_r} |0>, weakly decreasing in
/// depth, ties by increasing generator index, strict for odd generators.
struct Monomial {
    std::vector<Mode> modes;

    HalfInt weight() const {
        HalfInt w(0);
        for (auto& m : modes) w += m.j;
        return w;
    }
    int parity(const AlgebraPresentation& p) const {
        int par = 0;
        for (auto& m : modes) par ^= p.generators[static_cast<std::size_t>(m.gen)].parity;
        return par;
    }
    bool is_vacuum() const { return modes.empty(); }
    std::string str(const AlgebraPresentation& p) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.modes == b.modes; }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        return std::lexicographical_compare(a.modes.begin(), a.modes.end(), b.modes.begin(),
                                            b.modes.end());
    }
};

/// Finite scalar-linear combination of PBW monomials.
class State {
  public:
    State() = default;
    static State vacuum() {
        State s;
        s.terms_[Monomial{}] = Scalar(1);
        return s;
    }

    void add(const Monomial& m, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void add_scaled(const State& s, const Scalar& c) {
        for (auto& [m, v] : s.terms_) add(m, v * c);
    }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    Scalar coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar() : it->second;
    }

    /// Weight when homogeneous; nullopt for 0 or mixed states.
    std::optional<HalfInt> homogeneous_weight() const;
    /// Split into weight-homogeneous components.
    std::map<HalfInt, State> weight_components() const;

    friend State operator+(const State& a, const State& b) {
        State r = a;
        r.add_scaled(b, Scalar(1));
        return r;
    }
    friend State operator-(const State& a, const State& b) {
        State r = a;
        r.add_scaled(b, Scalar(-1));
        return r;
    }
    friend State operator*(const Scalar& c, const State& s) {
        State r;
        r.add_scaled(s, c);
        return r;
    }
    friend bool operator==(const State& a, const State& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const State& a, const State& b) { return !(a == b); }

    std::string str(const AlgebraPresentation& p) const;

  private:
    std::map<Monomial, Scalar> terms_;
};

/// All PBW monomials of weight w in canonical order.
std::vector<Monomial> basis(const AlgebraPresentation& p, HalfInt w);

/// Normal form of X_n s. n must lie in -Delta_X + Z.
State apply_mode(const AlgebraPresentation& p, int gen, HalfInt n, const State& s);

/// The unshifted product mode X_(m) = X_{m - Delta + 1}.
inline State apply_unshifted_mode(const AlgebraPresentation& p, int gen, long m, const State& s) {
    HalfInt n = HalfInt(static_cast<int>(m)) -
                p.generators[static_cast<std::size_t>(gen)].delta + HalfInt(1);
    return apply_mode(p, gen, n, s);
}

/// Action of a composite vector (sum of right-nested normally ordered words)
/// through its shifted mode of index n.
State apply_poly_mode(const AlgebraPresentation& p, const NOPoly& v, HalfInt n, const State& s);

/// Coefficient of the vacuum.
Scalar expectation(const State& s);

/// L_n through the conformal vector.
State conformal_mode(const AlgebraPresentation& p, HalfInt n, const State& s);

/// L_{-1} = T.
State translate(const AlgebraPresentation& p, const State& s);

struct PrimaryReport {
    bool primary = true;       // L_n X = 0 for 1 <= n <= max_n
    bool quasiprimary = true;  // the n = 1 case
    int first_nonzero = 0;     // witness level when not primary
    State witness;
};
PrimaryReport check_primary(const AlgebraPresentation& p, int gen, int max_n);

/// True when every generator is quasiprimary (L_1 kills each generator state).
bool all_quasiprimary(const AlgebraPresentation& p);

struct CommutatorCheck {
    bool pass = true;
    State lhs, rhs;
};
/// Verifies X_m (Y_n s) - p(X,Y) Y_n (X_m s) against the bracket-table
/// commutator expansion; the two sides are straightened independently.
CommutatorCheck check_commutator(const AlgebraPresentation& p, int x, HalfInt m, int y, HalfInt n,
                                 const State& s);

struct ResidueSides {
    Rat lhs_coeff, rhs_coeff;
    Rat power; // shared exponent of w
};
/// Both sides of the residue identity for rational M, N, K with M + K in Z,
/// each computed by expanding in its own domain.
ResidueSides residue_identity(const Rat& M, const Rat& N, const Rat& K);

/// 2 <L_2 L_{-2} vacuum>.
Scalar central_charge(const AlgebraPresentation& p);

} // namespace vaform
