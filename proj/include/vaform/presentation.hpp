#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "vaform/scalar.hpp"

namespace vaform {

/// One factor of a right-nested normally ordered product: (m, g) stands for
/// the m-th derivative of generator g.
using NOFactor = std::pair<int, int>;

/// Right-nested normally ordered monomial :T^{m1}X1 (T^{m2}X2 (...)): with a
/// scalar coefficient. Empty factor list = multiple of the vacuum.
struct NOTerm {
    Scalar coeff;
    std::vector<NOFactor> factors;
};

/// Sum of NOTerms in canonical form: factor lists are map keys, so equal
/// monomials merge and ordering is deterministic.
class NOPoly {
  public:
    NOPoly() = default;
    explicit NOPoly(const NOTerm& t) { add(t); }

    void add(const NOTerm& t) {
        if (t.coeff.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(t.factors, t.coeff);
        if (!fresh) {
            it->second += t.coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void add_scaled(const NOPoly& p, const Scalar& c) {
        for (const auto& [f, s] : p.terms_) add(NOTerm{s * c, f});
    }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<NOFactor>, Scalar>& terms() const { return terms_; }

    friend bool operator==(const NOPoly& a, const NOPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const NOPoly& a, const NOPoly& b) { return !(a == b); }

  private:
    std::map<std::vector<NOFactor>, Scalar> terms_;
};

struct GeneratorDecl {
    std::string name;
    HalfInt delta;
    int parity = 0;                  // 0 even, 1 odd
    std::vector<GaussRat> phi_image; // conjugate-linear involution, row of the phi matrix
};

/// t-th products X_i (t) X_j indexed by (i, j, t); only finitely many t per pair.
using LambdaBracketTable = std::map<std::tuple<int, int, int>, NOPoly>;

struct AlgebraPresentation {
    std::vector<GeneratorDecl> generators;
    LambdaBracketTable brackets;
    std::variant<int, NOPoly> conformal; // a generator index or a composite vector
    std::optional<Scalar> declared_central_charge;

    int num_generators() const { return static_cast<int>(generators.size()); }
    const NOPoly* bracket(int i, int j, int t) const {
        auto it = brackets.find({i, j, t});
        return it == brackets.end() ? nullptr : &it->second;
    }
    /// Largest t with a stored entry for the pair, or -1.
    int max_t(int i, int j) const;

    HalfInt term_weight(const std::vector<NOFactor>& factors) const;
    int term_parity(const std::vector<NOFactor>& factors) const;
    NOPoly conformal_poly() const;

    /// Supersign (-1)^{p(i)p(j)}.
    int supersign(int i, int j) const {
        return (generators[static_cast<std::size_t>(i)].parity &&
                generators[static_cast<std::size_t>(j)].parity)
                   ? -1
                   : 1;
    }
};

/// Basis, structure constants, bilinear form and involution of a finite
/// dimensional Lie (super)algebra; with empty brackets it doubles as a plain
/// superspace with a form.
struct LieData {
    std::vector<std::string> names;
    std::vector<int> parities;
    // brackets[i][j] = [a_i, a_j] as a list of (coefficient, target index)
    std::map<std::pair<int, int>, std::vector<std::pair<GaussRat, int>>> brackets;
    std::vector<std::vector<GaussRat>> form; // (a_i | a_j)
    std::vector<std::vector<GaussRat>> phi;  // row i = image of a_i

    int dim() const { return static_cast<int>(names.size()); }
    std::vector<std::pair<GaussRat, int>> bracket(int i, int j) const {
        auto it = brackets.find({i, j});
        return it == brackets.end() ? std::vector<std::pair<GaussRat, int>>{} : it->second;
    }
    /// Validate super-Jacobi, form invariance/supersymmetry/evenness,
    /// non-degeneracy and the involution axioms. Returns violations.
    std::vector<std::string> validate() const;
    /// Rows of the inverse-transpose of the form: dual_basis()[j] expresses
    /// the dual vector of a_j in the basis.
    std::vector<std::vector<GaussRat>> dual_basis() const;
    /// Casimir eigenvalue / 2, when the adjoint Casimir is scalar.
    std::optional<Rat> casimir_half_eigenvalue() const;
};

/// Everything needed to present a minimal W-algebra: the weight-1 part as a
/// LieData split into ideals, the weight-3/2 space with its pairing and
/// module structure, and the numerical data (h_dual, sdim, p(k)).
struct MinimalWDatum {
    LieData gnat;
    std::vector<int> ideal_of;        // ideal index per gnat basis element
    std::vector<Rat> ideal_h_dual;    // dual Coxeter number per ideal
    std::vector<std::string> ghalf_names;
    std::vector<int> ghalf_parities;
    std::vector<std::vector<GaussRat>> ghalf_phi;
    // action[{a, u}] = [a, u] as a list of (coefficient, target in ghalf)
    std::map<std::pair<int, int>, std::vector<std::pair<GaussRat, int>>> action;
    std::vector<std::vector<GaussRat>> pairing; // <u_r, u_s>
    std::vector<std::vector<GaussRat>> dual_basis; // row a = coefficients of a^alpha
    Rat h_dual;
    Rat sdim;
    Poly p_k; // monic quadratic, configuration input

    std::vector<std::string> validate() const;
    std::vector<std::pair<GaussRat, int>> act(int a, int u) const {
        auto it = action.find({a, u});
        return it == action.end() ? std::vector<std::pair<GaussRat, int>>{} : it->second;
    }
};

AlgebraPresentation build_free_fermion(const LieData& space);
AlgebraPresentation build_free_boson(const LieData& space);
AlgebraPresentation build_affine(const LieData& g, std::optional<Rat> h_dual = std::nullopt);
AlgebraPresentation build_virasoro(const Scalar& c);
AlgebraPresentation build_minimal_w(const MinimalWDatum& datum);
AlgebraPresentation tensor(const AlgebraPresentation& p, const AlgebraPresentation& q);

/// Structural validation. Empty report = valid.
std::vector<std::string> validate(const AlgebraPresentation& p);

/// Substitute k = k0 in every scalar of the presentation.
AlgebraPresentation specialize_presentation(const AlgebraPresentation& p, const Rat& k0);

/// Structural equality ignoring generator names.
bool same_structure(const AlgebraPresentation& p, const AlgebraPresentation& q);

/// T acting on composite vectors (Leibniz over factors, raising derivative
/// orders).
NOPoly translate_poly(const NOPoly& v);

} // namespace vaform
