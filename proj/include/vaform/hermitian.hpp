#pragma once

#include "vaform/engine.hpp"

namespace vaform {

/// The conjugate-linear operator g = e^{-pi i (L_0 + p/2)} phi, tabulated per
/// generator as a quarter-turn phase times the phi image.
struct GOp {
    std::vector<Phase> phases;                       // (-i)^{2 delta + p} per generator
    std::vector<std::vector<GaussRat>> images;       // phi rows

    static GOp of(const AlgebraPresentation& p);
};

/// g applied to a state (conjugate-linear; coefficients are conjugated).
State g_apply(const AlgebraPresentation& p, const State& s);

/// A(z) s = e^{zL_1} z^{-2L_0} g s as a Laurent polynomial in z with state
/// coefficients; non-homogeneous states are split per weight.
std::map<long, State> a_operator(const AlgebraPresentation& p, const State& s);

/// A(1/z) applied to a Laurent polynomial, for composition tests.
std::map<long, State> a_operator_inv_var(const AlgebraPresentation& p,
                                         const std::map<long, State>& laurent);

/// omega = A(1) = e^{L_1} g.
State omega_state(const AlgebraPresentation& p, const State& s);

/// The invariant Hermitian form, conjugate-linear in the FIRST argument.
/// Requires every generator to be quasiprimary.
Scalar inner_product(const AlgebraPresentation& p, const State& u, const State& v);

struct GramMatrix {
    HalfInt weight;
    std::vector<Monomial> basis;
    std::vector<std::vector<Scalar>> entries;

    int dim() const { return static_cast<int>(basis.size()); }
};

GramMatrix gram(const AlgebraPresentation& p, HalfInt w);

struct SignatureReport {
    int n_plus = 0, n_zero = 0, n_minus = 0;
    std::vector<State> kernel_basis;
};

/// Exact signature of the Gram specialized at a real rational level, by
/// congruence diagonalization over Q(i).
SignatureReport signature(const GramMatrix& g, const Rat& k0);

struct WeightVerdict {
    HalfInt weight;
    int dim = 0;
    SignatureReport sig;
};

struct UnitarityReport {
    std::vector<WeightVerdict> weights;
    enum class Verdict { PositiveDefinite, SemidefiniteWithKernel, Indefinite } verdict =
        Verdict::PositiveDefinite;
    std::optional<HalfInt> first_failure;

    std::string verdict_str() const;
};

UnitarityReport unitarity_report(const AlgebraPresentation& p, HalfInt max_w, const Rat& k0);

struct KernelFlowReport {
    std::map<HalfInt, std::vector<State>> kernels;
    bool closed = true; // kernel maps into kernel under generator modes
    std::string violation;
};

KernelFlowReport kernel_flow(const AlgebraPresentation& p, HalfInt max_w, const Rat& k0);

struct CollapsingCandidate {
    Rat level;
    std::vector<HalfInt> degenerate_weights;
    std::map<HalfInt, int> kernel_dims;
};

struct CollapsingReport {
    std::vector<CollapsingCandidate> candidates;
    std::vector<HalfInt> structurally_degenerate; // det identically zero
    std::vector<Rat> excluded_poles;
};

/// Rational roots of Gram determinant numerators for w <= max_w, excluding
/// poles of the entries.
CollapsingReport collapsing_candidates(const AlgebraPresentation& p, HalfInt max_w);

struct InvarianceCheck {
    bool pass = true;
    Scalar lhs, rhs;
};

/// (v, X_n u) = (g(X)_{-n} v, u), exactly; optionally specialized at k0.
InvarianceCheck check_invariance(const AlgebraPresentation& p, int gen, HalfInt n, const State& u,
                                 const State& v, std::optional<Rat> k0 = std::nullopt);

struct RealityReport {
    enum class Kind { Real, Imaginary, Zero, Mixed } kind = Kind::Zero;
    GaussRat value;
    bool parity_sign_positive = true; // (-1)^{2 delta + p} == +1
    bool consistent = true;           // classification matches the parity test
};

/// Classifies <X_Delta X_{-Delta} vacuum> for a phi-fixed generator.
RealityReport reality_check(const AlgebraPresentation& p, int gen,
                            std::optional<Rat> k0 = std::nullopt);

/// Determinant of the Gram (exact, fraction arithmetic over Q(i)(k)).
Scalar gram_determinant(const GramMatrix& g);

} // namespace vaform
