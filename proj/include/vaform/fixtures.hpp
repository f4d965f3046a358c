#pragma once

#include "vaform/presentation.hpp"

namespace vaform {

/// One odd generator a with (a|a) = 1, phi(a) = -a. Unitary.
LieData fermion_odd_space();
/// Two even generators with a symplectic form, phi = pointwise fixed. Not
/// positive definite at weight 1/2.
LieData fermion_symplectic_space();
/// One even generator with (a|a) = 1, phi(a) = -a. Unitary.
LieData boson_even_space();
/// Two odd generators with a symplectic form (symplectic fermions).
LieData boson_odd_space();
/// sl(2) with (e|f) = 1, (h|h) = 2 and the compact involution
/// phi(e) = -f, phi(h) = -h, phi(f) = -e.
LieData sl2_compact();
/// 1-dimensional abelian Lie algebra with (a|a) = 1, phi(a) = -a.
LieData abelian_1d();

/// Minimal W-algebra datum for sl(3): one weight-1 current, two weight-3/2
/// fields, h_dual = 3, sdim = 8. p(k) defaults to (k+1)(k+3/2); an override
/// lets tests configure other monic quadratics.
MinimalWDatum minimal_w_sl3_datum(std::optional<Poly> p_k_override = std::nullopt);

/// Minimal W-algebra datum for osp(1|2): no currents, a single odd
/// weight-3/2 field (the N=1 superconformal algebra). h_dual = 3/2,
/// sdim = 1, p(k) = (k+1/2)(k+5/4).
MinimalWDatum minimal_w_osp12_datum();

/// Minimal W-algebra datum for sl(2|1): one even current and two odd
/// weight-3/2 fields (the N=2 superconformal algebra). h_dual = 1,
/// sdim = 0, p(k) = (k+1/2)(k+1).
MinimalWDatum minimal_w_sl21_datum();

struct NamedPresentation {
    std::string name;
    AlgebraPresentation p;
};

/// Every builtin presentation exercised by the consistency suites.
std::vector<NamedPresentation> builtin_presentations();

} // namespace vaform
