#include "vaform/fixtures.hpp"

namespace vaform {

namespace {

GaussRat G(long num, long den = 1) { return GaussRat(make_rat(num, den)); }

void set_bracket(LieData& g, int i, int j, std::vector<std::pair<GaussRat, int>> value) {
    // fill both directions with super skew-symmetry
    g.brackets[{i, j}] = value;
    if (i != j) {
        int s = (g.parities[static_cast<std::size_t>(i)] && g.parities[static_cast<std::size_t>(j)]) ? 1 : -1;
        std::vector<std::pair<GaussRat, int>> rev;
        for (auto& [c, t] : value) rev.emplace_back(c * GaussRat(Rat(s)), t);
        g.brackets[{j, i}] = rev;
    }
}

} // namespace

LieData fermion_odd_space() {
    LieData d;
    d.names = {"a"};
    d.parities = {1};
    d.form = {{G(1)}};
    d.phi = {{G(-1)}};
    return d;
}

LieData fermion_symplectic_space() {
    LieData d;
    d.names = {"a", "b"};
    d.parities = {0, 0};
    d.form = {{G(0), G(1)}, {G(-1), G(0)}};
    d.phi = {{G(1), G(0)}, {G(0), G(1)}};
    return d;
}

LieData boson_even_space() {
    LieData d;
    d.names = {"a"};
    d.parities = {0};
    d.form = {{G(1)}};
    d.phi = {{G(-1)}};
    return d;
}

LieData boson_odd_space() {
    LieData d;
    d.names = {"x", "y"};
    d.parities = {1, 1};
    d.form = {{G(0), G(1)}, {G(-1), G(0)}};
    d.phi = {{G(1), G(0)}, {G(0), G(1)}};
    return d;
}

LieData sl2_compact() {
    LieData d;
    d.names = {"e", "h", "f"};
    d.parities = {0, 0, 0};
    d.form = {{G(0), G(0), G(1)}, {G(0), G(2), G(0)}, {G(1), G(0), G(0)}};
    d.phi = {{G(0), G(0), G(-1)}, {G(0), G(-1), G(0)}, {G(-1), G(0), G(0)}};
    set_bracket(d, 1, 0, {{G(2), 0}});  // [h,e] = 2e
    set_bracket(d, 1, 2, {{G(-2), 2}}); // [h,f] = -2f
    set_bracket(d, 0, 2, {{G(1), 1}});  // [e,f] = h
    return d;
}

LieData abelian_1d() {
    LieData d;
    d.names = {"a"};
    d.parities = {0};
    d.form = {{G(1)}};
    d.phi = {{G(-1)}};
    return d;
}

MinimalWDatum minimal_w_sl3_datum(std::optional<Poly> p_k_override) {
    // g = sl(3), theta = e_13, f = e_31, x = diag(1/2, 0, -1/2).
    // g-natural is the line through a = diag(1, -2, 1); g_{-1/2} = {e_21, e_32}.
    // phi is entrywise conjugation (the split form fixes f and x).
    MinimalWDatum d;
    d.gnat.names = {"a"};
    d.gnat.parities = {0};
    d.gnat.form = {{G(6)}}; // tr(a^2)
    d.gnat.phi = {{G(1)}};
    d.ideal_of = {0};
    d.ideal_h_dual = {Rat(0)}; // center
    d.ghalf_names = {"u", "v"};
    d.ghalf_parities = {0, 0};
    d.ghalf_phi = {{G(1), G(0)}, {G(0), G(1)}};
    d.action[{0, 0}] = {{G(-3), 0}}; // [a, u] = -3u
    d.action[{0, 1}] = {{G(3), 1}};  // [a, v] =  3v
    d.pairing = {{G(0), G(-1)}, {G(1), G(0)}}; // <u,v> = (e_theta | [u,v]) = -1
    d.dual_basis = {{G(1, 6)}};
    d.h_dual = Rat(3);
    d.sdim = Rat(8);
    if (p_k_override) {
        d.p_k = *p_k_override;
    } else {
        // (k+1)(k+3/2) = k^2 + 5/2 k + 3/2
        d.p_k = Poly();
        d.p_k.push_coeff(G(3, 2));
        d.p_k.push_coeff(G(5, 2));
        d.p_k.push_coeff(G(1));
    }
    return d;
}

MinimalWDatum minimal_w_osp12_datum() {
    // g = osp(1|2): g-natural vanishes and g_{-1/2} is one odd line with
    // <u,u> = 1, so the only generators are one odd weight-3/2 field and L.
    MinimalWDatum d;
    d.ghalf_names = {"u"};
    d.ghalf_parities = {1};
    d.ghalf_phi = {{G(1)}};
    d.pairing = {{G(1)}};
    d.h_dual = make_rat(3, 2);
    d.sdim = Rat(1);
    // (k+1/2)(k+5/4) = k^2 + 7/4 k + 5/8
    d.p_k = Poly();
    d.p_k.push_coeff(G(5, 8));
    d.p_k.push_coeff(G(7, 4));
    d.p_k.push_coeff(G(1));
    return d;
}

MinimalWDatum minimal_w_sl21_datum() {
    // g = sl(2|1) with theta the root of the even sl(2): g-natural is the
    // line through Z = diag(1,1,2) with (Z|Z) = str(Z^2) = -2, and g_{-1/2}
    // is the odd span of u = E_23, v = E_31 with [Z,u] = -u, [Z,v] = v and
    // pairing <u,v> = (e_theta | [u,v]) = 1/2 for e_theta = E_12/2.
    MinimalWDatum d;
    d.gnat.names = {"Z"};
    d.gnat.parities = {0};
    d.gnat.form = {{G(-2)}};
    d.gnat.phi = {{G(1)}};
    d.ideal_of = {0};
    d.ideal_h_dual = {Rat(0)};
    d.ghalf_names = {"u", "v"};
    d.ghalf_parities = {1, 1};
    d.ghalf_phi = {{G(1), G(0)}, {G(0), G(1)}};
    d.action[{0, 0}] = {{G(-1), 0}};
    d.action[{0, 1}] = {{G(1), 1}};
    d.pairing = {{G(0), G(1, 2)}, {G(1, 2), G(0)}};
    d.dual_basis = {{G(-1, 2)}};
    d.h_dual = Rat(1);
    d.sdim = Rat(0);
    // (k+1/2)(k+1) = k^2 + 3/2 k + 1/2
    d.p_k = Poly();
    d.p_k.push_coeff(G(1, 2));
    d.p_k.push_coeff(G(3, 2));
    d.p_k.push_coeff(G(1));
    return d;
}

std::vector<NamedPresentation> builtin_presentations() {
    std::vector<NamedPresentation> out;
    out.push_back({"fermion(0|1)", build_free_fermion(fermion_odd_space())});
    out.push_back({"fermion(2|0)", build_free_fermion(fermion_symplectic_space())});
    out.push_back({"boson(1|0)", build_free_boson(boson_even_space())});
    out.push_back({"boson(0|2)", build_free_boson(boson_odd_space())});
    out.push_back({"affine sl2", build_affine(sl2_compact())});
    out.push_back({"virasoro c=1/2", build_virasoro(Scalar(make_rat(1, 2)))});
    out.push_back({"minimal W sl3", build_minimal_w(minimal_w_sl3_datum())});
    out.push_back({"minimal W osp(1|2)", build_minimal_w(minimal_w_osp12_datum())});
    out.push_back({"minimal W sl(2|1)", build_minimal_w(minimal_w_sl21_datum())});
    out.push_back({"fermion x boson",
                   tensor(build_free_fermion(fermion_odd_space()),
                          build_free_boson(boson_even_space()))});
    return out;
}

} // namespace vaform
