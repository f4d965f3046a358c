#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "vaform/fixtures.hpp"
#include "vaform/hermitian.hpp"

using namespace vaform;

namespace {

State monomial_state(const Monomial& m) {
    State s;
    s.add(m, Scalar(1));
    return s;
}

State gen_state(const AlgebraPresentation& p, int g) {
    return monomial_state(Monomial{{Mode{p.generators[static_cast<std::size_t>(g)].delta, g}}});
}

std::vector<HalfInt> weights_up_to(HalfInt max) {
    std::vector<HalfInt> out;
    for (HalfInt w(0); w <= max; w = HalfInt::from_twice(w.twice + 1)) out.push_back(w);
    return out;
}

} // namespace

TEST_CASE("g on generator states matches the phase table") {
    AlgebraPresentation w = build_minimal_w(minimal_w_sl3_datum());
    // even weight-1 current with phi = id: g = -1
    CHECK(g_apply(w, gen_state(w, 0)) == Scalar(-1) * gen_state(w, 0));
    // even weight-3/2 field: g = i
    CHECK(g_apply(w, gen_state(w, 1)) == Scalar::i() * gen_state(w, 1));
    // L fixed up to (-i)^4 = 1
    CHECK(g_apply(w, gen_state(w, 3)) == gen_state(w, 3));

    // odd weight-1/2 fermion with phi(a) = -a: g(a) = a
    AlgebraPresentation f = build_free_fermion(fermion_odd_space());
    CHECK(g_apply(f, gen_state(f, 0)) == gen_state(f, 0));

    // even weight-1/2 symplectic pair with phi = id: g(r) = -i r
    AlgebraPresentation s = build_free_fermion(fermion_symplectic_space());
    CHECK(g_apply(s, gen_state(s, 0)) == -Scalar::i() * gen_state(s, 0));

    // conjugate linearity
    CHECK(g_apply(f, Scalar::i() * gen_state(f, 0)) == -Scalar::i() * gen_state(f, 0));
}

TEST_CASE("g squares to the identity on low weights") {
    for (auto& [name, p] : builtin_presentations()) {
        INFO(name);
        for (HalfInt w : weights_up_to(HalfInt(3)))
            for (auto& m : basis(p, w)) {
                State s = monomial_state(m);
                CHECK(g_apply(p, g_apply(p, s)) == s);
            }
    }
}

TEST_CASE("g matches the parity-compatible closed form") {
    // when 2*Delta = parity mod 2 for every generator, g acts on a state of
    // weight w as (-1)^{w + 2w^2} times the plain phi image
    for (auto& [name, p] : builtin_presentations()) {
        bool vosa = true;
        for (auto& g : p.generators) vosa = vosa && ((g.delta.twice + g.parity) % 2 == 0);
        if (!vosa) continue;
        INFO(name);
        for (HalfInt w : weights_up_to(HalfInt(3))) {
            // (-1)^{w + 2w^2}: for w = n/2, w + 2w^2 = n(n+1)/2 mod 2
            long n = w.twice;
            int sign = ((n * (n + 1) / 2) % 2 == 0) ? 1 : -1;
            for (auto& m : basis(p, w)) {
                // plain phi: distribute the images with no phases or signs
                State phi_image;
                phi_image.add(Monomial{}, Scalar(sign));
                for (auto it = m.modes.rbegin(); it != m.modes.rend(); ++it) {
                    State next;
                    const auto& row =
                        p.generators[static_cast<std::size_t>(it->gen)].phi_image;
                    for (int l = 0; l < p.num_generators(); ++l) {
                        if (row[static_cast<std::size_t>(l)].is_zero()) continue;
                        next.add_scaled(apply_mode(p, l, -it->j, phi_image),
                                        Scalar(row[static_cast<std::size_t>(l)]));
                    }
                    phi_image = std::move(next);
                }
                CHECK(g_apply(p, monomial_state(m)) == phi_image);
            }
        }
    }
}

TEST_CASE("g fixes the conformal vector") {
    for (auto& [name, p] : builtin_presentations()) {
        INFO(name);
        State l_state = conformal_mode(p, HalfInt(-2), State::vacuum());
        CHECK(g_apply(p, l_state) == l_state);
    }
}

TEST_CASE("A(z) on quasiprimary states and the vacuum") {
    AlgebraPresentation f = build_free_fermion(fermion_odd_space());
    auto az = a_operator(f, gen_state(f, 0));
    REQUIRE(az.size() == 1);
    CHECK(az.begin()->first == -1); // z^{-2*(1/2)}
    CHECK(az.begin()->second == g_apply(f, gen_state(f, 0)));

    auto vac = a_operator(f, State::vacuum());
    REQUIRE(vac.size() == 1);
    CHECK(vac.begin()->first == 0);
    CHECK(vac.begin()->second == State::vacuum());
}

TEST_CASE("A(1/z) inverts A(z) on low weights") {
    for (auto& [name, p] : builtin_presentations()) {
        INFO(name);
        for (HalfInt w : weights_up_to(HalfInt(3)))
            for (auto& m : basis(p, w)) {
                State s = monomial_state(m);
                auto composed = a_operator_inv_var(p, a_operator(p, s));
                REQUIRE(composed.size() == 1);
                CHECK(composed.begin()->first == 0);
                CHECK(composed.begin()->second == s);
            }
    }
}

TEST_CASE("omega is an involution and matches g on quasiprimary states") {
    for (auto& [name, p] : builtin_presentations()) {
        INFO(name);
        for (int g = 0; g < p.num_generators(); ++g)
            CHECK(omega_state(p, gen_state(p, g)) == g_apply(p, gen_state(p, g)));
        for (HalfInt w : weights_up_to(HalfInt(3)))
            for (auto& m : basis(p, w)) {
                State s = monomial_state(m);
                CHECK(omega_state(p, omega_state(p, s)) == s);
            }
    }
    // minimal W current: omega(J) = -J for even phi-fixed a
    AlgebraPresentation w = build_minimal_w(minimal_w_sl3_datum());
    CHECK(omega_state(w, gen_state(w, 0)) == Scalar(-1) * gen_state(w, 0));
}

TEST_CASE("inner product frozen values") {
    AlgebraPresentation f = build_free_fermion(fermion_odd_space());
    CHECK(inner_product(f, State::vacuum(), State::vacuum()) == Scalar(1));
    CHECK(inner_product(f, gen_state(f, 0), gen_state(f, 0)) == Scalar(1));
    // cross-weight orthogonality
    CHECK(inner_product(f, gen_state(f, 0), State::vacuum()).is_zero());

    // affine: phi-fixed x = e - f has (x|x) = -2, so (x,x) = 2k
    AlgebraPresentation aff = build_affine(sl2_compact());
    State x = gen_state(aff, 0) - gen_state(aff, 2);
    CHECK(inner_product(aff, x, x) == Scalar(2) * Scalar::k());
    // and (e,e) = k
    CHECK(inner_product(aff, gen_state(aff, 0), gen_state(aff, 0)) == Scalar::k());

    // minimal W: (G^u, G^v) = i * 4 p(k) <u,v>
    AlgebraPresentation w = build_minimal_w(minimal_w_sl3_datum());
    Scalar pk(minimal_w_sl3_datum().p_k, Poly(GaussRat(1)));
    CHECK(inner_product(w, gen_state(w, 1), gen_state(w, 2)) ==
          Scalar::i() * Scalar(4) * pk * Scalar(-1));
    CHECK(inner_product(w, gen_state(w, 1), gen_state(w, 1)).is_zero());

    // conjugate-linearity in the first argument
    CHECK(inner_product(f, Scalar::i() * gen_state(f, 0), gen_state(f, 0)) == -Scalar::i());
}

TEST_CASE("gram matrices: frozen small cases") {
    AlgebraPresentation f = build_free_fermion(fermion_odd_space());
    for (HalfInt w : weights_up_to(HalfInt(3))) {
        GramMatrix g = gram(f, w);
        for (int r = 0; r < g.dim(); ++r)
            for (int c = 0; c < g.dim(); ++c)
                CHECK(g.entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] ==
                      (r == c ? Scalar(1) : Scalar()));
    }

    GramMatrix g0 = gram(f, HalfInt(0));
    REQUIRE(g0.dim() == 1);
    CHECK(g0.entries[0][0] == Scalar(1));

    // boson weight 2: diag(2, 2) in basis [a(-2), a(-1)^2]
    AlgebraPresentation b = build_free_boson(boson_even_space());
    GramMatrix g2 = gram(b, HalfInt(2));
    REQUIRE(g2.dim() == 2);
    CHECK(g2.entries[0][0] == Scalar(2));
    CHECK(g2.entries[1][1] == Scalar(2));
    CHECK(g2.entries[0][1].is_zero());
    CHECK(g2.entries[1][0].is_zero());

    // affine weight 1: diag(k, 2k, k) in basis [e(-1), h(-1), f(-1)]
    AlgebraPresentation aff = build_affine(sl2_compact());
    GramMatrix ga = gram(aff, HalfInt(1));
    REQUIRE(ga.dim() == 3);
    CHECK(ga.entries[0][0] == Scalar::k());
    CHECK(ga.entries[1][1] == Scalar(2) * Scalar::k());
    CHECK(ga.entries[2][2] == Scalar::k());
    CHECK(ga.entries[0][1].is_zero());
    CHECK(ga.entries[0][2].is_zero());

    // symplectic even fermions at weight 1/2: [[0, -i], [i, 0]]
    AlgebraPresentation s = build_free_fermion(fermion_symplectic_space());
    GramMatrix gs = gram(s, HalfInt::half());
    REQUIRE(gs.dim() == 2);
    CHECK(gs.entries[0][0].is_zero());
    CHECK(gs.entries[0][1] == -Scalar::i());
    CHECK(gs.entries[1][0] == Scalar::i());

    // minimal W at weight 3/2: [[0, -4 i p(k)], [4 i p(k), 0]]
    AlgebraPresentation w = build_minimal_w(minimal_w_sl3_datum());
    Scalar pk(minimal_w_sl3_datum().p_k, Poly(GaussRat(1)));
    GramMatrix gw = gram(w, HalfInt::from_twice(3));
    REQUIRE(gw.dim() == 2);
    CHECK(gw.entries[0][1] == Scalar(-4) * Scalar::i() * pk);
    CHECK(gw.entries[1][0] == Scalar(4) * Scalar::i() * pk);
}

TEST_CASE("gram matrices are Hermitian for every builtin") {
    for (auto& [name, p] : builtin_presentations()) {
        INFO(name);
        for (HalfInt w : weights_up_to(HalfInt(3))) {
            GramMatrix g = gram(p, w);
            for (int r = 0; r < g.dim(); ++r)
                for (int c = 0; c < g.dim(); ++c)
                    CHECK(g.entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] ==
                          g.entries[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)]
                              .conj());
        }
    }
}

TEST_CASE("signature: identity, hyperbolic, kernel and permutation invariance") {
    AlgebraPresentation f = build_free_fermion(fermion_odd_space());
    GramMatrix id3 = gram(f, HalfInt(3));
    SignatureReport sid = signature(id3, Rat(0));
    CHECK(sid.n_plus == id3.dim());
    CHECK(sid.n_zero == 0);
    CHECK(sid.n_minus == 0);

    // symplectic even fermions: +1/-1 from the imaginary off-diagonal pair
    AlgebraPresentation s = build_free_fermion(fermion_symplectic_space());
    SignatureReport ss = signature(gram(s, HalfInt::half()), Rat(0));
    CHECK(ss.n_plus == 1);
    CHECK(ss.n_minus == 1);
    CHECK(ss.n_zero == 0);

    AlgebraPresentation aff = build_affine(sl2_compact());
    GramMatrix g2 = gram(aff, HalfInt(2));
    SignatureReport at1 = signature(g2, Rat(1));
    CHECK(at1.n_zero >= 1);
    CHECK(at1.n_minus == 0);
    // e(-1)^2 |0> lies in the radical at k = 1
    Monomial ee{{Mode{HalfInt(1), 0}, Mode{HalfInt(1), 0}}};
    State ee_state = monomial_state(ee);
    AlgebraPresentation affp = aff;
    for (auto& b : g2.basis) {
        Scalar pairing = inner_product(affp, monomial_state(b), ee_state);
        CHECK(specialize(pairing, Rat(1)).is_zero());
    }

    SignatureReport athalf = signature(g2, make_rat(1, 2));
    CHECK(athalf.n_minus >= 1);

    // signature is invariant under a basis permutation
    GramMatrix shuffled = g2;
    std::vector<int> perm(static_cast<std::size_t>(g2.dim()));
    for (int i = 0; i < g2.dim(); ++i) perm[static_cast<std::size_t>(i)] = g2.dim() - 1 - i;
    for (int r = 0; r < g2.dim(); ++r) {
        shuffled.basis[static_cast<std::size_t>(r)] =
            g2.basis[static_cast<std::size_t>(perm[static_cast<std::size_t>(r)])];
        for (int c = 0; c < g2.dim(); ++c)
            shuffled.entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                g2.entries[static_cast<std::size_t>(perm[static_cast<std::size_t>(r)])]
                          [static_cast<std::size_t>(perm[static_cast<std::size_t>(c)])];
    }
    SignatureReport sig_a = signature(g2, Rat(2));
    SignatureReport sig_b = signature(shuffled, Rat(2));
    CHECK(sig_a.n_plus == sig_b.n_plus);
    CHECK(sig_a.n_minus == sig_b.n_minus);
    CHECK(sig_a.n_zero == sig_b.n_zero);

    // kernel vectors really annihilate the whole weight space
    for (const State& v : at1.kernel_basis) {
        for (auto& b : g2.basis) {
            Scalar pairing = inner_product(affp, monomial_state(b), v);
            CHECK(specialize(pairing, Rat(1)).is_zero());
        }
    }

    // pole reporting
    AlgebraPresentation w = build_minimal_w(minimal_w_sl3_datum());
    GramMatrix gw = gram(w, HalfInt(2));
    CHECK_THROWS_AS(signature(gw, Rat(-3)), PoleError);
}

TEST_CASE("unitarity verdicts reproduce the example families") {
    AlgebraPresentation f = build_free_fermion(fermion_odd_space());
    UnitarityReport uf = unitarity_report(f, HalfInt(3), Rat(0));
    CHECK(uf.verdict == UnitarityReport::Verdict::PositiveDefinite);

    AlgebraPresentation s = build_free_fermion(fermion_symplectic_space());
    UnitarityReport us = unitarity_report(s, HalfInt(1), Rat(0));
    CHECK(us.verdict == UnitarityReport::Verdict::Indefinite);
    CHECK(us.first_failure == HalfInt::half());

    AlgebraPresentation b = build_free_boson(boson_even_space());
    UnitarityReport ub = unitarity_report(b, HalfInt(3), Rat(0));
    CHECK(ub.verdict == UnitarityReport::Verdict::PositiveDefinite);

    AlgebraPresentation odd_b = build_free_boson(boson_odd_space());
    UnitarityReport uob = unitarity_report(odd_b, HalfInt(1), Rat(0));
    CHECK(uob.verdict != UnitarityReport::Verdict::PositiveDefinite);

    AlgebraPresentation aff = build_affine(sl2_compact());
    UnitarityReport u1 = unitarity_report(aff, HalfInt(2), Rat(1));
    CHECK(u1.verdict == UnitarityReport::Verdict::SemidefiniteWithKernel);
    CHECK(u1.first_failure == HalfInt(2));
    UnitarityReport uh = unitarity_report(aff, HalfInt(2), make_rat(1, 2));
    CHECK(uh.verdict == UnitarityReport::Verdict::Indefinite);
    CHECK(uh.first_failure == HalfInt(2));
    // positive integral levels stay positive definite at desk scale
    for (Rat k0 : {Rat(2), Rat(3)}) {
        UnitarityReport up = unitarity_report(aff, HalfInt(2), k0);
        INFO("k=", rat_str(k0));
        CHECK(up.verdict == UnitarityReport::Verdict::PositiveDefinite);
    }
}

TEST_CASE("kernel flow is closed on the builtins") {
    AlgebraPresentation aff = build_affine(sl2_compact());
    KernelFlowReport kf = kernel_flow(aff, HalfInt(3), Rat(1));
    CHECK(kf.closed);
    CHECK(kf.kernels.count(HalfInt(2)) == 1);

    AlgebraPresentation f = build_free_fermion(fermion_odd_space());
    KernelFlowReport kff = kernel_flow(f, HalfInt(3), Rat(0));
    CHECK(kff.closed);
    CHECK(kff.kernels.empty());

    // at the roots of p(k) the weight-3/2 fields generate an ideal: both
    // G-states enter the kernel and stay closed under the current action
    AlgebraPresentation w = build_minimal_w(minimal_w_sl3_datum());
    for (Rat k0 : {Rat(-1), make_rat(-3, 2)}) {
        KernelFlowReport kw = kernel_flow(w, HalfInt(2), k0);
        INFO("k0=", rat_str(k0));
        CHECK(kw.closed);
        REQUIRE(kw.kernels.count(HalfInt::from_twice(3)) == 1);
        CHECK(kw.kernels.at(HalfInt::from_twice(3)).size() == 2);
    }
}

TEST_CASE("cross-weight orthogonality") {
    for (auto& [name, p] : builtin_presentations()) {
        INFO(name);
        for (HalfInt wu : weights_up_to(HalfInt(2)))
            for (HalfInt wv : weights_up_to(HalfInt(2))) {
                if (wu == wv) continue;
                for (auto& mu : basis(p, wu))
                    for (auto& mv : basis(p, wv))
                        CHECK(inner_product(p, monomial_state(mu), monomial_state(mv))
                                  .is_zero());
            }
    }
}

TEST_CASE("collapsing candidates") {
    // affine sl2: det factors as 2048 k^9 (k-1)^5 (k+2) at weight 2, so the
    // candidates within w <= 2 are {-2, 0, 1}; k = 0 already shows at w = 1
    AlgebraPresentation aff = build_affine(sl2_compact());
    CollapsingReport ra = collapsing_candidates(aff, HalfInt(2));
    REQUIRE(ra.candidates.size() == 3);
    CHECK(ra.candidates[0].level == Rat(-2));
    CHECK(ra.candidates[1].level == Rat(0));
    CHECK(ra.candidates[2].level == Rat(1));
    CHECK(ra.candidates[1].degenerate_weights ==
          std::vector<HalfInt>{HalfInt(1), HalfInt(2)});
    CHECK(ra.candidates[2].degenerate_weights == std::vector<HalfInt>{HalfInt(2)});
    CHECK(ra.candidates[2].kernel_dims.at(HalfInt(2)) >= 1);
    CHECK(ra.excluded_poles.empty()); // current Gram entries are polynomial in k

    // virasoro with constant central charge: nothing to find
    AlgebraPresentation vir = build_virasoro(Scalar(make_rat(1, 2)));
    CHECK(collapsing_candidates(vir, HalfInt(2)).candidates.empty());

    // minimal W: the roots of p(k) = (k+1)(k+3/2) show up at weight 3/2
    AlgebraPresentation w = build_minimal_w(minimal_w_sl3_datum());
    CollapsingReport rw = collapsing_candidates(w, HalfInt::from_twice(3));
    std::vector<Rat> at32;
    for (auto& cand : rw.candidates)
        if (std::find(cand.degenerate_weights.begin(), cand.degenerate_weights.end(),
                      HalfInt::from_twice(3)) != cand.degenerate_weights.end())
            at32.push_back(cand.level);
    CHECK(at32 == std::vector<Rat>{make_rat(-3, 2), Rat(-1)});
    for (auto& cand : rw.candidates)
        if (cand.level == Rat(-1)) CHECK(cand.kernel_dims.at(HalfInt::from_twice(3)) == 2);

    // with weight 2 included, the Virasoro part brings 1/(k+3) entries and
    // the critical level is excluded as a pole
    CollapsingReport rw2 = collapsing_candidates(w, HalfInt(2));
    CHECK(std::find(rw2.excluded_poles.begin(), rw2.excluded_poles.end(), Rat(-3)) !=
          rw2.excluded_poles.end());
    for (auto& cand : rw2.candidates) CHECK(cand.level != Rat(-3));
}

TEST_CASE("invariance law and Hermitian symmetry") {
    std::mt19937_64 rng(41);
    std::vector<Rat> levels{Rat(1), make_rat(1, 2), Rat(-3)};
    for (auto& [name, p] : builtin_presentations()) {
        INFO(name);
        for (HalfInt wu : weights_up_to(HalfInt(2))) {
            auto bu = basis(p, wu);
            if (bu.empty()) continue;
            for (int trial = 0; trial < 3; ++trial) {
                State u = monomial_state(bu[rng() % bu.size()]);
                int g = static_cast<int>(rng() % static_cast<unsigned long>(p.num_generators()));
                HalfInt d = p.generators[static_cast<std::size_t>(g)].delta;
                HalfInt n = -d + HalfInt(static_cast<int>(rng() % 3));
                HalfInt wv = wu - n;
                if (wv < HalfInt(0)) continue;
                auto bv = basis(p, wv);
                if (bv.empty()) continue;
                State v = monomial_state(bv[rng() % bv.size()]);
                InvarianceCheck c = check_invariance(p, g, n, u, v);
                INFO("gen=", g, " n=", n.str(), " u=", u.str(p), " v=", v.str(p));
                CHECK(c.pass);
                // Hermitian symmetry at the sampled levels
                Scalar uv = inner_product(p, u, v), vu = inner_product(p, v, u);
                for (const Rat& k0 : levels) {
                    try {
                        CHECK(specialize(uv, k0) == specialize(vu, k0).conj());
                    } catch (const PoleError&) {
                    }
                }
            }
        }
    }
}

TEST_CASE("weight mismatch pairs vanish on both sides of the invariance law") {
    AlgebraPresentation f = build_free_fermion(fermion_odd_space());
    State u = gen_state(f, 0);
    State v = State::vacuum();
    InvarianceCheck c = check_invariance(f, 0, HalfInt::from_twice(3), u, v);
    CHECK(c.pass);
    CHECK(c.lhs.is_zero());
    CHECK(c.rhs.is_zero());
}

TEST_CASE("reality check classifies by the parity sign") {
    // odd weight-1/2 generator fixed by phi: real branch, value (a|a) = 1
    LieData odd_fixed;
    odd_fixed.names = {"a"};
    odd_fixed.parities = {1};
    odd_fixed.form = {{GaussRat(1)}};
    odd_fixed.phi = {{GaussRat(1)}};
    AlgebraPresentation f = build_free_fermion(odd_fixed);
    RealityReport rf = reality_check(f, 0);
    CHECK(rf.kind == RealityReport::Kind::Real);
    CHECK(rf.parity_sign_positive);
    CHECK(rf.consistent);
    CHECK(rf.value == GaussRat(1));

    // even weight-1 generator fixed by phi: real branch, value (a|a) = 1
    LieData even_fixed;
    even_fixed.names = {"h"};
    even_fixed.parities = {0};
    even_fixed.form = {{GaussRat(1)}};
    even_fixed.phi = {{GaussRat(1)}};
    AlgebraPresentation b = build_free_boson(even_fixed);
    RealityReport rb = reality_check(b, 0);
    CHECK(rb.kind == RealityReport::Kind::Real);
    CHECK(rb.consistent);

    // minimal W current J: real branch, value 6(k + 3/2)
    AlgebraPresentation w = build_minimal_w(minimal_w_sl3_datum());
    RealityReport rj = reality_check(w, 0, Rat(1));
    CHECK(rj.kind == RealityReport::Kind::Real);
    CHECK(rj.value == GaussRat(Rat(15)));
    // minimal W supercurrent: imaginary classification branch (value is 0 here)
    RealityReport rg = reality_check(w, 1, Rat(1));
    CHECK(!rg.parity_sign_positive);
    CHECK(rg.kind == RealityReport::Kind::Zero);
    CHECK(rg.consistent);
}

TEST_CASE("superconformal fixtures: frozen values") {
    // osp(1|2): one odd weight-3/2 field over the Virasoro
    MinimalWDatum ns_datum = minimal_w_osp12_datum();
    AlgebraPresentation ns = build_minimal_w(ns_datum);
    Scalar pk_ns(ns_datum.p_k, Poly(GaussRat(1)));
    // <G_{3/2} G_{-3/2}> = 4 p(k), <G_{5/2} G_{-5/2}> = C(3,2) 4 p(k) = 12 p(k)
    State g32 = gen_state(ns, 0);
    CHECK(expectation(apply_mode(ns, 0, HalfInt::from_twice(3), g32)) == Scalar(4) * pk_ns);
    State g52 = apply_mode(ns, 0, HalfInt::from_twice(-5), State::vacuum());
    CHECK(expectation(apply_mode(ns, 0, HalfInt::from_twice(5), g52)) == Scalar(12) * pk_ns);
    // parity-compatible grading: the norm is real (phase (-i)^4 = 1)
    GramMatrix gw = gram(ns, HalfInt::from_twice(3));
    REQUIRE(gw.dim() == 1);
    CHECK(gw.entries[0][0] == Scalar(4) * pk_ns);
    // central charge: k/(k+3/2) - 6k - 5/2
    CHECK(central_charge(ns) ==
          Scalar::k() / (Scalar::k() + Scalar(make_rat(3, 2))) - Scalar(6) * Scalar::k() -
              Scalar(make_rat(5, 2)));
    // Lemma-style reality: even parity sign, real nonzero value at k=1
    RealityReport rr = reality_check(ns, 0, Rat(1));
    CHECK(rr.parity_sign_positive);
    CHECK(rr.kind == RealityReport::Kind::Real);
    CHECK(rr.consistent);

    // sl(2|1): one even current, two odd weight-3/2 fields
    MinimalWDatum n2_datum = minimal_w_sl21_datum();
    AlgebraPresentation n2 = build_minimal_w(n2_datum);
    Scalar pk_n2(n2_datum.p_k, Poly(GaussRat(1)));
    // central charge is polynomial: sdim = 0 kills the Sugawara pole
    CHECK(central_charge(n2) == Scalar(-6) * Scalar::k() - Scalar(3));
    // (J, J) = -(k + 1/2)(Z|Z) = 2k + 1
    CHECK(inner_product(n2, gen_state(n2, 0), gen_state(n2, 0)) ==
          Scalar(2) * Scalar::k() + Scalar(1));
    // weight 3/2: [[0, 2p(k)], [2p(k), 0]] -- real, indefinite off the roots
    GramMatrix g2w = gram(n2, HalfInt::from_twice(3));
    REQUIRE(g2w.dim() == 2);
    CHECK(g2w.entries[0][0].is_zero());
    CHECK(g2w.entries[0][1] == Scalar(2) * pk_n2);
    CHECK(g2w.entries[1][0] == Scalar(2) * pk_n2);
    SignatureReport sig = signature(g2w, Rat(1));
    CHECK(sig.n_plus == 1);
    CHECK(sig.n_minus == 1);
    // collapsing candidates at w = 3/2 are the roots of p(k) = (k+1)(k+1/2)
    CollapsingReport rep = collapsing_candidates(n2, HalfInt::from_twice(3));
    std::vector<Rat> levels;
    for (auto& cand : rep.candidates) levels.push_back(cand.level);
    CHECK(std::find(levels.begin(), levels.end(), Rat(-1)) != levels.end());
    CHECK(std::find(levels.begin(), levels.end(), make_rat(-1, 2)) != levels.end());
}

TEST_CASE("tensor Gram factorizes as a permuted direct sum of Kronecker products") {
    AlgebraPresentation f = build_free_fermion(fermion_odd_space());
    AlgebraPresentation b = build_free_boson(boson_even_space());
    AlgebraPresentation t = tensor(f, b);
    int nf = f.num_generators();
    for (HalfInt w : weights_up_to(HalfInt(2))) {
        GramMatrix gt = gram(t, w);
        // split a tensor monomial into its factor monomials
        auto split = [&](const Monomial& m) {
            Monomial mf, mb;
            for (auto& mode : m.modes) {
                if (mode.gen < nf)
                    mf.modes.push_back(mode);
                else
                    mb.modes.push_back(Mode{mode.j, mode.gen - nf});
            }
            return std::make_pair(mf, mb);
        };
        for (int r = 0; r < gt.dim(); ++r)
            for (int c = 0; c < gt.dim(); ++c) {
                auto [rf, rb] = split(gt.basis[static_cast<std::size_t>(r)]);
                auto [cf, cb] = split(gt.basis[static_cast<std::size_t>(c)]);
                Scalar expect;
                if (rf.weight() == cf.weight() && rb.weight() == cb.weight())
                    expect = inner_product(f, monomial_state(rf), monomial_state(cf)) *
                             inner_product(b, monomial_state(rb), monomial_state(cb));
                CHECK(gt.entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] ==
                      expect);
            }
    }
    // central charges add
    CHECK(central_charge(t) == central_charge(f) + central_charge(b));
}

TEST_CASE("odd x odd tensor Gram factorizes with the unshuffle sign") {
    // interleaved PBW monomials map to pairs up to the Koszul sign of moving
    // the second factor's odd modes across the first factor's odd modes
    AlgebraPresentation f = build_free_fermion(fermion_odd_space());
    AlgebraPresentation t = tensor(f, f);
    for (HalfInt w : weights_up_to(HalfInt(2))) {
        GramMatrix gt = gram(t, w);
        auto split = [&](const Monomial& m) {
            Monomial m1, m2;
            int sign = 1;
            int seen_second = 0;
            for (auto& mode : m.modes) {
                if (mode.gen < 1) {
                    m1.modes.push_back(mode);
                    // an odd first-factor mode crosses every second-factor
                    // mode already to its left
                    if (seen_second % 2 == 1) sign = -sign;
                } else {
                    m2.modes.push_back(Mode{mode.j, mode.gen - 1});
                    ++seen_second;
                }
            }
            return std::make_tuple(m1, m2, sign);
        };
        for (int r = 0; r < gt.dim(); ++r)
            for (int c = 0; c < gt.dim(); ++c) {
                auto [r1, r2, sr] = split(gt.basis[static_cast<std::size_t>(r)]);
                auto [c1, c2, sc] = split(gt.basis[static_cast<std::size_t>(c)]);
                Scalar expect;
                if (r1.weight() == c1.weight() && r2.weight() == c2.weight())
                    expect = Scalar(sr * sc) *
                             inner_product(f, monomial_state(r1), monomial_state(c1)) *
                             inner_product(f, monomial_state(r2), monomial_state(c2));
                INFO("w=", w.str(), " r=", r, " c=", c);
                CHECK(gt.entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] ==
                      expect);
            }
    }
}

TEST_CASE("non-quasiprimary presentations are rejected by the form") {
    AlgebraPresentation bad = build_minimal_w(minimal_w_sl3_datum());
    bad.brackets[{3, 0, 2}] = NOPoly(NOTerm{Scalar(1), {}});
    CHECK_THROWS_AS(inner_product(bad, State::vacuum(), State::vacuum()),
                    UnsupportedPresentationError);
}
