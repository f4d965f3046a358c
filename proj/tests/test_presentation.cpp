#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vaform/fixtures.hpp"

using namespace vaform;

namespace {
NOPoly vacuum_multiple(const Scalar& c) {
    NOPoly p;
    p.add(NOTerm{c, {}});
    return p;
}
} // namespace

TEST_CASE("every builtin validates cleanly") {
    for (auto& [name, p] : builtin_presentations()) {
        INFO(name);
        CHECK(validate(p).empty());
    }
}

TEST_CASE("free fermion bracket table") {
    AlgebraPresentation p = build_free_fermion(fermion_odd_space());
    REQUIRE(p.num_generators() == 1);
    CHECK(p.generators[0].delta == HalfInt::half());
    REQUIRE(p.bracket(0, 0, 0) != nullptr);
    CHECK(*p.bracket(0, 0, 0) == vacuum_multiple(Scalar(1)));
    CHECK(p.bracket(0, 0, 1) == nullptr);

    AlgebraPresentation sp = build_free_fermion(fermion_symplectic_space());
    REQUIRE(sp.bracket(0, 1, 0) != nullptr);
    CHECK(*sp.bracket(0, 1, 0) == vacuum_multiple(Scalar(1)));
    CHECK(*sp.bracket(1, 0, 0) == vacuum_multiple(Scalar(-1)));

    LieData degenerate;
    degenerate.names = {"a"};
    degenerate.parities = {1};
    degenerate.form = {{GaussRat()}};
    degenerate.phi = {{GaussRat(1)}};
    CHECK_THROWS_AS(build_free_fermion(degenerate), ValidationError);
    CHECK_THROWS_AS(build_free_fermion(LieData{}), ValidationError);
}

TEST_CASE("free boson bracket table") {
    AlgebraPresentation p = build_free_boson(boson_even_space());
    REQUIRE(p.bracket(0, 0, 1) != nullptr);
    CHECK(*p.bracket(0, 0, 1) == vacuum_multiple(Scalar(1)));
    CHECK(p.bracket(0, 0, 0) == nullptr);

    // purely odd pair is a valid presentation
    CHECK(validate(build_free_boson(boson_odd_space())).empty());
}

TEST_CASE("affine sl2 and the Casimir cross-check") {
    AlgebraPresentation p = build_affine(sl2_compact());
    // entry(e, f, 1) = k * (e|f) = k
    REQUIRE(p.bracket(0, 2, 1) != nullptr);
    CHECK(*p.bracket(0, 2, 1) == vacuum_multiple(Scalar::k()));
    // entry(e, f, 0) = h
    NOPoly h_poly;
    h_poly.add(NOTerm{Scalar(1), {{0, 1}}});
    CHECK(*p.bracket(0, 2, 0) == h_poly);

    CHECK(sl2_compact().casimir_half_eigenvalue() == Rat(2));
    CHECK_THROWS_AS(build_affine(sl2_compact(), Rat(3)), ValidationError);
    CHECK_NOTHROW(build_affine(sl2_compact(), Rat(2)));
}

TEST_CASE("abelian affine at k=1 reproduces the free boson tables") {
    AlgebraPresentation aff = specialize_presentation(build_affine(abelian_1d()), Rat(1));
    AlgebraPresentation bos = build_free_boson(boson_even_space());
    CHECK(aff.brackets == bos.brackets);
    CHECK(aff.conformal_poly() == bos.conformal_poly());
}

TEST_CASE("virasoro table") {
    AlgebraPresentation p = build_virasoro(Scalar(make_rat(1, 2)));
    CHECK(*p.bracket(0, 0, 3) == vacuum_multiple(Scalar(make_rat(1, 4))));
    NOPoly tl;
    tl.add(NOTerm{Scalar(1), {{1, 0}}});
    CHECK(*p.bracket(0, 0, 0) == tl);
    NOPoly twol;
    twol.add(NOTerm{Scalar(2), {{0, 0}}});
    CHECK(*p.bracket(0, 0, 1) == twol);
    CHECK(p.bracket(0, 0, 2) == nullptr);

    // symbolic central charge and c = 0
    CHECK(validate(build_virasoro(Scalar::k())).empty());
    CHECK(build_virasoro(Scalar(0)).bracket(0, 0, 3) == nullptr);
}

TEST_CASE("minimal W sl3 table spot checks") {
    AlgebraPresentation p = build_minimal_w(minimal_w_sl3_datum());
    REQUIRE(p.num_generators() == 4); // J, Gu, Gv, L
    // G_(2) G = 4 p(k) <u,v> vacuum
    Scalar pk(minimal_w_sl3_datum().p_k, Poly(GaussRat(1)));
    REQUIRE(p.bracket(1, 2, 2) != nullptr);
    CHECK(*p.bracket(1, 2, 2) == vacuum_multiple(Scalar(-4) * pk));
    CHECK(*p.bracket(2, 1, 2) == vacuum_multiple(Scalar(4) * pk));
    // J_(0) G^u = G^{[a,u]} = -3 G^u
    NOPoly m3g;
    m3g.add(NOTerm{Scalar(-3), {{0, 1}}});
    CHECK(*p.bracket(0, 1, 0) == m3g);
    // L-primary rows: entry(L, G, 1) = 3/2 G
    NOPoly g32;
    g32.add(NOTerm{Scalar(make_rat(3, 2)), {{0, 1}}});
    CHECK(*p.bracket(3, 1, 1) == g32);
    // level term of [J J]: (k + 3/2) * 6
    CHECK(*p.bracket(0, 0, 1) ==
          vacuum_multiple((Scalar::k() + Scalar(make_rat(3, 2))) * Scalar(6)));
    // declared central charge: 8k/(k+3) - 6k - 1
    Scalar c = Scalar(8) * Scalar::k() / (Scalar::k() + Scalar(3)) - Scalar(6) * Scalar::k() -
               Scalar(1);
    CHECK(*p.declared_central_charge == c);
}

TEST_CASE("tensor products") {
    AlgebraPresentation f = build_free_fermion(fermion_odd_space());
    AlgebraPresentation b = build_free_boson(boson_even_space());
    AlgebraPresentation t = tensor(f, b);
    CHECK(t.num_generators() == 2);
    CHECK(validate(t).empty());
    // no cross brackets
    CHECK(t.bracket(0, 1, 0) == nullptr);
    CHECK(t.bracket(1, 0, 0) == nullptr);
    // name collision resolved deterministically
    AlgebraPresentation ff = tensor(f, f);
    CHECK(ff.generators[0].name != ff.generators[1].name);
    // associativity up to renaming
    AlgebraPresentation v = build_virasoro(Scalar(1));
    CHECK(same_structure(tensor(tensor(f, b), v), tensor(f, tensor(b, v))));
    // the zero-generator presentation is a unit up to renaming
    AlgebraPresentation trivial;
    trivial.conformal = NOPoly();
    trivial.declared_central_charge = Scalar(0);
    CHECK(validate(trivial).empty());
    CHECK(same_structure(tensor(f, trivial), f));
    CHECK(same_structure(tensor(trivial, f), f));
    // central charges add (declared level; engine-level is in the hermitian suite)
    CHECK(*t.declared_central_charge ==
          *f.declared_central_charge + *b.declared_central_charge);
}

TEST_CASE("validate reports broken tables") {
    AlgebraPresentation p = build_free_fermion(fermion_odd_space());
    // weight-inhomogeneous entry
    AlgebraPresentation broken = p;
    broken.brackets[{0, 0, 0}].add(NOTerm{Scalar(1), {{0, 0}}});
    auto report = validate(broken);
    CHECK(!report.empty());

    // phi with phi^2 != I
    AlgebraPresentation broken_phi = p;
    broken_phi.generators[0].phi_image = {GaussRat(make_rat(2))};
    CHECK(!validate(broken_phi).empty());

    // skew-symmetry cross-check catches a one-sided edit
    AlgebraPresentation skew = build_affine(sl2_compact());
    skew.brackets[{0, 2, 0}] = NOPoly(NOTerm{Scalar(2), {{0, 1}}});
    CHECK(!validate(skew).empty());
}

TEST_CASE("minimal W datum validation catches inconsistencies") {
    MinimalWDatum d = minimal_w_sl3_datum();
    CHECK(d.validate().empty());

    MinimalWDatum bad_dual = d;
    bad_dual.dual_basis = {{GaussRat(1)}};
    CHECK(!bad_dual.validate().empty());

    MinimalWDatum bad_pairing = d;
    bad_pairing.pairing[0][1] = GaussRat(make_rat(2));
    CHECK(!bad_pairing.validate().empty());

    MinimalWDatum bad_pk = d;
    bad_pk.p_k = Poly(GaussRat(1));
    CHECK(!bad_pk.validate().empty());
}
