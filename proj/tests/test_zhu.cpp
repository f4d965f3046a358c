#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vaform/fixtures.hpp"
#include "vaform/zhu.hpp"

using namespace vaform;

namespace {

ZhuGen half_gen(int i) { return ZhuGen{ZhuGen::Kind::Half, i}; }
ZhuGen nat_gen(int i) { return ZhuGen{ZhuGen::Kind::Nat, i}; }
ZhuGen lp_gen() { return ZhuGen{ZhuGen::Kind::Lp, 0}; }

ZhuElement bracket(const ZhuPresentation& zp, const ZhuElement& x, const ZhuElement& y) {
    int px = 0, py = 0;
    for (auto& [w, c] : x.terms()) {
        (void)c;
        for (auto& g : w) px ^= zp.parity(g);
        break;
    }
    for (auto& [w, c] : y.terms()) {
        (void)c;
        for (auto& g : w) py ^= zp.parity(g);
        break;
    }
    Scalar s((px && py) ? -1 : 1);
    return zhu_multiply(zp, x, y) - s * zhu_multiply(zp, y, x);
}

// all canonical words of degree <= d for the sl3 fixture (all generators even)
std::vector<ZhuElement> words_up_to(const ZhuPresentation& zp, int d) {
    const int nh = static_cast<int>(zp.datum().ghalf_names.size());
    const int nn = zp.datum().gnat.dim();
    std::vector<ZhuGen> gens;
    for (int i = 0; i < nh; ++i) gens.push_back(half_gen(i));
    for (int i = 0; i < nn; ++i) gens.push_back(nat_gen(i));
    gens.push_back(lp_gen());
    std::vector<ZhuWord> words{{}};
    std::vector<ZhuElement> out;
    for (int len = 1; len <= d; ++len) {
        std::vector<ZhuWord> next;
        for (auto& w : words) {
            for (auto& g : gens) {
                if (!w.empty() && g < w.back()) continue;
                if (!w.empty() && g == w.back() && zp.parity(g)) continue;
                ZhuWord nw = w;
                nw.push_back(g);
                next.push_back(nw);
            }
        }
        for (auto& w : next) {
            ZhuElement e;
            e.add(w, Scalar(1));
            out.push_back(e);
        }
        words = std::move(next);
    }
    ZhuElement unit = ZhuElement::one();
    out.push_back(unit);
    return out;
}

} // namespace

TEST_CASE("straightening reproduces the commutation rules") {
    ZhuPresentation zp(minimal_w_sl3_datum());
    // a*v - v*a = [a, v] = -3v  (u-letter sorts before a)
    ZhuElement a = ZhuElement::generator(nat_gen(0));
    ZhuElement u = ZhuElement::generator(half_gen(0));
    ZhuElement v = ZhuElement::generator(half_gen(1));
    CHECK(bracket(zp, a, u) == Scalar(-3) * u);
    CHECK(bracket(zp, a, v) == Scalar(3) * v);

    // frozen from the relation: [u, v] = -(2/3) a*a + L'
    ZhuElement expect;
    expect.add(ZhuWord{nat_gen(0), nat_gen(0)}, Scalar(make_rat(-2, 3)));
    expect.add(ZhuWord{lp_gen()}, Scalar(1));
    CHECK(bracket(zp, u, v) == expect);
    CHECK(bracket(zp, v, u) == Scalar(-1) * expect);
}

TEST_CASE("L' is central on low degrees") {
    ZhuPresentation zp(minimal_w_sl3_datum());
    ZhuElement lp = ZhuElement::generator(lp_gen());
    for (auto& x : words_up_to(zp, 3))
        CHECK(zhu_multiply(zp, lp, x) == zhu_multiply(zp, x, lp));
}

TEST_CASE("PBW words of low degree survive straightening and match the count") {
    ZhuPresentation zp(minimal_w_sl3_datum());
    // 4 even commuting-type generators: C(3+4, 4) monomials of degree <= 3
    CHECK(words_up_to(zp, 3).size() == 35);
    for (auto& x : words_up_to(zp, 3)) {
        // normalizing a canonical word is the identity
        std::vector<std::pair<Scalar, ZhuWord>> raw;
        for (auto& [w, c] : x.terms()) raw.emplace_back(c, w);
        CHECK(zp.normalize(raw) == x);
    }
}

TEST_CASE("multiplication is associative on generator triples") {
    ZhuPresentation zp(minimal_w_sl3_datum());
    std::vector<ZhuElement> gens{ZhuElement::generator(half_gen(0)),
                                 ZhuElement::generator(half_gen(1)),
                                 ZhuElement::generator(nat_gen(0)),
                                 ZhuElement::generator(lp_gen())};
    for (auto& x : gens)
        for (auto& y : gens)
            for (auto& z : gens)
                CHECK(zhu_multiply(zp, zhu_multiply(zp, x, y), z) ==
                      zhu_multiply(zp, x, zhu_multiply(zp, y, z)));
}

TEST_CASE("super-Jacobi holds for the derived bracket") {
    ZhuPresentation zp(minimal_w_sl3_datum());
    std::vector<ZhuElement> gens{ZhuElement::generator(half_gen(0)),
                                 ZhuElement::generator(half_gen(1)),
                                 ZhuElement::generator(nat_gen(0)),
                                 ZhuElement::generator(lp_gen())};
    // all generators here are even, so p(x,y) = 1 throughout
    for (auto& x : gens)
        for (auto& y : gens)
            for (auto& z : gens) {
                ZhuElement lhs = bracket(zp, x, bracket(zp, y, z));
                ZhuElement rhs =
                    bracket(zp, bracket(zp, x, y), z) + bracket(zp, y, bracket(zp, x, z));
                CHECK(lhs == rhs);
            }
}

TEST_CASE("omega: generator rule, involution, anti-homomorphism") {
    ZhuPresentation zp(minimal_w_sl3_datum());
    // even a with phi(a) = a: omega(a) = -a
    ZhuElement a = ZhuElement::generator(nat_gen(0));
    CHECK(zhu_omega(zp, a) == Scalar(-1) * a);
    // even v in ghalf: omega(v) = i phi(v)
    ZhuElement u = ZhuElement::generator(half_gen(0));
    CHECK(zhu_omega(zp, u) == Scalar::i() * u);
    // L' fixed
    CHECK(zhu_omega(zp, ZhuElement::generator(lp_gen())) == ZhuElement::generator(lp_gen()));
    // conjugate linearity
    CHECK(zhu_omega(zp, Scalar::i() * a) == Scalar::i() * a);

    // omega^2 = id on all degree <= 3 words
    for (auto& x : words_up_to(zp, 3)) CHECK(zhu_omega(zp, zhu_omega(zp, x)) == x);

    // omega(x*y) = p(x,y) omega(y)*omega(x) on degree <= 2 pairs
    for (auto& x : words_up_to(zp, 2))
        for (auto& y : words_up_to(zp, 2)) {
            ZhuElement lhs = zhu_omega(zp, zhu_multiply(zp, x, y));
            ZhuElement rhs = zhu_multiply(zp, zhu_omega(zp, y), zhu_omega(zp, x));
            CHECK(lhs == rhs); // plain anti-homomorphism, no Koszul sign
        }
}

TEST_CASE("k-independence holds with L' and fails with L") {
    CHECK(k_independence_check(ZhuPresentation(minimal_w_sl3_datum(), true)));
    CHECK(!k_independence_check(ZhuPresentation(minimal_w_sl3_datum(), false)));
    CHECK(k_independence_check(ZhuPresentation(minimal_w_osp12_datum(), true)));
    CHECK(!k_independence_check(ZhuPresentation(minimal_w_sl21_datum(), false)));
}

TEST_CASE("odd generators: squares and the plain anti-involution") {
    // one odd u with <u,u> = 1 and no currents: u*u = -L'/2
    ZhuPresentation ns(minimal_w_osp12_datum());
    ZhuElement u = ZhuElement::generator(half_gen(0));
    ZhuElement lp = ZhuElement::generator(lp_gen());
    ZhuElement uu = zhu_multiply(ns, u, u);
    CHECK(uu == Scalar(make_rat(-1, 2)) * lp);
    // omega fixes odd weight-3/2 generators and must fix the central square;
    // this is exactly what rules out a Koszul sign in the reversal
    CHECK(zhu_omega(ns, u) == u);
    CHECK(zhu_omega(ns, uu) == uu);
    CHECK(zhu_omega(ns, zhu_multiply(ns, u, lp)) ==
          zhu_multiply(ns, zhu_omega(ns, lp), zhu_omega(ns, u)));

    // two odd fields over one even current: {u,v} = -L'/2 and u^2 = v^2 = 0
    ZhuPresentation n2(minimal_w_sl21_datum());
    ZhuElement v = ZhuElement::generator(half_gen(1));
    ZhuElement z = ZhuElement::generator(nat_gen(0));
    CHECK(zhu_multiply(n2, u, u).is_zero());
    CHECK(zhu_multiply(n2, v, v).is_zero());
    CHECK(zhu_multiply(n2, u, v) + zhu_multiply(n2, v, u) ==
          Scalar(make_rat(-1, 2)) * lp);
    CHECK(bracket(n2, z, u) == Scalar(-1) * u);
    // anti-involution on a genuinely odd pair
    CHECK(zhu_omega(n2, zhu_multiply(n2, u, v)) ==
          zhu_multiply(n2, zhu_omega(n2, v), zhu_omega(n2, u)));
    CHECK(zhu_omega(n2, z) == Scalar(-1) * z);
    // omega^2 = id on odd words
    ZhuElement uv = zhu_multiply(n2, u, v);
    CHECK(zhu_omega(n2, zhu_omega(n2, uv)) == uv);

    // super-Jacobi with genuine odd signs
    std::vector<ZhuElement> gens{u, v, z, lp};
    auto parity_of = [&](const ZhuElement& e) {
        int p = 0;
        if (e.is_zero()) return 0;
        for (auto& g : e.terms().begin()->first) p ^= n2.parity(g);
        return p;
    };
    auto brk = [&](const ZhuElement& x, const ZhuElement& y) {
        Scalar s((parity_of(x) && parity_of(y)) ? -1 : 1);
        return zhu_multiply(n2, x, y) - s * zhu_multiply(n2, y, x);
    };
    for (auto& x : gens)
        for (auto& y : gens)
            for (auto& zz : gens) {
                Scalar s((parity_of(x) && parity_of(y)) ? -1 : 1);
                ZhuElement lhs = brk(x, brk(y, zz));
                ZhuElement rhs = brk(brk(x, y), zz) + s * brk(y, brk(x, zz));
                CHECK(lhs == rhs);
            }
}

TEST_CASE("engine-level star product") {
    AlgebraPresentation aff = build_affine(sl2_compact());
    State e;
    e.add(Monomial{{Mode{HalfInt(1), 0}}}, Scalar(1));
    State b;
    b.add(Monomial{{Mode{HalfInt(1), 1}}}, Scalar(1)); // h(-1)|0>

    // vacuum is the unit
    CHECK(zhu_star(aff, State::vacuum(), b) == b);
    // weight-1 element: a*b = a_(0)b + a_(-1)b
    State direct = apply_mode(aff, 0, HalfInt(0), b) + apply_mode(aff, 0, HalfInt(-1), b);
    CHECK(zhu_star(aff, e, b) == direct);

    // virasoro: L * |0> reduces to L(-2)|0>
    AlgebraPresentation vir = build_virasoro(Scalar(make_rat(1, 2)));
    State lstate;
    lstate.add(Monomial{{Mode{HalfInt(2), 0}}}, Scalar(1));
    State expect;
    expect.add(Monomial{{Mode{HalfInt(2), 0}}}, Scalar(1));
    CHECK(zhu_star(vir, lstate, State::vacuum()) == expect);

    // non-homogeneous left factor is rejected
    State mixed = State::vacuum() + b;
    CHECK_THROWS_AS(zhu_star(aff, mixed, b), DegenerateInputError);
}

TEST_CASE("zhu element serialization") {
    ZhuPresentation zp(minimal_w_sl3_datum());
    ZhuElement expect;
    expect.add(ZhuWord{nat_gen(0), nat_gen(0)}, Scalar(make_rat(-2, 3)));
    expect.add(ZhuWord{lp_gen()}, Scalar(1));
    CHECK(zp.str(expect) == "(-2/3) * a^2 + (1) * L'");
    CHECK(zp.str(ZhuElement()) == "0");
    CHECK(zp.str(ZhuElement::one()) == "(1)");
}
