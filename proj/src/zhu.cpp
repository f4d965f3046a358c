#include "vaform/zhu.hpp"

#include <deque>

namespace vaform {

ZhuPresentation::ZhuPresentation(MinimalWDatum datum, bool use_lprime)
    : datum_(std::move(datum)), use_lprime_(use_lprime) {
    auto report = datum_.validate();
    if (!report.empty()) throw ValidationError("Zhu presentation datum: " + report.front());
    const int nn = datum_.gnat.dim();
    const int nh = static_cast<int>(datum_.ghalf_names.size());

    auto nat = [](int i) { return ZhuGen{ZhuGen::Kind::Nat, i}; };
    auto half = [](int i) { return ZhuGen{ZhuGen::Kind::Half, i}; };

    // [a, b] and [a, v]: length-one words, canonical as stored
    for (int i = 0; i < nn; ++i)
        for (int j = 0; j < nn; ++j) {
            ZhuElement e;
            for (auto& [c, t] : datum_.gnat.bracket(i, j)) e.add(ZhuWord{nat(t)}, Scalar(c));
            rules_[{nat(i), nat(j)}] = e;
        }
    for (int a = 0; a < nn; ++a)
        for (int u = 0; u < nh; ++u) {
            ZhuElement e;
            for (auto& [c, t] : datum_.act(a, u)) e.add(ZhuWord{half(t)}, Scalar(c));
            rules_[{nat(a), half(u)}] = e;
            // [v, a] = -p(v,a)[a, v]
            ZhuElement rev;
            int s = (datum_.gnat.parities[static_cast<std::size_t>(a)] &&
                     datum_.ghalf_parities[static_cast<std::size_t>(u)])
                        ? 1
                        : -1;
            rev.add_scaled(e, Scalar(s));
            rules_[{half(u), nat(a)}] = rev;
        }

    // the quadratic relation for [u, v]
    auto sup = [&](int pa, int pb) { return (pa && pb) ? -1 : 1; };
    auto act_rev = [&](int v, int l) {
        std::vector<GaussRat> out(static_cast<std::size_t>(nh));
        for (auto& [c, target] : datum_.act(l, v))
            out[static_cast<std::size_t>(target)] +=
                c * GaussRat(Rat(-sup(datum_.gnat.parities[static_cast<std::size_t>(l)],
                                      datum_.ghalf_parities[static_cast<std::size_t>(v)])));
        return out;
    };
    for (int u = 0; u < nh; ++u)
        for (int v = 0; v < nh; ++v) {
            GaussRat huv = datum_.pairing[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
            std::vector<std::pair<Scalar, ZhuWord>> words;
            if (!huv.is_zero()) {
                for (int al = 0; al < nn; ++al)
                    for (int l = 0; l < nn; ++l) {
                        GaussRat dl =
                            datum_.dual_basis[static_cast<std::size_t>(al)][static_cast<std::size_t>(l)];
                        if (dl.is_zero()) continue;
                        // <u,v> a^al * a_al
                        words.emplace_back(Scalar(huv * dl), ZhuWord{nat(l), nat(al)});
                        if (!use_lprime_) {
                            // - <u,v> [a^al, a_al]
                            for (auto& [cb, t] : datum_.gnat.bracket(l, al))
                                words.emplace_back(Scalar(-(huv * dl * cb)), ZhuWord{nat(t)});
                        }
                    }
                if (use_lprime_) {
                    // - <u,v> L'
                    words.emplace_back(Scalar(-huv), ZhuWord{ZhuGen{ZhuGen::Kind::Lp, 0}});
                } else {
                    // - <u,v> (2(k+h_dual) L + p(k)/2)
                    Scalar lev = Scalar(-2) * (Scalar::k() + Scalar(datum_.h_dual)) * Scalar(huv);
                    words.emplace_back(lev, ZhuWord{ZhuGen{ZhuGen::Kind::Lp, 0}});
                    Scalar pk(datum_.p_k, Poly(GaussRat(1)));
                    words.emplace_back(Scalar(make_rat(-1, 2)) * pk * Scalar(huv), ZhuWord{});
                }
            }
            for (int al = 0; al < nn; ++al)
                for (int be = 0; be < nn; ++be) {
                    // q = <[a_al, u], [v, a^be]>
                    GaussRat q;
                    for (auto& [c1, w1] : datum_.act(al, u)) {
                        for (int l = 0; l < nn; ++l) {
                            GaussRat dl = datum_.dual_basis[static_cast<std::size_t>(be)]
                                                           [static_cast<std::size_t>(l)];
                            if (dl.is_zero()) continue;
                            auto rv = act_rev(v, l);
                            for (int w2 = 0; w2 < nh; ++w2)
                                q += c1 * dl * rv[static_cast<std::size_t>(w2)] *
                                     datum_.pairing[static_cast<std::size_t>(w1)]
                                                   [static_cast<std::size_t>(w2)];
                        }
                    }
                    if (q.is_zero()) continue;
                    int pal = datum_.gnat.parities[static_cast<std::size_t>(al)];
                    int pbe = datum_.gnat.parities[static_cast<std::size_t>(be)];
                    for (int l = 0; l < nn; ++l) {
                        GaussRat dl =
                            datum_.dual_basis[static_cast<std::size_t>(al)][static_cast<std::size_t>(l)];
                        if (dl.is_zero()) continue;
                        if (use_lprime_) {
                            // a^al * a_be + p(a_al, a_be) a_be * a^al
                            words.emplace_back(Scalar(q * dl), ZhuWord{nat(l), nat(be)});
                            words.emplace_back(Scalar(q * dl * GaussRat(Rat(sup(pal, pbe)))),
                                               ZhuWord{nat(be), nat(l)});
                        } else {
                            // 2 a^al * a_be - [a^al, a_be]
                            words.emplace_back(Scalar(q * dl * GaussRat(Rat(2))),
                                               ZhuWord{nat(l), nat(be)});
                            for (auto& [cb, t] : datum_.gnat.bracket(l, be))
                                words.emplace_back(Scalar(-(q * dl * cb)), ZhuWord{nat(t)});
                        }
                    }
                }
            rules_[{half(u), half(v)}] = normalize(std::move(words));
        }
}

int ZhuPresentation::parity(ZhuGen g) const {
    switch (g.kind) {
        case ZhuGen::Kind::Half:
            return datum_.ghalf_parities[static_cast<std::size_t>(g.index)];
        case ZhuGen::Kind::Nat:
            return datum_.gnat.parities[static_cast<std::size_t>(g.index)];
        default:
            return 0;
    }
}

std::string ZhuPresentation::name(ZhuGen g) const {
    switch (g.kind) {
        case ZhuGen::Kind::Half:
            return datum_.ghalf_names[static_cast<std::size_t>(g.index)];
        case ZhuGen::Kind::Nat:
            return datum_.gnat.names[static_cast<std::size_t>(g.index)];
        default:
            return "L'";
    }
}

const ZhuElement& ZhuPresentation::rule(ZhuGen x, ZhuGen y) const {
    auto it = rules_.find({x, y});
    return it == rules_.end() ? empty_rule_ : it->second;
}

ZhuElement ZhuPresentation::normalize(std::vector<std::pair<Scalar, ZhuWord>> words) const {
    // Rewrites strictly decrease (number of Half letters, length, inversions).
    ZhuElement out;
    std::deque<std::pair<Scalar, ZhuWord>> work(words.begin(), words.end());
    long steps = 0;
    while (!work.empty()) {
        if (++steps > 2000000) throw Error("Zhu straightening did not terminate");
        auto [coeff, w] = std::move(work.front());
        work.pop_front();
        if (coeff.is_zero()) continue;
        std::size_t pos = w.size();
        bool square = false;
        for (std::size_t r = 0; r + 1 < w.size(); ++r) {
            if (w[r + 1] < w[r]) {
                pos = r;
                square = false;
                break;
            }
            if (w[r] == w[r + 1] && parity(w[r])) {
                pos = r;
                square = true;
                break;
            }
        }
        if (pos == w.size()) {
            out.add(w, coeff);
            continue;
        }
        ZhuGen x = w[pos], y = w[pos + 1];
        int s = (parity(x) && parity(y)) ? -1 : 1;
        if (!square) {
            ZhuWord swapped = w;
            std::swap(swapped[pos], swapped[pos + 1]);
            work.emplace_back(coeff * Scalar(s), std::move(swapped));
        }
        Scalar pref = square ? coeff * Scalar(make_rat(1, 2)) : coeff;
        for (auto& [rw, rc] : rule(x, y).terms()) {
            ZhuWord spliced(w.begin(), w.begin() + static_cast<long>(pos));
            spliced.insert(spliced.end(), rw.begin(), rw.end());
            spliced.insert(spliced.end(), w.begin() + static_cast<long>(pos) + 2, w.end());
            work.emplace_back(pref * rc, std::move(spliced));
        }
    }
    return out;
}

ZhuElement zhu_multiply(const ZhuPresentation& zp, const ZhuElement& x, const ZhuElement& y) {
    std::vector<std::pair<Scalar, ZhuWord>> words;
    for (auto& [wx, cx] : x.terms())
        for (auto& [wy, cy] : y.terms()) {
            ZhuWord w = wx;
            w.insert(w.end(), wy.begin(), wy.end());
            words.emplace_back(cx * cy, std::move(w));
        }
    return zp.normalize(std::move(words));
}

ZhuElement zhu_omega(const ZhuPresentation& zp, const ZhuElement& x) {
    const MinimalWDatum& d = zp.datum();
    auto image = [&](ZhuGen g) {
        std::vector<std::pair<GaussRat, ZhuGen>> out;
        if (g.kind == ZhuGen::Kind::Lp) {
            out.emplace_back(GaussRat(1), g);
            return out;
        }
        int p = zp.parity(g);
        if (g.kind == ZhuGen::Kind::Nat) {
            // (-1)^{p+1} i^p phi
            GaussRat c = (p == 0) ? GaussRat(Rat(-1)) : GaussRat::i();
            for (int l = 0; l < d.gnat.dim(); ++l) {
                GaussRat ph = d.gnat.phi[static_cast<std::size_t>(g.index)][static_cast<std::size_t>(l)];
                if (!ph.is_zero()) out.emplace_back(c * ph, ZhuGen{ZhuGen::Kind::Nat, l});
            }
        } else {
            // (-1)^p i^{p+1} phi
            GaussRat c = (p == 0) ? GaussRat::i() : GaussRat(Rat(1));
            for (int l = 0; l < static_cast<int>(d.ghalf_names.size()); ++l) {
                GaussRat ph = d.ghalf_phi[static_cast<std::size_t>(g.index)][static_cast<std::size_t>(l)];
                if (!ph.is_zero()) out.emplace_back(c * ph, ZhuGen{ZhuGen::Kind::Half, l});
            }
        }
        return out;
    };

    // omega(x*y) = omega(y)*omega(x) without a Koszul sign: reversing an odd
    // square u*u = -<u,u>L'/2 must fix it, which rules the sign out.
    std::vector<std::pair<Scalar, ZhuWord>> words;
    for (auto& [w, c] : x.terms()) {
        std::vector<std::pair<Scalar, ZhuWord>> partial{{c.conj(), {}}};
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            std::vector<std::pair<Scalar, ZhuWord>> next;
            for (auto& [pc, pw] : partial)
                for (auto& [ic, ig] : image(*it)) {
                    ZhuWord nw = pw;
                    nw.push_back(ig);
                    next.emplace_back(pc * Scalar(ic), std::move(nw));
                }
            partial = std::move(next);
        }
        for (auto& pr : partial) words.push_back(std::move(pr));
    }
    return zp.normalize(std::move(words));
}

State zhu_star(const AlgebraPresentation& p, const State& a, const State& b) {
    auto wa = a.homogeneous_weight();
    if (!wa) throw DegenerateInputError("zhu_star requires a homogeneous left factor");
    HalfInt wb(0);
    for (auto& [m, c] : b.terms()) {
        (void)c;
        wb = std::max(wb, m.weight());
    }
    Rat gamma = rat_of(*wa);
    State out;
    for (auto& [m, c] : a.terms()) {
        // the monomial as a composite vector: X_{-j} = (T^{j-Delta}X)_(-1)/(j-Delta)!
        NOTerm term;
        term.coeff = c;
        for (auto& mode : m.modes) {
            HalfInt d = p.generators[static_cast<std::size_t>(mode.gen)].delta;
            long extra = (mode.j - d).as_int();
            Rat fact(1);
            for (long l = 2; l <= extra; ++l) fact *= l;
            term.coeff = term.coeff * Scalar(fact).inv();
            term.factors.emplace_back(static_cast<int>(extra), mode.gen);
        }
        NOPoly poly(term);
        // sum_j binom(gamma, j) a_(-1+j) b; shifted index j - wa, clipped by
        // the top weight of b
        for (long j = 0;; ++j) {
            HalfInt n = HalfInt(static_cast<int>(j)) - *wa;
            if (n > wb) break;
            Rat bin = binomial(gamma, j);
            if (bin == 0) continue;
            out.add_scaled(apply_poly_mode(p, poly, n, b), Scalar(bin));
        }
    }
    return out;
}

bool k_independence_check(const ZhuPresentation& zp) {
    auto depends = [](const Scalar& s) { return s.num().degree() > 0 || s.den().degree() > 0; };
    const MinimalWDatum& d = zp.datum();
    const int nn = d.gnat.dim();
    const int nh = static_cast<int>(d.ghalf_names.size());
    std::vector<ZhuGen> gens;
    for (int i = 0; i < nh; ++i) gens.push_back(ZhuGen{ZhuGen::Kind::Half, i});
    for (int i = 0; i < nn; ++i) gens.push_back(ZhuGen{ZhuGen::Kind::Nat, i});
    gens.push_back(ZhuGen{ZhuGen::Kind::Lp, 0});
    for (auto& x : gens)
        for (auto& y : gens)
            for (auto& [w, c] : zp.rule(x, y).terms()) {
                (void)w;
                if (depends(c)) return false;
            }
    return true;
}

std::string ZhuPresentation::str(const ZhuElement& e) const {
    if (e.is_zero()) return "0";
    std::string out;
    for (auto& [w, c] : e.terms()) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")";
        if (w.empty()) continue;
        std::string word;
        for (std::size_t r = 0; r < w.size();) {
            std::size_t run = r;
            while (run < w.size() && w[run] == w[r]) ++run;
            if (!word.empty()) word += "*";
            word += name(w[r]);
            if (run - r > 1) word += "^" + std::to_string(run - r);
            r = run;
        }
        out += " * " + word;
    }
    return out;
}

} // namespace vaform
