#include "vaform/hermitian.hpp"

#include <algorithm>

namespace vaform {

GOp GOp::of(const AlgebraPresentation& p) {
    GOp g;
    for (auto& gen : p.generators) {
        g.phases.push_back(phase_of(gen.delta, gen.parity));
        g.images.push_back(gen.phi_image);
    }
    return g;
}

State g_apply(const AlgebraPresentation& p, const State& s) {
    // g(a_(n) b) = (-1)^{n+1} p(a,b) g(a)_(n) g(b): peel one mode at a time.
    // In shifted indices the per-mode sign is (-1)^{j - Delta}; the phase
    // (-i)^{2 Delta + p} and the phi image replace the generator.
    GOp g = GOp::of(p);
    State out;
    for (auto& [m, c] : s.terms()) {
        // supersign from p(X_r, tail): product over pairs r < s of (-1)^{p_r p_s}
        int pair_sign = 1;
        for (std::size_t r = 0; r < m.modes.size(); ++r)
            for (std::size_t t = r + 1; t < m.modes.size(); ++t)
                if (p.generators[static_cast<std::size_t>(m.modes[r].gen)].parity &&
                    p.generators[static_cast<std::size_t>(m.modes[t].gen)].parity)
                    pair_sign = -pair_sign;
        Scalar pref = Scalar(pair_sign) * c.conj();
        Phase total;
        for (auto& mode : m.modes) {
            HalfInt d = p.generators[static_cast<std::size_t>(mode.gen)].delta;
            if (!(mode.j - d).is_integer()) throw Error("mode outside its coset");
            if ((mode.j - d).as_int() % 2 != 0) pref = -pref;
            total = total * g.phases[static_cast<std::size_t>(mode.gen)];
        }
        pref *= Scalar(total.value());
        // distribute the phi images mode by mode
        std::vector<std::pair<Scalar, std::vector<Mode>>> partial{{pref, {}}};
        for (auto& mode : m.modes) {
            std::vector<std::pair<Scalar, std::vector<Mode>>> next;
            for (auto& [coeff, modes] : partial) {
                const auto& row = g.images[static_cast<std::size_t>(mode.gen)];
                for (int l = 0; l < p.num_generators(); ++l) {
                    if (row[static_cast<std::size_t>(l)].is_zero()) continue;
                    auto copy = modes;
                    copy.push_back(Mode{mode.j, l});
                    next.emplace_back(coeff * Scalar(row[static_cast<std::size_t>(l)]),
                                      std::move(copy));
                }
            }
            partial = std::move(next);
        }
        // renormalize (phi can permute generators at equal depth)
        for (auto& [coeff, modes] : partial) {
            State piece;
            piece.add(Monomial{}, coeff);
            for (auto it = modes.rbegin(); it != modes.rend(); ++it)
                piece = apply_mode(p, it->gen, -it->j, piece);
            out.add_scaled(piece, Scalar(1));
        }
    }
    return out;
}

std::map<long, State> a_operator(const AlgebraPresentation& p, const State& s) {
    std::map<long, State> out;
    for (auto& [w, comp] : g_apply(p, s).weight_components()) {
        // z^{-2w} e^{zL_1}: the r-th term lands at exponent r - 2w
        State cur = comp;
        Scalar fact(1);
        for (long r = 0;; ++r) {
            if (r > 0) {
                cur = conformal_mode(p, HalfInt(1), cur);
                fact *= Scalar(r);
            }
            if (cur.is_zero()) break;
            State scaled;
            scaled.add_scaled(cur, Scalar(1) / fact);
            auto [it, fresh] = out.try_emplace(r - w.twice, scaled);
            if (!fresh) it->second.add_scaled(scaled, Scalar(1));
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

std::map<long, State> a_operator_inv_var(const AlgebraPresentation& p,
                                         const std::map<long, State>& laurent) {
    std::map<long, State> out;
    for (auto& [e, st] : laurent) {
        for (auto& [w, comp] : g_apply(p, st).weight_components()) {
            State cur = comp;
            Scalar fact(1);
            for (long r = 0;; ++r) {
                if (r > 0) {
                    cur = conformal_mode(p, HalfInt(1), cur);
                    fact *= Scalar(r);
                }
                if (cur.is_zero()) break;
                State scaled;
                scaled.add_scaled(cur, Scalar(1) / fact);
                auto [it, fresh] = out.try_emplace(e - r + w.twice, scaled);
                if (!fresh) it->second.add_scaled(scaled, Scalar(1));
            }
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

State omega_state(const AlgebraPresentation& p, const State& s) {
    // A(1) = e^{L_1} g
    State cur = g_apply(p, s);
    State out;
    Scalar fact(1);
    long r = 0;
    while (!cur.is_zero()) {
        out.add_scaled(cur, Scalar(1) / fact);
        ++r;
        cur = conformal_mode(p, HalfInt(1), cur);
        fact *= Scalar(r);
    }
    return out;
}

namespace {

void require_quasiprimary(const AlgebraPresentation& p) {
    if (!all_quasiprimary(p))
        throw UnsupportedPresentationError(
            "the invariant form requires quasiprimary strong generators");
}

Scalar inner_product_impl(const AlgebraPresentation& p, const State& u, const State& v);

} // namespace

Scalar inner_product(const AlgebraPresentation& p, const State& u, const State& v) {
    require_quasiprimary(p);
    return inner_product_impl(p, u, v);
}

namespace {

Scalar inner_product_impl(const AlgebraPresentation& p, const State& u, const State& v) {
    GOp g = GOp::of(p);
    Scalar total;
    for (auto& [m, c] : u.terms()) {
        // peel the creation modes of u as g-twisted annihilators on v,
        // deepest mode first
        State cur = v;
        for (auto it = m.modes.begin(); it != m.modes.end() && !cur.is_zero(); ++it) {
            const auto& row = g.images[static_cast<std::size_t>(it->gen)];
            State next;
            for (int l = 0; l < p.num_generators(); ++l) {
                if (row[static_cast<std::size_t>(l)].is_zero()) continue;
                next.add_scaled(apply_mode(p, l, it->j, cur),
                                Scalar(row[static_cast<std::size_t>(l)]));
            }
            next = Scalar(g.phases[static_cast<std::size_t>(it->gen)].value()) * next;
            cur = std::move(next);
        }
        total += c.conj() * expectation(cur);
    }
    return total;
}

} // namespace

GramMatrix gram(const AlgebraPresentation& p, HalfInt w) {
    require_quasiprimary(p);
    GramMatrix g;
    g.weight = w;
    g.basis = basis(p, w);
    int n = g.dim();
    g.entries.assign(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n)));
    for (int r = 0; r < n; ++r) {
        State sr;
        sr.add(g.basis[static_cast<std::size_t>(r)], Scalar(1));
        for (int c = 0; c < n; ++c) {
            State sc;
            sc.add(g.basis[static_cast<std::size_t>(c)], Scalar(1));
            g.entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                inner_product_impl(p, sr, sc);
        }
    }
    return g;
}

SignatureReport signature(const GramMatrix& g, const Rat& k0) {
    int n = g.dim();
    std::vector<std::vector<GaussRat>> h(static_cast<std::size_t>(n),
                                         std::vector<GaussRat>(static_cast<std::size_t>(n)));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            h[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                specialize(g.entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], k0);

    // congruence diagonalization; rows of basis_change track the current basis
    std::vector<std::vector<GaussRat>> change(static_cast<std::size_t>(n),
                                              std::vector<GaussRat>(static_cast<std::size_t>(n)));
    for (int r = 0; r < n; ++r) change[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)] = GaussRat(1);
    std::vector<bool> done(static_cast<std::size_t>(n), false);
    SignatureReport rep;

    auto add_multiple = [&](int r, int d, const GaussRat& gamma) {
        // b_r <- b_r + gamma b_d
        for (int c = 0; c < n; ++c)
            change[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] +=
                gamma * change[static_cast<std::size_t>(d)][static_cast<std::size_t>(c)];
        // H[r][*] += conj(gamma) H[d][*]; then H[*][r] += gamma H[*][d]
        for (int c = 0; c < n; ++c)
            h[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] +=
                gamma.conj() * h[static_cast<std::size_t>(d)][static_cast<std::size_t>(c)];
        for (int c = 0; c < n; ++c)
            h[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] +=
                gamma * h[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)];
    };

    while (true) {
        int pivot = -1;
        for (int r = 0; r < n; ++r)
            if (!done[static_cast<std::size_t>(r)] &&
                !h[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) {
            // all active diagonal zero; look for an off-diagonal entry
            int fr = -1, fc = -1;
            for (int r = 0; r < n && fr < 0; ++r) {
                if (done[static_cast<std::size_t>(r)]) continue;
                for (int c = 0; c < n; ++c) {
                    if (done[static_cast<std::size_t>(c)] || c == r) continue;
                    if (!h[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].is_zero()) {
                        fr = r;
                        fc = c;
                        break;
                    }
                }
            }
            if (fr < 0) break; // the rest is radical
            GaussRat x = h[static_cast<std::size_t>(fr)][static_cast<std::size_t>(fc)];
            // split the hyperbolic pair: b_r + b_c gets norm 2 Re x, and when
            // x is purely imaginary b_r + i b_c gets norm -2 Im x
            add_multiple(fr, fc, x.re != 0 ? GaussRat(1) : GaussRat::i());
            continue;
        }
        GaussRat piv = h[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(pivot)];
        if (!piv.is_real()) throw Error("Gram specialization is not Hermitian at k0");
        (piv.re > 0 ? rep.n_plus : rep.n_minus)++;
        for (int r = 0; r < n; ++r) {
            if (r == pivot || done[static_cast<std::size_t>(r)]) continue;
            GaussRat hr = h[static_cast<std::size_t>(r)][static_cast<std::size_t>(pivot)];
            if (hr.is_zero()) continue;
            // (b_r + gamma b_piv, b_piv) = 0 needs gamma = -conj(H[r][piv])/H[piv][piv]
            add_multiple(r, pivot, -hr.conj() / piv);
        }
        done[static_cast<std::size_t>(pivot)] = true;
    }

    for (int r = 0; r < n; ++r) {
        if (done[static_cast<std::size_t>(r)]) continue;
        ++rep.n_zero;
        State vec;
        for (int c = 0; c < n; ++c) {
            const GaussRat& coeff = change[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (!coeff.is_zero()) vec.add(g.basis[static_cast<std::size_t>(c)], Scalar(coeff));
        }
        rep.kernel_basis.push_back(std::move(vec));
    }
    return rep;
}

std::string UnitarityReport::verdict_str() const {
    switch (verdict) {
        case Verdict::PositiveDefinite: return "positive definite";
        case Verdict::SemidefiniteWithKernel: return "positive semidefinite with kernel";
        default: return "indefinite";
    }
}

UnitarityReport unitarity_report(const AlgebraPresentation& p, HalfInt max_w, const Rat& k0) {
    UnitarityReport rep;
    bool any_minus = false, any_zero = false;
    for (HalfInt w(0); w <= max_w; w = HalfInt::from_twice(w.twice + 1)) {
        GramMatrix g = gram(p, w);
        if (g.dim() == 0) continue;
        WeightVerdict wv;
        wv.weight = w;
        wv.dim = g.dim();
        wv.sig = signature(g, k0);
        if ((wv.sig.n_minus > 0 || wv.sig.n_zero > 0) && !rep.first_failure)
            rep.first_failure = w;
        any_minus = any_minus || wv.sig.n_minus > 0;
        any_zero = any_zero || wv.sig.n_zero > 0;
        rep.weights.push_back(std::move(wv));
    }
    rep.verdict = any_minus ? UnitarityReport::Verdict::Indefinite
                 : any_zero ? UnitarityReport::Verdict::SemidefiniteWithKernel
                            : UnitarityReport::Verdict::PositiveDefinite;
    return rep;
}

KernelFlowReport kernel_flow(const AlgebraPresentation& p, HalfInt max_w, const Rat& k0) {
    KernelFlowReport rep;
    std::map<HalfInt, GramMatrix> grams;
    for (HalfInt w(0); w <= max_w; w = HalfInt::from_twice(w.twice + 1)) {
        GramMatrix g = gram(p, w);
        if (g.dim() == 0) continue;
        SignatureReport sig = signature(g, k0);
        if (!sig.kernel_basis.empty()) rep.kernels[w] = sig.kernel_basis;
        grams[w] = std::move(g);
    }
    // closure: generator modes map kernel vectors into kernels
    for (auto& [w, kernel] : rep.kernels) {
        for (const State& s : kernel) {
            for (int gen = 0; gen < p.num_generators(); ++gen) {
                HalfInt d = p.generators[static_cast<std::size_t>(gen)].delta;
                for (HalfInt n = -(max_w - w); n <= w; n = n + HalfInt(1)) {
                    if (!(n + d).is_integer()) continue;
                    HalfInt w2 = w - n;
                    if (w2 < HalfInt(0) || w2 > max_w) continue;
                    State moved = apply_mode(p, gen, n, s);
                    if (moved.is_zero()) continue;
                    auto git = grams.find(w2);
                    if (git == grams.end()) continue;
                    // moved must pair to zero against the whole weight space
                    for (auto& b : git->second.basis) {
                        State bs;
                        bs.add(b, Scalar(1));
                        Scalar pairing = inner_product_impl(p, bs, moved);
                        if (!specialize(pairing, k0).is_zero()) {
                            rep.closed = false;
                            rep.violation = "kernel vector at weight " + w.str() +
                                            " escapes under generator " +
                                            p.generators[static_cast<std::size_t>(gen)].name +
                                            " mode " + n.str();
                            return rep;
                        }
                    }
                }
            }
        }
    }
    return rep;
}

Scalar gram_determinant(const GramMatrix& g) {
    int n = g.dim();
    if (n == 0) return Scalar(1);
    std::vector<std::vector<Scalar>> m = g.entries;
    Scalar det(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return Scalar();
        if (piv != col) {
            std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(col)]);
            det = -det;
        }
        Scalar d = m[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
        det *= d;
        for (int r = col + 1; r < n; ++r) {
            Scalar f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / d;
            if (f.is_zero()) continue;
            for (int c = col; c < n; ++c)
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                    f * m[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
        }
    }
    return det;
}

CollapsingReport collapsing_candidates(const AlgebraPresentation& p, HalfInt max_w) {
    CollapsingReport rep;
    std::map<Rat, CollapsingCandidate> found;
    std::vector<Rat> poles;
    std::map<HalfInt, GramMatrix> grams;

    for (HalfInt w = HalfInt::half(); w <= max_w; w = HalfInt::from_twice(w.twice + 1)) {
        GramMatrix g = gram(p, w);
        if (g.dim() == 0) continue;
        for (auto& row : g.entries)
            for (auto& e : row)
                if (e.den().degree() > 0)
                    for (const Rat& r : rational_roots(e.den()))
                        if (std::find(poles.begin(), poles.end(), r) == poles.end())
                            poles.push_back(r);
        Scalar det = gram_determinant(g);
        if (det.is_zero()) {
            rep.structurally_degenerate.push_back(w);
            grams[w] = std::move(g);
            continue;
        }
        if (det.num().degree() == 0) {
            grams[w] = std::move(g);
            continue; // no level dependence at this weight
        }
        for (const Rat& r : rational_roots(det.num())) {
            if (std::find(poles.begin(), poles.end(), r) != poles.end()) continue;
            auto& cand = found[r];
            cand.level = r;
            cand.degenerate_weights.push_back(w);
        }
        grams[w] = std::move(g);
    }
    for (auto& [level, cand] : found) {
        for (HalfInt w : cand.degenerate_weights) {
            SignatureReport sig = signature(grams[w], level);
            cand.kernel_dims[w] = sig.n_zero;
        }
        rep.candidates.push_back(cand);
    }
    std::sort(poles.begin(), poles.end());
    rep.excluded_poles = poles;
    return rep;
}

InvarianceCheck check_invariance(const AlgebraPresentation& p, int gen, HalfInt n, const State& u,
                                 const State& v, std::optional<Rat> k0) {
    InvarianceCheck res;
    res.lhs = inner_product(p, v, apply_mode(p, gen, n, u));
    GOp g = GOp::of(p);
    const auto& row = g.images[static_cast<std::size_t>(gen)];
    State gv;
    for (int l = 0; l < p.num_generators(); ++l) {
        if (row[static_cast<std::size_t>(l)].is_zero()) continue;
        gv.add_scaled(apply_mode(p, l, -n, v), Scalar(row[static_cast<std::size_t>(l)]));
    }
    gv = Scalar(g.phases[static_cast<std::size_t>(gen)].value()) * gv;
    res.rhs = inner_product(p, gv, u);
    if (k0) {
        res.pass = (specialize(res.lhs, *k0) == specialize(res.rhs, *k0));
    } else {
        res.pass = (res.lhs == res.rhs);
    }
    return res;
}

RealityReport reality_check(const AlgebraPresentation& p, int gen, std::optional<Rat> k0) {
    const GeneratorDecl& g = p.generators[static_cast<std::size_t>(gen)];
    // requires phi(X) = X
    for (int l = 0; l < p.num_generators(); ++l) {
        GaussRat want = (l == gen) ? GaussRat(1) : GaussRat();
        if (g.phi_image[static_cast<std::size_t>(l)] != want)
            throw Error("reality_check requires a phi-fixed generator");
    }
    State v;
    v.add(Monomial{{Mode{g.delta, gen}}}, Scalar(1));
    Scalar val = expectation(apply_mode(p, gen, g.delta, v));
    RealityReport rep;
    rep.parity_sign_positive = ((g.delta.twice + g.parity) % 2 == 0);
    GaussRat x = k0 ? specialize(val, *k0) : val.is_constant() ? val.constant() : GaussRat();
    if (!k0 && !val.is_constant()) throw Error("reality_check: k-dependent value needs a level");
    rep.value = x;
    if (x.is_zero())
        rep.kind = RealityReport::Kind::Zero;
    else if (x.is_real())
        rep.kind = RealityReport::Kind::Real;
    else if (x.is_imaginary())
        rep.kind = RealityReport::Kind::Imaginary;
    else
        rep.kind = RealityReport::Kind::Mixed;
    rep.consistent = (rep.kind == RealityReport::Kind::Zero) ||
                     (rep.parity_sign_positive ? rep.kind == RealityReport::Kind::Real
                                               : rep.kind == RealityReport::Kind::Imaginary);
    return rep;
}

} // namespace vaform
