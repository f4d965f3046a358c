#include "vaform/engine.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace vaform {

std::optional<HalfInt> State::homogeneous_weight() const {
    std::optional<HalfInt> w;
    for (auto& [m, c] : terms_) {
        (void)c;
        HalfInt mw = m.weight();
        if (!w)
            w = mw;
        else if (*w != mw)
            return std::nullopt;
    }
    return w;
}

std::map<HalfInt, State> State::weight_components() const {
    std::map<HalfInt, State> out;
    for (auto& [m, c] : terms_) out[m.weight()].add(m, c);
    return out;
}

std::string Monomial::str(const AlgebraPresentation& p) const {
    if (modes.empty()) return "|0>";
    std::string out;
    for (auto& m : modes) {
        out += p.generators[static_cast<std::size_t>(m.gen)].name + "(-" + m.j.str() + ")";
    }
    return out + "|0>";
}

std::string State::str(const AlgebraPresentation& p) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto& [m, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")*" + m.str(p);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Straightening kernel. Words are raw operator sequences applied to the
// vacuum; normalize() rewrites the rightmost violation until every word is a
// canonical PBW monomial.
//
// Rewrites and the termination metric (Phi, D, inv), ordered lexicographically:
//   Phi = sum of 4*Delta over the word's modes. Bracket and square rewrites
//         replace two modes by a composite of strictly smaller total weight,
//         so Phi drops by at least 4(t+1); swaps preserve it.
//   D   = total distance of annihilating modes (j < Delta) from the right
//         end. Processing the rightmost violation first means a swap never
//         moves an annihilating mode leftwards, so D never grows and drops
//         on annihilator swaps.
//   inv = inversions among the legal modes; plain swaps drop it by one.

namespace {

struct Word {
    Scalar coeff;
    std::vector<Mode> modes;
};

HalfInt gen_delta(const AlgebraPresentation& p, int g) {
    return p.generators[static_cast<std::size_t>(g)].delta;
}
int gen_parity(const AlgebraPresentation& p, int g) {
    return p.generators[static_cast<std::size_t>(g)].parity;
}

bool mode_bad(const AlgebraPresentation& p, const Mode& m) { return m.j < gen_delta(p, m.gen); }

#ifndef NDEBUG
struct Metric {
    long phi = 0, dist = 0, inv = 0;
    friend auto operator<=>(const Metric&, const Metric&) = default;
};

Metric metric(const AlgebraPresentation& p, const std::vector<Mode>& w) {
    Metric m;
    long len = static_cast<long>(w.size());
    for (long r = 0; r < len; ++r) {
        m.phi += 2 * gen_delta(p, w[static_cast<std::size_t>(r)].gen).twice;
        if (mode_bad(p, w[static_cast<std::size_t>(r)])) m.dist += len - 1 - r;
    }
    for (long r = 0; r < len; ++r)
        for (long s = r + 1; s < len; ++s) {
            const Mode &a = w[static_cast<std::size_t>(r)], &b = w[static_cast<std::size_t>(s)];
            if (mode_bad(p, a) || mode_bad(p, b)) continue;
            if (a.j < b.j || (a.j == b.j && a.gen > b.gen)) ++m.inv;
        }
    return m;
}
#endif

/// Expand the shifted mode of index q of a right-nested normally ordered
/// word acting on a state of weight w_suffix. Yields (scalar, inserted mode
/// sequence) pairs; sums are clipped to the finite window forced by the
/// weight grading.
void expand_composite(const AlgebraPresentation& p, const std::vector<NOFactor>& factors,
                      std::size_t from, HalfInt q, HalfInt w_suffix, const Scalar& acc,
                      std::vector<Mode>& prefix, std::vector<Mode>& postfix,
                      std::vector<std::pair<Scalar, std::vector<Mode>>>& out) {
    if (from == factors.size()) {
        if (q == HalfInt(0)) {
            std::vector<Mode> ins = prefix;
            ins.insert(ins.end(), postfix.begin(), postfix.end());
            out.emplace_back(acc, std::move(ins));
        }
        return;
    }
    auto [deriv, gen] = factors[from];
    HalfInt da = gen_delta(p, gen);
    HalfInt dhead = da + HalfInt(deriv);
    int tail_parity = 0;
    for (std::size_t r = from + 1; r < factors.size(); ++r)
        tail_parity ^= gen_parity(p, factors[r].second);
    int head_parity = gen_parity(p, gen);

    auto dfact = [&](HalfInt i) {
        // (T^m a)_i = (-1)^m prod_{l=0}^{m-1} (i + Delta_a + l) a_i
        Rat f(deriv % 2 == 0 ? 1 : -1);
        for (int l = 0; l < deriv; ++l) f *= rat_of(i + da) + Rat(l);
        return f;
    };
    // coset of the head's shifted indices
    auto aligned = [&](HalfInt lo) {
        std::int64_t res = ((da.twice % 2) + 2) % 2;
        HalfInt i = lo;
        if ((((i.twice % 2) + 2) % 2) != res) i = HalfInt::from_twice(i.twice + 1);
        return i;
    };

    // creation side: head_i with i <= -Delta_head, tail mode (q-i) acts first
    {
        HalfInt lo = q - w_suffix, hi = -dhead;
        for (HalfInt i = aligned(lo); i <= hi; i = HalfInt::from_twice(i.twice + 2)) {
            Rat f = dfact(i);
            if (f == 0) continue;
            prefix.push_back(Mode{-i, gen});
            expand_composite(p, factors, from + 1, q - i, w_suffix, acc * Scalar(f), prefix,
                             postfix, out);
            prefix.pop_back();
        }
    }
    // annihilation side: head_i applied first, i >= -Delta_head + 1
    if (q <= w_suffix) {
        HalfInt lo = HalfInt::from_twice(-dhead.twice + 2), hi = w_suffix;
        Scalar sgn((head_parity && tail_parity) ? -1 : 1);
        for (HalfInt i = aligned(lo); i <= hi; i = HalfInt::from_twice(i.twice + 2)) {
            Rat f = dfact(i);
            if (f == 0) continue;
            postfix.insert(postfix.begin(), Mode{-i, gen});
            expand_composite(p, factors, from + 1, q - i, w_suffix - i, acc * sgn * Scalar(f),
                             prefix, postfix, out);
            postfix.erase(postfix.begin());
        }
    }
}

std::vector<std::pair<Scalar, std::vector<Mode>>> expand_term(const AlgebraPresentation& p,
                                                              const NOTerm& term, HalfInt q,
                                                              HalfInt w_suffix) {
    std::vector<std::pair<Scalar, std::vector<Mode>>> out;
    std::vector<Mode> prefix, postfix;
    expand_composite(p, term.factors, 0, q, w_suffix, term.coeff, prefix, postfix, out);
    return out;
}

State normalize(const AlgebraPresentation& p, std::deque<Word> work) {
    State result;
    long steps = 0;
    while (!work.empty()) {
        if (++steps > 20000000) throw Error("straightening did not terminate");
        Word w = std::move(work.front());
        work.pop_front();
        if (w.coeff.is_zero()) continue;
        std::size_t len = w.modes.size();
        if (len == 0) {
            result.add(Monomial{}, w.coeff);
            continue;
        }
        // trailing annihilator dies on the vacuum
        if (mode_bad(p, w.modes[len - 1])) continue;

        // rightmost violating adjacent pair
        std::size_t pos = len;
        bool square = false;
        for (std::size_t r = len - 1; r-- > 0;) {
            const Mode &A = w.modes[r], &B = w.modes[r + 1];
            if (mode_bad(p, A)) {
                pos = r;
                square = false;
                break;
            }
            if (A.j < B.j || (A.j == B.j && A.gen > B.gen)) {
                pos = r;
                square = false;
                break;
            }
            if (A.j == B.j && A.gen == B.gen && gen_parity(p, A.gen)) {
                pos = r;
                square = true;
                break;
            }
        }
        if (pos == len) { // canonical
            result.add(Monomial{w.modes}, w.coeff);
            continue;
        }

        const Mode A = w.modes[pos], B = w.modes[pos + 1];
#ifndef NDEBUG
        Metric parent = metric(p, w.modes);
#endif
        HalfInt na = -A.j, nb = -B.j;
        HalfInt w_suffix(0);
        for (std::size_t s = pos + 2; s < len; ++s) w_suffix += w.modes[s].j;

        if (!square) {
            Word swapped;
            swapped.coeff = w.coeff * Scalar(p.supersign(A.gen, B.gen));
            swapped.modes = w.modes;
            std::swap(swapped.modes[pos], swapped.modes[pos + 1]);
#ifndef NDEBUG
            assert(metric(p, swapped.modes) < parent);
#endif
            work.push_back(std::move(swapped));
        }
        Scalar pref = square ? Scalar(make_rat(1, 2)) : Scalar(1);
        int tmax = p.max_t(A.gen, B.gen);
        for (int t = 0; t <= tmax; ++t) {
            const NOPoly* entry = p.bracket(A.gen, B.gen, t);
            if (!entry) continue;
            Rat binom = binomial(rat_of(na + gen_delta(p, A.gen)) - 1, t);
            if (binom == 0) continue;
            for (auto& [factors, coeff] : entry->terms()) {
                for (auto& [factor_scalar, inserted] :
                     expand_term(p, NOTerm{coeff, factors}, na + nb, w_suffix)) {
                    Word child;
                    child.coeff = w.coeff * pref * Scalar(binom) * factor_scalar;
                    child.modes.assign(w.modes.begin(), w.modes.begin() + static_cast<long>(pos));
                    child.modes.insert(child.modes.end(), inserted.begin(), inserted.end());
                    child.modes.insert(child.modes.end(),
                                       w.modes.begin() + static_cast<long>(pos) + 2,
                                       w.modes.end());
#ifndef NDEBUG
                    assert(metric(p, child.modes).phi < parent.phi);
#endif
                    work.push_back(std::move(child));
                }
            }
        }
    }
    return result;
}

void check_coset(const AlgebraPresentation& p, int gen, HalfInt n) {
    if (gen < 0 || gen >= p.num_generators()) throw Error("generator index out of range");
    if ((n + gen_delta(p, gen)).is_integer()) return;
    throw ModeCosetError("mode index " + n.str() + " not in -Delta+Z for generator " +
                         p.generators[static_cast<std::size_t>(gen)].name);
}

} // namespace

State apply_mode(const AlgebraPresentation& p, int gen, HalfInt n, const State& s) {
    check_coset(p, gen, n);
    std::deque<Word> work;
    for (auto& [m, c] : s.terms()) {
        Word w;
        w.coeff = c;
        w.modes.push_back(Mode{-n, gen});
        w.modes.insert(w.modes.end(), m.modes.begin(), m.modes.end());
        work.push_back(std::move(w));
    }
    return normalize(p, std::move(work));
}

State apply_poly_mode(const AlgebraPresentation& p, const NOPoly& v, HalfInt n, const State& s) {
    std::deque<Word> work;
    for (auto& [m, c] : s.terms()) {
        HalfInt wm = m.weight();
        for (auto& [factors, coeff] : v.terms()) {
            for (auto& [factor_scalar, inserted] :
                 expand_term(p, NOTerm{coeff, factors}, n, wm)) {
                Word w;
                w.coeff = c * factor_scalar;
                w.modes = inserted;
                w.modes.insert(w.modes.end(), m.modes.begin(), m.modes.end());
                work.push_back(std::move(w));
            }
        }
    }
    return normalize(p, std::move(work));
}

std::vector<Monomial> basis(const AlgebraPresentation& p, HalfInt w) {
    if (w < HalfInt(0)) return {};
    std::vector<Monomial> out;
    std::vector<Mode> current;
    // modes are chosen weakly decreasing in the canonical order
    auto can_follow = [&](const Mode& prev, const Mode& next) {
        if (next.j < prev.j) return true;
        if (next.j > prev.j) return false;
        if (next.gen > prev.gen) return true;
        return next.gen == prev.gen && gen_parity(p, next.gen) == 0;
    };
    auto rec = [&](auto&& self, HalfInt remaining) -> void {
        if (remaining == HalfInt(0)) {
            out.push_back(Monomial{current});
            return;
        }
        for (int g = 0; g < p.num_generators(); ++g) {
            HalfInt d = gen_delta(p, g);
            for (HalfInt j = d; j <= remaining; j = j + HalfInt(1)) {
                Mode m{j, g};
                if (!current.empty() && !can_follow(current.back(), m)) continue;
                current.push_back(m);
                self(self, remaining - j);
                current.pop_back();
            }
        }
    };
    rec(rec, w);
    std::sort(out.begin(), out.end());
    return out;
}

Scalar expectation(const State& s) { return s.coeff(Monomial{}); }

State conformal_mode(const AlgebraPresentation& p, HalfInt n, const State& s) {
    return apply_poly_mode(p, p.conformal_poly(), n, s);
}

State translate(const AlgebraPresentation& p, const State& s) {
    return conformal_mode(p, HalfInt(-1), s);
}

PrimaryReport check_primary(const AlgebraPresentation& p, int gen, int max_n) {
    PrimaryReport rep;
    State v;
    v.add(Monomial{{Mode{gen_delta(p, gen), gen}}}, Scalar(1));
    for (int n = 1; n <= max_n; ++n) {
        State r = conformal_mode(p, HalfInt(n), v);
        if (!r.is_zero()) {
            rep.primary = false;
            if (n == 1) rep.quasiprimary = false;
            rep.first_nonzero = n;
            rep.witness = r;
            return rep;
        }
    }
    return rep;
}

bool all_quasiprimary(const AlgebraPresentation& p) {
    for (int g = 0; g < p.num_generators(); ++g)
        if (!check_primary(p, g, 1).quasiprimary) return false;
    return true;
}

CommutatorCheck check_commutator(const AlgebraPresentation& p, int x, HalfInt m, int y, HalfInt n,
                                 const State& s) {
    CommutatorCheck res;
    Scalar sign(p.supersign(x, y));
    res.lhs = apply_mode(p, x, m, apply_mode(p, y, n, s)) -
              sign * apply_mode(p, y, n, apply_mode(p, x, m, s));
    State rhs;
    int tmax = p.max_t(x, y);
    HalfInt dx = p.generators[static_cast<std::size_t>(x)].delta;
    for (int t = 0; t <= tmax; ++t) {
        const NOPoly* entry = p.bracket(x, y, t);
        if (!entry) continue;
        Rat binom = binomial(rat_of(m + dx) - 1, t);
        if (binom == 0) continue;
        rhs.add_scaled(apply_poly_mode(p, *entry, m + n, s), Scalar(binom));
    }
    res.rhs = rhs;
    res.pass = (res.lhs == res.rhs);
    return res;
}

ResidueSides residue_identity(const Rat& M, const Rat& N, const Rat& K) {
    Rat mk = M + K;
    if (mk.get_den() != 1) throw Error("residue identity requires M + K integral");
    long j = static_cast<long>(mpz_get_si(mk.get_num().get_mpz_t())) + 1;
    ResidueSides out;
    out.power = N + M + K + 1;
    // left side: expand (z+w)^K for |z| > |w|, take Res_z of z^M w^N (...)
    out.lhs_coeff = (j >= 0) ? binomial(K, j) : Rat(0);
    // right side: expand (z+w)^M for |w| > |z|, with the exponent shift
    Rat rhs = (j >= 0) ? binomial(M, j) : Rat(0);
    long sign_exp = static_cast<long>(mpz_get_si(mk.get_num().get_mpz_t())) - 1;
    if (((sign_exp % 2) + 2) % 2 == 1) rhs = -rhs;
    out.rhs_coeff = rhs;
    return out;
}

Scalar central_charge(const AlgebraPresentation& p) {
    State down = conformal_mode(p, HalfInt(-2), State::vacuum());
    State both = conformal_mode(p, HalfInt(2), down);
    return Scalar(2) * expectation(both);
}

} // namespace vaform
