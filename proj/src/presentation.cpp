#include "vaform/presentation.hpp"

#include <algorithm>
#include <set>

namespace vaform {

int AlgebraPresentation::max_t(int i, int j) const {
    int best = -1;
    for (auto& [key, val] : brackets) {
        if (std::get<0>(key) == i && std::get<1>(key) == j) best = std::max(best, std::get<2>(key));
    }
    return best;
}

HalfInt AlgebraPresentation::term_weight(const std::vector<NOFactor>& factors) const {
    HalfInt w(0);
    for (auto& [m, g] : factors) w += generators[static_cast<std::size_t>(g)].delta + HalfInt(m);
    return w;
}

int AlgebraPresentation::term_parity(const std::vector<NOFactor>& factors) const {
    int p = 0;
    for (auto& [m, g] : factors) p ^= generators[static_cast<std::size_t>(g)].parity;
    return p;
}

NOPoly AlgebraPresentation::conformal_poly() const {
    if (std::holds_alternative<NOPoly>(conformal)) return std::get<NOPoly>(conformal);
    NOPoly p;
    p.add(NOTerm{Scalar(1), {{0, std::get<int>(conformal)}}});
    return p;
}

NOPoly translate_poly(const NOPoly& v) {
    NOPoly out;
    for (const auto& [factors, coeff] : v.terms()) {
        // T is an even derivation; it raises one derivative order at a time.
        for (std::size_t r = 0; r < factors.size(); ++r) {
            std::vector<NOFactor> f = factors;
            ++f[r].first;
            out.add(NOTerm{coeff, f});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// LieData

namespace {

using Combo = std::vector<std::pair<GaussRat, int>>;

Combo combo_sub(const Combo& a, const Combo& b) {
    std::map<int, GaussRat> acc;
    for (auto& [c, t] : a) acc[t] += c;
    for (auto& [c, t] : b) acc[t] -= c;
    Combo out;
    for (auto& [t, c] : acc)
        if (!c.is_zero()) out.emplace_back(c, t);
    return out;
}

Combo combo_scale(const Combo& a, const GaussRat& s) {
    Combo out;
    for (auto& [c, t] : a)
        if (!(c * s).is_zero()) out.emplace_back(c * s, t);
    return out;
}

/// Invert a square GaussRat matrix by Gauss-Jordan; empty result if singular.
std::vector<std::vector<GaussRat>> invert(std::vector<std::vector<GaussRat>> m) {
    std::size_t n = m.size();
    std::vector<std::vector<GaussRat>> inv(n, std::vector<GaussRat>(n));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = GaussRat(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return {};
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        GaussRat d = m[col][col].inv();
        for (std::size_t c = 0; c < n; ++c) {
            m[col][c] *= d;
            inv[col][c] *= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            GaussRat f = m[r][col];
            for (std::size_t c = 0; c < n; ++c) {
                m[r][c] -= f * m[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

} // namespace

std::vector<std::vector<GaussRat>> LieData::dual_basis() const {
    if (form.empty()) return {};
    auto inv = invert(form);
    if (inv.empty()) throw ValidationError("bilinear form is degenerate");
    // (a_i | b^j) = delta_ij  <=>  b^j = sum_l (F^{-1})_{lj} a_l
    std::size_t n = form.size();
    std::vector<std::vector<GaussRat>> duals(n, std::vector<GaussRat>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) duals[j][l] = inv[l][j];
    return duals;
}

std::vector<std::string> LieData::validate() const {
    std::vector<std::string> report;
    std::size_t n = names.size();
    auto fail = [&](const std::string& s) { report.push_back(s); };

    if (parities.size() != n) fail("parity list size mismatch");
    if (form.size() != n) fail("form matrix size mismatch");
    for (auto& row : form)
        if (row.size() != n) fail("form matrix is not square");
    if (phi.size() != n) fail("phi matrix size mismatch");
    if (!report.empty()) return report;

    // Decide supersymmetric vs skew-supersymmetric from the first nonzero
    // entry, then validate every pair against that kind.
    bool skew = false;
    bool decided = false;
    for (std::size_t i = 0; i < n && !decided; ++i)
        for (std::size_t j = 0; j < n && !decided; ++j) {
            if (form[i][j].is_zero()) continue;
            int s_super = (parities[i] && parities[j]) ? -1 : 1;
            if (form[i][j] == form[j][i] * GaussRat(Rat(-s_super))) skew = true;
            decided = true;
        }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (parities[i] != parities[j] && !form[i][j].is_zero())
                fail("form is not even at (" + names[i] + "," + names[j] + ")");
            int sgn = (parities[i] && parities[j]) ? -1 : 1;
            if (skew) sgn = -sgn;
            GaussRat expect = form[j][i] * GaussRat(Rat(sgn));
            if (form[i][j] != expect)
                fail("form symmetry fails at (" + names[i] + "," + names[j] + ")");
        }
    }
    if (n > 0 && invert(form).empty()) fail("form is degenerate");

    auto sup = [&](std::size_t i, std::size_t j) { return (parities[i] && parities[j]) ? -1 : 1; };

    for (std::size_t i = 0; i < n; ++i) {
        // phi parity preserving
        for (std::size_t l = 0; l < n; ++l)
            if (!phi[i][l].is_zero() && parities[i] != parities[l])
                fail("phi image of " + names[i] + " is not parity homogeneous");
        // phi^2 = I with conjugation
        for (std::size_t m = 0; m < n; ++m) {
            GaussRat acc;
            for (std::size_t l = 0; l < n; ++l) acc += phi[i][l].conj() * phi[l][m];
            if (acc != ((i == m) ? GaussRat(1) : GaussRat()))
                fail("phi^2 != I at (" + names[i] + "," + names[m] + ")");
        }
    }
    // (phi x | phi y) = conj (x|y)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            GaussRat acc;
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t m = 0; m < n; ++m) acc += phi[i][l] * phi[j][m] * form[l][m];
            if (acc != form[i][j].conj())
                fail("(phi.|phi.) != conj(.|.) at (" + names[i] + "," + names[j] + ")");
        }

    if (brackets.empty()) return report; // plain superspace

    auto brk = [&](int i, int j) { return bracket(i, j); };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // bracket parity
            for (auto& [c, t] : brk(static_cast<int>(i), static_cast<int>(j)))
                if (!c.is_zero() &&
                    parities[static_cast<std::size_t>(t)] != ((parities[i] + parities[j]) % 2))
                    fail("bracket parity fails at (" + names[i] + "," + names[j] + ")");
            // skew-supersymmetry of the bracket
            Combo lhs = brk(static_cast<int>(i), static_cast<int>(j));
            Combo rhs = combo_scale(brk(static_cast<int>(j), static_cast<int>(i)),
                                    GaussRat(Rat(-sup(i, j))));
            if (!combo_sub(lhs, rhs).empty())
                fail("bracket skew-supersymmetry fails at (" + names[i] + "," + names[j] + ")");
        }

    // super-Jacobi [a,[b,c]] = [[a,b],c] + (-1)^{p(a)p(b)} [b,[a,c]]
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                std::map<int, GaussRat> acc;
                for (auto& [cb, t] : brk(static_cast<int>(b), static_cast<int>(c)))
                    for (auto& [ca, t2] : brk(static_cast<int>(a), t)) acc[t2] += cb * ca;
                for (auto& [cab, t] : brk(static_cast<int>(a), static_cast<int>(b)))
                    for (auto& [cc, t2] : brk(t, static_cast<int>(c))) acc[t2] -= cab * cc;
                for (auto& [cac, t] : brk(static_cast<int>(a), static_cast<int>(c)))
                    for (auto& [cb2, t2] : brk(static_cast<int>(b), t))
                        acc[t2] -= cb2 * cac * GaussRat(Rat(sup(a, b)));
                for (auto& [t, v] : acc)
                    if (!v.is_zero()) {
                        fail("super-Jacobi fails at (" + names[a] + "," + names[b] + "," +
                             names[c] + ")");
                        break;
                    }
            }

    // invariance ([x,y]|z) = (x|[y,z])
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                GaussRat lhs, rhs;
                for (auto& [c, t] : brk(static_cast<int>(x), static_cast<int>(y)))
                    lhs += c * form[static_cast<std::size_t>(t)][z];
                for (auto& [c, t] : brk(static_cast<int>(y), static_cast<int>(z)))
                    rhs += c * form[x][static_cast<std::size_t>(t)];
                if (lhs != rhs) {
                    fail("form invariance fails at (" + names[x] + "," + names[y] + "," +
                         names[z] + ")");
                }
            }

    // phi([x,y]) = [phi x, phi y] (conjugate linear automorphism)
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::map<int, GaussRat> acc;
            for (auto& [c, t] : brk(static_cast<int>(x), static_cast<int>(y)))
                for (std::size_t m = 0; m < n; ++m)
                    acc[static_cast<int>(m)] += c.conj() * phi[static_cast<std::size_t>(t)][m];
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t m = 0; m < n; ++m)
                    for (auto& [c, t] : brk(static_cast<int>(l), static_cast<int>(m)))
                        acc[t] -= phi[x][l] * phi[y][m] * c;
            for (auto& [t, v] : acc)
                if (!v.is_zero()) {
                    fail("phi does not preserve brackets at (" + names[x] + "," + names[y] + ")");
                    break;
                }
        }

    return report;
}

std::optional<Rat> LieData::casimir_half_eigenvalue() const {
    std::size_t n = names.size();
    if (n == 0) return std::nullopt;
    auto duals = dual_basis();
    std::optional<Rat> found;
    for (std::size_t x = 0; x < n; ++x) {
        std::map<int, GaussRat> acc;
        for (std::size_t i = 0; i < n; ++i) {
            // [b^i, [a_i, x]]
            for (auto& [c1, t1] : bracket(static_cast<int>(i), static_cast<int>(x)))
                for (std::size_t l = 0; l < n; ++l) {
                    if (duals[i][l].is_zero()) continue;
                    for (auto& [c2, t2] : bracket(static_cast<int>(l), t1))
                        acc[t2] += duals[i][l] * c1 * c2;
                }
        }
        // must equal 2 h_dual * a_x
        for (auto& [t, v] : acc) {
            if (v.is_zero()) continue;
            if (t != static_cast<int>(x)) return std::nullopt;
        }
        GaussRat ev = acc.count(static_cast<int>(x)) ? acc[static_cast<int>(x)] : GaussRat();
        if (!ev.is_real()) return std::nullopt;
        Rat half = ev.re / 2;
        if (found && *found != half) return std::nullopt;
        found = half;
    }
    return found;
}

// ---------------------------------------------------------------------------
// Builders

namespace {

void require_valid(const std::vector<std::string>& report, const std::string& what) {
    if (!report.empty()) throw ValidationError(what + ": " + report.front());
}

std::vector<GeneratorDecl> space_generators(const LieData& space, HalfInt delta) {
    std::vector<GeneratorDecl> gens;
    for (int i = 0; i < space.dim(); ++i)
        gens.push_back({space.names[static_cast<std::size_t>(i)], delta,
                        space.parities[static_cast<std::size_t>(i)],
                        space.phi[static_cast<std::size_t>(i)]});
    return gens;
}

} // namespace

AlgebraPresentation build_free_fermion(const LieData& space) {
    if (space.dim() == 0) throw ValidationError("free fermion space is zero-dimensional");
    require_valid(space.validate(), "free fermion space");
    AlgebraPresentation p;
    p.generators = space_generators(space, HalfInt::half());
    for (int i = 0; i < space.dim(); ++i)
        for (int j = 0; j < space.dim(); ++j) {
            GaussRat v = space.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (!v.is_zero()) p.brackets[{i, j, 0}].add(NOTerm{Scalar(v), {}});
        }
    // L = 1/2 sum :(T b^i) a^i:
    auto duals = space.dual_basis();
    NOPoly L;
    for (int i = 0; i < space.dim(); ++i)
        for (int l = 0; l < space.dim(); ++l) {
            GaussRat c = duals[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
            if (!c.is_zero())
                L.add(NOTerm{Scalar(c * GaussRat(make_rat(1, 2))), {{1, l}, {0, i}}});
        }
    p.conformal = L;
    int n_even = 0, n_odd = 0;
    for (int par : space.parities) (par ? n_odd : n_even)++;
    p.declared_central_charge = Scalar(make_rat(n_odd - n_even, 2));
    return p;
}

AlgebraPresentation build_free_boson(const LieData& space) {
    if (space.dim() == 0) throw ValidationError("free boson space is zero-dimensional");
    require_valid(space.validate(), "free boson space");
    AlgebraPresentation p;
    p.generators = space_generators(space, HalfInt(1));
    for (int i = 0; i < space.dim(); ++i)
        for (int j = 0; j < space.dim(); ++j) {
            GaussRat v = space.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (!v.is_zero()) p.brackets[{i, j, 1}].add(NOTerm{Scalar(v), {}});
        }
    // L = 1/2 sum :b^i a^i:
    auto duals = space.dual_basis();
    NOPoly L;
    for (int i = 0; i < space.dim(); ++i)
        for (int l = 0; l < space.dim(); ++l) {
            GaussRat c = duals[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
            if (!c.is_zero())
                L.add(NOTerm{Scalar(c * GaussRat(make_rat(1, 2))), {{0, l}, {0, i}}});
        }
    p.conformal = L;
    int n_even = 0, n_odd = 0;
    for (int par : space.parities) (par ? n_odd : n_even)++;
    p.declared_central_charge = Scalar(make_rat(n_even - n_odd, 1));
    return p;
}

AlgebraPresentation build_affine(const LieData& g, std::optional<Rat> h_dual) {
    if (g.dim() == 0) throw ValidationError("affine: zero-dimensional Lie algebra");
    require_valid(g.validate(), "affine Lie data");
    std::optional<Rat> casimir = g.casimir_half_eigenvalue();
    if (h_dual && casimir && *h_dual != *casimir)
        throw ValidationError("affine: declared h_dual " + rat_str(*h_dual) +
                              " contradicts Casimir eigenvalue " + rat_str(*casimir * 2));
    if (!h_dual) {
        if (!casimir)
            throw ValidationError("affine: Casimir is not scalar; supply h_dual explicitly");
        h_dual = casimir;
    }

    AlgebraPresentation p;
    p.generators = space_generators(g, HalfInt(1));
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j) {
            NOPoly t0;
            for (auto& [c, target] : g.bracket(i, j))
                t0.add(NOTerm{Scalar(c), {{0, target}}});
            if (!t0.is_zero()) p.brackets[{i, j, 0}] = t0;
            GaussRat v = g.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (!v.is_zero())
                p.brackets[{i, j, 1}].add(NOTerm{Scalar(v) * Scalar::k(), {}});
        }
    // Sugawara L = 1/(2(k+h_dual)) sum :b^i a^i:
    Scalar pref = Scalar(1) / (Scalar(2) * (Scalar::k() + Scalar(*h_dual)));
    auto duals = g.dual_basis();
    NOPoly L;
    for (int i = 0; i < g.dim(); ++i)
        for (int l = 0; l < g.dim(); ++l) {
            GaussRat c = duals[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
            if (!c.is_zero()) L.add(NOTerm{Scalar(c) * pref, {{0, l}, {0, i}}});
        }
    p.conformal = L;
    int sdim = 0;
    for (int par : g.parities) sdim += par ? -1 : 1;
    p.declared_central_charge =
        Scalar(make_rat(sdim, 1)) * Scalar::k() / (Scalar::k() + Scalar(*h_dual));
    return p;
}

AlgebraPresentation build_virasoro(const Scalar& c) {
    AlgebraPresentation p;
    p.generators.push_back({"L", HalfInt(2), 0, {GaussRat(1)}});
    p.brackets[{0, 0, 0}].add(NOTerm{Scalar(1), {{1, 0}}});
    p.brackets[{0, 0, 1}].add(NOTerm{Scalar(2), {{0, 0}}});
    Scalar half_c = c * Scalar(make_rat(1, 2));
    if (!half_c.is_zero()) p.brackets[{0, 0, 3}].add(NOTerm{half_c, {}});
    p.conformal = 0;
    p.declared_central_charge = c;
    return p;
}

AlgebraPresentation build_minimal_w(const MinimalWDatum& d) {
    require_valid(d.validate(), "minimal W datum");
    const int nj = d.gnat.dim();
    const int ng = static_cast<int>(d.ghalf_names.size());
    const int Lix = nj + ng;
    const int n = nj + ng + 1;

    AlgebraPresentation p;
    auto pad = [&](const std::vector<GaussRat>& row, int offset) {
        std::vector<GaussRat> full(static_cast<std::size_t>(n));
        for (std::size_t l = 0; l < row.size(); ++l) full[static_cast<std::size_t>(offset) + l] = row[l];
        return full;
    };
    for (int i = 0; i < nj; ++i)
        p.generators.push_back({"J" + d.gnat.names[static_cast<std::size_t>(i)], HalfInt(1),
                                d.gnat.parities[static_cast<std::size_t>(i)],
                                pad(d.gnat.phi[static_cast<std::size_t>(i)], 0)});
    for (int r = 0; r < ng; ++r)
        p.generators.push_back({"G" + d.ghalf_names[static_cast<std::size_t>(r)],
                                HalfInt::from_twice(3), d.ghalf_parities[static_cast<std::size_t>(r)],
                                pad(d.ghalf_phi[static_cast<std::size_t>(r)], nj)});
    {
        std::vector<GaussRat> lrow(static_cast<std::size_t>(n));
        lrow[static_cast<std::size_t>(Lix)] = GaussRat(1);
        p.generators.push_back({"L", HalfInt(2), 0, lrow});
    }

    auto sup = [&](int a, int b) {
        return Rat(d.gnat.parities[static_cast<std::size_t>(a)] &&
                           d.ghalf_parities[static_cast<std::size_t>(b)]
                       ? -1
                       : 1);
    };

    // (1) [J^a J^b]: J^{[a,b]} at t=0, level term at t=1
    for (int i = 0; i < nj; ++i)
        for (int j = 0; j < nj; ++j) {
            NOPoly t0;
            for (auto& [c, target] : d.gnat.bracket(i, j)) t0.add(NOTerm{Scalar(c), {{0, target}}});
            if (!t0.is_zero()) p.brackets[{i, j, 0}] = t0;
            GaussRat v = d.gnat.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (!v.is_zero()) {
                Rat hi = d.ideal_h_dual[static_cast<std::size_t>(
                    d.ideal_of[static_cast<std::size_t>(i)])];
                Scalar ki = Scalar::k() + Scalar((d.h_dual - hi) / 2);
                p.brackets[{i, j, 1}].add(NOTerm{Scalar(v) * ki, {}});
            }
        }

    // (2) [J^a G^u] = G^{[a,u]} and the skew direction
    for (int a = 0; a < nj; ++a)
        for (int u = 0; u < ng; ++u) {
            NOPoly val;
            for (auto& [c, target] : d.act(a, u)) val.add(NOTerm{Scalar(c), {{0, nj + target}}});
            if (val.is_zero()) continue;
            p.brackets[{a, nj + u, 0}] = val;
            NOPoly rev;
            rev.add_scaled(val, Scalar(-sup(a, u)));
            p.brackets[{nj + u, a, 0}] = rev;
        }

    // [v, a_l] in ghalf coordinates
    auto act_rev = [&](int v, int l) {
        std::vector<GaussRat> out(static_cast<std::size_t>(ng));
        for (auto& [c, target] : d.act(l, v))
            out[static_cast<std::size_t>(target)] += c * GaussRat(-sup(l, v));
        return out;
    };
    auto pair_uv = [&](int r, int s) { return d.pairing[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)]; };

    // (3) [G^u G^v]
    for (int u = 0; u < ng; ++u)
        for (int v = 0; v < ng; ++v) {
            GaussRat huv = pair_uv(u, v);
            NOPoly t0, t1;
            // -2(k+h_dual)<u,v> L
            if (!huv.is_zero()) {
                t0.add(NOTerm{Scalar(-2) * (Scalar::k() + Scalar(d.h_dual)) * Scalar(huv),
                              {{0, Lix}}});
                // <u,v> sum_alpha :J^{a^alpha} J^{a_alpha}:
                for (int al = 0; al < nj; ++al)
                    for (int l = 0; l < nj; ++l) {
                        GaussRat c = d.dual_basis[static_cast<std::size_t>(al)][static_cast<std::size_t>(l)] * huv;
                        if (!c.is_zero()) t0.add(NOTerm{Scalar(c), {{0, l}, {0, al}}});
                    }
            }
            // coefficients q_{al,be} = <[a_al, u], [v, a^be]>
            std::vector<std::vector<GaussRat>> q(static_cast<std::size_t>(nj),
                                                 std::vector<GaussRat>(static_cast<std::size_t>(nj)));
            for (int al = 0; al < nj; ++al)
                for (int be = 0; be < nj; ++be) {
                    GaussRat acc;
                    for (auto& [c1, w1] : d.act(al, u)) {
                        for (int l = 0; l < nj; ++l) {
                            GaussRat dl = d.dual_basis[static_cast<std::size_t>(be)][static_cast<std::size_t>(l)];
                            if (dl.is_zero()) continue;
                            auto rv = act_rev(v, l);
                            for (int w2 = 0; w2 < ng; ++w2)
                                acc += c1 * dl * rv[static_cast<std::size_t>(w2)] * pair_uv(w1, w2);
                        }
                    }
                    q[static_cast<std::size_t>(al)][static_cast<std::size_t>(be)] = acc;
                }
            // 2 sum q_{al,be} :J^{a^al} J^{a_be}:  and  2 lambda sum q J^{[a^al, a_be]}
            for (int al = 0; al < nj; ++al)
                for (int be = 0; be < nj; ++be) {
                    GaussRat qv = q[static_cast<std::size_t>(al)][static_cast<std::size_t>(be)];
                    if (qv.is_zero()) continue;
                    for (int l = 0; l < nj; ++l) {
                        GaussRat dl = d.dual_basis[static_cast<std::size_t>(al)][static_cast<std::size_t>(l)];
                        if (dl.is_zero()) continue;
                        t0.add(NOTerm{Scalar(GaussRat(Rat(2)) * qv * dl), {{0, l}, {0, be}}});
                        for (auto& [cb, target] : d.gnat.bracket(l, be))
                            t1.add(NOTerm{Scalar(GaussRat(Rat(2)) * qv * dl * cb), {{0, target}}});
                    }
                }
            // x(u,v) = [[e_theta, u], v]^natural = sum_al <u, [v, a^al]> a_al
            std::vector<GaussRat> xuv(static_cast<std::size_t>(nj));
            for (int al = 0; al < nj; ++al) {
                GaussRat acc;
                for (int l = 0; l < nj; ++l) {
                    GaussRat dl = d.dual_basis[static_cast<std::size_t>(al)][static_cast<std::size_t>(l)];
                    if (dl.is_zero()) continue;
                    auto rv = act_rev(v, l);
                    for (int w2 = 0; w2 < ng; ++w2)
                        acc += dl * rv[static_cast<std::size_t>(w2)] * pair_uv(u, w2);
                }
                xuv[static_cast<std::size_t>(al)] = acc;
            }
            // 2(k+1)(d + 2 lambda) J^{x(u,v)}
            Scalar kp1 = Scalar(2) * (Scalar::k() + Scalar(1));
            for (int al = 0; al < nj; ++al) {
                if (xuv[static_cast<std::size_t>(al)].is_zero()) continue;
                Scalar c = kp1 * Scalar(xuv[static_cast<std::size_t>(al)]);
                t0.add(NOTerm{c, {{1, al}}});
                t1.add(NOTerm{c * Scalar(2), {{0, al}}});
            }
            if (!t0.is_zero()) p.brackets[{nj + u, nj + v, 0}] = t0;
            if (!t1.is_zero()) p.brackets[{nj + u, nj + v, 1}] = t1;
            // 2 p(k) lambda^2 <u,v>  =>  G_(2)G = 4 p(k) <u,v> vacuum
            if (!huv.is_zero())
                p.brackets[{nj + u, nj + v, 2}].add(
                    NOTerm{Scalar(Poly(GaussRat(Rat(4))) * d.p_k, Poly(GaussRat(1))) * Scalar(huv),
                           {}});
        }

    // L-brackets: J and G are primary; [L L] is Virasoro.
    for (int x = 0; x < nj + ng; ++x) {
        HalfInt dx = p.generators[static_cast<std::size_t>(x)].delta;
        p.brackets[{Lix, x, 0}].add(NOTerm{Scalar(1), {{1, x}}});
        p.brackets[{Lix, x, 1}].add(NOTerm{Scalar(make_rat(dx.twice, 2)), {{0, x}}});
        p.brackets[{x, Lix, 0}].add(NOTerm{Scalar(make_rat(dx.twice - 2, 2)), {{1, x}}});
        p.brackets[{x, Lix, 1}].add(NOTerm{Scalar(make_rat(dx.twice, 2)), {{0, x}}});
    }
    p.brackets[{Lix, Lix, 0}].add(NOTerm{Scalar(1), {{1, Lix}}});
    p.brackets[{Lix, Lix, 1}].add(NOTerm{Scalar(2), {{0, Lix}}});
    Scalar c_k = Scalar(d.sdim) * Scalar::k() / (Scalar::k() + Scalar(d.h_dual)) -
                 Scalar(6) * Scalar::k() + Scalar(d.h_dual) - Scalar(4);
    p.brackets[{Lix, Lix, 3}].add(NOTerm{c_k * Scalar(make_rat(1, 2)), {}});
    p.conformal = Lix;
    p.declared_central_charge = c_k;
    return p;
}

AlgebraPresentation tensor(const AlgebraPresentation& a, const AlgebraPresentation& b) {
    AlgebraPresentation p;
    int na = a.num_generators(), nb = b.num_generators();
    int n = na + nb;
    std::set<std::string> used;
    auto unique_name = [&](std::string base) {
        std::string name = base;
        int suffix = 2;
        while (used.count(name)) name = base + "." + std::to_string(suffix++);
        used.insert(name);
        return name;
    };
    for (int i = 0; i < na; ++i) {
        GeneratorDecl g = a.generators[static_cast<std::size_t>(i)];
        g.name = unique_name(g.name);
        g.phi_image.resize(static_cast<std::size_t>(n));
        p.generators.push_back(std::move(g));
    }
    for (int i = 0; i < nb; ++i) {
        const GeneratorDecl& src = b.generators[static_cast<std::size_t>(i)];
        GeneratorDecl g;
        g.name = unique_name(src.name);
        g.delta = src.delta;
        g.parity = src.parity;
        g.phi_image.assign(static_cast<std::size_t>(n), GaussRat());
        for (int l = 0; l < nb; ++l)
            g.phi_image[static_cast<std::size_t>(na + l)] = src.phi_image[static_cast<std::size_t>(l)];
        p.generators.push_back(std::move(g));
    }
    auto shift_poly = [&](const NOPoly& src, int offset) {
        NOPoly out;
        for (auto& [factors, coeff] : src.terms()) {
            std::vector<NOFactor> f = factors;
            for (auto& [m, g] : f) g += offset;
            out.add(NOTerm{coeff, f});
        }
        return out;
    };
    for (auto& [key, val] : a.brackets) p.brackets[key] = val;
    for (auto& [key, val] : b.brackets)
        p.brackets[{std::get<0>(key) + na, std::get<1>(key) + na, std::get<2>(key)}] =
            shift_poly(val, na);
    NOPoly L = a.conformal_poly();
    L.add_scaled(shift_poly(b.conformal_poly(), na), Scalar(1));
    p.conformal = L;
    if (a.declared_central_charge && b.declared_central_charge)
        p.declared_central_charge = *a.declared_central_charge + *b.declared_central_charge;
    return p;
}

// ---------------------------------------------------------------------------
// Validation of presentations

std::vector<std::string> validate(const AlgebraPresentation& p) {
    std::vector<std::string> report;
    auto fail = [&](const std::string& s) { report.push_back(s); };
    int n = p.num_generators();

    for (int i = 0; i < n; ++i) {
        const GeneratorDecl& g = p.generators[static_cast<std::size_t>(i)];
        if (g.delta <= HalfInt(0)) fail("generator " + g.name + " has non-positive weight");
        if (g.parity != 0 && g.parity != 1) fail("generator " + g.name + " has invalid parity");
        if (static_cast<int>(g.phi_image.size()) != n)
            fail("generator " + g.name + " has malformed phi image");
    }
    if (!report.empty()) return report;

    for (int i = 0; i < n; ++i) {
        const GeneratorDecl& g = p.generators[static_cast<std::size_t>(i)];
        for (int l = 0; l < n; ++l) {
            if (g.phi_image[static_cast<std::size_t>(l)].is_zero()) continue;
            const GeneratorDecl& h = p.generators[static_cast<std::size_t>(l)];
            if (h.delta != g.delta || h.parity != g.parity)
                fail("phi image of " + g.name + " is not weight/parity homogeneous");
        }
        for (int m = 0; m < n; ++m) {
            GaussRat acc;
            for (int l = 0; l < n; ++l)
                acc += g.phi_image[static_cast<std::size_t>(l)].conj() *
                       p.generators[static_cast<std::size_t>(l)].phi_image[static_cast<std::size_t>(m)];
            if (acc != ((i == m) ? GaussRat(1) : GaussRat()))
                fail("phi^2 != I at (" + g.name + "," +
                     p.generators[static_cast<std::size_t>(m)].name + ")");
        }
    }

    NOPoly L = p.conformal_poly();
    // the zero-generator presentation has L = 0 and c = 0
    if (L.is_zero() && n > 0) fail("conformal vector is zero");
    for (auto& [factors, coeff] : L.terms()) {
        (void)coeff;
        if (p.term_weight(factors) != HalfInt(2)) fail("conformal vector is not of weight 2");
        if (p.term_parity(factors) != 0) fail("conformal vector is not even");
    }

    for (auto& [key, val] : p.brackets) {
        auto [i, j, t] = key;
        if (i < 0 || i >= n || j < 0 || j >= n || t < 0) {
            fail("bracket entry with invalid indices");
            continue;
        }
        HalfInt want = p.generators[static_cast<std::size_t>(i)].delta +
                       p.generators[static_cast<std::size_t>(j)].delta - HalfInt(t + 1);
        int wantp = (p.generators[static_cast<std::size_t>(i)].parity +
                     p.generators[static_cast<std::size_t>(j)].parity) %
                    2;
        if (want < HalfInt(0) && !val.is_zero()) {
            fail("bracket (" + std::to_string(i) + "," + std::to_string(j) + "," +
                 std::to_string(t) + ") has negative prescribed weight");
            continue;
        }
        for (auto& [factors, coeff] : val.terms()) {
            (void)coeff;
            if (p.term_weight(factors) != want)
                fail("bracket (" + std::to_string(i) + "," + std::to_string(j) + "," +
                     std::to_string(t) + ") is weight-inhomogeneous");
            if (p.term_parity(factors) != wantp)
                fail("bracket (" + std::to_string(i) + "," + std::to_string(j) + "," +
                     std::to_string(t) + ") has wrong parity");
        }
    }

    // Cross-check both stored directions against lambda-bracket skew-symmetry:
    // a_(t) b = -p(a,b) sum_m (-1)^{t+m} T^m/m! (b_(t+m) a).
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int bound = std::max(p.max_t(i, j), p.max_t(j, i));
            for (int t = 0; t <= bound; ++t) {
                NOPoly expect;
                Scalar factorial(1);
                for (int m = 0; t + m <= bound; ++m) {
                    if (m > 0) factorial *= Scalar(m);
                    const NOPoly* rev = p.bracket(j, i, t + m);
                    if (!rev) continue;
                    NOPoly shifted = *rev;
                    for (int d = 0; d < m; ++d) shifted = translate_poly(shifted);
                    int sign = ((t + m) % 2 == 0) ? 1 : -1;
                    expect.add_scaled(shifted,
                                      Scalar(make_rat(-sign * p.supersign(i, j), 1)) / factorial);
                }
                const NOPoly* fwd = p.bracket(i, j, t);
                NOPoly lhs = fwd ? *fwd : NOPoly();
                if (lhs != expect)
                    fail("bracket table skew-symmetry fails at (" + std::to_string(i) + "," +
                         std::to_string(j) + "," + std::to_string(t) + ")");
            }
        }

    return report;
}

AlgebraPresentation specialize_presentation(const AlgebraPresentation& p, const Rat& k0) {
    AlgebraPresentation out = p;
    auto spec_poly = [&](const NOPoly& src) {
        NOPoly res;
        for (auto& [factors, coeff] : src.terms())
            res.add(NOTerm{Scalar(specialize(coeff, k0)), factors});
        return res;
    };
    out.brackets.clear();
    for (auto& [key, val] : p.brackets) {
        NOPoly sp = spec_poly(val);
        if (!sp.is_zero()) out.brackets[key] = sp;
    }
    if (std::holds_alternative<NOPoly>(p.conformal))
        out.conformal = spec_poly(std::get<NOPoly>(p.conformal));
    if (p.declared_central_charge)
        out.declared_central_charge = Scalar(specialize(*p.declared_central_charge, k0));
    return out;
}

bool same_structure(const AlgebraPresentation& p, const AlgebraPresentation& q) {
    if (p.num_generators() != q.num_generators()) return false;
    for (int i = 0; i < p.num_generators(); ++i) {
        const auto& a = p.generators[static_cast<std::size_t>(i)];
        const auto& b = q.generators[static_cast<std::size_t>(i)];
        if (a.delta != b.delta || a.parity != b.parity || a.phi_image != b.phi_image) return false;
    }
    if (p.brackets != q.brackets) return false;
    return p.conformal_poly() == q.conformal_poly();
}

// ---------------------------------------------------------------------------
// MinimalWDatum

std::vector<std::string> MinimalWDatum::validate() const {
    std::vector<std::string> report;
    auto fail = [&](const std::string& s) { report.push_back(s); };
    const std::size_t nj = static_cast<std::size_t>(gnat.dim());
    const std::size_t ng = ghalf_names.size();

    for (auto& s : gnat.validate()) report.push_back("gnat: " + s);
    if (ideal_of.size() != nj) fail("ideal assignment size mismatch");
    for (int ix : ideal_of)
        if (ix < 0 || static_cast<std::size_t>(ix) >= ideal_h_dual.size())
            fail("ideal index out of range");
    if (ghalf_parities.size() != ng || ghalf_phi.size() != ng) fail("ghalf size mismatch");
    if (pairing.size() != ng) fail("pairing size mismatch");
    for (auto& row : pairing)
        if (row.size() != ng) fail("pairing is not square");
    if (dual_basis.size() != nj) fail("dual basis size mismatch");
    if (p_k.degree() != 2 || !p_k.is_monic()) fail("p(k) must be a monic quadratic");
    for (int dd = 0; dd <= p_k.degree(); ++dd)
        if (!p_k.coeff(dd).is_real()) fail("p(k) must have real coefficients");
    if (!report.empty()) return report;

    auto sup = [&](int pa, int pb) { return (pa && pb) ? -1 : 1; };

    // ideals: brackets and form vanish between different ideals
    for (std::size_t i = 0; i < nj; ++i)
        for (std::size_t j = 0; j < nj; ++j) {
            if (ideal_of[i] == ideal_of[j]) continue;
            if (!gnat.form[i][j].is_zero()) fail("form couples distinct ideals");
            if (!gnat.bracket(static_cast<int>(i), static_cast<int>(j)).empty())
                fail("bracket couples distinct ideals");
        }

    // dual basis: (a_i | a^al) = delta
    for (std::size_t al = 0; al < nj; ++al)
        for (std::size_t i = 0; i < nj; ++i) {
            GaussRat acc;
            for (std::size_t l = 0; l < nj; ++l) acc += dual_basis[al][l] * gnat.form[i][l];
            if (acc != ((al == i) ? GaussRat(1) : GaussRat()))
                fail("dual basis row " + std::to_string(al) + " fails against basis element " +
                     std::to_string(i));
        }

    // pairing: even, skew-supersymmetric
    for (std::size_t r = 0; r < ng; ++r)
        for (std::size_t s = 0; s < ng; ++s) {
            if (ghalf_parities[r] != ghalf_parities[s] && !pairing[r][s].is_zero())
                fail("pairing is not even");
            GaussRat expect =
                pairing[s][r] * GaussRat(Rat(-sup(ghalf_parities[r], ghalf_parities[s])));
            if (pairing[r][s] != expect) fail("pairing is not skew-supersymmetric");
        }

    // action parity and representation property
    for (std::size_t a = 0; a < nj; ++a)
        for (std::size_t u = 0; u < ng; ++u)
            for (auto& [c, t] : act(static_cast<int>(a), static_cast<int>(u)))
                if (!c.is_zero() &&
                    ghalf_parities[static_cast<std::size_t>(t)] !=
                        ((gnat.parities[a] + ghalf_parities[u]) % 2))
                    fail("action parity fails at (" + gnat.names[a] + "," + ghalf_names[u] + ")");
    for (std::size_t a = 0; a < nj; ++a)
        for (std::size_t b = 0; b < nj; ++b)
            for (std::size_t u = 0; u < ng; ++u) {
                std::map<int, GaussRat> acc;
                for (auto& [c1, t1] : act(static_cast<int>(b), static_cast<int>(u)))
                    for (auto& [c2, t2] : act(static_cast<int>(a), t1)) acc[t2] += c1 * c2;
                for (auto& [c1, t1] : act(static_cast<int>(a), static_cast<int>(u)))
                    for (auto& [c2, t2] : act(static_cast<int>(b), t1))
                        acc[t2] -= c1 * c2 * GaussRat(Rat(sup(gnat.parities[a], gnat.parities[b])));
                for (auto& [cb, tb] : gnat.bracket(static_cast<int>(a), static_cast<int>(b)))
                    for (auto& [c2, t2] : act(tb, static_cast<int>(u))) acc[t2] -= cb * c2;
                for (auto& [t, v] : acc)
                    if (!v.is_zero()) {
                        fail("g-natural action fails the module law at (" + gnat.names[a] + "," +
                             gnat.names[b] + "," + ghalf_names[u] + ")");
                        break;
                    }
            }

    // pairing invariance: <[a,u],v> + (-1)^{p(a)p(u)} <u,[a,v]> = 0
    for (std::size_t a = 0; a < nj; ++a)
        for (std::size_t u = 0; u < ng; ++u)
            for (std::size_t v = 0; v < ng; ++v) {
                GaussRat acc;
                for (auto& [c, t] : act(static_cast<int>(a), static_cast<int>(u)))
                    acc += c * pairing[static_cast<std::size_t>(t)][v];
                for (auto& [c, t] : act(static_cast<int>(a), static_cast<int>(v)))
                    acc += c * pairing[u][static_cast<std::size_t>(t)] *
                           GaussRat(Rat(sup(gnat.parities[a], ghalf_parities[u])));
                if (!acc.is_zero())
                    fail("pairing is not g-natural invariant at (" + gnat.names[a] + "," +
                         ghalf_names[u] + "," + ghalf_names[v] + ")");
            }

    // phi on ghalf: involution, parity preserving, pairing-compatible,
    // action-compatible
    for (std::size_t r = 0; r < ng; ++r) {
        for (std::size_t l = 0; l < ng; ++l)
            if (!ghalf_phi[r][l].is_zero() && ghalf_parities[r] != ghalf_parities[l])
                fail("ghalf phi is not parity preserving");
        for (std::size_t m = 0; m < ng; ++m) {
            GaussRat acc;
            for (std::size_t l = 0; l < ng; ++l) acc += ghalf_phi[r][l].conj() * ghalf_phi[l][m];
            if (acc != ((r == m) ? GaussRat(1) : GaussRat())) fail("ghalf phi^2 != I");
        }
    }
    for (std::size_t r = 0; r < ng; ++r)
        for (std::size_t s = 0; s < ng; ++s) {
            GaussRat acc;
            for (std::size_t l = 0; l < ng; ++l)
                for (std::size_t m = 0; m < ng; ++m)
                    acc += ghalf_phi[r][l] * ghalf_phi[s][m] * pairing[l][m];
            if (acc != pairing[r][s].conj()) fail("ghalf phi is not pairing-compatible");
        }
    for (std::size_t a = 0; a < nj; ++a)
        for (std::size_t u = 0; u < ng; ++u) {
            std::map<int, GaussRat> acc;
            for (auto& [c, t] : act(static_cast<int>(a), static_cast<int>(u)))
                for (std::size_t m = 0; m < ng; ++m)
                    acc[static_cast<int>(m)] += c.conj() * ghalf_phi[static_cast<std::size_t>(t)][m];
            for (std::size_t l = 0; l < nj; ++l)
                for (std::size_t m = 0; m < ng; ++m) {
                    if (gnat.phi[a][l].is_zero() || ghalf_phi[u][m].is_zero()) continue;
                    for (auto& [c, t] : act(static_cast<int>(l), static_cast<int>(m)))
                        acc[t] -= gnat.phi[a][l] * ghalf_phi[u][m] * c;
                }
            for (auto& [t, v] : acc)
                if (!v.is_zero()) {
                    fail("phi does not intertwine the ghalf action at (" + gnat.names[a] + "," +
                         ghalf_names[u] + ")");
                    break;
                }
        }

    return report;
}

} // namespace vaform
