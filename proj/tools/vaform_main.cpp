#include <CLI11.hpp>

#include <iostream>
#include <random>

#include "vaform/io.hpp"

using namespace vaform;

namespace {

struct Options {
    std::string config_path;
    std::string weight = "0";
    std::string max_weight = "2";
    std::vector<std::string> levels;
    std::string format = "table";
    unsigned long seed = 0;
    bool cap_override = false;
    std::string suite = "all";
};

constexpr int kWeightCap = 5;

HalfInt checked_weight(const std::string& text, bool cap_override) {
    HalfInt w = parse_halfint(text);
    if (w < HalfInt(0)) throw ParseError("negative weight");
    if (!cap_override && w > HalfInt(kWeightCap))
        throw ParseError("weight " + w.str() + " exceeds the cap " +
                         std::to_string(kWeightCap) + " (use --cap-override)");
    return w;
}

std::vector<Rat> parse_levels(const std::vector<std::string>& levels) {
    std::vector<Rat> out;
    for (auto& l : levels) out.push_back(parse_rat(l));
    return out;
}

std::vector<HalfInt> weights_up_to(HalfInt max) {
    std::vector<HalfInt> out;
    for (HalfInt w(0); w <= max; w = HalfInt::from_twice(w.twice + 1)) out.push_back(w);
    return out;
}

int cmd_describe(const Options& opt) {
    LoadedConfig cfg = load_config_file(opt.config_path);
    const AlgebraPresentation& p = cfg.presentation;
    std::cout << "type: " << cfg.type << "\n";
    std::cout << "generators:\n";
    for (int i = 0; i < p.num_generators(); ++i) {
        const GeneratorDecl& g = p.generators[static_cast<std::size_t>(i)];
        std::cout << "  " << g.name << "  delta=" << g.delta.str() << "  parity=" << g.parity
                  << "  phi(" << g.name << ")=";
        std::string img;
        for (int l = 0; l < p.num_generators(); ++l) {
            const GaussRat& c = g.phi_image[static_cast<std::size_t>(l)];
            if (c.is_zero()) continue;
            if (!img.empty()) img += " + ";
            img += "(" + c.str() + ")*" + p.generators[static_cast<std::size_t>(l)].name;
        }
        std::cout << (img.empty() ? "0" : img) << "\n";
    }
    auto report = validate(p);
    if (report.empty()) {
        std::cout << "validation: ok\n";
    } else {
        std::cout << "validation: " << report.size() << " problem(s)\n";
        for (auto& r : report) std::cout << "  - " << r << "\n";
    }
    std::cout << "central charge: " << central_charge(p).str() << "\n";
    if (cfg.type == "free_fermion") {
        bool purely_odd = true;
        for (auto& g : p.generators) purely_odd = purely_odd && g.parity == 1;
        std::cout << "unitary candidate (A purely odd): " << (purely_odd ? "true" : "false")
                  << "\n";
    }
    return report.empty() ? 0 : 1;
}

void emit_gram(const AlgebraPresentation& p, const GramMatrix& g, std::optional<Rat> level,
               const std::string& format) {
    GramData data = gram_data(p, g, level);
    if (format == "csv") {
        std::cout << gram_to_csv(data);
    } else if (format == "json") {
        std::cout << gram_to_json(data).dump(2) << "\n";
    } else {
        std::cout << "weight " << data.weight;
        if (level) std::cout << " at k=" << rat_str(*level);
        std::cout << " (dim " << data.basis.size() << ")\n";
        for (std::size_t r = 0; r < data.basis.size(); ++r) {
            std::cout << "  " << data.basis[r] << ":";
            for (auto& e : data.entries[r]) std::cout << "  " << e;
            std::cout << "\n";
        }
    }
}

int cmd_gram(const Options& opt) {
    LoadedConfig cfg = load_config_file(opt.config_path);
    HalfInt w = checked_weight(opt.weight, opt.cap_override);
    GramMatrix g = gram(cfg.presentation, w);
    std::vector<Rat> levels = parse_levels(opt.levels);
    if (levels.empty()) {
        emit_gram(cfg.presentation, g, std::nullopt, opt.format);
    } else {
        for (auto& k0 : levels) emit_gram(cfg.presentation, g, k0, opt.format);
    }
    return 0;
}

int cmd_unitarity(const Options& opt) {
    LoadedConfig cfg = load_config_file(opt.config_path);
    HalfInt max_w = checked_weight(opt.max_weight, opt.cap_override);
    std::vector<Rat> levels = parse_levels(opt.levels);
    if (levels.empty()) levels.push_back(Rat(0));
    for (auto& k0 : levels) {
        UnitarityReport rep = unitarity_report(cfg.presentation, max_w, k0);
        if (opt.format == "json") {
            nlohmann::json j;
            j["level"] = rat_str(k0);
            j["verdict"] = rep.verdict_str();
            if (rep.first_failure) j["first_failure"] = rep.first_failure->str();
            nlohmann::json weights = nlohmann::json::array();
            for (auto& wv : rep.weights) {
                nlohmann::json wj = signature_to_json(cfg.presentation, wv.sig);
                wj["weight"] = wv.weight.str();
                wj["dim"] = wv.dim;
                weights.push_back(wj);
            }
            j["weights"] = weights;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "level k=" << rat_str(k0) << "\n";
            for (auto& wv : rep.weights)
                std::cout << "  w=" << wv.weight.str() << "  dim=" << wv.dim << "  (+"
                          << wv.sig.n_plus << ", 0:" << wv.sig.n_zero << ", -"
                          << wv.sig.n_minus << ")\n";
            std::cout << "  verdict: " << rep.verdict_str();
            if (rep.first_failure)
                std::cout << " (first failure at w=" << rep.first_failure->str() << ")";
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_collapsing(const Options& opt) {
    LoadedConfig cfg = load_config_file(opt.config_path);
    HalfInt max_w = checked_weight(opt.max_weight, opt.cap_override);
    CollapsingReport rep = collapsing_candidates(cfg.presentation, max_w);
    std::vector<Rat> pk_roots;
    if (cfg.datum) pk_roots = rational_roots(cfg.datum->p_k);
    if (opt.format == "json") {
        nlohmann::json j;
        nlohmann::json cands = nlohmann::json::array();
        for (auto& cand : rep.candidates) {
            nlohmann::json cj;
            cj["level"] = rat_str(cand.level);
            std::vector<std::string> ws;
            for (auto& w : cand.degenerate_weights) ws.push_back(w.str());
            cj["weights"] = ws;
            nlohmann::json kd;
            for (auto& [w, dim] : cand.kernel_dims) kd[w.str()] = dim;
            cj["kernel_dims"] = kd;
            if (cfg.datum)
                cj["p_k_root"] = std::find(pk_roots.begin(), pk_roots.end(), cand.level) !=
                                 pk_roots.end();
            cands.push_back(cj);
        }
        j["candidates"] = cands;
        std::vector<std::string> degen;
        for (auto& w : rep.structurally_degenerate) degen.push_back(w.str());
        j["structurally_degenerate"] = degen;
        std::vector<std::string> poles;
        for (auto& r : rep.excluded_poles) poles.push_back(rat_str(r));
        j["excluded_poles"] = poles;
        std::cout << j.dump(2) << "\n";
    } else {
        if (rep.candidates.empty()) std::cout << "no collapsing candidates up to w="
                                              << max_w.str() << "\n";
        for (auto& cand : rep.candidates) {
            std::cout << "candidate k=" << rat_str(cand.level) << "  weights:";
            for (auto& w : cand.degenerate_weights)
                std::cout << " " << w.str() << "(kernel dim " << cand.kernel_dims.at(w) << ")";
            if (cfg.datum)
                std::cout << "  p(k) root: "
                          << (std::find(pk_roots.begin(), pk_roots.end(), cand.level) !=
                                      pk_roots.end()
                                  ? "yes"
                                  : "no");
            std::cout << "\n";
        }
        for (auto& w : rep.structurally_degenerate)
            std::cout << "weight " << w.str() << ": Gram determinant vanishes identically\n";
    }
    return 0;
}

struct SuiteResult {
    int checked = 0, failed = 0;
    std::string first_witness;

    void note(bool pass, const std::string& witness) {
        ++checked;
        if (!pass) {
            ++failed;
            if (first_witness.empty()) first_witness = witness;
        }
    }
};

void suite_borcherds(const AlgebraPresentation& p, SuiteResult& res) {
    for (HalfInt w : weights_up_to(HalfInt::from_twice(5))) {
        for (auto& m : basis(p, w)) {
            State s;
            s.add(m, Scalar(1));
            for (int x = 0; x < p.num_generators(); ++x)
                for (int y = 0; y < p.num_generators(); ++y) {
                    HalfInt dx = p.generators[static_cast<std::size_t>(x)].delta;
                    HalfInt dy = p.generators[static_cast<std::size_t>(y)].delta;
                    for (HalfInt mm = -dx; mm <= HalfInt(2); mm += HalfInt(1)) {
                        if (mm < HalfInt(-2)) continue;
                        for (HalfInt nn = -dy; nn <= HalfInt(2); nn += HalfInt(1)) {
                            if (nn < HalfInt(-2)) continue;
                            CommutatorCheck c = check_commutator(p, x, mm, y, nn, s);
                            res.note(c.pass, "commutator (" + std::to_string(x) + "," +
                                                 mm.str() + ")(" + std::to_string(y) + "," +
                                                 nn.str() + ") on " + m.str(p));
                        }
                    }
                }
        }
    }
}

void suite_invariance(const AlgebraPresentation& p, const std::vector<Rat>& levels,
                      SuiteResult& res) {
    for (HalfInt wu : weights_up_to(HalfInt::from_twice(5))) {
        for (auto& mu : basis(p, wu)) {
            State u;
            u.add(mu, Scalar(1));
            for (int g = 0; g < p.num_generators(); ++g) {
                HalfInt d = p.generators[static_cast<std::size_t>(g)].delta;
                for (HalfInt n = -d; n <= HalfInt(2); n += HalfInt(1)) {
                    if (n < HalfInt(-2)) continue;
                    HalfInt wv = wu - n;
                    if (wv < HalfInt(0) || wv > HalfInt::from_twice(5)) continue;
                    for (auto& mv : basis(p, wv)) {
                        State v;
                        v.add(mv, Scalar(1));
                        InvarianceCheck c = check_invariance(p, g, n, u, v);
                        res.note(c.pass, "invariance gen " + std::to_string(g) + " n=" +
                                             n.str() + " on (" + mv.str(p) + ", " + mu.str(p) +
                                             ")");
                        Scalar uv = inner_product(p, u, v), vu = inner_product(p, v, u);
                        for (const Rat& k0 : levels) {
                            try {
                                res.note(specialize(uv, k0) == specialize(vu, k0).conj(),
                                         "hermiticity at k=" + rat_str(k0));
                            } catch (const PoleError&) {
                            }
                        }
                    }
                }
            }
        }
    }
}

void suite_operators(const AlgebraPresentation& p, SuiteResult& res) {
    for (HalfInt w : weights_up_to(HalfInt(3))) {
        for (auto& m : basis(p, w)) {
            State s;
            s.add(m, Scalar(1));
            State gg = g_apply(p, g_apply(p, s));
            res.note(gg == s, "g^2 on " + m.str(p));
            auto composed = a_operator_inv_var(p, a_operator(p, s));
            bool ok = composed.size() == 1 && composed.begin()->first == 0 &&
                      composed.begin()->second == s;
            res.note(ok, "A(1/z)A(z) on " + m.str(p));
            State oo = omega_state(p, omega_state(p, s));
            res.note(oo == s, "omega^2 on " + m.str(p));
        }
    }
}

void suite_residue(unsigned long seed, SuiteResult& res) {
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 200; ++trial) {
        Rat m = make_rat(static_cast<long>(rng() % 25) - 12, 2);
        Rat n = make_rat(static_cast<long>(rng() % 25) - 12, 2);
        Rat k = Rat(static_cast<long>(rng() % 13) - 6) - m;
        ResidueSides sides = residue_identity(m, n, k);
        res.note(sides.lhs_coeff == sides.rhs_coeff,
                 "residue M=" + rat_str(m) + " N=" + rat_str(n) + " K=" + rat_str(k));
    }
}

void suite_zhu(const MinimalWDatum& datum, SuiteResult& res) {
    ZhuPresentation zp(datum);
    const int nh = static_cast<int>(datum.ghalf_names.size());
    const int nn = datum.gnat.dim();
    std::vector<ZhuGen> gens;
    for (int i = 0; i < nh; ++i) gens.push_back(ZhuGen{ZhuGen::Kind::Half, i});
    for (int i = 0; i < nn; ++i) gens.push_back(ZhuGen{ZhuGen::Kind::Nat, i});
    gens.push_back(ZhuGen{ZhuGen::Kind::Lp, 0});

    std::vector<ZhuElement> words{ZhuElement::one()};
    {
        std::vector<ZhuWord> cur{{}};
        for (int len = 1; len <= 3; ++len) {
            std::vector<ZhuWord> next;
            for (auto& w : cur)
                for (auto& g : gens) {
                    if (!w.empty() && g < w.back()) continue;
                    if (!w.empty() && g == w.back() && zp.parity(g)) continue;
                    ZhuWord nw = w;
                    nw.push_back(g);
                    next.push_back(nw);
                }
            for (auto& w : next) {
                ZhuElement e;
                e.add(w, Scalar(1));
                words.push_back(e);
            }
            cur = std::move(next);
        }
    }
    ZhuElement lp = ZhuElement::generator(ZhuGen{ZhuGen::Kind::Lp, 0});
    for (auto& x : words) {
        res.note(zhu_multiply(zp, lp, x) == zhu_multiply(zp, x, lp), "L' centrality");
        res.note(zhu_omega(zp, zhu_omega(zp, x)) == x, "omega^2");
    }
    auto sup = [&](const ZhuElement& x, const ZhuElement& y) {
        auto par = [&](const ZhuElement& e) {
            int p = 0;
            if (!e.terms().empty())
                for (auto& g : e.terms().begin()->first) p ^= zp.parity(g);
            return p;
        };
        return Scalar((par(x) && par(y)) ? -1 : 1);
    };
    for (auto& x : words) {
        if (x.terms().begin()->first.size() > 2) continue;
        for (auto& y : words) {
            if (y.terms().begin()->first.size() > 2) continue;
            ZhuElement lhs = zhu_omega(zp, zhu_multiply(zp, x, y));
            ZhuElement rhs = zhu_multiply(zp, zhu_omega(zp, y), zhu_omega(zp, x));
            res.note(lhs == rhs, "omega anti-homomorphism");
        }
    }
    auto brk = [&](const ZhuElement& x, const ZhuElement& y) {
        return zhu_multiply(zp, x, y) - sup(x, y) * zhu_multiply(zp, y, x);
    };
    for (auto& gx : gens)
        for (auto& gy : gens)
            for (auto& gz : gens) {
                ZhuElement x = ZhuElement::generator(gx), y = ZhuElement::generator(gy),
                           z = ZhuElement::generator(gz);
                ZhuElement lhs = brk(x, brk(y, z));
                ZhuElement rhs = brk(brk(x, y), z) + sup(x, y) * brk(y, brk(x, z));
                res.note(lhs == rhs, "super-Jacobi");
            }
    res.note(k_independence_check(zp), "k-independence");
}

int cmd_check(const Options& opt) {
    LoadedConfig cfg = load_config_file(opt.config_path);
    std::vector<Rat> levels = parse_levels(opt.levels);
    if (levels.empty()) levels = {Rat(1), make_rat(1, 2), Rat(3)};
    bool all = opt.suite == "all";
    int exit_code = 0;
    auto run = [&](const std::string& name, auto&& fn) {
        SuiteResult res;
        fn(res);
        std::cout << "suite " << name << ": " << (res.failed == 0 ? "pass" : "FAIL") << " ("
                  << res.checked << " checks";
        if (res.failed) std::cout << ", " << res.failed << " failed; first: " << res.first_witness;
        std::cout << ")\n";
        if (res.failed) exit_code = 1;
    };
    bool matched = false;
    if (all || opt.suite == "borcherds") {
        matched = true;
        run("borcherds", [&](SuiteResult& r) { suite_borcherds(cfg.presentation, r); });
    }
    if (all || opt.suite == "invariance") {
        matched = true;
        run("invariance", [&](SuiteResult& r) { suite_invariance(cfg.presentation, levels, r); });
    }
    if (all || opt.suite == "operators") {
        matched = true;
        run("operators", [&](SuiteResult& r) { suite_operators(cfg.presentation, r); });
    }
    if (all || opt.suite == "residue") {
        matched = true;
        run("residue", [&](SuiteResult& r) { suite_residue(opt.seed, r); });
    }
    if (opt.suite == "zhu" || (all && cfg.datum)) {
        matched = true;
        if (!cfg.datum) throw ParseError("suite 'zhu' needs a minimal_w config");
        run("zhu", [&](SuiteResult& r) { suite_zhu(*cfg.datum, r); });
    }
    if (!matched) throw ParseError("unknown suite '" + opt.suite + "'");
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariant Hermitian forms on freely generated conformal vertex algebras"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "presentation config (JSON)")->required();
    };
    CLI::App* describe = app.add_subcommand("describe", "print generators and central charge");
    add_common(describe);
    CLI::App* gram_cmd = app.add_subcommand("gram", "emit a Gram matrix");
    add_common(gram_cmd);
    gram_cmd->add_option("--weight", opt.weight, "conformal weight");
    gram_cmd->add_option("--level", opt.levels, "specialize at k (repeatable)");
    gram_cmd->add_option("--format", opt.format, "table|csv|json");
    gram_cmd->add_flag("--cap-override", opt.cap_override, "lift the weight cap");
    CLI::App* unit = app.add_subcommand("unitarity", "per-weight signatures and verdict");
    add_common(unit);
    unit->add_option("--max-weight", opt.max_weight, "largest weight");
    unit->add_option("--level", opt.levels, "level k (repeatable)");
    unit->add_option("--format", opt.format, "table|json");
    unit->add_flag("--cap-override", opt.cap_override, "lift the weight cap");
    CLI::App* coll = app.add_subcommand("collapsing", "Gram-degeneration level candidates");
    add_common(coll);
    coll->add_option("--max-weight", opt.max_weight, "largest weight");
    coll->add_option("--format", opt.format, "table|json");
    coll->add_flag("--cap-override", opt.cap_override, "lift the weight cap");
    CLI::App* check = app.add_subcommand("check", "consistency property suites");
    add_common(check);
    check->add_option("--suite", opt.suite,
                      "borcherds|invariance|operators|residue|zhu|all");
    check->add_option("--seed", opt.seed, "seed for sampled suites");
    check->add_option("--level", opt.levels, "levels for specialized checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (describe->parsed()) return cmd_describe(opt);
        if (gram_cmd->parsed()) return cmd_gram(opt);
        if (unit->parsed()) return cmd_unitarity(opt);
        if (coll->parsed()) return cmd_collapsing(opt);
        if (check->parsed()) return cmd_check(opt);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const PoleError& e) {
        std::cerr << "pole error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
