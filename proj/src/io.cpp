#include "vaform/io.hpp"

#include <fstream>
#include <sstream>

namespace vaform {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw ParseError("config field '" + where + "': " + what);
}

GaussRat parse_gauss_field(const json& j, const std::string& where) {
    if (j.is_number_integer()) return GaussRat(make_rat(j.get<long>()));
    if (j.is_string()) {
        try {
            return parse_gauss(j.get<std::string>());
        } catch (const ParseError& e) {
            bad(where, e.what());
        }
    }
    bad(where, "expected a rational/Gaussian scalar string");
}

Scalar parse_scalar_field(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Scalar(make_rat(j.get<long>()));
    if (j.is_string()) {
        try {
            return parse_scalar(j.get<std::string>());
        } catch (const ParseError& e) {
            bad(where, e.what());
        }
    }
    bad(where, "expected a scalar expression string");
}

Rat parse_rat_field(const json& j, const std::string& where) {
    GaussRat g = parse_gauss_field(j, where);
    if (!g.is_real()) bad(where, "expected a real rational");
    return g.re;
}

std::vector<std::vector<GaussRat>> parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array()) bad(where, "expected a matrix");
    std::vector<std::vector<GaussRat>> out;
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (!j[r].is_array()) bad(where, "expected matrix rows");
        std::vector<GaussRat> row;
        for (std::size_t c = 0; c < j[r].size(); ++c)
            row.push_back(parse_gauss_field(j[r][c], where));
        out.push_back(std::move(row));
    }
    return out;
}

/// brackets / action constants: [[i, j, [[coeff, target], ...]], ...]
void parse_triples(const json& j, const std::string& where,
                   std::map<std::pair<int, int>, std::vector<std::pair<GaussRat, int>>>& out) {
    if (!j.is_array()) bad(where, "expected a list of [i, j, combo] triples");
    for (auto& trip : j) {
        if (!trip.is_array() || trip.size() != 3) bad(where, "expected [i, j, combo]");
        int i = trip[0].get<int>(), jj = trip[1].get<int>();
        std::vector<std::pair<GaussRat, int>> combo;
        for (auto& pair : trip[2]) {
            if (!pair.is_array() || pair.size() != 2) bad(where, "expected [coeff, target]");
            combo.emplace_back(parse_gauss_field(pair[0], where), pair[1].get<int>());
        }
        out[{i, jj}] = std::move(combo);
    }
}

LieData parse_space(const json& j, const std::string& where, bool with_brackets) {
    LieData d;
    if (!j.contains("names")) bad(where + ".names", "missing");
    d.names = j.at("names").get<std::vector<std::string>>();
    d.parities = j.at("parities").get<std::vector<int>>();
    d.form = parse_matrix(j.at("form"), where + ".form");
    d.phi = parse_matrix(j.at("phi"), where + ".phi");
    if (with_brackets && j.contains("brackets")) {
        parse_triples(j.at("brackets"), where + ".brackets", d.brackets);
        // complete missing reverse pairs from skew-supersymmetry
        auto snapshot = d.brackets;
        for (auto& [key, combo] : snapshot) {
            auto [i, jj] = key;
            if (i == jj || d.brackets.count({jj, i})) continue;
            int s = (d.parities[static_cast<std::size_t>(i)] &&
                     d.parities[static_cast<std::size_t>(jj)])
                        ? 1
                        : -1;
            std::vector<std::pair<GaussRat, int>> rev;
            for (auto& [c, t] : combo) rev.emplace_back(c * GaussRat(Rat(s)), t);
            d.brackets[{jj, i}] = std::move(rev);
        }
    }
    return d;
}

HalfInt parse_weight_field(const json& j, const std::string& where) {
    if (j.is_number_integer()) return HalfInt(j.get<int>());
    if (j.is_string()) {
        try {
            return parse_halfint(j.get<std::string>());
        } catch (const ParseError& e) {
            bad(where, e.what());
        }
    }
    bad(where, "expected a half-integer");
}

AlgebraPresentation parse_custom(const json& j) {
    AlgebraPresentation p;
    if (!j.contains("generators")) bad("generators", "missing");
    int n = static_cast<int>(j.at("generators").size());
    for (auto& gj : j.at("generators")) {
        GeneratorDecl g;
        g.name = gj.at("name").get<std::string>();
        g.delta = parse_weight_field(gj.at("delta"), "generators.delta");
        g.parity = gj.at("parity").get<int>();
        g.phi_image.assign(static_cast<std::size_t>(n), GaussRat());
        for (auto& pair : gj.at("phi")) {
            if (!pair.is_array() || pair.size() != 2) bad("generators.phi", "expected [coeff, index]");
            int target = pair[1].get<int>();
            if (target < 0 || target >= n) bad("generators.phi", "index out of range");
            g.phi_image[static_cast<std::size_t>(target)] =
                parse_gauss_field(pair[0], "generators.phi");
        }
        p.generators.push_back(std::move(g));
    }
    for (auto& bj : j.at("brackets")) {
        int i = bj.at("i").get<int>(), jj = bj.at("j").get<int>(), t = bj.at("t").get<int>();
        NOPoly poly;
        for (auto& tj : bj.at("terms")) {
            NOTerm term;
            term.coeff = parse_scalar_field(tj.at("coeff"), "brackets.terms.coeff");
            if (tj.contains("factors"))
                for (auto& f : tj.at("factors")) {
                    if (!f.is_array() || f.size() != 2) bad("brackets.terms.factors", "expected [m, gen]");
                    term.factors.emplace_back(f[0].get<int>(), f[1].get<int>());
                }
            poly.add(term);
        }
        if (!poly.is_zero()) p.brackets[{i, jj, t}] = poly;
    }
    const json& conf = j.at("conformal");
    if (conf.is_number_integer()) {
        p.conformal = conf.get<int>();
    } else {
        NOPoly L;
        for (auto& tj : conf.at("terms")) {
            NOTerm term;
            term.coeff = parse_scalar_field(tj.at("coeff"), "conformal.terms.coeff");
            for (auto& f : tj.at("factors")) term.factors.emplace_back(f[0].get<int>(), f[1].get<int>());
            L.add(term);
        }
        p.conformal = L;
    }
    if (j.contains("central_charge"))
        p.declared_central_charge = parse_scalar_field(j.at("central_charge"), "central_charge");
    return p;
}

MinimalWDatum parse_minimal_w(const json& j) {
    MinimalWDatum d;
    d.gnat = parse_space(j.at("gnat"), "gnat", true);
    d.ideal_of = j.at("ideals").get<std::vector<int>>();
    for (auto& h : j.at("ideal_h_dual")) d.ideal_h_dual.push_back(parse_rat_field(h, "ideal_h_dual"));
    const json& gh = j.at("ghalf");
    d.ghalf_names = gh.at("names").get<std::vector<std::string>>();
    d.ghalf_parities = gh.at("parities").get<std::vector<int>>();
    d.ghalf_phi = parse_matrix(gh.at("phi"), "ghalf.phi");
    parse_triples(gh.at("action"), "ghalf.action", d.action);
    d.pairing = parse_matrix(gh.at("pairing"), "ghalf.pairing");
    if (j.contains("dual_basis")) {
        d.dual_basis = parse_matrix(j.at("dual_basis"), "dual_basis");
    } else {
        d.dual_basis = d.gnat.dual_basis();
    }
    d.h_dual = parse_rat_field(j.at("h_dual"), "h_dual");
    d.sdim = parse_rat_field(j.at("sdim"), "sdim");
    if (!j.contains("p_k") || !j.at("p_k").is_array()) bad("p_k", "expected coefficient list");
    for (auto& c : j.at("p_k")) d.p_k.push_coeff(parse_gauss_field(c, "p_k"));
    d.p_k.trim();
    return d;
}

} // namespace

LoadedConfig load_config_json(const nlohmann::json& j) {
    LoadedConfig out;
    if (!j.contains("type")) bad("type", "missing");
    out.type = j.at("type").get<std::string>();
    if (out.type == "free_fermion") {
        out.presentation = build_free_fermion(parse_space(j.at("space"), "space", false));
    } else if (out.type == "free_boson") {
        out.presentation = build_free_boson(parse_space(j.at("space"), "space", false));
    } else if (out.type == "affine") {
        std::optional<Rat> h_dual;
        if (j.contains("h_dual")) h_dual = parse_rat_field(j.at("h_dual"), "h_dual");
        out.presentation = build_affine(parse_space(j.at("lie"), "lie", true), h_dual);
    } else if (out.type == "virasoro") {
        out.presentation =
            build_virasoro(parse_scalar_field(j.at("central_charge"), "central_charge"));
    } else if (out.type == "minimal_w") {
        out.datum = parse_minimal_w(j);
        out.presentation = build_minimal_w(*out.datum);
    } else if (out.type == "tensor") {
        const json& factors = j.at("factors");
        if (!factors.is_array() || factors.size() < 2) bad("factors", "expected >= 2 entries");
        LoadedConfig acc = load_config_json(factors[0]);
        AlgebraPresentation current = acc.presentation;
        for (std::size_t r = 1; r < factors.size(); ++r)
            current = tensor(current, load_config_json(factors[r]).presentation);
        out.presentation = std::move(current);
    } else if (out.type == "custom") {
        out.presentation = parse_custom(j);
        auto report = validate(out.presentation);
        if (!report.empty()) throw ValidationError("custom presentation: " + report.front());
    } else {
        bad("type", "unknown type '" + out.type + "'");
    }
    return out;
}

LoadedConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("config '" + path + "': " + e.what());
    }
    return load_config_json(j);
}

GramData gram_data(const AlgebraPresentation& p, const GramMatrix& g, std::optional<Rat> level) {
    GramData out;
    out.weight = g.weight.str();
    for (auto& m : g.basis) out.basis.push_back(m.str(p));
    for (auto& row : g.entries) {
        std::vector<std::string> line;
        for (auto& e : row)
            line.push_back(level ? specialize(e, *level).str() : e.str());
        out.entries.push_back(std::move(line));
    }
    return out;
}

std::string gram_to_csv(const GramData& g) {
    std::ostringstream out;
    out << "weight," << g.weight << "\n";
    for (std::size_t c = 0; c < g.basis.size(); ++c) out << (c ? "," : "") << g.basis[c];
    out << "\n";
    for (auto& row : g.entries) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
        out << "\n";
    }
    return out.str();
}

GramData gram_from_csv(const std::string& text) {
    GramData g;
    std::istringstream in(text);
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char ch : s) {
            if (ch == ',') {
                out.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        out.push_back(cur);
        return out;
    };
    if (!std::getline(in, line)) throw ParseError("empty Gram CSV");
    auto head = split(line);
    if (head.size() != 2 || head[0] != "weight") throw ParseError("Gram CSV: bad header");
    g.weight = head[1];
    if (!std::getline(in, line)) throw ParseError("Gram CSV: missing basis row");
    g.basis = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        g.entries.push_back(split(line));
        if (g.entries.back().size() != g.basis.size())
            throw ParseError("Gram CSV: ragged row");
    }
    if (g.entries.size() != g.basis.size()) throw ParseError("Gram CSV: not square");
    return g;
}

nlohmann::json gram_to_json(const GramData& g) {
    nlohmann::json j;
    j["weight"] = g.weight;
    j["basis"] = g.basis;
    j["entries"] = g.entries;
    return j;
}

GramData gram_from_json(const nlohmann::json& j) {
    GramData g;
    g.weight = j.at("weight").get<std::string>();
    g.basis = j.at("basis").get<std::vector<std::string>>();
    g.entries = j.at("entries").get<std::vector<std::vector<std::string>>>();
    return g;
}

nlohmann::json signature_to_json(const AlgebraPresentation& p, const SignatureReport& sig) {
    nlohmann::json j;
    j["n_plus"] = sig.n_plus;
    j["n_zero"] = sig.n_zero;
    j["n_minus"] = sig.n_minus;
    std::vector<std::string> kernel;
    for (auto& s : sig.kernel_basis) kernel.push_back(s.str(p));
    j["kernel"] = kernel;
    return j;
}

} // namespace vaform
