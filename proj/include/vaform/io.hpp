#pragma once

#include <json.hpp>

#include "vaform/hermitian.hpp"
#include "vaform/zhu.hpp"

namespace vaform {

struct LoadedConfig {
    std::string type;
    AlgebraPresentation presentation;
    std::optional<MinimalWDatum> datum; // present for minimal_w configs
};

/// Parse a presentation description. Structure constants come in as triples
/// [i, j, [[coeff, target], ...]]; a missing reverse pair is filled in from
/// skew-supersymmetry.
LoadedConfig load_config_json(const nlohmann::json& j);
LoadedConfig load_config_file(const std::string& path);

/// Serialized Gram matrix: basis monomial strings plus scalar strings.
struct GramData {
    std::string weight;
    std::vector<std::string> basis;
    std::vector<std::vector<std::string>> entries;

    friend bool operator==(const GramData& a, const GramData& b) {
        return a.weight == b.weight && a.basis == b.basis && a.entries == b.entries;
    }
};

GramData gram_data(const AlgebraPresentation& p, const GramMatrix& g,
                   std::optional<Rat> level = std::nullopt);

std::string gram_to_csv(const GramData& g);
GramData gram_from_csv(const std::string& text);
nlohmann::json gram_to_json(const GramData& g);
GramData gram_from_json(const nlohmann::json& j);

nlohmann::json signature_to_json(const AlgebraPresentation& p, const SignatureReport& sig);

} // namespace vaform
