// JSON construction recipes: one document describes a measurement matrix
// end to end (family, block-grid parameters, coupling, terminal lift,
// seed), so any matrix in the toolkit can be rebuilt from its metadata.
//
// Schema (version 1):
//   {
//     "family": "ab" | "random",
//     "gamma": int, "p": int, "L": int,
//     "memory": int (default 1), "J": int (default 1),
//     "seed": unsigned (default 0),
//     "kappa": [[int,...],...]  (optional, gamma x p, ab only)
//     "xi": [int,...]           (optional, gamma entries, ab only)
//   }
// For the ab family, "kappa" selects algebraic coupling, "xi" selects
// cutting-vector coupling, and neither selects the uncoupled block-diagonal
// construction; "kappa" and "xi" are mutually exclusive. The random family
// draws its own spreading from the seed.

#ifndef SCMEAS_RECIPE_HPP
#define SCMEAS_RECIPE_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scmeas/binary_matrix.hpp"
#include "scmeas/coupling.hpp"

namespace scmeas::recipe {

inline constexpr const char* kSchemaVersion = "1";

struct Recipe {
    std::string family;  // "ab" or "random"
    int gamma = 0;
    int p = 0;
    int L = 0;
    int memory = 1;
    int J = 1;
    std::uint64_t seed = 0;
    std::optional<std::vector<std::vector<int>>> kappa;
    std::optional<std::vector<int>> xi;
};

namespace detail {

inline int require_int(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("recipe: missing required field '") + key + "'");
    if (!j.at(key).is_number_integer()) throw std::invalid_argument(std::string("recipe: field '") + key + "' must be an integer");
    return j.at(key).get<int>();
}

inline int optional_int(const nlohmann::json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) throw std::invalid_argument(std::string("recipe: field '") + key + "' must be an integer");
    return j.at(key).get<int>();
}

}  // namespace detail

/// Parses and validates a recipe document; every violation is reported as
/// std::invalid_argument naming the offending constraint.
inline Recipe parse(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("recipe: document must be a JSON object");
    Recipe r;
    if (!j.contains("family") || !j.at("family").is_string())
        throw std::invalid_argument("recipe: missing or non-string field 'family'");
    r.family = j.at("family").get<std::string>();
    if (r.family != "ab" && r.family != "random")
        throw std::invalid_argument("recipe: family must be 'ab' or 'random', got '" + r.family + "'");

    r.gamma = detail::require_int(j, "gamma");
    r.p = detail::require_int(j, "p");
    r.L = detail::require_int(j, "L");
    r.memory = detail::optional_int(j, "memory", 1);
    r.J = detail::optional_int(j, "J", 1);
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
            throw std::invalid_argument("recipe: field 'seed' must be a nonnegative integer");
        if (j.at("seed").is_number_integer() && j.at("seed").get<std::int64_t>() < 0)
            throw std::invalid_argument("recipe: field 'seed' must be nonnegative");
        r.seed = j.at("seed").get<std::uint64_t>();
    }

    if (r.gamma < 1) throw std::invalid_argument("recipe: gamma must be positive");
    if (r.p < 1) throw std::invalid_argument("recipe: p must be positive");
    if (r.L < 1) throw std::invalid_argument("recipe: L must be positive");
    if (r.memory < 0) throw std::invalid_argument("recipe: memory must be nonnegative");
    if (r.J < 1) throw std::invalid_argument("recipe: J must be positive");

    if (j.contains("kappa") && j.contains("xi"))
        throw std::invalid_argument("recipe: 'kappa' and 'xi' are mutually exclusive");
    if (j.contains("kappa")) {
        if (r.family != "ab") throw std::invalid_argument("recipe: 'kappa' applies only to the ab family");
        const auto& jk = j.at("kappa");
        if (!jk.is_array() || static_cast<int>(jk.size()) != r.gamma)
            throw std::invalid_argument("recipe: 'kappa' must be an array of gamma rows");
        std::vector<std::vector<int>> kappa;
        for (const auto& row : jk) {
            if (!row.is_array() || static_cast<int>(row.size()) != r.p)
                throw std::invalid_argument("recipe: each 'kappa' row must have p integers");
            kappa.push_back(row.get<std::vector<int>>());
        }
        r.kappa = std::move(kappa);
    }
    if (j.contains("xi")) {
        if (r.family != "ab") throw std::invalid_argument("recipe: 'xi' applies only to the ab family");
        const auto& jx = j.at("xi");
        if (!jx.is_array() || static_cast<int>(jx.size()) != r.gamma)
            throw std::invalid_argument("recipe: 'xi' must be an array of gamma integers");
        r.xi = jx.get<std::vector<int>>();
    }

    // Cross-validate against the construction-level invariants up front so
    // errors surface at parse time with recipe context.
    if (r.family == "ab") {
        validate(AbParams{r.gamma, r.p});
        if (r.kappa) {
            coupling::ShiftAssignment s{r.gamma, r.p, *r.kappa, r.memory, r.L};
            coupling::validate(s);
        }
        if (r.xi) {
            coupling::validate(coupling::CuttingVector{*r.xi}, r.gamma, r.p);
            if (r.memory != 1) throw std::invalid_argument("recipe: 'xi' coupling requires memory 1");
            if (r.L <= 1) throw std::invalid_argument("recipe: 'xi' coupling requires L > 1");
        }
    }
    return r;
}

inline Recipe parse_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("recipe: invalid JSON: ") + e.what());
    }
    return parse(j);
}

inline Recipe parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("recipe: cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_string(text);
}

inline nlohmann::json to_json(const Recipe& r) {
    nlohmann::json j;
    j["family"] = r.family;
    j["gamma"] = r.gamma;
    j["p"] = r.p;
    j["L"] = r.L;
    j["memory"] = r.memory;
    j["J"] = r.J;
    j["seed"] = r.seed;
    if (r.kappa) j["kappa"] = *r.kappa;
    if (r.xi) j["xi"] = *r.xi;
    return j;
}

/// The pre-lift protograph the recipe describes.
inline BinarySparseMatrix build_protograph(const Recipe& r) {
    if (r.family == "random") return coupling::build_random_regular_protograph(r.gamma, r.p, r.L, r.memory, r.seed);
    const auto base = build_ab_base({r.gamma, r.p});
    if (r.kappa) {
        coupling::ShiftAssignment s{r.gamma, r.p, *r.kappa, r.memory, r.L};
        return coupling::build_sc_protograph_algebraic(base, s);
    }
    if (r.xi) {
        const auto s = coupling::shift_from_cutting(coupling::CuttingVector{*r.xi}, r.gamma, r.p, r.L);
        return coupling::build_sc_protograph_algebraic(base, s);
    }
    return coupling::build_block_diagonal_protograph(base, r.L);
}

/// The final measurement matrix: protograph plus seeded random terminal
/// J-lift (the random family derives its lift stream from the same seed
/// split used for its base and spreading).
inline BinarySparseMatrix build(const Recipe& r) {
    if (r.family == "random") return coupling::build_random_regular(r.gamma, r.p, r.L, r.memory, r.J, r.seed);
    const auto proto = build_protograph(r);
    return coupling::terminal_lift(proto, coupling::TerminalLift::random(proto.nnz(), r.J, r.seed));
}

}  // namespace scmeas::recipe

#endif
