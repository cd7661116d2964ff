#pragma once

#include <filesystem>

#include <json.hpp>

#include "permlab/models.hpp"

namespace permlab {

/// phi rule documents. Accepted forms:
///
///   "one" | "identity"
///   {"phi": "identity"}
///   {"phi": {"table": [[1, 1], [2, 5], [3, 2]], "default": "identity"}}
///
/// `table` may also be an object {"1": 1, "2": 5}. `default` is "one",
/// "identity" or a positive integer (constant draw count); it defaults to "one".
PhiRule parse_phi_rule(const nlohmann::json& doc);
PhiRule load_phi_rule(const std::filesystem::path& file);

/// Markov chain documents:
///
///   {"states": [1, 2, 3], "transitions": [[0, 1, 0], [0, 0.5, 0.5], [1, 0, 0]]}
///
/// `transitions` is row-major, nested or flat. The document may also wrap
/// these keys in a top-level "chain" object. The result is validated.
MarkovChainSpec parse_markov_chain(const nlohmann::json& doc);
MarkovChainSpec load_markov_chain(const std::filesystem::path& file);

}  // namespace permlab
