#include "permlab/config.hpp"

#include <fstream>

#include "permlab/error.hpp"

namespace permlab {

namespace {

nlohmann::json read_json(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config file " + file.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed config file " + file.string() + ": " + e.what());
    }
}

std::uint64_t positive_integer(const nlohmann::json& v, const char* what) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
        throw ConfigError(std::string(what) + " must be a positive integer");
    return v.get<std::uint64_t>();
}

}  // namespace

PhiRule parse_phi_rule(const nlohmann::json& doc) {
    if (doc.is_object() && doc.contains("phi")) return parse_phi_rule(doc.at("phi"));
    if (doc.is_string()) {
        const auto s = doc.get<std::string>();
        if (s == "one") return PhiRule::one();
        if (s == "identity") return PhiRule::identity();
        throw ConfigError("unknown phi rule '" + s + "' (expected \"one\" or \"identity\")");
    }
    if (!doc.is_object() || !doc.contains("table")) throw ConfigError("phi must be \"one\", \"identity\" or a table");

    std::map<std::uint64_t, std::uint64_t> entries;
    const auto& table = doc.at("table");
    if (table.is_array()) {
        for (const auto& row : table) {
            if (!row.is_array() || row.size() != 2) throw ConfigError("phi table rows must be [i, phi(i)] pairs");
            entries[positive_integer(row[0], "phi table index")] = positive_integer(row[1], "phi value");
        }
    } else if (table.is_object()) {
        for (const auto& [key, value] : table.items()) {
            std::uint64_t i = 0;
            try {
                i = std::stoull(key);
            } catch (const std::exception&) {
                throw ConfigError("phi table key '" + key + "' is not an integer");
            }
            if (i < 1) throw ConfigError("phi table index must be >= 1");
            entries[i] = positive_integer(value, "phi value");
        }
    } else {
        throw ConfigError("phi table must be an array of pairs or an object");
    }

    auto fallback = PhiRule::Default::One;
    std::uint64_t constant = 1;
    if (doc.contains("default")) {
        const auto& d = doc.at("default");
        if (d.is_string() && d.get<std::string>() == "one")
            fallback = PhiRule::Default::One;
        else if (d.is_string() && d.get<std::string>() == "identity")
            fallback = PhiRule::Default::Identity;
        else {
            fallback = PhiRule::Default::Constant;
            constant = positive_integer(d, "phi default");
        }
    }
    return PhiRule::table(std::move(entries), fallback, constant);
}

PhiRule load_phi_rule(const std::filesystem::path& file) { return parse_phi_rule(read_json(file)); }

MarkovChainSpec parse_markov_chain(const nlohmann::json& doc) {
    if (doc.is_object() && doc.contains("chain")) return parse_markov_chain(doc.at("chain"));
    if (!doc.is_object() || !doc.contains("states") || !doc.contains("transitions"))
        throw ConfigError("markov chain needs \"states\" and \"transitions\"");
    MarkovChainSpec spec;
    for (const auto& s : doc.at("states")) spec.states.push_back(positive_integer(s, "markov state"));
    const auto& t = doc.at("transitions");
    if (!t.is_array()) throw ConfigError("transitions must be an array");
    for (const auto& row : t) {
        if (row.is_array()) {
            if (row.size() != spec.states.size()) throw ConfigError("transition row length must equal the state count");
            for (const auto& p : row) {
                if (!p.is_number()) throw ConfigError("transition entries must be numbers");
                spec.transitions.push_back(p.get<double>());
            }
        } else if (row.is_number()) {
            spec.transitions.push_back(row.get<double>());
        } else {
            throw ConfigError("transition entries must be numbers");
        }
    }
    spec.validate();
    return spec;
}

MarkovChainSpec load_markov_chain(const std::filesystem::path& file) { return parse_markov_chain(read_json(file)); }

}  // namespace permlab
