#include "permlab/permutation.hpp"

#include <charconv>
#include <limits>

#include "permlab/error.hpp"

namespace permlab {

namespace {

constexpr std::uint64_t kMaxSize = std::numeric_limits<std::int32_t>::max();

void check_bijection(std::span<const Permutation::value_type> entries) {
    if (entries.empty()) throw NotABijection("permutation must have at least one entry");
    if (entries.size() > kMaxSize) throw NotABijection("permutation size exceeds 2^31-1");
    std::vector<bool> seen(entries.size() + 1, false);
    for (auto v : entries) {
        if (v < 1 || v > entries.size())
            throw NotABijection("entry " + std::to_string(v) + " out of range 1.." + std::to_string(entries.size()));
        if (seen[v]) throw NotABijection("duplicate entry " + std::to_string(v));
        seen[v] = true;
    }
}

}  // namespace

Permutation::Permutation(std::vector<value_type> entries) : entries_(std::move(entries)) {
    check_bijection(entries_);
}

Permutation Permutation::identity(std::size_t n) {
    if (n == 0) throw InvalidArgument("identity: n must be >= 1");
    std::vector<value_type> e(n);
    for (std::size_t k = 0; k < n; ++k) e[k] = static_cast<value_type>(k + 1);
    return {std::move(e), Trusted{}};
}

Permutation Permutation::reversal(std::size_t n) {
    if (n == 0) throw InvalidArgument("reversal: n must be >= 1");
    std::vector<value_type> e(n);
    for (std::size_t k = 0; k < n; ++k) e[k] = static_cast<value_type>(n - k);
    return {std::move(e), Trusted{}};
}

Permutation Permutation::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '(' || s.front() == '"')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == ')' || s.back() == '"' ||
                              s.back() == '\r' || s.back() == '\n'))
            s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    std::vector<std::int64_t> values;
    while (!text.empty()) {
        auto comma = text.find(',');
        auto token = text.substr(0, comma);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty())
            throw NotABijection("cannot parse permutation entry '" + std::string(token) + "'");
        values.push_back(v);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return validate(values);
}

Permutation::value_type Permutation::at(std::size_t i) const {
    if (i < 1 || i > entries_.size()) throw InvalidArgument("position out of range");
    return entries_[i - 1];
}

Permutation Permutation::inverse() const {
    std::vector<value_type> inv(entries_.size());
    for (std::size_t k = 0; k < entries_.size(); ++k) inv[entries_[k] - 1] = static_cast<value_type>(k + 1);
    return {std::move(inv), Trusted{}};
}

std::string Permutation::to_string() const {
    std::string out;
    out.reserve(entries_.size() * 4);
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(entries_[k]);
    }
    return out;
}

Permutation validate(std::span<const std::int64_t> seq) {
    if (seq.empty()) throw NotABijection("empty sequence");
    if (seq.size() > kMaxSize) throw NotABijection("permutation size exceeds 2^31-1");
    std::vector<Permutation::value_type> entries;
    entries.reserve(seq.size());
    for (auto v : seq) {
        if (v < 1 || static_cast<std::uint64_t>(v) > seq.size())
            throw NotABijection("entry " + std::to_string(v) + " out of range 1.." + std::to_string(seq.size()));
        entries.push_back(static_cast<Permutation::value_type>(v));
    }
    return Permutation(std::move(entries));
}

Permutation adopt_trusted(std::vector<Permutation::value_type> entries) {
    return {std::move(entries), Permutation::Trusted{}};
}

}  // namespace permlab
