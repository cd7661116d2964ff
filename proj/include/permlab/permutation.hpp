#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permlab {

/// A permutation of {1, ..., n} in one-line notation: entry k (0-based) holds
/// the image of position k + 1. Immutable once constructed.
class Permutation {
public:
    using value_type = std::uint32_t;

    /// Validates that `entries` is a bijection of {1..n}; throws NotABijection.
    explicit Permutation(std::vector<value_type> entries);

    static Permutation identity(std::size_t n);
    static Permutation reversal(std::size_t n);

    /// Parses comma-separated one-line notation, e.g. "4,3,1,2". Surrounding
    /// parentheses and whitespace are accepted.
    static Permutation parse(std::string_view text);

    std::size_t size() const noexcept { return entries_.size(); }

    /// Value at 0-based position `k` (a 1-based value).
    value_type operator[](std::size_t k) const noexcept { return entries_[k]; }

    /// Value at 1-based position `i`, i.e. tau(i).
    value_type at(std::size_t i) const;

    std::span<const value_type> entries() const noexcept { return entries_; }

    Permutation inverse() const;

    /// "4,3,1,2"
    std::string to_string() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.entries_ <=> b.entries_; }

private:
    struct Trusted {};
    Permutation(std::vector<value_type> entries, Trusted) : entries_(std::move(entries)) {}

    friend Permutation adopt_trusted(std::vector<value_type> entries);

    std::vector<value_type> entries_;
};

/// Checks an arbitrary integer sequence and returns it as a Permutation.
/// Rejects empty input, duplicates and out-of-range entries with NotABijection.
Permutation validate(std::span<const std::int64_t> seq);

/// Wraps entries already known to form a bijection (sampler output). Not
/// checked; internal use.
Permutation adopt_trusted(std::vector<Permutation::value_type> entries);

/// Number of pairs i < j, as a 64-bit count.
constexpr std::uint64_t pair_count(std::uint64_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

}  // namespace permlab
