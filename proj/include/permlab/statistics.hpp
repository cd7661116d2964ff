#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "permlab/permutation.hpp"

namespace permlab {

/// Which statistic to evaluate; `m` is used by the parameterized kinds.
struct StatisticKind {
    enum class Tag { Inv, AInv, Descents, Ascents, LocalMax, LongestAlt, Rising, IncSubseq };

    Tag tag = Tag::Inv;
    std::uint32_t m = 1;

    static StatisticKind inv() { return {Tag::Inv, 1}; }
    static StatisticKind ainv() { return {Tag::AInv, 1}; }
    static StatisticKind descents(std::uint32_t m) { return {Tag::Descents, m}; }
    static StatisticKind ascents(std::uint32_t m) { return {Tag::Ascents, m}; }
    static StatisticKind local_max() { return {Tag::LocalMax, 1}; }
    static StatisticKind longest_alt() { return {Tag::LongestAlt, 1}; }
    static StatisticKind rising(std::uint32_t m) { return {Tag::Rising, m}; }
    static StatisticKind inc_subseq(std::uint32_t m) { return {Tag::IncSubseq, m}; }

    bool has_parameter() const noexcept;

    /// "inv", "ainv", "desc:m", "asc:m", "locmax", "las", "rising:m", "incsub:m".
    static StatisticKind parse(std::string_view text);
    std::string to_string() const;

    friend bool operator==(const StatisticKind&, const StatisticKind&) = default;
};

/// Counts pairs i < j with values[i] > values[j] by merge sort, O(n log n).
std::uint64_t count_inversions(std::span<const double> values);

std::uint64_t inversions(const Permutation& p);
std::uint64_t anti_inversions(const Permutation& p);

/// #{(i, j): 1 <= j - i <= m, p(i) > p(j)}.
std::uint64_t m_descents(const Permutation& p, std::uint32_t m);
std::uint64_t m_ascents(const Permutation& p, std::uint32_t m);

/// Number of ordered pairs (i, j) with 1 <= j - i <= m in a permutation of size n.
std::uint64_t window_pair_count(std::uint64_t n, std::uint64_t m);

/// Interior peaks: 2 <= i <= n - 1 with p(i - 1) < p(i) > p(i + 1).
std::uint64_t local_maxima(const Permutation& p);

enum class AlternationStart { Descent, Ascent };

/// Longest subsequence whose consecutive comparisons alternate, by default
/// starting with a descent: p(i1) > p(i2) < p(i3) > ... O(n).
std::uint64_t longest_alternating(const Permutation& p, AlternationStart start = AlternationStart::Descent);

/// Windows of m consecutive positions with strictly increasing values.
std::uint64_t rising_sequences(const Permutation& p, std::uint32_t m);

/// Increasing subsequences of length m; O(m n log n). Throws Overflow when
/// the count exceeds 2^64 - 1.
std::uint64_t increasing_subsequences(const Permutation& p, std::uint32_t m);

/// Dispatches to the kernels above. Throws InvalidArgument when m is out of
/// range for the permutation.
std::uint64_t evaluate(const StatisticKind& kind, const Permutation& p);

}  // namespace permlab
