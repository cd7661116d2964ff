#pragma once

// Slow, obviously-correct reference implementations used only by the tests.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "permlab/permutation.hpp"
#include "permlab/rng.hpp"

namespace oracle {

using Q = boost::multiprecision::cpp_rational;
using Seq = std::vector<std::uint32_t>;

inline Seq entries(const permlab::Permutation& p) { return Seq(p.entries().begin(), p.entries().end()); }

inline std::uint64_t inversions(const Seq& p) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) c += p[i] > p[j];
    return c;
}

inline std::uint64_t m_descents(const Seq& p, std::size_t m) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size() && j - i <= m; ++j) c += p[i] > p[j];
    return c;
}

inline std::uint64_t m_ascents(const Seq& p, std::size_t m) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size() && j - i <= m; ++j) c += p[i] < p[j];
    return c;
}

inline std::uint64_t local_maxima(const Seq& p) {
    std::uint64_t c = 0;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) c += p[i - 1] < p[i] && p[i] > p[i + 1];
    return c;
}

inline std::uint64_t rising(const Seq& p, std::size_t m) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i + m <= p.size(); ++i) {
        bool up = true;
        for (std::size_t k = i + 1; k < i + m; ++k) up = up && p[k - 1] < p[k];
        c += up;
    }
    return c;
}

// Exhaustive search over all 2^n subsequences; n <= 16.
inline std::uint64_t longest_alternating_exhaustive(const Seq& p, bool descent_first = true) {
    const std::size_t n = p.size();
    std::uint64_t best = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        Seq s;
        for (std::size_t k = 0; k < n; ++k)
            if (mask >> k & 1u) s.push_back(p[k]);
        bool ok = true;
        for (std::size_t k = 1; k < s.size() && ok; ++k) {
            const bool want_down = ((k - 1) % 2 == 0) == descent_first;
            ok = want_down ? s[k - 1] > s[k] : s[k - 1] < s[k];
        }
        if (ok) best = std::max<std::uint64_t>(best, s.size());
    }
    return best;
}

// O(n^2) dynamic programme over (end position, parity of length).
inline std::uint64_t longest_alternating_quadratic(const Seq& p, bool descent_first = true) {
    const std::size_t n = p.size();
    // len[k][0]: longest valid subsequence ending at k whose next step must be
    // a descent; len[k][1]: next step must be an ascent.
    std::vector<std::array<std::uint64_t, 2>> len(n);
    std::uint64_t best = n > 0 ? 1 : 0;
    for (std::size_t k = 0; k < n; ++k) {
        len[k][descent_first ? 0 : 1] = 1;
        len[k][descent_first ? 1 : 0] = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (p[i] > p[k] && len[i][0] > 0) len[k][1] = std::max(len[k][1], len[i][0] + 1);
            if (p[i] < p[k] && len[i][1] > 0) len[k][0] = std::max(len[k][0], len[i][1] + 1);
        }
        best = std::max({best, len[k][0], len[k][1]});
    }
    return best;
}

// Count of increasing subsequences of length m by O(m n^2) DP.
inline std::uint64_t increasing_subsequences(const Seq& p, std::size_t m) {
    const std::size_t n = p.size();
    std::vector<std::uint64_t> cur(n, 1), next(n);
    for (std::size_t len = 2; len <= m; ++len) {
        for (std::size_t k = 0; k < n; ++k) {
            next[k] = 0;
            for (std::size_t i = 0; i < k; ++i)
                if (p[i] < p[k]) next[k] += cur[i];
        }
        cur.swap(next);
    }
    return std::accumulate(cur.begin(), cur.end(), std::uint64_t{0});
}

// Counts by looping over all m-subsets; small n only.
inline std::uint64_t increasing_subsequences_exhaustive(const Seq& p, std::size_t m) {
    const std::size_t n = p.size();
    std::uint64_t c = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != m) continue;
        std::uint32_t prev = 0;
        bool ok = true;
        for (std::size_t k = 0; k < n && ok; ++k)
            if (mask >> k & 1u) {
                ok = p[k] > prev;
                prev = p[k];
            }
        c += ok;
    }
    return c;
}

inline Seq inverse(const Seq& p) {
    Seq q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[p[i] - 1] = static_cast<std::uint32_t>(i + 1);
    return q;
}

// P(Z_{a_1} < ... < Z_{a_n}) for independent Z_i with CDF z^{w_i}, by
// integrating the joint density one coordinate at a time from the smallest.
// After step k the partial integral is c * z^d.
inline Q ordered_probability(const std::vector<std::uint64_t>& weights_in_order) {
    Q c = 1;
    std::uint64_t d = 0;
    for (auto w : weights_in_order) {
        // integral_0^z c t^d * w t^{w-1} dt = c w / (d + w) z^{d + w}
        c *= Q(w, d + w);
        d += w;
    }
    return c;
}

// P(rho = sigma) where Z_i is the max of i uniforms: players sorted by rank.
inline Q pmf_rank_sequence(const Seq& sigma) {
    const auto order = inverse(sigma);  // order[r - 1] = player with rank r
    return ordered_probability(std::vector<std::uint64_t>(order.begin(), order.end()));
}

template <typename F>
void for_each_permutation(std::size_t n, F&& f) {
    Seq p(n);
    std::iota(p.begin(), p.end(), 1u);
    do f(p);
    while (std::next_permutation(p.begin(), p.end()));
}

struct ExactMoments {
    Q mean;
    Q variance;
};

// Mean and variance of a statistic under the inverse-unfair law, by full
// enumeration with rational arithmetic.
template <typename Stat>
ExactMoments inverse_unfair_moments(std::size_t n, Stat&& stat) {
    Q s1 = 0, s2 = 0;
    for_each_permutation(n, [&](const Seq& p) {
        const Q pr = pmf_rank_sequence(p);
        const Q v = static_cast<long long>(stat(p));
        s1 += pr * v;
        s2 += pr * v * v;
    });
    return {s1, s2 - s1 * s1};
}

inline double to_double(const Q& q) { return q.convert_to<double>(); }

inline Seq random_permutation(std::size_t n, permlab::Rng& rng) {
    Seq p(n);
    std::iota(p.begin(), p.end(), 1u);
    for (std::size_t k = n; k > 1; --k) std::swap(p[k - 1], p[rng.below(k)]);
    return p;
}

}  // namespace oracle
