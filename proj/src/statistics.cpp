#include "permlab/statistics.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <vector>

#include "permlab/error.hpp"

namespace permlab {

namespace {

// Fenwick tree over values 1..n.
template <typename T>
class Fenwick {
public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, T{0}) {}

    void add(std::size_t pos, T delta) {
        for (; pos < tree_.size(); pos += pos & (~pos + 1)) tree_[pos] += delta;
    }
    /// Sum over 1..pos.
    T prefix(std::size_t pos) const {
        T s{0};
        for (; pos > 0; pos -= pos & (~pos + 1)) s += tree_[pos];
        return s;
    }

private:
    std::vector<T> tree_;
};

// Overflow-checked 128-bit Fenwick used by the increasing-subsequence DP.
class WideFenwick {
public:
    using u128 = unsigned __int128;
    explicit WideFenwick(std::size_t n) : tree_(n + 1, 0) {}

    void add(std::size_t pos, u128 delta) {
        for (; pos < tree_.size(); pos += pos & (~pos + 1)) {
            if (tree_[pos] > std::numeric_limits<u128>::max() - delta) throw Overflow("increasing_subsequences: count overflow");
            tree_[pos] += delta;
        }
    }
    u128 prefix(std::size_t pos) const {
        u128 s = 0;
        for (; pos > 0; pos -= pos & (~pos + 1)) {
            if (s > std::numeric_limits<u128>::max() - tree_[pos]) throw Overflow("increasing_subsequences: count overflow");
            s += tree_[pos];
        }
        return s;
    }

private:
    std::vector<u128> tree_;
};

std::uint64_t merge_count(std::vector<double>& a, std::vector<double>& buf, std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t count = merge_count(a, buf, lo, mid) + merge_count(a, buf, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (a[j] < a[i]) {
            count += mid - i;
            buf[k++] = a[j++];
        } else {
            buf[k++] = a[i++];
        }
    }
    while (i < mid) buf[k++] = a[i++];
    while (j < hi) buf[k++] = a[j++];
    std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
              a.begin() + static_cast<std::ptrdiff_t>(lo));
    return count;
}

std::uint32_t parse_m(std::string_view text, std::string_view what) {
    std::uint32_t m = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), m);
    if (ec != std::errc{} || ptr != text.data() + text.size() || m < 1)
        throw InvalidArgument("statistic '" + std::string(what) + "' needs an integer parameter m >= 1");
    return m;
}

}  // namespace

bool StatisticKind::has_parameter() const noexcept {
    return tag == Tag::Descents || tag == Tag::Ascents || tag == Tag::Rising || tag == Tag::IncSubseq;
}

StatisticKind StatisticKind::parse(std::string_view text) {
    const auto colon = text.find(':');
    const auto name = text.substr(0, colon);
    const auto arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    auto no_arg = [&](StatisticKind k) {
        if (colon != std::string_view::npos) throw InvalidArgument("statistic '" + std::string(name) + "' takes no parameter");
        return k;
    };
    if (name == "inv") return no_arg(inv());
    if (name == "ainv") return no_arg(ainv());
    if (name == "locmax") return no_arg(local_max());
    if (name == "las") return no_arg(longest_alt());
    if (name == "desc") return descents(parse_m(arg, name));
    if (name == "asc") return ascents(parse_m(arg, name));
    if (name == "rising") return rising(parse_m(arg, name));
    if (name == "incsub") return inc_subseq(parse_m(arg, name));
    throw InvalidArgument("unknown statistic '" + std::string(text) + "'");
}

std::string StatisticKind::to_string() const {
    switch (tag) {
        case Tag::Inv: return "inv";
        case Tag::AInv: return "ainv";
        case Tag::LocalMax: return "locmax";
        case Tag::LongestAlt: return "las";
        case Tag::Descents: return "desc:" + std::to_string(m);
        case Tag::Ascents: return "asc:" + std::to_string(m);
        case Tag::Rising: return "rising:" + std::to_string(m);
        case Tag::IncSubseq: return "incsub:" + std::to_string(m);
    }
    return "?";
}

std::uint64_t count_inversions(std::span<const double> values) {
    std::vector<double> a(values.begin(), values.end());
    std::vector<double> buf(a.size());
    return merge_count(a, buf, 0, a.size());
}

std::uint64_t inversions(const Permutation& p) {
    const std::size_t n = p.size();
    Fenwick<std::uint32_t> seen(n);
    std::uint64_t count = 0;
    for (std::size_t k = 0; k < n; ++k) {
        // earlier entries greater than p[k]
        count += k - seen.prefix(p[k]);
        seen.add(p[k], 1);
    }
    return count;
}

std::uint64_t anti_inversions(const Permutation& p) { return pair_count(p.size()) - inversions(p); }

std::uint64_t window_pair_count(std::uint64_t n, std::uint64_t m) {
    const std::uint64_t k = std::min(m, n == 0 ? 0 : n - 1);
    // sum_{d=1..k} (n - d)
    return k * n - k * (k + 1) / 2;
}

std::uint64_t m_descents(const Permutation& p, std::uint32_t m) {
    if (m < 1) throw InvalidArgument("m_descents: m must be >= 1");
    const std::size_t n = p.size();
    if (m >= n - 1) return inversions(p);
    std::uint64_t count = 0;
    if (m <= 16) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t end = std::min(n, i + m + 1);
            for (std::size_t j = i + 1; j < end; ++j) count += p[i] > p[j];
        }
        return count;
    }
    Fenwick<std::uint32_t> window(n);
    std::uint32_t in_window = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j > m) {
            window.add(p[j - m - 1], static_cast<std::uint32_t>(-1));
            --in_window;
        }
        count += in_window - window.prefix(p[j]);
        window.add(p[j], 1);
        ++in_window;
    }
    return count;
}

std::uint64_t m_ascents(const Permutation& p, std::uint32_t m) {
    return window_pair_count(p.size(), m) - m_descents(p, m);
}

std::uint64_t local_maxima(const Permutation& p) {
    std::uint64_t count = 0;
    for (std::size_t k = 1; k + 1 < p.size(); ++k) count += p[k - 1] < p[k] && p[k] > p[k + 1];
    return count;
}

std::uint64_t longest_alternating(const Permutation& p, AlternationStart start) {
    // `ready_down`: best length whose next step must be a descent (includes the
    // single-element start); `ready_up`: best length whose next step must be an
    // ascent, 0 while no such subsequence exists.
    std::uint64_t ready_down = 1, ready_up = 0;
    const bool flip = start == AlternationStart::Ascent;
    for (std::size_t k = 1; k < p.size(); ++k) {
        const bool down = flip ? p[k] > p[k - 1] : p[k] < p[k - 1];
        if (down)
            ready_up = std::max(ready_up, ready_down + 1);
        else if (ready_up > 0)
            ready_down = std::max(ready_down, ready_up + 1);
    }
    return std::max(ready_down, ready_up);
}

std::uint64_t rising_sequences(const Permutation& p, std::uint32_t m) {
    if (m < 1 || m > p.size()) throw InvalidArgument("rising_sequences: need 1 <= m <= n");
    std::uint64_t count = 0, run = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        run = (k > 0 && p[k] > p[k - 1]) ? run + 1 : 1;
        count += run >= m;
    }
    return count;
}

std::uint64_t increasing_subsequences(const Permutation& p, std::uint32_t m) {
    using u128 = WideFenwick::u128;
    const std::size_t n = p.size();
    if (m < 1 || m > n) throw InvalidArgument("increasing_subsequences: need 1 <= m <= n");
    // ending[k]: increasing subsequences of the current length ending at k
    std::vector<u128> ending(n, 1);
    for (std::uint32_t len = 2; len <= m; ++len) {
        WideFenwick tree(n);
        std::vector<u128> next(n);
        for (std::size_t k = 0; k < n; ++k) {
            next[k] = tree.prefix(p[k] - 1);
            tree.add(p[k], ending[k]);
        }
        ending = std::move(next);
    }
    u128 total = 0;
    for (auto c : ending) {
        if (total > std::numeric_limits<u128>::max() - c) throw Overflow("increasing_subsequences: count overflow");
        total += c;
    }
    if (total > std::numeric_limits<std::uint64_t>::max())
        throw Overflow("increasing_subsequences: count exceeds 2^64 - 1");
    return static_cast<std::uint64_t>(total);
}

std::uint64_t evaluate(const StatisticKind& kind, const Permutation& p) {
    using Tag = StatisticKind::Tag;
    if (kind.has_parameter() && kind.m < 1) throw InvalidArgument("statistic parameter m must be >= 1");
    switch (kind.tag) {
        case Tag::Inv: return inversions(p);
        case Tag::AInv: return anti_inversions(p);
        case Tag::Descents: return m_descents(p, kind.m);
        case Tag::Ascents: return m_ascents(p, kind.m);
        case Tag::LocalMax: return local_maxima(p);
        case Tag::LongestAlt: return longest_alternating(p);
        case Tag::Rising:
            if (kind.m > p.size()) throw InvalidArgument(kind.to_string() + ": m exceeds n = " + std::to_string(p.size()));
            return rising_sequences(p, kind.m);
        case Tag::IncSubseq:
            if (kind.m > p.size()) throw InvalidArgument(kind.to_string() + ": m exceeds n = " + std::to_string(p.size()));
            return increasing_subsequences(p, kind.m);
    }
    throw InvalidArgument("unknown statistic");
}

}  // namespace permlab
