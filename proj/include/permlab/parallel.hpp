#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace permlab {

/// 0 means "use std::thread::hardware_concurrency()".
inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Calls body(k) for every k in [0, count), split into contiguous blocks over
/// worker threads. The body must only write to slots owned by k, so results
/// do not depend on the worker count. The first exception is rethrown.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t k = 0; k < count; ++k) body(k);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = count * w / workers;
        const std::size_t end = count * (w + 1) / workers;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t k = begin; k < end; ++k) body(k);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

/// Count, mean and sum of squared deviations, combined with Chan's update.
struct Summary {
    double count = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    double variance() const { return count > 1.0 ? m2 / (count - 1.0) : 0.0; }

    static Summary merge(const Summary& a, const Summary& b) {
        if (a.count == 0.0) return b;
        if (b.count == 0.0) return a;
        Summary out;
        out.count = a.count + b.count;
        const double delta = b.mean - a.mean;
        out.mean = a.mean + delta * (b.count / out.count);
        out.m2 = a.m2 + b.m2 + delta * delta * (a.count * b.count / out.count);
        return out;
    }
};

/// Fixed-shape pairwise reduction over indices: [lo, hi) is always split at
/// its midpoint, so the result depends only on the values, never on how they
/// were produced.
inline Summary tree_summary(std::span<const double> values) {
    if (values.empty()) return {};
    if (values.size() <= 8) {
        Summary s;
        for (double x : values) s = Summary::merge(s, Summary{1.0, x, 0.0});
        return s;
    }
    const std::size_t mid = values.size() / 2;
    return Summary::merge(tree_summary(values.first(mid)), tree_summary(values.subspan(mid)));
}

}  // namespace permlab
