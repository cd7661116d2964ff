#include "permlab/normal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "permlab/error.hpp"
#include "permlab/exact.hpp"

namespace permlab {

double normal_cdf(double x) { return 0.5 * boost::math::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("normal_quantile: p must lie in (0, 1)");
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double ks_to_normal(std::span<const double> sample) {
    if (sample.empty()) throw InvalidArgument("ks_to_normal: empty sample");
    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double f = normal_cdf(x[k]);
        d = std::max({d, static_cast<double>(k + 1) / n - f, f - static_cast<double>(k) / n});
    }
    return d;
}

double wasserstein1_to_normal(std::span<const double> sample) {
    if (sample.empty()) throw InvalidArgument("wasserstein1_to_normal: empty sample");
    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    CompensatedSum s;
    for (std::size_t k = 0; k < x.size(); ++k)
        s += std::abs(x[k] - normal_quantile((static_cast<double>(k) + 0.5) / n));
    return s.value() / n;
}

}  // namespace permlab
