#include "nlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlab::stats {

double normal_cdf(double x, double mean, double stddev) {
    return 0.5 * (1.0 + std::erf((x - mean) / (stddev * std::sqrt(2.0))));
}

double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean: empty sample");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double variance(const std::vector<double>& xs) {
    if (xs.size() < 2) throw std::invalid_argument("variance: need at least two samples");
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

double ks_pvalue(double statistic, std::size_t n) {
    // Asymptotic Kolmogorov distribution with the Stephens small-sample
    // correction to the effective sqrt(n).
    const double rn = std::sqrt(static_cast<double>(n));
    const double lambda = (rn + 0.12 + 0.11 / rn) * statistic;
    if (lambda < 1e-8) return 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = 2.0 * ((j % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-12 * std::abs(sum) && j > 3) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_test: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max(d, std::max(std::abs(f - lo), std::abs(hi - f)));
    }
    return {d, ks_pvalue(d, samples.size())};
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n < 2) n = 2;
    if (n % 2 == 1) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        s += f(a + i * h) * ((i % 2 == 1) ? 4.0 : 2.0);
    }
    return s * h / 3.0;
}

TabulatedCdf::TabulatedCdf(const std::function<double(double)>& density, double lo, double hi,
                           int n_cells)
    : lo_(lo), hi_(hi) {
    if (!(hi > lo) || n_cells < 2) throw std::invalid_argument("TabulatedCdf: bad range");
    dx_ = (hi - lo) / n_cells;
    cumulative_.resize(static_cast<std::size_t>(n_cells) + 1);
    cumulative_[0] = 0.0;
    double prev = density(lo);
    for (int i = 1; i <= n_cells; ++i) {
        const double x1 = lo + i * dx_;
        const double mid = density(x1 - 0.5 * dx_);
        const double cur = density(x1);
        // Simpson on each cell.
        cumulative_[static_cast<std::size_t>(i)] =
            cumulative_[static_cast<std::size_t>(i) - 1] + dx_ / 6.0 * (prev + 4.0 * mid + cur);
        prev = cur;
    }
    mass_ = cumulative_.back();
    if (!(mass_ > 0.0)) throw std::invalid_argument("TabulatedCdf: density has no mass");
    for (auto& c : cumulative_) c /= mass_;
}

double TabulatedCdf::operator()(double x) const {
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0;
    const double u = (x - lo_) / dx_;
    const auto i = static_cast<std::size_t>(u);
    const double frac = u - static_cast<double>(i);
    return cumulative_[i] + frac * (cumulative_[i + 1] - cumulative_[i]);
}

double TabulatedCdf::quantile(double q) const {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("quantile: q outside (0,1)");
    auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), q);
    if (it == cumulative_.begin()) return lo_;
    if (it == cumulative_.end()) return hi_;
    const auto i = static_cast<std::size_t>(it - cumulative_.begin());
    const double c0 = cumulative_[i - 1];
    const double c1 = cumulative_[i];
    const double frac = (c1 > c0) ? (q - c0) / (c1 - c0) : 0.0;
    return lo_ + (static_cast<double>(i - 1) + frac) * dx_;
}

}  // namespace nlab::stats
