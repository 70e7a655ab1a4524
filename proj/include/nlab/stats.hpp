#ifndef NLAB_STATS_HPP
#define NLAB_STATS_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace nlab::stats {

double normal_cdf(double x, double mean = 0.0, double stddev = 1.0);

double mean(const std::vector<double>& xs);
double variance(const std::vector<double>& xs);  // unbiased

struct KsResult {
    double statistic;
    double p_value;
};

// One-sample Kolmogorov-Smirnov test of `samples` against the continuous
// CDF `cdf`. Uses the asymptotic Kolmogorov distribution for the p-value,
// adequate for n >= 100.
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

double ks_pvalue(double statistic, std::size_t n);

// Composite Simpson quadrature on [a, b] with n subintervals (n made even).
double simpson(const std::function<double(double)>& f, double a, double b, int n);

// Cumulative distribution tabulated from a (not necessarily normalized)
// density on [lo, hi]; evaluation interpolates linearly between grid nodes.
class TabulatedCdf {
public:
    TabulatedCdf(const std::function<double(double)>& density, double lo, double hi, int n_cells);

    double operator()(double x) const;
    double quantile(double q) const;  // q in (0, 1)
    double total_mass() const { return mass_; }

private:
    double lo_, hi_, dx_;
    double mass_;
    std::vector<double> cumulative_;  // cumulative_[i] = integral up to lo_ + i*dx_, normalized
};

}  // namespace nlab::stats

#endif
