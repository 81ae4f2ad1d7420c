#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace dsos {

struct EcdfPoint {
    double value;
    double cdf;

    bool operator==(const EcdfPoint&) const = default;
};

/// Right-continuous empirical CDF at its jump points, ascending. Ties collapse to one point.
std::vector<EcdfPoint> empirical_cdf(std::vector<double> sample);

/// sup |F_M - F| from an empirical CDF; F should be continuous.
double ks_statistic(const std::vector<EcdfPoint>& ecdf, const std::function<double(double)>& cdf);
double ks_statistic(const std::vector<double>& sample, const std::function<double(double)>& cdf);

/// sup |F_a - F_b| between two empirical CDFs.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

struct Moments {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0; // unbiased
};

Moments moments(const std::vector<double>& xs);

/// Equal-width bins on [lo, hi]; values outside are counted in `outside`.
struct Histogram {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;
    std::uint64_t outside = 0;

    Histogram(double lo, double hi, int bins);
    void add(double x);
    void merge(const Histogram& other);
    int bins() const { return static_cast<int>(counts.size()); }
    double width() const { return (hi - lo) / bins(); }
    double left(int k) const { return lo + k * width(); }
    /// counts[k] / (total_samples * width): a density estimate when `samples` draws were made.
    double density(int k, std::uint64_t samples) const;
};

double exponential_cdf(double x);
double gumbel_cdf(double x);

} // namespace dsos
