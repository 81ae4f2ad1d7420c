#include "dsos/stats.hpp"

#include "dsos/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dsos {

std::vector<EcdfPoint> empirical_cdf(std::vector<double> sample) {
    if (sample.empty()) {
        throw InvalidInput("empirical_cdf: empty sample");
    }
    for (double x : sample) {
        if (std::isnan(x)) {
            throw InvalidInput("empirical_cdf: NaN in sample");
        }
    }
    std::sort(sample.begin(), sample.end());
    const double m = static_cast<double>(sample.size());
    std::vector<EcdfPoint> out;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (i + 1 < sample.size() && sample[i + 1] == sample[i]) {
            continue;
        }
        out.push_back({sample[i], static_cast<double>(i + 1) / m});
    }
    return out;
}

double ks_statistic(const std::vector<EcdfPoint>& ecdf, const std::function<double(double)>& cdf) {
    double d = 0.0;
    double below = 0.0;
    for (const auto& p : ecdf) {
        const double f = cdf(p.value);
        d = std::max({d, std::abs(f - below), std::abs(p.cdf - f)});
        below = p.cdf;
    }
    return d;
}

double ks_statistic(const std::vector<double>& sample, const std::function<double(double)>& cdf) {
    return ks_statistic(empirical_cdf(sample), cdf);
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) {
        throw InvalidInput("ks_two_sample: empty sample");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() || j < b.size()) {
        double x;
        if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
            x = a[i];
        } else {
            x = b[j];
        }
        while (i < a.size() && a[i] == x) {
            ++i;
        }
        while (j < b.size() && b[j] == x) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

Moments moments(const std::vector<double>& xs) {
    Moments m;
    m.count = xs.size();
    if (xs.empty()) {
        return m;
    }
    // Welford
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t k = 0;
    for (double x : xs) {
        ++k;
        const double delta = x - mean;
        mean += delta / static_cast<double>(k);
        m2 += delta * (x - mean);
    }
    m.mean = mean;
    m.variance = k > 1 ? m2 / static_cast<double>(k - 1) : 0.0;
    return m;
}

Histogram::Histogram(double lo_, double hi_, int bins) : lo(lo_), hi(hi_) {
    if (bins < 1 || !(hi_ > lo_)) {
        throw InvalidInput("Histogram: need bins >= 1 and hi > lo");
    }
    counts.assign(static_cast<std::size_t>(bins), 0);
}

void Histogram::add(double x) {
    ++total;
    if (!(x >= lo && x <= hi)) {
        ++outside;
        return;
    }
    auto k = static_cast<int>((x - lo) / width());
    k = std::clamp(k, 0, bins() - 1);
    ++counts[static_cast<std::size_t>(k)];
}

void Histogram::merge(const Histogram& other) {
    if (other.counts.size() != counts.size() || other.lo != lo || other.hi != hi) {
        throw InvalidInput("Histogram::merge: incompatible binning");
    }
    for (std::size_t k = 0; k < counts.size(); ++k) {
        counts[k] += other.counts[k];
    }
    total += other.total;
    outside += other.outside;
}

double Histogram::density(int k, std::uint64_t samples) const {
    return static_cast<double>(counts.at(static_cast<std::size_t>(k))) / (static_cast<double>(samples) * width());
}

double exponential_cdf(double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); }

double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

} // namespace dsos
