#include "dsos/distribution.hpp"

#include "dsos/errors.hpp"

// Boost 1.74 pchip calls unqualified isnan; <math.h> puts it in the global namespace.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace dsos {

struct HeightDistribution::Table {
    std::vector<double> x;
    std::vector<double> cdf;
    std::shared_ptr<boost::math::interpolators::pchip<std::vector<double>>> interp;
};

HeightDistribution::HeightDistribution(Kind kind, double param, double lower, double upper,
                                       std::string descriptor)
    : kind_(kind), param_(param), lower_(lower), upper_(upper), descriptor_(std::move(descriptor)) {}

HeightDistribution HeightDistribution::uniform() {
    return {Kind::Uniform, 0.0, 0.0, 1.0, "uniform"};
}

HeightDistribution HeightDistribution::exponential(double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw InvalidInput("exponential: rate must be positive and finite");
    }
    std::string name = rate == 1.0 ? "exp" : "exp:" + std::to_string(rate);
    return {Kind::Exponential, rate, 0.0, std::numeric_limits<double>::infinity(), name};
}

HeightDistribution HeightDistribution::power_beta(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw InvalidInput("beta: exponent must be positive and finite");
    }
    std::ostringstream name;
    name << "beta:" << a;
    return {Kind::PowerBeta, a, 0.0, 1.0, name.str()};
}

HeightDistribution HeightDistribution::from_table(std::vector<double> x, std::vector<double> cdf) {
    if (x.size() != cdf.size() || x.size() < 2) {
        throw InvalidInput("table: need at least two (x, cdf) pairs of equal length");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(cdf[i])) {
            throw InvalidInput("table: non-finite entry");
        }
        if (i > 0 && !(x[i] > x[i - 1])) {
            throw InvalidInput("table: abscissae must be strictly increasing");
        }
        if (i > 0 && cdf[i] < cdf[i - 1]) {
            throw InvalidInput("table: cdf must be nondecreasing");
        }
    }
    if (cdf.front() != 0.0 || cdf.back() != 1.0) {
        throw InvalidInput("table: cdf must start at 0 and end at 1");
    }
    auto table = std::make_shared<Table>();
    table->x = x;
    table->cdf = cdf;
    table->interp = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(
        std::move(x), std::move(cdf));
    HeightDistribution d{Kind::Table, 0.0, table->x.front(), table->x.back(), "table"};
    d.table_ = std::move(table);
    return d;
}

HeightDistribution HeightDistribution::from_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("table: cannot open " + path);
    }
    std::vector<double> xs;
    std::vector<double> fs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double x = 0.0;
        double f = 0.0;
        if (!(row >> x >> f)) {
            if (xs.empty()) {
                continue; // header
            }
            throw ParseError("table: expected two numbers", lineno, 1);
        }
        xs.push_back(x);
        fs.push_back(f);
    }
    auto d = from_table(std::move(xs), std::move(fs));
    d.descriptor_ = "table:" + path;
    return d;
}

HeightDistribution HeightDistribution::parse(const std::string& descriptor) {
    if (descriptor == "uniform") {
        return uniform();
    }
    if (descriptor == "exp" || descriptor == "exponential") {
        return exponential();
    }
    const auto colon = descriptor.find(':');
    if (colon != std::string::npos) {
        const std::string head = descriptor.substr(0, colon);
        const std::string tail = descriptor.substr(colon + 1);
        if (head == "table") {
            return from_table_file(tail);
        }
        double value = 0.0;
        try {
            std::size_t used = 0;
            value = std::stod(tail, &used);
            if (used != tail.size()) {
                throw InvalidInput("");
            }
        } catch (const std::exception&) {
            throw InvalidInput("distribution: bad parameter in '" + descriptor + "'");
        }
        if (head == "exp") {
            return exponential(value);
        }
        if (head == "beta") {
            return power_beta(value);
        }
    }
    throw InvalidInput("distribution: unknown descriptor '" + descriptor + "'");
}

bool HeightDistribution::bounded() const noexcept {
    return std::isfinite(lower_) && std::isfinite(upper_);
}

double HeightDistribution::pdf(double x) const {
    if (x < lower_ || x > upper_) {
        return 0.0;
    }
    switch (kind_) {
    case Kind::Uniform:
        return 1.0;
    case Kind::Exponential:
        return param_ * std::exp(-param_ * x);
    case Kind::PowerBeta:
        return param_ * std::pow(x, param_ - 1.0);
    case Kind::Table:
        return std::max(0.0, table_->interp->prime(x));
    }
    return 0.0;
}

double HeightDistribution::cdf(double x) const {
    if (x <= lower_) {
        return 0.0;
    }
    if (x >= upper_) {
        return 1.0;
    }
    switch (kind_) {
    case Kind::Uniform:
        return x;
    case Kind::Exponential:
        return -std::expm1(-param_ * x);
    case Kind::PowerBeta:
        return std::pow(x, param_);
    case Kind::Table:
        return std::clamp((*table_->interp)(x), 0.0, 1.0);
    }
    return 0.0;
}

double HeightDistribution::quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw DomainError("quantile: probability outside [0,1]");
    }
    switch (kind_) {
    case Kind::Uniform:
        return u;
    case Kind::Exponential:
        return u == 1.0 ? std::numeric_limits<double>::infinity() : -std::log1p(-u) / param_;
    case Kind::PowerBeta:
        return std::pow(u, 1.0 / param_);
    case Kind::Table: {
        const auto& xs = table_->x;
        const auto& fs = table_->cdf;
        if (u <= 0.0) {
            return xs.front();
        }
        if (u >= 1.0) {
            return xs.back();
        }
        // The interpolant is monotone, so bisection inside the bracketing knot interval
        // converges to the (leftmost) preimage.
        const auto it = std::lower_bound(fs.begin(), fs.end(), u);
        const std::size_t k = static_cast<std::size_t>(it - fs.begin());
        double lo = xs[k == 0 ? 0 : k - 1];
        double hi = xs[std::min(k, xs.size() - 1)];
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) {
                break;
            }
            if ((*table_->interp)(mid) < u) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return hi;
    }
    }
    return u;
}

} // namespace dsos
