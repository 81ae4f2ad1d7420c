#pragma once

#include <memory>
#include <string>
#include <vector>

namespace dsos {

/// An absolutely continuous law for the heights: density, CDF and quantile.
///
/// Built-ins are the uniform law on [0,1], the exponential law with unit rate, and the
/// power law Beta(a,1) with density a x^{a-1} on [0,1]. A tabulated CDF is interpolated
/// with a monotone piecewise cubic (PCHIP), so its density is the derivative of that
/// interpolant.
class HeightDistribution {
public:
    enum class Kind { Uniform, Exponential, PowerBeta, Table };

    static HeightDistribution uniform();
    static HeightDistribution exponential(double rate = 1.0);
    static HeightDistribution power_beta(double a);
    static HeightDistribution from_table(std::vector<double> x, std::vector<double> cdf);
    static HeightDistribution from_table_file(const std::string& path);

    /// Parses `uniform`, `exp`, `exp:<rate>`, `beta:<a>` or `table:<path>`.
    static HeightDistribution parse(const std::string& descriptor);

    double pdf(double x) const;
    double cdf(double x) const;
    double quantile(double u) const;

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }
    bool bounded() const noexcept;
    bool in_support(double x) const noexcept { return x >= lower_ && x <= upper_; }

    Kind kind() const noexcept { return kind_; }
    const std::string& descriptor() const noexcept { return descriptor_; }

private:
    struct Table;

    HeightDistribution(Kind kind, double param, double lower, double upper, std::string descriptor);

    Kind kind_;
    double param_;
    double lower_;
    double upper_;
    std::string descriptor_;
    std::shared_ptr<const Table> table_;
};

} // namespace dsos
