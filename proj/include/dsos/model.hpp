#pragma once

#include "dsos/distribution.hpp"
#include "dsos/rng.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace dsos {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// N x N height field. Rows and columns are 1-based in the accessors, matching x_{ij}.
///
/// A valid configuration increases strictly along every row (in j) and up every
/// column (in i).
struct GridConfig {
    int n = 0;
    std::vector<double> heights; // row-major, heights[(i-1)*n + (j-1)] = x_{ij}

    GridConfig() = default;
    explicit GridConfig(int n);
    GridConfig(int n, std::vector<double> row_major);
    static GridConfig from_rows(const std::vector<std::vector<double>>& rows);

    double& at(int i, int j) { return heights[static_cast<std::size_t>((i - 1) * n + (j - 1))]; }
    double at(int i, int j) const { return heights[static_cast<std::size_t>((i - 1) * n + (j - 1))]; }
    std::vector<std::vector<double>> rows() const;

    bool operator==(const GridConfig&) const = default;
};

/// The same configuration read along the 2N-1 diagonals.
///
/// Line l (1-based) collects the sites with j - i = l - N and holds
/// N(l) = N - |l - N| values stored in decreasing order; line N is the main diagonal.
struct LineSystem {
    int n = 0;
    std::vector<std::vector<double>> lines;

    int line_count() const noexcept { return 2 * n - 1; }
    const std::vector<double>& line(int l) const { return lines.at(static_cast<std::size_t>(l - 1)); }
    std::vector<double>& line(int l) { return lines.at(static_cast<std::size_t>(l - 1)); }

    bool operator==(const LineSystem&) const = default;
};

/// Number of sites on line l of an N x N grid.
constexpr int line_size(int n, int l) noexcept {
    const int d = l - n;
    return n - (d < 0 ? -d : d);
}

/// Probability that N^2 i.i.d. continuous draws are row- and column-increasing.
struct NormalizationConstant {
    int n = 0;
    BigRational value;
    double real() const { return value.convert_to<double>(); }
};

/// True iff heights strictly increase along rows and columns.
/// Throws InvalidInput on non-finite entries or a malformed grid.
bool validate_grid(const GridConfig& g);

/// Diagonal coordinates of a valid grid. Throws ConstraintViolation on invalid grids.
LineSystem grid_to_lines(const GridConfig& g);

/// Inverse of grid_to_lines. Throws ConstraintViolation if the interlacings fail.
GridConfig lines_to_grid(const LineSystem& ls);

/// True iff every line is strictly decreasing and adjacent lines interlace.
/// Throws InvalidInput when a line has the wrong cardinality.
bool interlacing_valid(const LineSystem& ls);

/// Exact normalisation prod_{j=0}^{N-1} j!/(N+j)!.
NormalizationConstant normalization_constant(int n);

/// (1/C) prod h(x_ij) on valid grids, 0 otherwise. Evaluated in log space; results
/// below exp(-745) are returned as 0.
double joint_density(const GridConfig& g, const HeightDistribution& d);

/// Natural log of joint_density; -inf for invalid grids.
double log_joint_density(const GridConfig& g, const HeightDistribution& d);

struct RejectionStats {
    std::uint64_t attempts = 0;
    std::uint64_t accepted = 0;
    double acceptance_rate() const { return attempts ? double(accepted) / double(attempts) : 0.0; }
};

/// Exact sampler by rejection: i.i.d. draws from d, accepted iff the grid is valid.
/// Draws are generated in row-major order and an attempt is abandoned at the first
/// violated inequality, which does not change the accepted law. Ties count as violations.
/// Throws ResourceLimit after `max_attempts` failures.
GridConfig rejection_sample(int n, const HeightDistribution& d, Rng& rng,
                            std::uint64_t max_attempts = 2'000'000'000ULL,
                            RejectionStats* stats = nullptr);

/// Exact sampler through the order structure: a uniformly random standard Young
/// tableau of square shape (hook walk) fixes the ranks, sorted i.i.d. draws fill them.
GridConfig tableau_sample(int n, const HeightDistribution& d, Rng& rng);

/// u = H(y) on every value. Throws DomainError outside the support of d.
LineSystem cdf_transform(const LineSystem& ls, const HeightDistribution& d);

/// y = H^{-1}(u) on every value. Throws DomainError outside [0,1].
LineSystem inverse_transform(const LineSystem& ls, const HeightDistribution& d);

} // namespace dsos
