#include "dsos/model.hpp"

#include "dsos/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

namespace dsos {

GridConfig::GridConfig(int n_) : n(n_), heights(static_cast<std::size_t>(n_ * n_), 0.0) {
    if (n_ < 1) {
        throw InvalidInput("GridConfig: n must be positive");
    }
}

GridConfig::GridConfig(int n_, std::vector<double> row_major) : n(n_), heights(std::move(row_major)) {
    if (n_ < 1 || heights.size() != static_cast<std::size_t>(n_ * n_)) {
        throw InvalidInput("GridConfig: expected n*n heights");
    }
}

GridConfig GridConfig::from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    if (n < 1) {
        throw InvalidInput("GridConfig: empty grid");
    }
    GridConfig g(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) {
            throw InvalidInput("GridConfig: grid is not square");
        }
        std::copy(rows[i].begin(), rows[i].end(), g.heights.begin() + i * n);
    }
    return g;
}

std::vector<std::vector<double>> GridConfig::rows() const {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[i].assign(heights.begin() + i * n, heights.begin() + (i + 1) * n);
    }
    return out;
}

bool validate_grid(const GridConfig& g) {
    if (g.n < 1 || g.heights.size() != static_cast<std::size_t>(g.n * g.n)) {
        throw InvalidInput("validate_grid: malformed grid");
    }
    for (double x : g.heights) {
        if (!std::isfinite(x)) {
            throw InvalidInput("validate_grid: non-finite height");
        }
    }
    for (int i = 1; i <= g.n; ++i) {
        for (int j = 1; j <= g.n; ++j) {
            if (j > 1 && !(g.at(i, j - 1) < g.at(i, j))) {
                return false;
            }
            if (i > 1 && !(g.at(i - 1, j) < g.at(i, j))) {
                return false;
            }
        }
    }
    return true;
}

namespace {

// Sites (i, i + d) of line l = N + d, in increasing i.
int first_row(int n, int l) { return std::max(1, 1 - (l - n)); }

} // namespace

LineSystem grid_to_lines(const GridConfig& g) {
    if (!validate_grid(g)) {
        throw ConstraintViolation("grid_to_lines: grid is not row/column increasing");
    }
    const int n = g.n;
    LineSystem ls;
    ls.n = n;
    ls.lines.resize(static_cast<std::size_t>(2 * n - 1));
    for (int l = 1; l <= 2 * n - 1; ++l) {
        const int d = l - n;
        const int size = line_size(n, l);
        auto& line = ls.line(l);
        line.resize(static_cast<std::size_t>(size));
        const int i0 = first_row(n, l);
        for (int k = 0; k < size; ++k) {
            // Values grow with i along the diagonal; store largest first.
            line[static_cast<std::size_t>(size - 1 - k)] = g.at(i0 + k, i0 + k + d);
        }
    }
    return ls;
}

bool interlacing_valid(const LineSystem& ls) {
    const int n = ls.n;
    if (n < 1 || static_cast<int>(ls.lines.size()) != 2 * n - 1) {
        throw InvalidInput("interlacing_valid: expected 2N-1 lines");
    }
    for (int l = 1; l <= 2 * n - 1; ++l) {
        const auto& line = ls.line(l);
        if (static_cast<int>(line.size()) != line_size(n, l)) {
            std::ostringstream msg;
            msg << "interlacing_valid: line " << l << " holds " << line.size() << " values, expected "
                << line_size(n, l);
            throw InvalidInput(msg.str());
        }
        for (double y : line) {
            if (!std::isfinite(y)) {
                throw InvalidInput("interlacing_valid: non-finite value");
            }
        }
        for (std::size_t k = 1; k < line.size(); ++k) {
            if (!(line[k] < line[k - 1])) {
                return false;
            }
        }
    }
    // Left half: line l-1 sits inside line l.
    for (int l = 2; l <= n; ++l) {
        const auto& outer = ls.line(l);
        const auto& inner = ls.line(l - 1);
        for (std::size_t j = 0; j < inner.size(); ++j) {
            if (!(outer[j + 1] < inner[j] && inner[j] < outer[j])) {
                return false;
            }
        }
    }
    // Right half: line l+1 sits inside line l.
    for (int l = n; l <= 2 * n - 2; ++l) {
        const auto& outer = ls.line(l);
        const auto& inner = ls.line(l + 1);
        for (std::size_t j = 0; j < inner.size(); ++j) {
            if (!(outer[j + 1] < inner[j] && inner[j] < outer[j])) {
                return false;
            }
        }
    }
    return true;
}

GridConfig lines_to_grid(const LineSystem& ls) {
    if (!interlacing_valid(ls)) {
        throw ConstraintViolation("lines_to_grid: interlacing violated");
    }
    const int n = ls.n;
    GridConfig g(n);
    for (int l = 1; l <= 2 * n - 1; ++l) {
        const int d = l - n;
        const int size = line_size(n, l);
        const int i0 = first_row(n, l);
        const auto& line = ls.line(l);
        for (int k = 0; k < size; ++k) {
            g.at(i0 + k, i0 + k + d) = line[static_cast<std::size_t>(size - 1 - k)];
        }
    }
    return g;
}

NormalizationConstant normalization_constant(int n) {
    if (n < 1) {
        throw InvalidInput("normalization_constant: n must be positive");
    }
    // prod_{j=0}^{N-1} Gamma(1+j)/Gamma(N+j+1) = prod_j 1/((j+1)(j+2)...(N+j)).
    BigInt denominator = 1;
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k <= n + j; ++k) {
            denominator *= k;
        }
    }
    return {n, BigRational(BigInt(1), denominator)};
}

double log_joint_density(const GridConfig& g, const HeightDistribution& d) {
    if (!validate_grid(g)) {
        return -std::numeric_limits<double>::infinity();
    }
    double log_inv_c = 0.0;
    for (int j = 0; j < g.n; ++j) {
        log_inv_c += std::lgamma(g.n + j + 1.0) - std::lgamma(j + 1.0);
    }
    double log_h = 0.0;
    for (double x : g.heights) {
        const double h = d.pdf(x);
        if (!(h > 0.0)) {
            return -std::numeric_limits<double>::infinity();
        }
        log_h += std::log(h);
    }
    return log_inv_c + log_h;
}

double joint_density(const GridConfig& g, const HeightDistribution& d) {
    const double lp = log_joint_density(g, d);
    if (lp < -745.0) {
        return 0.0;
    }
    return std::exp(lp);
}

GridConfig rejection_sample(int n, const HeightDistribution& d, Rng& rng, std::uint64_t max_attempts,
                            RejectionStats* stats) {
    if (n < 1) {
        throw InvalidInput("rejection_sample: n must be positive");
    }
    if (n > 4) {
        static bool warned = false;
        if (!warned) {
            std::clog << "warning: rejection_sample with n=" << n
                      << " has acceptance probability " << normalization_constant(n).real() << "\n";
            warned = true;
        }
    }
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    GridConfig g(n);
    std::uint64_t attempts = 0;
    while (attempts < max_attempts) {
        ++attempts;
        bool ok = true;
        for (int i = 1; i <= n && ok; ++i) {
            for (int j = 1; j <= n; ++j) {
                const double x = d.quantile(unif(rng));
                if ((j > 1 && !(g.at(i, j - 1) < x)) || (i > 1 && !(g.at(i - 1, j) < x))) {
                    ok = false;
                    break;
                }
                g.at(i, j) = x;
            }
        }
        if (ok) {
            if (stats) {
                stats->attempts += attempts;
                stats->accepted += 1;
            }
            return g;
        }
    }
    if (stats) {
        stats->attempts += attempts;
    }
    std::ostringstream msg;
    msg << "rejection_sample: no acceptance in " << attempts << " attempts (n=" << n
        << ", expected acceptance rate " << normalization_constant(n).real() << ")";
    throw ResourceLimit(msg.str());
}

GridConfig tableau_sample(int n, const HeightDistribution& d, Rng& rng) {
    if (n < 1) {
        throw InvalidInput("tableau_sample: n must be positive");
    }
    const int cells = n * n;
    std::vector<int> label(static_cast<std::size_t>(cells), 0);
    std::vector<int> row_len(static_cast<std::size_t>(n), n);
    for (int k = cells; k >= 1; --k) {
        // Uniform cell of the remaining diagram.
        std::uniform_int_distribution<int> pick_cell(0, k - 1);
        int r = pick_cell(rng);
        int row = 0;
        while (r >= row_len[row]) {
            r -= row_len[row];
            ++row;
        }
        int col = r;
        // Hook walk to a corner.
        for (;;) {
            const int arm = row_len[row] - 1 - col;
            int leg = 0;
            for (int rr = row + 1; rr < n && row_len[rr] > col; ++rr) {
                ++leg;
            }
            if (arm + leg == 0) {
                break;
            }
            std::uniform_int_distribution<int> step(0, arm + leg - 1);
            const int s = step(rng);
            if (s < arm) {
                col += 1 + s;
            } else {
                row += 1 + (s - arm);
            }
        }
        label[static_cast<std::size_t>(row * n + col)] = k;
        --row_len[row];
    }

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> values(static_cast<std::size_t>(cells));
    for (;;) {
        for (auto& v : values) {
            v = unif(rng);
        }
        std::sort(values.begin(), values.end());
        for (auto& v : values) {
            v = d.quantile(v);
        }
        if (std::adjacent_find(values.begin(), values.end(), [](double a, double b) { return !(a < b); }) ==
            values.end()) {
            break;
        }
    }
    GridConfig g(n);
    for (int c = 0; c < cells; ++c) {
        g.heights[static_cast<std::size_t>(c)] = values[static_cast<std::size_t>(label[c] - 1)];
    }
    return g;
}

LineSystem cdf_transform(const LineSystem& ls, const HeightDistribution& d) {
    LineSystem out = ls;
    for (auto& line : out.lines) {
        for (auto& y : line) {
            if (!d.in_support(y)) {
                throw DomainError("cdf_transform: value outside the support");
            }
            y = d.cdf(y);
        }
    }
    return out;
}

LineSystem inverse_transform(const LineSystem& ls, const HeightDistribution& d) {
    LineSystem out = ls;
    for (auto& line : out.lines) {
        for (auto& u : line) {
            if (!(u >= 0.0 && u <= 1.0)) {
                throw DomainError("inverse_transform: value outside [0,1]");
            }
            u = d.quantile(u);
        }
    }
    return out;
}

} // namespace dsos
