#include "dsos/rmt_sampler.hpp"

#include "dsos/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dsos {

DirichletWeights dirichlet_sample(const std::vector<int>& s, Rng& rng) {
    if (s.empty()) {
        throw InvalidInput("dirichlet_sample: empty parameter list");
    }
    DirichletWeights out;
    out.q.resize(s.size());
    for (;;) {
        double total = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] < 1) {
                throw InvalidInput("dirichlet_sample: multiplicities must be >= 1");
            }
            std::gamma_distribution<double> g(static_cast<double>(s[i]), 1.0);
            out.q[i] = g(rng);
            total += out.q[i];
        }
        if (total > 0.0) {
            bool positive = true;
            for (auto& q : out.q) {
                q /= total;
                positive = positive && q > 0.0;
            }
            if (positive) {
                return out;
            }
        }
    }
}

std::vector<double> secular_roots(const std::vector<double>& poles, const std::vector<double>& q) {
    const std::size_t m = poles.size();
    if (m < 2 || q.size() != m) {
        throw InvalidInput("secular_roots: need at least two poles and matching weights");
    }
    for (std::size_t i = 1; i < m; ++i) {
        if (!(poles[i] > poles[i - 1])) {
            throw InvalidInput("secular_roots: poles must be strictly increasing");
        }
    }
    auto f = [&](double x) {
        double sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            sum += q[i] / (x - poles[i]);
        }
        return sum;
    };
    std::vector<double> roots(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        double lo = poles[i];
        double hi = poles[i + 1];
        for (int iter = 0; iter < 2000; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) {
                break;
            }
            if (hi - lo <= 1e-14 * std::max(std::abs(lo), std::abs(hi))) {
                break;
            }
            // f decreases from +inf to -inf across the interval.
            if (f(mid) > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const double root = 0.5 * (lo + hi);
        if (!(root > poles[i] && root < poles[i + 1])) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "secular_roots: root " << root << " not strictly inside (" << poles[i] << ", "
                << poles[i + 1] << ")";
            throw NumericalError(msg.str());
        }
        roots[i] = root;
    }
    return roots;
}

std::vector<double> corank1_step(const SpectrumState& state, Rng& rng) {
    if (state.poles.size() != state.multiplicities.size()) {
        throw InvalidInput("corank1_step: poles and multiplicities differ in length");
    }
    const auto w = dirichlet_sample(state.multiplicities, rng);
    return secular_roots(state.poles, w.q);
}

namespace {

struct CoalescedPoles {};

bool well_separated(const std::vector<double>& ascending) {
    for (std::size_t i = 1; i < ascending.size(); ++i) {
        if (ascending[i] - ascending[i - 1] < 1e-13 * std::max(1.0, std::abs(ascending[i]))) {
            return false;
        }
    }
    return true;
}

// Lines as ascending vectors; reversed by the callers.
std::vector<std::vector<double>> grow(int n, int max_line, Rng& rng) {
    std::vector<std::vector<double>> lines;
    lines.reserve(static_cast<std::size_t>(max_line));
    SpectrumState state;
    std::vector<double> prev;
    for (int l = 1; l <= max_line; ++l) {
        state.poles.clear();
        state.multiplicities.clear();
        if (l <= n) {
            const int outer = n - l + 1;
            state.poles.push_back(0.0);
            state.multiplicities.push_back(outer);
            for (double y : prev) {
                state.poles.push_back(y);
                state.multiplicities.push_back(1);
            }
            state.poles.push_back(1.0);
            state.multiplicities.push_back(outer);
        } else {
            state.poles = prev;
            state.multiplicities.assign(prev.size(), 1);
        }
        auto roots = corank1_step(state, rng);
        if (!well_separated(roots)) {
            throw CoalescedPoles{};
        }
        lines.push_back(roots);
        prev = std::move(roots);
    }
    return lines;
}

} // namespace

std::vector<std::vector<double>> sample_uniform_lines(int n, int max_line, Rng& rng) {
    if (n < 1) {
        throw InvalidInput("sample_uniform_lines: n must be positive");
    }
    if (max_line < 1 || max_line > 2 * n - 1) {
        throw InvalidInput("sample_uniform_lines: max_line outside 1..2N-1");
    }
    for (;;) {
        try {
            auto lines = grow(n, max_line, rng);
            for (auto& line : lines) {
                std::reverse(line.begin(), line.end());
            }
            return lines;
        } catch (const CoalescedPoles&) {
            // Probability-zero event in exact arithmetic; start over.
        }
    }
}

LineSystem sample_uniform_config(int n, Rng& rng) {
    LineSystem ls;
    ls.n = n;
    ls.lines = sample_uniform_lines(n, 2 * n - 1, rng);
    return ls;
}

GridConfig sample_config(int n, const HeightDistribution& d, Rng& rng) {
    for (;;) {
        const auto ls = inverse_transform(sample_uniform_config(n, rng), d);
        try {
            return lines_to_grid(ls);
        } catch (const ConstraintViolation&) {
            // Ties after the quantile map; resample.
        }
    }
}

} // namespace dsos
