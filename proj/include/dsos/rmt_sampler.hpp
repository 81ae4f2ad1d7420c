#pragma once

#include "dsos/distribution.hpp"
#include "dsos/model.hpp"
#include "dsos/rng.hpp"

#include <vector>

namespace dsos {

/// Spectrum of a diagonal matrix: distinct ascending poles with multiplicities.
struct SpectrumState {
    std::vector<double> poles;
    std::vector<int> multiplicities;
};

struct DirichletWeights {
    std::vector<double> q;
};

/// Dirichlet D[s_1, ..., s_m] via normalised Gamma(s_i, 1) draws.
DirichletWeights dirichlet_sample(const std::vector<int>& s, Rng& rng);

/// The m-1 zeros of sum_i q_i / (x - a_i), one in each (a_i, a_{i+1}), returned ascending.
/// Bisection to a relative bracket width of 1e-14.
std::vector<double> secular_roots(const std::vector<double>& poles, const std::vector<double>& q);

/// Eigenvalues of the corank-1 projection of diag(state) that are not inherited poles:
/// Dirichlet weights with the state's multiplicities, then the secular roots.
std::vector<double> corank1_step(const SpectrumState& state, Rng& rng);

/// Lines 1..max_line of a uniform-case configuration (each descending).
/// Lines are generated in order, so a prefix costs only its own work.
std::vector<std::vector<double>> sample_uniform_lines(int n, int max_line, Rng& rng);

/// Exact uniform-case sampler: growth phase for lines 1..N, shrink phase for N+1..2N-1.
LineSystem sample_uniform_config(int n, Rng& rng);

/// Exact sampler for a general law: uniform-case lines pushed through the quantile of d.
GridConfig sample_config(int n, const HeightDistribution& d, Rng& rng);

} // namespace dsos
