#pragma once

#include "dsos/io.hpp"
#include "dsos/kernel.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dsos {

inline constexpr const char* kVersion = "0.1.0";

enum class ExperimentKind { Universality, Shape, KernelValidate, Corner, TwTable, Sample };

std::string to_string(ExperimentKind k);
ExperimentKind kind_from_string(const std::string& s);

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::Sample;
    int n = 2;
    std::int64_t samples = 1000;
    std::vector<std::string> distributions{"uniform"};
    double line_s = 0.5;
    std::uint64_t seed = 1;
    int workers = 0; // 0: DSOS_WORKERS or the hardware concurrency
    std::string out; // output directory; empty writes nothing
    bool shared_seeds = false;

    // sample
    std::string sampler = "corank1"; // corank1 | rejection | tableau

    // kernel-validate
    int bins = 25;
    std::vector<GapRequest> e0_requests;

    // shape
    int resolution = 20;

    // tw-table
    double v_min = -8.0;
    double v_max = 4.0;
    int v_points = 121;

    /// Throws InvalidInput for infeasible specs.
    void validate() const;
};

Json spec_to_json(const ExperimentSpec& s);
ExperimentSpec spec_from_json(const Json& j);

/// Everything needed to reproduce a run. `timing` (wall time, worker count) is excluded
/// from equality, so reruns with any worker count compare equal.
struct RunManifest {
    Json spec;
    std::string version = kVersion;
    Json seeds;
    Json summary;
    Json timing;

    bool operator==(const RunManifest& o) const {
        return spec == o.spec && version == o.version && seeds == o.seeds && summary == o.summary;
    }
};

Json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);

/// DSOS_WORKERS if set and positive, else the hardware concurrency (at least 1).
int default_workers();

/// Runs fn(0..count-1) on `workers` threads; results are placed by index, so the output
/// does not depend on scheduling. The first exception is rethrown after joining.
void parallel_for(std::int64_t count, int workers, const std::function<void(std::int64_t)>& fn);

/// Line index nearest S*N, clamped to 1..2N-1.
int line_for_s(int n, double S);

RunManifest run_universality(const ExperimentSpec& spec);
RunManifest run_kernel_validate(const ExperimentSpec& spec);
RunManifest run_shape(const ExperimentSpec& spec);
RunManifest run_corner(const ExperimentSpec& spec);
RunManifest run_tw_table(const ExperimentSpec& spec);
RunManifest run_sample(const ExperimentSpec& spec);

/// Dispatch on spec.kind; writes manifest.json into spec.out when set.
RunManifest run_experiment(const ExperimentSpec& spec);

} // namespace dsos
