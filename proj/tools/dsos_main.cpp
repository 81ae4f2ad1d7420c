// Command line front end for the experiment runners.

#include "dsos/errors.hpp"
#include "dsos/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

struct Flags {
    std::optional<int> n;
    std::optional<std::int64_t> samples;
    std::vector<std::string> dists;
    std::optional<double> line_s;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::string> out;
    std::optional<std::string> config;
    std::optional<std::string> sampler;
    std::optional<int> resolution;
    std::optional<int> bins;
    bool shared_seeds = false;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--n", f.n, "grid side N");
    sub->add_option("--samples", f.samples, "Monte Carlo sample count M");
    sub->add_option("--dist", f.dists, "uniform | exp | beta:a | table:<path> (repeatable)");
    sub->add_option("--line-s", f.line_s, "scaled line position S in (0,2)");
    sub->add_option("--seed", f.seed, "master seed");
    sub->add_option("--workers", f.workers, "worker threads (default: DSOS_WORKERS or all cores)");
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--config", f.config, "JSON experiment spec; flags override its fields");
}

dsos::ExperimentSpec build_spec(dsos::ExperimentKind kind, const Flags& f) {
    dsos::ExperimentSpec spec;
    if (f.config) {
        spec = dsos::spec_from_json(dsos::read_json(*f.config));
    }
    spec.kind = kind;
    if (f.n) spec.n = *f.n;
    if (f.samples) spec.samples = *f.samples;
    if (!f.dists.empty()) spec.distributions = f.dists;
    if (f.line_s) spec.line_s = *f.line_s;
    if (f.seed) spec.seed = *f.seed;
    if (f.workers) spec.workers = *f.workers;
    if (f.out) spec.out = *f.out;
    if (f.sampler) spec.sampler = *f.sampler;
    if (f.resolution) spec.resolution = *f.resolution;
    if (f.bins) spec.bins = *f.bins;
    if (f.shared_seeds) spec.shared_seeds = true;
    if (kind == dsos::ExperimentKind::KernelValidate && spec.e0_requests.empty()) {
        spec.e0_requests.push_back({spec.n, 0.7});
    }
    return spec;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo and numerical experiments for random interlaced height fields"};
    app.require_subcommand(1);
    Flags f;

    struct Entry {
        const char* name;
        dsos::ExperimentKind kind;
        const char* help;
    };
    const std::vector<Entry> entries = {
        {"sample", dsos::ExperimentKind::Sample, "draw configurations"},
        {"shape", dsos::ExperimentKind::Shape, "limit surface and optional Monte Carlo mean heights"},
        {"kernel-validate", dsos::ExperimentKind::KernelValidate, "finite-N kernel against oracle samplers"},
        {"edge-fluct", dsos::ExperimentKind::Universality, "rescaled back-row maxima against Tracy-Widom"},
        {"corner", dsos::ExperimentKind::Corner, "corner maximum against its extreme-value limits"},
        {"tw-table", dsos::ExperimentKind::TwTable, "tabulate the Tracy-Widom GUE distribution"},
    };
    std::vector<std::pair<CLI::App*, dsos::ExperimentKind>> subs;
    for (const auto& e : entries) {
        auto* sub = app.add_subcommand(e.name, e.help);
        add_common(sub, f);
        subs.emplace_back(sub, e.kind);
        if (e.kind == dsos::ExperimentKind::Sample) {
            sub->add_option("--sampler", f.sampler, "corank1 | rejection | tableau");
        }
        if (e.kind == dsos::ExperimentKind::Shape) {
            sub->add_option("--resolution", f.resolution, "surface grid resolution");
        }
        if (e.kind == dsos::ExperimentKind::KernelValidate) {
            sub->add_option("--bins", f.bins, "histogram bins per line");
        }
        if (e.kind == dsos::ExperimentKind::Universality || e.kind == dsos::ExperimentKind::Corner) {
            sub->add_flag("--shared-seeds", f.shared_seeds, "use one seed stream for every distribution");
        }
    }
    CLI11_PARSE(app, argc, argv);

    try {
        for (const auto& [sub, kind] : subs) {
            if (!sub->parsed()) {
                continue;
            }
            const auto spec = build_spec(kind, f);
            const auto m = dsos::run_experiment(spec);
            std::cout << dsos::manifest_to_json(m).dump(2) << "\n";
        }
    } catch (const dsos::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
