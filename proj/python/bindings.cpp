#include "dsos/airy.hpp"
#include "dsos/airy_edge.hpp"
#include "dsos/errors.hpp"
#include "dsos/experiments.hpp"
#include "dsos/kernel.hpp"
#include "dsos/limit_shape.hpp"
#include "dsos/model.hpp"
#include "dsos/rmt_sampler.hpp"
#include "dsos/stats.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace dsos;

namespace {

using Rows = std::vector<std::vector<double>>;

std::vector<GapRequest> to_requests(const std::vector<std::pair<int, double>>& reqs) {
    std::vector<GapRequest> out;
    for (const auto& [l, u] : reqs) {
        out.push_back({l, u});
    }
    return out;
}

py::dict gap_dict(const GapResult& r) {
    py::dict d;
    d["value"] = r.value;
    d["nodes"] = r.nodes;
    d["delta"] = r.delta;
    d["method"] = r.method;
    return d;
}

} // namespace

PYBIND11_MODULE(_dsos, m) {
    m.doc() = "Random interlaced height fields: samplers, kernels, limit shape and edge statistics";

    static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
    static py::exception<InvalidInput> invalid(m, "InvalidInput", base.ptr());
    static py::exception<ConstraintViolation> constraint(m, "ConstraintViolation", base.ptr());
    static py::exception<DomainError> domain(m, "DomainError", base.ptr());
    static py::exception<NumericalError> numerical(m, "NumericalError", base.ptr());
    static py::exception<ResourceLimit> resource(m, "ResourceLimit", base.ptr());
    static py::exception<ParseError> parse(m, "ParseError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const InvalidInput& e) {
            py::set_error(invalid, e.what());
        } catch (const ConstraintViolation& e) {
            py::set_error(constraint, e.what());
        } catch (const DomainError& e) {
            py::set_error(domain, e.what());
        } catch (const NumericalError& e) {
            py::set_error(numerical, e.what());
        } catch (const ResourceLimit& e) {
            py::set_error(resource, e.what());
        } catch (const ParseError& e) {
            py::set_error(parse, e.what());
        } catch (const Error& e) {
            py::set_error(base, e.what());
        }
    });

    py::class_<HeightDistribution>(m, "HeightDistribution")
        .def_static("parse", &HeightDistribution::parse, py::arg("descriptor"))
        .def("pdf", &HeightDistribution::pdf)
        .def("cdf", &HeightDistribution::cdf)
        .def("quantile", &HeightDistribution::quantile)
        .def_property_readonly("lower", &HeightDistribution::lower)
        .def_property_readonly("upper", &HeightDistribution::upper)
        .def_property_readonly("descriptor", &HeightDistribution::descriptor);

    // model
    m.def("validate_grid", [](const Rows& rows) { return validate_grid(GridConfig::from_rows(rows)); });
    m.def("grid_to_lines", [](const Rows& rows) { return grid_to_lines(GridConfig::from_rows(rows)).lines; });
    m.def("lines_to_grid", [](int n, const Rows& lines) { return lines_to_grid(LineSystem{n, lines}).rows(); },
          py::arg("n"), py::arg("lines"));
    m.def("interlacing_valid", [](int n, const Rows& lines) { return interlacing_valid(LineSystem{n, lines}); },
          py::arg("n"), py::arg("lines"));
    m.def("normalization_constant", [](int n) {
        const auto c = normalization_constant(n);
        return std::make_pair(boost::multiprecision::numerator(c.value).str(),
                              boost::multiprecision::denominator(c.value).str());
    });
    m.def("joint_density", [](const Rows& rows, const std::string& dist) {
        return joint_density(GridConfig::from_rows(rows), HeightDistribution::parse(dist));
    }, py::arg("grid"), py::arg("dist") = "uniform");

    // samplers; each call draws from the stream (seed, index)
    m.def("sample_config", [](int n, const std::string& dist, std::uint64_t seed, std::uint64_t index) {
        auto rng = make_stream(seed, index);
        return sample_config(n, HeightDistribution::parse(dist), rng).rows();
    }, py::arg("n"), py::arg("dist") = "uniform", py::arg("seed") = 1, py::arg("index") = 0);
    m.def("sample_uniform_lines", [](int n, int max_line, std::uint64_t seed, std::uint64_t index) {
        auto rng = make_stream(seed, index);
        return sample_uniform_lines(n, max_line, rng);
    }, py::arg("n"), py::arg("max_line"), py::arg("seed") = 1, py::arg("index") = 0);
    m.def("rejection_sample", [](int n, const std::string& dist, std::uint64_t seed, std::uint64_t index) {
        auto rng = make_stream(seed, index);
        return rejection_sample(n, HeightDistribution::parse(dist), rng).rows();
    }, py::arg("n"), py::arg("dist") = "uniform", py::arg("seed") = 1, py::arg("index") = 0);

    // finite-N kernel
    py::class_<KernelContext>(m, "KernelContext")
        .def(py::init<int>(), py::arg("n"))
        .def_property_readonly("n", &KernelContext::n)
        .def("K", [](const KernelContext& c, int s, double u, int t, double v) { return kernel_K(c, s, u, t, v); })
        .def("density", [](const KernelContext& c, int l, double u) { return one_point_density(c, l, u); })
        .def("rho", [](const KernelContext& c, const std::vector<std::pair<int, double>>& pts) {
            std::vector<LinePoint> p;
            for (const auto& [l, x] : pts) {
                p.push_back({l, x});
            }
            return correlation_rho(c, p);
        })
        .def("gap_probability", [](const KernelContext& c, const std::vector<std::pair<int, double>>& reqs) {
            return gap_dict(gap_probability_E0(c, to_requests(reqs)));
        });

    // limit shape
    m.def("support_bounds", &support_bounds);
    m.def("density_rho1", &density_rho1);
    m.def("shape_height", [](double x, double y) { return shape_height(x, y).h; });
    m.def("boundary_profiles", &boundary_profiles);

    // Airy and edge statistics
    m.def("airy_ai", &airy_ai);
    m.def("airy_ai_prime", &airy_ai_prime);
    m.def("airy_kernel", &airy_kernel);
    m.def("airy_process_kernel", &airy_process_kernel);
    m.def("fredholm_det_airy", [](const std::vector<double>& times, const std::vector<double>& thresholds) {
        const auto r = fredholm_det_airy(times, thresholds);
        py::dict d;
        d["value"] = r.value;
        d["nodes"] = r.nodes;
        d["delta"] = r.delta;
        return d;
    });
    m.def("tracy_widom_cdf", [](double v) { return tracy_widom_cdf(v); });
    m.def("tracy_widom_stats", [](int nodes) {
        const auto s = tracy_widom_stats(nodes);
        return py::make_tuple(s.mean, s.variance, s.median);
    }, py::arg("nodes") = 64);
    m.def("scaling_frame", [](double S, int n, const std::string& dist) {
        const auto f = scaling_frame_general(S, n, HeightDistribution::parse(dist));
        py::dict d;
        d["S"] = f.S;
        d["n"] = f.n;
        d["edge"] = f.edge;
        d["sigma"] = f.sigma;
        d["tau"] = f.tau;
        d["density_at_edge"] = f.density_at_edge;
        return d;
    }, py::arg("S"), py::arg("n"), py::arg("dist") = "uniform");
    m.def("johnstone_check", &johnstone_check);
    m.def("corner_cdf", [](int n, const std::string& dist, double X) {
        return corner_cdf(n, HeightDistribution::parse(dist), X);
    });

    m.def("ks_two_sample", &ks_two_sample);

    // experiments take and return JSON text
    m.def("run_experiment", [](const std::string& spec_json) {
        const auto spec = spec_from_json(parse_json(spec_json));
        py::gil_scoped_release release;
        return manifest_to_json(run_experiment(spec)).dump();
    });
    m.attr("__version__") = kVersion;
}
