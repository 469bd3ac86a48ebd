#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ldpcbounds/bounds.hpp"
#include "ldpcbounds/threshold.hpp"

namespace py = pybind11;
using namespace ldpcbounds;

namespace {

Method method_from(const std::string& name) { return Method::parse(name); }

CheckProfile profile_from(const py::dict& fractions, double rate) {
    CheckProfile profile;
    profile.rate = rate;
    for (const auto& item : fractions)
        profile.fractions[item.first.cast<int>()] = item.second.cast<double>();
    return profile;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Converse bounds on achievable rates and parity-check density of binary "
              "linear codes over memoryless binary-input output-symmetric channels";

    py::class_<Channel>(m, "Channel")
        .def_static("bec", &Channel::bec, py::arg("erasure_prob"))
        .def_static("bsc", &Channel::bsc, py::arg("crossover_prob"))
        .def_static("biawgn", &Channel::biawgn, py::arg("sigma"))
        .def_property_readonly("kind", [](const Channel& c) { return to_string(c.kind()); })
        .def_property_readonly("parameter", &Channel::parameter)
        .def("capacity", [](const Channel& c) { return c.capacity(); })
        .def("hard_decision_w", &Channel::hard_decision_w)
        .def("llr_moment",
             [](const Channel& c, int p) { return moment_m(c.llr_distribution(), p).value; },
             py::arg("p"))
        .def("__repr__", [](const Channel& c) {
            return "Channel(" + to_string(c.kind()) + ", " + std::to_string(c.parameter()) + ")";
        });

    py::class_<DegreeDistribution>(m, "DegreeDistribution")
        .def(py::init([](const py::dict& lambda, const py::dict& rho) {
                 std::map<int, double> l, r;
                 for (const auto& item : lambda)
                     l[item.first.cast<int>()] = item.second.cast<double>();
                 for (const auto& item : rho)
                     r[item.first.cast<int>()] = item.second.cast<double>();
                 return DegreeDistribution(std::move(l), std::move(r));
             }),
             py::arg("lambda_"), py::arg("rho"))
        .def_static("from_json_text", &DegreeDistribution::from_json_text)
        .def("design_rate", &DegreeDistribution::design_rate)
        .def("check_fractions", &DegreeDistribution::check_fractions)
        .def_property_readonly("renormalized", &DegreeDistribution::renormalized);

    py::class_<CheckProfile>(m, "CheckProfile")
        .def(py::init(&profile_from), py::arg("fractions"), py::arg("rate"))
        .def_readonly("fractions", &CheckProfile::fractions)
        .def_readonly("rate", &CheckProfile::rate)
        .def("average_degree", &CheckProfile::average_degree);

    m.def("check_regular_profile", &check_regular_profile, py::arg("degree"), py::arg("rate"));
    m.def("parity_check_density", &parity_check_density, py::arg("profile"));

    py::class_<QuantizationScheme>(m, "QuantizationScheme")
        .def(py::init([](int d, std::vector<double> levels) {
                 QuantizationScheme s{d, std::move(levels)};
                 s.validate();
                 return s;
             }),
             py::arg("d"), py::arg("levels"))
        .def_readonly("d", &QuantizationScheme::d)
        .def_readonly("levels", &QuantizationScheme::levels);

    m.def(
        "bin_probabilities",
        [](const Channel& c, const QuantizationScheme& s) { return bin_probabilities(c, s).p; },
        py::arg("channel"), py::arg("scheme"));

    py::class_<LevelOptimum>(m, "LevelOptimum")
        .def_readonly("scheme", &LevelOptimum::scheme)
        .def_readonly("objective", &LevelOptimum::objective)
        .def_readonly("residual", &LevelOptimum::residual)
        .def_readonly("residual_checked", &LevelOptimum::residual_checked);

    m.def("optimize_levels_density", &optimize_levels_density, py::arg("channel"), py::arg("d"));
    m.def("optimize_levels_rate", &optimize_levels_rate, py::arg("channel"), py::arg("d"),
          py::arg("profile"));

    py::class_<Diagnostics>(m, "Diagnostics")
        .def_readonly("series_terms", &Diagnostics::series_terms)
        .def_readonly("series_tail", &Diagnostics::series_tail)
        .def_readonly("quadrature_error", &Diagnostics::quadrature_error)
        .def_readonly("solver_residual", &Diagnostics::solver_residual)
        .def_readonly("vacuous", &Diagnostics::vacuous)
        .def_readonly("flagged", &Diagnostics::flagged);

    py::class_<DensityConstants>(m, "DensityConstants")
        .def_readonly("k1", &DensityConstants::k1)
        .def_readonly("k2", &DensityConstants::k2)
        .def_readonly("x_star", &DensityConstants::x_star);

    py::class_<BoundResult>(m, "BoundResult")
        .def_readonly("value", &BoundResult::value)
        .def_readonly("diagnostics", &BoundResult::diagnostics)
        .def_readonly("constants", &BoundResult::constants)
        .def_property_readonly("method", [](const BoundResult& r) { return r.method.name(); })
        .def_property_readonly("levels", [](const BoundResult& r) {
            return r.scheme ? py::cast(r.scheme->levels) : py::none().cast<py::object>();
        });

    m.def("binary_entropy", &binary_entropy, py::arg("x"));
    m.def(
        "rate_upper_bound",
        [](const Channel& c, const CheckProfile& p, const std::string& method) {
            const Method m_ = method_from(method);
            switch (m_.kind) {
                case MethodKind::two_level: return rate_ub_two_level(c, p);
                case MethodKind::quantized: return rate_ub_quantized(c, m_.d, p);
                case MethodKind::unquantized: return rate_ub_unquantized(c, p);
            }
            throw std::logic_error("unknown method");
        },
        py::arg("channel"), py::arg("profile"), py::arg("method") = "unquantized");
    m.def(
        "density_lower_bound",
        [](const Channel& c, double epsilon, const std::string& method) {
            const Method m_ = method_from(method);
            switch (m_.kind) {
                case MethodKind::two_level: return density_lb_two_level(c, epsilon);
                case MethodKind::quantized: return density_lb_quantized(c, m_.d, epsilon);
                case MethodKind::unquantized: return density_lb_unquantized(c, epsilon);
            }
            throw std::logic_error("unknown method");
        },
        py::arg("channel"), py::arg("epsilon"), py::arg("method") = "unquantized");
    m.def(
        "entropy_lower_bound",
        [](const Channel& c, double rate, const CheckProfile& p, const std::string& method) {
            const Method m_ = method_from(method);
            if (m_.kind == MethodKind::quantized) {
                const QuantizationScheme s = optimize_levels_rate(c, m_.d, p).scheme;
                return entropy_lb_quantized(c, s, rate, p);
            }
            return entropy_lb_unquantized(c, rate, p);
        },
        py::arg("channel"), py::arg("rate"), py::arg("profile"),
        py::arg("method") = "unquantized");

    m.def(
        "threshold_ebno_db",
        [](const CheckProfile& profile, const std::string& method, double tolerance) {
            ThresholdQuery q{profile, method_from(method)};
            q.options.tolerance = tolerance;
            return threshold(q).value;
        },
        py::arg("profile"), py::arg("method"), py::arg("tolerance") = 1e-4);
    m.def(
        "capacity_limit_ebno_db",
        [](double rate) { return capacity_limit_db(rate).value; }, py::arg("rate"));

    m.def(
        "sweep_density",
        [](double rate, double start, double stop, double step) {
            py::list rows;
            for (const DensitySweepRow& r : sweep_density(rate, SweepGrid{start, stop, step})) {
                py::dict row;
                row["ebno_db"] = r.ebno_db;
                row["epsilon"] = r.epsilon ? py::cast(*r.epsilon) : py::none();
                row["density_lb_2level"] = r.two_level ? py::cast(*r.two_level) : py::none();
                row["density_lb_unquantized"] =
                    r.unquantized ? py::cast(*r.unquantized) : py::none();
                row["status"] = r.status;
                rows.append(row);
            }
            return rows;
        },
        py::arg("rate"), py::arg("start"), py::arg("stop"), py::arg("step"));
    m.def(
        "sweep_thresholds",
        [](int right_degree, double start, double stop, double step) {
            py::list rows;
            for (const ThresholdSweepRow& r :
                 sweep_thresholds(right_degree, SweepGrid{start, stop, step})) {
                py::dict row;
                row["rate"] = r.rate;
                auto put = [&](const char* key, const std::optional<double>& v) {
                    row[key] = v ? py::cast(*v) : py::none();
                };
                put("capacity_db", r.capacity_db);
                put("two_level_db", r.two_level_db);
                put("four_level_db", r.quantized4_db);
                put("eight_level_db", r.quantized8_db);
                put("unquantized_db", r.unquantized_db);
                row["status"] = r.status;
                rows.append(row);
            }
            return rows;
        },
        py::arg("right_degree"), py::arg("start"), py::arg("stop"), py::arg("step"));
}
