// bindings.cpp — pybind11 module exposing the simulator core

#include "cpbs/dynamics.hpp"
#include "cpbs/model.hpp"
#include "cpbs/quantifiers.hpp"
#include "cpbs/scenario.hpp"
#include "cpbs/spectral.hpp"
#include "cpbs/version.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <stdexcept>

namespace py = pybind11;

namespace {

using cpbs::hilbert::Matrix;
using cpbs::hilbert::Spin;
using cpbs::hilbert::Subsystem;

Spin spin_from(const std::string& s) {
    if (s == "up") return Spin::Up;
    if (s == "down" || s == "dn") return Spin::Down;
    throw std::invalid_argument("spin must be 'up' or 'down'");
}

Subsystem subsystem_from(const std::string& s) {
    if (s == "qd1") return Subsystem::QD1;
    if (s == "qd2") return Subsystem::QD2;
    throw std::invalid_argument("subsystem must be 'qd1' or 'qd2'");
}

cpbs::dynamics::RateUnit unit_from(const std::string& s) {
    if (s == "GHz") return cpbs::dynamics::RateUnit::GHz;
    if (s == "Jp") return cpbs::dynamics::RateUnit::JpUnits;
    throw std::invalid_argument("rate unit must be 'GHz' or 'Jp'");
}

std::vector<cpbs::dynamics::Channel> channels_from(
    const std::vector<std::pair<double, Matrix>>& raw) {
    std::vector<cpbs::dynamics::Channel> channels;
    channels.reserve(raw.size());
    for (const auto& [rate, op] : raw) {
        channels.push_back({rate, op});
    }
    return channels;
}

cpbs::dynamics::EvolveOptions options_from(const std::string& method, double rtol, double atol) {
    cpbs::dynamics::EvolveOptions opts;
    if (method == "rk") {
        opts.method = cpbs::dynamics::Propagator::AdaptiveRK;
    } else if (method == "expm") {
        opts.method = cpbs::dynamics::Propagator::DenseExp;
    } else {
        throw std::invalid_argument("method must be 'rk' or 'expm'");
    }
    opts.rtol = rtol;
    opts.atol = atol;
    return opts;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cooper-pair beam splitter simulator: 16-level Lindblad dynamics, effective "
              "models and entanglement quantifiers";
    m.attr("__version__") = cpbs::kVersion;

    // --- model ---
    py::class_<cpbs::model::ModelParams>(m, "ModelParams")
        .def(py::init([](double delta1, double delta2, double J, double Jp, double Delta,
                         double gamma) {
                 return cpbs::model::ModelParams{delta1, delta2, J, Jp, Delta, gamma};
             }),
             py::arg("delta1") = 0.5, py::arg("delta2") = 0.5, py::arg("J") = 4.0,
             py::arg("Jp") = 1.0, py::arg("Delta") = 0.05, py::arg("gamma") = 0.005)
        .def_readwrite("delta1", &cpbs::model::ModelParams::delta1)
        .def_readwrite("delta2", &cpbs::model::ModelParams::delta2)
        .def_readwrite("J", &cpbs::model::ModelParams::J)
        .def_readwrite("Jp", &cpbs::model::ModelParams::Jp)
        .def_readwrite("Delta", &cpbs::model::ModelParams::Delta)
        .def_readwrite("gamma", &cpbs::model::ModelParams::gamma)
        .def("__repr__", [](const cpbs::model::ModelParams& p) {
            return "ModelParams(delta1=" + std::to_string(p.delta1) +
                   ", delta2=" + std::to_string(p.delta2) + ", J=" + std::to_string(p.J) +
                   ", Jp=" + std::to_string(p.Jp) + ", Delta=" + std::to_string(p.Delta) +
                   ", gamma=" + std::to_string(p.gamma) + ")";
        });

    py::class_<cpbs::model::EffectiveModel>(m, "EffectiveModel")
        .def_readonly("Omega", &cpbs::model::EffectiveModel::Omega)
        .def_readonly("eps0", &cpbs::model::EffectiveModel::eps0)
        .def_readonly("xi", &cpbs::model::EffectiveModel::xi)
        .def_readonly("delta", &cpbs::model::EffectiveModel::delta);

    m.def("build_hamiltonian", &cpbs::model::build_hamiltonian, py::arg("params"));
    m.def("effective_coupling", &cpbs::model::effective_coupling, py::arg("params"));
    m.def("effective_onsite", &cpbs::model::effective_onsite, py::arg("params"));
    m.def("effective_model", &cpbs::model::effective_model, py::arg("params"));
    m.def(
        "build_2qb_hamiltonian",
        [](const cpbs::model::ModelParams& p, bool flipflop_only) {
            return cpbs::model::build_2qb_hamiltonian(
                p, flipflop_only ? cpbs::model::TwoQubitForm::FlipFlop
                                 : cpbs::model::TwoQubitForm::Shifted);
        },
        py::arg("params"), py::arg("flipflop_only") = false);
    m.def("analytic_state", &cpbs::model::analytic_state, py::arg("theta"));

    // --- hilbert ---
    m.def(
        "basis_index",
        [](int n1up, int n1dn, int n2up, int n2dn) {
            return cpbs::hilbert::basis_index({n1up, n1dn, n2up, n2dn});
        },
        py::arg("n1up"), py::arg("n1dn"), py::arg("n2up"), py::arg("n2dn"));
    m.def("occupation_of", [](int index) {
        const auto occ = cpbs::hilbert::occupation_of(index);
        return py::make_tuple(occ.n1up, occ.n1dn, occ.n2up, occ.n2dn);
    });
    m.def("particle_number", &cpbs::hilbert::particle_number, py::arg("index"));
    m.def(
        "annihilation_operator",
        [](int dot, const std::string& spin) {
            return cpbs::hilbert::annihilation_operator(dot, spin_from(spin));
        },
        py::arg("dot"), py::arg("spin"));
    m.def(
        "number_operator",
        [](int dot, const std::string& spin) {
            return cpbs::hilbert::number_operator(dot, spin_from(spin));
        },
        py::arg("dot"), py::arg("spin"));
    m.def(
        "partial_trace",
        [](const Matrix& rho, const std::string& keep) {
            return cpbs::hilbert::partial_trace(rho, subsystem_from(keep));
        },
        py::arg("rho"), py::arg("keep") = "qd1");
    m.def(
        "partial_transpose",
        [](const Matrix& rho, const std::string& sub) {
            return cpbs::hilbert::partial_transpose(rho, subsystem_from(sub));
        },
        py::arg("rho"), py::arg("subsystem") = "qd1");

    // --- quantifiers ---
    m.def("vn_entropy", &cpbs::quantifiers::vn_entropy, py::arg("rho"));
    m.def(
        "svne",
        [](const Matrix& rho, const std::string& sub) {
            return cpbs::quantifiers::svne(rho, subsystem_from(sub));
        },
        py::arg("rho"), py::arg("subsystem") = "qd1");
    m.def("qmi", &cpbs::quantifiers::qmi, py::arg("rho"));
    m.def(
        "negativity",
        [](const Matrix& rho, const std::string& sub) {
            return cpbs::quantifiers::negativity(rho, subsystem_from(sub));
        },
        py::arg("rho"), py::arg("subsystem") = "qd1");
    m.def("tomographic_entropies", [](const Matrix& rho) {
        const auto s = cpbs::quantifiers::tomographic_entropies(rho);
        return py::make_tuple(s.S12, s.S1, s.S2);
    });
    m.def("tei", &cpbs::quantifiers::tei, py::arg("rho"));
    m.def("concurrence", &cpbs::quantifiers::concurrence, py::arg("rho2qb"));
    m.def("concurrence_projected", [](const Matrix& rho) {
        const auto r = cpbs::quantifiers::concurrence_projected(rho);
        return py::make_tuple(r.value, r.weight);
    });
    m.def(
        "covariance",
        [](const Matrix& rho, const std::string& s1, const std::string& s2) {
            return cpbs::quantifiers::covariance(rho, spin_from(s1), spin_from(s2));
        },
        py::arg("rho"), py::arg("spin1") = "up", py::arg("spin2") = "down");
    m.def(
        "covariance_2qb",
        [](const Matrix& rho, const std::string& s1, const std::string& s2) {
            return cpbs::quantifiers::covariance_2qb(rho, spin_from(s1), spin_from(s2));
        },
        py::arg("rho"), py::arg("spin1") = "up", py::arg("spin2") = "down");
    m.def("covariance_analytic", &cpbs::quantifiers::covariance_analytic, py::arg("theta"));

    // --- spectral ---
    py::class_<cpbs::spectral::EigenstateInfo>(m, "EigenstateInfo")
        .def_readonly("energy", &cpbs::spectral::EigenstateInfo::energy)
        .def_readonly("svne", &cpbs::spectral::EigenstateInfo::svne)
        .def_readonly("tei", &cpbs::spectral::EigenstateInfo::tei)
        .def_readonly("covariances", &cpbs::spectral::EigenstateInfo::covariances)
        .def_readonly("table_covariances", &cpbs::spectral::EigenstateInfo::table_covariances)
        .def_readonly("dominant_sector", &cpbs::spectral::EigenstateInfo::dominant_sector)
        .def_readonly("sector_weight", &cpbs::spectral::EigenstateInfo::sector_weight)
        .def_property_readonly("classification", [](const cpbs::spectral::EigenstateInfo& info) {
            return cpbs::spectral::to_string(info.label);
        });

    py::class_<cpbs::spectral::SpectralReport>(m, "SpectralReport")
        .def_readonly("energies", &cpbs::spectral::SpectralReport::energies)
        .def_readonly("eigenvectors", &cpbs::spectral::SpectralReport::eigenvectors)
        .def_readonly("projections", &cpbs::spectral::SpectralReport::projections)
        .def_readonly("states", &cpbs::spectral::SpectralReport::states)
        .def("members", [](const cpbs::spectral::SpectralReport& report,
                           const std::string& label) {
            for (auto c : {cpbs::spectral::StateClass::Pure,
                           cpbs::spectral::StateClass::OneParticleEntangled,
                           cpbs::spectral::StateClass::TwoParticleEntangled,
                           cpbs::spectral::StateClass::ThreeParticleEntangled,
                           cpbs::spectral::StateClass::Ambiguous}) {
                if (cpbs::spectral::to_string(c) == label) {
                    return report.members(c);
                }
            }
            throw std::invalid_argument("unknown classification label '" + label + "'");
        });

    m.def("eigensystem", [](const Matrix& h) {
        const auto sys = cpbs::spectral::eigensystem(h);
        return py::make_tuple(sys.energies, sys.vectors);
    });
    m.def(
        "spectral_report",
        [](const cpbs::model::ModelParams& p, double svne_threshold, double sector_threshold) {
            cpbs::spectral::ClassificationOptions opt;
            opt.svne_threshold = svne_threshold;
            opt.sector_threshold = sector_threshold;
            return cpbs::spectral::spectral_report(p, opt);
        },
        py::arg("params"), py::arg("svne_threshold") = 0.9, py::arg("sector_threshold") = 0.99);

    // --- dynamics ---
    py::class_<cpbs::dynamics::Trajectory>(m, "Trajectory")
        .def_readonly("thetas", &cpbs::dynamics::Trajectory::thetas)
        .def_readonly("states", &cpbs::dynamics::Trajectory::states)
        .def_readonly("omega", &cpbs::dynamics::Trajectory::omega)
        .def("occupations", [](const cpbs::dynamics::Trajectory& traj, int index) {
            std::vector<double> out;
            out.reserve(traj.states.size());
            for (const auto& rho : traj.states) {
                out.push_back(cpbs::dynamics::occupation(rho, index));
            }
            return out;
        });

    m.def(
        "liouvillian",
        [](const Matrix& h, const std::vector<std::pair<double, Matrix>>& channels) {
            return cpbs::dynamics::liouvillian(h, channels_from(channels));
        },
        py::arg("h"), py::arg("channels"));
    m.def(
        "drain_channels",
        [](double Gamma1, double Gamma2) {
            std::vector<std::pair<double, Matrix>> out;
            for (const auto& c : cpbs::dynamics::drain_channels({Gamma1, Gamma2})) {
                out.emplace_back(c.rate, c.op);
            }
            return out;
        },
        py::arg("Gamma1") = 1e-4, py::arg("Gamma2") = 1e-4);
    m.def(
        "evolve",
        [](const Matrix& rho0, const Matrix& h,
           const std::vector<std::pair<double, Matrix>>& channels,
           const std::vector<double>& thetas, double omega, const std::string& method,
           double rtol, double atol) {
            return cpbs::dynamics::evolve(rho0, h, channels_from(channels), thetas, omega,
                                          options_from(method, rtol, atol));
        },
        py::arg("rho0"), py::arg("h"), py::arg("channels"), py::arg("thetas"), py::arg("omega"),
        py::arg("method") = "rk", py::arg("rtol") = 1e-9, py::arg("atol") = 1e-12);
    m.def(
        "evolve_2qb_dephasing",
        [](const Matrix& rho0, const Matrix& h2qb, double rate,
           const std::vector<double>& thetas, double omega, const std::string& unit,
           double jp_ueV, const std::string& method, double rtol, double atol) {
            cpbs::dynamics::DephasingConfig deph;
            deph.gamma_deph = rate;
            deph.unit = unit_from(unit);
            deph.jp_ueV = jp_ueV;
            return cpbs::dynamics::evolve_2qb_dephasing(rho0, h2qb, deph, thetas, omega,
                                                        options_from(method, rtol, atol));
        },
        py::arg("rho0"), py::arg("h2qb"), py::arg("rate"), py::arg("thetas"), py::arg("omega"),
        py::arg("unit") = "GHz", py::arg("jp_ueV") = 100.0, py::arg("method") = "rk",
        py::arg("rtol") = 1e-9, py::arg("atol") = 1e-12);
    m.def("occupation", &cpbs::dynamics::occupation, py::arg("rho"), py::arg("basis_index"));
    m.attr("HBAR_UEV_NS") = cpbs::dynamics::kHbarUeVns;

    // --- scenario ---
    py::class_<cpbs::scenario::ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init(&cpbs::scenario::default_benchmark))
        .def_property(
            "scenario",
            [](const cpbs::scenario::ScenarioConfig& c) {
                return cpbs::scenario::to_string(c.kind);
            },
            [](cpbs::scenario::ScenarioConfig& c, const std::string& name) {
                c.kind = cpbs::scenario::kind_from_name(name);
            })
        .def_readwrite("params", &cpbs::scenario::ScenarioConfig::params)
        .def_property(
            "Gamma1",
            [](const cpbs::scenario::ScenarioConfig& c) { return c.drains.Gamma1; },
            [](cpbs::scenario::ScenarioConfig& c, double v) { c.drains.Gamma1 = v; })
        .def_property(
            "Gamma2",
            [](const cpbs::scenario::ScenarioConfig& c) { return c.drains.Gamma2; },
            [](cpbs::scenario::ScenarioConfig& c, double v) { c.drains.Gamma2 = v; })
        .def_readwrite("dephasing_rates", &cpbs::scenario::ScenarioConfig::dephasing_rates)
        .def_property(
            "theta_count",
            [](const cpbs::scenario::ScenarioConfig& c) { return c.grid.count; },
            [](cpbs::scenario::ScenarioConfig& c, int v) { c.grid.count = v; })
        .def_property(
            "theta_stop",
            [](const cpbs::scenario::ScenarioConfig& c) { return c.grid.stop; },
            [](cpbs::scenario::ScenarioConfig& c, double v) { c.grid.stop = v; })
        .def_readwrite("output_dir", &cpbs::scenario::ScenarioConfig::output_dir)
        .def_readwrite("jp_ueV", &cpbs::scenario::ScenarioConfig::jp_ueV)
        .def("load_file", [](cpbs::scenario::ScenarioConfig& c, const std::string& path) {
            cpbs::scenario::apply_file(c, path);
        })
        .def("set_override", [](cpbs::scenario::ScenarioConfig& c, const std::string& kv) {
            cpbs::scenario::apply_override(c, kv);
        });

    m.def("default_benchmark", &cpbs::scenario::default_benchmark);
    m.def("run_scenario", &cpbs::scenario::run_scenario, py::arg("config"));
}
