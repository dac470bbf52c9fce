// Python bindings: scenario runs, oracle checks, measures and closed forms.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dephcorr/analytic.hpp"
#include "dephcorr/errors.hpp"
#include "dephcorr/experiments.hpp"
#include "dephcorr/measures.hpp"
#include "dephcorr/records_io.hpp"

namespace py = pybind11;
using namespace dephcorr;

namespace {

ScenarioConfig configured(const std::string& name, const std::map<std::string, double>& overrides)
{
    ScenarioConfig cfg = find_scenario(name);
    for (const auto& [key, value] : overrides) apply_override(cfg, key, value);
    cfg.validate();
    return cfg;
}

py::dict records_to_columns(const std::vector<CorrelationRecord>& recs)
{
    std::vector<double> t, neg, pur, hs, e1, e2;
    std::vector<long> rank;
    for (const auto& r : recs) {
        t.push_back(r.t);
        neg.push_back(r.negativity);
        pur.push_back(r.purity);
        hs.push_back(r.hs_participation);
        rank.push_back(r.effective_hs_rank);
        e1.push_back(r.energy1);
        e2.push_back(r.energy2);
    }
    py::dict d;
    d["t"] = t;
    d["negativity"] = neg;
    d["purity"] = pur;
    d["hs_participation"] = hs;
    d["effective_hs_rank"] = rank;
    d["energy1"] = e1;
    d["energy2"] = e2;
    return d;
}

LadderState band_state(const CMatrix& rho)
{
    if (rho.rows() != rho.cols() || rho.rows() < 2) throw DimensionError("rho must be square with size >= 2");
    InteractionSpec inter;
    return LadderState{build_ladder(static_cast<int>(rho.rows()) - 1, inter), rho};
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Coupled oscillators under local pure dephasing";

    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<SymmetryError>(m, "SymmetryError", PyExc_ValueError);
    py::register_exception<UnsupportedScenario>(m, "UnsupportedScenario", PyExc_ValueError);
    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<IntegrationError>(m, "IntegrationError", PyExc_RuntimeError);
    py::register_exception<IntegrityError>(m, "IntegrityError", PyExc_RuntimeError);

    m.def("scenario_names", &scenario_names);

    m.def(
        "scenario_config",
        [](const std::string& name, const std::map<std::string, double>& overrides) {
            return config_to_json(configured(name, overrides)).dump();
        },
        py::arg("name"), py::arg("overrides") = std::map<std::string, double>{},
        "Scenario configuration as a JSON string.");

    m.def(
        "run",
        [](const std::string& name, int k, const std::map<std::string, double>& overrides) {
            const auto cfg = configured(name, overrides);
            std::vector<CorrelationRecord> recs;
            {
                py::gil_scoped_release release;
                recs = run_scenario(cfg, k);
            }
            return records_to_columns(recs);
        },
        py::arg("name"), py::arg("k"), py::arg("overrides") = std::map<std::string, double>{},
        "Integrate one trajectory; returns a dict of per-sample columns.");

    m.def(
        "final_state",
        [](const std::string& name, int k, const std::map<std::string, double>& overrides) {
            const auto cfg = configured(name, overrides);
            py::gil_scoped_release release;
            return CMatrix(evolve_scenario(cfg, k).states.back().rho);
        },
        py::arg("name"), py::arg("k"), py::arg("overrides") = std::map<std::string, double>{},
        "Ladder density matrix at the end of the scenario grid.");

    m.def(
        "scaling",
        [](const std::string& name, const std::vector<int>& ks, const std::string& quantity,
           const std::map<std::string, double>& overrides) {
            const auto cfg = configured(name, overrides);
            const Quantity q = quantity_from_name(quantity);
            ScalingFit fit;
            {
                py::gil_scoped_release release;
                fit = scaling_from_sweep(run_sweep(cfg, ks), q);
            }
            py::dict d;
            d["exponent"] = fit.exponent;
            d["exponent_stderr"] = fit.exponent_stderr;
            d["log_prefactor"] = fit.log_prefactor;
            d["ks"] = fit.ks;
            d["amplitudes"] = fit.amplitudes;
            return d;
        },
        py::arg("name"), py::arg("ks"), py::arg("quantity") = "negativity",
        py::arg("overrides") = std::map<std::string, double>{});

    m.def(
        "oracle_check",
        [](const std::string& name, int k, int samples) {
            OracleReport rep;
            const auto cfg = find_scenario(name);
            {
                py::gil_scoped_release release;
                rep = oracle_check(cfg, k, samples);
            }
            py::dict d;
            d["max_deviation"] = rep.max_deviation;
            d["max_leakage"] = rep.max_leakage;
            d["max_charge_drift"] = rep.max_charge_drift;
            d["t_end"] = rep.t_end;
            return d;
        },
        py::arg("name"), py::arg("k"), py::arg("samples") = 101);

    m.def("fit_power_law", [](const std::vector<int>& ks, const std::vector<double>& v) {
        const auto fit = fit_power_law(ks, v);
        return py::make_tuple(fit.exponent, fit.log_prefactor);
    });

    m.def(
        "negativity_ladder", [](const CMatrix& rho) { return negativity_ladder(band_state(rho)); },
        "sum_{m<n} |rho_mn| of a Schmidt-correlated state given in its ladder basis.");
    m.def(
        "negativity_full",
        [](const CMatrix& rho, Index n1, Index n2) { return negativity_full(FullState{n1, n2, rho}); },
        py::arg("rho"), py::arg("n1"), py::arg("n2"));
    m.def(
        "hs_spectrum_full",
        [](const CMatrix& rho, Index n1, Index n2) { return hs_spectrum(FullState{n1, n2, rho}).sigmas; },
        py::arg("rho"), py::arg("n1"), py::arg("n2"));
    m.def("hs_participation_ladder", [](const CMatrix& rho) { return hs_participation(hs_spectrum(band_state(rho))); });
    m.def("purity", [](const CMatrix& rho) { return purity(rho); });

    m.def(
        "bath_driven_negativity",
        [](double t, int k, double gamma1, double gamma2, const std::string& kind, double phi, double omega1,
           double omega2) {
            if (kind != "Gaussian" && kind != "Poissonian") throw ParameterError("kind must be Gaussian or Poissonian");
            const BathSpec b{kind == "Gaussian" ? BathKind::Gaussian : BathKind::Poissonian, gamma1, gamma2, phi};
            return bath_driven_negativity(t, k, OscillatorSpec{omega1, omega2}, b);
        },
        py::arg("t"), py::arg("k"), py::arg("gamma1"), py::arg("gamma2"), py::arg("kind") = "Gaussian",
        py::arg("phi") = 0.0, py::arg("omega1") = 1.0, py::arg("omega2") = 1.0);

    m.def("isolated_linear_state", &isolated_linear_state, py::arg("t"), py::arg("k"), py::arg("omega"),
          py::arg("gamma"));

    m.def(
        "width_boundary",
        [](const std::string& name, int k) {
            const auto cfg = find_scenario(name);
            if (!(cfg.gaussian_strength() > 0.0) || cfg.bath->kind != BathKind::Gaussian)
                throw UnsupportedScenario(name + " has no Gaussian bath");
            const auto wp = width_boundary(k, cfg.inter.gamma / cfg.gaussian_strength(), cfg.inter);
            return py::make_tuple(wp.m_values, wp.widths);
        },
        py::arg("name"), py::arg("k"));
}
