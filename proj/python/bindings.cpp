// Python bindings for the simulation core. The surface is deliberately thin:
// experiment orchestration stays in C++ (and the CLI), python gets the entry
// points needed for scripting sweeps and poking at rate adaptation.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "json.hpp"
#include "sdma/base_station.hpp"
#include "sdma/config.hpp"
#include "sdma/experiments.hpp"
#include "sdma/feedback_channel.hpp"
#include "sdma/sim_engine.hpp"
#include "sdma/types.hpp"

namespace py = pybind11;
using namespace sdma;

namespace {

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows, const char* what) {
    const int n = static_cast<int>(rows.size());
    if (n == 0) throw config_error(std::string(what) + ": empty matrix");
    Matrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw config_error(std::string(what) + ": matrix must be square");
        for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

std::vector<std::vector<double>> rows_from_matrix(const Matrix& m) {
    std::vector<std::vector<double>> out(m.size());
    for (int i = 0; i < m.size(); ++i) out[i].assign(m.row(i), m.row(i) + m.size());
    return out;
}

// Route a python dict of config overrides through the same JSON spec parser
// the CLI uses, so key validation and defaults cannot drift between the two.
SimConfig config_from_kwargs(const py::kwargs& kwargs) {
    const std::string dumped =
        py::module_::import("json").attr("dumps")(kwargs).cast<std::string>();
    nlohmann::json spec_json;
    spec_json["experiment"] = "rate-table-dump";
    spec_json["config"] = nlohmann::json::parse(dumped);
    return parse_spec_text(spec_json.dump()).config;
}

py::dict summary_to_dict(const GoodputSummary& s) {
    py::dict d;
    d["mean_goodput"] = s.mean_goodput;
    d["std_error"] = s.std_error;
    d["per"] = s.per;
    d["mean_scheduled"] = s.mean_scheduled;
    d["mean_covered"] = s.mean_covered;
    d["total_outages"] = s.total_outages;
    d["total_scheduled"] = s.total_scheduled;
    d["trials"] = s.trials;
    d["feasible"] = s.feasible;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "limited-feedback SDMA downlink simulation core";
    m.attr("__version__") = kSdmaVersion;

    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);

    m.def(
        "simulate",
        [](const py::kwargs& kwargs) {
            const SimConfig cfg = config_from_kwargs(kwargs);
            return summary_to_dict(simulate_summary(cfg));
        },
        "Run one Monte Carlo goodput cell. Keyword arguments are the same "
        "scalar keys a JSON spec's \"config\" object accepts (n_t, k_users, "
        "c_fb, trials, scheme, solver, ...); omitted keys keep their "
        "defaults. Returns a summary dict.");

    m.def(
        "run_spec",
        [](const std::string& spec_text, const std::string& output_dir) {
            ExperimentSpec spec = parse_spec_text(spec_text);
            if (!output_dir.empty()) spec.output_dir = output_dir;
            std::vector<std::string> written;
            for (const auto& p : run_experiment(spec)) written.push_back(p.string());
            return written;
        },
        py::arg("spec_text"), py::arg("output_dir") = std::string(),
        "Parse a JSON experiment spec and run it; output_dir overrides the "
        "spec's directory when non-empty. Returns the files written.");

    m.def(
        "rate_table",
        [](const std::vector<std::vector<double>>& p_csit,
           const std::vector<std::vector<double>>& sin_dist, double delta, double eps, int n_t,
           bool alt_anchor, bool allow_degenerate) {
            const Matrix p = matrix_from_rows(p_csit, "p_csit");
            const Matrix s = matrix_from_rows(sin_dist, "sin_dist");
            const RateTable table =
                build_rate_table(p, s, delta, eps, n_t, alt_anchor, allow_degenerate);
            py::list rows;
            for (const RateRow& r : table.rows) {
                py::dict d;
                d["ns_set"] = r.ns_set;  // 0-based indices
                d["i_star"] = r.i_star;
                d["eps_res"] = r.eps_res;
                d["rate"] = r.rate;
                rows.append(d);
            }
            return rows;
        },
        py::arg("p_csit"), py::arg("sin_dist"), py::arg("delta"), py::arg("eps"),
        py::arg("n_t"), py::arg("alt_anchor") = false, py::arg("allow_degenerate") = false,
        "Outage-bounded rate adaptation table from a feedback transition "
        "matrix (row j, column i = Pr(received i | sent j)) and pairwise "
        "sine distances. Returns one dict per received index; indices are "
        "0-based.");

    m.def(
        "psk_transition",
        [](int n_points, double snr_db) {
            return rows_from_matrix(psk_transition_matrix(n_points, snr_db));
        },
        py::arg("n_points"), py::arg("snr_db"),
        "Index transition matrix of one PSK feedback symbol at the given "
        "Es/N0 (row = sent index).");
}
