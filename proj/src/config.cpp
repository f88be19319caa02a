#include "sdma/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sdma/csv.hpp"
#include "sdma/types.hpp"

namespace sdma {

using nlohmann::json;

const std::vector<std::string>& experiment_ids() {
    static const std::vector<std::string> ids = {
        "fig1-approx",    "fig3-lemma4",      "fig4-cfb-ser", "fig5-cfb-snr",
        "fig6-ser-sweep", "fig7-fbsnr-sweep", "tsp-bench",    "rate-table-dump",
    };
    return ids;
}

bool is_known_experiment(const std::string& id) {
    for (const auto& k : experiment_ids())
        if (k == id) return true;
    return false;
}

namespace {

double as_double(const json& v, const std::string& key) {
    if (!v.is_number()) throw config_error("config key '" + key + "' must be a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw config_error("config key '" + key + "' must be an integer");
    return v.get<int>();
}

uint64_t as_seed(const json& v, const std::string& key) {
    if (v.is_number_unsigned()) return v.get<uint64_t>();
    if (v.is_number_integer()) {
        long long s = v.get<long long>();
        if (s < 0) throw config_error("config key '" + key + "' must be non-negative");
        return static_cast<uint64_t>(s);
    }
    throw config_error("config key '" + key + "' must be an integer");
}

bool as_bool(const json& v, const std::string& key) {
    if (!v.is_boolean()) throw config_error("config key '" + key + "' must be a boolean");
    return v.get<bool>();
}

std::string as_string(const json& v, const std::string& key) {
    if (!v.is_string()) throw config_error("config key '" + key + "' must be a string");
    return v.get<std::string>();
}

std::vector<int> as_int_list(const json& v, const std::string& key) {
    if (!v.is_array() || v.empty())
        throw config_error("config key '" + key + "' must be a non-empty array");
    std::vector<int> out;
    for (const auto& e : v) out.push_back(as_int(e, key));
    return out;
}

std::vector<double> as_double_list(const json& v, const std::string& key) {
    if (!v.is_array() || v.empty())
        throw config_error("config key '" + key + "' must be a non-empty array");
    std::vector<double> out;
    for (const auto& e : v) out.push_back(as_double(e, key));
    return out;
}

void apply_config_key(ExperimentSpec& spec, const std::string& key, const json& v) {
    SimConfig& c = spec.config;
    if (key == "n_t")
        c.n_t = as_int(v, key);
    else if (key == "k_users")
        c.k_users = as_int(v, key);
    else if (key == "c_fb")
        c.c_fb = as_int(v, key);
    else if (key == "forward_snr_db")
        c.forward_snr_db = as_double(v, key);
    else if (key == "channel")
        c.channel = parse_channel_model(as_string(v, key));
    else if (key == "ser")
        c.ser = as_double(v, key);
    else if (key == "feedback_snr_db")
        c.feedback_snr_db = as_double(v, key);
    else if (key == "feedback_symbols")
        c.feedback_symbols = as_int(v, key);
    else if (key == "delta")
        c.delta = as_double(v, key);
    else if (key == "g_th")
        c.g_th = as_double(v, key);
    else if (key == "eps")
        c.eps = as_double(v, key);
    else if (key == "scheme")
        c.scheme = parse_scheme(as_string(v, key));
    else if (key == "solver")
        c.solver = parse_solver(as_string(v, key));
    else if (key == "trials")
        c.trials = as_int(v, key);
    else if (key == "master_seed")
        c.master_seed = as_seed(v, key);
    else if (key == "codebook_seed")
        c.codebook_seed = as_seed(v, key);
    else if (key == "prior_samples")
        c.prior_samples = as_int(v, key);
    else if (key == "prior_seed")
        c.prior_seed = as_seed(v, key);
    else if (key == "paper_i_star")
        c.paper_i_star = as_bool(v, key);
    else if (key == "noise_cap")
        c.noise_cap = as_bool(v, key);
    else if (key == "threads")
        c.threads = as_int(v, key);
    else if (key == "c_fb_list")
        spec.c_fb_list = as_int_list(v, key);
    else if (key == "levels")
        spec.levels = as_int_list(v, key);
    else if (key == "eps_list")
        spec.eps_list = as_double_list(v, key);
    else if (key == "ser_list")
        spec.ser_list = as_double_list(v, key);
    else if (key == "fbsnr_list")
        spec.fbsnr_list = as_double_list(v, key);
    else if (key == "fig1_snr_list")
        spec.fig1_snr_list = as_double_list(v, key);
    else if (key == "fig1_samples")
        spec.fig1_samples = as_int(v, key);
    else if (key == "bench_sizes")
        spec.bench_sizes = as_int_list(v, key);
    else if (key == "bench_instances")
        spec.bench_instances = as_int(v, key);
    else if (key == "lemma4_replicates")
        spec.lemma4_replicates = as_int(v, key);
    else
        throw config_error("unknown config key '" + key + "'");
}

ExperimentSpec parse_spec_json(const json& j) {
    if (!j.is_object()) throw config_error("spec root must be a JSON object");
    ExperimentSpec spec;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key == "experiment") {
            spec.experiment = as_string(it.value(), key);
        } else if (key == "output_dir") {
            spec.output_dir = as_string(it.value(), key);
        } else if (key == "config") {
            if (!it.value().is_object()) throw config_error("'config' must be a JSON object");
            for (auto c = it.value().begin(); c != it.value().end(); ++c)
                apply_config_key(spec, c.key(), c.value());
        } else {
            throw config_error("unknown top-level key '" + key + "'");
        }
    }
    if (spec.experiment.empty()) throw config_error("spec is missing 'experiment'");
    if (!is_known_experiment(spec.experiment))
        throw config_error("unknown experiment id '" + spec.experiment + "'");
    if (spec.output_dir.empty()) spec.output_dir = std::filesystem::path("out") / spec.experiment;
    if (spec.fig1_samples < 100) throw config_error("fig1_samples must be at least 100");
    if (spec.bench_instances < 1) throw config_error("bench_instances must be at least 1");
    if (spec.lemma4_replicates < 1) throw config_error("lemma4_replicates must be at least 1");
    for (int n : spec.bench_sizes)
        if (n < 3 || n > 10) throw config_error("bench_sizes entries must be in [3, 10]");
    spec.config.validate();
    return spec;
}

}  // namespace

ExperimentSpec parse_spec_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("spec JSON parse error: ") + e.what());
    }
    return parse_spec_json(j);
}

ExperimentSpec load_spec(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open spec file: " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_spec_text(ss.str());
}

namespace {

std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(v[i]);
    }
    return out;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ';';
        out += format_double(v[i]);
    }
    return out;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> config_items(const SimConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("n_t", std::to_string(cfg.n_t));
    out.emplace_back("k_users", std::to_string(cfg.k_users));
    out.emplace_back("c_fb", std::to_string(cfg.c_fb));
    out.emplace_back("forward_snr_db", format_double(cfg.forward_snr_db));
    out.emplace_back("channel", to_string(cfg.channel));
    out.emplace_back("ser", format_double(cfg.ser));
    out.emplace_back("feedback_snr_db", format_double(cfg.feedback_snr_db));
    out.emplace_back("feedback_symbols", std::to_string(cfg.feedback_symbols));
    out.emplace_back("delta", format_double(cfg.delta));
    out.emplace_back("g_th", format_double(cfg.g_th));
    out.emplace_back("eps", format_double(cfg.eps));
    out.emplace_back("scheme", to_string(cfg.scheme));
    out.emplace_back("solver", to_string(cfg.solver));
    out.emplace_back("trials", std::to_string(cfg.trials));
    out.emplace_back("master_seed", std::to_string(cfg.master_seed));
    out.emplace_back("codebook_seed", std::to_string(cfg.codebook_seed));
    out.emplace_back("prior_samples", std::to_string(cfg.prior_samples));
    out.emplace_back("prior_seed", std::to_string(cfg.prior_seed));
    out.emplace_back("paper_i_star", cfg.paper_i_star ? "true" : "false");
    out.emplace_back("noise_cap", cfg.noise_cap ? "true" : "false");
    // threads is intentionally absent: it changes scheduling, never results,
    // and the emitted CSV must be byte-identical across thread counts.
    return out;
}

std::vector<std::pair<std::string, std::string>> spec_items(const ExperimentSpec& spec) {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("experiment", spec.experiment);
    out.emplace_back("output_dir", spec.output_dir.string());
    for (auto& kv : config_items(spec.config)) out.push_back(std::move(kv));
    out.emplace_back("c_fb_list", join_ints(spec.c_fb_list));
    out.emplace_back("levels", join_ints(spec.levels));
    out.emplace_back("eps_list", join_doubles(spec.eps_list));
    out.emplace_back("ser_list", join_doubles(spec.ser_list));
    out.emplace_back("fbsnr_list", join_doubles(spec.fbsnr_list));
    out.emplace_back("fig1_snr_list", join_doubles(spec.fig1_snr_list));
    out.emplace_back("fig1_samples", std::to_string(spec.fig1_samples));
    out.emplace_back("bench_sizes", join_ints(spec.bench_sizes));
    out.emplace_back("bench_instances", std::to_string(spec.bench_instances));
    out.emplace_back("lemma4_replicates", std::to_string(spec.lemma4_replicates));
    return out;
}

std::string config_echo(const SimConfig& cfg) {
    std::string out;
    for (const auto& [k, v] : config_items(cfg)) {
        if (!out.empty()) out += ' ';
        out += k + "=" + v;
    }
    return out;
}

}  // namespace sdma
