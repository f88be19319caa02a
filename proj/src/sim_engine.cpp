#include "sdma/sim_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace sdma {

const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::robust:
            return "robust";
        case Scheme::naive_uncoded:
            return "naive-uncoded";
        case Scheme::naive_coded:
            return "naive-coded";
    }
    return "?";
}

const char* to_string(ChannelModel m) {
    return m == ChannelModel::nearest_neighbor ? "nearest-neighbor" : "psk-awgn";
}

const char* to_string(SolverChoice s) {
    switch (s) {
        case SolverChoice::cnna:
            return "cnna";
        case SolverChoice::two_opt:
            return "two-opt";
        case SolverChoice::exhaustive:
            return "exhaustive";
        case SolverChoice::identity:
            return "identity";
        case SolverChoice::random:
            return "random";
    }
    return "?";
}

Scheme parse_scheme(const std::string& name) {
    if (name == "robust") {
        return Scheme::robust;
    }
    if (name == "naive-uncoded") {
        return Scheme::naive_uncoded;
    }
    if (name == "naive-coded") {
        return Scheme::naive_coded;
    }
    throw config_error("unknown scheme '" + name +
                       "' (expected robust | naive-uncoded | naive-coded)");
}

ChannelModel parse_channel_model(const std::string& name) {
    if (name == "nearest-neighbor") {
        return ChannelModel::nearest_neighbor;
    }
    if (name == "psk-awgn") {
        return ChannelModel::psk_awgn;
    }
    throw config_error("unknown channel model '" + name +
                       "' (expected nearest-neighbor | psk-awgn)");
}

SolverChoice parse_solver(const std::string& name) {
    if (name == "cnna") {
        return SolverChoice::cnna;
    }
    if (name == "two-opt") {
        return SolverChoice::two_opt;
    }
    if (name == "exhaustive") {
        return SolverChoice::exhaustive;
    }
    if (name == "identity") {
        return SolverChoice::identity;
    }
    if (name == "random") {
        return SolverChoice::random;
    }
    throw config_error("unknown solver '" + name +
                       "' (expected cnna | two-opt | exhaustive | identity | random)");
}

double SimConfig::p_lin() const { return std::pow(10.0, forward_snr_db / 10.0); }

void SimConfig::validate() const {
    if (n_t < 2) {
        throw config_error("config: n_t must be >= 2, got " + std::to_string(n_t));
    }
    if (k_users <= n_t) {
        throw config_error("config: k_users must exceed n_t, got " + std::to_string(k_users));
    }
    if (c_fb < 1 || c_fb > 20) {
        throw config_error("config: c_fb must lie in [1,20], got " + std::to_string(c_fb));
    }
    if (scheme != Scheme::naive_coded && (1 << c_fb) % n_t != 0) {
        throw config_error("config: codebook size 2^" + std::to_string(c_fb) +
                           " is not divisible by n_t = " + std::to_string(n_t));
    }
    if (eps <= 0.0 || eps >= 1.0) {
        throw config_error("config: eps must lie in (0,1), got " + std::to_string(eps));
    }
    if (delta <= 0.0 || delta >= 1.0) {
        throw config_error("config: delta must lie in (0,1), got " + std::to_string(delta));
    }
    if (g_th < 0.0) {
        throw config_error("config: g_th must be >= 0, got " + std::to_string(g_th));
    }
    if (ser < 0.0 || ser > 1.0) {
        throw config_error("config: ser must lie in [0,1], got " + std::to_string(ser));
    }
    if (feedback_symbols < 1) {
        throw config_error("config: feedback_symbols must be >= 1, got " +
                           std::to_string(feedback_symbols));
    }
    if (channel == ChannelModel::psk_awgn && c_fb % feedback_symbols != 0) {
        throw config_error("config: c_fb = " + std::to_string(c_fb) +
                           " bits do not divide evenly over " + std::to_string(feedback_symbols) +
                           " feedback symbols");
    }
    if (trials < 1) {
        throw config_error("config: trials must be >= 1, got " + std::to_string(trials));
    }
    if (prior_samples < 10000) {
        throw config_error("config: prior_samples must be >= 10000, got " +
                           std::to_string(prior_samples));
    }
    if (threads < 0) {
        throw config_error("config: threads must be >= 0, got " + std::to_string(threads));
    }
}

uint64_t derived_seed(uint64_t master_seed, uint64_t stream) {
    uint64_t state = master_seed + stream * 0x9E3779B97F4A7C15ULL;
    return splitmix64(state);
}

namespace {

// Stream id far above any trial index, for auxiliary draws (random solver).
constexpr uint64_t kSolverStream = 1ULL << 62;

IndexMapping solve_mapping(const SimConfig& cfg, const Codebook& cb,
                           const std::vector<double>& priors, double tsp_ser) {
    const int n = cb.num_entries();
    if (cfg.solver == SolverChoice::identity) {
        return identity_mapping(n);
    }
    if (cfg.solver == SolverChoice::random) {
        Rng rng(derived_seed(cfg.master_seed, kSolverStream));
        std::vector<int> xi(n);
        for (int i = 0; i < n; ++i) {
            xi[i] = i;
        }
        // Fisher-Yates with the library RNG so the permutation is seed-stable.
        for (int i = n - 1; i > 0; --i) {
            const int j = static_cast<int>(rng.uniform_below(static_cast<uint64_t>(i) + 1));
            std::swap(xi[i], xi[j]);
        }
        return mapping_from_xi(std::move(xi));
    }
    const TspInstance inst = build_tsp(cb, priors, tsp_ser);
    TourSolution tour;
    switch (cfg.solver) {
        case SolverChoice::cnna:
            tour = cnna(inst);
            break;
        case SolverChoice::two_opt:
            tour = two_opt(inst, cnna(inst));
            break;
        case SolverChoice::exhaustive:
            tour = exhaustive_tsp(inst);
            break;
        default:
            break;
    }
    return tour_to_mapping(tour, n);
}

}  // namespace

SchemeArtifacts prepare_scheme(const SimConfig& cfg) {
    cfg.validate();
    SchemeArtifacts art;
    art.payload_bits = cfg.c_fb;

    HammingCode code;
    double coded_p_bit = 0.0;
    if (cfg.scheme == Scheme::naive_coded) {
        try {
            code = make_shortened_hamming(cfg.c_fb);
        } catch (const config_error& e) {
            art.feasible = false;
            art.infeasible_reason = e.what();
            return art;
        }
        const int reduced = 1 << code.n_payload;
        if (reduced < cfg.n_t || reduced % cfg.n_t != 0) {
            art.feasible = false;
            art.infeasible_reason = "reduced codebook size " + std::to_string(reduced) +
                                    " is incompatible with n_t = " + std::to_string(cfg.n_t);
            return art;
        }
        art.payload_bits = code.n_payload;
        coded_p_bit = cfg.channel == ChannelModel::nearest_neighbor
                          ? cfg.ser
                          : bpsk_bit_error_prob(cfg.feedback_snr_db);
    }

    art.cb = build_codebook(cfg.codebook_seed, cfg.n_t, art.payload_bits);
    const int n = art.cb.num_entries();

    if (cfg.scheme == Scheme::naive_coded) {
        art.p_ch = coded_payload_transition(code, coded_p_bit);
    } else if (cfg.channel == ChannelModel::nearest_neighbor) {
        art.p_ch = nn_transition_matrix(n, cfg.ser);
    } else {
        const int bits_per_symbol = cfg.c_fb / cfg.feedback_symbols;
        const TransitionMatrix per_symbol =
            psk_transition_matrix(1 << bits_per_symbol, cfg.feedback_snr_db);
        art.p_ch = kron_power(per_symbol, cfg.feedback_symbols);
    }

    if (cfg.scheme == Scheme::robust) {
        Rng prior_rng(cfg.prior_seed);
        art.priors = codeword_priors(art.cb, cfg.delta, cfg.prior_samples, prior_rng);
        // The tour only depends on the error weight through a common scalar
        // factor, so the channel's aggregate symbol error rate serves for both
        // channel families.
        const double tsp_ser = cfg.channel == ChannelModel::nearest_neighbor
                                   ? cfg.ser
                                   : 1.0 - art.p_ch.at(0, 0);
        art.xi = solve_mapping(cfg, art.cb, art.priors, tsp_ser);
    } else {
        art.xi = identity_mapping(n);
    }

    art.p_csit = csit_transition(art.p_ch, art.xi);
    art.table = build_rate_table(art.p_csit, art.cb.sin_dist, cfg.delta, cfg.eps, cfg.n_t,
                                 cfg.paper_i_star,
                                 /*allow_degenerate=*/cfg.scheme == Scheme::naive_coded);
    if (cfg.noise_cap) {
        const std::vector<double> caps =
            noise_caps(art.table, art.cb.sin_dist, cfg.p_lin(), cfg.n_t, cfg.g_th, cfg.eps,
                       cfg.delta);
        for (int i = 0; i < n; ++i) {
            art.table.rows[i].rate = std::min(art.table.rows[i].rate, std::max(0.0, caps[i]));
        }
    }
    art.all_zero_rates = std::all_of(art.table.rows.begin(), art.table.rows.end(),
                                     [](const RateRow& r) { return r.rate <= 0.0; });

    art.cb_flat.resize(static_cast<size_t>(n) * cfg.n_t * 2);
    for (int k = 0; k < n; ++k) {
        for (int t = 0; t < cfg.n_t; ++t) {
            art.cb_flat[(static_cast<size_t>(k) * cfg.n_t + t) * 2] = art.cb.entries[k][t].real();
            art.cb_flat[(static_cast<size_t>(k) * cfg.n_t + t) * 2 + 1] =
                art.cb.entries[k][t].imag();
        }
    }
    return art;
}

TrialRecord run_trial(const SimConfig& cfg, const SchemeArtifacts& art, uint64_t seed) {
    TrialRecord rec;
    if (!art.feasible) {
        return rec;
    }
    Rng rng(seed);
    const int n_t = cfg.n_t;
    const int n = art.cb.num_entries();
    const double p = cfg.p_lin();

    // Per-user channels, drawn for every user so the stream does not depend
    // on gate outcomes.
    std::vector<double> h_re(static_cast<size_t>(cfg.k_users) * n_t);
    std::vector<double> h_im(static_cast<size_t>(cfg.k_users) * n_t);
    std::vector<double> gain(cfg.k_users);
    for (int u = 0; u < cfg.k_users; ++u) {
        double g = 0.0;
        for (int t = 0; t < n_t; ++t) {
            const cplx z = rng.cgaussian();
            h_re[static_cast<size_t>(u) * n_t + t] = z.real();
            h_im[static_cast<size_t>(u) * n_t + t] = z.imag();
            g += z.real() * z.real() + z.imag() * z.imag();
        }
        gain[u] = g;
    }

    // Feedback gate + quantization (only gain-passing users need the search).
    std::vector<std::pair<int, int>> sent;  // (user, quantization index)
    sent.reserve(16);
    for (int u = 0; u < cfg.k_users; ++u) {
        if (gain[u] <= cfg.g_th) {
            continue;
        }
        const double* ur = &h_re[static_cast<size_t>(u) * n_t];
        const double* ui = &h_im[static_cast<size_t>(u) * n_t];
        double best_cos2 = -1.0;
        int best_idx = 0;
        for (int k = 0; k < n; ++k) {
            const double* cw = &art.cb_flat[static_cast<size_t>(k) * n_t * 2];
            double ar = 0.0;
            double ai = 0.0;
            for (int t = 0; t < n_t; ++t) {
                const double cr = cw[2 * t];
                const double ci = cw[2 * t + 1];
                // conj(codeword) dot h
                ar += cr * ur[t] + ci * ui[t];
                ai += cr * ui[t] - ci * ur[t];
            }
            const double cos2 = ar * ar + ai * ai;
            if (cos2 > best_cos2) {
                best_cos2 = cos2;
                best_idx = k;
            }
        }
        const double dist = 1.0 - best_cos2 / gain[u];
        if (dist < cfg.delta) {
            sent.emplace_back(u, best_idx);
        }
    }
    rec.fed_back = static_cast<int>(sent.size());
    if (sent.empty()) {
        return rec;
    }

    // Noisy index feedback.
    std::vector<std::pair<int, int>> received;
    received.reserve(sent.size());
    for (const auto& [u, idx] : sent) {
        received.emplace_back(u, transmit_index(art.p_csit, idx, rng));
    }

    const ScheduleOutcome sched = schedule(received, n, n_t, rng);
    rec.covered = static_cast<int>(sched.assignments.size());

    // Active-beam interference: every covered beam of the chosen set radiates.
    std::vector<cvec> beams;
    beams.reserve(sched.assignments.size());
    for (const auto& a : sched.assignments) {
        beams.push_back(art.cb.entries[a.codeword]);
    }
    for (size_t s = 0; s < sched.assignments.size(); ++s) {
        const auto& a = sched.assignments[s];
        const double r = art.table.rows[a.codeword].rate;
        if (r <= 0.0) {
            continue;
        }
        cvec h(n_t);
        for (int t = 0; t < n_t; ++t) {
            h[t] = cplx(h_re[static_cast<size_t>(a.user) * n_t + t],
                        h_im[static_cast<size_t>(a.user) * n_t + t]);
        }
        std::vector<cvec> interferers;
        interferers.reserve(beams.size() - 1);
        for (size_t s2 = 0; s2 < beams.size(); ++s2) {
            if (s2 != s) {
                interferers.push_back(beams[s2]);
            }
        }
        const double mi = mutual_info_exact(h, beams[s], interferers, p, n_t);
        ++rec.scheduled;
        if (mi >= r) {
            rec.goodput += r;
        } else {
            rec.lost_rate += r;
            ++rec.outages;
        }
    }
    return rec;
}

std::vector<TrialRecord> simulate(const SimConfig& cfg, const SchemeArtifacts& art) {
    cfg.validate();
    std::vector<TrialRecord> records(cfg.trials);
    // An infeasible chain has no codebook to simulate against; all-zero
    // records report that honestly. A merely all-zero-rate table still runs:
    // users feed back and slots get assigned even when nothing is deliverable.
    if (!art.feasible) {
        return records;
    }
    int n_threads = cfg.threads > 0 ? cfg.threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min(n_threads, cfg.trials));

    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        try {
            while (true) {
                const int t = next.fetch_add(1);
                if (t >= cfg.trials) {
                    break;
                }
                records[t] = run_trial(cfg, art, derived_seed(cfg.master_seed, t));
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) {
                first_error = std::current_exception();
            }
        }
    };
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i) {
            pool.emplace_back(worker);
        }
        for (std::thread& th : pool) {
            th.join();
        }
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
    return records;
}

GoodputSummary summarize(const std::vector<TrialRecord>& records, bool feasible) {
    GoodputSummary s;
    s.feasible = feasible;
    s.trials = static_cast<int>(records.size());
    if (records.empty()) {
        return s;
    }
    double sum = 0.0;
    long long covered = 0;
    for (const TrialRecord& r : records) {
        sum += r.goodput;
        covered += r.covered;
        s.total_outages += r.outages;
        s.total_scheduled += r.scheduled;
    }
    s.mean_goodput = sum / s.trials;
    s.mean_covered = static_cast<double>(covered) / s.trials;
    double ss = 0.0;
    for (const TrialRecord& r : records) {
        const double d = r.goodput - s.mean_goodput;
        ss += d * d;
    }
    if (s.trials > 1) {
        s.std_error = std::sqrt(ss / (s.trials - 1)) / std::sqrt(static_cast<double>(s.trials));
    }
    s.per = s.total_scheduled > 0
                ? static_cast<double>(s.total_outages) / static_cast<double>(s.total_scheduled)
                : 0.0;
    s.mean_scheduled = static_cast<double>(s.total_scheduled) / s.trials;
    return s;
}

GoodputSummary simulate_summary(const SimConfig& cfg) {
    const SchemeArtifacts art = prepare_scheme(cfg);
    return summarize(simulate(cfg, art), art.feasible);
}

}  // namespace sdma
