#include "sdma/feedback_channel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace sdma {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_row_stochastic(const TransitionMatrix& p, const char* what) {
    for (int i = 0; i < p.size(); ++i) {
        double s = 0.0;
        for (int j = 0; j < p.size(); ++j) {
            s += p.at(i, j);
        }
        if (std::abs(s - 1.0) > 1e-9) {
            throw config_error(std::string(what) + ": row " + std::to_string(i) +
                               " sums to " + std::to_string(s));
        }
    }
}

}  // namespace

TransitionMatrix psk_transition_matrix(int n_points, double snr_db) {
    if (n_points < 2) {
        throw config_error("psk_transition_matrix: need at least 2 constellation points, got " +
                           std::to_string(n_points));
    }
    const double gamma = std::pow(10.0, snr_db / 10.0);
    // Density of the received phase when phase 0 was sent, for a unit-energy
    // symbol in complex noise of total variance 1.
    auto pdens = [gamma](double th) {
        const double c = std::cos(th);
        const double sg = std::sqrt(gamma);
        return (1.0 / (2.0 * kPi)) * std::exp(-gamma) *
               (1.0 + std::sqrt(kPi * gamma) * c * std::exp(gamma * c * c) * std::erfc(-sg * c));
    };
    std::vector<double> row(n_points, 0.0);
    double off_sum = 0.0;
    for (int k = 1; k < n_points; ++k) {
        const double lo = (2.0 * k - 1.0) * kPi / n_points;
        const double hi = (2.0 * k + 1.0) * kPi / n_points;
        row[k] = integrate(pdens, lo, hi, 1e-8);
        off_sum += row[k];
    }
    row[0] = 1.0 - off_sum;
    if (row[0] < 0.0) {
        // Only possible through quadrature round-off at extreme parameters.
        row[0] = 0.0;
        const double s = std::accumulate(row.begin(), row.end(), 0.0);
        for (double& v : row) {
            v /= s;
        }
    }
    TransitionMatrix p(n_points);
    for (int i = 0; i < n_points; ++i) {
        for (int j = 0; j < n_points; ++j) {
            p.at(i, j) = row[(j - i + n_points) % n_points];
        }
    }
    check_row_stochastic(p, "psk_transition_matrix");
    return p;
}

TransitionMatrix nn_transition_matrix(int n_points, double ser) {
    if (n_points < 2) {
        throw config_error("nn_transition_matrix: need at least 2 points, got " +
                           std::to_string(n_points));
    }
    if (ser < 0.0 || ser > 1.0) {
        throw config_error("nn_transition_matrix: symbol error rate must lie in [0,1], got " +
                           std::to_string(ser));
    }
    TransitionMatrix p(n_points);
    for (int i = 0; i < n_points; ++i) {
        p.at(i, i) = 1.0 - ser;
        p.at(i, (i + 1) % n_points) += ser / 2.0;
        p.at(i, (i - 1 + n_points) % n_points) += ser / 2.0;
    }
    check_row_stochastic(p, "nn_transition_matrix");
    return p;
}

TransitionMatrix kron_power(const TransitionMatrix& per_symbol, int n_symbols) {
    if (n_symbols < 1) {
        throw config_error("kron_power: need at least one symbol, got " +
                           std::to_string(n_symbols));
    }
    TransitionMatrix out = per_symbol;
    const int base = per_symbol.size();
    for (int s = 1; s < n_symbols; ++s) {
        const int n = out.size();
        TransitionMatrix next(n * base);
        for (int i1 = 0; i1 < n; ++i1) {
            for (int j1 = 0; j1 < n; ++j1) {
                const double a = out.at(i1, j1);
                if (a == 0.0) {
                    continue;
                }
                for (int i2 = 0; i2 < base; ++i2) {
                    for (int j2 = 0; j2 < base; ++j2) {
                        next.at(i1 * base + i2, j1 * base + j2) = a * per_symbol.at(i2, j2);
                    }
                }
            }
        }
        out = std::move(next);
    }
    check_row_stochastic(out, "kron_power");
    return out;
}

double bpsk_bit_error_prob(double snr_db) {
    const double snr = std::pow(10.0, snr_db / 10.0);
    return qfunc(std::sqrt(2.0 * snr));
}

IndexMapping identity_mapping(int n) {
    IndexMapping m;
    m.to_symbol.resize(n);
    m.to_codeword.resize(n);
    std::iota(m.to_symbol.begin(), m.to_symbol.end(), 0);
    std::iota(m.to_codeword.begin(), m.to_codeword.end(), 0);
    return m;
}

IndexMapping mapping_from_xi(std::vector<int> xi) {
    const int n = static_cast<int>(xi.size());
    IndexMapping m;
    m.to_codeword.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        if (xi[i] < 0 || xi[i] >= n || m.to_codeword[xi[i]] != -1) {
            throw config_error("mapping_from_xi: not a permutation of 0.." + std::to_string(n - 1));
        }
        m.to_codeword[xi[i]] = i;
    }
    m.to_symbol = std::move(xi);
    return m;
}

TransitionMatrix csit_transition(const TransitionMatrix& p_ch, const IndexMapping& xi) {
    const int n = p_ch.size();
    if (xi.size() != n) {
        throw config_error("csit_transition: mapping size " + std::to_string(xi.size()) +
                           " does not match channel size " + std::to_string(n));
    }
    TransitionMatrix p(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            p.at(i, j) = p_ch.at(xi.to_symbol[i], xi.to_symbol[j]);
        }
    }
    return p;
}

int transmit_index(const TransitionMatrix& p_csit, int sent, Rng& rng) {
    const int n = p_csit.size();
    const double u = rng.uniform();
    const double* row = p_csit.row(sent);
    double cum = 0.0;
    for (int j = 0; j < n; ++j) {
        cum += row[j];
        if (u < cum) {
            return j;
        }
    }
    return n - 1;
}

NeighborSet neighbor_set(const TransitionMatrix& p_ch, int point, double eps) {
    const int n = p_ch.size();
    if (eps <= 0.0 || eps >= 1.0) {
        throw config_error("neighbor_set: eps must lie in (0,1), got " + std::to_string(eps));
    }
    if (point < 0 || point >= n) {
        throw config_error("neighbor_set: point " + std::to_string(point) + " out of range");
    }
    const double* row = p_ch.row(point);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [row](int a, int b) {
        if (row[a] != row[b]) {
            return row[a] > row[b];
        }
        return a < b;
    });
    NeighborSet ns;
    ns.indices.push_back(point);
    ns.prob_sum = row[point];
    for (int j : order) {
        if (j == point) {
            continue;
        }
        if (ns.prob_sum >= 1.0 - eps - 1e-15) {
            break;
        }
        ns.indices.push_back(j);
        ns.prob_sum += row[j];
    }
    std::sort(ns.indices.begin(), ns.indices.end());
    return ns;
}

HammingCode make_shortened_hamming(int n_bits) {
    if (n_bits < 1 || n_bits > 24) {
        throw config_error("make_shortened_hamming: block length must lie in [1,24], got " +
                           std::to_string(n_bits));
    }
    int m = 0;
    while ((1 << m) < n_bits + 1) {
        ++m;
    }
    const int k = n_bits - m;
    if (k < 1) {
        throw config_error("make_shortened_hamming: budget of " + std::to_string(n_bits) +
                           " coded bits leaves no payload (needs " + std::to_string(m) +
                           " parity bits)");
    }
    HammingCode code;
    code.n_bits = n_bits;
    code.n_parity = m;
    code.n_payload = k;
    for (int pos = 1; pos <= n_bits; ++pos) {
        if ((pos & (pos - 1)) != 0) {
            code.data_pos.push_back(pos);
        }
    }
    // Encode by placing payload bits at the data positions and choosing the
    // parity bits (power-of-two positions) to cancel the syndrome: each such
    // position toggles exactly one syndrome bit.
    code.codewords.resize(1u << k);
    for (uint32_t u = 0; u < (1u << k); ++u) {
        uint32_t w = 0;
        for (int t = 0; t < k; ++t) {
            if (u & (1u << t)) {
                w |= 1u << (code.data_pos[t] - 1);
            }
        }
        uint32_t syn = 0;
        for (int pos = 1; pos <= n_bits; ++pos) {
            if (w & (1u << (pos - 1))) {
                syn ^= static_cast<uint32_t>(pos);
            }
        }
        for (int a = 0; a < m; ++a) {
            if (syn & (1u << a)) {
                w |= 1u << ((1 << a) - 1);
            }
        }
        code.codewords[u] = w;
    }
    return code;
}

uint32_t hamming_encode(const HammingCode& code, uint32_t payload) {
    if (payload >= code.codewords.size()) {
        throw config_error("hamming_encode: payload out of range");
    }
    return code.codewords[payload];
}

namespace {

uint32_t extract_payload(const HammingCode& code, uint32_t word) {
    uint32_t u = 0;
    for (size_t t = 0; t < code.data_pos.size(); ++t) {
        if (word & (1u << (code.data_pos[t] - 1))) {
            u |= 1u << t;
        }
    }
    return u;
}

}  // namespace

uint32_t hamming_decode(const HammingCode& code, uint32_t word) {
    uint32_t syn = 0;
    for (int pos = 1; pos <= code.n_bits; ++pos) {
        if (word & (1u << (pos - 1))) {
            syn ^= static_cast<uint32_t>(pos);
        }
    }
    if (syn == 0) {
        return extract_payload(code, word);
    }
    if (syn <= static_cast<uint32_t>(code.n_bits)) {
        return extract_payload(code, word ^ (1u << (syn - 1)));
    }
    // The syndrome points into the shortened tail; no single-bit flip inside
    // the block explains it. Fall back to the nearest codeword.
    uint32_t best = 0;
    int best_dist = code.n_bits + 1;
    for (uint32_t u = 0; u < code.codewords.size(); ++u) {
        const int d = std::popcount(word ^ code.codewords[u]);
        if (d < best_dist) {
            best_dist = d;
            best = u;
        }
    }
    return best;
}

TransitionMatrix coded_payload_transition(const HammingCode& code, double p_bit) {
    if (p_bit < 0.0 || p_bit > 1.0) {
        throw config_error("coded_payload_transition: bit error probability must lie in [0,1]");
    }
    const int n_payload_values = 1 << code.n_payload;
    const uint32_t n_patterns = 1u << code.n_bits;
    std::vector<double> pattern_prob(static_cast<size_t>(code.n_bits) + 1);
    for (int w = 0; w <= code.n_bits; ++w) {
        pattern_prob[w] = std::pow(p_bit, w) * std::pow(1.0 - p_bit, code.n_bits - w);
    }
    TransitionMatrix p(n_payload_values);
    for (int u = 0; u < n_payload_values; ++u) {
        const uint32_t c = code.codewords[u];
        for (uint32_t e = 0; e < n_patterns; ++e) {
            const double prob = pattern_prob[std::popcount(e)];
            if (prob == 0.0) {
                continue;
            }
            p.at(u, static_cast<int>(hamming_decode(code, c ^ e))) += prob;
        }
    }
    check_row_stochastic(p, "coded_payload_transition");
    return p;
}

uint32_t hamming_feedback_with_ber(const HammingCode& code, uint32_t payload, double p_bit,
                                   Rng& rng) {
    uint32_t w = hamming_encode(code, payload);
    for (int b = 0; b < code.n_bits; ++b) {
        if (rng.uniform() < p_bit) {
            w ^= 1u << b;
        }
    }
    return hamming_decode(code, w);
}

uint32_t hamming_feedback(uint32_t payload, int budget_bits, double snr_db, Rng& rng) {
    const HammingCode code = make_shortened_hamming(budget_bits);
    return hamming_feedback_with_ber(code, payload, bpsk_bit_error_prob(snr_db), rng);
}

}  // namespace sdma
