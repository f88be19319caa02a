#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "sdma/core_math.hpp"
#include "sdma/feedback_channel.hpp"
#include "sdma/types.hpp"

using namespace sdma;

namespace {

void check_row_stochastic(const TransitionMatrix& p) {
    for (int i = 0; i < p.size(); ++i) {
        double s = 0.0;
        for (int j = 0; j < p.size(); ++j) {
            CHECK(p.at(i, j) >= 0.0);
            s += p.at(i, j);
        }
        CHECK(std::abs(s - 1.0) < 1e-9);
    }
}

int hamming_weight(uint32_t x) {
    int w = 0;
    while (x) {
        w += int(x & 1u);
        x >>= 1;
    }
    return w;
}

}  // namespace

TEST_CASE("BPSK crossover probability matches the closed form") {
    // Q(sqrt(2)) at 0 dB
    CHECK(std::abs(bpsk_bit_error_prob(0.0) - 0.0786) < 0.0005);
    CHECK(std::abs(bpsk_bit_error_prob(0.0) - 0.078649603525418901) < 1e-12);
    // the 2-point constellation realizes the same channel
    const TransitionMatrix p = psk_transition_matrix(2, 0.0);
    CHECK(std::abs(p.at(0, 1) - bpsk_bit_error_prob(0.0)) < 1e-9);
    CHECK(std::abs(p.at(1, 0) - bpsk_bit_error_prob(0.0)) < 1e-9);
    CHECK(std::abs(p.at(0, 0) - 0.92135039647458106) < 1e-9);
}

TEST_CASE("PSK transition matrices are row stochastic") {
    for (int n : {2, 4, 8, 16}) {
        for (double snr : {-5.0, 0.0, 10.0, 20.0}) {
            check_row_stochastic(psk_transition_matrix(n, snr));
        }
    }
    CHECK_THROWS_AS(psk_transition_matrix(1, 10.0), config_error);
}

TEST_CASE("8-PSK at 10 dB: anchor row and circular symmetry") {
    const TransitionMatrix p = psk_transition_matrix(8, 10.0);
    CHECK(std::abs(p.at(0, 0) - 0.91299523988273745) < 1e-10);
    CHECK(std::abs(p.at(0, 1) - 0.043485029316640798) < 1e-10);
    CHECK(std::abs(p.at(0, 2) - 1.6698139876040331e-05) < 1e-15);
    CHECK(std::abs(p.at(0, 4) - 2.6117710812786789e-07) < 1e-17);
    // adjacent errors dominate and wrap symmetrically
    for (int i = 0; i < 8; ++i) {
        for (int k = 1; k < 8; ++k) {
            CHECK(std::abs(p.at(i, (i + k) % 8) - p.at(0, k)) < 1e-12);
            CHECK(std::abs(p.at(i, (i + 8 - k) % 8) - p.at(0, k)) < 1e-12);
        }
    }
    CHECK(std::abs((1.0 - p.at(0, 0)) - 0.08700476) < 1e-8);
}

TEST_CASE("nearest-neighbor model rows") {
    const TransitionMatrix p = nn_transition_matrix(8, 0.2);
    for (int i = 0; i < 8; ++i) {
        CHECK(p.at(i, i) == doctest::Approx(0.8));
        CHECK(p.at(i, (i + 1) % 8) == doctest::Approx(0.1));
        CHECK(p.at(i, (i + 7) % 8) == doctest::Approx(0.1));
        for (int k = 2; k <= 6; ++k) CHECK(p.at(i, (i + k) % 8) == 0.0);
    }
    check_row_stochastic(p);

    // 2 points: the lone neighbor takes the whole error mass
    const TransitionMatrix p2 = nn_transition_matrix(2, 0.3);
    CHECK(p2.at(0, 1) == doctest::Approx(0.3));
    CHECK(p2.at(0, 0) == doctest::Approx(0.7));

    // error-free channel degenerates to the identity
    const TransitionMatrix id = nn_transition_matrix(8, 0.0);
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            CHECK(id.at(i, j) == (i == j ? 1.0 : 0.0));
        }
    }

    CHECK_THROWS_AS(nn_transition_matrix(8, 1.5), config_error);
    CHECK_THROWS_AS(nn_transition_matrix(8, -0.1), config_error);
    CHECK_THROWS_AS(nn_transition_matrix(1, 0.1), config_error);
}

TEST_CASE("kron_power composes independent symbol uses") {
    const TransitionMatrix p4 = psk_transition_matrix(4, 10.0);
    const TransitionMatrix p16 = kron_power(p4, 2);
    REQUIRE(p16.size() == 16);
    check_row_stochastic(p16);
    // factorization: index = 4 * s1 + s0, symbols independent
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            CHECK(std::abs(p16.at(0, 4 * a + b) - p4.at(0, a) * p4.at(0, b)) < 1e-12);
            CHECK(std::abs(p16.at(4 * a + b, 4 * a + b) - p4.at(a, a) * p4.at(b, b)) < 1e-12);
        }
    }
    // composite symbol error rate at 10 dB (regression anchor)
    CHECK(std::abs((1.0 - p16.at(0, 0)) - 0.003127) < 1e-5);
    // one symbol is a no-op
    const TransitionMatrix same = kron_power(p4, 1);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) CHECK(same.at(i, j) == p4.at(i, j));
    }
    CHECK_THROWS_AS(kron_power(p4, 0), config_error);
}

TEST_CASE("csit_transition relabels both axes by the mapping") {
    const TransitionMatrix p = nn_transition_matrix(4, 0.2);

    // identity mapping changes nothing
    const TransitionMatrix same = csit_transition(p, identity_mapping(4));
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) CHECK(same.at(i, j) == p.at(i, j));
    }

    // reversal on 4 points, checked against direct indexing
    const IndexMapping rev = mapping_from_xi({3, 2, 1, 0});
    const TransitionMatrix q = csit_transition(p, rev);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) CHECK(q.at(i, j) == p.at(3 - i, 3 - j));
    }
    check_row_stochastic(q);

    // equivariance for a random permutation on 8 points
    Rng rng(31);
    std::vector<int> xi(8);
    for (int i = 0; i < 8; ++i) xi[i] = i;
    for (int i = 7; i > 0; --i) std::swap(xi[i], xi[rng.uniform_below(uint64_t(i) + 1)]);
    const IndexMapping m = mapping_from_xi(xi);
    const TransitionMatrix p8 = psk_transition_matrix(8, 8.0);
    const TransitionMatrix q8 = csit_transition(p8, m);
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) CHECK(q8.at(i, j) == p8.at(xi[i], xi[j]));
    }

    // inverse arrays agree
    for (int i = 0; i < 8; ++i) CHECK(m.to_codeword[m.to_symbol[i]] == i);

    CHECK_THROWS_AS(mapping_from_xi({0, 0, 1}), config_error);
    CHECK_THROWS_AS(csit_transition(p, identity_mapping(3)), config_error);
}

TEST_CASE("transmit_index: noiseless channel is transparent") {
    const TransitionMatrix id = nn_transition_matrix(8, 0.0);
    Rng rng(32);
    for (int i = 0; i < 8; ++i) {
        for (int t = 0; t < 100; ++t) CHECK(transmit_index(id, i, rng) == i);
    }
}

TEST_CASE("transmit_index: empirical law matches the matrix row") {
    const TransitionMatrix p = nn_transition_matrix(8, 0.2);
    Rng rng(33);
    const int n = 1000000;
    std::vector<int> counts(8, 0);
    for (int t = 0; t < n; ++t) ++counts[transmit_index(p, 2, rng)];
    for (int j = 0; j < 8; ++j) {
        CHECK(std::abs(double(counts[j]) / n - p.at(2, j)) < 0.002);
    }

    // same seed, same draw sequence
    Rng a(34), b(34);
    for (int t = 0; t < 1000; ++t) CHECK(transmit_index(p, 5, a) == transmit_index(p, 5, b));
}

TEST_CASE("neighbor_set fixtures") {
    // noiseless: the set is the point itself
    const TransitionMatrix id = nn_transition_matrix(8, 0.0);
    NeighborSet s = neighbor_set(id, 3, 0.05);
    REQUIRE(s.indices.size() == 1);
    CHECK(s.indices[0] == 3);
    CHECK(s.prob_sum == doctest::Approx(1.0));

    // nearest-neighbor at ser 0.2: point plus both ring neighbors
    s = neighbor_set(nn_transition_matrix(8, 0.2), 0, 0.05);
    REQUIRE(s.indices.size() == 3);
    CHECK(s.indices == std::vector<int>{0, 1, 7});
    CHECK(s.prob_sum >= 0.95);

    // 8-PSK at 10 dB keeps 3 points to cover 97%
    s = neighbor_set(psk_transition_matrix(8, 10.0), 0, 0.03);
    CHECK(s.indices.size() == 3);
    CHECK(s.prob_sum >= 0.97);

    // the set always contains the queried point even when eps is generous
    s = neighbor_set(nn_transition_matrix(8, 0.2), 4, 0.9);
    CHECK(std::find(s.indices.begin(), s.indices.end(), 4) != s.indices.end());

    CHECK_THROWS_AS(neighbor_set(id, 8, 0.05), config_error);
    CHECK_THROWS_AS(neighbor_set(id, 0, 0.0), config_error);
}

TEST_CASE("shortened Hamming code shapes") {
    const HammingCode h7 = make_shortened_hamming(7);
    CHECK(h7.n_parity == 3);
    CHECK(h7.n_payload == 4);
    CHECK(h7.codewords.size() == 16);

    const HammingCode h6 = make_shortened_hamming(6);
    CHECK(h6.n_parity == 3);
    CHECK(h6.n_payload == 3);
    CHECK(h6.codewords.size() == 8);

    // minimum distance stays 3 after shortening
    int dmin = h6.n_bits;
    for (size_t a = 0; a < h6.codewords.size(); ++a) {
        for (size_t b = a + 1; b < h6.codewords.size(); ++b) {
            dmin = std::min(dmin, hamming_weight(h6.codewords[a] ^ h6.codewords[b]));
        }
    }
    CHECK(dmin == 3);

    // budgets too small for any payload are rejected
    CHECK_THROWS_AS(make_shortened_hamming(2), config_error);
    CHECK_THROWS_AS(make_shortened_hamming(1), config_error);
}

TEST_CASE("Hamming round-trip and single-error correction") {
    const HammingCode code = make_shortened_hamming(7);
    for (uint32_t u = 0; u < 16; ++u) {
        const uint32_t w = hamming_encode(code, u);
        CHECK(hamming_decode(code, w) == u);
        for (int b = 0; b < 7; ++b) {
            CHECK(hamming_decode(code, w ^ (1u << b)) == u);
        }
    }

    Rng rng(35);
    for (uint32_t u = 0; u < 16; ++u) {
        CHECK(hamming_feedback_with_ber(code, u, 0.0, rng) == u);
    }
}

TEST_CASE("decoder always lands on a nearest codeword") {
    // exhaustive over every 6-bit word, including double errors
    const HammingCode code = make_shortened_hamming(6);
    for (uint32_t w = 0; w < 64; ++w) {
        const uint32_t u = hamming_decode(code, w);
        const int got = hamming_weight(code.codewords[u] ^ w);
        int best = code.n_bits;
        for (uint32_t cw : code.codewords) best = std::min(best, hamming_weight(cw ^ w));
        CHECK(got == best);
    }
}

TEST_CASE("coded payload transition: structure and simulation agreement") {
    const HammingCode code = make_shortened_hamming(6);
    const double p_bit = 0.1;
    const TransitionMatrix t = coded_payload_transition(code, p_bit);
    REQUIRE(t.size() == 8);
    check_row_stochastic(t);

    // all single errors are corrected, so the diagonal dominates the
    // zero-or-one-flip mass
    const double floor = std::pow(1.0 - p_bit, 6) + 6.0 * p_bit * std::pow(1.0 - p_bit, 5);
    for (int i = 0; i < 8; ++i) CHECK(t.at(i, i) >= floor - 1e-12);

    // error-free bits give the identity
    const TransitionMatrix t0 = coded_payload_transition(code, 0.0);
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) CHECK(t0.at(i, j) == (i == j ? 1.0 : 0.0));
    }

    // Monte Carlo agreement on one row
    Rng rng(36);
    const int n = 200000;
    std::vector<int> counts(8, 0);
    for (int k = 0; k < n; ++k) ++counts[hamming_feedback_with_ber(code, 3, p_bit, rng)];
    for (int j = 0; j < 8; ++j) {
        CHECK(std::abs(double(counts[j]) / n - t.at(3, j)) < 0.005);
    }

    CHECK_THROWS_AS(coded_payload_transition(code, 1.5), config_error);
}

TEST_CASE("hamming_feedback wrapper") {
    Rng rng(37);
    // 40 dB feedback SNR: bit errors are astronomically unlikely
    for (uint32_t u = 0; u < 16; ++u) {
        CHECK(hamming_feedback(u, 7, 40.0, rng) == u);
    }
    CHECK_THROWS_AS(hamming_feedback(0, 2, 10.0, rng), config_error);
}
