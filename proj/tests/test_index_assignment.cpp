#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sdma/codebook.hpp"
#include "sdma/core_math.hpp"
#include "sdma/feedback_channel.hpp"
#include "sdma/index_assignment.hpp"
#include "sdma/types.hpp"

using namespace sdma;

namespace {

TspInstance random_instance(Rng& rng, int n) {
    Matrix d(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            d.at(i, j) = d.at(j, i) = rng.uniform_pos();
        }
    }
    return make_tsp_instance(std::move(d));
}

TspInstance constant_instance(int n, double d) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m.at(i, j) = (i == j) ? 0.0 : d;
    }
    return make_tsp_instance(std::move(m));
}

// ring of n points, distance = circular index separation
TspInstance ring_instance(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int k = std::abs(i - j);
            m.at(i, j) = std::min(k, n - k);
        }
    }
    return make_tsp_instance(std::move(m));
}

IndexMapping random_mapping(Rng& rng, int n) {
    std::vector<int> xi(n);
    std::iota(xi.begin(), xi.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(xi[i], xi[rng.uniform_below(uint64_t(i) + 1)]);
    return mapping_from_xi(std::move(xi));
}

std::vector<double> ramp_priors(int n) {
    std::vector<double> p(n);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += double(i + 1);
    for (int i = 0; i < n; ++i) p[i] = double(i + 1) / s;
    return p;
}

}  // namespace

TEST_CASE("make_tsp_instance validates its input") {
    Matrix ok(3);
    ok.at(0, 1) = ok.at(1, 0) = 1.0;
    ok.at(0, 2) = ok.at(2, 0) = 2.0;
    ok.at(1, 2) = ok.at(2, 1) = 0.5;
    CHECK(make_tsp_instance(ok).n_cities == 3);

    Matrix asym = ok;
    asym.at(0, 1) = 1.1;
    CHECK_THROWS_AS(make_tsp_instance(asym), config_error);

    Matrix neg = ok;
    neg.at(0, 2) = neg.at(2, 0) = -0.1;
    CHECK_THROWS_AS(make_tsp_instance(neg), config_error);

    Matrix diag = ok;
    diag.at(1, 1) = 0.2;
    CHECK_THROWS_AS(make_tsp_instance(diag), config_error);
}

TEST_CASE("expected distortion vanishes on a noiseless channel") {
    const Codebook cb = build_codebook(1234, 4, 3);
    const std::vector<double> priors = ramp_priors(8);
    const TransitionMatrix id = nn_transition_matrix(8, 0.0);
    Rng rng(41);
    for (int t = 0; t < 10; ++t) {
        CHECK(expected_distortion(random_mapping(rng, 8), priors, id, cb) < 1e-12);
    }
}

TEST_CASE("single orthonormal set: every mapping costs exactly ser") {
    // all off-diagonal codeword distortions are 1, so the cost collapses to
    // the symbol error rate no matter how indices are assigned
    const Codebook cb = build_codebook(7, 4, 2);
    const std::vector<double> priors{0.1, 0.2, 0.3, 0.4};
    const TransitionMatrix ch = nn_transition_matrix(4, 0.3);
    Rng rng(42);
    for (int t = 0; t < 24; ++t) {
        CHECK(std::abs(expected_distortion(random_mapping(rng, 4), priors, ch, cb) - 0.3) <
              1e-12);
    }
}

TEST_CASE("expected distortion matches a direct triple loop") {
    const Codebook cb = build_codebook(1234, 4, 3);
    const std::vector<double> priors = ramp_priors(8);
    const TransitionMatrix ch = psk_transition_matrix(8, 8.0);
    Rng rng(43);
    for (int t = 0; t < 50; ++t) {
        const IndexMapping xi = random_mapping(rng, 8);
        double direct = 0.0;
        for (int i = 0; i < 8; ++i) {
            for (int j = 0; j < 8; ++j) {
                const double d = cb.sin_dist.at(i, j) * cb.sin_dist.at(i, j);
                direct += priors[i] * ch.at(xi.to_symbol[i], xi.to_symbol[j]) * d;
            }
        }
        CHECK(std::abs(expected_distortion(xi, priors, ch, cb) - direct) < 1e-12);
    }
}

TEST_CASE("build_tsp on a single orthonormal set is a constant instance") {
    const Codebook cb = build_codebook(7, 4, 2);
    const std::vector<double> uniform(4, 0.25);
    const TspInstance inst = build_tsp(cb, uniform, 0.2);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double want = (i == j) ? 0.0 : 0.2 * 0.25;
            CHECK(std::abs(inst.dist.at(i, j) - want) < 1e-12);
        }
    }
    // any cycle then costs N * ser / N = ser
    CHECK(std::abs(cycle_cost({2, 0, 3, 1}, inst) - 0.2) < 1e-12);
}

TEST_CASE("tour cost equals mapping cost under the ring channel") {
    // the whole point of the tour reduction: the cycle through the codewords
    // in symbol order prices exactly the feedback-induced distortion
    const Codebook cb = build_codebook(1234, 4, 3);
    const std::vector<double> priors = ramp_priors(8);
    const double ser = 0.2;
    const TransitionMatrix ch = nn_transition_matrix(8, ser);
    const TspInstance inst = build_tsp(cb, priors, ser);
    Rng rng(44);
    for (int t = 0; t < 100; ++t) {
        const IndexMapping xi = random_mapping(rng, 8);
        std::vector<int> order(8);
        for (int k = 0; k < 8; ++k) order[k] = xi.to_codeword[k];
        CHECK(std::abs(cycle_cost(order, inst) - expected_distortion(xi, priors, ch, cb)) <
              1e-12);
    }
}

TEST_CASE("cycle_cost fixtures and invariances") {
    const TspInstance inst3 = constant_instance(3, 1.0);
    CHECK(cycle_cost({0, 1, 2}, inst3) == doctest::Approx(3.0));

    Rng rng(45);
    const TspInstance inst = random_instance(rng, 7);
    const std::vector<int> base{3, 1, 6, 0, 5, 2, 4};
    const double c = cycle_cost(base, inst);

    // rotation
    std::vector<int> rot(base.begin() + 2, base.end());
    rot.insert(rot.end(), base.begin(), base.begin() + 2);
    CHECK(cycle_cost(rot, inst) == doctest::Approx(c).epsilon(1e-12));

    // reversal
    std::vector<int> rev(base.rbegin(), base.rend());
    CHECK(cycle_cost(rev, inst) == doctest::Approx(c).epsilon(1e-12));

    CHECK_THROWS_AS(cycle_cost({0, 1, 1}, inst3), config_error);
}

TEST_CASE("cnna fixtures") {
    // constant distances: every tour costs n * d
    const TourSolution t = cnna(constant_instance(4, 0.5));
    CHECK(t.cost == doctest::Approx(2.0));
    CHECK(t.order.size() == 4);

    // ring geometry: the natural ring (cost n) is recovered
    const TspInstance ring = ring_instance(8);
    CHECK(cnna(ring).cost == doctest::Approx(8.0));

    // explicit start city is honored
    Rng rng(46);
    const TspInstance inst = random_instance(rng, 9);
    CHECK(cnna(inst, 4).order[0] == 4);

    // random start draws from the provided stream, reproducibly
    Rng a(47), b(47);
    const TourSolution ra = cnna(inst, kStartRandom, &a);
    const TourSolution rb = cnna(inst, kStartRandom, &b);
    CHECK(ra.order == rb.order);
    CHECK_THROWS_AS(cnna(inst, kStartRandom, nullptr), config_error);
}

TEST_CASE("exhaustive solver: N=3 has a single cycle, N>10 is refused") {
    Rng rng(48);
    const TspInstance inst3 = random_instance(rng, 3);
    CHECK(exhaustive_tsp(inst3).cost == doctest::Approx(cycle_cost({0, 1, 2}, inst3)));

    const TspInstance big = random_instance(rng, 11);
    CHECK_THROWS_AS(exhaustive_tsp(big), config_error);
}

TEST_CASE("solver sandwich on random instances") {
    Rng rng(49);
    for (int t = 0; t < 100; ++t) {
        const TspInstance inst = random_instance(rng, 7);
        const TourSolution greedy = cnna(inst);
        const TourSolution improved = two_opt(inst, greedy);
        const TourSolution best = exhaustive_tsp(inst);
        CHECK(improved.cost <= greedy.cost + 1e-12);
        CHECK(best.cost <= improved.cost + 1e-12);
        // reported costs match their orders
        CHECK(std::abs(cycle_cost(greedy.order, inst) - greedy.cost) < 1e-12);
        CHECK(std::abs(cycle_cost(improved.order, inst) - improved.cost) < 1e-12);
        CHECK(std::abs(cycle_cost(best.order, inst) - best.cost) < 1e-12);
    }
}

TEST_CASE("tour_to_mapping round trip") {
    const std::vector<int> order{5, 2, 7, 0, 4, 1, 6, 3};
    const IndexMapping m = tour_to_mapping({order, 0.0}, 8);
    for (int k = 0; k < 8; ++k) {
        CHECK(m.to_codeword[k] == order[k]);
        CHECK(m.to_symbol[order[k]] == k);
    }

    // natural order is the identity
    std::vector<int> nat(8);
    std::iota(nat.begin(), nat.end(), 0);
    const IndexMapping id = tour_to_mapping({nat, 0.0}, 8);
    for (int k = 0; k < 8; ++k) CHECK(id.to_symbol[k] == k);

    CHECK_THROWS_AS(tour_to_mapping({order, 0.0}, 7), config_error);
}

TEST_CASE("optimal tour beats random mappings end to end") {
    const Codebook cb = build_codebook(1234, 4, 3);
    Rng prior_rng(50);
    const std::vector<double> priors = codeword_priors(cb, 0.1, 50000, prior_rng);
    const double ser = 0.2;
    const TransitionMatrix ch = nn_transition_matrix(8, ser);

    const TourSolution best = exhaustive_tsp(build_tsp(cb, priors, ser));
    const double opt = expected_distortion(tour_to_mapping(best, 8), priors, ch, cb);

    Rng rng(51);
    for (int t = 0; t < 100; ++t) {
        CHECK(opt <= expected_distortion(random_mapping(rng, 8), priors, ch, cb) + 1e-12);
    }
}
