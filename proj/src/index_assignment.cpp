#include "sdma/index_assignment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sdma {

TspInstance make_tsp_instance(Matrix dist) {
    const int n = dist.size();
    if (n < 2) {
        throw config_error("make_tsp_instance: need at least 2 cities, got " + std::to_string(n));
    }
    for (int i = 0; i < n; ++i) {
        if (dist.at(i, i) != 0.0) {
            throw config_error("make_tsp_instance: nonzero diagonal at city " + std::to_string(i));
        }
        for (int j = 0; j < n; ++j) {
            if (dist.at(i, j) < 0.0) {
                throw config_error("make_tsp_instance: negative distance at (" +
                                   std::to_string(i) + "," + std::to_string(j) + ")");
            }
            if (std::abs(dist.at(i, j) - dist.at(j, i)) > 1e-12) {
                throw config_error("make_tsp_instance: asymmetric distance at (" +
                                   std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
    return TspInstance{n, std::move(dist)};
}

double expected_distortion(const IndexMapping& xi, const std::vector<double>& priors,
                           const TransitionMatrix& p_ch, const Codebook& cb) {
    const int n = cb.num_entries();
    if (xi.size() != n || static_cast<int>(priors.size()) != n || p_ch.size() != n) {
        throw config_error("expected_distortion: dimension mismatch");
    }
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double s = cb.sin_dist.at(i, j);
            total += priors[i] * p_ch.at(xi.to_symbol[i], xi.to_symbol[j]) * s * s;
        }
    }
    return total;
}

TspInstance build_tsp(const Codebook& cb, const std::vector<double>& priors, double ser) {
    const int n = cb.num_entries();
    if (static_cast<int>(priors.size()) != n) {
        throw config_error("build_tsp: prior vector size does not match the codebook");
    }
    Matrix dist(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            const double s = cb.sin_dist.at(i, j);
            const double d = s * s;
            // Symmetrized explicitly even though d already is.
            dist.at(i, j) = ser * (priors[i] * d + priors[j] * d) / 2.0;
        }
    }
    return make_tsp_instance(std::move(dist));
}

TspInstance distance_instance(const Codebook& cb) {
    const int n = cb.num_entries();
    Matrix dist(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) {
                dist.at(i, j) = cb.sin_dist.at(i, j);
            }
        }
    }
    return make_tsp_instance(std::move(dist));
}

namespace {

void check_permutation(const std::vector<int>& order, int n, const char* what) {
    if (static_cast<int>(order.size()) != n) {
        throw config_error(std::string(what) + ": order size does not match the instance");
    }
    std::vector<char> seen(n, 0);
    for (int c : order) {
        if (c < 0 || c >= n || seen[c]) {
            throw config_error(std::string(what) + ": order is not a permutation");
        }
        seen[c] = 1;
    }
}

}  // namespace

double cycle_cost(const std::vector<int>& order, const TspInstance& inst) {
    check_permutation(order, inst.n_cities, "cycle_cost");
    double c = 0.0;
    const int n = inst.n_cities;
    for (int k = 0; k < n; ++k) {
        c += inst.dist.at(order[k], order[(k + 1) % n]);
    }
    return c;
}

TourSolution cnna(const TspInstance& inst, int start, Rng* rng) {
    const int n = inst.n_cities;
    int first = start;
    if (start == kStartPole) {
        double best_sum = -1.0;
        first = 0;
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) {
                s += inst.dist.at(i, j);
            }
            if (s > best_sum) {
                best_sum = s;
                first = i;
            }
        }
    } else if (start == kStartRandom) {
        if (rng == nullptr) {
            throw config_error("cnna: random start requires an RNG");
        }
        first = static_cast<int>(rng->uniform_below(static_cast<uint64_t>(n)));
    } else if (start < 0 || start >= n) {
        throw config_error("cnna: start city " + std::to_string(start) + " out of range");
    }

    std::vector<int> tour{first};
    tour.reserve(n);
    std::vector<char> visited(n, 0);
    visited[first] = 1;
    while (static_cast<int>(tour.size()) < n) {
        const int cur = tour.back();
        int best = -1;
        double best_w = 0.0;
        double best_tie = 0.0;
        for (int c = 0; c < n; ++c) {
            if (visited[c]) {
                continue;
            }
            const double w = inst.dist.at(cur, c);
            double tie = 0.0;
            for (int v : tour) {
                tie += inst.dist.at(c, v);
            }
            if (best < 0 || w < best_w - 1e-15 ||
                (std::abs(w - best_w) <= 1e-15 && tie < best_tie - 1e-15)) {
                best = c;
                best_w = w;
                best_tie = tie;
            }
        }
        tour.push_back(best);
        visited[best] = 1;
    }
    const double cost = cycle_cost(tour, inst);
    return TourSolution{std::move(tour), cost};
}

TourSolution two_opt(const TspInstance& inst, const TourSolution& initial) {
    std::vector<int> tour = initial.order;
    check_permutation(tour, inst.n_cities, "two_opt");
    const int n = inst.n_cities;
    bool improved = true;
    while (improved) {
        improved = false;
        for (int i = 0; i + 1 < n; ++i) {
            for (int j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1) {
                    continue;  // would only reverse the whole cycle
                }
                const int a = tour[i];
                const int b = tour[i + 1];
                const int c = tour[j];
                const int d = tour[(j + 1) % n];
                const double delta = inst.dist.at(a, c) + inst.dist.at(b, d) -
                                     inst.dist.at(a, b) - inst.dist.at(c, d);
                if (delta < -1e-13) {
                    std::reverse(tour.begin() + i + 1, tour.begin() + j + 1);
                    improved = true;
                }
            }
        }
    }
    const double cost = cycle_cost(tour, inst);
    return TourSolution{std::move(tour), cost};
}

TourSolution exhaustive_tsp(const TspInstance& inst) {
    const int n = inst.n_cities;
    if (n > 10) {
        throw config_error("exhaustive_tsp: refusing N = " + std::to_string(n) +
                           " (> 10 cities; (N-1)!/2 cycles is too many)");
    }
    std::vector<int> perm(n - 1);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<int> best_tour;
    double best_cost = 0.0;
    std::vector<int> tour(n);
    tour[0] = 0;
    do {
        // Each cycle appears twice (once reversed); keep the lexicographically
        // smaller representative so ties resolve deterministically.
        if (n > 2 && perm.front() > perm.back()) {
            continue;
        }
        std::copy(perm.begin(), perm.end(), tour.begin() + 1);
        double c = 0.0;
        for (int k = 0; k < n; ++k) {
            c += inst.dist.at(tour[k], tour[(k + 1) % n]);
        }
        if (best_tour.empty() || c < best_cost - 1e-15) {
            best_tour = tour;
            best_cost = c;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return TourSolution{std::move(best_tour), best_cost};
}

IndexMapping tour_to_mapping(const TourSolution& tour, int n_points) {
    if (static_cast<int>(tour.order.size()) != n_points) {
        throw config_error("tour_to_mapping: tour size " + std::to_string(tour.order.size()) +
                           " does not match constellation size " + std::to_string(n_points));
    }
    std::vector<int> xi(n_points, -1);
    for (int pos = 0; pos < n_points; ++pos) {
        xi[tour.order[pos]] = pos;
    }
    return mapping_from_xi(std::move(xi));
}

}  // namespace sdma
