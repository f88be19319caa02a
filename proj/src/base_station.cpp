#include "sdma/base_station.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace sdma {

RateTable build_rate_table(const TransitionMatrix& p_csit, const Matrix& sin_dist, double delta,
                           double eps, int n_t, bool paper_i_star, bool allow_degenerate) {
    const int n = p_csit.size();
    if (sin_dist.size() != n) {
        throw config_error("build_rate_table: sine distance matrix does not match P_CSIT");
    }
    if (eps <= 0.0 || eps >= 1.0) {
        throw config_error("build_rate_table: eps must lie in (0,1), got " + std::to_string(eps));
    }
    if (delta <= 0.0 || delta >= 1.0) {
        throw config_error("build_rate_table: delta must lie in (0,1), got " +
                           std::to_string(delta));
    }
    if (n_t < 2) {
        throw config_error("build_rate_table: need n_t >= 2, got " + std::to_string(n_t));
    }
    const double exponent = 2.0 * (n_t - 1);
    RateTable table;
    table.rows.resize(n);
    std::vector<double> col(n);
    std::vector<int> order(n);
    for (int received = 0; received < n; ++received) {
        for (int j = 0; j < n; ++j) {
            col[j] = p_csit.at(j, received);
            order[j] = j;
        }
        std::sort(order.begin(), order.end(), [&col](int a, int b) {
            if (col[a] != col[b]) {
                return col[a] > col[b];
            }
            return a < b;
        });
        RateRow& row = table.rows[received];
        row.ns_set.push_back(received);
        double tot = col[received];
        for (int j : order) {
            if (j == received) {
                continue;
            }
            if (tot >= 1.0 - eps - 1e-15) {
                break;
            }
            row.ns_set.push_back(j);
            tot += col[j];
        }
        if (tot < 1.0 - eps - 1e-12) {
            if (!allow_degenerate) {
                throw config_error("build_rate_table: column " + std::to_string(received) +
                                   " reaches only " + std::to_string(tot) +
                                   " < 1 - eps even with every codeword");
            }
            row.ns_set.resize(n);
            for (int j = 0; j < n; ++j) {
                row.ns_set[j] = j;
            }
        }
        std::sort(row.ns_set.begin(), row.ns_set.end());

        double in_sum = 0.0;
        for (int j : row.ns_set) {
            in_sum += col[j];
        }
        const double tail = 1.0 - in_sum;

        if (paper_i_star) {
            row.i_star = row.ns_set.back();
        } else {
            row.i_star = row.ns_set.front();
            double best_sin = sin_dist.at(received, row.i_star);
            for (int j : row.ns_set) {
                const double s = sin_dist.at(received, j);
                if (s > best_sin) {
                    best_sin = s;
                    row.i_star = j;
                }
            }
        }
        const double p_star = col[row.i_star];
        const double raw_res = eps - tail;
        const double eps_res =
            std::clamp(raw_res, 0.0, std::max(0.0, p_star * (1.0 - 1e-12)));
        row.eps_res = eps_res;
        // A clearly negative residual means the tail alone blows the budget
        // (degenerate column): nothing can be delivered. A residual at zero,
        // up to the same rounding tolerance the degeneracy check uses, is
        // still workable: the in-cell angle never exceeds sqrt(delta), so the
        // formula rate below adds no outage on top of the tail.
        if (raw_res < -1e-12 || p_star <= 0.0) {
            row.rate = 0.0;
            continue;
        }
        const double inner = std::sqrt(delta) * std::pow(1.0 - eps_res / p_star, 1.0 / exponent) +
                             sin_dist.at(received, row.i_star);
        row.rate = inner >= 1.0 ? 0.0 : -2.0 * std::log2(inner);
    }
    return table;
}

RateTable build_rate_table(const TransitionMatrix& p_csit, const Codebook& cb, double delta,
                           double eps, int n_t, bool paper_i_star, bool allow_degenerate) {
    return build_rate_table(p_csit, cb.sin_dist, delta, eps, n_t, paper_i_star, allow_degenerate);
}

double outage_bound(double rate, int received, const RateRow& row,
                    const TransitionMatrix& p_csit, const Matrix& sin_dist, double delta,
                    int n_t) {
    if (rate < 0.0) {
        throw config_error("outage_bound: rate must be nonnegative");
    }
    double in_sum = 0.0;
    for (int j : row.ns_set) {
        in_sum += p_csit.at(j, received);
    }
    const double tail = 1.0 - in_sum;
    const double p_star = p_csit.at(row.i_star, received);
    const double x = std::pow(2.0, -rate / 2.0) - sin_dist.at(received, row.i_star);
    const double t = std::clamp(x / std::sqrt(delta), 0.0, 1.0);
    return tail + p_star * (1.0 - std::pow(t, 2.0 * (n_t - 1)));
}

ScheduleOutcome schedule(const std::vector<std::pair<int, int>>& user_received_pairs, int n_points,
                         int n_t, Rng& rng) {
    if (user_received_pairs.empty()) {
        throw config_error("schedule: no users fed back");
    }
    if (n_t < 1 || n_points % n_t != 0) {
        throw config_error("schedule: n_points must be a multiple of n_t");
    }
    std::map<int, std::vector<int>> users_by_cw;
    for (const auto& [user, cw] : user_received_pairs) {
        if (cw < 0 || cw >= n_points) {
            throw config_error("schedule: received index " + std::to_string(cw) + " out of range");
        }
        users_by_cw[cw].push_back(user);
    }
    const int n_sets = n_points / n_t;
    std::vector<int> cover(n_sets, 0);
    for (int m = 0; m < n_sets; ++m) {
        for (int c = m * n_t; c < (m + 1) * n_t; ++c) {
            if (users_by_cw.count(c)) {
                ++cover[m];
            }
        }
    }
    const int best = *std::max_element(cover.begin(), cover.end());
    std::vector<int> candidates;
    for (int m = 0; m < n_sets; ++m) {
        if (cover[m] == best) {
            candidates.push_back(m);
        }
    }
    const int m = candidates[rng.uniform_below(candidates.size())];

    ScheduleOutcome out;
    out.chosen_set = m;
    for (int c = m * n_t; c < (m + 1) * n_t; ++c) {
        auto it = users_by_cw.find(c);
        if (it == users_by_cw.end()) {
            continue;
        }
        const std::vector<int>& users = it->second;
        const int user = users[rng.uniform_below(users.size())];
        out.assignments.push_back({user, c});
    }
    out.unfilled_slots = n_t - static_cast<int>(out.assignments.size());
    return out;
}

double mutual_info_exact(const cvec& h, const cvec& w, const std::vector<cvec>& interferers,
                         double p_lin, int n_t) {
    const double scale = p_lin / n_t;
    const double sig = scale * cdot_abs2(h, w);
    double intf = 0.0;
    for (const cvec& wj : interferers) {
        intf += scale * cdot_abs2(h, wj);
    }
    return std::log2(1.0 + sig / (1.0 + intf));
}

double mutual_info_highsnr(const cvec& shape, const cvec& w, const std::vector<cvec>& interferers) {
    const size_t dim = shape.size();
    std::vector<const cvec*> basis;
    basis.push_back(&w);
    for (const cvec& wj : interferers) {
        basis.push_back(&wj);
    }
    if (basis.size() != dim) {
        throw config_error("mutual_info_highsnr: precoders do not form a full basis (" +
                           std::to_string(basis.size()) + " vectors in dimension " +
                           std::to_string(dim) + ")");
    }
    for (size_t a = 0; a < basis.size(); ++a) {
        if (std::abs(cnorm2(*basis[a]) - 1.0) > 1e-9) {
            throw config_error("mutual_info_highsnr: precoder " + std::to_string(a) +
                               " is not unit norm");
        }
        for (size_t b = a + 1; b < basis.size(); ++b) {
            if (cdot_abs2(*basis[a], *basis[b]) > 1e-18) {
                throw config_error("mutual_info_highsnr: precoders " + std::to_string(a) + " and " +
                                   std::to_string(b) + " are not orthogonal");
            }
        }
    }
    const double cos2 = cdot_abs2(shape, w);
    double rest = 0.0;
    for (const cvec& wj : interferers) {
        rest += cdot_abs2(shape, wj);
    }
    if (rest <= 0.0) {
        return kMiSentinel;
    }
    return std::min(std::log2(1.0 + cos2 / rest), kMiSentinel);
}

std::vector<double> noise_caps(const RateTable& table, const Matrix& sin_dist, double p_lin,
                               int n_t, double g_th, double eps, double delta) {
    const double gain_quantile = gamma_trunc_quantile(n_t, g_th, eps);
    const double q = (p_lin / n_t) * gain_quantile;
    std::vector<double> caps(table.rows.size());
    for (size_t received = 0; received < table.rows.size(); ++received) {
        const RateRow& row = table.rows[received];
        const double s =
            std::min(1.0, sin_dist.at(static_cast<int>(received), row.i_star) + std::sqrt(delta));
        const double s2 = s * s;
        caps[received] = std::log2(1.0 + q * (1.0 - s2) / (1.0 + q * s2));
    }
    return caps;
}

bool noise_limited_regime(int c_fb, int n_t, double p_lin, int n_n) {
    return c_fb > (n_t - 1) * std::log2(p_lin) + std::log2(static_cast<double>(n_n));
}

}  // namespace sdma
