#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridflow/matrix.hpp"
#include "gridflow/types.hpp"

namespace gridflow {

// Per-period multipliers f(t), t = 0..T-1.
struct Profile {
    std::vector<double> values;

    double at(std::size_t t) const { return t < values.size() ? values[t] : 1.0; }
};

struct RenewableUnit {
    int bus = 0;
    double p_max = 0.0;   // p.u.
};

// Row-stochastic wind-state model: state s at period t produces availability
// state_values(s, t) in [0, 1].
struct TransitionMatrix {
    std::vector<std::string> states;
    RealMatrix probabilities;   // n_states x n_states
    RealMatrix state_values;    // n_states x horizon (or x 1, constant over time)

    int n_states() const { return static_cast<int>(states.size()); }

    double rho(int state, int period) const {
        int col = state_values.cols() == 1 ? 0 : period;
        return state_values(state, col);
    }

    void check() const {
        int n = n_states();
        if (n == 0) throw std::invalid_argument("transition matrix has no states");
        if (probabilities.rows() != n || probabilities.cols() != n)
            throw std::invalid_argument("transition matrix dimension mismatch");
        for (int i = 0; i < n; ++i) {
            double sum = 0.0;
            for (int j = 0; j < n; ++j) {
                double p = probabilities(i, j);
                if (p < 0.0 || p > 1.0)
                    throw std::invalid_argument("transition probability outside [0, 1]");
                sum += p;
            }
            if (std::abs(sum - 1.0) > 1e-12)
                throw std::invalid_argument("transition matrix row " + std::to_string(i) +
                                            " does not sum to 1");
        }
        for (int i = 0; i < state_values.rows(); ++i)
            for (int j = 0; j < state_values.cols(); ++j)
                if (state_values(i, j) < 0.0 || state_values(i, j) > 1.0)
                    throw std::invalid_argument("availability outside [0, 1]");
    }
};

struct Scenario {
    std::vector<double> rho;    // availability per period
    std::vector<int> states;    // underlying state path (empty for hand-built sets)
    double probability = 1.0;
};

struct ScenarioSet {
    std::vector<Scenario> scenarios;

    std::size_t horizon() const { return scenarios.empty() ? 0 : scenarios[0].rho.size(); }

    void check() const {
        if (scenarios.empty()) throw std::invalid_argument("empty scenario set");
        double total = 0.0;
        for (const Scenario& s : scenarios) {
            if (s.rho.size() != horizon())
                throw std::invalid_argument("scenario paths have mixed horizons");
            total += s.probability;
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw std::invalid_argument("scenario probabilities do not sum to 1");
    }

    static ScenarioSet deterministic(std::vector<double> rho) {
        ScenarioSet set;
        set.scenarios.push_back({std::move(rho), {}, 1.0});
        return set;
    }
};

namespace scenario_detail {

inline int draw(const std::vector<double>& dist, double u) {
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        acc += dist[i];
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(dist.size()) - 1;
}

inline void enumerate_paths(const TransitionMatrix& tm, const std::vector<double>& initial,
                            int horizon, std::vector<int>& path, double prob,
                            ScenarioSet& out) {
    int t = static_cast<int>(path.size());
    if (t == horizon) {
        Scenario s;
        s.states = path;
        s.probability = prob;
        s.rho.reserve(horizon);
        for (int k = 0; k < horizon; ++k) s.rho.push_back(tm.rho(path[k], k));
        out.scenarios.push_back(std::move(s));
        return;
    }
    for (int next = 0; next < tm.n_states(); ++next) {
        double p = t == 0 ? initial[next] : tm.probabilities(path.back(), next);
        if (p == 0.0) continue;
        path.push_back(next);
        enumerate_paths(tm, initial, horizon, path, prob * p, out);
        path.pop_back();
    }
}

} // namespace scenario_detail

// Markov sampling of availability paths. count = 0 requests exhaustive
// enumeration with exact path-product probabilities; sampled paths carry the
// empirical 1/count weight. Each scenario index draws from its own seeded
// substream, so results are independent of evaluation order.
inline ScenarioSet sample_scenarios(const TransitionMatrix& tm, int count, int horizon,
                                    std::uint64_t seed,
                                    const std::vector<double>& initial_distribution) {
    tm.check();
    if (horizon <= 0) throw std::invalid_argument("horizon must be at least 1");
    if (static_cast<int>(initial_distribution.size()) != tm.n_states())
        throw std::invalid_argument("initial distribution size mismatch");
    double init_sum = 0.0;
    for (double p : initial_distribution) init_sum += p;
    if (std::abs(init_sum - 1.0) > 1e-12)
        throw std::invalid_argument("initial distribution does not sum to 1");

    ScenarioSet set;
    if (count == 0) {
        std::vector<int> path;
        scenario_detail::enumerate_paths(tm, initial_distribution, horizon, path, 1.0, set);
        return set;
    }

    for (int s = 0; s < count; ++s) {
        std::seed_seq sseq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                           static_cast<std::uint32_t>(s)};
        std::mt19937_64 rng(sseq);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        Scenario sc;
        sc.probability = 1.0 / count;
        int state = scenario_detail::draw(initial_distribution, uni(rng));
        for (int t = 0; t < horizon; ++t) {
            if (t > 0) {
                std::vector<double> row(tm.n_states());
                for (int j = 0; j < tm.n_states(); ++j) row[j] = tm.probabilities(state, j);
                state = scenario_detail::draw(row, uni(rng));
            }
            sc.states.push_back(state);
            sc.rho.push_back(tm.rho(state, t));
        }
        set.scenarios.push_back(std::move(sc));
    }
    return set;
}

inline ScenarioSet sample_scenarios(const TransitionMatrix& tm, int count, int horizon,
                                    std::uint64_t seed, int initial_state) {
    std::vector<double> init(tm.n_states(), 0.0);
    init.at(initial_state) = 1.0;
    return sample_scenarios(tm, count, horizon, seed, init);
}

} // namespace gridflow
