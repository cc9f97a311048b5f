#include "ttr/recommend.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ttr {

TournamentInstance::TournamentInstance(Eigen::MatrixXd weights, double b)
    : weights_(std::move(weights)), b_(b) {
    constexpr double kTol = 1e-12;
    if (weights_.rows() == 0 || weights_.rows() != weights_.cols())
        throw InvalidInputError("TournamentInstance: weight matrix must be square");
    if (!(b > 0.0) || !(b <= 1.0))
        throw InvalidInputError("TournamentInstance: b must lie in (0, 1]");
    const int m = static_cast<int>(weights_.rows());
    for (int i = 0; i < m; ++i) {
        if (weights_(i, i) != 0.0)
            throw InvalidInputError("TournamentInstance: diagonal must be zero");
        for (int j = i + 1; j < m; ++j) {
            if (weights_(i, j) < 0.0 || weights_(j, i) < 0.0)
                throw InvalidInputError("TournamentInstance: weights must be >= 0");
            if (std::abs(weights_(i, j) + weights_(j, i) - b) > kTol)
                throw InvalidInputError("TournamentInstance: weight pairs must sum to b");
        }
    }
}

double expected_time_linear(const LinearOrder& s, const PairwiseMarginalMatrix& M) {
    const int m = M.size();
    if (s.size() != m)
        throw InvalidInputError("expected_time_linear: order and matrix sizes differ");
    double total = 0.0;
    for (int p = 0; p < m; ++p) {
        for (int q = p + 1; q < m; ++q) {
            total += M.at(s.at(q), s.at(p));
        }
    }
    return total;
}

MonteCarloEstimate estimate_expected_time(const LinearOrder& s, const PreferenceModel& model,
                                          const WeightFunction& w, int samples,
                                          RandomSource& rng) {
    if (samples < 1)
        throw InvalidInputError("estimate_expected_time: need at least one sample");
    if (s.size() != model.size())
        throw InvalidInputError("estimate_expected_time: order and model sizes differ");
    const SortStrategy strategy = SortStrategy::all_insertion(std::max(1, s.size() - 1));
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < samples; ++i) {
        const LinearOrder target = sample(model, rng);
        const double t = time_of(run_sort(s, target, strategy).counts, w);
        sum += t;
        sum_sq += t * t;
    }
    const double mean = sum / samples;
    double std_error = 0.0;
    if (samples > 1) {
        const double variance =
            std::max(0.0, (sum_sq - samples * mean * mean) / (samples - 1));
        std_error = std::sqrt(variance / samples);
    }
    return MonteCarloEstimate{mean, std_error};
}

LinearOrder exact_optimal_order(const PlackettLuceParams& params) {
    // Sorting on log-theta avoids spurious ties from underflowed thetas.
    const Eigen::VectorXd& lt = params.log_theta();
    std::vector<Alternative> items(params.size());
    std::iota(items.begin(), items.end(), 0);
    std::sort(items.begin(), items.end(), [&lt](Alternative a, Alternative b) {
        if (lt[a] != lt[b]) return lt[a] > lt[b];
        return a < b;
    });
    return LinearOrder(std::move(items));
}

LinearOrder exact_optimal_order(const MallowsParams& params) { return params.reference(); }

LinearOrder exact_optimal_order(const std::vector<LinearOrder>& profile) {
    if (profile.empty()) throw InvalidInputError("exact_optimal_order: empty profile");
    if (profile.size() > 2)
        throw UnsupportedSizeError(
            "exact_optimal_order: closed form covers profiles of 1 or 2 orders, got " +
            std::to_string(profile.size()));
    if (profile.size() == 2 && profile[1].size() != profile[0].size())
        throw InvalidInputError("exact_optimal_order: profile orders have mixed sizes");
    return profile.front();
}

BruteForceResult brute_force_optimum(const PairwiseMarginalMatrix& M, int max_m) {
    const int m = M.size();
    if (max_m < 1) throw InvalidInputError("brute_force_optimum: cap must be >= 1");
    if (m > max_m)
        throw ResourceLimitError("brute_force_optimum: m = " + std::to_string(m) +
                                 " exceeds cap " + std::to_string(max_m));
    std::vector<Alternative> items(m);
    std::iota(items.begin(), items.end(), 0);

    std::vector<Alternative> best = items;
    double best_objective = std::numeric_limits<double>::infinity();
    do {
        double objective = 0.0;
        for (int p = 0; p < m; ++p)
            for (int q = p + 1; q < m; ++q) objective += M.at(items[q], items[p]);
        // Strict improvement keeps the lexicographically first minimizer,
        // since next_permutation enumerates in lexicographic sequence.
        if (objective < best_objective) {
            best_objective = objective;
            best = items;
        }
    } while (std::next_permutation(items.begin(), items.end()));
    return BruteForceResult{LinearOrder(std::move(best)), best_objective};
}

LinearOrder borda_order(const PairwiseMarginalMatrix& M) {
    const int m = M.size();
    const Eigen::VectorXd indegree = M.matrix().colwise().sum();
    std::vector<Alternative> items(m);
    std::iota(items.begin(), items.end(), 0);
    std::sort(items.begin(), items.end(), [&indegree](Alternative a, Alternative b) {
        if (indegree[a] != indegree[b]) return indegree[a] < indegree[b];
        return a < b;
    });
    return LinearOrder(std::move(items));
}

LinearOrder local_search_refine(const LinearOrder& start, const PairwiseMarginalMatrix& M) {
    constexpr double kImprovement = 1e-12;
    const int m = M.size();
    if (start.size() != m)
        throw InvalidInputError("local_search_refine: order and matrix sizes differ");

    std::vector<Alternative> items = start.items();
    // An improving swap flips exactly one pair, and flipping it back would
    // strictly worsen the objective, so each pair flips at most once.
    const long long max_swaps = static_cast<long long>(m) * (m - 1) / 2;
    for (long long round = 0; round <= max_swaps; ++round) {
        int best_pos = -1;
        double best_delta = -kImprovement;
        for (int p = 0; p + 1 < m; ++p) {
            const Alternative i = items[p];
            const Alternative j = items[p + 1];
            const double delta = M.at(i, j) - M.at(j, i);
            if (delta < best_delta) {
                best_delta = delta;
                best_pos = p;
            }
        }
        if (best_pos < 0) return LinearOrder(std::move(items));
        std::swap(items[best_pos], items[best_pos + 1]);
    }
    throw Error("local_search_refine: exceeded the pair-flip bound");
}

TournamentInstance to_tournament(const PairwiseMarginalMatrix& M) {
    return TournamentInstance(M.matrix(), 1.0);
}

double backward_weight(const TournamentInstance& instance, const LinearOrder& s) {
    const int m = instance.size();
    if (s.size() != m)
        throw InvalidInputError("backward_weight: order and instance sizes differ");
    double total = 0.0;
    for (int p = 0; p < m; ++p)
        for (int q = p + 1; q < m; ++q) total += instance.weights()(s.at(q), s.at(p));
    return total;
}

double closeness_to_linear(const WeightFunction& w, int m) {
    if (m < 2) return 1.0;
    double over = 0.0;
    double under = 0.0;
    for (int ell = 1; ell <= m - 1; ++ell) {
        const double value = w.at(ell);
        if (!(value > 0.0) || !std::isfinite(value))
            throw InvalidInputError(
                "closeness_to_linear: weights must be strictly positive on 1..m-1");
        over = std::max(over, value / ell);
        under = std::max(under, ell / value);
    }
    return over * under;
}

ClosenessBounds closeness_bounds(const WeightFunction& w, const WeightFunction& reference,
                                 int m) {
    if (m < 2)
        throw InvalidInputError("closeness_bounds: need m >= 2 for a nonempty range");
    double alpha = 1.0;
    double beta = 1.0;
    for (int ell = 1; ell <= m - 1; ++ell) {
        const double wv = w.at(ell);
        const double rv = reference.at(ell);
        if (!(wv > 0.0) || !(rv > 0.0))
            throw InvalidInputError("closeness_bounds: weight tables must be strictly "
                                    "positive on 1..m-1");
        alpha = std::max(alpha, wv / rv);
        beta = std::max(beta, rv / wv);
    }
    return ClosenessBounds{alpha, beta};
}

WeightedRecommendation recommend_for_weights(const PreferenceModel& model,
                                             const WeightFunction& w, int max_m) {
    const double closeness = closeness_to_linear(w, model.size());
    const PairwiseMarginalMatrix M = pairwise_marginals(model);
    if (model.size() <= max_m) {
        BruteForceResult result = brute_force_optimum(M, max_m);
        return WeightedRecommendation{std::move(result.order), closeness};
    }
    const LinearOrder refined = local_search_refine(borda_order(M), M);
    return WeightedRecommendation{refined, 5.0 * closeness};
}

bool exists_recommendation_within(const PairwiseMarginalMatrix& M, double delta,
                                  int max_m) {
    if (!std::isfinite(delta))
        throw InvalidInputError("exists_recommendation_within: delta must be finite");
    return brute_force_optimum(M, max_m).objective <= delta;
}

}  // namespace ttr
