#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ttr/models.hpp"
#include "ttr/sorting.hpp"

namespace ttr {

inline constexpr int kDefaultBruteForceCap = 9;

// Weighted tournament: weights(i,j) and weights(j,i) pair up to the constant
// b for every i != j. Minimizing total backward weight over vertex orderings
// is the weighted feedback-arc-set problem this library reduces to.
class TournamentInstance {
public:
    TournamentInstance(Eigen::MatrixXd weights, double b);

    int size() const { return static_cast<int>(weights_.rows()); }
    double b() const { return b_; }
    const Eigen::MatrixXd& weights() const { return weights_; }

private:
    Eigen::MatrixXd weights_;
    double b_;
};

// Multiplicative envelope between two weight functions:
// reference(l)/beta <= w(l) <= alpha * reference(l) for all l in range.
struct ClosenessBounds {
    double alpha;
    double beta;
};

struct BruteForceResult {
    LinearOrder order;
    double objective;
};

struct MonteCarloEstimate {
    double estimate;
    double std_error;
};

struct WeightedRecommendation {
    LinearOrder order;
    double guarantee;
};

// Expected linear-weight sorting time of recommending s: for every pair
// placed i-above-j, the chance M(j,i) that the user disagrees. Equals
// E[kendall_tau(s, target)].
double expected_time_linear(const LinearOrder& s, const PairwiseMarginalMatrix& M);

// Monte Carlo estimate of the expected sorting time under an arbitrary
// weight function; simulates an insertion-only sort against sampled targets.
// std_error is the sample standard error (0 when n = 1).
MonteCarloEstimate estimate_expected_time(const LinearOrder& s, const PreferenceModel& model,
                                          const WeightFunction& w, int samples,
                                          RandomSource& rng);

// Minimizer of the expected linear time for a single Plackett-Luce
// component: utilities descending, ties broken by ascending index.
LinearOrder exact_optimal_order(const PlackettLuceParams& params);

// Minimizer for a single Mallows component: the reference itself.
LinearOrder exact_optimal_order(const MallowsParams& params);

// Minimizer for a uniform profile of one or two orders; the first member is
// returned (for two orders both are optimal). Larger profiles are refused.
LinearOrder exact_optimal_order(const std::vector<LinearOrder>& profile);

// Exhaustive minimizer of expected_time_linear; ties resolved in favor of
// the lexicographically smallest order. Refuses m beyond the cap.
BruteForceResult brute_force_optimum(const PairwiseMarginalMatrix& M,
                                     int max_m = kDefaultBruteForceCap);

// Sorts alternatives by ascending weighted indegree sum_j M(j,i), ties by
// ascending index. The objective is within a factor 5 of optimal.
LinearOrder borda_order(const PairwiseMarginalMatrix& M);

// Applies the best strictly-improving adjacent transposition until none
// remains. Never increases the objective; each unordered pair flips at most
// once, so at most m(m-1)/2 swaps occur.
LinearOrder local_search_refine(const LinearOrder& start, const PairwiseMarginalMatrix& M);

// The marginal matrix viewed as a weighted tournament with b = 1; backward
// weight under any order equals expected_time_linear exactly.
TournamentInstance to_tournament(const PairwiseMarginalMatrix& M);

// Total weight of pairs ordered against their edge direction: sum of
// weights(j,i) over pairs with i placed above j.
double backward_weight(const TournamentInstance& instance, const LinearOrder& s);

// Minimal alpha = max_l w(l)/reference(l) and beta = max_l reference(l)/w(l)
// over l in 1..m-1, each floored at 1. Both functions must be strictly
// positive on that range.
ClosenessBounds closeness_bounds(const WeightFunction& w, const WeightFunction& reference,
                                 int m);

// Best alpha*beta over all scaled linear references:
// (max_l w(l)/l) * (max_l l/w(l)) for l in 1..m-1. Always >= 1; equals 1
// exactly when w is a positive multiple of the linear weights (or m < 2).
double closeness_to_linear(const WeightFunction& w, int m);

// Recommendation for an arbitrary positive weight function: solves the
// linear-weight problem (brute force up to the cap, otherwise Borda plus
// local search) and certifies the result within a multiplicative factor of
// the true w-optimum. The factor is scale-free:
//   (max_l w(l)/l) * (max_l l/w(l)),  times 5 on the approximate path.
WeightedRecommendation recommend_for_weights(const PreferenceModel& model,
                                             const WeightFunction& w,
                                             int max_m = kDefaultBruteForceCap);

// Decision form: is there an order whose expected linear time is at most
// delta? Answered through the exhaustive minimizer.
bool exists_recommendation_within(const PairwiseMarginalMatrix& M, double delta,
                                  int max_m = kDefaultBruteForceCap);

}  // namespace ttr
