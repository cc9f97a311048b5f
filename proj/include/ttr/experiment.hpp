#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ttr/models.hpp"
#include "ttr/recommend.hpp"
#include "ttr/sorting.hpp"

namespace ttr {

enum class RecommendationStrategy { Random, AdaptiveBorda, Exact, BruteForce };

// Where each user's target order comes from: the shared ground truth itself,
// a Mallows draw centered on it, or an explicit model.
struct TargetSpec {
    enum class Kind { FixedTruth, MallowsAroundTruth, ExplicitModel };

    Kind kind = Kind::FixedTruth;
    double phi = 0.5;                       // MallowsAroundTruth only
    std::optional<PreferenceModel> model;   // ExplicitModel only
};

struct ExperimentConfig {
    int m = 0;
    int users = 0;
    int polls = 0;
    std::uint64_t seed = 0;
    std::uint64_t ground_truth_seed = 0;
    RecommendationStrategy strategy = RecommendationStrategy::Random;
    double noise_std = 1.0;
    // When false, the random strategy draws one noisy order per user and
    // repeats it every poll instead of redrawing.
    bool redraw_noise_each_poll = true;
    WeightFunction user_weights = WeightFunction::linear();
    TargetSpec target;
    int brute_force_cap = kDefaultBruteForceCap;
    // Monte Carlo budget for auxiliary expected-time estimates.
    int mc_samples = 1000;
};

// Throws InvalidInputError naming the offending field.
void validate(const ExperimentConfig& config);

struct PollRecord {
    int user;            // 0-based
    int poll;            // 1-based
    LinearOrder recommended;
    LinearOrder target;
    double time;         // time_of(run_sort(recommended, target, INS), user_weights)
    long long dkt;       // kendall_tau(recommended, target)
    long long moves;     // drag-and-drop operations in the simulated sort
};

// Rank scores perturbed by independent N(0, std^2) noise, re-sorted
// ascending (ties, a measure-zero event, break by index).
LinearOrder gaussian_noisy_order(const LinearOrder& ground_truth, double noise_std,
                                 RandomSource& rng);

// Borda ranking aggregated from previously observed targets. With no history
// it falls back to a noisy draw around the ground truth, mirroring a first
// poll with nothing learned yet.
LinearOrder adaptive_borda_order(const std::vector<LinearOrder>& history,
                                 const LinearOrder& ground_truth, double noise_std,
                                 RandomSource& rng);

// Simulates every (user, poll) cell: recommend per the configured strategy,
// draw the user's target, sort with the all-insertion strategy, and record
// the outcome. Per-user substreams are derived from the seed, so results are
// reproducible and targets are identical across strategies under one seed.
// Records come out sorted by (user, poll).
std::vector<PollRecord> run_experiment(const ExperimentConfig& config);

// Mean simulated time of each poll index (1..polls) across users.
std::vector<double> per_poll_average_time(const std::vector<PollRecord>& records, int polls);

// Total Kendall tau distance from the order to every profile member.
long long kemeny_cost(const LinearOrder& order, const std::vector<LinearOrder>& profile);

// Mixture of one Plackett-Luce component per profile member, built in log
// space with log theta = 4 * (m - rank) * log m. Expected linear time under
// this model tracks the Kemeny cost so closely that ranking by one solves
// the other; the generator behind the hardness reduction.
PreferenceModel kemeny_hard_instance(const std::vector<LinearOrder>& profile);

}  // namespace ttr
