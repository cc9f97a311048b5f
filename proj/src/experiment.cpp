#include "ttr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ttr {

namespace {

constexpr std::uint64_t kNoiseStream = 0;
constexpr std::uint64_t kTargetStream = 1;

PreferenceModel target_model(const ExperimentConfig& config, const LinearOrder& truth) {
    switch (config.target.kind) {
        case TargetSpec::Kind::FixedTruth:
            return PreferenceModel::uniform({truth});
        case TargetSpec::Kind::MallowsAroundTruth:
            return PreferenceModel::mallows(MallowsParams(truth, config.target.phi));
        case TargetSpec::Kind::ExplicitModel:
            return *config.target.model;
    }
    throw InvalidInputError("run_experiment: corrupt target kind");
}

// Closed-form optimum for the configured target distribution; only defined
// for the model families covered by the exact solvers.
LinearOrder exact_recommendation(const ExperimentConfig& config, const LinearOrder& truth) {
    switch (config.target.kind) {
        case TargetSpec::Kind::FixedTruth:
        case TargetSpec::Kind::MallowsAroundTruth:
            return truth;
        case TargetSpec::Kind::ExplicitModel: {
            const PreferenceModel& model = *config.target.model;
            switch (model.kind()) {
                case ModelKind::PlackettLuceMixture:
                    if (model.num_components() == 1)
                        return exact_optimal_order(model.pl_component(0));
                    break;
                case ModelKind::MallowsMixture:
                    if (model.num_components() == 1)
                        return exact_optimal_order(model.mallows_component(0));
                    break;
                case ModelKind::UniformProfile:
                    return exact_optimal_order(model.profile());
            }
            throw InvalidInputError(
                "run_experiment: strategy 'exact' needs a single-component or "
                "two-order-profile target model");
        }
    }
    throw InvalidInputError("run_experiment: corrupt target kind");
}

}  // namespace

void validate(const ExperimentConfig& config) {
    if (config.m < 1) throw InvalidInputError("config: field 'm' must be >= 1");
    if (config.users < 1) throw InvalidInputError("config: field 'users' must be >= 1");
    if (config.polls < 1) throw InvalidInputError("config: field 'polls' must be >= 1");
    if (config.brute_force_cap < 1)
        throw InvalidInputError("config: field 'brute_force_cap' must be >= 1");
    if (config.mc_samples < 1)
        throw InvalidInputError("config: field 'mc_samples' must be >= 1");
    if (!(config.noise_std > 0.0) || !std::isfinite(config.noise_std))
        throw InvalidInputError("config: field 'noise_std' must be finite and > 0");

    if (config.user_weights.kind() == WeightFunction::Kind::Table &&
        config.user_weights.table_weights().size() != config.m - 1)
        throw InvalidInputError("config: field 'weights' table must have m-1 entries");

    switch (config.target.kind) {
        case TargetSpec::Kind::FixedTruth:
            break;
        case TargetSpec::Kind::MallowsAroundTruth:
            if (!(config.target.phi >= 0.0) || !(config.target.phi <= 1.0))
                throw InvalidInputError("config: field 'target.phi' must lie in [0, 1]");
            break;
        case TargetSpec::Kind::ExplicitModel:
            if (!config.target.model.has_value())
                throw InvalidInputError("config: field 'target.model' is required");
            if (config.target.model->size() != config.m)
                throw InvalidInputError("config: field 'target.model' has size " +
                                        std::to_string(config.target.model->size()) +
                                        ", expected m = " + std::to_string(config.m));
            break;
    }

    if (config.strategy == RecommendationStrategy::Exact &&
        config.target.kind == TargetSpec::Kind::ExplicitModel) {
        const PreferenceModel& model = *config.target.model;
        const bool closed_form =
            (model.kind() == ModelKind::UniformProfile && model.profile().size() <= 2) ||
            (model.kind() != ModelKind::UniformProfile && model.num_components() == 1);
        if (!closed_form)
            throw InvalidInputError(
                "config: field 'strategy' = exact requires a single-component or "
                "two-order-profile target model");
    }
}

LinearOrder gaussian_noisy_order(const LinearOrder& ground_truth, double noise_std,
                                 RandomSource& rng) {
    if (!(noise_std > 0.0) || !std::isfinite(noise_std))
        throw InvalidInputError("gaussian_noisy_order: noise_std must be finite and > 0");
    const int m = ground_truth.size();
    std::vector<double> score(m);
    for (Alternative a = 0; a < m; ++a)
        score[a] = ground_truth.rank_of(a) + rng.normal(0.0, noise_std);

    std::vector<Alternative> items(m);
    std::iota(items.begin(), items.end(), 0);
    std::sort(items.begin(), items.end(), [&score](Alternative a, Alternative b) {
        if (score[a] != score[b]) return score[a] < score[b];
        return a < b;
    });
    return LinearOrder(std::move(items));
}

LinearOrder adaptive_borda_order(const std::vector<LinearOrder>& history,
                                 const LinearOrder& ground_truth, double noise_std,
                                 RandomSource& rng) {
    if (history.empty()) return gaussian_noisy_order(ground_truth, noise_std, rng);
    return borda_order(pairwise_marginals(PreferenceModel::uniform(history)));
}

std::vector<PollRecord> run_experiment(const ExperimentConfig& config) {
    validate(config);

    RandomSource truth_rng(config.ground_truth_seed);
    const LinearOrder truth = random_order(config.m, truth_rng);
    const PreferenceModel targets = target_model(config, truth);
    const SortStrategy insertion = SortStrategy::all_insertion(std::max(1, config.m - 1));

    // Strategy-static recommendations are shared by every user and poll.
    std::optional<LinearOrder> static_recommendation;
    if (config.strategy == RecommendationStrategy::Exact) {
        static_recommendation = exact_recommendation(config, truth);
    } else if (config.strategy == RecommendationStrategy::BruteForce) {
        static_recommendation =
            brute_force_optimum(pairwise_marginals(targets), config.brute_force_cap).order;
    }

    std::vector<PollRecord> records;
    records.reserve(static_cast<std::size_t>(config.users) * config.polls);
    for (int user = 0; user < config.users; ++user) {
        const std::uint64_t user_seed = derive_seed(config.seed, static_cast<std::uint64_t>(user));
        // Separate substreams so targets match across strategies per seed.
        RandomSource noise_rng(derive_seed(user_seed, kNoiseStream));
        RandomSource target_rng(derive_seed(user_seed, kTargetStream));

        std::optional<LinearOrder> frozen_noise;
        std::vector<LinearOrder> history;
        history.reserve(config.polls);

        for (int poll = 1; poll <= config.polls; ++poll) {
            LinearOrder recommended = [&]() -> LinearOrder {
                switch (config.strategy) {
                    case RecommendationStrategy::Random:
                        if (config.redraw_noise_each_poll)
                            return gaussian_noisy_order(truth, config.noise_std, noise_rng);
                        if (!frozen_noise)
                            frozen_noise =
                                gaussian_noisy_order(truth, config.noise_std, noise_rng);
                        return *frozen_noise;
                    case RecommendationStrategy::AdaptiveBorda:
                        return adaptive_borda_order(history, truth, config.noise_std,
                                                    noise_rng);
                    case RecommendationStrategy::Exact:
                    case RecommendationStrategy::BruteForce:
                        return *static_recommendation;
                }
                throw InvalidInputError("run_experiment: corrupt strategy");
            }();

            LinearOrder target = sample(targets, target_rng);
            const SortResult sorted = run_sort(recommended, target, insertion);
            const double time = time_of(sorted.counts, config.user_weights);
            const long long dkt = kendall_tau(recommended, target);
            const long long moves = num_moves(sorted.counts);
            history.push_back(target);
            records.push_back(PollRecord{user, poll, std::move(recommended),
                                         std::move(target), time, dkt, moves});
        }
    }
    return records;
}

std::vector<double> per_poll_average_time(const std::vector<PollRecord>& records, int polls) {
    if (polls < 1) throw InvalidInputError("per_poll_average_time: polls must be >= 1");
    std::vector<double> sums(polls, 0.0);
    std::vector<long long> counts(polls, 0);
    for (const PollRecord& record : records) {
        if (record.poll < 1 || record.poll > polls)
            throw InvalidInputError("per_poll_average_time: poll index out of range");
        sums[record.poll - 1] += record.time;
        ++counts[record.poll - 1];
    }
    std::vector<double> averages(polls, 0.0);
    for (int i = 0; i < polls; ++i) {
        if (counts[i] == 0)
            throw InvalidInputError("per_poll_average_time: no records for poll " +
                                    std::to_string(i + 1));
        averages[i] = sums[i] / static_cast<double>(counts[i]);
    }
    return averages;
}

long long kemeny_cost(const LinearOrder& order, const std::vector<LinearOrder>& profile) {
    if (profile.empty()) throw InvalidInputError("kemeny_cost: empty profile");
    long long total = 0;
    for (const LinearOrder& voter : profile) total += kendall_tau(order, voter);
    return total;
}

PreferenceModel kemeny_hard_instance(const std::vector<LinearOrder>& profile) {
    if (profile.empty()) throw InvalidInputError("kemeny_hard_instance: empty profile");
    const int m = profile.front().size();
    const double log_m = std::log(static_cast<double>(m));
    const int n = static_cast<int>(profile.size());

    std::vector<PlackettLuceParams> components;
    components.reserve(n);
    for (const LinearOrder& voter : profile) {
        if (voter.size() != m)
            throw InvalidInputError("kemeny_hard_instance: profile orders have mixed sizes");
        Eigen::VectorXd log_theta(m);
        for (Alternative a = 0; a < m; ++a)
            log_theta[a] = 4.0 * (m - voter.rank_of(a)) * log_m;
        components.push_back(PlackettLuceParams::from_log_theta(log_theta));
    }
    const Eigen::VectorXd gamma =
        Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    return PreferenceModel::plackett_luce_mixture(gamma, std::move(components));
}

}  // namespace ttr
