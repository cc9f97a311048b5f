#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ttr/linear_order.hpp"
#include "ttr/random.hpp"

namespace ttr {

// Plackett-Luce utilities. Stored normalized so the thetas sum to 1; a
// parallel log representation is the authoritative one, since normalized
// thetas can underflow when the raw magnitudes span hundreds of orders.
class PlackettLuceParams {
public:
    explicit PlackettLuceParams(const Eigen::VectorXd& theta);
    static PlackettLuceParams from_log_theta(const Eigen::VectorXd& log_theta);

    int size() const { return static_cast<int>(log_theta_.size()); }

    // Normalized utilities; entries may underflow to 0 for extreme spans.
    const Eigen::VectorXd& theta() const { return theta_; }

    // Normalized in log space (logsumexp = 0); never degrades.
    const Eigen::VectorXd& log_theta() const { return log_theta_; }

private:
    PlackettLuceParams() = default;

    Eigen::VectorXd theta_;
    Eigen::VectorXd log_theta_;
};

// Mallows distribution: probability of an order decays as phi^distance from
// the reference. phi = 1 is uniform; phi = 0 is admitted as the point mass
// on the reference.
class MallowsParams {
public:
    MallowsParams(LinearOrder reference, double phi);

    int size() const { return reference_.size(); }
    const LinearOrder& reference() const { return reference_; }
    double phi() const { return phi_; }

private:
    LinearOrder reference_;
    double phi_;
};

enum class ModelKind { PlackettLuceMixture, MallowsMixture, UniformProfile };

// A distribution over orders: a mixture of Plackett-Luce components, a
// mixture of Mallows components, or the uniform distribution over an
// explicit profile (duplicates raise an order's probability accordingly).
class PreferenceModel {
public:
    static PreferenceModel plackett_luce(PlackettLuceParams component);
    static PreferenceModel plackett_luce_mixture(const Eigen::VectorXd& gamma,
                                                 std::vector<PlackettLuceParams> components);
    static PreferenceModel mallows(MallowsParams component);
    static PreferenceModel mallows_mixture(const Eigen::VectorXd& gamma,
                                           std::vector<MallowsParams> components);
    static PreferenceModel uniform(std::vector<LinearOrder> profile);

    ModelKind kind() const { return kind_; }
    int size() const { return m_; }

    // Mixture views; valid only for the matching kind.
    int num_components() const;
    const Eigen::VectorXd& weights() const;
    const PlackettLuceParams& pl_component(int index) const;
    const MallowsParams& mallows_component(int index) const;

    // Uniform view.
    const std::vector<LinearOrder>& profile() const;

private:
    PreferenceModel() = default;

    ModelKind kind_ = ModelKind::UniformProfile;
    int m_ = 0;
    Eigen::VectorXd gamma_;
    std::vector<PlackettLuceParams> pl_components_;
    std::vector<MallowsParams> mallows_components_;
    std::vector<LinearOrder> profile_;
};

// p(i,j) = probability that alternative i beats j. Complements are stored
// explicitly (p(j,i) computed as 1 - p(i,j) on construction), diagonal is 0.
class PairwiseMarginalMatrix {
public:
    // Validates shape, range, zero diagonal and complement identity within
    // 1e-12, then snaps the lower triangle to exact complements.
    static PairwiseMarginalMatrix from_matrix(Eigen::MatrixXd p);

    int size() const { return static_cast<int>(p_.rows()); }
    double at(int i, int j) const;
    const Eigen::MatrixXd& matrix() const { return p_; }

private:
    explicit PairwiseMarginalMatrix(Eigen::MatrixXd p) : p_(std::move(p)) {}
    friend PairwiseMarginalMatrix pairwise_marginals(const PreferenceModel& model);

    Eigen::MatrixXd p_;
};

// Stagewise-choice probability of drawing exactly this order. Evaluated in
// log space.
double probability(const PlackettLuceParams& params, const LinearOrder& s);

// phi^d / Z with the closed-form normalizer Z = prod_i (1 + phi + ... +
// phi^(i-1)); for phi = 0, the indicator of the reference.
double probability(const MallowsParams& params, const LinearOrder& s);

double probability(const PreferenceModel& model, const LinearOrder& s);

// Probability that the item ranked `rank_gap` positions earlier in a Mallows
// reference also comes earlier in a draw. rank_gap must be nonzero; negative
// gaps return the complement. With 0^0 = 1, phi = 0 gives 1 for positive gaps.
double mallows_pair_probability(double phi, int rank_gap);

// One draw from the model. Plackett-Luce samples by sequential choice over
// the remaining items, Mallows by repeated insertion (each reference item
// placed t slots above the bottom with odds phi^t), Uniform by index pick.
// Deterministic given the source.
LinearOrder sample(const PreferenceModel& model, RandomSource& rng);

// Exact head-to-head win probabilities: sigmoid of log-theta differences for
// Plackett-Luce, rank-gap formula for Mallows, counting for Uniform, each
// mixed by the component weights.
PairwiseMarginalMatrix pairwise_marginals(const PreferenceModel& model);

}  // namespace ttr
