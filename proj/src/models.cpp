#include "ttr/models.hpp"

#include <algorithm>
#include <cmath>

namespace ttr {

namespace {

constexpr double kGammaTolerance = 1e-9;

double log_sum_exp(const Eigen::VectorXd& v) {
    const double peak = v.maxCoeff();
    return peak + std::log((v.array() - peak).exp().sum());
}

double log_add_exp(double a, double b) {
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

Eigen::VectorXd normalize_gamma(const Eigen::VectorXd& gamma) {
    if (gamma.size() == 0) throw InvalidInputError("PreferenceModel: no mixture weights");
    double total = 0.0;
    for (int i = 0; i < gamma.size(); ++i) {
        if (!(gamma[i] >= 0.0) || !std::isfinite(gamma[i]))
            throw InvalidInputError("PreferenceModel: mixture weights must be finite and >= 0");
        total += gamma[i];
    }
    if (std::abs(total - 1.0) > kGammaTolerance)
        throw InvalidInputError("PreferenceModel: mixture weights sum to " +
                                std::to_string(total) + ", expected 1");
    return gamma / total;
}

// 1 + phi + ... + phi^(count-1), exact loops; count >= 1.
double geometric_sum(double phi, int count) {
    double total = 0.0;
    double power = 1.0;
    for (int z = 0; z < count; ++z) {
        total += power;
        power *= phi;
    }
    return total;
}

double log_mallows_normalizer(double phi, int m) {
    double log_z = 0.0;
    for (int i = 1; i <= m; ++i) log_z += std::log(geometric_sum(phi, i));
    return log_z;
}

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

}  // namespace

PlackettLuceParams::PlackettLuceParams(const Eigen::VectorXd& theta) {
    if (theta.size() == 0) throw InvalidInputError("PlackettLuceParams: empty theta");
    Eigen::VectorXd lt(theta.size());
    for (int i = 0; i < theta.size(); ++i) {
        if (!(theta[i] > 0.0) || !std::isfinite(theta[i]))
            throw InvalidInputError("PlackettLuceParams: theta entries must be finite and > 0");
        lt[i] = std::log(theta[i]);
    }
    *this = from_log_theta(lt);
}

PlackettLuceParams PlackettLuceParams::from_log_theta(const Eigen::VectorXd& log_theta) {
    if (log_theta.size() == 0) throw InvalidInputError("PlackettLuceParams: empty log-theta");
    for (int i = 0; i < log_theta.size(); ++i) {
        if (!std::isfinite(log_theta[i]))
            throw InvalidInputError("PlackettLuceParams: log-theta entries must be finite");
    }
    PlackettLuceParams params;
    params.log_theta_ = log_theta.array() - log_sum_exp(log_theta);
    // std::exp rather than Eigen's SIMD exp: the latter returns junk
    // denormals for arguments far below its valid range.
    params.theta_ = params.log_theta_.unaryExpr([](double x) { return std::exp(x); });
    return params;
}

MallowsParams::MallowsParams(LinearOrder reference, double phi)
    : reference_(std::move(reference)), phi_(phi) {
    if (!(phi >= 0.0) || !(phi <= 1.0))
        throw InvalidInputError("MallowsParams: phi must lie in [0, 1]");
}

PreferenceModel PreferenceModel::plackett_luce(PlackettLuceParams component) {
    std::vector<PlackettLuceParams> components;
    components.push_back(std::move(component));
    return plackett_luce_mixture(Eigen::VectorXd::Ones(1), std::move(components));
}

PreferenceModel PreferenceModel::plackett_luce_mixture(
    const Eigen::VectorXd& gamma, std::vector<PlackettLuceParams> components) {
    if (components.empty())
        throw InvalidInputError("PreferenceModel: no Plackett-Luce components");
    if (gamma.size() != static_cast<Eigen::Index>(components.size()))
        throw InvalidInputError("PreferenceModel: weight/component count mismatch");
    PreferenceModel model;
    model.kind_ = ModelKind::PlackettLuceMixture;
    model.gamma_ = normalize_gamma(gamma);
    model.m_ = components.front().size();
    for (const auto& c : components) {
        if (c.size() != model.m_)
            throw InvalidInputError("PreferenceModel: components have mixed sizes");
    }
    model.pl_components_ = std::move(components);
    return model;
}

PreferenceModel PreferenceModel::mallows(MallowsParams component) {
    std::vector<MallowsParams> components;
    components.push_back(std::move(component));
    return mallows_mixture(Eigen::VectorXd::Ones(1), std::move(components));
}

PreferenceModel PreferenceModel::mallows_mixture(const Eigen::VectorXd& gamma,
                                                 std::vector<MallowsParams> components) {
    if (components.empty()) throw InvalidInputError("PreferenceModel: no Mallows components");
    if (gamma.size() != static_cast<Eigen::Index>(components.size()))
        throw InvalidInputError("PreferenceModel: weight/component count mismatch");
    PreferenceModel model;
    model.kind_ = ModelKind::MallowsMixture;
    model.gamma_ = normalize_gamma(gamma);
    model.m_ = components.front().size();
    for (const auto& c : components) {
        if (c.size() != model.m_)
            throw InvalidInputError("PreferenceModel: components have mixed sizes");
    }
    model.mallows_components_ = std::move(components);
    return model;
}

PreferenceModel PreferenceModel::uniform(std::vector<LinearOrder> profile) {
    if (profile.empty()) throw InvalidInputError("PreferenceModel: empty profile");
    PreferenceModel model;
    model.kind_ = ModelKind::UniformProfile;
    model.m_ = profile.front().size();
    for (const auto& order : profile) {
        if (order.size() != model.m_)
            throw InvalidInputError("PreferenceModel: profile orders have mixed sizes");
    }
    model.profile_ = std::move(profile);
    return model;
}

int PreferenceModel::num_components() const {
    if (kind_ == ModelKind::UniformProfile)
        throw InvalidInputError("PreferenceModel: uniform model has no mixture components");
    return static_cast<int>(gamma_.size());
}

const Eigen::VectorXd& PreferenceModel::weights() const {
    if (kind_ == ModelKind::UniformProfile)
        throw InvalidInputError("PreferenceModel: uniform model has no mixture weights");
    return gamma_;
}

const PlackettLuceParams& PreferenceModel::pl_component(int index) const {
    if (kind_ != ModelKind::PlackettLuceMixture)
        throw InvalidInputError("PreferenceModel: not a Plackett-Luce mixture");
    if (index < 0 || index >= static_cast<int>(pl_components_.size()))
        throw InvalidInputError("PreferenceModel: component index out of range");
    return pl_components_[index];
}

const MallowsParams& PreferenceModel::mallows_component(int index) const {
    if (kind_ != ModelKind::MallowsMixture)
        throw InvalidInputError("PreferenceModel: not a Mallows mixture");
    if (index < 0 || index >= static_cast<int>(mallows_components_.size()))
        throw InvalidInputError("PreferenceModel: component index out of range");
    return mallows_components_[index];
}

const std::vector<LinearOrder>& PreferenceModel::profile() const {
    if (kind_ != ModelKind::UniformProfile)
        throw InvalidInputError("PreferenceModel: not a uniform profile model");
    return profile_;
}

PairwiseMarginalMatrix PairwiseMarginalMatrix::from_matrix(Eigen::MatrixXd p) {
    constexpr double kTol = 1e-12;
    if (p.rows() == 0 || p.rows() != p.cols())
        throw InvalidInputError("PairwiseMarginalMatrix: matrix must be square and non-empty");
    const int m = static_cast<int>(p.rows());
    for (int i = 0; i < m; ++i) {
        if (std::abs(p(i, i)) > kTol)
            throw InvalidInputError("PairwiseMarginalMatrix: diagonal must be zero");
        p(i, i) = 0.0;
        for (int j = i + 1; j < m; ++j) {
            if (!std::isfinite(p(i, j)) || !std::isfinite(p(j, i)))
                throw InvalidInputError("PairwiseMarginalMatrix: entries must be finite");
            if (p(i, j) < -kTol || p(i, j) > 1.0 + kTol)
                throw InvalidInputError("PairwiseMarginalMatrix: entries must lie in [0, 1]");
            if (std::abs(p(i, j) + p(j, i) - 1.0) > kTol)
                throw InvalidInputError("PairwiseMarginalMatrix: complements must sum to 1");
            p(i, j) = std::clamp(p(i, j), 0.0, 1.0);
            p(j, i) = 1.0 - p(i, j);
        }
    }
    return PairwiseMarginalMatrix(std::move(p));
}

double PairwiseMarginalMatrix::at(int i, int j) const {
    if (i < 0 || i >= size() || j < 0 || j >= size())
        throw InvalidInputError("PairwiseMarginalMatrix: index out of range");
    return p_(i, j);
}

double probability(const PlackettLuceParams& params, const LinearOrder& s) {
    const int m = params.size();
    if (s.size() != m)
        throw InvalidInputError("probability: order size does not match parameters");
    // Stage k picks s(k) against the remaining suffix; accumulate the suffix
    // logsumexp from the back so each stage costs O(1).
    const Eigen::VectorXd& lt = params.log_theta();
    double log_p = 0.0;
    double suffix_lse = lt[s.at(m - 1)];
    for (int k = m - 2; k >= 0; --k) {
        suffix_lse = log_add_exp(lt[s.at(k)], suffix_lse);
        log_p += lt[s.at(k)] - suffix_lse;
    }
    return std::exp(log_p);
}

double probability(const MallowsParams& params, const LinearOrder& s) {
    if (s.size() != params.size())
        throw InvalidInputError("probability: order size does not match parameters");
    const long long d = kendall_tau(s, params.reference());
    if (params.phi() == 0.0) return d == 0 ? 1.0 : 0.0;
    const double log_p = static_cast<double>(d) * std::log(params.phi()) -
                         log_mallows_normalizer(params.phi(), params.size());
    return std::exp(log_p);
}

double probability(const PreferenceModel& model, const LinearOrder& s) {
    if (s.size() != model.size())
        throw InvalidInputError("probability: order size does not match model");
    switch (model.kind()) {
        case ModelKind::PlackettLuceMixture: {
            double total = 0.0;
            for (int l = 0; l < model.num_components(); ++l)
                total += model.weights()[l] * probability(model.pl_component(l), s);
            return total;
        }
        case ModelKind::MallowsMixture: {
            double total = 0.0;
            for (int l = 0; l < model.num_components(); ++l)
                total += model.weights()[l] * probability(model.mallows_component(l), s);
            return total;
        }
        case ModelKind::UniformProfile: {
            const auto& profile = model.profile();
            const auto hits = std::count(profile.begin(), profile.end(), s);
            return static_cast<double>(hits) / static_cast<double>(profile.size());
        }
    }
    throw InvalidInputError("probability: corrupt model kind");
}

double mallows_pair_probability(double phi, int rank_gap) {
    if (!(phi >= 0.0) || !(phi <= 1.0))
        throw InvalidInputError("mallows_pair_probability: phi must lie in [0, 1]");
    if (rank_gap == 0)
        throw InvalidInputError("mallows_pair_probability: rank gap must be nonzero");
    if (rank_gap < 0) return 1.0 - mallows_pair_probability(phi, -rank_gap);

    double numerator = 0.0;
    double power = 1.0;  // phi^(z-1), with 0^0 = 1
    for (int z = 1; z <= rank_gap; ++z) {
        numerator += static_cast<double>(z) * power;
        power *= phi;
    }
    return numerator / (geometric_sum(phi, rank_gap) * geometric_sum(phi, rank_gap + 1));
}

namespace {

LinearOrder sample_pl(const PlackettLuceParams& params, RandomSource& rng) {
    const Eigen::VectorXd& lt = params.log_theta();
    std::vector<int> remaining(params.size());
    for (int i = 0; i < params.size(); ++i) remaining[i] = i;

    std::vector<Alternative> out;
    out.reserve(params.size());
    while (remaining.size() > 1) {
        double peak = -std::numeric_limits<double>::infinity();
        for (int i : remaining) peak = std::max(peak, lt[i]);
        double total = 0.0;
        for (int i : remaining) total += std::exp(lt[i] - peak);

        const double u = rng.uniform01() * total;
        double acc = 0.0;
        std::size_t pick = remaining.size() - 1;
        for (std::size_t idx = 0; idx < remaining.size(); ++idx) {
            acc += std::exp(lt[remaining[idx]] - peak);
            if (u < acc) {
                pick = idx;
                break;
            }
        }
        out.push_back(remaining[pick]);
        remaining.erase(remaining.begin() + pick);
    }
    out.push_back(remaining.front());
    return LinearOrder(std::move(out));
}

LinearOrder sample_mallows(const MallowsParams& params, RandomSource& rng) {
    const double phi = params.phi();
    const int m = params.size();
    std::vector<Alternative> out;
    out.reserve(m);
    for (int i = 0; i < m; ++i) {
        // Insert the i-th reference item t slots above the bottom with odds
        // phi^t; the inserted item then sits above exactly t earlier items,
        // adding t disagreements with the reference.
        int t = 0;
        if (phi > 0.0 && i > 0) {
            const double u = rng.uniform01() * geometric_sum(phi, i + 1);
            double acc = 0.0;
            double power = 1.0;
            t = i;
            for (int z = 0; z <= i; ++z) {
                acc += power;
                power *= phi;
                if (u < acc) {
                    t = z;
                    break;
                }
            }
        }
        out.insert(out.end() - t, params.reference().at(i));
    }
    return LinearOrder(std::move(out));
}

int pick_component(const Eigen::VectorXd& gamma, RandomSource& rng) {
    if (gamma.size() == 1) return 0;
    const double u = rng.uniform01();
    double acc = 0.0;
    for (int l = 0; l + 1 < gamma.size(); ++l) {
        acc += gamma[l];
        if (u < acc) return l;
    }
    return static_cast<int>(gamma.size()) - 1;
}

}  // namespace

LinearOrder sample(const PreferenceModel& model, RandomSource& rng) {
    switch (model.kind()) {
        case ModelKind::PlackettLuceMixture:
            return sample_pl(model.pl_component(pick_component(model.weights(), rng)), rng);
        case ModelKind::MallowsMixture:
            return sample_mallows(model.mallows_component(pick_component(model.weights(), rng)),
                                  rng);
        case ModelKind::UniformProfile: {
            const auto& profile = model.profile();
            if (profile.size() == 1) return profile.front();
            return profile[rng.uniform_int(static_cast<int>(profile.size()))];
        }
    }
    throw InvalidInputError("sample: corrupt model kind");
}

PairwiseMarginalMatrix pairwise_marginals(const PreferenceModel& model) {
    const int m = model.size();
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            double win = 0.0;
            switch (model.kind()) {
                case ModelKind::PlackettLuceMixture:
                    for (int l = 0; l < model.num_components(); ++l) {
                        const Eigen::VectorXd& lt = model.pl_component(l).log_theta();
                        win += model.weights()[l] * sigmoid(lt[i] - lt[j]);
                    }
                    break;
                case ModelKind::MallowsMixture:
                    for (int l = 0; l < model.num_components(); ++l) {
                        const MallowsParams& c = model.mallows_component(l);
                        const int gap = c.reference().rank_of(j) - c.reference().rank_of(i);
                        win += model.weights()[l] * mallows_pair_probability(c.phi(), gap);
                    }
                    break;
                case ModelKind::UniformProfile: {
                    int hits = 0;
                    for (const auto& order : model.profile())
                        if (order.position_of(i) < order.position_of(j)) ++hits;
                    win = static_cast<double>(hits) /
                          static_cast<double>(model.profile().size());
                    break;
                }
            }
            p(i, j) = win;
            p(j, i) = 1.0 - win;
        }
    }
    return PairwiseMarginalMatrix(std::move(p));
}

}  // namespace ttr
