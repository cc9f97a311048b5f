#include "ttr/sorting.hpp"

#include <algorithm>
#include <cmath>

namespace ttr {

SortStrategy::SortStrategy(std::vector<StepKind> steps) : steps_(std::move(steps)) {
    if (steps_.empty()) throw InvalidInputError("SortStrategy: empty step sequence");
}

SortStrategy SortStrategy::all_selection(int length) {
    if (length <= 0) throw InvalidInputError("SortStrategy: length must be positive");
    return SortStrategy(std::vector<StepKind>(length, StepKind::Selection));
}

SortStrategy SortStrategy::all_insertion(int length) {
    if (length <= 0) throw InvalidInputError("SortStrategy: length must be positive");
    return SortStrategy(std::vector<StepKind>(length, StepKind::Insertion));
}

StepKind SortStrategy::at(int index) const {
    if (index < 0 || index >= size())
        throw InvalidInputError("SortStrategy: step index out of range");
    return steps_[index];
}

CountFunction::CountFunction(Eigen::VectorXi counts) : counts_(std::move(counts)) {
    const int m = static_cast<int>(counts_.size()) + 1;
    long long distance = 0;
    for (int i = 0; i < counts_.size(); ++i) {
        if (counts_[i] < 0)
            throw InvalidInputError("CountFunction: negative count at distance " +
                                    std::to_string(i + 1));
        distance += static_cast<long long>(i + 1) * counts_[i];
    }
    if (distance > static_cast<long long>(m) * (m - 1) / 2)
        throw InvalidInputError("CountFunction: total distance exceeds m(m-1)/2");
}

CountFunction CountFunction::zeros(int m) {
    if (m <= 0) throw InvalidInputError("CountFunction: m must be positive");
    return CountFunction(Eigen::VectorXi::Zero(m - 1));
}

int CountFunction::at(int ell) const {
    if (ell < 1 || ell > domain())
        throw InvalidInputError("CountFunction: distance " + std::to_string(ell) +
                                " outside 1.." + std::to_string(domain()));
    return counts_[ell - 1];
}

WeightFunction::WeightFunction(Kind kind, double c, double d, Eigen::VectorXd table)
    : kind_(kind), c_(c), d_(d), table_(std::move(table)) {}

WeightFunction WeightFunction::linear() {
    return WeightFunction(Kind::Linear, 1.0, 0.0, Eigen::VectorXd());
}

WeightFunction WeightFunction::affine(double c, double d) {
    if (!(c >= 0.0) || !std::isfinite(c) || !(d >= 0.0) || !std::isfinite(d))
        throw InvalidInputError("WeightFunction: affine constants must be finite and >= 0");
    return WeightFunction(Kind::Affine, c, d, Eigen::VectorXd());
}

WeightFunction WeightFunction::table(Eigen::VectorXd weights) {
    for (int i = 0; i < weights.size(); ++i) {
        if (!(weights[i] >= 0.0) || !std::isfinite(weights[i]))
            throw InvalidInputError("WeightFunction: table entries must be finite and >= 0");
    }
    return WeightFunction(Kind::Table, 0.0, 0.0, std::move(weights));
}

double WeightFunction::at(int ell) const {
    if (ell < 1) throw InvalidInputError("WeightFunction: distance must be >= 1");
    switch (kind_) {
        case Kind::Linear:
            return static_cast<double>(ell);
        case Kind::Affine:
            return c_ * ell + d_;
        case Kind::Table:
            if (ell > table_.size())
                throw InvalidInputError("WeightFunction: distance " + std::to_string(ell) +
                                        " outside table of size " +
                                        std::to_string(table_.size()));
            return table_[ell - 1];
    }
    throw InvalidInputError("WeightFunction: corrupt kind");
}

Eigen::VectorXd WeightFunction::table_for(int m) const {
    if (m <= 0) throw InvalidInputError("WeightFunction: m must be positive");
    const int n = m - 1;
    switch (kind_) {
        case Kind::Linear:
            return Eigen::VectorXd::LinSpaced(n, 1.0, static_cast<double>(n));
        case Kind::Affine: {
            Eigen::VectorXd w(n);
            for (int i = 0; i < n; ++i) w[i] = c_ * (i + 1) + d_;
            return w;
        }
        case Kind::Table:
            if (table_.size() != n)
                throw InvalidInputError("WeightFunction: table has " +
                                        std::to_string(table_.size()) +
                                        " entries, expected " + std::to_string(n));
            return table_;
    }
    throw InvalidInputError("WeightFunction: corrupt kind");
}

namespace {

// The prefix (positions 0..k) must list items in target order after round k.
void check_prefix_sorted(const std::vector<Alternative>& current,
                         const LinearOrder& target, int k) {
    for (int q = 0; q + 1 <= k; ++q) {
        if (target.position_of(current[q]) >= target.position_of(current[q + 1]))
            throw Error("run_sort: sorted-prefix property violated");
    }
}

}  // namespace

SortResult run_sort(const LinearOrder& source, const LinearOrder& target,
                    const SortStrategy& strategy) {
    const int m = source.size();
    if (target.size() != m)
        throw InvalidInputError("run_sort: source and target sizes differ");
    if (strategy.size() < m - 1)
        throw InvalidInputError("run_sort: strategy provides " +
                                std::to_string(strategy.size()) + " steps, need " +
                                std::to_string(m - 1));

    std::vector<Alternative> current = source.items();
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(m - 1);
    std::vector<SortMove> moves;
    moves.reserve(m - 1);

    for (int k = 1; k <= m - 1; ++k) {
        // Designate from the suffix (positions k..m-1).
        int from = k;
        if (strategy.at(k - 1) == StepKind::Selection) {
            for (int j = k + 1; j < m; ++j) {
                if (target.position_of(current[j]) < target.position_of(current[from]))
                    from = j;
            }
        }
        const Alternative item = current[from];

        // Slot inside the target-ordered prefix (positions 0..k-1).
        int to = 0;
        while (to < k && target.position_of(current[to]) < target.position_of(item)) ++to;

        std::rotate(current.begin() + to, current.begin() + from,
                    current.begin() + from + 1);
        const int distance = from - to;
        if (distance > 0) ++counts[distance - 1];
        moves.push_back(SortMove{k, item, from, to, distance});

        check_prefix_sorted(current, target, k);
    }

    LinearOrder final_order(current);
    if (final_order != target) throw Error("run_sort: did not reach the target order");
    return SortResult{CountFunction(counts), SortTrace{std::move(moves), std::move(final_order)}};
}

long long num_moves(const CountFunction& f) {
    long long total = 0;
    for (int i = 0; i < f.counts().size(); ++i) total += f.counts()[i];
    return total;
}

double time_of(const CountFunction& f, const WeightFunction& w) {
    switch (w.kind()) {
        case WeightFunction::Kind::Linear:
        case WeightFunction::Kind::Affine: {
            long long distance = 0;
            long long operations = 0;
            for (int i = 0; i < f.counts().size(); ++i) {
                distance += static_cast<long long>(i + 1) * f.counts()[i];
                operations += f.counts()[i];
            }
            if (w.kind() == WeightFunction::Kind::Linear)
                return static_cast<double>(distance);
            return w.affine_c() * static_cast<double>(distance) +
                   w.affine_d() * static_cast<double>(operations);
        }
        case WeightFunction::Kind::Table: {
            const int m = f.domain() + 1;
            return w.table_for(m).dot(f.counts().cast<double>());
        }
    }
    throw InvalidInputError("time_of: corrupt weight kind");
}

}  // namespace ttr
