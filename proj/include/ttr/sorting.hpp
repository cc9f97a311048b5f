#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ttr/linear_order.hpp"

namespace ttr {

enum class StepKind { Selection, Insertion };

// One step kind per sorting round; round k fixes the item that ends up in
// position k of the target order.
class SortStrategy {
public:
    explicit SortStrategy(std::vector<StepKind> steps);

    static SortStrategy all_selection(int length);
    static SortStrategy all_insertion(int length);

    int size() const { return static_cast<int>(steps_.size()); }
    StepKind at(int index) const;

private:
    std::vector<StepKind> steps_;
};

// f(l) = number of times some item was dragged up by exactly l positions,
// l in 1..m-1. Total dragged distance is bounded by m(m-1)/2.
class CountFunction {
public:
    explicit CountFunction(Eigen::VectorXi counts);

    // Zero counts for an order of the given size (domain m-1).
    static CountFunction zeros(int m);

    // Number of distinct move distances, i.e. m-1.
    int domain() const { return static_cast<int>(counts_.size()); }

    // f(l); l must be in 1..m-1.
    int at(int ell) const;

    const Eigen::VectorXi& counts() const { return counts_; }

    friend bool operator==(const CountFunction& a, const CountFunction& b) {
        return a.counts_.size() == b.counts_.size() && a.counts_ == b.counts_;
    }
    friend bool operator!=(const CountFunction& a, const CountFunction& b) {
        return !(a == b);
    }

private:
    Eigen::VectorXi counts_;
};

// Cost of dragging an item up by l positions. Linear charges l, Affine
// charges c*l + d, Table charges an explicit per-distance cost.
class WeightFunction {
public:
    enum class Kind { Linear, Affine, Table };

    static WeightFunction linear();
    static WeightFunction affine(double c, double d);
    static WeightFunction table(Eigen::VectorXd weights);

    Kind kind() const { return kind_; }
    double affine_c() const { return c_; }
    double affine_d() const { return d_; }
    const Eigen::VectorXd& table_weights() const { return table_; }

    // w(l) for l >= 1; Table weights are bounds-checked.
    double at(int ell) const;

    // Materialize w(1..m-1) as a vector. A Table must already have exactly
    // that many entries.
    Eigen::VectorXd table_for(int m) const;

private:
    WeightFunction(Kind kind, double c, double d, Eigen::VectorXd table);

    Kind kind_;
    double c_ = 0.0;
    double d_ = 0.0;
    Eigen::VectorXd table_;
};

struct SortMove {
    int step;             // 1-based round index
    Alternative item;     // the promoted alternative
    int from_position;    // 0-based, before the move
    int to_position;      // 0-based, after the move; always <= from_position
    int distance;         // from_position - to_position, >= 0
};

// Complete record of a simulated sort; zero-distance rounds are kept.
struct SortTrace {
    std::vector<SortMove> moves;
    LinearOrder final_order;
};

struct SortResult {
    CountFunction counts;
    SortTrace trace;
};

// Simulates dragging `source` into `target`. Round k (1..m-1) designates an
// alternative from the current suffix (positions k..m-1): the target-best one
// for a Selection step, the top one for an Insertion step. The designated
// alternative is promoted to the slot that keeps the prefix ordered by the
// target. The strategy must provide at least m-1 steps; extras are ignored.
SortResult run_sort(const LinearOrder& source, const LinearOrder& target,
                    const SortStrategy& strategy);

// Total number of drag-and-drop operations, i.e. the sum of all counts.
long long num_moves(const CountFunction& f);

// Total sorting time: sum over l of f(l) * w(l). Linear and affine weights
// aggregate the integer sums first, so the identities
//   time(Linear) = kendall_tau   and   time(Affine) = c*d_kt + d*#moves
// hold exactly in floating point.
double time_of(const CountFunction& f, const WeightFunction& w);

}  // namespace ttr
