#include "ttr/linear_order.hpp"

#include <algorithm>
#include <numeric>

namespace ttr {

LinearOrder::LinearOrder(std::vector<Alternative> items) : items_(std::move(items)) {
    const int m = static_cast<int>(items_.size());
    if (m == 0) throw InvalidInputError("LinearOrder: empty item list");
    positions_.assign(m, -1);
    for (int k = 0; k < m; ++k) {
        const Alternative a = items_[k];
        if (a < 0 || a >= m)
            throw InvalidInputError("LinearOrder: item " + std::to_string(a) +
                                    " out of range 0.." + std::to_string(m - 1));
        if (positions_[a] != -1)
            throw InvalidInputError("LinearOrder: duplicate item " + std::to_string(a));
        positions_[a] = k;
    }
}

LinearOrder LinearOrder::identity(int m) {
    if (m <= 0) throw InvalidInputError("LinearOrder: size must be positive");
    std::vector<Alternative> items(m);
    std::iota(items.begin(), items.end(), 0);
    return LinearOrder(std::move(items));
}

Alternative LinearOrder::at(int position) const {
    if (position < 0 || position >= size())
        throw InvalidInputError("LinearOrder: position " + std::to_string(position) +
                                " out of range");
    return items_[position];
}

int LinearOrder::position_of(Alternative a) const {
    if (a < 0 || a >= size())
        throw InvalidInputError("LinearOrder: unknown alternative " + std::to_string(a));
    return positions_[a];
}

LinearOrder LinearOrder::reversed() const {
    std::vector<Alternative> items(items_.rbegin(), items_.rend());
    return LinearOrder(std::move(items));
}

PrefixSet::PrefixSet(const LinearOrder& order, int k) : k_(k), m_(order.size()) {
    if (k < 0 || k > m_)
        throw InvalidInputError("prefix: k must be in 0.." + std::to_string(m_));
    mask_.assign(m_, 0);
    members_.reserve(k);
    for (int pos = 0; pos < k; ++pos) {
        members_.push_back(order.at(pos));
        mask_[order.at(pos)] = 1;
    }
    std::sort(members_.begin(), members_.end());
}

bool PrefixSet::contains(Alternative a) const {
    if (a < 0 || a >= m_)
        throw InvalidInputError("PrefixSet: unknown alternative " + std::to_string(a));
    return mask_[a] != 0;
}

namespace {

// Counts inversions in seq by merge sort; seq is left sorted.
long long count_inversions(std::vector<int>& seq, std::vector<int>& scratch,
                           int lo, int hi) {
    if (hi - lo <= 1) return 0;
    const int mid = lo + (hi - lo) / 2;
    long long count = count_inversions(seq, scratch, lo, mid) +
                      count_inversions(seq, scratch, mid, hi);
    int i = lo, j = mid;
    for (int k = lo; k < hi; ++k) {
        if (i < mid && (j >= hi || seq[i] <= seq[j])) {
            scratch[k] = seq[i++];
        } else {
            count += mid - i;  // seq[j] jumps over everything left in [i, mid)
            scratch[k] = seq[j++];
        }
    }
    std::copy(scratch.begin() + lo, scratch.begin() + hi, seq.begin() + lo);
    return count;
}

}  // namespace

long long kendall_tau(const LinearOrder& a, const LinearOrder& b) {
    const int m = a.size();
    if (b.size() != m)
        throw InvalidInputError("kendall_tau: orders have different sizes");
    // Positions in b of the items as a lists them; disagreements = inversions.
    std::vector<int> seq(m);
    for (int k = 0; k < m; ++k) seq[k] = b.position_of(a.at(k));
    std::vector<int> scratch(m);
    return count_inversions(seq, scratch, 0, m);
}

LinearOrder random_order(int m, RandomSource& rng) {
    if (m <= 0) throw InvalidInputError("random_order: size must be positive");
    std::vector<Alternative> items(m);
    std::iota(items.begin(), items.end(), 0);
    for (int i = m - 1; i > 0; --i) {
        std::swap(items[i], items[rng.uniform_int(i + 1)]);
    }
    return LinearOrder(std::move(items));
}

std::vector<LinearOrder> all_orders(int m, int max_m) {
    if (m <= 0) throw InvalidInputError("all_orders: size must be positive");
    if (m > max_m)
        throw ResourceLimitError("all_orders: m = " + std::to_string(m) +
                                 " exceeds cap " + std::to_string(max_m));
    std::vector<Alternative> items(m);
    std::iota(items.begin(), items.end(), 0);
    std::vector<LinearOrder> out;
    do {
        out.emplace_back(items);
    } while (std::next_permutation(items.begin(), items.end()));
    return out;
}

std::string to_string(const LinearOrder& order) {
    std::string out;
    for (int k = 0; k < order.size(); ++k) {
        if (k > 0) out += ',';
        out += std::to_string(order.at(k));
    }
    return out;
}

}  // namespace ttr
