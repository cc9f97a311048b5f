#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ttr/errors.hpp"
#include "ttr/random.hpp"

namespace ttr {

// Items are identified by their index in 0..m-1.
using Alternative = int;

// A permutation of {0..m-1}: items(k) is the alternative in position k,
// position 0 being the most preferred. The inverse (item -> position) is
// cached so rank lookups are O(1).
class LinearOrder {
public:
    explicit LinearOrder(std::vector<Alternative> items);

    static LinearOrder identity(int m);

    int size() const { return static_cast<int>(items_.size()); }

    // Alternative occupying position k (0-based).
    Alternative at(int position) const;

    // Position of alternative a, 0-based.
    int position_of(Alternative a) const;

    // Rank of alternative a, 1-based: rank 1 is the most preferred.
    int rank_of(Alternative a) const { return position_of(a) + 1; }

    const std::vector<Alternative>& items() const { return items_; }

    LinearOrder reversed() const;

    friend bool operator==(const LinearOrder& a, const LinearOrder& b) {
        return a.items_ == b.items_;
    }
    friend bool operator!=(const LinearOrder& a, const LinearOrder& b) {
        return !(a == b);
    }
    // Lexicographic on the item sequence; used as a deterministic tie-break.
    friend bool operator<(const LinearOrder& a, const LinearOrder& b) {
        return a.items_ < b.items_;
    }

private:
    std::vector<Alternative> items_;
    std::vector<int> positions_;  // positions_[a] = index of a in items_
};

// The top k alternatives of an order, as an unordered set.
class PrefixSet {
public:
    PrefixSet(const LinearOrder& order, int k);

    int size() const { return k_; }
    bool contains(Alternative a) const;

    // Members sorted by alternative id (set semantics, no internal order).
    const std::vector<Alternative>& members() const { return members_; }

private:
    int k_;
    int m_;
    std::vector<Alternative> members_;
    std::vector<char> mask_;
};

// Number of ordered pairs on which the two orders disagree (Kendall's tau
// distance). O(m log m) by counting inversions; range 0..m(m-1)/2.
long long kendall_tau(const LinearOrder& a, const LinearOrder& b);

inline int rank_of(const LinearOrder& order, Alternative a) {
    return order.rank_of(a);
}

inline PrefixSet prefix(const LinearOrder& order, int k) {
    return PrefixSet(order, k);
}

// Uniformly random permutation (Fisher-Yates), deterministic given the source.
LinearOrder random_order(int m, RandomSource& rng);

// All m! orders of {0..m-1} in lexicographic sequence. Intended for small m;
// throws ResourceLimitError above max_m.
std::vector<LinearOrder> all_orders(int m, int max_m = 9);

// Render as comma-separated item ids, e.g. "2,0,1".
std::string to_string(const LinearOrder& order);

}  // namespace ttr
