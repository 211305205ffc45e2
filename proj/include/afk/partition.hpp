#pragma once

#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

#include "afk/rational.hpp"

namespace afk {

/// Weakly decreasing sequence of positive integers.
///
/// Ordered by size first, then reverse-lexicographically, so (2) precedes (1,1).
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> parts);
    /// Sorts and validates (all parts positive).
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int size() const;  // |lambda|
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    int largest() const { return parts_.empty() ? 0 : parts_.front(); }
    bool is_bounded(int k) const { return largest() <= k; }

    /// Multiset union; concatenation followed by sorting.
    Partition concat(const Partition& other) const;

    /// z_lambda = prod_i alpha_i! i^alpha_i.
    Rational z() const;

    std::string to_string() const;

    friend bool operator==(const Partition&, const Partition&) = default;
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b);

private:
    std::vector<int> parts_;
};

/// Partitions of `size`, optionally with parts <= max_part, in Partition order.
std::vector<Partition> partitions_of(int size, int max_part = -1);

/// Compositions of `size` (positive parts) in lex order.
std::vector<std::vector<int>> compositions_of(int size);

}  // namespace afk
