#include "afk/partition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "afk/errors.hpp"

namespace afk {

Partition::Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_)
        if (p <= 0) throw InvalidArgument("partition parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Partition Partition::concat(const Partition& other) const {
    std::vector<int> parts = parts_;
    parts.insert(parts.end(), other.parts_.begin(), other.parts_.end());
    return Partition(std::move(parts));
}

Rational Partition::z() const {
    std::map<int, int> multiplicity;
    for (int p : parts_) ++multiplicity[p];
    mpz_class z = 1;
    for (const auto& [part, count] : multiplicity) {
        for (int i = 2; i <= count; ++i) z *= i;
        for (int i = 0; i < count; ++i) z *= part;
    }
    return Rational(z);
}

std::string Partition::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts_[i]);
    }
    return s + ")";
}

std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    // reverse lex: larger leading parts first
    return b.parts_ <=> a.parts_;
}

std::vector<Partition> partitions_of(int size, int max_part) {
    if (size < 0) return {};
    if (max_part < 0 || max_part > size) max_part = size;
    std::vector<Partition> out;
    std::vector<int> current;
    std::function<void(int, int)> rec = [&](int remaining, int bound) {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        for (int p = std::min(bound, remaining); p >= 1; --p) {
            current.push_back(p);
            rec(remaining - p, p);
            current.pop_back();
        }
    };
    rec(size, max_part);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> compositions_of(int size) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    std::function<void(int)> rec = [&](int remaining) {
        if (remaining == 0) {
            out.push_back(current);
            return;
        }
        for (int p = 1; p <= remaining; ++p) {
            current.push_back(p);
            rec(remaining - p);
            current.pop_back();
        }
    };
    if (size > 0) rec(size);
    return out;
}

}  // namespace afk
