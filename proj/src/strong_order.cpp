#include "afk/strong_order.hpp"

#include <numeric>
#include <tuple>

#include "afk/errors.hpp"

namespace afk {

void check_composition(const Composition& J) {
    for (int part : J)
        if (part < 1) throw InvalidArgument("composition parts must be positive");
}

int composition_size(const Composition& J) { return std::accumulate(J.begin(), J.end(), 0); }

Composition ascent_composition(const std::vector<long>& labels) {
    if (labels.empty()) throw InvalidArgument("ascent composition of an empty sequence");
    Composition out;
    int run = 1;
    for (std::size_t p = 0; p + 1 < labels.size(); ++p) {
        if (labels[p] < labels[p + 1]) {
            out.push_back(run);
            run = 1;
        } else {
            ++run;
        }
    }
    out.push_back(run);
    return out;
}

namespace {

// Paths are consumed part by part: within a part the labels weakly descend,
// and each new part starts with a strict ascent.
class BssWalker {
public:
    BssWalker(const Composition& J, long a) : J_(J), a_(a) {}

    NilCoxElement from(const AffinePermutation& w) {
        NilCoxElement out(w.n());
        for (const auto& cover : marked_covers(w, a_)) out += walk(cover.lower, 0, 1, cover.label);
        return out;
    }

private:
    using Key = std::tuple<AffinePermutation, std::size_t, int, long>;

    const NilCoxElement& walk(const AffinePermutation& w, std::size_t part, int used, long last) {
        const Key key{w, part, used, last};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        NilCoxElement out(w.n());
        const bool part_full = used == J_[part];
        if (part_full && part + 1 == J_.size()) {
            out = NilCoxElement::basis(w);
        } else {
            for (const auto& cover : marked_covers(w, a_)) {
                const bool ascent = last < cover.label;
                if (part_full && ascent)
                    out += walk(cover.lower, part + 1, 1, cover.label);
                else if (!part_full && !ascent)
                    out += walk(cover.lower, part, used + 1, cover.label);
            }
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

    const Composition& J_;
    long a_;
    std::map<Key, NilCoxElement> memo_;
};

}  // namespace

NilCoxElement bss_apply(const NilCoxElement& x, const Composition& J, long a) {
    check_composition(J);
    NilCoxElement out(x.n());
    if (J.empty()) return x;
    BssWalker walker(J, a);
    for (const auto& [w, c] : x.terms()) out += walker.from(w) * c;
    return out;
}

std::vector<RibbonChain> ribbons(const AffinePermutation& w, int m) { return mn_chains(w, m, 0); }

long mn_coefficient(const AffinePermutation& w, int m, const AffinePermutation& v) {
    long total = 0;
    for (const auto& chain : ribbons(w, m))
        if (chain.outside() == v) total += chain.sign;
    return total;
}

namespace {

void check_weight(int n, const Composition& weight) {
    check_composition(weight);
    for (int part : weight)
        if (part >= n) throw InvalidArgument("ribbon sizes must be smaller than n");
}

}  // namespace

std::vector<RibbonTableau> ribbon_tableaux(const AffinePermutation& u, const Composition& weight) {
    check_weight(u.n(), weight);
    std::vector<RibbonTableau> out;
    if (composition_size(weight) != u.length()) return out;
    RibbonTableau current;
    current.weight = weight;
    auto extend = [&](auto&& self, const AffinePermutation& w, std::size_t step) -> void {
        if (step == weight.size()) {
            if (w.is_identity()) out.push_back(current);
            return;
        }
        for (auto& chain : ribbons(w, weight[step])) {
            const int saved = current.sigma;
            current.sigma *= chain.sign;
            current.ribbons.push_back(chain);
            self(self, chain.outside(), step + 1);
            current.ribbons.pop_back();
            current.sigma = saved;
        }
    };
    extend(extend, u, 0);
    return out;
}

long ribbon_character(const AffinePermutation& u, const Composition& weight) {
    check_weight(u.n(), weight);
    if (composition_size(weight) != u.length()) return 0;
    // only the endpoints matter, so propagate signed multiplicities level by level
    std::map<AffinePermutation, long> level{{u, 1}};
    for (int part : weight) {
        std::map<AffinePermutation, long> next;
        for (const auto& [w, mult] : level)
            for (const auto& chain : ribbons(w, part)) next[chain.outside()] += mult * chain.sign;
        std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
        level = std::move(next);
    }
    auto it = level.find(AffinePermutation::identity(u.n()));
    return it == level.end() ? 0 : it->second;
}

SymFunc k_schur_via_ribbons(const AffinePermutation& u) {
    if (!u.is_zero_grassmannian()) throw InvalidArgument("k_schur_via_ribbons needs a 0-Grassmannian element");
    SymFunc out(Basis::p);
    for (const Partition& lambda : partitions_of(static_cast<int>(u.length()), u.n() - 1))
        if (long chi = ribbon_character(u, lambda.parts()); chi != 0) out.add_term(lambda, Rational(chi) / lambda.z());
    return out;
}

}  // namespace afk
