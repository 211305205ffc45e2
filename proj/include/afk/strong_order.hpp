#pragma once

#include <map>
#include <vector>

#include "afk/affine_perm.hpp"
#include "afk/fk_action.hpp"
#include "afk/nilcoxeter.hpp"
#include "afk/partition.hpp"
#include "afk/symfunc.hpp"

namespace afk {

/// Sequence of positive integers.
using Composition = std::vector<int>;

/// Throws InvalidArgument unless every part is positive.
void check_composition(const Composition& J);
int composition_size(const Composition& J);

/// Position p is an ascent when labels[p] < labels[p+1].  The composition
/// records the run lengths between ascents.
Composition ascent_composition(const std::vector<long>& labels);

/// Sum of the endpoints of all descending paths of marked covers w.r.t. a whose
/// label sequence has ascent composition J.
NilCoxElement bss_apply(const NilCoxElement& x, const Composition& J, long a);

/// k-strong-ribbon: an MN chain w.r.t. 0.
using RibbonChain = MNChain;

std::vector<RibbonChain> ribbons(const AffinePermutation& w, int m);

/// Signed number of ribbons of size m from w to v.
long mn_coefficient(const AffinePermutation& w, int m, const AffinePermutation& v);

struct RibbonTableau {
    std::vector<RibbonChain> ribbons;
    Composition weight;
    int sigma = 1;
};

/// Tableaux from u down to the identity whose ribbon sizes are `weight`, in order.
std::vector<RibbonTableau> ribbon_tableaux(const AffinePermutation& u, const Composition& weight);

/// Sum of sigma(T) over the tableaux from u to the identity of the given weight.
long ribbon_character(const AffinePermutation& u, const Composition& weight);

/// k-Schur function of a 0-Grassmannian u as sum_lambda chi(lambda) / z_lambda p_lambda,
/// with chi(lambda) read off the weight lambda in weakly decreasing order.
SymFunc k_schur_via_ribbons(const AffinePermutation& u);

}  // namespace afk
