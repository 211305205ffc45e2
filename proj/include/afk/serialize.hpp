#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "afk/affine_perm.hpp"
#include "afk/fk_action.hpp"
#include "afk/nilcoxeter.hpp"
#include "afk/schubert_ring.hpp"
#include "afk/strong_order.hpp"
#include "afk/symfunc.hpp"

namespace afk {

using Json = nlohmann::ordered_json;

/// "s1s0" style name from the reduced word; "id" for the identity.
std::string word_name(const AffinePermutation& w);

/// {"window": [...], "word": [...]}
Json to_json(const AffinePermutation& w);
AffinePermutation permutation_from_json(int n, const Json& j);

Json to_json(const Partition& lambda);
/// {"basis": "m", "k": null, "terms": [{"partition": [...], "coeff": "p/q"}]}
Json to_json(const SymFunc& f);
/// {"n": n, "terms": [{"w": {...}, "coeff": "p/q"}]}
Json to_json(const NilCoxElement& x);
/// {"n": n, "terms": [{"p": [...], "x": [...], "coeff": "p/q"}]}
Json to_json(const RnElement& f);
RnElement rn_element_from_json(const Json& j);
/// {"sign": "c", "word": [{"i": i, "j": j}, ...]} per term
Json to_json(const FKWordSum& x);
/// {"sigma": s, "size": m, "chain": [{"index": [j1, j2], "to": window}]}
Json to_json(const RibbonChain& chain);
/// {"sigma": s, "weight": [...], "ribbons": [...]}
Json to_json(const RibbonTableau& t);
/// {"s1s0": "2", ...} in canonical permutation order.
Json to_json(const std::map<AffinePermutation, Rational>& coefficients);

/// Parses "2,1,0" (empty for none); throws InvalidArgument.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace afk
