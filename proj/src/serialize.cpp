#include "afk/serialize.hpp"

#include <charconv>

#include "afk/errors.hpp"

namespace afk {

std::string word_name(const AffinePermutation& w) {
    if (w.is_identity()) return "id";
    std::string out;
    for (int i : w.reduced_word()) out += "s" + std::to_string(i);
    return out;
}

Json to_json(const AffinePermutation& w) { return Json{{"window", w.window()}, {"word", w.reduced_word()}}; }

AffinePermutation permutation_from_json(int n, const Json& j) {
    try {
        if (j.contains("window")) {
            auto w = AffinePermutation::from_window(j.at("window").get<std::vector<int>>());
            if (w.n() != n) throw InvalidArgument("window has the wrong size");
            return w;
        }
        return AffinePermutation::from_word(n, j.at("word").get<std::vector<int>>());
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed permutation: ") + e.what());
    }
}

Json to_json(const Partition& lambda) { return Json(lambda.parts()); }

Json to_json(const SymFunc& f) {
    Json terms = Json::array();
    for (const auto& [lambda, c] : f.terms()) terms.push_back({{"partition", lambda.parts()}, {"coeff", to_string(c)}});
    Json out{{"basis", basis_name(f.basis())}};
    out["k"] = f.k() ? Json(*f.k()) : Json(nullptr);
    out["terms"] = std::move(terms);
    return out;
}

Json to_json(const NilCoxElement& x) {
    Json terms = Json::array();
    for (const auto& [w, c] : x.terms()) terms.push_back({{"w", to_json(w)}, {"coeff", to_string(c)}});
    return Json{{"n", x.n()}, {"terms", std::move(terms)}};
}

Json to_json(const RnElement& f) {
    Json terms = Json::array();
    for (const auto& [key, c] : f.terms())
        terms.push_back({{"p", key.first.parts()}, {"x", key.second}, {"coeff", to_string(c)}});
    return Json{{"n", f.n()}, {"terms", std::move(terms)}};
}

RnElement rn_element_from_json(const Json& j) {
    try {
        const int n = j.at("n").get<int>();
        RnElement::Terms raw;
        for (const auto& t : j.at("terms"))
            raw[{Partition(t.at("p").get<std::vector<int>>()), t.at("x").get<std::vector<int>>()}] +=
                parse_rational(t.at("coeff").get<std::string>());
        return RnElement::normal_form(n, raw);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed R_n element: ") + e.what());
    }
}

Json to_json(const FKWordSum& x) {
    Json out = Json::array();
    for (const auto& [word, c] : x) {
        Json letters = Json::array();
        for (const auto& l : word) letters.push_back({{"i", l.i}, {"j", l.j}});
        out.push_back({{"sign", to_string(c)}, {"word", std::move(letters)}});
    }
    return out;
}

Json to_json(const RibbonChain& chain) {
    Json links = Json::array();
    for (const auto& cover : chain.covers)
        links.push_back({{"index", {cover.index.j1, cover.index.j2}}, {"to", cover.lower.window()}});
    return Json{{"sigma", chain.sign}, {"size", chain.covers.size()}, {"chain", std::move(links)}};
}

Json to_json(const RibbonTableau& t) {
    Json ribbons = Json::array();
    for (const auto& r : t.ribbons) ribbons.push_back(to_json(r));
    return Json{{"sigma", t.sigma}, {"weight", t.weight}, {"ribbons", std::move(ribbons)}};
}

Json to_json(const std::map<AffinePermutation, Rational>& coefficients) {
    Json out = Json::object();
    for (const auto& [w, c] : coefficients) out[word_name(w)] = to_string(c);
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    if (text.empty()) return out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        int value = 0;
        const char* first = text.data() + pos;
        const char* last = text.data() + comma;
        while (first < last && *first == ' ') ++first;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last || first == last)
            throw InvalidArgument("expected a comma-separated list of integers, got '" + text + "'");
        out.push_back(value);
        pos = comma + 1;
    }
    return out;
}

}  // namespace afk
