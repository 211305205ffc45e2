#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace afk {

using Rational = mpq_class;

// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace afk
