#pragma once

#include <stdexcept>
#include <string>

namespace afk {

// Invalid domain input (bad window, out-of-range residue, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configured enumeration or degree bound was exceeded.
class BoundExceeded : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// A mathematical guarantee failed to hold; indicates a bug or convention error.
class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace afk
