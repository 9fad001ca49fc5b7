#pragma once

#include <stdexcept>
#include <string>

namespace erw {

/// A parameter violates a model invariant. The message names the invariant.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A simulated trajectory never reached a requested site.
class NotReached : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidParameter(what);
}

}  // namespace erw
