#pragma once

#include <stdexcept>
#include <string>

namespace dnamatch {

/// Raised when user-supplied data (files, flags, parameters) is invalid.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency check fails.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace dnamatch
