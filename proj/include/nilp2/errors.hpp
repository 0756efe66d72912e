#pragma once

#include <stdexcept>
#include <string>

namespace nilp2 {

/// Bad arguments, mismatched fields, malformed symbols, parity violations.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed the configured budget.  The message names
/// the bits that would be required.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A synthesis self-check failed; indicates a bug, not bad input.
struct construction_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace nilp2
