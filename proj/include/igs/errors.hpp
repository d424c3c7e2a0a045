#pragma once

#include <stdexcept>
#include <string>

namespace igs {

// Bad user input: malformed files, out-of-range parameters, violated
// preconditions. Maps to CLI exit code 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured resource cap (sample count, total RR-set members, arc count)
// would be exceeded. Maps to CLI exit code 2.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace igs
