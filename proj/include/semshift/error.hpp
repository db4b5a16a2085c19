#pragma once

#include <stdexcept>
#include <string>

namespace semshift {

// Raised for invalid data or violated preconditions. The CLI maps it to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace semshift
