#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcgl {

// Every failure carries a stable machine-readable code (e.g. "NotDivisible",
// "AmbiguousPredecessor") and 1-based indices where relevant.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what, std::vector<int> where = {})
        : std::runtime_error(what), code_(std::move(code)), where_(std::move(where)) {}

    const std::string& code() const noexcept { return code_; }
    const std::vector<int>& where() const noexcept { return where_; }

private:
    std::string code_;
    std::vector<int> where_;
};

// Raised for malformed input rather than a failed mathematical check.
class InputError : public Error {
public:
    using Error::Error;
};

} // namespace pcgl
