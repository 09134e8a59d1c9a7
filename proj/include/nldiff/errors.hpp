#pragma once

#include <stdexcept>
#include <string>

namespace nldiff {

// Bad caller input (sizes, margins, nonpositive steps, ...).
class argument_error : public std::invalid_argument {
public:
    explicit argument_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Malformed file content.
class format_error : public std::runtime_error {
public:
    explicit format_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical routine could not deliver its guarantee (lost diagonal
// dominance, unbounded LP, iteration cap, failed certificate).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace nldiff
