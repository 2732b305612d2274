#pragma once

#include <stdexcept>
#include <string>

namespace hyperperc {

// Thrown when a computation would exceed a configured resource cap
// (ball vertex budget, enumeration cap, ...).  Distinct from
// std::invalid_argument, which we use for rejected inputs.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hyperperc
