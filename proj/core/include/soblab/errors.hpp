#pragma once

#include <stdexcept>
#include <string>

namespace soblab {

// Geodesic machinery breaks down (antipodal points, degenerate metric).
class SingularityError : public std::domain_error {
public:
    explicit SingularityError(const std::string& what) : std::domain_error(what) {}
};

// Caller violated an operation contract (bad dimensions, mismatched grids).
class ContractViolation : public std::invalid_argument {
public:
    explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

// Grid too coarse for the requested computation; carries the offending node.
class ResolutionError : public std::runtime_error {
public:
    ResolutionError(const std::string& what, std::size_t node)
        : std::runtime_error(what + " (node " + std::to_string(node) + ")"), node_(node) {}
    std::size_t node() const { return node_; }

private:
    std::size_t node_;
};

}  // namespace soblab
