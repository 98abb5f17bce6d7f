#pragma once

#include <stdexcept>
#include <string>

namespace ivp {

// Malformed textual input (expression syntax, literals).
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Invalid mathematical input or a violated precondition.
class ComputeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configurable resource limit (refinement depth, search space) was hit.
class LimitError : public ComputeError {
public:
    using ComputeError::ComputeError;
};

// An internal mathematical consistency check failed.  Either the input
// violates an assumption that cannot be checked up front (e.g. a factor
// claimed irreducible is not) or there is a bug.
class VerifyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ivp
