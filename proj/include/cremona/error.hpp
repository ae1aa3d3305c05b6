#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cremona {

// A caller broke an operation's contract (bad dimensions, out-of-range
// arguments, wrong ambient (n,d)).
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A structural precondition of a reduction or classifier does not hold,
// e.g. deleting a vertex that is not a leaf.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// The requested computation is outside what the engine will attempt.
class Refusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace cremona
