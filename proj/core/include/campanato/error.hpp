#pragma once

#include <stdexcept>
#include <string>

namespace campanato {

/// Bad arguments or malformed configuration (CLI exit code 2).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A field was evaluated outside its domain of definition.
class DomainViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An operation's documented precondition failed (e.g. support touches the boundary).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No admissible candidate ball survived filtering.
class EmptyCandidateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Internal cross-check failed (CLI exit code 3).
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace campanato
