#pragma once

#include <stdexcept>
#include <string>

namespace kbound {

// Malformed user input: bad rational text, wrong vector length, unknown name.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Well-formed input outside an operation's domain (non-ample class,
// non-pseudo-effective class, rank != 1 where rank 1 is required, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The surface model itself cannot support the request: wrong signature,
// unbounded curve search, irrational threshold.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A proven identity or inequality failed. Always a bug or a corrupted model.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void ensure(bool condition, const std::string& what) {
    if (!condition) throw InternalError(what);
}

}  // namespace kbound
