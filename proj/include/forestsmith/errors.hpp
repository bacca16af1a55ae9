#pragma once

#include <stdexcept>
#include <string>

namespace forestsmith {

/// A tree, bag or input violates a structural invariant (odd cardinality,
/// variable range, ...).
class StructuralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its documented parameter range.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exhaustive enumeration or serialization refused because the problem is
/// larger than the configured cap.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// A persisted document does not match its schema. The message starts with
/// a JSON-path style location such as `$.trees[2].lo`.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace forestsmith
