#pragma once

#include <stdexcept>
#include <string>

namespace clockwork {

/// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A constructed value violates one of its invariants.
class ValidityError : public Error {
public:
    using Error::Error;
};

/// A label was looked up outside the finite set it should live in.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A monadic value was combined with a kernel of a different tag.
class TagError : public Error {
public:
    using Error::Error;
};

/// Endpoints of charts, lenses or morphisms do not line up.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// An enumeration would visit more candidates than the configured budget.
/// Enumerations never truncate silently; they throw this instead.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// A process is not constant on the blocks of its filtration level.
class AdaptednessError : public Error {
public:
    using Error::Error;
};

/// A behavior fails the invariance premise of gluing; carries a witness.
class GluingError : public Error {
public:
    using Error::Error;
};

/// A null-mass fiber had no element to canonicalize a conditional at.
class CanonicalizationError : public Error {
public:
    using Error::Error;
};

} // namespace clockwork
