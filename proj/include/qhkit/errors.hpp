#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qhkit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point does not belong to the space, region, or map domain it was given to.
class MembershipError : public Error {
public:
    using Error::Error;
};

/// A point list failed membership at a specific position.
class IndexedMembershipError : public MembershipError {
public:
    IndexedMembershipError(std::size_t index, const std::string& what)
        : MembershipError("point " + std::to_string(index) + ": " + what), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Graph or discretization is disconnected between the requested points.
class ConnectivityError : public Error {
public:
    using Error::Error;
};

/// Invalid mesh, scenario, or command-line configuration.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// Discretization too coarse for the requested construction.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// Maps cannot be composed (image of the inner map is not the source of the outer one).
class CompositionError : public Error {
public:
    using Error::Error;
};

/// Input data violates a structural precondition (e.g. non-monotone tables).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A numeric parameter lies outside the range where a formula is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace qhkit
