#pragma once

#include <stdexcept>
#include <string>

namespace qmgeo {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally broken input: non-square matrix, negative entries, unreadable file.
class MalformedInput : public Error {
public:
    explicit MalformedInput(const std::string& what) : Error(what) {}
};

/// Well-formed input outside an operation's domain (bad parameter range,
/// too few points, degenerate quadruple, axiom violation).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

} // namespace qmgeo
