#pragma once

#include <stdexcept>
#include <string>

namespace spinem {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value outside an operation's numeric domain (|v| >= c, unnormalized U, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A malformed argument (index out of range, zero direction vector, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// An object violating its own invariant (non-normalized spinor, empty record).
class InvalidStateError : public Error {
public:
    using Error::Error;
};

/// Evaluation at a singular point of a field configuration.
class SingularPointError : public Error {
public:
    using Error::Error;
};

/// An invalid field configuration (bad family parameters).
class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

enum class ParseErrorKind {
    Syntax,
    UnknownSection,
    UnknownKey,
    BadNumber,
    Constraint,
    Normalization,
};

constexpr const char* to_string(ParseErrorKind k) {
    switch (k) {
    case ParseErrorKind::Syntax: return "syntax";
    case ParseErrorKind::UnknownSection: return "unknown-section";
    case ParseErrorKind::UnknownKey: return "unknown-key";
    case ParseErrorKind::BadNumber: return "bad-number";
    case ParseErrorKind::Constraint: return "constraint";
    case ParseErrorKind::Normalization: return "normalization";
    }
    return "?";
}

/// Scenario-text parse failure carrying the 1-based line it was found on.
class ParseError : public Error {
public:
    ParseError(ParseErrorKind kind, int line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message + " [" +
                to_string(kind) + "]"),
          kind_(kind),
          line_(line) {}

    ParseErrorKind kind() const noexcept { return kind_; }
    int line() const noexcept { return line_; }

private:
    ParseErrorKind kind_;
    int line_;
};

}  // namespace spinem
