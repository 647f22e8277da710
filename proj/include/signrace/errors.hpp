#pragma once

#include <stdexcept>
#include <string>

namespace signrace {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Request exceeds the desk-scale limits this library is sized for.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A completeness or consistency certificate could not be established.
class CertificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, long line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    long line() const noexcept { return line_; }

private:
    long line_;
};

class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace signrace
