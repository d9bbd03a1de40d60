#pragma once

#include <stdexcept>
#include <string>

namespace cliffsym {

enum class ErrorKind {
    AlgebraMismatch,
    ZeroParavector,
    NotParavector,
    LimitExceeded,
    Divergent,
    QuadratureNotConverged,
    SingularPath,
    SingularOnSimplex,
    SingularOnPath,
    EigenvalueOutsideContour,
    DuplicateNodes,
    SyntaxError,
    NestedSym,
    IndexOutOfRange,
    UnknownSuite,
    InvalidArgument,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace cliffsym
