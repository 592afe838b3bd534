#pragma once
#include <stdexcept>
#include <string>

namespace decomp {

enum class ErrorKind {
    InvalidBasepoint,
    TypeMismatch,
    NotCommuting,
    NotMono,
    NotComplete,
    NotDecomposition,
    IndexError,
    TruncationTooShallow,
    UnknownClass,
    TruncationUnsafe,
    NotTightAtTruncation,
    ZeroDiagonal,
    NotTriangular,
    NotPolynomialAtTruncation,
    NoMonoidalStructure,
    UnsupportedField,
    NotAPoset,
    NotACategory,
    ParseError,
    InvalidGroupoid,
    NotExplicit,
};

const char* kind_name(ErrorKind k);

class DecompError : public std::runtime_error {
public:
    DecompError(ErrorKind k, const std::string& what)
        : std::runtime_error(std::string(kind_name(k)) + ": " + what), kind_(k) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace decomp
