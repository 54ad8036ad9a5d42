#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tlms {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error { public: using Error::Error; };
class DegenerateInputError : public Error { public: using Error::Error; };
class NotCompleteError : public Error { public: using Error::Error; };
class UnsupportedError : public Error { public: using Error::Error; };
class InconsistentSplittingError : public Error { public: using Error::Error; };
class FanMismatchError : public Error { public: using Error::Error; };
class SizeMismatchError : public Error { public: using Error::Error; };
class RankMismatchError : public Error { public: using Error::Error; };
class RegularityError : public Error { public: using Error::Error; };
class SupportError : public Error { public: using Error::Error; };
class NilpotencyError : public Error { public: using Error::Error; };
class NotAdjacentError : public Error { public: using Error::Error; };
class NotIndecomposableError : public Error { public: using Error::Error; };
class SeparabilityError : public Error { public: using Error::Error; };
class InvalidMorphismError : public Error { public: using Error::Error; };
class OverflowError : public Error { public: using Error::Error; };

/// Raised when a multi-section or data block fails validation at an API boundary.
class InvalidInputError : public Error { public: using Error::Error; };

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& msg);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

/// A single validation finding: which cell or pair, and which invariant failed.
struct Diagnostic {
    std::string where;
    std::string what;
};

std::string to_string(const Diagnostic& d);

}  // namespace tlms
