#include "tlms/error.hpp"

namespace tlms {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& msg)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column),
      detail_(msg) {}

std::string to_string(const Diagnostic& d) { return d.where + ": " + d.what; }

}  // namespace tlms
