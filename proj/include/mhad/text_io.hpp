#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "mhad/designs.hpp"
#include "mhad/error.hpp"
#include "mhad/sign_matrix.hpp"

namespace mhad {

// Malformed input; line and column (both 1-based) locate the first offending
// character.
class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

// "MH <n> <m>\n" followed by n rows of '+'/'-', each newline-terminated.
std::string format_matrix(const SignMatrix& h, Modulus m);

struct MatrixFile {
  SignMatrix matrix;
  Modulus modulus;
};
MatrixFile parse_matrix(std::string_view text);

// "DES <v> <k> <lambda> <m>\n" followed by v rows over {0,1}.
std::string format_design(const ModularDesign& d);

struct DesignFile {
  BinaryMatrix matrix;
  DesignParams params;  // as declared in the header; not verified
};
DesignFile parse_design(std::string_view text);

}  // namespace mhad
