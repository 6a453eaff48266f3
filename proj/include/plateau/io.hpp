#pragma once

// Function files.
//
// Text: a header line "p n m", then p^n whitespace-separated integers in
// [0, p^m), entry x being F(x). '#' starts a comment that runs to end of line.
// Binary: magic "PLTB1", u32 p, n, m (little endian), then p^n little-endian
// entries of 1, 2 or 4 bytes chosen by p^m <= 2^8, 2^16, 2^32.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "plateau/algebra.hpp"

namespace plateau {

class ParseError : public std::runtime_error {
 public:
  /// `line` is 1-based for text input; `offset` is a byte offset for binary input.
  ParseError(const std::string& what, std::size_t line, std::size_t offset);

  std::size_t line() const { return line_; }
  std::size_t offset() const { return offset_; }

 private:
  std::size_t line_;
  std::size_t offset_;
};

FuncTable parse_function_text(std::string_view text);
FuncTable parse_function_binary(std::span<const unsigned char> bytes);
/// Detects the format from the magic bytes.
FuncTable parse_function_bytes(std::span<const unsigned char> bytes);
FuncTable parse_function_file(const std::string& path);

std::string emit_text(const FuncTable& f);
std::vector<unsigned char> emit_binary(const FuncTable& f);
void write_function_file(const std::string& path, const FuncTable& f, bool binary);

/// Matrix text: header "p rows cols", then rows * cols entries in row-major order.
MatrixFp parse_matrix_text(std::string_view text);
std::string emit_matrix(const MatrixFp& m);

std::vector<unsigned char> read_file_bytes(const std::string& path);

}  // namespace plateau
