#include "plateau/io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

namespace plateau {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t offset)
    : std::runtime_error(what), line_(line), offset_(offset) {}

namespace {

constexpr std::string_view kMagic = "PLTB1";

// Splits text into unsigned integer tokens with their line numbers.
class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  bool next(u64& value, std::size_t& line) {
    skip();
    if (pos_ >= text_.size()) return false;
    line = line_;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec == std::errc::result_out_of_range) throw ParseError("line " + std::to_string(line_) + ": number too large", line_, pos_);
    if (ec != std::errc() || (ptr != end && !is_space(*ptr) && *ptr != '#')) {
      std::size_t stop = pos_;
      while (stop < text_.size() && !is_space(text_[stop])) ++stop;
      throw ParseError("line " + std::to_string(line_) + ": expected a nonnegative integer, got '" +
                           std::string(text_.substr(pos_, stop - pos_)) + "'",
                       line_, pos_);
    }
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    last_line_ = line_;
    return true;
  }

  /// Line of the next token, or of the last token when the input is exhausted.
  std::size_t line() {
    skip();
    return pos_ >= text_.size() ? last_line_ : line_;
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (is_space(c)) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t last_line_ = 1;
};

DomainParams make_params(u64 p, u64 n, u64 m, std::size_t line, std::size_t offset) {
  if (p > 0xffffffffULL || n > 0xffffffffULL || m > 0xffffffffULL)
    throw ParseError("header values out of range", line, offset);
  try {
    return DomainParams(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(m));
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid header: ") + e.what(), line, offset);
  }
}

unsigned entry_width(u64 q) {
  if (q <= (u64{1} << 8)) return 1;
  if (q <= (u64{1} << 16)) return 2;
  return 4;
}

std::uint32_t read_u32(std::span<const unsigned char> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | static_cast<std::uint32_t>(b[at + 1]) << 8 |
         static_cast<std::uint32_t>(b[at + 2]) << 16 | static_cast<std::uint32_t>(b[at + 3]) << 24;
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v, unsigned width = 4) {
  for (unsigned k = 0; k < width; ++k) out.push_back(static_cast<unsigned char>(v >> (8 * k)));
}

}  // namespace

FuncTable parse_function_text(std::string_view text) {
  Tokenizer tok(text);
  u64 hdr[3];
  std::size_t line = 1;
  for (int k = 0; k < 3; ++k) {
    if (!tok.next(hdr[k], line)) throw ParseError("malformed header: expected 'p n m'", tok.line(), 0);
  }
  const DomainParams prm = make_params(hdr[0], hdr[1], hdr[2], line, 0);
  const u64 size = prm.input_size();
  const u64 q = prm.output_size();
  std::vector<std::uint32_t> values;
  values.reserve(size);
  u64 v = 0;
  std::size_t vline = line;
  while (tok.next(v, vline)) {
    if (values.size() == size)
      throw ParseError("line " + std::to_string(vline) + ": more than p^n = " + std::to_string(size) + " entries", vline, 0);
    if (v >= q)
      throw ParseError("line " + std::to_string(vline) + ": entry " + std::to_string(values.size()) + " has value " +
                           std::to_string(v) + " >= p^m = " + std::to_string(q),
                       vline, 0);
    values.push_back(static_cast<std::uint32_t>(v));
  }
  if (values.size() != size)
    throw ParseError("expected p^n = " + std::to_string(size) + " entries, found " + std::to_string(values.size()),
                     tok.line(), 0);
  return FuncTable(prm, std::move(values));
}

FuncTable parse_function_binary(std::span<const unsigned char> bytes) {
  const std::size_t header = kMagic.size() + 12;
  if (bytes.size() < header || std::string_view(reinterpret_cast<const char*>(bytes.data()), kMagic.size()) != kMagic)
    throw ParseError("binary input: missing PLTB1 header", 0, 0);
  const DomainParams prm =
      make_params(read_u32(bytes, 5), read_u32(bytes, 9), read_u32(bytes, 13), 0, kMagic.size());
  const u64 size = prm.input_size();
  const u64 q = prm.output_size();
  const unsigned w = entry_width(q);
  if (bytes.size() != header + size * w)
    throw ParseError("binary input: expected " + std::to_string(header + size * w) + " bytes, found " +
                         std::to_string(bytes.size()),
                     0, bytes.size());
  std::vector<std::uint32_t> values(size);
  for (u64 x = 0; x < size; ++x) {
    const std::size_t at = header + x * w;
    std::uint32_t v = 0;
    for (unsigned k = 0; k < w; ++k) v |= static_cast<std::uint32_t>(bytes[at + k]) << (8 * k);
    if (v >= q)
      throw ParseError("binary input: entry " + std::to_string(x) + " at offset " + std::to_string(at) + " has value " +
                           std::to_string(v) + " >= p^m = " + std::to_string(q),
                       0, at);
    values[x] = v;
  }
  return FuncTable(prm, std::move(values));
}

FuncTable parse_function_bytes(std::span<const unsigned char> bytes) {
  if (bytes.size() >= kMagic.size() &&
      std::string_view(reinterpret_cast<const char*>(bytes.data()), kMagic.size()) == kMagic)
    return parse_function_binary(bytes);
  return parse_function_text(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::vector<unsigned char> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in), {});
}

FuncTable parse_function_file(const std::string& path) {
  const auto bytes = read_file_bytes(path);
  try {
    return parse_function_bytes(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.offset());
  }
}

std::string emit_text(const FuncTable& f) {
  std::string out = std::to_string(f.p()) + " " + std::to_string(f.n()) + " " + std::to_string(f.m()) + "\n";
  const u64 per_line = 16;
  for (u64 x = 0; x < f.size(); ++x) {
    out += std::to_string(f[x]);
    out += (x + 1 == f.size() || (x + 1) % per_line == 0) ? '\n' : ' ';
  }
  return out;
}

std::vector<unsigned char> emit_binary(const FuncTable& f) {
  std::vector<unsigned char> out(kMagic.begin(), kMagic.end());
  put_u32(out, f.p());
  put_u32(out, f.n());
  put_u32(out, f.m());
  const unsigned w = entry_width(f.params().output_size());
  out.reserve(out.size() + f.size() * w);
  for (auto v : f.values()) put_u32(out, v, w);
  return out;
}

void write_function_file(const std::string& path, const FuncTable& f, bool binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  if (binary) {
    const auto bytes = emit_binary(f);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  } else {
    out << emit_text(f);
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

MatrixFp parse_matrix_text(std::string_view text) {
  Tokenizer tok(text);
  u64 hdr[3];
  std::size_t line = 1;
  for (int k = 0; k < 3; ++k)
    if (!tok.next(hdr[k], line)) throw ParseError("matrix: malformed header, expected 'p rows cols'", tok.line(), 0);
  if (hdr[0] > 0xffffffffULL || !is_prime(hdr[0])) throw ParseError("matrix: p must be prime", line, 0);
  if (hdr[1] == 0 || hdr[2] == 0 || hdr[1] > 64 || hdr[2] > 64) throw ParseError("matrix: bad dimensions", line, 0);
  const auto p = static_cast<std::uint32_t>(hdr[0]);
  MatrixFp mat(p, hdr[1], hdr[2]);
  for (u64 r = 0; r < hdr[1]; ++r)
    for (u64 c = 0; c < hdr[2]; ++c) {
      u64 v = 0;
      if (!tok.next(v, line)) throw ParseError("matrix: too few entries", tok.line(), 0);
      if (v >= p) throw ParseError("line " + std::to_string(line) + ": matrix entry " + std::to_string(v) + " >= p", line, 0);
      mat.set(r, c, static_cast<std::uint32_t>(v));
    }
  u64 extra = 0;
  if (tok.next(extra, line)) throw ParseError("line " + std::to_string(line) + ": matrix has too many entries", line, 0);
  return mat;
}

std::string emit_matrix(const MatrixFp& m) {
  std::ostringstream os;
  os << m.p() << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m.at(r, c);
    os << '\n';
  }
  return os.str();
}

}  // namespace plateau
