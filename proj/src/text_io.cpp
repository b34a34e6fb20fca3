#include "mhad/text_io.hpp"

#include <charconv>
#include <limits>
#include <vector>

namespace mhad {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error(ErrorCode::Parse, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

std::string format_matrix(const SignMatrix& h, Modulus m) {
  const std::size_t n = h.order();
  std::string out = "MH " + std::to_string(n) + " " + std::to_string(m.value()) + "\n";
  out.reserve(out.size() + n * (n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out.push_back(h.is_negative(r, c) ? '-' : '+');
    out.push_back('\n');
  }
  return out;
}

std::string format_design(const ModularDesign& d) {
  const auto& p = d.params();
  const std::size_t v = d.matrix().order();
  std::string out = "DES " + std::to_string(p.v()) + " " + std::to_string(p.k()) + " " + std::to_string(p.lambda()) +
                    " " + std::to_string(p.m()) + "\n";
  for (std::size_t r = 0; r < v; ++r) {
    for (std::size_t c = 0; c < v; ++c) out.push_back(d.matrix().at(r, c) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

namespace {

// Splits text into newline-terminated lines; a missing final newline is an error.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos)
      throw ParseError(lines.size() + 1, text.size() - start + 1, "missing newline at end of line");
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

class HeaderReader {
public:
  HeaderReader(std::string_view line) : line_(line) {}

  void expect_keyword(std::string_view keyword) {
    if (line_.substr(0, keyword.size()) != keyword) {
      std::size_t i = 0;
      while (i < keyword.size() && i < line_.size() && line_[i] == keyword[i]) ++i;
      throw ParseError(1, i + 1, "expected header keyword '" + std::string(keyword) + "'");
    }
    pos_ = keyword.size();
  }

  std::int64_t next_integer(const char* what) {
    if (pos_ >= line_.size() || line_[pos_] != ' ') throw ParseError(1, pos_ + 1, std::string("expected a space before ") + what);
    ++pos_;
    const char* begin = line_.data() + pos_;
    const char* end = line_.data() + line_.size();
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin || *begin == '-' || *begin == '+')
      throw ParseError(1, pos_ + 1, std::string("expected a non-negative integer for ") + what);
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  void expect_end() {
    if (pos_ != line_.size()) throw ParseError(1, pos_ + 1, "unexpected trailing characters in header");
  }

private:
  std::string_view line_;
  std::size_t pos_ = 0;
};

constexpr std::int64_t kMaxOrder = 1 << 16;

template <class OnChar>
void read_rows(const std::vector<std::string_view>& lines, std::size_t n, OnChar&& on_char) {
  if (lines.size() < n + 1)
    throw ParseError(lines.size() + 1, 1, "expected " + std::to_string(n) + " rows, found " + std::to_string(lines.size() - 1));
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = lines[r + 1];
    for (std::size_t c = 0; c < row.size() && c < n; ++c) {
      if (!on_char(r, c, row[c])) throw ParseError(r + 2, c + 1, std::string("unexpected character '") + row[c] + "'");
    }
    if (row.size() < n) throw ParseError(r + 2, row.size() + 1, "row too short, expected " + std::to_string(n) + " entries");
    if (row.size() > n) throw ParseError(r + 2, n + 1, "row too long, expected " + std::to_string(n) + " entries");
  }
  if (lines.size() > n + 1) throw ParseError(n + 2, 1, "unexpected content after the last row");
}

}  // namespace

MatrixFile parse_matrix(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty input");
  HeaderReader header(lines[0]);
  header.expect_keyword("MH");
  const auto n = header.next_integer("the order");
  const auto m = header.next_integer("the modulus");
  header.expect_end();
  if (n < 1 || n > kMaxOrder) throw ParseError(1, 4, "order out of range");
  if (m == 1) throw ParseError(1, lines[0].size(), "modulus must be 0 or >= 2");
  SignMatrix h(static_cast<std::size_t>(n));
  read_rows(lines, static_cast<std::size_t>(n), [&h](std::size_t r, std::size_t c, char ch) {
    if (ch == '-') h.bits().set(r, c, true);
    return ch == '+' || ch == '-';
  });
  return MatrixFile{std::move(h), Modulus(m)};
}

DesignFile parse_design(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty input");
  HeaderReader header(lines[0]);
  header.expect_keyword("DES");
  const auto v = header.next_integer("v");
  const auto k = header.next_integer("k");
  const auto lambda = header.next_integer("lambda");
  const auto m = header.next_integer("m");
  header.expect_end();
  if (v < 2 || v > kMaxOrder) throw ParseError(1, 5, "design order must be >= 2");
  if (m < 2) throw ParseError(1, lines[0].size(), "design modulus must be >= 2");
  BinaryMatrix d(static_cast<std::size_t>(v));
  read_rows(lines, static_cast<std::size_t>(v), [&d](std::size_t r, std::size_t c, char ch) {
    if (ch == '1') d.set(r, c, true);
    return ch == '0' || ch == '1';
  });
  return DesignFile{std::move(d), DesignParams(v, k, lambda, m)};
}

}  // namespace mhad
