#include "fatpoints/literals.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <vector>

namespace fatpoints {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view token, std::string_view whole) {
  token = trim(token);
  std::int64_t v = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (token.empty() || ec != std::errc() || ptr != last)
    throw LiteralError("malformed integer '" + std::string(token) + "' in '" + std::string(whole) + "'");
  return v;
}

std::vector<std::int64_t> parse_runs(std::string_view text, std::string_view whole) {
  std::vector<std::int64_t> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string_view item = text.substr(start, comma - start);
    const std::size_t caret = item.find('^');
    std::int64_t value = 0;
    std::int64_t count = 1;
    if (caret == std::string_view::npos) {
      value = parse_int(item, whole);
    } else {
      value = parse_int(item.substr(0, caret), whole);
      count = parse_int(item.substr(caret + 1), whole);
      if (count < 1) throw LiteralError("run length must be positive in '" + std::string(whole) + "'");
    }
    out.insert(out.end(), static_cast<std::size_t>(count), value);
    start = comma + 1;
  }
  return out;
}

template <typename Vec>
std::string render_runs(const Vec& v) {
  std::string out;
  Eigen::Index i = 0;
  while (i < v.size()) {
    Eigen::Index j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if (!out.empty()) out += ',';
    out += std::to_string(v[i]);
    if (j - i > 1) out += '^' + std::to_string(j - i);
    i = j;
  }
  return out;
}

}  // namespace

FatPointScheme parse_scheme(std::string_view text) {
  const std::vector<std::int64_t> m = parse_runs(text, text);
  for (std::int64_t v : m) {
    if (v < 0) throw LiteralError("negative multiplicity in scheme '" + std::string(text) + "'");
  }
  return FatPointScheme(Eigen::Map<const IntVector<std::int64_t>>(m.data(), static_cast<Eigen::Index>(m.size())));
}

DivisorClass parse_class(std::string_view text) {
  const std::size_t semi = text.find(';');
  if (semi == std::string_view::npos) throw LiteralError("class literal needs 'd; r1,r2,...': '" + std::string(text) + "'");
  const std::int64_t d = parse_int(text.substr(0, semi), text);
  const std::vector<std::int64_t> r = parse_runs(text.substr(semi + 1), text);
  return {d, Eigen::Map<const IntVector<std::int64_t>>(r.data(), static_cast<Eigen::Index>(r.size()))};
}

std::string render_scheme(const FatPointScheme& z) { return render_runs(z.mult); }

std::string render_class(const DivisorClass& c, bool sorted) {
  IntVector<std::int64_t> m = c.mult;
  if (sorted) std::sort(m.data(), m.data() + m.size(), std::greater<>());
  const std::string runs = render_runs(m);
  return std::to_string(c.degree) + ";" + (runs.empty() ? "" : " " + runs);
}

}  // namespace fatpoints
