#include "idxminer/ratio.hpp"

#include <charconv>
#include <limits>

#include "idxminer/error.hpp"

namespace idxminer {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_uint(std::string_view s, std::string_view whole) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParamError("invalid number '" + std::string(whole) + "'");
  }
  return v;
}

// Decimal with `scale` fractional digits, scaled to an integer.
std::uint64_t scaled_decimal(std::string_view s, std::size_t scale,
                             std::string_view whole) {
  const auto dot = s.find('.');
  std::string digits(s.substr(0, dot));
  std::string frac = dot == std::string_view::npos ? "" : std::string(s.substr(dot + 1));
  if (digits.empty()) digits = "0";
  if (frac.size() > scale) throw ParamError("invalid number '" + std::string(whole) + "'");
  frac.append(scale - frac.size(), '0');
  return parse_uint(digits + frac, whole);
}

std::size_t frac_digits(std::string_view s) {
  const auto dot = s.find('.');
  return dot == std::string_view::npos ? 0 : s.size() - dot - 1;
}

std::uint64_t pow10(std::size_t k) {
  if (k > 18) throw ParamError("too many decimal digits");
  std::uint64_t p = 1;
  while (k-- > 0) p *= 10;
  return p;
}

}  // namespace

Ratio Ratio::parse(std::string_view text) {
  const auto s = trim(text);
  if (s.empty()) throw ParamError("empty fraction");
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    Ratio r{parse_uint(trim(s.substr(0, slash)), s), parse_uint(trim(s.substr(slash + 1)), s)};
    if (r.den == 0) throw ParamError("zero denominator in '" + std::string(s) + "'");
    return r;
  }
  const auto k = frac_digits(s);
  return Ratio{scaled_decimal(s, k, s), pow10(k)};
}

void Ratio::validate_support() const {
  if (den == 0 || num == 0 || num > den) {
    throw ParamError("support threshold " + str() + " outside (0, 1]");
  }
}

std::string Ratio::str() const { return std::to_string(num) + "/" + std::to_string(den); }

bool Ratio::admits(std::uint64_t count, std::uint64_t total) const {
  return static_cast<unsigned __int128>(count) * den >=
         static_cast<unsigned __int128>(num) * total;
}

bool operator==(const Ratio& a, const Ratio& b) {
  return static_cast<unsigned __int128>(a.num) * b.den ==
         static_cast<unsigned __int128>(b.num) * a.den;
}

bool operator<(const Ratio& a, const Ratio& b) {
  return static_cast<unsigned __int128>(a.num) * b.den <
         static_cast<unsigned __int128>(b.num) * a.den;
}

std::vector<Ratio> parse_grid(std::string_view spec) {
  const auto s = trim(spec);
  std::vector<Ratio> grid;
  if (s.find(':') != std::string_view::npos) {
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 + 1);
    if (c2 == std::string_view::npos || s.find(':', c2 + 1) != std::string_view::npos) {
      throw ParamError("grid must be start:stop:step, got '" + std::string(s) + "'");
    }
    const auto start = trim(s.substr(0, c1));
    const auto stop = trim(s.substr(c1 + 1, c2 - c1 - 1));
    const auto step = trim(s.substr(c2 + 1));
    for (auto part : {start, stop, step}) {
      if (part.find('/') != std::string_view::npos) {
        throw ParamError("range grids take decimal bounds, got '" + std::string(part) + "'");
      }
    }
    const auto scale =
        std::max({frac_digits(start), frac_digits(stop), frac_digits(step)});
    const auto den = pow10(scale);
    const auto a = scaled_decimal(start, scale, s);
    const auto b = scaled_decimal(stop, scale, s);
    const auto d = scaled_decimal(step, scale, s);
    if (d == 0) throw ParamError("grid step must be positive");
    if (a > b) throw ParamError("grid start exceeds stop");
    for (auto v = a; v <= b; v += d) grid.push_back(Ratio{v, den});
  } else {
    std::size_t pos = 0;
    while (pos <= s.size()) {
      const auto comma = s.find(',', pos);
      const auto item = s.substr(pos, comma == std::string_view::npos ? s.npos : comma - pos);
      grid.push_back(Ratio::parse(item));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  if (grid.empty()) throw ParamError("empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i].validate_support();
    if (i > 0 && !(grid[i - 1] < grid[i])) {
      throw ParamError("grid must be strictly increasing");
    }
  }
  return grid;
}

}  // namespace idxminer
