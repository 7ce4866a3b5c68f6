#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace idxminer {

// Exact non-negative fraction used for support thresholds. Not reduced:
// "2/6" stays 2/6 so reports echo what the user typed.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  // Parses "n/d", an integer, or a decimal such as "0.05" (-> 5/100).
  static Ratio parse(std::string_view text);

  // Throws ParamError unless 0 < num/den <= 1.
  void validate_support() const;

  double value() const { return static_cast<double>(num) / den; }
  std::string str() const;  // "n/d"

  // count/total >= num/den, compared exactly.
  bool admits(std::uint64_t count, std::uint64_t total) const;
};

bool operator==(const Ratio& a, const Ratio& b);  // by value, not by spelling
bool operator<(const Ratio& a, const Ratio& b);

// Parses "start:stop:step" (inclusive stop) or a comma list into a strictly
// increasing list of thresholds in (0, 1].
std::vector<Ratio> parse_grid(std::string_view spec);

}  // namespace idxminer
