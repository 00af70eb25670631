#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <vector>

#include "kzm/lie_algebra.hpp"

namespace kzm::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;  // selftest found a failing criterion
inline constexpr int exit_domain = 2;
inline constexpr int exit_usage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "1,2,3" -> {1, 2, 3}; a malformed entry throws UsageError. Empty text is an empty list.
std::vector<int> parse_int_list(const std::string& text);
/// Weights of a rank-r algebra: ";"-separated groups, or one integer per weight when r = 1.
std::vector<Weight> parse_weights(const std::string& text, std::size_t rank);
/// "3", "7/2", "1.5", "2+0.5i", "-i".
std::complex<double> parse_complex(const std::string& text);

/// args excludes the program name. JSON goes to `out`, usage text to `err`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kzm::cli
