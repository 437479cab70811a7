#pragma once

// Exact arithmetic primitives shared across the library. Every "exact" code
// path works in BigInt/Rat; doubles appear only in Monte Carlo estimators
// and report output.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tamperlab {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Thrown when an operation is asked to exceed its documented size cap.
// Every cap in the library funnels through this type so the CLI can map
// cap violations to a uniform message and exit code.
class CapError : public std::runtime_error {
 public:
  CapError(const std::string& op, const std::string& what_capped, long cap, long got)
      : std::runtime_error("cap exceeded: " + op + " supports " + what_capped +
                           " <= " + std::to_string(cap) + ", got " + std::to_string(got)) {}
};

inline void require_cap(const char* op, const char* what, long cap, long got) {
  if (got > cap) throw CapError(op, what, cap, got);
}

// Memoized factorial. Cap documented at kMaxFactorial.
inline constexpr int kMaxFactorial = 2048;
const BigInt& factorial(int n);

BigInt binomial(int n, int k);

// base^exp for integer exp (negative allowed; base must be nonzero then).
Rat rat_pow(const Rat& base, long exp);

double to_double(const Rat& r);

// "num/den", or just "num" when the denominator is 1.
std::string rat_str(const Rat& r);

// Accepts "a/b", a plain integer, or a decimal literal ("0.25" -> 1/4).
Rat parse_rat(std::string_view s);

}  // namespace tamperlab
