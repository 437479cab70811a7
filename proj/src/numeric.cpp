#include "tamperlab/numeric.hpp"

#include <cctype>
#include <mutex>
#include <vector>

namespace tamperlab {

const BigInt& factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  require_cap("factorial", "n", kMaxFactorial, n);
  static std::vector<BigInt> table = [] {
    std::vector<BigInt> t(kMaxFactorial + 1);
    t[0] = 1;
    for (int i = 1; i <= kMaxFactorial; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table[n];
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

Rat rat_pow(const Rat& base, long exp) {
  if (exp == 0) return Rat(1);
  if (base == 0 && exp < 0) throw std::domain_error("rat_pow: 0 to a negative power");
  Rat acc(1);
  Rat b = exp > 0 ? base : Rat(denominator(base), numerator(base));
  long e = exp > 0 ? exp : -exp;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

std::string rat_str(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

Rat parse_rat(std::string_view s) {
  auto fail = [&] { throw std::invalid_argument("parse_rat: bad rational '" + std::string(s) + "'"); };
  if (s.empty()) fail();
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::string num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (num.empty() || den.empty()) fail();
    Rat r;
    try {
      r = Rat(BigInt(num), BigInt(den));
    } catch (const std::exception&) {
      fail();
    }
    return r;
  }
  auto dot = s.find('.');
  if (dot == std::string_view::npos) {
    try {
      return Rat(BigInt(std::string(s)));
    } catch (const std::exception&) {
      fail();
    }
  }
  std::string digits(s.substr(0, dot));
  std::string frac(s.substr(dot + 1));
  bool neg = false;
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
    neg = digits[0] == '-';
    digits.erase(digits.begin());
  }
  if (digits.empty() && frac.empty()) fail();
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c))) fail();
  for (char c : frac)
    if (!std::isdigit(static_cast<unsigned char>(c))) fail();
  BigInt den = 1;
  for (size_t i = 0; i < frac.size(); ++i) den *= 10;
  BigInt num = digits.empty() ? BigInt(0) : BigInt(digits);
  num = num * den + (frac.empty() ? BigInt(0) : BigInt(frac));
  if (neg) num = -num;
  return Rat(num, den);
}

}  // namespace tamperlab
