#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "pathchain/errors.hpp"

namespace pathchain {

/// GF(q) for a runtime prime modulus q. Elements are canonical residues in
/// [0, q). The default modulus 32749 is the largest prime below 2^15, so the
/// small integer coefficients produced by the structural algorithm never
/// alias zero.
class PrimeField {
 public:
  using Element = std::uint64_t;

  static constexpr std::uint64_t kDefaultModulus = 32749;

  explicit PrimeField(std::uint64_t modulus = kDefaultModulus) : q_(modulus) {
    if (q_ < 2 || q_ >= (std::uint64_t{1} << 31) || !is_prime(q_))
      throw Error("field modulus must be a prime below 2^31, got " + std::to_string(modulus));
  }

  std::uint64_t modulus() const noexcept { return q_; }
  std::string name() const { return "gf:" + std::to_string(q_); }

  Element zero() const noexcept { return 0; }
  Element one() const noexcept { return 1 % q_; }

  Element from_int(std::int64_t v) const noexcept {
    const std::int64_t r = v % static_cast<std::int64_t>(q_);
    return static_cast<Element>(r < 0 ? r + static_cast<std::int64_t>(q_) : r);
  }

  bool is_zero(Element a) const noexcept { return a == 0; }
  bool eq(Element a, Element b) const noexcept { return a == b; }

  Element add(Element a, Element b) const noexcept {
    Element s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Element sub(Element a, Element b) const noexcept { return a >= b ? a - b : a + q_ - b; }
  Element neg(Element a) const noexcept { return a == 0 ? 0 : q_ - a; }
  Element mul(Element a, Element b) const noexcept { return (a * b) % q_; }

  Element inv(Element a) const {
    if (a == 0) throw Error("division by zero in GF(" + std::to_string(q_) + ")");
    // Fermat: a^(q-2) mod q.
    Element result = one(), base = a;
    std::uint64_t e = q_ - 2;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  std::string to_string(Element a) const { return std::to_string(a); }

  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

 private:
  std::uint64_t q_;
};

/// Arbitrary-precision rationals, used as the paranoid cross-check backend.
class RationalField {
 public:
  using Element = boost::multiprecision::cpp_rational;

  std::string name() const { return "rational"; }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(std::int64_t v) const { return Element(v); }

  bool is_zero(const Element& a) const { return a == 0; }
  bool eq(const Element& a, const Element& b) const { return a == b; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }

  Element inv(const Element& a) const {
    if (a == 0) throw Error("division by zero in the rational field");
    return Element(1) / a;
  }

  Element div(const Element& a, const Element& b) const {
    if (b == 0) throw Error("division by zero in the rational field");
    return a / b;
  }

  std::string to_string(const Element& a) const { return a.str(); }
};

}  // namespace pathchain
