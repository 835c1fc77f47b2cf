#pragma once

// Exact affine maps of the real line: the dyadic model x -> 2^k x + c of
// BS(1,2), and the rational model x -> (n/m)^k x + c used for BS(m,n)+.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

#include "natext/error.hpp"
#include "natext/snf.hpp"

namespace natext {

using BigRational = boost::multiprecision::cpp_rational;

/// Dyadic rational num * 2^exp, kept canonical (num odd, or num == exp == 0).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt num, std::int64_t exp = 0) : num_(std::move(num)), exp_(exp) { normalize(); }
  Dyadic(int v) : Dyadic(BigInt(v)) {}

  BigInt const& numerator() const noexcept { return num_; }
  std::int64_t exponent() const noexcept { return exp_; }
  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return exp_ >= 0; }

  /// this * 2^k
  Dyadic scaled(std::int64_t k) const {
    if (num_ == 0) return {};
    Dyadic d;
    d.num_ = num_;
    d.exp_ = exp_ + k;
    return d;
  }

  Dyadic operator-() const {
    Dyadic d;
    d.num_ = -num_;
    d.exp_ = exp_;
    return d;
  }

  friend Dyadic operator+(Dyadic const& a, Dyadic const& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::int64_t e = std::min(a.exp_, b.exp_);
    BigInt x = a.num_ << static_cast<unsigned>(a.exp_ - e);
    BigInt y = b.num_ << static_cast<unsigned>(b.exp_ - e);
    return Dyadic(x + y, e);
  }
  friend Dyadic operator-(Dyadic const& a, Dyadic const& b) { return a + (-b); }

  /// Integer value; requires is_integer().
  BigInt to_integer() const {
    if (!is_integer()) throw InvalidArgument("dyadic value is not an integer");
    return num_ << static_cast<unsigned>(exp_);
  }

  BigRational to_rational() const {
    if (exp_ >= 0) return BigRational(num_ << static_cast<unsigned>(exp_));
    return BigRational(num_, BigInt(1) << static_cast<unsigned>(-exp_));
  }

  std::string to_string() const {
    if (exp_ >= 0) return BigInt(num_ << static_cast<unsigned>(exp_)).str();
    return num_.str() + "/" + (BigInt(1) << static_cast<unsigned>(-exp_)).str();
  }

  friend bool operator==(Dyadic const&, Dyadic const&) = default;
  friend std::strong_ordering operator<=>(Dyadic const& a, Dyadic const& b) {
    auto d = a - b;
    if (d.num_ < 0) return std::strong_ordering::less;
    if (d.num_ > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  void normalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    unsigned tz = boost::multiprecision::lsb(num_ < 0 ? BigInt(-num_) : num_);
    if (tz > 0) {
      num_ >>= tz;  // exact: the low bits are zero
      exp_ += tz;
    }
  }

  BigInt num_ = 0;
  std::int64_t exp_ = 0;
};

/// The map x -> 2^k x + c.  Products compose as functions: (f*g)(x) = f(g(x)).
struct DyadicAffine {
  std::int64_t k = 0;
  Dyadic c;

  static DyadicAffine identity() { return {}; }

  friend DyadicAffine operator*(DyadicAffine const& f, DyadicAffine const& g) {
    return {f.k + g.k, g.c.scaled(f.k) + f.c};
  }

  DyadicAffine inverse() const { return {-k, -(c.scaled(-k))}; }

  bool is_identity() const { return k == 0 && c.is_zero(); }

  Dyadic apply(Dyadic const& x) const { return x.scaled(k) + c; }

  std::string to_string() const {
    return "x -> 2^" + std::to_string(k) + " x + " + c.to_string();
  }

  friend bool operator==(DyadicAffine const&, DyadicAffine const&) = default;
  friend std::strong_ordering operator<=>(DyadicAffine const& a, DyadicAffine const& b) {
    if (auto o = a.k <=> b.k; o != 0) return o;
    return a.c <=> b.c;
  }
};

/// The map x -> q^k x + c with fixed slope base q = n/m.  Models BS(m,n) via
/// a: x -> (n/m) x and b: x -> x + 1; faithful on the positive monoid, not on
/// the group.
struct RationalAffine {
  BigRational base = 1;
  std::int64_t k = 0;
  BigRational c = 0;

  static RationalAffine identity(BigRational base) { return {std::move(base), 0, 0}; }

  static BigRational power(BigRational const& q, std::int64_t e) {
    BigRational r = 1;
    BigRational b = e >= 0 ? q : BigRational(1) / q;
    for (std::int64_t i = 0; i < (e >= 0 ? e : -e); ++i) r *= b;
    return r;
  }

  friend RationalAffine operator*(RationalAffine const& f, RationalAffine const& g) {
    if (f.base != g.base) throw FamilyMismatch("affine maps with different slope bases");
    return {f.base, f.k + g.k, power(f.base, f.k) * g.c + f.c};
  }

  RationalAffine inverse() const { return {base, -k, -(power(base, -k) * c)}; }

  bool is_identity() const { return k == 0 && c == 0; }

  friend bool operator==(RationalAffine const&, RationalAffine const&) = default;
};

}  // namespace natext
