#pragma once

// Britton normal form for the Baumslag-Solitar groups
//
//     BS(m,n) = < a, b | a b^m a^-1 = b^n >   (equivalently a b^m = b^n a)
//
// with a the stable letter (generator index 0) and b the base letter
// (generator index 1).  An element is stored as
//
//     b^{e0} a^{s1} b^{e1} ... a^{sk} b^{ek}
//
// where every exponent standing immediately left of a^{+1} lies in [0,n),
// every exponent immediately left of a^{-1} lies in [0,m), and no pinch
// a b^{jm} a^-1 or a^-1 b^{jn} a survives.  This form is unique, so equality
// of elements is equality of forms.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "natext/error.hpp"
#include "natext/snf.hpp"
#include "natext/words.hpp"

namespace natext {

class BrittonForm {
 public:
  static constexpr Letter kStable = 0;
  static constexpr Letter kBase = 1;

  struct Syllable {
    std::int8_t sign;  // exponent of the stable letter
    BigInt exp;        // base exponent following it
    friend bool operator==(Syllable const&, Syllable const&) = default;
  };

  BrittonForm() = default;
  BrittonForm(std::int64_t m, std::int64_t n) : m_(m), n_(n) {
    if (m < 1 || n < 1) throw InvalidArgument("BS(m,n) needs m, n >= 1");
  }

  static BrittonForm from_word(std::int64_t m, std::int64_t n, SignedWord const& w) {
    BrittonForm f(m, n);
    for (auto l : w) f.push(l);
    return f;
  }

  std::int64_t m() const noexcept { return m_; }
  std::int64_t n() const noexcept { return n_; }
  BigInt const& head() const noexcept { return head_; }
  std::vector<Syllable> const& syllables() const noexcept { return syl_; }

  bool is_identity() const noexcept { return syl_.empty() && head_ == 0; }

  /// Right multiplication by a single letter.
  void push(SignedLetter l) {
    if (l.gen == kBase) {
      last_exp() += l.sign;
    } else if (l.gen == kStable) {
      push_stable(l.sign);
    } else {
      throw InvalidArgument("BS(m,n) words use letters 0 (stable) and 1 (base)");
    }
  }

  /// Right multiplication by b^e.
  void push_base_power(BigInt const& e) { last_exp() += e; }

  friend BrittonForm operator*(BrittonForm const& f, BrittonForm const& g) {
    f.check_same(g);
    BrittonForm r = f;
    r.push_base_power(g.head_);
    for (auto const& s : g.syl_) {
      r.push_stable(s.sign);
      r.push_base_power(s.exp);
    }
    return r;
  }

  BrittonForm inverse() const {
    BrittonForm r(m_, n_);
    for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) {
      r.push_base_power(-it->exp);
      r.push_stable(static_cast<std::int8_t>(-it->sign));
    }
    r.push_base_power(-head_);
    return r;
  }

  /// A word in (stable, base) that evaluates to this element.
  SignedWord to_word() const {
    SignedWord w;
    auto base_power = [&](BigInt const& e) {
      std::int8_t s = e < 0 ? -1 : 1;
      BigInt k = e < 0 ? BigInt(-e) : e;
      for (BigInt i = 0; i < k; ++i) w.letters.push_back({kBase, s});
    };
    base_power(head_);
    for (auto const& s : syl_) {
      w.letters.push_back({kStable, s.sign});
      base_power(s.exp);
    }
    return w;
  }

  std::string to_string() const {
    if (is_identity()) return "1";
    std::string out;
    auto emit_base = [&](BigInt const& e) {
      if (e == 0) return;
      if (!out.empty()) out += ' ';
      out += "b";
      if (e != 1) out += "^" + e.str();
    };
    emit_base(head_);
    for (auto const& s : syl_) {
      if (!out.empty()) out += ' ';
      out += s.sign > 0 ? "a" : "a^-1";
      emit_base(s.exp);
    }
    return out;
  }

  friend bool operator==(BrittonForm const&, BrittonForm const&) = default;

  friend std::strong_ordering operator<=>(BrittonForm const& x, BrittonForm const& y) {
    if (auto o = x.m_ <=> y.m_; o != 0) return o;
    if (auto o = x.n_ <=> y.n_; o != 0) return o;
    if (auto o = cmp(x.head_, y.head_); o != 0) return o;
    if (auto o = x.syl_.size() <=> y.syl_.size(); o != 0) return o;
    for (std::size_t i = 0; i < x.syl_.size(); ++i) {
      if (auto o = x.syl_[i].sign <=> y.syl_[i].sign; o != 0) return o;
      if (auto o = cmp(x.syl_[i].exp, y.syl_[i].exp); o != 0) return o;
    }
    return std::strong_ordering::equal;
  }

 private:
  static std::strong_ordering cmp(BigInt const& a, BigInt const& b) {
    if (a < b) return std::strong_ordering::less;
    if (b < a) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  void check_same(BrittonForm const& g) const {
    if (m_ != g.m_ || n_ != g.n_) throw FamilyMismatch("BS parameters differ");
  }

  BigInt& last_exp() { return syl_.empty() ? head_ : syl_.back().exp; }

  void push_stable(std::int8_t sign) {
    if (!syl_.empty() && syl_.back().sign == -sign) {
      // a b^e a^-1 = b^{e n/m} when m | e;  a^-1 b^e a = b^{e m/n} when n | e
      BigInt const& e = syl_.back().exp;
      std::int64_t div = syl_.back().sign > 0 ? m_ : n_;
      std::int64_t mul = syl_.back().sign > 0 ? n_ : m_;
      if (e % div == 0) {
        BigInt moved = (e / div) * mul;
        syl_.pop_back();
        last_exp() += moved;
        return;
      }
    }
    // b^e a = b^r a b^{qm} with e = qn + r;  b^e a^-1 = b^r a^-1 b^{qn} with e = qm + r
    std::int64_t modulus = sign > 0 ? n_ : m_;
    std::int64_t carry = sign > 0 ? m_ : n_;
    BigInt& e = last_exp();
    BigInt r = e % modulus;
    if (r < 0) r += modulus;
    BigInt q = (e - r) / modulus;
    e = r;
    syl_.push_back({sign, q * carry});
  }

  std::int64_t m_ = 1;
  std::int64_t n_ = 1;
  BigInt head_ = 0;
  std::vector<Syllable> syl_;
};

}  // namespace natext
