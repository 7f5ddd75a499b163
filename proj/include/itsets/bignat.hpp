#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "itsets/errors.hpp"

namespace itsets {

// Unsigned arbitrary-precision integer. Limbs are base 1e9, least
// significant first; zero is the empty limb vector. Only what counting
// inhabitants needs: +, *, pow, comparison, decimal I/O.
class BigNat {
public:
  BigNat() = default;
  explicit BigNat(std::uint64_t v) {
    while (v != 0) {
      limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
      v /= kBase;
    }
  }

  static BigNat from_string(std::string_view s) {
    if (s.empty()) throw error("empty big-natural literal");
    for (char c : s)
      if (c < '0' || c > '9') throw error("invalid big-natural literal");
    // strip leading zeros
    std::size_t first = s.find_first_not_of('0');
    if (first == std::string_view::npos) return BigNat();
    s = s.substr(first);
    BigNat r;
    for (std::size_t end = s.size(); end > 0;) {
      std::size_t begin = end >= 9 ? end - 9 : 0;
      std::uint32_t limb = 0;
      for (std::size_t i = begin; i < end; ++i)
        limb = limb * 10 + static_cast<std::uint32_t>(s[i] - '0');
      r.limbs_.push_back(limb);
      end = begin;
    }
    r.trim();
    return r;
  }

  bool is_zero() const { return limbs_.empty(); }

  bool fits_uint64() const {
    if (limbs_.size() > 3) return false;
    unsigned __int128 v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) v = v * kBase + limbs_[i];
    return v <= static_cast<unsigned __int128>(UINT64_MAX);
  }

  // pre: fits_uint64()
  std::uint64_t to_uint64() const {
    std::uint64_t v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) v = v * kBase + limbs_[i];
    return v;
  }

  // Exact number of decimal digits (1 for zero).
  std::size_t digits10() const {
    if (limbs_.empty()) return 1;
    std::uint32_t top = limbs_.back();
    std::size_t d = 0;
    while (top != 0) {
      ++d;
      top /= 10;
    }
    return (limbs_.size() - 1) * 9 + d;
  }

  std::string to_string() const {
    if (limbs_.empty()) return "0";
    std::string out = std::to_string(limbs_.back());
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
      std::string part = std::to_string(limbs_[i]);
      out.append(9 - part.size(), '0');
      out += part;
    }
    return out;
  }

  friend bool operator==(const BigNat& a, const BigNat& b) {
    return a.limbs_ == b.limbs_;
  }

  friend std::strong_ordering operator<=>(const BigNat& a, const BigNat& b) {
    if (a.limbs_.size() != b.limbs_.size())
      return a.limbs_.size() <=> b.limbs_.size();
    for (std::size_t i = a.limbs_.size(); i-- > 0;)
      if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
    return std::strong_ordering::equal;
  }

  friend BigNat operator+(const BigNat& a, const BigNat& b) {
    BigNat r;
    const std::size_t n = a.limbs_.size() > b.limbs_.size() ? a.limbs_.size()
                                                            : b.limbs_.size();
    r.limbs_.reserve(n + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t cur = carry;
      if (i < a.limbs_.size()) cur += a.limbs_[i];
      if (i < b.limbs_.size()) cur += b.limbs_[i];
      r.limbs_.push_back(static_cast<std::uint32_t>(cur % kBase));
      carry = cur / kBase;
    }
    if (carry != 0) r.limbs_.push_back(static_cast<std::uint32_t>(carry));
    return r;
  }

  BigNat& operator+=(const BigNat& o) { return *this = *this + o; }

  friend BigNat operator*(const BigNat& a, const BigNat& b) {
    if (a.is_zero() || b.is_zero()) return BigNat();
    BigNat r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
      unsigned __int128 carry = 0;
      for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
        unsigned __int128 cur =
            static_cast<unsigned __int128>(a.limbs_[i]) * b.limbs_[j] +
            r.limbs_[i + j] + carry;
        r.limbs_[i + j] = static_cast<std::uint32_t>(cur % kBase);
        carry = cur / kBase;
      }
      std::size_t k = i + b.limbs_.size();
      while (carry != 0) {
        unsigned __int128 cur = r.limbs_[k] + carry;
        r.limbs_[k] = static_cast<std::uint32_t>(cur % kBase);
        carry = cur / kBase;
        ++k;
      }
    }
    r.trim();
    return r;
  }

private:
  static constexpr std::uint32_t kBase = 1000000000;
  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }
  std::vector<std::uint32_t> limbs_;
};

inline void ensure_digits(const BigNat& n, std::size_t max_digits) {
  if (n.digits10() > max_digits)
    throw resource_limit("count exceeds the configured cap of " +
                         std::to_string(max_digits) + " decimal digits");
}

inline BigNat add_capped(const BigNat& a, const BigNat& b,
                         std::size_t max_digits) {
  BigNat r = a + b;
  ensure_digits(r, max_digits);
  return r;
}

inline BigNat mul_capped(const BigNat& a, const BigNat& b,
                         std::size_t max_digits) {
  // digits(a*b) >= digits(a)+digits(b)-1; reject before allocating.
  if (!a.is_zero() && !b.is_zero() &&
      a.digits10() + b.digits10() > max_digits + 1)
    throw resource_limit("count exceeds the configured cap of " +
                         std::to_string(max_digits) + " decimal digits");
  BigNat r = a * b;
  ensure_digits(r, max_digits);
  return r;
}

// base^exp with the digit cap enforced throughout; never computes an
// intermediate past the cap.
inline BigNat pow_capped(const BigNat& base, const BigNat& exp,
                         std::size_t max_digits) {
  if (exp.is_zero()) return BigNat(1);
  if (base.is_zero()) return BigNat();
  if (base == BigNat(1)) return BigNat(1);
  // base >= 2, so digits(base^e) >= e*log10(2) > e/4.
  if (!exp.fits_uint64() ||
      exp.to_uint64() / 4 > static_cast<std::uint64_t>(max_digits))
    throw resource_limit("count exceeds the configured cap of " +
                         std::to_string(max_digits) + " decimal digits");
  std::uint64_t e = exp.to_uint64();
  BigNat acc(1);
  BigNat sq = base;
  while (e != 0) {
    if (e & 1) acc = mul_capped(acc, sq, max_digits);
    e >>= 1;
    if (e != 0) sq = mul_capped(sq, sq, max_digits);
  }
  return acc;
}

}  // namespace itsets
