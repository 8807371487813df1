#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace foel {

/// A spin quantum number on the half-integer lattice, stored as 2*value so
/// that arithmetic, parity and comparisons stay exact.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;

  static constexpr HalfInteger from_doubled(int64_t doubled) {
    return HalfInteger(doubled);
  }
  static constexpr HalfInteger from_int(int64_t n) { return HalfInteger(2 * n); }

  /// Parses "1/2", "3/2", "2", ... Throws ParseError on anything else.
  static HalfInteger parse(std::string_view text);

  constexpr int64_t doubled() const { return doubled_; }
  constexpr bool is_integer() const { return doubled_ % 2 == 0; }
  constexpr bool is_negative() const { return doubled_ < 0; }
  double value() const { return 0.5 * static_cast<double>(doubled_); }

  /// Renders as an exact fraction: "3/2", "2", "0".
  std::string str() const;

  friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) {
    return HalfInteger(a.doubled_ + b.doubled_);
  }
  friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) {
    return HalfInteger(a.doubled_ - b.doubled_);
  }
  constexpr auto operator<=>(const HalfInteger&) const = default;

 private:
  explicit constexpr HalfInteger(int64_t doubled) : doubled_(doubled) {}
  int64_t doubled_ = 0;
};

inline constexpr HalfInteger kSpinHalf = HalfInteger::from_doubled(1);

/// Dimension 2s+1 of the spin-s irreducible representation.
inline constexpr int64_t multiplet_dim(HalfInteger s) { return s.doubled() + 1; }

}  // namespace foel
