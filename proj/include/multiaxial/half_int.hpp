#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace multiaxial {

/// Angular-momentum quantum number stored as twice its value so that
/// half-integers are exact.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_doubled(int doubled) { return HalfInt(doubled); }
  static constexpr HalfInt integer(int value) { return HalfInt(2 * value); }

  /// Parses "3", "-1", "1/2", "-3/2".
  static HalfInt parse(std::string_view text);

  constexpr int doubled() const { return doubled_; }
  constexpr double value() const { return 0.5 * doubled_; }
  constexpr bool is_integer() const { return doubled_ % 2 == 0; }
  /// Only meaningful when is_integer().
  constexpr int as_integer() const { return doubled_ / 2; }
  /// 2j+1 for a spin j.
  constexpr int multiplicity() const { return doubled_ + 1; }

  constexpr HalfInt operator-() const { return HalfInt(-doubled_); }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.doubled_ + b.doubled_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.doubled_ - b.doubled_); }
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  std::string to_string() const;

 private:
  constexpr explicit HalfInt(int doubled) : doubled_(doubled) {}
  int doubled_ = 0;
};

/// a - b is an integer.
constexpr bool same_parity(HalfInt a, HalfInt b) {
  return ((a.doubled() - b.doubled()) % 2) == 0;
}

/// True for j >= 0, |m| <= j and j - m integral.
constexpr bool is_valid_pair(HalfInt j, HalfInt m) {
  const int abs_m = m.doubled() < 0 ? -m.doubled() : m.doubled();
  return j.doubled() >= 0 && abs_m <= j.doubled() && same_parity(j, m);
}

/// Throws DomainError unless is_valid_pair(j, m).
void require_valid_pair(HalfInt j, HalfInt m, std::string_view what);

}  // namespace multiaxial
