#pragma once

#include <array>
#include <string>
#include <vector>

namespace linkrec {

/// Class-indexed parameters ([0] for R = 0, [1] for R = 1). The "p" suffix
/// marks the primed rate of each Freund pair.
struct Theta {
  std::array<double, 2> p{0.5, 0.5};
  std::array<double, 2> lamV{1, 1}, lamC{1, 1};
  std::array<double, 2> lamS{1, 1}, lamSp{1, 1};
  std::array<double, 2> lamN{1, 1}, lamNp{1, 1};
  std::array<double, 2> lamL{1, 1}, lamLp{1, 1};

  static constexpr std::size_t kSize = 18;
  static const std::array<const char*, kSize>& names();

  /// Values in names() order.
  std::array<double, kSize> to_array() const;
  static Theta from_array(const std::array<double, kSize>& v);
  double& at(std::size_t i);
  double at(std::size_t i) const { return to_array()[i]; }

  bool valid() const;
  /// Throws invalid-argument naming the first offending parameter.
  void validate() const;

  friend bool operator==(const Theta&, const Theta&) = default;
};

}  // namespace linkrec
