#include "linkrec/theta.hpp"

#include <cmath>

#include "linkrec/error.hpp"

namespace linkrec {

const std::array<const char*, Theta::kSize>& Theta::names() {
  static const std::array<const char*, kSize> n = {
      "p0",    "p1",    "lamV0", "lamV1",  "lamC0",  "lamC1", "lamS0", "lamS1",  "lamSp0",
      "lamSp1", "lamN0", "lamN1", "lamNp0", "lamNp1", "lamL0", "lamL1", "lamLp0", "lamLp1"};
  return n;
}

double& Theta::at(std::size_t i) {
  std::array<double, 2>* fields[] = {&p, &lamV, &lamC, &lamS, &lamSp, &lamN, &lamNp, &lamL, &lamLp};
  if (i >= kSize) fail(ErrorKind::kInvalidArgument, "bnlf_em", "theta index out of range");
  return (*fields[i / 2])[i % 2];
}

std::array<double, Theta::kSize> Theta::to_array() const {
  return {p[0],     p[1],     lamV[0], lamV[1], lamC[0],  lamC[1],  lamS[0], lamS[1], lamSp[0],
          lamSp[1], lamN[0], lamN[1], lamNp[0], lamNp[1], lamL[0], lamL[1], lamLp[0], lamLp[1]};
}

Theta Theta::from_array(const std::array<double, kSize>& v) {
  Theta t;
  for (std::size_t i = 0; i < kSize; ++i) t.at(i) = v[i];
  return t;
}

bool Theta::valid() const {
  const auto v = to_array();
  for (std::size_t i = 0; i < kSize; ++i) {
    if (!std::isfinite(v[i]) || !(v[i] > 0.0)) return false;
  }
  return p[0] < 1.0 && p[1] < 1.0 && std::fabs(p[0] + p[1] - 1.0) <= 1e-12;
}

void Theta::validate() const {
  const auto v = to_array();
  for (std::size_t i = 0; i < kSize; ++i) {
    if (!std::isfinite(v[i]) || !(v[i] > 0.0))
      fail(ErrorKind::kInvalidArgument, "bnlf_em",
           std::string("parameter ") + names()[i] + " must be positive and finite");
  }
  if (!(p[0] < 1.0 && p[1] < 1.0) || std::fabs(p[0] + p[1] - 1.0) > 1e-12)
    fail(ErrorKind::kInvalidArgument, "bnlf_em", "class priors must lie in (0,1) and sum to 1");
}

}  // namespace linkrec
