#pragma once

#include <array>
#include <functional>
#include <vector>

#include "linkrec/em.hpp"
#include "linkrec/features.hpp"
#include "linkrec/theta.hpp"

namespace linkrec::oracle {

/// Adaptive Gauss-Kronrod integral of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b);

/// Joint density of (V, C, S, N, L, R = r), written out directly from the
/// Freund pairs and the piecewise latent marginal.
double joint(double V, double C, double S, double N, double L, const Theta& theta, int r);

/// Same without the p_r and V/C factors.
double latent_part(double S, double N, double L, const Theta& theta, int r);

/// Quadrature of latent_part over each piece: (Y, inf), (0, y), (N, S), (S, N).
struct PieceQuad {
  std::array<double, 4> mass{};
  /// Conditional mean of L on each piece (0 when the piece is empty).
  std::array<double, 4> mean{};
  double total = 0.0;
};
PieceQuad piece_quadrature(double S, double N, const Theta& theta, int r);

/// Integral over L of the joint at class r, by quadrature.
double int_quadrature(const FeatureRecord& rec, const Theta& theta, int r);

/// Integral over (0, inf) of the library's posterior density for `rec`.
double posterior_integral(const FeatureRecord& rec, const Theta& theta);

/// Expected complete-data log-likelihood as a function of theta, with the
/// expectations taken by quadrature under a fixed previous estimate.
class QFunction {
 public:
  QFunction(const std::vector<FeatureRecord>& records, const Theta& previous, PieceMass mass);
  double operator()(const Theta& theta) const;

 private:
  struct Row {
    int R;
    double V, C, S, N;
    std::array<double, 4> w;
    std::array<double, 4> mean;
  };
  std::vector<Row> rows_;
};

double golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-10);

/// For every parameter, the maximizer of Q along that coordinate alone, with
/// the others fixed at `at`. Rates are searched on a log scale within a
/// factor `span` of their value at `at`; p1 on (0,1) with p0 = 1 - p1.
std::array<double, Theta::kSize> coordinate_argmax(const QFunction& q, const Theta& at, double span = 100.0);

/// Central finite-difference second derivatives of Q along each coordinate.
std::array<double, Theta::kSize> hessian_diagonal(const QFunction& q, const Theta& at);

}  // namespace linkrec::oracle
