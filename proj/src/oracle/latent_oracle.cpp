#include "linkrec/oracle/latent_oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "linkrec/latent.hpp"

namespace linkrec::oracle {

namespace {
double freund(double x, double L, double lx, double lxp, double lL, double lLp) {
  if (x < L) return lx * lLp * std::exp(-lLp * L - (lx + lL - lLp) * x);
  return lL * lxp * std::exp(-lxp * x - (lx + lL - lxp) * L);
}

double marginal_L(double S, double N, double L, double lL, double lLp) {
  return L < std::min(S, N) ? lL * std::exp(-lL * L) : lLp * std::exp(-lLp * L);
}

double tail_end(double Y, const Theta& th, int r) { return Y + 40.0 / th.lamLp[r]; }
}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b) {
  if (!(b > a)) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13, &err);
}

double latent_part(double S, double N, double L, const Theta& th, int r) {
  const double fS = freund(S, L, th.lamS[r], th.lamSp[r], th.lamL[r], th.lamLp[r]);
  const double fN = freund(N, L, th.lamN[r], th.lamNp[r], th.lamL[r], th.lamLp[r]);
  return fS * fN / marginal_L(S, N, L, th.lamL[r], th.lamLp[r]);
}

double joint(double V, double C, double S, double N, double L, const Theta& th, int r) {
  const double g = th.p[r] * th.lamV[r] * std::exp(-th.lamV[r] * V) * th.lamC[r] * std::exp(-th.lamC[r] * C);
  return g * latent_part(S, N, L, th, r);
}

PieceQuad piece_quadrature(double S, double N, const Theta& th, int r) {
  const double y = std::min(S, N), Y = std::max(S, N);
  const double bounds[4][2] = {{Y, tail_end(Y, th, r)}, {0.0, y}, {N, S}, {S, N}};
  PieceQuad q;
  for (int k = 0; k < 4; ++k) {
    const double a = bounds[k][0], b = bounds[k][1];
    if (!(b > a)) continue;
    const double m = integrate([&](double L) { return latent_part(S, N, L, th, r); }, a, b);
    const double m1 = integrate([&](double L) { return L * latent_part(S, N, L, th, r); }, a, b);
    q.mass[k] = m;
    q.mean[k] = m > 0.0 ? m1 / m : 0.0;
    q.total += m;
  }
  return q;
}

double int_quadrature(const FeatureRecord& rec, const Theta& th, int r) {
  const double g = th.p[r] * th.lamV[r] * std::exp(-th.lamV[r] * rec.V) * th.lamC[r] * std::exp(-th.lamC[r] * rec.C);
  return g * piece_quadrature(rec.S, rec.N, th, r).total;
}

double posterior_integral(const FeatureRecord& rec, const Theta& th) {
  const double y = std::min(rec.S, rec.N), Y = std::max(rec.S, rec.N);
  auto f = [&](double L) { return latent::posterior_density(rec, th, L); };
  return integrate(f, 0.0, y) + integrate(f, y, Y) + integrate(f, Y, tail_end(Y, th, rec.R));
}

QFunction::QFunction(const std::vector<FeatureRecord>& records, const Theta& previous, PieceMass mass) {
  for (const auto& rec : records) {
    Row row{rec.R, rec.V, rec.C, rec.S, rec.N, {}, {}};
    const PieceQuad pq = piece_quadrature(rec.S, rec.N, previous, rec.R);
    for (int k = 0; k < 4; ++k) {
      row.mean[k] = pq.mean[k];
      if (mass == PieceMass::kPosterior) {
        row.w[k] = pq.mass[k] / pq.total;
      } else {
        row.w[k] = (k < 2 || pq.mass[k] > 0.0) ? 1.0 : 0.0;
      }
    }
    rows_.push_back(row);
  }
}

double QFunction::operator()(const Theta& th) const {
  double q = 0.0;
  for (const Row& w : rows_) {
    const int r = w.R;
    const double lS = th.lamS[r], lSp = th.lamSp[r], lN = th.lamN[r], lNp = th.lamNp[r];
    const double lL = th.lamL[r], lLp = th.lamLp[r];
    q += std::log(th.p[r]) + std::log(th.lamV[r]) - th.lamV[r] * w.V + std::log(th.lamC[r]) - th.lamC[r] * w.C;
    // ln of each Freund branch and of the latent marginal, linear in L.
    auto ln_fx_before = [&](double x, double lx, double L) {  // x < L
      return std::log(lx) + std::log(lLp) - lLp * L - (lx + lL - lLp) * x;
    };
    auto ln_fx_after = [&](double x, double lx, double lxp, double L) {  // L < x
      return std::log(lL) + std::log(lxp) - lxp * x - (lx + lL - lxp) * L;
    };
    for (int k = 0; k < 4; ++k) {
      if (w.w[k] == 0.0) continue;
      const double L = w.mean[k];
      double f1, f2, f3;
      switch (k) {
        case 0:  // L above both
          f1 = ln_fx_before(w.S, lS, L);
          f2 = ln_fx_before(w.N, lN, L);
          f3 = std::log(lLp) - lLp * L;
          break;
        case 1:  // L below both
          f1 = ln_fx_after(w.S, lS, lSp, L);
          f2 = ln_fx_after(w.N, lN, lNp, L);
          f3 = std::log(lL) - lL * L;
          break;
        case 2:  // N < L < S
          f1 = ln_fx_after(w.S, lS, lSp, L);
          f2 = ln_fx_before(w.N, lN, L);
          f3 = std::log(lLp) - lLp * L;
          break;
        default:  // S < L < N
          f1 = ln_fx_before(w.S, lS, L);
          f2 = ln_fx_after(w.N, lN, lNp, L);
          f3 = std::log(lLp) - lLp * L;
          break;
      }
      q += w.w[k] * (f1 + f2 - f3);
    }
  }
  return q;
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol * (1.0 + std::fabs(a) + std::fabs(b))) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

namespace {
Theta with_coordinate(Theta t, std::size_t i, double v) {
  if (i < 2) {
    t.p[1] = i == 1 ? v : 1.0 - v;
    t.p[0] = 1.0 - t.p[1];
  } else {
    t.at(i) = v;
  }
  return t;
}
}  // namespace

std::array<double, Theta::kSize> coordinate_argmax(const QFunction& q, const Theta& at, double span) {
  std::array<double, Theta::kSize> out{};
  const double p1 = golden_section_max([&](double v) { return q(with_coordinate(at, 1, v)); }, 1e-12, 1.0 - 1e-12, 1e-13);
  out[0] = 1.0 - p1;
  out[1] = p1;
  for (std::size_t i = 2; i < Theta::kSize; ++i) {
    const double c = std::log(at.at(i));
    const double best = golden_section_max([&](double u) { return q(with_coordinate(at, i, std::exp(u))); },
                                           c - std::log(span), c + std::log(span), 1e-12);
    out[i] = std::exp(best);
  }
  return out;
}

std::array<double, Theta::kSize> hessian_diagonal(const QFunction& q, const Theta& at) {
  std::array<double, Theta::kSize> out{};
  const double q0 = q(at);
  for (std::size_t i = 0; i < Theta::kSize; ++i) {
    const double x = i < 2 ? at.p[1] : at.at(i);
    const double h = 1e-4 * (i < 2 ? std::min(x, 1.0 - x) : x);
    // Coordinate 0 is p0; with_coordinate keeps p0 + p1 = 1.
    const double up = q(with_coordinate(at, i, i == 0 ? at.p[0] + h : x + h));
    const double dn = q(with_coordinate(at, i, i == 0 ? at.p[0] - h : x - h));
    out[i] = (up - 2.0 * q0 + dn) / (h * h);
  }
  return out;
}

}  // namespace linkrec::oracle
