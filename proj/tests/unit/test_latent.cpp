#include <doctest.h>

#include <cmath>

#include "../support/random_theta.hpp"
#include "linkrec/latent.hpp"
#include "linkrec/oracle/latent_oracle.hpp"

using namespace linkrec;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }
}  // namespace

TEST_CASE("mu and log_phi against direct formulas") {
  for (double t : {-30.0, -3.0, -0.5, -0.02, 0.02, 0.5, 3.0, 30.0})
    CHECK(rel(latent::mu(t), 1.0 / t - 1.0 / std::expm1(t)) <= 1e-12);
  CHECK(latent::mu(0.0) == 0.5);
  // Continuity across the series switch.
  CHECK(rel(latent::mu(0.00999999), latent::mu(0.01000001)) <= 1e-6);
  CHECK(rel(latent::mu(1e-7), 0.5 - 1e-7 / 12) <= 1e-12);
  for (double c : {-4.0, -0.1, 0.1, 4.0})
    for (double w : {0.01, 1.0, 5.0}) CHECK(rel(latent::log_phi(c, w), std::log(-std::expm1(-c * w) / c)) <= 1e-12);
  CHECK(rel(latent::log_phi(0.0, 2.0), std::log(2.0)) <= 1e-15);
  CHECK(rel(latent::log_phi(1e-9, 2.0), std::log(2.0) - 1e-9) <= 1e-12);
}

TEST_CASE("tail mean example") {
  Theta t;
  t.lamLp = {0.5, 0.5};
  const auto pc = latent::pieces(2.0, 1.0, t, 0);
  CHECK(pc.mean[0] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(pc.Y == 2.0);
  CHECK(pc.y == 1.0);
  CHECK(pc.I == 1);
}

TEST_CASE("pieces match quadrature") {
  CounterRng rng(51);
  for (int i = 0; i < 200; ++i) {
    const Theta th = brute::random_theta(rng);
    const auto rec = brute::random_record(rng);
    for (int r = 0; r < 2; ++r) {
      const auto pc = latent::pieces(rec.S, rec.N, th, r);
      const auto pq = oracle::piece_quadrature(rec.S, rec.N, th, r);
      double total = 0.0;
      for (int k = 0; k < 4; ++k) {
        if (pq.mass[k] == 0.0) {
          CHECK(std::isinf(pc.log_h[k]));
          continue;
        }
        total += pq.mass[k];
        CHECK(rel(std::exp(pc.log_h[k]), pq.mass[k]) <= 1e-8);
        CHECK(rel(pc.mean[k], pq.mean[k]) <= 1e-8);
      }
      CHECK(rel(std::exp(pc.log_total), total) <= 1e-8);
      double wsum = 0.0;
      for (double w : pc.weight) wsum += w;
      CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("piece means respect their intervals") {
  CounterRng rng(52);
  for (int i = 0; i < 500; ++i) {
    const Theta th = brute::random_theta(rng, 0.01, 100.0);
    const auto rec = brute::random_record(rng);
    const auto pc = latent::pieces(rec.S, rec.N, th, rec.R);
    CHECK(pc.mean[0] >= pc.Y);
    CHECK(pc.mean[1] > 0.0);
    CHECK(pc.mean[1] < pc.y);
    if (pc.I == 1) {
      CHECK(pc.mean[2] >= rec.N);
      CHECK(pc.mean[2] <= rec.S);
      CHECK(pc.mean[3] == 0.0);
    } else {
      CHECK(pc.mean[3] >= rec.S);
      CHECK(pc.mean[3] <= rec.N);
      CHECK(pc.mean[2] == 0.0);
    }
  }
  const auto eq = latent::pieces(1.0, 1.0, Theta{}, 0);
  CHECK(eq.I == 0);
  CHECK(eq.mean[2] == 0.0);
  CHECK(eq.mean[3] == 0.0);
}

TEST_CASE("degenerate combined rates stay accurate") {
  // Choose lamL so that each combined rate is +-1e-6 in turn.
  for (double eps : {1e-6, -1e-6}) {
    Theta t;
    t.lamS = {1.0, 1.0};
    t.lamSp = {1.5, 1.5};
    t.lamN = {1.0, 1.0};
    t.lamNp = {1.2, 1.2};
    t.lamLp = {0.8, 0.8};
    t.lamL = {0.7 + eps, 0.7 + eps};
    CHECK(std::fabs(latent::combined_rates(t, 0).c2 - eps) < 1e-12);
    for (auto [S, N] : {std::pair{1.3, 0.7}, std::pair{0.4, 2.0}}) {
      const auto pc = latent::pieces(S, N, t, 0);
      const auto pq = oracle::piece_quadrature(S, N, t, 0);
      CHECK(rel(pc.mean[1], pq.mean[1]) <= 1e-5);
      CHECK(rel(pc.mean[1], std::min(S, N) / 2) <= 1e-5);
      for (int k = 0; k < 4; ++k)
        if (pq.mass[k] > 0) CHECK(rel(std::exp(pc.log_h[k]), pq.mass[k]) <= 1e-5);
    }
    // c3 = lamS + lamL - lamSp
    t.lamL = {0.5 + eps, 0.5 + eps};
    CHECK(std::fabs(latent::combined_rates(t, 1).c3 - eps) < 1e-12);
    const auto pc = latent::pieces(2.0, 0.5, t, 1);
    const auto pq = oracle::piece_quadrature(2.0, 0.5, t, 1);
    CHECK(rel(pc.mean[2], 1.25) <= 1e-5);
    CHECK(rel(pc.mean[2], pq.mean[2]) <= 1e-5);
    // c4 = lamN + lamL - lamNp
    t.lamL = {0.2 + eps, 0.2 + eps};
    const auto pc4 = latent::pieces(0.5, 2.0, t, 1);
    const auto pq4 = oracle::piece_quadrature(0.5, 2.0, t, 1);
    CHECK(rel(pc4.mean[3], 1.25) <= 1e-5);
    CHECK(rel(pc4.mean[3], pq4.mean[3]) <= 1e-5);
  }
}

TEST_CASE("posterior density integrates to one") {
  CounterRng rng(53);
  for (int i = 0; i < 100; ++i) {
    const Theta th = brute::random_theta(rng);
    auto rec = brute::random_record(rng);
    CHECK(std::fabs(oracle::posterior_integral(rec, th) - 1.0) <= 1e-6);
    rec.N = rec.S;
    CHECK(std::fabs(oracle::posterior_integral(rec, th) - 1.0) <= 1e-6);
  }
}

TEST_CASE("large tail rate concentrates the tail piece at Y") {
  CounterRng rng(54);
  for (int i = 0; i < 30; ++i) {
    Theta th = brute::random_theta(rng);
    const auto rec = brute::random_record(rng);
    const double Y = std::max(rec.S, rec.N);
    const auto beyond = [&](double lp) {
      th.lamLp[rec.R] = lp;
      return oracle::integrate([&](double L) { return latent::posterior_density(rec, th, L); }, Y + 0.25,
                               Y + 0.25 + 40.0 / lp);
    };
    const double small = beyond(1.0), large = beyond(50.0);
    CHECK(large < small);
    CHECK(large < 1e-5);
  }
}

TEST_CASE("log_int and log_joint agree with the independent joint") {
  CounterRng rng(55);
  for (int i = 0; i < 200; ++i) {
    const Theta th = brute::random_theta(rng);
    const auto rec = brute::random_record(rng);
    for (int r = 0; r < 2; ++r) {
      CHECK(std::fabs(latent::log_int(rec, th, r) - std::log(oracle::int_quadrature(rec, th, r))) <= 1e-8);
      for (double L : {0.3 * std::min(rec.S, rec.N), 0.5 * (rec.S + rec.N), 1.5 * std::max(rec.S, rec.N)})
        CHECK(rel(std::exp(latent::log_joint(rec.V, rec.C, rec.S, rec.N, L, th, r)),
                  oracle::joint(rec.V, rec.C, rec.S, rec.N, L, th, r)) <= 1e-10);
    }
  }
}

TEST_CASE("piece_of") {
  CHECK(latent::piece_of(2.0, 1.0, 0.5) == 1);
  CHECK(latent::piece_of(2.0, 1.0, 1.5) == 2);
  CHECK(latent::piece_of(1.0, 2.0, 1.5) == 3);
  CHECK(latent::piece_of(1.0, 2.0, 3.0) == 0);
}
