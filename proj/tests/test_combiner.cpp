#include <doctest.h>

#include <cmath>
#include <random>

#include "hashbound/classical.hpp"
#include "hashbound/combiner.hpp"
#include "hashbound/presets.hpp"
#include "hashbound/psi.hpp"

using namespace hashbound;

namespace {

std::vector<double> random_eta(std::mt19937_64& rng, int b) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> eta(static_cast<std::size_t>(b) + 1);
  double s = 0.0;
  for (double& x : eta) s += (x = e(rng));
  for (double& x : eta) x /= s;
  return eta;
}

}  // namespace

TEST_CASE("f_eta at the corners") {
  const MiTuple mi{0.3, 0.2, 0.1, 0.05, 4};
  std::vector<double> eta(5, 0.0);
  eta[0] = 1.0;
  CHECK(f_eta(mi, eta) == doctest::Approx(0.3));
  eta[0] = 0.0;
  eta[2] = 1.0;
  CHECK(f_eta(mi, eta) == doctest::Approx(0.1));
  eta = {0.5, 0.5, 0.0, 0.0, 0.0};
  CHECK(f_eta(mi, eta) == doctest::Approx(0.25 * 0.3 + 0.5 * 0.2 + 0.25 * 0.1));
  eta = {0.0, 0.5, 0.5, 0.0, 0.0};
  CHECK(f_eta(mi, eta) == doctest::Approx(0.5 * 0.1 + 0.5 * 0.05));
  CHECK_THROWS(f_eta(mi, {1.0, 0.0}));
}

TEST_CASE("combined maximum at the (7,7) values") {
  const MiTuple mi{0.085679, 0.092593, 0.000006, 0.000107, 7};
  const CombineResult r = combine(mi);
  CHECK(!r.fallback);
  CHECK(std::abs(r.M - 0.0861594) <= 1e-6);
  CHECK(std::abs(rate_from_Mj(ProblemParams(7, 7, 5), r.M) - 0.04090) <= 1e-5);
}

TEST_CASE("the balanced cell alone when M1 dominates") {
  const MiTuple mi{5.0 / 27.0, 0.178857, 0.140664, 0.192, 6};
  const CombineResult r = combine(mi);
  CHECK(r.eta.eta0 == doctest::Approx(1.0));
  CHECK(r.M == doctest::Approx(5.0 / 27.0).epsilon(1e-12));
}

TEST_CASE("the (5,5) values combine to the published maximum") {
  const MiTuple mi{0.384033, 0.389226, 0.374759, 0.389226, 5};
  CHECK(std::abs(combine(mi).M - 0.3873676) <= 2e-6);
}

TEST_CASE("the (6,5) values: weights 1/b on the unbalanced cells") {
  const MiTuple mi{0.555625, 0.558467, 0.535106, 0.558467, 6};
  const double M = combine(mi).M;
  CHECK(std::abs(M - 0.5568254) <= 2e-6);
  // The smaller published value is what weights 1/5 would give.
  const MiTuple five{0.555625, 0.558467, 0.535106, 0.558467, 5};
  CHECK(std::abs(combine(five).M - 0.5567010) <= 2e-6);
}

TEST_CASE("the combined value dominates random weightings") {
  std::mt19937_64 rng(5);
  const std::vector<MiTuple> tuples{
      {0.085679, 0.092593, 0.000006, 0.000107, 7}, {0.384033, 0.389226, 0.374759, 0.389226, 5},
      {0.185185, 0.178857, 0.140664, 0.192000, 6}, {0.3, 0.31, 0.2, 0.1, 4},
      {0.2, 0.1, 0.3, 0.05, 5}};
  for (const auto& mi : tuples) {
    const double M = combine(mi).M;
    double best = 0.0;
    for (int t = 0; t < 100000; ++t) best = std::max(best, f_eta(mi, random_eta(rng, mi.b)));
    CHECK(best <= M * (1.0 + 1e-12));
    // The maximizer's weights achieve M.
    const CombineResult r = combine(mi);
    std::vector<double> eta(static_cast<std::size_t>(mi.b) + 1, 0.0);
    eta[0] = r.eta.eta0;
    if (r.fallback) {
      eta[1] = r.eta.eta_rest;
    } else {
      for (int i = 1; i <= mi.b; ++i) eta[static_cast<std::size_t>(i)] = r.eta.eta_rest;
    }
    CHECK(f_eta(mi, eta) == doctest::Approx(M).epsilon(1e-12));
  }
}

TEST_CASE("the fallback puts the remaining mass on one cell") {
  const MiTuple mi{0.2, 0.1, 0.3, 0.05, 5};
  const CombineResult r = combine(mi);
  CHECK(r.fallback);
  CHECK(r.M == doctest::Approx(0.3));
  CHECK(r.eta.eta0 == doctest::Approx(0.0));
}

TEST_CASE("the combined value is monotone in each entry") {
  const MiTuple base{0.085679, 0.092593, 0.000006, 0.000107, 7};
  const double m = combine(base).M;
  for (int i = 0; i < 4; ++i) {
    MiTuple up = base;
    double* f[4] = {&up.m1, &up.m2, &up.m3, &up.m4};
    *f[i] *= 1.01;
    CHECK(combine(up).M >= m);
  }
}

TEST_CASE("invalid tuples are rejected") {
  CHECK_THROWS(combine(MiTuple{0.0, 0.1, 0.1, 0.1, 5}));
  CHECK_THROWS(combine(MiTuple{0.1, 0.1, 0.1, 0.1, 1}));
}

TEST_CASE("a shortcut pair uses the uniform value") {
  const BoundReport r = full_bound(7, 6, 4, std::nullopt);
  CHECK(r.uniform_is_global);
  CHECK(r.path == "uniform-shortcut");
  CHECK(std::abs(r.rate - 0.19897) <= 1e-5);
  CHECK(r.classical.korner_marton_j == korner_marton(ProblemParams(7, 6)).j);
}
