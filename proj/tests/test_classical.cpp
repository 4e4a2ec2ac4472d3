#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hashbound/classical.hpp"
#include "hashbound/psi.hpp"
#include "hashbound/report.hpp"

using namespace hashbound;

TEST_CASE("Fredman-Komlos") {
  CHECK(fredman_komlos(ProblemParams(4, 4)) == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(fredman_komlos(ProblemParams(5, 4)) == doctest::Approx(60.0 / 125.0 * std::log2(3.0)).epsilon(1e-15));
  CHECK(fredman_komlos(ProblemParams(5, 4)) == doctest::Approx(0.76078).epsilon(1e-5));
  CHECK(fredman_komlos(ProblemParams(7, 7)) == doctest::Approx(falling_ratio(7, 6)).epsilon(1e-15));
}

TEST_CASE("Korner-Marton minimum and its argmin") {
  const auto km55 = korner_marton(ProblemParams(5, 5));
  CHECK(format_up(km55.value) == "0.19200");
  CHECK(km55.j == 3);
  CHECK(format_up(korner_marton(ProblemParams(6, 6)).value) == "0.09260");
  CHECK(round_up_sig(korner_marton(ProblemParams(9, 9)).value, 5) == doctest::Approx(8.4300e-3).epsilon(1e-12));
  for (int b = 5; b <= 15; ++b) {
    for (int k = 4; k <= b; ++k) {
      CHECK(korner_marton(ProblemParams(b, k)).value <= korner_marton_term(b, k, k - 2));
    }
  }
  CHECK_THROWS(korner_marton_term(6, 5, 4));
}

TEST_CASE("DVJ bound") {
  CHECK(format_up(dvj_bound(ProblemParams(5, 4))) == "0.57303");
  CHECK(format_up(dvj_bound(ProblemParams(6, 4))) == "0.77709");
  CHECK(format_up(dvj_bound(ProblemParams(7, 4))) == "0.94372");
  // The large-b entries are published rounded to nearest: raw 2.8134233 and 2.6747315.
  CHECK(dvj_bound(ProblemParams(100, 6)) == doctest::Approx(2.813423281).epsilon(1e-9));
  CHECK(dvj_bound(ProblemParams(100, 7)) == doctest::Approx(2.674731487).epsilon(1e-9));
  CHECK_THROWS(dvj_bound(ProblemParams(5, 3)));
}

TEST_CASE("rate_from_Mj") {
  CHECK(rate_from_Mj(ProblemParams(6, 6, 4), 5.0 / 27.0) == doctest::Approx(5.0 / 59.0).epsilon(1e-14));
  CHECK(format_up(rate_from_Mj(ProblemParams(7, 7, 5), 0.0861594)) == "0.04090");
  CHECK(format_up(rate_from_Mj(ProblemParams(7, 6, 4), psi_uniform_closed_form(PsiParams(7, 4)))) == "0.19897");
  double prev = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    const double v = rate_from_Mj(ProblemParams(9, 8, 6), i * 1e-3);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS(rate_from_Mj(ProblemParams(7, 7, 5), 0.0));
  CHECK_THROWS(rate_from_Mj(ProblemParams(7, 7), 0.1));
}

TEST_CASE("conjectured bound equals the shortcut at each j") {
  const auto c66 = conjectured_bound(ProblemParams(6, 6));
  CHECK(c66.value == doctest::Approx(5.0 / 59.0).epsilon(1e-14));
  CHECK(c66.j == 4);
  for (int j = 2; j <= 3; ++j) {
    const double at_j = rate_from_Mj(ProblemParams(5, 5, j), psi_uniform_closed_form(PsiParams(5, j)));
    CHECK(conjectured_bound(ProblemParams(5, 5)).value <= at_j);
  }
}

TEST_CASE("Plotkin combination for k = 4") {
  CHECK(plotkin_combined_k4(5).closed_form == doctest::Approx(0.3977709091).epsilon(1e-9));
  CHECK(plotkin_combined_k4(4).closed_form == doctest::Approx(6.0 / 19.0).epsilon(1e-12));
  for (int b = 4; b <= 14; ++b) {
    const auto r = plotkin_combined_k4(b);
    CHECK(std::abs(r.intersection - r.closed_form) <= 1e-9);
    CHECK(r.printed_formula > r.closed_form);
    if (b >= 5) CHECK(r.closed_form < dvj_bound(ProblemParams(b, 4)));
  }
  CHECK_THROWS(plotkin_combined_k4(3));
}

TEST_CASE("balanced fixed point") {
  // Constant F: the fixed point is c * d, capped at log2 b.
  const double c = balanced_fixed_point_constant(7, 5);
  CHECK(c == doctest::Approx(5.0 / 7.0 * 4.0 / 7.0).epsilon(1e-15));
  CHECK(balanced_fixed_point(7, 5, [](double) { return 0.3; }) == doctest::Approx(c * 0.3).epsilon(1e-10));
  CHECK(balanced_fixed_point(7, 5, [](double) { return 100.0; }) == doctest::Approx(std::log2(7.0)).epsilon(1e-12));
  // Linear F = 1 - R: crossing at c / (1 + c).
  const double cl = balanced_fixed_point_constant(8, 6);
  CHECK(balanced_fixed_point(8, 6, [](double r) { return 1.0 - r; }) == doctest::Approx(cl / (1.0 + cl)).epsilon(1e-10));
  // Increasing F is refused.
  CHECK_THROWS(balanced_fixed_point(8, 6, [](double r) { return r; }));
}

TEST_CASE("tabulated F") {
  std::istringstream in("# rate delta\n0.0 0.8\n1.0 0.4\n2.0 0.0\n");
  const TabulatedF f = TabulatedF::parse(in);
  CHECK(f(0.5) == doctest::Approx(0.6));
  CHECK(f(-1.0) == doctest::Approx(0.8));
  CHECK(f(3.0) == doctest::Approx(0.0));
  CHECK(f.max_rate() == 2.0);
  const double r = balanced_fixed_point(6, 5, [&](double x) { return f(x); });
  const double c = balanced_fixed_point_constant(6, 5);
  CHECK(std::abs(r - c * f(r)) <= 1e-8);

  std::istringstream bad_order("1.0 0.4\n0.5 0.5\n");
  CHECK_THROWS(TabulatedF::parse(bad_order));
  std::istringstream increasing("0.0 0.1\n1.0 0.4\n");
  CHECK_THROWS(TabulatedF::parse(increasing));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS(ProblemParams(5, 6));
  CHECK_THROWS(ProblemParams(6, 5, 4));
  CHECK_THROWS(ProblemParams(6, 5, 1));
  CHECK_NOTHROW(ProblemParams(6, 5, 3));
}
