#include <doctest.h>

#include <cmath>

#include "hashbound/oracle.hpp"
#include "hashbound/partition.hpp"
#include "hashbound/presets.hpp"
#include "hashbound/psi.hpp"

using namespace hashbound;

TEST_CASE("cell membership") {
  CHECK(in_max_cell({0.3, 0.3, 0.4}, 0.5, 0));
  CHECK(!in_max_cell({0.95, 0.05, 0.0}, 0.1, 0));
  CHECK(in_max_cell({0.95, 0.05, 0.0}, 0.1, 1));
  CHECK(!in_max_cell({0.95, 0.05, 0.0}, 0.1, 2));
  CHECK(in_min_cell({0.3, 0.3, 0.4}, 0.1, 0));
  CHECK(in_min_cell({0.05, 0.5, 0.45}, 0.1, 1));
  // Ties for the smallest go to the first index.
  CHECK(in_min_cell({0.05, 0.05, 0.9}, 0.1, 1));
  CHECK(!in_min_cell({0.05, 0.05, 0.9}, 0.1, 2));
}

TEST_CASE("sampled points stay on the simplex") {
  auto rng = batch_rng(3, 0);
  for (int t = 0; t < 1000; ++t) {
    const auto p = sample_simplex(rng, 6);
    double s = 0.0;
    for (double x : p) {
      CHECK(x >= 0.0);
      s += x;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("the four inequalities hold on sampled instances") {
  for (LemmaId id : {LemmaId::L6, LemmaId::L7, LemmaId::L8, LemmaId::L9}) {
    for (const auto& [b, j] : std::vector<std::pair<int, int>>{{6, 4}, {7, 5}, {6, 3}}) {
      const LemmaReport r = check_lemma_inequalities(id, b, j, 10000, 11);
      CAPTURE(to_string(id));
      CAPTURE(b);
      CHECK(r.samples == 10000);
      CHECK(r.passed());
    }
  }
}

TEST_CASE("the inequalities hold at the hypothesis boundary") {
  LemmaOptions o;
  o.boundary = true;
  CHECK(check_lemma_inequalities(LemmaId::L8, 7, 5, 5000, 2, o).passed());
  CHECK(check_lemma_inequalities(LemmaId::L9, 7, 5, 5000, 2, o).passed());
}

TEST_CASE("an injected fault is detected") {
  LemmaOptions o;
  o.fault = 1e-3;
  for (LemmaId id : {LemmaId::L6, LemmaId::L7, LemmaId::L8, LemmaId::L9}) {
    const LemmaReport r = check_lemma_inequalities(id, 6, 4, 2000, 1, o);
    CHECK(!r.passed());
    CHECK(!r.counterexample_p.empty());
  }
  CHECK(!check_psi_oracle(5, 3, 200, 1, 1e-9).passed);
  CHECK(check_psi_oracle(5, 3, 2000, 1).passed);
}

TEST_CASE("lemma names round-trip") {
  for (LemmaId id : {LemmaId::L6, LemmaId::L7, LemmaId::L8, LemmaId::L9}) CHECK(parse_lemma(to_string(id)) == id);
  CHECK_THROWS(parse_lemma("L5"));
}

TEST_CASE("sampling never beats the computed subdomain maxima") {
  for (const auto& [b, k] : std::vector<std::pair<int, int>>{{7, 7}, {6, 6}, {5, 5}}) {
    const auto preset = find_preset(b, k);
    REQUIRE(preset);
    for (MSelector which : kAllSelectors) {
      const SampleReport s = sample_subdomain(preset->spec, which, b, preset->j, 20000, 9);
      const double m = compute_Mi(preset->spec, which, b, preset->j).value;
      CAPTURE(b);
      CAPTURE(to_string(which));
      CHECK(!s.inconclusive);
      CHECK(s.accepted == 20000);
      CHECK(s.best_value <= m + 1e-9);
      CHECK(psi_fast(s.best_p, s.best_q, preset->j) == doctest::Approx(s.best_value).epsilon(1e-12));
    }
  }
}

TEST_CASE("sampled points lie in the requested cells") {
  const PartitionSpec spec{PartitionKind::MinValue, 0.1};
  const SampleReport s = sample_subdomain(spec, MSelector::M4, 6, 3, 2000, 4);
  CHECK(in_min_cell(s.best_p, 0.1, 1));
  CHECK(in_min_cell(s.best_q, 0.1, 2));
  const PartitionSpec mx{PartitionKind::MaxValue, 0.1};
  const SampleReport t = sample_subdomain(mx, MSelector::M3, 7, 5, 2000, 4);
  CHECK(in_max_cell(t.best_p, 0.1, 1));
  CHECK(in_max_cell(t.best_q, 0.1, 1));
}

TEST_CASE("sampling is deterministic and independent of the thread count") {
  const PartitionSpec spec{PartitionKind::MaxValue, 9.0 / 100.0};
  const SampleReport a = sample_subdomain(spec, MSelector::M1, 7, 5, 10000, 42, 1);
  const SampleReport b = sample_subdomain(spec, MSelector::M1, 7, 5, 10000, 42, 4);
  CHECK(a.best_value == b.best_value);
  CHECK(a.best_p == b.best_p);
  CHECK(a.attempts == b.attempts);
  CHECK(a.best_value <= 0.085679 + 1e-9);
}
