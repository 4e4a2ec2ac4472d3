// One PASS/FAIL line per acceptance criterion, with the mismatching cells listed.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hashbound/classical.hpp"
#include "hashbound/codes.hpp"
#include "hashbound/combiner.hpp"
#include "hashbound/oracle.hpp"
#include "hashbound/partition.hpp"
#include "hashbound/presets.hpp"
#include "hashbound/psi.hpp"
#include "hashbound/report.hpp"

using namespace hashbound;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string g(double x, int prec = 10) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", prec, x);
  return buf;
}

struct Outcome {
  std::vector<std::string> failures;
  std::string summary;

  void fail(const std::string& s) { failures.push_back(s); }
};

int report(int n, const std::string& name, const Outcome& o) {
  std::printf("criterion %d %s: %s  %s\n", n, name.c_str(), o.failures.empty() ? "PASS" : "FAIL", o.summary.c_str());
  for (const auto& f : o.failures) std::printf("    mismatch: %s\n", f.c_str());
  std::fflush(stdout);
  return o.failures.empty() ? 0 : 1;
}

std::string fixed(double x, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

std::string sci(double x, int sig) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*e", sig - 1, x);
  return buf;
}

std::string pair_name(int b, int k) { return "(" + std::to_string(b) + "," + std::to_string(k) + ")"; }

bool same_up(double raw, double printed, int decimals) {
  return std::abs(round_up(raw, decimals) - printed) < 0.5 * std::pow(10.0, -decimals);
}

bool same_up_sig(double raw, double printed, int sig) {
  return std::abs(round_up_sig(raw, sig) - printed) <= 1e-9 * std::abs(printed);
}

// Computed per preset once and shared by criteria 1, 3 and 6.
struct PresetRun {
  PaperPreset preset;
  BoundReport report;
  double seconds;
};

std::vector<PresetRun> run_presets() {
  std::vector<PresetRun> out;
  for (const auto& p : paper_presets()) {
    const auto t0 = Clock::now();
    FullBoundOptions o;
    BoundReport r = full_bound(p.b, p.k, p.j, p.spec, o);
    out.push_back({p, r, since(t0)});
  }
  return out;
}

Outcome table_partition(const std::vector<PresetRun>& runs) {
  Outcome o;
  double worst = 0.0;
  for (const auto& run : runs) {
    const auto& r = run.report;
    double printed = -1.0;
    for (const auto& row : main_table_rows()) {
      if (row.b == r.b && row.k == r.k) printed = row.printed;
    }
    worst = std::max(worst, run.seconds);
    const std::string name = pair_name(r.b, r.k);
    if (r.path != "partition") o.fail(name + " took path " + r.path);
    if (!same_up(r.rate, printed, 5)) {
      o.fail(name + " computed " + format_up(r.rate) + " (raw " + g(r.rate) + "), printed " + g(printed, 5));
    }
    if (std::abs(r.rate - printed) > 1e-4) o.fail(name + " raw " + g(r.rate) + " further than 1e-4 from printed");
    if (run.seconds > 60.0) o.fail(name + " took " + g(run.seconds, 3) + " s");
  }
  o.summary = std::to_string(runs.size()) + " pairs, slowest " + g(worst, 3) + " s";
  return o;
}

Outcome table_shortcut() {
  Outcome o;
  const auto t0 = Clock::now();
  for (const auto& s : shortcut_entries()) {
    const int j = s.k - 2;
    const double M = psi_uniform_closed_form(PsiParams(s.b, j));
    const double rate = rate_from_Mj(ProblemParams(s.b, s.k, j), M);
    if (!same_up(rate, s.printed, 5)) {
      o.fail(pair_name(s.b, s.k) + " computed " + format_up(rate) + ", printed " + fixed(s.printed, 5));
    }
  }
  const double secs = since(t0);
  if (secs >= 1.0) o.fail("took " + g(secs, 3) + " s");
  o.summary = std::to_string(shortcut_entries().size()) + " pairs in " + g(secs, 3) + " s";
  return o;
}

Outcome m_values(const std::vector<PresetRun>& runs) {
  Outcome o;
  double worst = 0.0;
  for (const auto& pm : published_m_values()) {
    for (const auto& run : runs) {
      if (run.report.b != pm.b || run.report.k != pm.k) continue;
      const double M = *run.report.partition_M;
      worst = std::max(worst, std::abs(M - pm.M));
      if (std::abs(M - pm.M) > 1e-5) {
        o.fail(pair_name(pm.b, pm.k) + " computed " + g(M, 8) + ", printed " + g(pm.M, 8));
      }
    }
  }
  o.summary = std::to_string(published_m_values().size()) + " entries, largest gap " + g(worst, 3);
  return o;
}

Outcome mi_tables() {
  Outcome o;
  std::size_t cells = 0;
  for (const auto& pm : published_mi_values()) {
    const auto preset = find_preset(pm.b, pm.k);
    for (std::size_t i = 0; i < 4; ++i) {
      const SubdomainMax m = compute_Mi(preset->spec, kAllSelectors[i], pm.b, preset->j);
      const double v = m.value + m.certified_excess;
      const double printed = pm.values[i];
      ++cells;
      const bool abs_ok = std::abs(v - printed) <= 1e-5;
      const bool rel_ok = pm.sig[i] == 2 && std::abs(v - printed) <= 0.05 * printed;
      if (!abs_ok && !rel_ok) {
        o.fail(pair_name(pm.b, pm.k) + " " + to_string(kAllSelectors[i]) + " computed " + g(v, 6) + ", printed " +
               g(printed, 6));
      }
    }
  }
  o.summary = std::to_string(cells) + " cells";
  return o;
}

Outcome classical_columns_check() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t cells = 0;
  for (const auto& row : main_table_rows()) {
    const double km = korner_marton(ProblemParams(row.b, row.k)).value;
    ++cells;
    if (!same_up(km, row.literature.korner_marton, 5)) {
      o.fail("KM " + pair_name(row.b, row.k) + " computed " + format_up(km) + " (raw " + g(km) + "), printed " +
             fixed(row.literature.korner_marton, 5));
    }
  }
  for (const auto& row : diagonal_table_rows()) {
    const double km = korner_marton(ProblemParams(row.b, row.k)).value;
    ++cells;
    if (!same_up_sig(km, row.korner_marton, row.km_sig)) {
      o.fail("KM " + pair_name(row.b, row.k) + " computed " + sci(round_up_sig(km, row.km_sig), row.km_sig) + " (raw " +
             g(km) + "), printed " + sci(row.korner_marton, row.km_sig));
    }
  }
  for (const auto& row : dvj_table_rows()) {
    const double d = dvj_bound(ProblemParams(row.b, row.k));
    ++cells;
    if (!same_up(d, row.printed_dvj, 5)) {
      o.fail("DVJ " + pair_name(row.b, row.k) + " computed " + format_up(d) + " (raw " + g(d) + "), printed " +
             fixed(row.printed_dvj, 5));
    }
  }
  const double secs = since(t0);
  if (secs >= 1.0) o.fail("took " + g(secs, 3) + " s");
  o.summary = std::to_string(cells) + " cells in " + g(secs, 3) + " s";
  return o;
}

Outcome property_suites(const std::vector<PresetRun>& runs) {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t checks = 0;
  for (int b = 3; b <= 7; ++b) {
    for (int j = 2; j < b; ++j) {
      const OracleReport r = check_psi_oracle(b, j, 10000, 1000 + 10 * b + j);
      ++checks;
      if (!r.passed) o.fail("psi oracle b=" + std::to_string(b) + " j=" + std::to_string(j) + " diff " + g(r.max_abs_diff, 3));
    }
  }
  const std::vector<std::pair<int, int>> lemma_pairs{{6, 4}, {7, 5}, {6, 3}, {5, 3}, {9, 6}, {15, 11}};
  for (LemmaId id : {LemmaId::L6, LemmaId::L7, LemmaId::L8, LemmaId::L9}) {
    for (const auto& [b, j] : lemma_pairs) {
      for (bool boundary : {false, true}) {
        if (boundary && (id == LemmaId::L6 || id == LemmaId::L7)) continue;
        LemmaOptions lo;
        lo.boundary = boundary;
        const LemmaReport r = check_lemma_inequalities(id, b, j, 10000, 77, lo);
        ++checks;
        if (!r.passed() || r.samples != 10000) {
          o.fail(to_string(id) + " b=" + std::to_string(b) + " j=" + std::to_string(j) + " violations " +
                 std::to_string(r.violations) + " worst gap " + g(r.worst_gap, 3));
        }
      }
    }
  }
  std::mt19937_64 rng(2024);
  for (const auto& run : runs) {
    const MiTuple mi = *run.report.mi;
    const double M = combine(mi).M;
    std::exponential_distribution<double> e(1.0);
    double best = 0.0;
    for (int t = 0; t < 100000; ++t) {
      std::vector<double> eta(static_cast<std::size_t>(mi.b) + 1);
      double s = 0.0;
      for (double& x : eta) s += (x = e(rng));
      for (double& x : eta) x /= s;
      best = std::max(best, f_eta(mi, eta));
    }
    ++checks;
    if (best > M * (1.0 + 1e-12)) o.fail("combiner " + pair_name(mi.b, run.preset.k) + " random eta beats M");
  }
  for (const auto& run : runs) {
    const auto& p = run.preset;
    for (std::size_t i = 0; i < 4; ++i) {
      const SampleReport s = sample_subdomain(p.spec, kAllSelectors[i], p.b, p.j, 100000, 500 + p.b);
      const double m = *(&run.report.mi->m1 + i);
      ++checks;
      if (s.inconclusive || s.accepted != 100000 || s.best_value > m + 1e-9) {
        o.fail("sampling " + pair_name(p.b, p.k) + " " + to_string(kAllSelectors[i]) + " best " + g(s.best_value) +
               " vs " + g(m) + (s.inconclusive ? " (inconclusive)" : ""));
      }
    }
  }
  const double secs = since(t0);
  if (secs > 600.0) o.fail("took " + g(secs, 3) + " s");
  o.summary = std::to_string(checks) + " suites in " + g(secs, 3) + " s";
  return o;
}

Outcome plotkin() {
  Outcome o;
  for (int b = 5; b <= 14; ++b) {
    const PlotkinResult r = plotkin_combined_k4(b);
    const double d = dvj_bound(ProblemParams(b, 4));
    if (!(r.closed_form < d)) o.fail("b=" + std::to_string(b) + " plotkin " + g(r.closed_form) + " not below dvj " + g(d));
    if (std::abs(r.intersection - r.closed_form) > 1e-9) {
      o.fail("b=" + std::to_string(b) + " fixed point " + g(r.intersection, 14) + " vs closed form " + g(r.closed_form, 14));
    }
  }
  o.summary = "b = 5..14";
  return o;
}

Outcome codes() {
  Outcome o;
  for (int b = 3; b <= 5; ++b) {
    const auto r = max_code_exhaustive(b, b, 1);
    if (!r.complete || r.size != b) o.fail("A(" + std::to_string(b) + "," + std::to_string(b) + ",1) = " + std::to_string(r.size));
  }
  const auto asc = max_code_exhaustive(3, 3, 2, 60.0, SearchOrder::Ascending);
  const auto desc = max_code_exhaustive(3, 3, 2, 60.0, SearchOrder::Descending);
  if (!asc.complete || !desc.complete || asc.size != desc.size) {
    o.fail("A(3,3,2) ascending " + std::to_string(asc.size) + ", descending " + std::to_string(desc.size));
  }
  if (!is_bk_hash(asc.witness, 3).ok || !is_bk_hash(desc.witness, 3).ok) o.fail("A(3,3,2) witness is not a hash code");
  o.summary = "A(3,3,2) = " + std::to_string(asc.size);
  return o;
}

}  // namespace

int main() {
  int failed = 0;
  const auto runs = run_presets();
  failed += report(1, "table 1 partition path", table_partition(runs));
  failed += report(2, "table 1 shortcut path", table_shortcut());
  failed += report(3, "combined M values", m_values(runs));
  failed += report(4, "subdomain maxima tables", mi_tables());
  failed += report(5, "classical columns", classical_columns_check());
  failed += report(6, "property suites", property_suites(runs));
  failed += report(7, "Plotkin consistency", plotkin());
  failed += report(8, "exhaustive code search", codes());
  std::printf("%d of 8 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
