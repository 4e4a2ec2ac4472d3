#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
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
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitBudget = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  int b = 0;
  int k = 0;
  std::optional<int> j;
  std::string partition = "auto";
  std::string eps = "paper";
  int grid = 400;
  bool certify = false;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string out;
  double budget_secs = 60.0;
};

void add_format_options(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  app->add_option("--out", c.out, "Write output to this file instead of stdout");
}

void add_bk_options(CLI::App* app, Common& c, bool required = true) {
  auto* b = app->add_option("--b", c.b, "Alphabet size");
  auto* k = app->add_option("--k", c.k, "Hashing order");
  if (required) {
    b->required();
    k->required();
  }
  app->add_option("--j", c.j, "Order of Psi_j (default k-2)");
}

void add_search_options(CLI::App* app, Common& c) {
  app->add_option("--partition", c.partition, "Partition kind")->check(CLI::IsMember({"max", "min", "auto"}));
  app->add_option("--eps", c.eps, "Threshold, or 'paper' for the published choice");
  app->add_option("--grid", c.grid, "Grid points per axis for the subdomain maxima")->check(CLI::Range(8, 100000));
  app->add_flag("--certify", c.certify, "Certify the subdomain maxima by branch and bound");
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw UsageError("cannot open output file " + c.out);
  f << text;
}

int resolve_j(const Common& c) {
  const int j = c.j.value_or(c.k - 2);
  ProblemParams(c.b, c.k, j);
  return j;
}

MaximizeOptions maximize_options(const Common& c) {
  MaximizeOptions m;
  m.grid = c.grid;
  m.certify = c.certify;
  return m;
}

double default_eps(PartitionKind kind, int b, int j) {
  return kind == PartitionKind::MaxValue ? 1.0 / (j + 1) : 1.0 / (2.0 * b);
}

// Partitions to try for the requested kind and threshold. The published
// choice applies only at its own j.
std::vector<PartitionSpec> resolve_specs(const Common& c, int j) {
  const auto preset = find_preset(c.b, c.k);
  const bool use_preset = c.eps == "paper" && preset && preset->j == j;
  std::vector<PartitionKind> kinds;
  if (c.partition == "max") kinds = {PartitionKind::MaxValue};
  if (c.partition == "min") kinds = {PartitionKind::MinValue};
  if (c.partition == "auto") {
    if (use_preset) return {preset->spec};
    kinds = {PartitionKind::MaxValue, PartitionKind::MinValue};
  }
  std::vector<PartitionSpec> specs;
  for (PartitionKind kind : kinds) {
    PartitionSpec spec{kind, 0.0};
    if (c.eps == "paper") {
      spec.epsilon = (use_preset && preset->spec.kind == kind) ? preset->spec.epsilon : default_eps(kind, c.b, j);
    } else {
      try {
        spec.epsilon = std::stod(c.eps);
      } catch (const std::exception&) {
        throw UsageError("--eps must be a number or 'paper'");
      }
    }
    try {
      spec.validate(c.b, j);
    } catch (const std::invalid_argument& e) {
      if (c.partition != "auto") throw UsageError(e.what());
      continue;
    }
    specs.push_back(spec);
  }
  if (specs.empty()) throw UsageError("no admissible partition for the given threshold");
  return specs;
}

// Best report over the candidate partitions; alternatives get their rates listed.
struct BoundRun {
  BoundReport best;
  std::vector<BoundReport> all;
};

BoundRun run_bound(const Common& c, int j, const std::vector<PartitionSpec>& specs) {
  FullBoundOptions opts;
  opts.maximize = maximize_options(c);
  opts.global = global_max(c.b, j, opts.maximize);
  BoundRun run;
  for (const auto& spec : specs) run.all.push_back(full_bound(c.b, c.k, j, spec, opts));
  run.best = run.all.front();
  for (const auto& r : run.all) {
    if (r.rate < run.best.rate) run.best = r;
  }
  return run;
}

// ---- generic tables -------------------------------------------------------

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;
};

std::string render(const Table& t, const std::string& format) {
  std::ostringstream o;
  if (format == "csv") {
    o << csv_line(t.columns) << "\n";
    for (const auto& r : t.rows) o << csv_line(r) << "\n";
    return o.str();
  }
  if (format == "json") {
    json j;
    j["schema"] = kReportSchema;
    j["table"] = t.name;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    j["notes"] = t.notes;
    return j.dump(2) + "\n";
  }
  std::vector<std::size_t> w(t.columns.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = t.columns[i].size();
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      o << cells[i] << std::string(w[i] - cells[i].size() + 2, ' ');
    }
    o << "\n";
  };
  line(t.columns);
  for (const auto& r : t.rows) line(r);
  for (const auto& n : t.notes) o << n << "\n";
  return o.str();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string up5(double x) { return format_up(x, 5); }
std::string raw(double x) { return fmt("%.10g", x); }
std::string yes(bool b) { return b ? "yes" : "NO"; }

// Upward rounding at the significant digits a value was printed with.
std::string sci_up(double x, int sig) { return fmt(("%." + std::to_string(sig - 1) + "e").c_str(), round_up_sig(x, sig)); }

const char* kLiteratureNote = "columns tagged [lit] are published literature values, not computed here";

Table table_main(const Common& c, bool& ok) {
  Table t{"table1",
          {"b", "k", "path", "bound", "printed", "match", "bound_raw", "arikan[lit]", "venkat[lit]", "korner_marton",
           "korner_marton_printed", "km_match"},
          {},
          {kLiteratureNote}};
  for (const auto& row : main_table_rows()) {
    const int j = row.k - 2;
    BoundReport r;
    if (row.shortcut) {
      FullBoundOptions opts;
      opts.run_global = false;
      r = full_bound(row.b, row.k, j, std::nullopt, opts);
    } else {
      const auto preset = find_preset(row.b, row.k);
      FullBoundOptions opts;
      opts.maximize = maximize_options(c);
      r = full_bound(row.b, row.k, preset->j, preset->spec, opts);
    }
    const bool match = up5(r.rate) == up5(row.printed);
    const bool km_match = up5(r.classical.korner_marton) == up5(row.literature.korner_marton);
    ok = ok && match && km_match;
    t.rows.push_back({std::to_string(row.b), std::to_string(row.k), r.path, up5(r.rate), up5(row.printed), yes(match),
                      raw(r.rate), up5(row.literature.arikan), up5(row.literature.venkat),
                      up5(r.classical.korner_marton), up5(row.literature.korner_marton), yes(km_match)});
  }
  t.notes.push_back("shortcut rows trust the uniform closed form as the global maximum");
  return t;
}

Table table_dvj(bool& ok) {
  Table t{"table2",
          {"b", "k", "dvj", "dvj_printed", "match", "dvj_raw", "costa_dalai[lit]", "arikan[lit]", "venkat[lit]",
           "korner_marton(j)", "korner_marton_printed", "km_match"},
          {},
          {kLiteratureNote}};
  for (const auto& row : dvj_table_rows()) {
    const double dvj = dvj_bound(ProblemParams(row.b, row.k));
    const double km = korner_marton_term(row.b, row.k, row.korner_marton_j);
    const bool match = up5(dvj) == up5(row.printed_dvj);
    const bool km_match = up5(km) == up5(row.korner_marton);
    ok = ok && match && km_match;
    auto with_j = [](double v, std::optional<int> j) { return up5(v) + (j ? "(" + std::to_string(*j) + ")" : ""); };
    t.rows.push_back({std::to_string(row.b), std::to_string(row.k), up5(dvj), up5(row.printed_dvj), yes(match), raw(dvj),
                      row.costa_dalai ? up5(*row.costa_dalai) : "---", with_j(row.arikan, row.arikan_j),
                      with_j(row.venkat, row.venkat_j), with_j(km, row.korner_marton_j),
                      with_j(row.korner_marton, row.korner_marton_j), yes(km_match)});
  }
  return t;
}

Table table_diagonal(bool& ok) {
  Table t{"table3",
          {"b", "k", "korner_marton", "korner_marton_printed", "match", "km_j", "km_raw", "venkat[lit]",
           "costa_dalai[lit]", "arikan[lit]"},
          {},
          {kLiteratureNote, "korner_marton is rounded upward at the printed significant digits"}};
  for (const auto& row : diagonal_table_rows()) {
    const auto km = korner_marton(ProblemParams(row.b, row.k));
    const std::string mine = sci_up(km.value, row.km_sig);
    const std::string printed = sci_up(row.korner_marton, row.km_sig);
    const bool match = mine == printed;
    ok = ok && match;
    t.rows.push_back({std::to_string(row.b), std::to_string(row.k), mine, printed, yes(match), std::to_string(km.j),
                      raw(km.value), sci_up(row.venkat, 6), up5(row.costa_dalai), up5(row.arikan)});
  }
  return t;
}

Table table_m_values(const Common& c, bool& ok) {
  Table t{"msvalues", {"b", "k", "j", "partition", "epsilon", "M", "M_printed", "abs_diff", "within_1e-5"}, {}, {}};
  for (const auto& pm : published_m_values()) {
    const auto preset = find_preset(pm.b, pm.k);
    FullBoundOptions opts;
    opts.maximize = maximize_options(c);
    opts.run_global = false;
    const BoundReport r = full_bound(pm.b, pm.k, preset->j, preset->spec, opts);
    const double m = *r.partition_M;
    const bool within = std::abs(m - pm.M) <= 1e-5;
    ok = ok && within;
    t.rows.push_back({std::to_string(pm.b), std::to_string(pm.k), std::to_string(preset->j),
                      to_string(preset->spec.kind), preset->eps_text, fmt("%.7f", m), fmt("%.7f", pm.M),
                      fmt("%.2e", std::abs(m - pm.M)), yes(within)});
  }
  return t;
}

Table table_mi(const Common& c, bool& ok) {
  Table t{"mi-tables",
          {"b", "k", "partition", "selector", "value", "printed", "rounded_up_at_printed_digits", "upper_bound_only",
           "argmax_config", "ok"},
          {},
          {"ok: within 1e-5 absolute, or within 5% relative for entries printed in scientific form"}};
  for (const auto& pm : published_mi_values()) {
    const auto preset = find_preset(pm.b, pm.k);
    for (std::size_t i = 0; i < 4; ++i) {
      const MSelector which = kAllSelectors[i];
      const SubdomainMax m = compute_Mi(preset->spec, which, pm.b, preset->j, maximize_options(c));
      const double v = m.value + m.certified_excess;
      const double printed = pm.values[i];
      const bool within = std::abs(v - printed) <= 1e-5 || (pm.sig[i] > 0 && std::abs(v - printed) <= 0.05 * printed);
      ok = ok && within;
      const std::string shown = pm.sig[i] ? sci_up(printed, pm.sig[i]) : fmt("%.6f", printed);
      const std::string rounded = pm.sig[i] ? sci_up(v, pm.sig[i]) : fmt("%.6f", v);
      t.rows.push_back({std::to_string(pm.b), std::to_string(pm.k), to_string(pm.kind), to_string(which),
                        fmt("%.6e", v), shown, rounded,
                        m.upper_bound_only ? "yes" : "no", m.argmax_config.describe(), yes(within)});
    }
  }
  return t;
}

// ---- subcommands ----------------------------------------------------------

int cmd_bound(const Common& c) {
  const int j = resolve_j(c);
  const auto specs = resolve_specs(c, j);
  const BoundRun run = run_bound(c, j, specs);
  if (c.format == "json") {
    emit(c, to_json(run.best).dump(2) + "\n");
  } else if (c.format == "csv") {
    emit(c, csv_line(csv_header()) + "\n" + csv_line(csv_row(run.best)) + "\n");
  } else {
    std::string text = render_text(run.best);
    if (run.all.size() > 1) {
      for (const auto& r : run.all) {
        if (r.partition) {
          text += "tried " + to_string(r.partition->kind) + " eps=" + raw(r.partition->epsilon) + ": " +
                  (r.partition_rate ? up5(*r.partition_rate) : "-") + "\n";
        }
      }
    }
    emit(c, text);
  }
  return kExitOk;
}

int cmd_table(const Common& c, const std::string& which) {
  bool ok = true;
  Table t;
  if (which == "table1") {
    t = table_main(c, ok);
  } else if (which == "table2" || which == "table2-computed-columns") {
    t = table_dvj(ok);
  } else if (which == "table3" || which == "table3-computed-columns") {
    t = table_diagonal(ok);
  } else if (which == "msvalues") {
    t = table_m_values(c, ok);
  } else if (which == "mi-tables") {
    t = table_mi(c, ok);
  } else {
    throw UsageError("unknown table preset: " + which);
  }
  emit(c, render(t, c.format));
  return ok ? kExitOk : kExitVerify;
}

struct VerifyOptions {
  std::vector<std::string> pairs{"6,4", "7,5", "6,3"};
  std::size_t samples = 10000;
  double fault = 0.0;
};

std::pair<int, int> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("expected b,j but got " + text);
  try {
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("expected b,j but got " + text);
  }
}

int cmd_verify(const Common& c, const VerifyOptions& v) {
  Table t{"verify", {"b", "j", "check", "samples", "detail", "result"}, {}, {}};
  bool ok = true;
  auto add = [&](int b, int j, const std::string& check, std::size_t n, const std::string& detail, bool pass) {
    ok = ok && pass;
    t.rows.push_back({std::to_string(b), std::to_string(j), check, std::to_string(n), detail, pass ? "pass" : "FAIL"});
  };
  for (const auto& text : v.pairs) {
    const auto [b, j] = parse_pair(text);
    static_cast<void>(PsiParams(b, j));
    if (b <= kPsiNaiveMaxB) {
      const auto o = check_psi_oracle(b, j, v.samples, c.seed, v.fault);
      add(b, j, "psi_fast vs psi_naive", o.samples, "max diff " + fmt("%.2e", o.max_abs_diff), o.passed);
    }
    for (LemmaId id : {LemmaId::L6, LemmaId::L7, LemmaId::L8, LemmaId::L9}) {
      for (bool boundary : {false, true}) {
        if (boundary && id == LemmaId::L6) continue;
        LemmaOptions lo;
        lo.boundary = boundary;
        lo.fault = v.fault;
        const auto r = check_lemma_inequalities(id, b, j, v.samples, c.seed, lo);
        add(b, j, to_string(id) + (boundary ? " boundary" : ""), r.samples,
            std::to_string(r.violations) + " violations, worst gap " + fmt("%.2e", r.worst_gap), r.passed());
      }
    }
    for (PartitionKind kind : {PartitionKind::MaxValue, PartitionKind::MinValue}) {
      const PartitionSpec spec{kind, default_eps(kind, b, j)};
      for (MSelector which : kAllSelectors) {
        const SubdomainMax m = compute_Mi(spec, which, b, j, maximize_options(c));
        const SampleReport s = sample_subdomain(spec, which, b, j, v.samples, c.seed);
        const double best = s.best_value + v.fault;
        const bool pass = s.inconclusive || best <= m.value + m.certified_excess + 1e-9;
        add(b, j, "sampling " + to_string(kind) + " " + to_string(which), s.accepted,
            "sampled " + fmt("%.9g", best) + " <= engine " + fmt("%.9g", m.value + m.certified_excess) +
                (s.inconclusive ? " (inconclusive)" : ""),
            pass);
      }
    }
  }
  t.notes.push_back(ok ? "all checks passed" : "VERIFICATION FAILED");
  emit(c, render(t, c.format));
  return ok ? kExitOk : kExitVerify;
}

struct SweepOptions {
  double from = 0.0;
  double to = 0.0;
  int steps = 20;
};

int cmd_sweep(const Common& c, const SweepOptions& s) {
  const int j = resolve_j(c);
  if (c.partition == "auto") throw UsageError("sweep-eps needs --partition max or min");
  const PartitionKind kind = parse_partition_kind(c.partition);
  if (s.steps < 1) throw UsageError("--steps must be positive");
  if (!(s.from < s.to) && !(s.steps == 1 && s.from == s.to)) throw UsageError("empty threshold range");
  const PartitionSpec lo{kind, s.from};
  const PartitionSpec hi{kind, s.to};
  try {
    lo.validate(c.b, j);
    hi.validate(c.b, j);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("threshold range outside the admissible interval: ") + e.what());
  }
  FullBoundOptions opts;
  opts.maximize = maximize_options(c);
  opts.global = global_max(c.b, j, opts.maximize);
  Table t{"sweep-eps", {"epsilon", "M", "bound", "bound_raw", "partition_bound_raw"}, {}, {}};
  double best_rate = INFINITY;
  double best_eps = s.from;
  for (int i = 0; i <= s.steps; ++i) {
    const double eps = s.steps == 0 ? s.from : s.from + (s.to - s.from) * i / s.steps;
    const BoundReport r = full_bound(c.b, c.k, j, PartitionSpec{kind, eps}, opts);
    t.rows.push_back({raw(eps), raw(*r.partition_M), up5(r.rate), raw(r.rate), raw(*r.partition_rate)});
    if (*r.partition_rate < best_rate) {
      best_rate = *r.partition_rate;
      best_eps = eps;
    }
  }
  t.notes.push_back("best partition bound " + up5(best_rate) + " (" + raw(best_rate) + ") at eps = " + raw(best_eps));
  const auto preset = find_preset(c.b, c.k);
  if (preset && preset->j == j && preset->spec.kind == kind) {
    const BoundReport p = full_bound(c.b, c.k, j, preset->spec, opts);
    t.notes.push_back("published choice eps = " + preset->eps_text + " gives " + up5(*p.partition_rate) + "; sweep " +
                      (best_rate < *p.partition_rate - 1e-12 ? "improves on it" : "does not improve on it"));
  }
  emit(c, render(t, c.format));
  return kExitOk;
}

int cmd_classical(const Common& c, const std::string& f_table) {
  const ProblemParams pp(c.b, c.k);
  Table t{"classical", {"bound", "value", "value_raw", "j"}, {}, {}};
  t.rows.push_back({"fredman_komlos", up5(fredman_komlos(pp)), raw(fredman_komlos(pp)), ""});
  if (c.k >= 4) {
    const auto km = korner_marton(pp);
    t.rows.push_back({"korner_marton", up5(km.value), raw(km.value), std::to_string(km.j)});
    t.rows.push_back({"dvj", up5(dvj_bound(pp)), raw(dvj_bound(pp)), "2"});
    const auto cj = conjectured_bound(pp);
    t.rows.push_back({"conjectured", up5(cj.value), raw(cj.value), std::to_string(cj.j)});
  }
  if (c.k == 4) {
    const auto pl = plotkin_combined_k4(c.b);
    t.rows.push_back({"plotkin_combined", up5(pl.intersection), raw(pl.intersection), ""});
    t.rows.push_back({"plotkin_closed_form", up5(pl.closed_form), raw(pl.closed_form), ""});
  }
  if (!f_table.empty()) {
    const TabulatedF f = TabulatedF::load(f_table);
    const double v = balanced_fixed_point(c.b, c.k, [&](double r) { return f(r); });
    t.rows.push_back({"balanced_fixed_point", up5(v), raw(v), ""});
  }
  emit(c, render(t, c.format));
  return kExitOk;
}

struct CodeOptions {
  int n = 1;
  std::string order = "asc";
  std::string witness;
};

int cmd_search_code(const Common& c, const CodeOptions& o) {
  const auto order = o.order == "desc" ? SearchOrder::Descending : SearchOrder::Ascending;
  const auto r = max_code_exhaustive(c.b, c.k, o.n, c.budget_secs, order);
  json j{{"schema", kReportSchema}, {"b", c.b},         {"k", c.k},   {"n", o.n},
         {"size", r.size},          {"complete", r.complete}, {"nodes", r.nodes},
         {"rate", std::log2(static_cast<double>(r.size)) / o.n}};
  std::ostringstream words;
  write_code(words, r.witness);
  if (!o.witness.empty()) {
    std::ofstream f(o.witness);
    if (!f) throw UsageError("cannot open witness file " + o.witness);
    f << words.str();
  }
  if (c.format == "json") {
    emit(c, j.dump(2) + "\n");
  } else {
    std::ostringstream text;
    text << "A(" << c.b << "," << c.k << "," << o.n << ") " << (r.complete ? "= " : ">= ") << r.size << "  ("
         << r.nodes << " nodes" << (r.complete ? "" : ", budget exceeded") << ")\n"
         << words.str();
    emit(c, text.str());
  }
  return r.complete ? kExitOk : kExitBudget;
}

struct SampleOptions {
  std::string which = "all";
  std::size_t samples = 100000;
};

int cmd_sample_mi(const Common& c, const SampleOptions& s) {
  const int j = resolve_j(c);
  const auto specs = resolve_specs(c, j);
  Table t{"sample-mi",
          {"partition", "epsilon", "selector", "accepted", "sampled_max", "engine", "dominated", "inconclusive"},
          {},
          {}};
  bool ok = true;
  for (const auto& spec : specs) {
    for (MSelector which : kAllSelectors) {
      if (s.which != "all" && parse_selector(s.which) != which) continue;
      const SampleReport r = sample_subdomain(spec, which, c.b, j, s.samples, c.seed);
      const SubdomainMax m = compute_Mi(spec, which, c.b, j, maximize_options(c));
      const double engine = m.value + m.certified_excess;
      const bool dominated = r.best_value <= engine + 1e-9;
      ok = ok && (dominated || r.inconclusive);
      t.rows.push_back({to_string(spec.kind), raw(spec.epsilon), to_string(which), std::to_string(r.accepted),
                        fmt("%.9g", r.best_value), fmt("%.9g", engine), yes(dominated), r.inconclusive ? "yes" : "no"});
    }
  }
  emit(c, render(t, c.format));
  return ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Upper bounds on the rate of (b,k)-hash codes"};
  app.require_subcommand(1);
  Common c;

  auto* bound = app.add_subcommand("bound", "Compute one bound");
  add_bk_options(bound, c);
  add_search_options(bound, c);
  add_format_options(bound, c);
  std::string preset_flag;
  bound->add_option("--preset", preset_flag, "'paper' is the same as --eps paper")->check(CLI::IsMember({"paper"}));

  auto* table = app.add_subcommand("table", "Reproduce a published table");
  std::string table_name;
  table->add_option("--preset", table_name, "table1, table2, table3, msvalues or mi-tables")->required();
  table->add_option("--grid", c.grid, "Grid points per axis")->check(CLI::Range(8, 100000));
  table->add_flag("--certify", c.certify, "Certify the subdomain maxima");
  add_format_options(table, c);

  auto* verify = app.add_subcommand("verify", "Run the property and sampling suites");
  VerifyOptions vo;
  verify->add_option("--pairs", vo.pairs, "b,j pairs to check");
  verify->add_option("--samples", vo.samples, "Samples per check");
  verify->add_option("--seed", c.seed, "Random seed");
  verify->add_option("--inject-fault", vo.fault, "Perturb evaluations by this amount")->group("");
  verify->add_option("--grid", c.grid, "Grid points per axis")->check(CLI::Range(8, 100000));
  add_format_options(verify, c);

  auto* sweep = app.add_subcommand("sweep-eps", "Scan the partition threshold");
  SweepOptions so;
  add_bk_options(sweep, c);
  add_search_options(sweep, c);
  sweep->add_option("--from", so.from, "First threshold")->required();
  sweep->add_option("--to", so.to, "Last threshold")->required();
  sweep->add_option("--steps", so.steps, "Number of intervals");
  add_format_options(sweep, c);

  auto* classical = app.add_subcommand("classical", "Closed-form bounds");
  std::string f_table;
  add_bk_options(classical, c);
  classical->add_option("--f-table", f_table, "File of 'rate delta' lines for the fixed-point solver");
  add_format_options(classical, c);

  auto* search = app.add_subcommand("search-code", "Exhaustive search for small hash codes");
  CodeOptions co;
  add_bk_options(search, c);
  search->add_option("--n", co.n, "Code length")->required();
  search->add_option("--order", co.order, "Search order")->check(CLI::IsMember({"asc", "desc"}));
  search->add_option("--budget-secs", c.budget_secs, "Time budget");
  search->add_option("--witness", co.witness, "Write the best code found to this file");
  add_format_options(search, c);

  auto* sample = app.add_subcommand("sample-mi", "Sample subdomains and compare with the engine");
  SampleOptions sa;
  add_bk_options(sample, c);
  add_search_options(sample, c);
  sample->add_option("--which", sa.which, "M1..M4 or all");
  sample->add_option("--samples", sa.samples, "Samples per selector");
  sample->add_option("--seed", c.seed, "Random seed");
  add_format_options(sample, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*bound) {
      if (!preset_flag.empty()) c.eps = "paper";
      return cmd_bound(c);
    }
    if (*table) return cmd_table(c, table_name);
    if (*verify) return cmd_verify(c, vo);
    if (*sweep) return cmd_sweep(c, so);
    if (*classical) return cmd_classical(c, f_table);
    if (*search) return cmd_search_code(c, co);
    if (*sample) return cmd_sample_mi(c, sa);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerify;
  }
  return kExitUsage;
}
