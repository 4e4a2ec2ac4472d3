#include "hashbound/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hashbound {

namespace {

constexpr double kRoundNoise = 1e-9;

using nlohmann::json;

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

std::string full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string opt_up(const std::optional<double>& v) { return v ? format_up(*v) : ""; }
std::string opt_full(const std::optional<double>& v) { return v ? full(*v) : ""; }

}  // namespace

double round_up(double x, int decimals) {
  if (!std::isfinite(x)) throw std::invalid_argument("round_up: value is not finite");
  const double scale = std::pow(10.0, decimals);
  return std::ceil(x * scale - kRoundNoise) / scale;
}

double round_up_sig(double x, int sig) {
  if (!std::isfinite(x)) throw std::invalid_argument("round_up_sig: value is not finite");
  if (sig < 1) throw std::invalid_argument("round_up_sig: need at least one digit");
  if (x == 0.0) return 0.0;
  const int e = static_cast<int>(std::floor(std::log10(std::abs(x))));
  const double scale = std::pow(10.0, sig - 1 - e);
  return std::ceil(x * scale - kRoundNoise) / scale;
}

std::string format_up(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, round_up(x, decimals));
  return buf;
}

json to_json(const BoundReport& r) {
  json j;
  j["schema"] = kReportSchema;
  j["b"] = r.b;
  j["k"] = r.k;
  j["j"] = r.j;
  if (r.partition) {
    j["partition"] = {{"kind", to_string(r.partition->kind)}, {"epsilon", r.partition->epsilon}};
  } else {
    j["partition"] = nullptr;
  }
  if (r.mi) {
    j["mi"] = {r.mi->m1, r.mi->m2, r.mi->m3, r.mi->m4};
  } else {
    j["mi"] = nullptr;
  }
  j["mi_configs"] = r.mi_configs;
  j["mi_upper_bound"] = r.mi_upper_bound;
  j["mi_certified_excess"] = r.mi_certified_excess;
  j["partition_M"] = opt(r.partition_M);
  j["partition_rate"] = opt(r.partition_rate);
  j["eta0"] = opt(r.eta0);
  j["combiner_fallback"] = r.combiner_fallback;
  j["global_max"] = r.global_max;
  j["global_checked"] = r.global_checked;
  j["uniform_value"] = r.uniform_value;
  j["uniform_is_global"] = r.uniform_is_global;
  j["shortcut_rate"] = r.shortcut_rate;
  j["M"] = r.M;
  j["rate"] = r.rate;
  j["rate_rounded"] = format_up(r.rate);
  j["path"] = r.path;
  j["classical"] = {{"fredman_komlos", r.classical.fredman_komlos},
                    {"korner_marton", r.classical.korner_marton},
                    {"korner_marton_j", r.classical.korner_marton_j},
                    {"dvj", r.classical.dvj},
                    {"conjectured", r.classical.conjectured},
                    {"conjectured_j", r.classical.conjectured_j}};
  j["certified"] = r.certified;
  j["seconds"] = r.seconds;
  return j;
}

BoundReport bound_report_from_json(const json& j) {
  if (j.value("schema", 0) != kReportSchema) throw std::invalid_argument("bound report: unsupported schema");
  BoundReport r;
  r.b = j.at("b").get<int>();
  r.k = j.at("k").get<int>();
  r.j = j.at("j").get<int>();
  if (!j.at("partition").is_null()) {
    const auto& p = j.at("partition");
    r.partition = PartitionSpec{parse_partition_kind(p.at("kind").get<std::string>()), p.at("epsilon").get<double>()};
  }
  if (!j.at("mi").is_null()) {
    const auto v = j.at("mi").get<std::vector<double>>();
    if (v.size() != 4) throw std::invalid_argument("bound report: mi must have 4 entries");
    r.mi = MiTuple{v[0], v[1], v[2], v[3], r.b};
  }
  r.mi_configs = j.at("mi_configs").get<std::vector<std::string>>();
  r.mi_upper_bound = j.at("mi_upper_bound").get<std::vector<bool>>();
  r.mi_certified_excess = j.at("mi_certified_excess").get<double>();
  r.partition_M = get_opt<double>(j, "partition_M");
  r.partition_rate = get_opt<double>(j, "partition_rate");
  r.eta0 = get_opt<double>(j, "eta0");
  r.combiner_fallback = j.at("combiner_fallback").get<bool>();
  r.global_max = j.at("global_max").get<double>();
  r.global_checked = j.at("global_checked").get<bool>();
  r.uniform_value = j.at("uniform_value").get<double>();
  r.uniform_is_global = j.at("uniform_is_global").get<bool>();
  r.shortcut_rate = j.at("shortcut_rate").get<double>();
  r.M = j.at("M").get<double>();
  r.rate = j.at("rate").get<double>();
  r.path = j.at("path").get<std::string>();
  const auto& c = j.at("classical");
  r.classical.fredman_komlos = c.at("fredman_komlos").get<double>();
  r.classical.korner_marton = c.at("korner_marton").get<double>();
  r.classical.korner_marton_j = c.at("korner_marton_j").get<int>();
  r.classical.dvj = c.at("dvj").get<double>();
  r.classical.conjectured = c.at("conjectured").get<double>();
  r.classical.conjectured_j = c.at("conjectured_j").get<int>();
  r.certified = j.at("certified").get<bool>();
  r.seconds = j.at("seconds").get<double>();
  return r;
}

std::vector<std::string> csv_header() {
  return {"b",          "k",          "j",        "partition",     "epsilon",        "path",
          "bound",      "bound_raw",  "M_raw",    "M1_raw",        "M2_raw",         "M3_raw",
          "M4_raw",     "eta0_raw",   "shortcut", "shortcut_raw",  "fredman_komlos", "fredman_komlos_raw",
          "korner_marton", "korner_marton_raw", "korner_marton_j", "dvj", "dvj_raw", "certified"};
}

std::vector<std::string> csv_row(const BoundReport& r) {
  auto mi = [&](int i) -> std::string {
    if (!r.mi) return "";
    const double v[4] = {r.mi->m1, r.mi->m2, r.mi->m3, r.mi->m4};
    return full(v[i]);
  };
  return {std::to_string(r.b),
          std::to_string(r.k),
          std::to_string(r.j),
          r.partition ? to_string(r.partition->kind) : "",
          r.partition ? full(r.partition->epsilon) : "",
          r.path,
          format_up(r.rate),
          full(r.rate),
          full(r.M),
          mi(0),
          mi(1),
          mi(2),
          mi(3),
          opt_full(r.eta0),
          format_up(r.shortcut_rate),
          full(r.shortcut_rate),
          format_up(r.classical.fredman_komlos),
          full(r.classical.fredman_komlos),
          format_up(r.classical.korner_marton),
          full(r.classical.korner_marton),
          std::to_string(r.classical.korner_marton_j),
          format_up(r.classical.dvj),
          full(r.classical.dvj),
          r.certified ? "true" : "false"};
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n") != std::string::npos) {
      out += '"';
      for (char ch : c) {
        if (ch == '"') out += '"';
        out += ch;
      }
      out += '"';
    } else {
      out += c;
    }
  }
  return out;
}

std::string render_text(const BoundReport& r) {
  std::ostringstream o;
  o << "(b,k) = (" << r.b << "," << r.k << "), j = " << r.j << "\n";
  if (r.partition && r.mi) {
    o << "partition: " << to_string(r.partition->kind) << ", eps = " << full(r.partition->epsilon) << "\n";
    const double v[4] = {r.mi->m1, r.mi->m2, r.mi->m3, r.mi->m4};
    for (int i = 0; i < 4; ++i) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "  M%d = %.9g", i + 1, v[i]);
      o << buf;
      if (i < static_cast<int>(r.mi_upper_bound.size()) && r.mi_upper_bound[static_cast<std::size_t>(i)]) {
        o << "  (upper bound: relaxed domain)";
      }
      if (i < static_cast<int>(r.mi_configs.size())) o << "  at " << r.mi_configs[static_cast<std::size_t>(i)];
      o << "\n";
    }
    if (r.mi_certified_excess > 0.0) o << "  certified excess " << full(r.mi_certified_excess) << " included\n";
    o << "  combined M = " << full(*r.partition_M) << ", eta0 = " << full(*r.eta0);
    if (r.combiner_fallback) o << "  [fallback: M4 <= M3, maximized directly]";
    o << "\n  partition bound = " << opt_up(r.partition_rate) << " (" << opt_full(r.partition_rate) << ")\n";
  }
  o << "uniform value = " << full(r.uniform_value);
  if (r.global_checked) {
    o << ", global max = " << full(r.global_max) << (r.uniform_is_global ? " (uniform is global)" : " (uniform is NOT global)");
  } else {
    o << " (global max not checked)";
  }
  o << "\nshortcut bound = " << format_up(r.shortcut_rate) << " (" << full(r.shortcut_rate) << ")\n";
  o << "final bound = " << format_up(r.rate) << " (" << full(r.rate) << ") via " << r.path << ", M = " << full(r.M)
    << "\n";
  o << "classical: Fredman-Komlos " << format_up(r.classical.fredman_komlos) << ", Korner-Marton "
    << format_up(r.classical.korner_marton) << " (j=" << r.classical.korner_marton_j << ")"
    << ", DVJ " << format_up(r.classical.dvj) << ", conjectured " << format_up(r.classical.conjectured) << " (j="
    << r.classical.conjectured_j << ")\n";
  o << (r.certified ? "subdomain maxima certified" : "subdomain maxima not certified") << ", " << r.seconds << " s\n";
  return o.str();
}

}  // namespace hashbound
