#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hashbound/combiner.hpp"

namespace hashbound {

inline constexpr int kReportSchema = 1;

/// Smallest multiple of 10^-decimals not below x, forgiving noise up to 1e-9
/// in x * 10^decimals so exact decimals stay put.
double round_up(double x, int decimals);

/// Upward rounding to `sig` significant digits.
double round_up_sig(double x, int sig);

/// Fixed-point text of round_up(x, decimals).
std::string format_up(double x, int decimals = 5);

nlohmann::json to_json(const BoundReport& r);
BoundReport bound_report_from_json(const nlohmann::json& j);

std::vector<std::string> csv_header();
std::vector<std::string> csv_row(const BoundReport& r);
std::string csv_line(const std::vector<std::string>& cells);

std::string render_text(const BoundReport& r);

}  // namespace hashbound
