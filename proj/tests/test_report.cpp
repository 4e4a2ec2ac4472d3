#include <doctest.h>

#include <cmath>

#include "hashbound/presets.hpp"
#include "hashbound/report.hpp"

using namespace hashbound;

TEST_CASE("upward rounding") {
  CHECK(round_up(0.040894, 5) == doctest::Approx(0.04090));
  CHECK(round_up(0.375, 3) == doctest::Approx(0.375));
  CHECK(round_up(0.3750000000001, 3) == doctest::Approx(0.375));
  CHECK(round_up(0.37501, 3) == doctest::Approx(0.376));
  CHECK(format_up(0.0861594, 5) == "0.08616");
  CHECK(round_up_sig(6.944e-10, 2) == doctest::Approx(7.0e-10).epsilon(1e-9));
  CHECK(round_up_sig(1.11e-12, 2) == doctest::Approx(1.2e-12).epsilon(1e-9));
  CHECK(round_up_sig(0.0, 2) == 0.0);
  CHECK_THROWS(round_up(std::nan(""), 5));
  CHECK_THROWS(round_up_sig(1.0, 0));
  for (double x = 0.001; x < 2.0; x *= 1.37) {
    const double r = round_up(x, 5);
    CHECK(r >= x - 1e-14);
    CHECK(r - x < 1e-5 + 1e-14);
  }
}

TEST_CASE("bound reports survive JSON exactly") {
  const auto preset = find_preset(7, 7);
  REQUIRE(preset);
  FullBoundOptions o;
  o.run_global = false;
  const BoundReport r = full_bound(7, 7, preset->j, preset->spec, o);
  const BoundReport back = bound_report_from_json(nlohmann::json::parse(to_json(r).dump()));
  CHECK(back == r);
  CHECK(to_json(r)["rate_rounded"] == "0.04090");

  const BoundReport s = full_bound(8, 6, 4, std::nullopt, o);
  CHECK(!s.partition);
  CHECK(bound_report_from_json(nlohmann::json::parse(to_json(s).dump())) == s);
  auto broken = to_json(s);
  broken["schema"] = 99;
  CHECK_THROWS(bound_report_from_json(broken));
}

TEST_CASE("CSV rows carry rounded and raw values") {
  const BoundReport r = full_bound(8, 6, 4, std::nullopt, {});
  const auto header = csv_header();
  const auto row = csv_row(r);
  REQUIRE(header.size() == row.size());
  auto col = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    REQUIRE(it != header.end());
    return row[static_cast<std::size_t>(it - header.begin())];
  };
  CHECK(col("bound") == "0.31799");
  CHECK(std::abs(std::stod(col("bound_raw")) - r.rate) == 0.0);
  CHECK(col("M1_raw").empty());
  CHECK(csv_line({"a", "b,c", "d\"e"}) == "a,\"b,c\",\"d\"\"e\"");
}

TEST_CASE("text rendering names the path") {
  const BoundReport r = full_bound(8, 6, 4, std::nullopt, {});
  const std::string t = render_text(r);
  CHECK(t.find("uniform-shortcut") != std::string::npos);
  CHECK(t.find("0.31799") != std::string::npos);
}
