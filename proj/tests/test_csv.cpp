#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>

#include "rswr/csv.hpp"
#include "rswr/errors.hpp"

using namespace rswr;

TEST_CASE("format_number round-trips exactly") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> bits;
  int checked = 0;
  while (checked < 20000) {
    const std::uint64_t b = bits(rng);
    double v;
    std::memcpy(&v, &b, sizeof v);
    if (!std::isfinite(v)) {
      continue;
    }
    ++checked;
    const auto s = csv::format_number(v);
    const double back = std::strtod(s.c_str(), nullptr);
    REQUIRE(std::memcmp(&back, &v, sizeof v) == 0);
  }
  CHECK(std::strtod(csv::format_number(0.1).c_str(), nullptr) == 0.1);
  CHECK(std::strtod(csv::format_number(-1e-300).c_str(), nullptr) == -1e-300);
}

TEST_CASE("solution files round-trip with sampling") {
  const auto grid = Grid1D::uniform(0.0, 1.0, 11);
  FieldSlab slab(grid, 5, 0.05, 3);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  for (std::size_t r = 0; r < slab.n_rows(); ++r) {
    for (std::size_t i = 0; i < slab.n_nodes(); ++i) {
      slab.at(r, i) = n(rng);
    }
  }
  std::stringstream ss;
  csv::write_solution(ss, slab, 3);
  const auto table = csv::read_solution(ss);
  REQUIRE(table.x.size() == 4);
  REQUIRE(table.t.size() == 4);
  CHECK(table.x[1] == grid.x(3));
  CHECK(table.x[3] == grid.x(9));
  CHECK(table.t[0] == 5 * 0.05);
  CHECK(table.values[2][3] == slab.at(2, 9));
  CHECK(csv::max_abs_difference(table, table) == 0.0);

  std::stringstream again;
  csv::write_solution(again, slab, 1);
  const auto full = csv::read_solution(again);
  CHECK(full.x.size() == 11);
  CHECK_THROWS_AS(csv::max_abs_difference(table, full), InvalidInput);
  CHECK_THROWS_AS(csv::write_solution(again, slab, 0), InvalidInput);
}

TEST_CASE("malformed solution files are rejected") {
  for (const char* text : {"", "x,0,1\n0,1,2\n", "t,0,1\n0,1\n", "t,0,1\n0,1,abc\n",
                           "t,0,1\n0,1,2,3\n"}) {
    CAPTURE(text);
    std::stringstream ss(text);
    CHECK_THROWS_AS(csv::read_solution(ss), InvalidInput);
  }
}

TEST_CASE("error file layout") {
  std::vector<runtime::WindowRecord> windows(2);
  windows[0].k = 1;
  windows[0].global_steps = 19;
  windows[1].k = 2;
  windows[1].t_start = 0.25;
  windows[1].global_steps = 7;
  const std::vector<double> maxima{1e-15, 2e-14};
  std::stringstream ss;
  csv::write_errors(ss, windows, maxima);
  std::string header;
  std::string first;
  std::string second;
  std::getline(ss, header);
  std::getline(ss, first);
  std::getline(ss, second);
  CHECK(header == "k,t_start,span_steps,max_abs");
  CHECK(first.rfind("1,0,19,", 0) == 0);
  CHECK(second.rfind("2,0.25,7,", 0) == 0);
  const std::vector<double> short_maxima{1e-15};
  CHECK_THROWS_AS(csv::write_errors(ss, windows, short_maxima), InvalidInput);
}

TEST_CASE("subnormal values survive a file round trip") {
  const auto grid = Grid1D::uniform(0.0, 1.0, 3);
  FieldSlab slab(grid, 0, 0.5, 1);
  slab.at(1, 0) = 1.0063842139189401e-311;
  slab.at(1, 1) = -std::numeric_limits<double>::denorm_min();
  std::stringstream ss;
  csv::write_solution(ss, slab, 1);
  const auto table = csv::read_solution(ss);
  CHECK(table.values[1][0] == slab.at(1, 0));
  CHECK(table.values[1][1] == slab.at(1, 1));

  std::stringstream overflow("t,0\n0,1e999\n");
  CHECK_THROWS_AS(csv::read_solution(overflow), InvalidInput);
}
