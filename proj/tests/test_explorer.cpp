#include "lochom/explorer.hpp"

#include <doctest.h>

#include <cmath>

using namespace lochom;

namespace {

using M = Membership;

// Synthetic scan over a 0..1 grid with alpha = 0.05; every domain cell is a
// member unless listed.
AlphaSectionScan synthetic(int steps, std::vector<std::pair<int, int>> holes = {})
{
    AlphaSectionScan s;
    s.center = Point{0, 0};
    s.alpha = 0.05;
    s.eps = 0.01;
    s.grid = ScanGrid::uniform(0.0, 1.0, steps);
    s.truth = {{1, 1}};
    const auto n = s.grid.R_values.size();
    s.member.assign(n, std::vector<M>(n, M::outside_domain));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double R = s.grid.R_values[i], r = s.grid.r_values[j];
            if (R >= r && r > s.alpha) s.member[i][j] = M::yes;
        }
    for (auto [i, j] : holes) s.member[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = M::no;
    s.summary = summarize(s);
    return s;
}

}  // namespace

TEST_CASE("uniform grid")
{
    auto g = ScanGrid::uniform(0.0, 2.0, 21);
    REQUIRE(g.R_values.size() == 21);
    CHECK(g.R_values.front() == 0.0);
    CHECK(g.R_values.back() == 2.0);
    CHECK(g.R_values[10] == doctest::Approx(1.0));
    CHECK(g.r_values == g.R_values);
}

TEST_CASE("full synthetic section")
{
    auto s = synthetic(11);
    auto p = section_properties(s);
    CHECK(p.ok());
    CHECK(p.violations.empty());
    REQUIRE(s.summary.r_l.has_value());
    CHECK(*s.summary.r_l == doctest::Approx(0.1));
    CHECK(*s.summary.R_u == doctest::Approx(1.0));
    CHECK(*s.summary.delta_bar == doctest::Approx(0.0));
    CHECK(*s.summary.tau == doctest::Approx(0.9));
}

TEST_CASE("non-contiguous sections are reported")
{
    // Fixed R = 1.0 (index 10): r = 0.3 and 0.4 missing, a two-cell gap.
    auto s = synthetic(11, {{10, 3}, {10, 4}});
    auto p = section_properties(s);
    CHECK_FALSE(p.columns_are_intervals);
    CHECK(p.rows_are_intervals);
    CHECK_FALSE(p.ok());
    CHECK(p.violations.size() == 1);

    // Fixed r = 0.3 (index 3): R = 0.5 and 0.6 missing.
    auto c = synthetic(11, {{5, 3}, {6, 3}});
    auto q = section_properties(c);
    CHECK_FALSE(q.rows_are_intervals);
    CHECK(q.columns_are_intervals);

    // A one-cell gap is closed before the check.
    auto d = synthetic(11, {{8, 4}});
    CHECK(section_properties(d).ok());

    // Missing cells at the end of a line do not break it.
    auto e = synthetic(11, {{10, 10}, {10, 9}, {10, 8}});
    CHECK(section_properties(e).ok());
}

TEST_CASE("summary of an empty section")
{
    auto s = synthetic(11);
    for (auto& row : s.member)
        for (auto& m : row)
            if (m == M::yes) m = M::no;
    auto sum = summarize(s);
    CHECK_FALSE(sum.R_u.has_value());
    CHECK_FALSE(sum.tau.has_value());
    CHECK(section_properties(s).ok());
}

TEST_CASE("nesting of sections")
{
    auto smaller = synthetic(11);
    auto larger = synthetic(11, {{10, 9}, {10, 10}, {9, 9}});
    larger.alpha = 0.06;
    CHECK(section_nesting(smaller, larger).ok());

    // A 3x3 block missing at the smaller alpha leaves cells that no
    // neighbor covers, even with one cell of slack.
    std::vector<std::pair<int, int>> block;
    for (int i = 8; i <= 10; ++i)
        for (int j = 6; j <= 8; ++j) block.push_back({i, j});
    auto holed = synthetic(11, block);
    auto full = synthetic(11);
    full.alpha = 0.06;
    auto n = section_nesting(holed, full);
    CHECK_FALSE(n.nested);
    CHECK(n.violations.size() == 2);  // (9,7) and the edge cell (10,7)

    CHECK_THROWS_AS(section_nesting(full, holed), std::invalid_argument);
    auto other = synthetic(21);
    CHECK_THROWS_AS(section_nesting(smaller, other), std::invalid_argument);
}

TEST_CASE("circle section")
{
    auto circle = StratifiedShape::circle(1.0);
    auto grid = ScanGrid::uniform(0.0, 2.0, 11);
    auto scan = scan_alpha_section(circle, Point{1, 0}, 0.1, 0.02, grid, 400, ComplexFlavor::cech, 1, 2);
    CHECK(scan.empirical);
    CHECK(scan.truth == std::map<int, int>{{1, 1}});
    CHECK(scan.dense_hausdorff < 0.02);
    std::size_t members = 0;
    for (std::size_t i = 0; i < grid.R_values.size(); ++i)
        for (std::size_t j = 0; j < grid.r_values.size(); ++j) {
            double R = grid.R_values[i], r = grid.r_values[j];
            if (!(R >= r && r > 0.1)) CHECK(scan.at(i, j) == M::outside_domain);
            else CHECK(scan.at(i, j) != M::outside_domain);
            members += scan.at(i, j) == M::yes;
        }
    CHECK(members > 10);
    // A small ball inside a large one along a smooth arc is admissible.
    CHECK(scan.at(5, 2) == M::yes);
    CHECK(section_properties(scan).ok());
    REQUIRE(scan.summary.tau.has_value());
    CHECK(*scan.summary.tau > 0);

    auto again = scan_alpha_section(circle, Point{1, 0}, 0.1, 0.02, grid, 400, ComplexFlavor::cech, 1, 1);
    CHECK(again.member == scan.member);
}

TEST_CASE("scan preconditions")
{
    auto circle = StratifiedShape::circle(1.0);
    auto grid = ScanGrid::uniform(0.0, 2.0, 11);
    CHECK_THROWS_AS(scan_alpha_section(circle, Point{1, 0}, 0.01, 0.02, grid, 200), std::invalid_argument);
    CHECK_THROWS_AS(scan_alpha_section(circle, Point{1, 0}, 0.1, 0.0, grid, 200), std::invalid_argument);
    auto low = ScanGrid::uniform(0.0, 0.1, 5);
    CHECK_THROWS_AS(scan_alpha_section(circle, Point{1, 0}, 0.1, 0.02, low, 200), std::invalid_argument);
    ScanGrid unsorted{{0.5, 0.3}, {0.2, 0.4}};
    CHECK_THROWS_AS(scan_alpha_section(circle, Point{1, 0}, 0.1, 0.02, unsorted, 200), std::invalid_argument);
}
