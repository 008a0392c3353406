#include "lochom/pipeline.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace lochom;

namespace {

struct CircleRun
{
    StratifiedShape shape = StratifiedShape::circle(1.0);
    Sample sample;
    ScaleConstants cc = ScaleConstants::make(false, ComplexFlavor::rips);
    SelectedScales scales;

    CircleRun()
    {
        sample = generate_sample(shape, 0.05, 150, NoiseModel::none(), 0);
        scales = select_manifold(cc, 0.05, {1.0, std::nullopt}, ScaleChoice{1.0, 0.5});
    }
};

}  // namespace

TEST_CASE("labels")
{
    HomologySignature s;
    s.ranks = {0, 0};
    CHECK(label_for(s) == "boundary");
    s.ranks = {0, 1};
    CHECK(label_for(s) == "rank1");
    s.ranks = {0, 2};
    CHECK(label_for(s) == "rank2");
    s.ranks = {1, 3};
    CHECK(label_for(s) == "other(1,3)");
    s.ranks = {1};
    CHECK(label_for(s) == "boundary");
}

TEST_CASE("query specs")
{
    SelectedScales sc{0.1, 0.2, 0.9, 0.4, "manual", {}};
    auto specs = query_specs(3, sc, ComplexFlavor::cech, 3, 2);
    REQUIRE(specs.size() == 3);
    CHECK(specs[2].center == 2);
    CHECK(specs[1].level1.scale == 0.1);
    CHECK(specs[1].level1.radius == 0.9);
    CHECK(specs[1].level2.scale == 0.2);
    CHECK(specs[1].level2.radius == 0.4);
    CHECK(specs[0].field == 3);
    CHECK(specs[0].max_degree == 2);
}

TEST_CASE("circle: every point has the local homology of a line")
{
    CircleRun run;
    auto report = run_inference(run.sample, run.shape, run.scales, run.cc, 2, 1);
    REQUIRE(report.points.size() == 150);
    for (const auto& p : report.points) {
        CHECK(p.signature.ranks == std::vector<int>{0, 1});
        CHECK(p.label == "rank1");
        CHECK(p.correct == true);
        CHECK(std::isinf(p.dist_to_0strata));
        CHECK(p.truth == std::map<int, int>{{1, 1}});
    }
    REQUIRE(report.accuracy.overall.has_value());
    CHECK(*report.accuracy.overall == 1.0);
    CHECK(report.accuracy.by_w0.size() == default_w0_grid().size());
    for (const auto& a : report.accuracy.by_w0) {
        CHECK(a.accuracy == 1.0);
        CHECK(a.count == 150);
    }
}

TEST_CASE("circle with F3 coefficients and Cech complexes")
{
    auto shape = StratifiedShape::circle(1.0);
    auto sample = generate_sample(shape, 0.05, 150, NoiseModel::none(), 0);
    auto cc = ScaleConstants::make(false, ComplexFlavor::cech);
    auto scales = select_manifold(cc, 0.05, {1.0, std::nullopt}, ScaleChoice{1.0, 0.5});
    auto results = infer_all(sample, scales, cc, 3, 1);
    for (std::size_t i = 0; i < results.size(); i += 15) CHECK(results[i].signature.ranks == std::vector<int>{0, 1});
}

TEST_CASE("segment: interior and endpoints")
{
    auto seg = StratifiedShape::segment(Point{0, 0}, Point{1, 0});
    const double eps = 0.02;
    auto sample = generate_sample(seg, eps, 101, NoiseModel::none(), 0);
    auto cc = ScaleConstants::make(false, ComplexFlavor::rips);
    auto scales = select_manifold(cc, eps, {0.5, 0.4});
    auto report = run_inference(sample, seg, scales, cc, 2, 1);
    int interior = 0, ends = 0;
    for (const auto& p : report.points) {
        if (p.dist_to_0strata > 0.4) {
            ++interior;
            CHECK(p.signature.ranks == std::vector<int>{0, 1});
        }
        if (p.dist_to_0strata <= eps) {
            ++ends;
            CHECK(p.signature.ranks == std::vector<int>{0, 0});
            if (p.dist_to_0strata == 0.0) CHECK(p.correct == true);
        }
    }
    CHECK(interior > 0);
    CHECK(ends >= 2);
}

TEST_CASE("inference does not depend on threads or on sample order")
{
    Rng rng(5);
    auto cc_shape = StratifiedShape::circle_chord();
    auto sample = generate_sample(cc_shape, 0.05, 300, NoiseModel::uniform_disc(0.02), 3);
    auto cc = ScaleConstants::make(true, ComplexFlavor::rips);
    auto scales = manual_scales(cc, 0.05, 0.05, 0.15, 0.4, 0.25);
    auto one = infer_all(sample, scales, cc, 2, 1, 1);
    auto four = infer_all(sample, scales, cc, 2, 1, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].signature == four[i].signature);
        CHECK(one[i].label == four[i].label);
    }

    std::vector<int> perm(sample.size());
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size() - 1; i > 0; --i)
        std::swap(perm[i], perm[static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1))]);
    Sample shuffled = sample;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        shuffled.points[static_cast<std::size_t>(perm[i])] = sample.points[i];
        shuffled.generators[static_cast<std::size_t>(perm[i])] = sample.generators[i];
    }
    auto moved = infer_all(shuffled, scales, cc, 2, 1, 2);
    for (std::size_t i = 0; i < perm.size(); ++i) CHECK(moved[static_cast<std::size_t>(perm[i])].signature == one[i].signature);
}

TEST_CASE("classification bookkeeping")
{
    auto cc_shape = StratifiedShape::circle_chord();
    auto sample = generate_sample(cc_shape, 0.05, 300, NoiseModel::none(), 0);
    auto cc = ScaleConstants::make(false, ComplexFlavor::rips);
    auto scales = manual_scales(cc, 0.05, 0.05, 0.15, 0.4, 0.25);
    auto results = infer_all(sample, scales, cc, 2, 1);

    SUBCASE("empty sweep grid")
    {
        auto acc = classify(results, sample, cc_shape, {});
        CHECK(acc.overall.has_value());
        CHECK(acc.by_w0.empty());
    }
    SUBCASE("restricted accuracy counts points far from vertices")
    {
        std::vector<double> grid{0.0, 0.3, 5.0};
        auto acc = classify(results, sample, cc_shape, grid);
        REQUIRE(acc.by_w0.size() == 3);
        CHECK(acc.by_w0[0].count == results.size());
        CHECK(acc.by_w0[0].accuracy == doctest::Approx(*acc.overall));
        std::size_t far = 0;
        for (const auto& r : results) far += r.dist_to_0strata >= 0.3;
        CHECK(acc.by_w0[1].count == far);
        CHECK(acc.by_w0[2].count == 0);
        CHECK(std::isnan(acc.by_w0[2].accuracy));
        for (const auto& r : results) {
            CHECK(r.stratum_distances.size() == cc_shape.strata().size());
            CHECK(r.dist_to_0strata == doctest::Approx(std::min(r.stratum_distances[0], r.stratum_distances[1])));
        }
    }
    SUBCASE("points at the junctions see two branches")
    {
        classify(results, sample, cc_shape, default_w0_grid());
        // even_points puts the two vertices first.
        CHECK(results[0].truth == std::map<int, int>{{1, 2}});
        CHECK(results[0].label == "rank2");
        CHECK(results[1].label == "rank2");
    }
}

TEST_CASE("grouping a circle gives one group")
{
    CircleRun run;
    auto groups = group_strata(run.sample, run.scales, run.cc, 2, 1, 2);
    CHECK(groups.heuristic);
    CHECK(groups.groups.size() == 1);
    CHECK(groups.groups[0].size() == 150);
    // Spacing 2 pi / 150 < 0.05: two neighbors on each side within 2 eps.
    CHECK(groups.neighbor_pairs == 300);
    CHECK(groups.joined_pairs == 300);
    CHECK(groups.non_nesting_pairs == 0);
    CHECK(groups.cross_rank_exceeds_self == 0);
    for (int g : groups.group_of) CHECK(g == 0);
}

TEST_CASE("grouping without nesting slack keeps points apart")
{
    CircleRun run;
    // ball_R == ball_r: no cross chain map between distinct centers.
    auto scales = manual_scales(run.cc, 0.05, 0.05, 0.13, 0.5, 0.5);
    auto groups = group_strata(run.sample, scales, run.cc, 2, 1, 1);
    CHECK(groups.groups.size() == 150);
    CHECK(groups.non_nesting_pairs == groups.neighbor_pairs);
    CHECK(groups.joined_pairs == 0);
}

TEST_CASE("grouping does not depend on threads")
{
    auto cc_shape = StratifiedShape::circle_chord();
    auto sample = generate_sample(cc_shape, 0.05, 200, NoiseModel::none(), 0);
    auto cc = ScaleConstants::make(false, ComplexFlavor::rips);
    auto scales = manual_scales(cc, 0.05, 0.05, 0.15, 0.4, 0.25);
    auto a = group_strata(sample, scales, cc, 2, 1, 1);
    auto b = group_strata(sample, scales, cc, 2, 1, 3);
    CHECK(a.group_of == b.group_of);
    CHECK(a.groups == b.groups);
    CHECK(a.joined_pairs == b.joined_pairs);
}
