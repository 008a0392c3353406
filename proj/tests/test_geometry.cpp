#include "lochom/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace lochom;

TEST_CASE("euclidean distance")
{
    CHECK(distance(Point{0, 0}, Point{3, 4}) == 5.0);
    CHECK(distance(Point{1, 1}, Point{1, 1}) == 0.0);
    CHECK(distance(Point{1, 0}, Point{0, 1}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(distance(Point{1, 0}, Point{0, 1, 2}), std::invalid_argument);
}

TEST_CASE("points reject non-finite coordinates")
{
    CHECK_THROWS_AS(Point({1.0, std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(Point({std::numeric_limits<double>::infinity()}), std::invalid_argument);
}

TEST_CASE("triangle inequality on random triples")
{
    Rng rng(11);
    for (int k = 0; k < 500; ++k) {
        Point a{rng.uniform(), rng.uniform(), rng.uniform()};
        Point b{rng.uniform(), rng.uniform(), rng.uniform()};
        Point c{rng.uniform(), rng.uniform(), rng.uniform()};
        CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
        CHECK(distance(a, b) == distance(b, a));
    }
}

TEST_CASE("distance to shapes")
{
    auto circle = StratifiedShape::circle(1.0);
    auto d = dist_to_shape(Point{2, 0}, circle);
    CHECK(d.distance == 1.0);
    CHECK(d.stratum == 0);
    CHECK(dist_to_shape(Point{0, 0}, circle).distance == 1.0);

    auto cc = StratifiedShape::circle_chord();
    auto e = dist_to_shape(Point{0, 0.5}, cc);
    CHECK(e.distance == 0.5);
    CHECK(std::holds_alternative<SegmentStratum>(cc.stratum(e.stratum).geometry));

    // Above the upper arc only the arc is nearest.
    auto f = dist_to_shape(Point{0, 1.5}, cc);
    CHECK(f.distance == doctest::Approx(0.5));
    CHECK(std::holds_alternative<ArcStratum>(cc.stratum(f.stratum).geometry));
}

TEST_CASE("closest point lies on the shape")
{
    auto cc = StratifiedShape::circle_chord();
    Rng rng(3);
    for (int k = 0; k < 200; ++k) {
        Point x{4 * rng.uniform() - 2, 4 * rng.uniform() - 2};
        Point y = closest_point(x, cc);
        CHECK(dist_to_shape(y, cc).distance < 1e-12);
        CHECK(distance(x, y) == doctest::Approx(dist_to_shape(x, cc).distance).epsilon(1e-12));
    }
}

TEST_CASE("hausdorff distance examples")
{
    auto circle = StratifiedShape::circle(1.0);
    std::vector<Point> four{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    auto est = hausdorff(four, circle, 1000);
    double want = std::sqrt(2.0 - std::sqrt(2.0));
    CHECK(est.value <= want + 1e-12);
    CHECK(est.upper() >= want - 1e-12);
    CHECK(std::abs(est.value - 0.76537) <= est.error_bound + 1e-5);

    std::vector<Point> ring;
    for (int k = 0; k < 360; ++k) {
        double a = 2 * std::numbers::pi * k / 360;
        ring.push_back(Point{std::cos(a), std::sin(a)});
    }
    auto r = hausdorff(ring, circle, 4000);
    CHECK(r.sample_to_shape < 1e-12);
    CHECK(r.value <= std::sin(std::numbers::pi / 360) + 1e-12);
    CHECK(r.upper() >= std::sin(std::numbers::pi / 360) - 1e-12);

    std::vector<Point> two{{1, 0}, {-1, 0}};
    auto t = hausdorff(two, circle, 1000);
    CHECK(t.value <= std::sqrt(2.0) + 1e-12);
    CHECK(t.upper() >= std::sqrt(2.0) - 1e-12);
}

TEST_CASE("hausdorff error bound shrinks with the grid")
{
    auto circle = StratifiedShape::circle(1.0);
    std::vector<Point> two{{1, 0}, {-1, 0}};
    CHECK(hausdorff(two, circle, 2000).error_bound < hausdorff(two, circle, 20).error_bound);
    CHECK_THROWS_AS(hausdorff(two, circle, 0), std::invalid_argument);
}

TEST_CASE("generated samples")
{
    SUBCASE("noise-free circle")
    {
        auto circle = StratifiedShape::circle(1.0);
        Sample s = generate_sample(circle, 0.05, 150, NoiseModel::none(), 0);
        CHECK(s.size() == 150);
        CHECK_FALSE(s.noisy);
        auto est = hausdorff(s.points, circle, 4000);
        CHECK(est.value == doctest::Approx(std::sin(std::numbers::pi / 150)).epsilon(1e-3));
        CHECK(est.upper() < 0.05);
    }
    SUBCASE("noisy circle-chord")
    {
        auto cc = StratifiedShape::circle_chord();
        Sample s = generate_sample(cc, 0.018, 1500, NoiseModel::uniform_disc(0.009), 7);
        CHECK(s.noisy);
        CHECK(s.size() == 1500);
        CHECK(hausdorff(s.points, cc, 2000).upper() < 0.018);
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(distance(s.points[i], s.generators[i]) <= 0.009 + 1e-15);
        Sample again = generate_sample(cc, 0.018, 1500, NoiseModel::uniform_disc(0.009), 7);
        CHECK(again.points == s.points);
    }
    SUBCASE("segment with endpoints")
    {
        auto seg = StratifiedShape::segment(Point{0, 0}, Point{1, 0});
        Sample s = generate_sample(seg, 0.01, 60, NoiseModel::none(), 0);
        CHECK(s.points.front() == Point{0, 0});
        CHECK(s.points.back() == Point{1, 0});
        CHECK(hausdorff(s.points, seg, 5000).value == doctest::Approx(1.0 / 118).epsilon(1e-3));
    }
    SUBCASE("too few points")
    {
        auto circle = StratifiedShape::circle(1.0);
        try {
            generate_sample(circle, 0.05, 10, NoiseModel::none(), 0);
            FAIL("expected a verification error");
        } catch (const SampleVerificationError& e) {
            CHECK(e.achieved() > 0.05);
        }
    }
    SUBCASE("noise must stay below eps")
    {
        auto circle = StratifiedShape::circle(1.0);
        CHECK_THROWS_AS(generate_sample(circle, 0.05, 400, NoiseModel::uniform_disc(0.05), 0), std::invalid_argument);
    }
}

TEST_CASE("ground truth local homology")
{
    auto cc = StratifiedShape::circle_chord();
    CHECK(ground_truth(cc, Point{0, 1}).local_ranks == std::map<int, int>{{1, 1}});
    CHECK(ground_truth(cc, Point{1, 0}).local_ranks == std::map<int, int>{{1, 2}});
    CHECK(ground_truth(cc, Point{-1, 0}).rank(1) == 2);
    CHECK(ground_truth(cc, Point{0.3, 0}).rank(1) == 1);

    auto seg = StratifiedShape::segment(Point{0, 0}, Point{1, 0});
    CHECK(ground_truth(seg, Point{0, 0}).local_ranks.empty());
    CHECK(ground_truth(seg, Point{1, 0}).rank(1) == 0);
    CHECK(ground_truth(seg, Point{0.5, 0}).rank(1) == 1);

    CHECK_THROWS_AS(ground_truth(cc, Point{0, 0.5}), std::invalid_argument);
}

TEST_CASE("ground truth is constant along strata")
{
    auto cc = StratifiedShape::circle_chord();
    for (const auto& s : cc.strata()) {
        if (s.height == 0) continue;
        double len = stratum_length(s);
        auto first = ground_truth(cc, stratum_point_at(s, 0.1 * len)).local_ranks;
        for (int k = 2; k < 10; ++k) CHECK(ground_truth(cc, stratum_point_at(s, 0.1 * k * len)).local_ranks == first);
    }
}

TEST_CASE("shape construction is validated")
{
    std::vector<Stratum> dangling{{0, 1, SegmentStratum{Point{0, 0}, Point{1, 0}}}};
    CHECK_THROWS_AS(StratifiedShape::union_of(dangling), std::invalid_argument);

    std::vector<Stratum> wrong_valence{{0, 0, VertexStratum{Point{0, 0}, 2}},
                                       {1, 0, VertexStratum{Point{1, 0}, 1}},
                                       {2, 1, SegmentStratum{Point{0, 0}, Point{1, 0}}}};
    CHECK_THROWS_AS(StratifiedShape::union_of(wrong_valence), std::invalid_argument);

    // Two segments meeting at a 2-valent vertex: a bent line.
    std::vector<Stratum> bent{{0, 0, VertexStratum{Point{0, 0}, 1}},
                              {1, 0, VertexStratum{Point{1, 0}, 2}},
                              {2, 0, VertexStratum{Point{1, 1}, 1}},
                              {3, 1, SegmentStratum{Point{0, 0}, Point{1, 0}}},
                              {4, 1, SegmentStratum{Point{1, 0}, Point{1, 1}}}};
    auto shape = StratifiedShape::union_of(bent);
    CHECK(shape.total_length() == doctest::Approx(2.0));
    CHECK(ground_truth(shape, Point{1, 0}).rank(1) == 1);
    CHECK(shape.zero_strata() == std::vector<int>{0, 1, 2});
}

TEST_CASE("even points")
{
    auto cc = StratifiedShape::circle_chord();
    auto pts = even_points(cc, 100);
    CHECK(pts.size() == 100);
    CHECK(pts[0] == Point{1, 0});
    CHECK(pts[1] == Point{-1, 0});
    for (const auto& p : pts) CHECK(dist_to_shape(p, cc).distance < 1e-12);
    CHECK_THROWS_AS(even_points(cc, 1), std::invalid_argument);
}
