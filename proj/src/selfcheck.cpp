#include "lochom/selfcheck.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace lochom {

RandomInstance random_instance(Rng& rng, int max_pts)
{
    if (max_pts < 1) throw std::invalid_argument("max_pts must be >= 1");
    RandomInstance inst;
    int n = 1 + static_cast<int>(rng.uniform() * max_pts);
    for (int i = 0; i < n; ++i) inst.points.push_back(Point{rng.uniform(), rng.uniform()});
    QuerySpec& s = inst.spec;
    s.center = static_cast<int>(rng.uniform() * n);
    s.flavor = rng.uniform() < 0.5 ? ComplexFlavor::rips : ComplexFlavor::cech;
    s.field = rng.uniform() < 0.5 ? 2 : 3;
    s.max_degree = rng.uniform() < 0.5 ? 1 : 2;
    s.level1.scale = 0.05 + 0.35 * rng.uniform();
    s.level2.scale = s.level1.scale + 0.3 * rng.uniform();
    s.level1.radius = 1.0 * rng.uniform();
    s.level2.radius = s.level1.radius * rng.uniform();
    return inst;
}

CrossCheckReport cross_check_random(int count, int max_pts, std::uint64_t seed)
{
    CrossCheckReport report;
    Rng rng(seed);
    for (int k = 0; k < count; ++k) {
        RandomInstance inst = random_instance(rng, max_pts);
        HomologySignature direct = image_rank(inst.spec, inst.points);
        HomologySignature coned = image_rank_oracle(inst.spec, inst.points);
        ++report.instances;
        if (direct == coned) ++report.agree;
        else report.failures.push_back({static_cast<std::size_t>(k), direct.ranks, coned.ranks});
    }
    return report;
}

namespace {

std::string describe(const std::vector<int>& v)
{
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    out << ']';
    return out.str();
}

FixtureResult expect(std::string name, bool ok, std::string detail = {})
{
    return {std::move(name), ok, ok ? std::string() : std::move(detail)};
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

std::vector<FixtureResult> run_fixtures()
{
    std::vector<FixtureResult> out;
    const double h = std::sqrt(3.0) / 2.0;
    const std::vector<Point> triangle{{0.0, 0.0}, {1.0, 0.0}, {0.5, h}};
    const std::vector<int> tri_ids{0, 1, 2};

    {
        auto x = rips(triangle, tri_ids, 0.5, 2);
        out.push_back(expect("rips triangle at touching scale", x.count(2) == 1 && x.count(1) == 3,
                             dump(x)));
        auto y = rips(triangle, tri_ids, 0.49, 2);
        out.push_back(expect("rips triangle below touching scale", y.count(0) == 3 && y.count(1) == 0, dump(y)));
    }
    {
        std::vector<Point> square{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
        std::vector<int> ids{0, 1, 2, 3};
        auto x = rips(square, ids, 0.5, 2);
        out.push_back(expect("rips square is a 4-cycle", x.count(1) == 4 && x.count(2) == 0, dump(x)));
    }
    {
        auto x = cech(triangle, tri_ids, 0.58, 2);
        auto y = cech(triangle, tri_ids, 0.55, 2);
        out.push_back(expect("cech triangle above circumradius", x.count(2) == 1, dump(x)));
        out.push_back(expect("cech triangle below circumradius", y.count(2) == 0 && y.count(1) == 3, dump(y)));
    }
    {
        std::vector<Point> line{{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
        auto q = quotient_pair(line, line[0], 0.6, 0.5, ComplexFlavor::rips, 2);
        bool basis = q.basis.count(0) == 1 && q.basis.count(1) == 1 && q.basis.cells[1][0] == Simplex{0, 1};
        bool hom = relative_betti(q, 0, 2) == 0 && relative_betti(q, 1, 2) == 0;
        out.push_back(expect("quotient of a three-point line", basis && hom, dump(q.basis.cells)));
    }
    {
        // Cech at 0.5 gives the hollow triangle; the ball keeps one vertex.
        auto q = quotient_pair(triangle, triangle[0], 0.5, 0.5, ComplexFlavor::cech, 2);
        bool shape = q.basis.count(0) == 1 && q.basis.count(1) == 2 && q.basis.count(2) == 0;
        int b0 = relative_betti(q, 0, 2);
        int b1 = relative_betti(q, 1, 2);
        out.push_back(expect("hollow triangle modulo an edge", shape && b0 == 0 && b1 == 1,
                             "b0=" + std::to_string(b0) + " b1=" + std::to_string(b1)));
        QuerySpec spec{0, {0.5, 0.5}, {0.5, 0.5}, ComplexFlavor::cech, 2, 1};
        auto oracle = image_rank_oracle(spec, triangle);
        out.push_back(expect("coned oracle on the hollow triangle", oracle.rank(0) == 0 && oracle.rank(1) == 1,
                             describe(oracle.ranks)));
    }
    {
        std::vector<Point> pts{{0.0, 0.0}, {1.0, 0.0}, {2.5, 0.0}, {3.5, 0.0}};
        QuerySpec spec{0, {0.5, 10.0}, {0.75, 10.0}, ComplexFlavor::rips, 2, 1};
        auto d = image_rank(spec, pts);
        auto c = image_rank_oracle(spec, pts);
        out.push_back(expect("two edges merging into a path", d.rank(0) == 1 && c.rank(0) == 1,
                             describe(d.ranks) + " vs " + describe(c.ranks)));
    }
    {
        std::vector<Point> ring;
        for (int k = 0; k < 12; ++k) {
            double a = 2.0 * std::numbers::pi * k / 12;
            ring.push_back(Point{std::cos(a), std::sin(a)});
        }
        QuerySpec spec{0, {0.6, 1.0}, {0.6, 1.0}, ComplexFlavor::rips, 2, 1};
        auto q = quotient_pair(ring, ring[0], 0.6, 1.0, ComplexFlavor::rips, 2);
        auto d = image_rank(spec, ring);
        auto c = image_rank_oracle(spec, ring);
        bool ok = d == c && d.rank(1) == relative_betti(q, 1, 2) && d.rank(0) == relative_betti(q, 0, 2);
        out.push_back(expect("identity map on a 12-point ring", ok, describe(d.ranks) + " vs " + describe(c.ranks)));
    }
    {
        FieldMatrix d(3, 3, 2);
        d.set_column(2, {{0, 1}, {1, 1}});
        std::vector<int> level{1, 1, 2};
        std::vector<int> degree{0, 0, 1};
        auto surv = persistent_reduce(d, level, degree);
        out.push_back(expect("two vertices joined at level 2", !surv.empty() && surv[0] == 1, describe(surv)));
    }
    {
        auto circle = StratifiedShape::circle(1.0);
        std::vector<Point> four{{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
        auto est = hausdorff(four, circle, 2000);
        double want = std::sqrt(2.0 - std::sqrt(2.0));
        out.push_back(expect("hausdorff of four circle points", est.value <= want + 1e-12 && est.upper() >= want - 1e-12,
                             std::to_string(est.value)));
        std::vector<Point> two{{1.0, 0.0}, {-1.0, 0.0}};
        auto est2 = hausdorff(two, circle, 2000);
        out.push_back(expect("hausdorff of two antipodal points",
                             est2.value <= std::sqrt(2.0) + 1e-12 && est2.upper() >= std::sqrt(2.0) - 1e-12,
                             std::to_string(est2.value)));
    }
    {
        auto k = StratifiedShape::circle_chord();
        auto d = dist_to_shape(Point{0.0, 0.5}, k);
        out.push_back(expect("distance to the chord", close(d.distance, 0.5, 1e-15) && d.stratum == 2,
                             std::to_string(d.distance)));
        auto junction = ground_truth(k, Point{1.0, 0.0});
        auto top = ground_truth(k, Point{0.0, 1.0});
        out.push_back(expect("junction has rank 2", junction.rank(1) == 2 && junction.rank(0) == 0));
        out.push_back(expect("arc point has rank 1", top.rank(1) == 1 && top.rank(0) == 0));
    }
    {
        auto x = cech(triangle, tri_ids, 0.5, 2);
        std::vector<int> edge{1, 2};
        auto a = cech(triangle, edge, 0.5, 2);
        auto rep = exactness_check(x, a, 2);
        out.push_back(expect("exactness of hollow triangle and an edge", rep.ok));
    }
    return out;
}

}  // namespace lochom
