#include "lochom/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace lochom {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_same_dim(const Point& a, const Point& b)
{
    if (a.dim() != b.dim()) {
        std::ostringstream msg;
        msg << "dimension mismatch: " << a.dim() << " vs " << b.dim();
        throw std::invalid_argument(msg.str());
    }
}

// Angle of v - c in [0, 2pi).
double planar_angle(const Point& v, const Point& c)
{
    double a = std::atan2(v[1] - c[1], v[0] - c[0]);
    if (a < 0) a += two_pi;
    return a;
}

// True when angle phi lies on the counterclockwise sweep [theta0, theta1].
bool angle_within(double phi, double theta0, double theta1)
{
    double span = theta1 - theta0;
    double off = std::fmod(phi - theta0, two_pi);
    if (off < 0) off += two_pi;
    return off <= span;
}

Point on_circle(const Point& c, double radius, double theta)
{
    return Point{c[0] + radius * std::cos(theta), c[1] + radius * std::sin(theta)};
}

Point radial_projection(const Point& x, const Point& c, double radius, double fallback_theta)
{
    double dx = x[0] - c[0];
    double dy = x[1] - c[1];
    double len = std::hypot(dx, dy);
    if (len == 0.0) return on_circle(c, radius, fallback_theta);
    return Point{c[0] + radius * dx / len, c[1] + radius * dy / len};
}

// Parameter of the projection of x onto segment [a, b], clamped to [0, 1].
double segment_parameter(const Point& x, const Point& a, const Point& b)
{
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        double d = b[i] - a[i];
        num += (x[i] - a[i]) * d;
        den += d * d;
    }
    if (den == 0.0) return 0.0;
    return std::clamp(num / den, 0.0, 1.0);
}

Point lerp(const Point& a, const Point& b, double t)
{
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] + t * (b[i] - a[i]);
    return Point(std::move(c));
}

std::vector<Point> endpoints(const Stratum& s)
{
    if (const auto* arc = std::get_if<ArcStratum>(&s.geometry)) {
        return {on_circle(arc->center, arc->radius, arc->theta0), on_circle(arc->center, arc->radius, arc->theta1)};
    }
    if (const auto* seg = std::get_if<SegmentStratum>(&s.geometry)) return {seg->a, seg->b};
    return {};
}

std::size_t stratum_dim(const Stratum& s)
{
    return std::visit(
        [](const auto& g) -> std::size_t {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, VertexStratum>) return g.at.dim();
            else if constexpr (std::is_same_v<T, SegmentStratum>) return g.a.dim();
            else return g.center.dim();
        },
        s.geometry);
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords))
{
    for (double c : coords_) {
        if (!std::isfinite(c)) throw std::invalid_argument("point coordinates must be finite");
    }
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

double squared_distance(const Point& a, const Point& b)
{
    require_same_dim(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

void Sample::validate() const
{
    if (points.empty()) throw std::invalid_argument("sample is empty");
    if (!(epsilon > 0.0)) throw std::invalid_argument("sample epsilon must be positive");
    std::size_t d = points.front().dim();
    if (d == 0) throw std::invalid_argument("points must have dimension >= 1");
    for (const auto& p : points) {
        if (p.dim() != d) throw std::invalid_argument("sample points have mixed dimensions");
    }
    if (!generators.empty() && generators.size() != points.size()) {
        throw std::invalid_argument("generator count does not match sample size");
    }
}

std::string to_string(ShapeKind kind)
{
    switch (kind) {
    case ShapeKind::circle: return "circle";
    case ShapeKind::circle_chord: return "circle-chord";
    case ShapeKind::segment: return "segment";
    case ShapeKind::union_of_primitives: return "union";
    }
    return "union";
}

StratifiedShape::StratifiedShape(ShapeKind kind, std::vector<Stratum> strata, std::optional<double> reach)
    : kind_(kind), strata_(std::move(strata)), reach_(reach)
{
    if (strata_.empty()) throw std::invalid_argument("shape needs at least one stratum");
    std::sort(strata_.begin(), strata_.end(), [](const Stratum& a, const Stratum& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < strata_.size(); ++i) {
        if (strata_[i].id == strata_[i - 1].id) throw std::invalid_argument("duplicate stratum id");
    }
    ambient_dim_ = stratum_dim(strata_.front());
    for (const auto& s : strata_) {
        if (stratum_dim(s) != ambient_dim_) throw std::invalid_argument("strata live in different dimensions");
        bool is_vertex = std::holds_alternative<VertexStratum>(s.geometry);
        if (s.height != (is_vertex ? 0 : 1)) throw std::invalid_argument("vertex strata have height 0, curves height 1");
        if (!is_vertex && !std::holds_alternative<SegmentStratum>(s.geometry) && ambient_dim_ != 2) {
            throw std::invalid_argument("arcs and circles must be planar");
        }
        if (const auto* arc = std::get_if<ArcStratum>(&s.geometry)) {
            if (!(arc->theta1 > arc->theta0) || arc->theta1 - arc->theta0 >= two_pi || !(arc->radius > 0)) {
                throw std::invalid_argument("arc needs radius > 0 and 0 < theta1 - theta0 < 2pi");
            }
        }
        if (const auto* c = std::get_if<CircleStratum>(&s.geometry)) {
            if (!(c->radius > 0)) throw std::invalid_argument("circle radius must be positive");
        }
    }
    // Frontier condition: every vertex is the endpoint of exactly `valence`
    // branches, and every branch endpoint is a vertex.
    constexpr double tol = 1e-9;
    for (const auto& s : strata_) {
        const auto* v = std::get_if<VertexStratum>(&s.geometry);
        if (!v) continue;
        int count = 0;
        for (const auto& t : strata_) {
            for (const auto& e : endpoints(t)) {
                if (distance(e, v->at) <= tol) ++count;
            }
        }
        if (count != v->valence) {
            std::ostringstream msg;
            msg << "vertex stratum " << s.id << " declares valence " << v->valence << " but " << count
                << " branches end there";
            throw std::invalid_argument(msg.str());
        }
    }
    for (const auto& t : strata_) {
        for (const auto& e : endpoints(t)) {
            bool found = std::any_of(strata_.begin(), strata_.end(), [&](const Stratum& s) {
                const auto* v = std::get_if<VertexStratum>(&s.geometry);
                return v && distance(e, v->at) <= tol;
            });
            if (!found) throw std::invalid_argument("branch endpoint is not a vertex stratum");
        }
    }
}

StratifiedShape StratifiedShape::circle(double radius)
{
    return StratifiedShape(ShapeKind::circle, {Stratum{0, 1, CircleStratum{Point{0.0, 0.0}, radius}}}, radius);
}

StratifiedShape StratifiedShape::circle_chord()
{
    std::vector<Stratum> strata{
        {0, 0, VertexStratum{Point{1.0, 0.0}, 3}},
        {1, 0, VertexStratum{Point{-1.0, 0.0}, 3}},
        {2, 1, SegmentStratum{Point{-1.0, 0.0}, Point{1.0, 0.0}}},
        {3, 1, ArcStratum{Point{0.0, 0.0}, 1.0, 0.0, std::numbers::pi}},
        {4, 1, ArcStratum{Point{0.0, 0.0}, 1.0, std::numbers::pi, two_pi}},
    };
    return StratifiedShape(ShapeKind::circle_chord, std::move(strata), std::nullopt);
}

StratifiedShape StratifiedShape::segment(const Point& a, const Point& b)
{
    require_same_dim(a, b);
    double len = distance(a, b);
    if (!(len > 0)) throw std::invalid_argument("segment endpoints must differ");
    std::vector<Stratum> strata{
        {0, 0, VertexStratum{a, 1}},
        {1, 0, VertexStratum{b, 1}},
        {2, 1, SegmentStratum{a, b}},
    };
    // min{reach(K), reach(dK)}: a straight segment has infinite reach, its
    // boundary (two points) has reach len / 2.
    return StratifiedShape(ShapeKind::segment, std::move(strata), len / 2.0);
}

StratifiedShape StratifiedShape::union_of(std::vector<Stratum> strata, std::optional<double> reach)
{
    return StratifiedShape(ShapeKind::union_of_primitives, std::move(strata), reach);
}

const Stratum& StratifiedShape::stratum(int id) const
{
    auto it = std::lower_bound(strata_.begin(), strata_.end(), id, [](const Stratum& s, int v) { return s.id < v; });
    if (it == strata_.end() || it->id != id) throw std::out_of_range("no stratum with id " + std::to_string(id));
    return *it;
}

double StratifiedShape::total_length() const
{
    double total = 0.0;
    for (const auto& s : strata_) total += stratum_length(s);
    return total;
}

std::string StratifiedShape::name() const { return to_string(kind_); }

std::vector<int> StratifiedShape::zero_strata() const
{
    std::vector<int> ids;
    for (const auto& s : strata_) {
        if (s.height == 0) ids.push_back(s.id);
    }
    return ids;
}

double distance_to_stratum(const Point& x, const Stratum& s)
{
    return distance(x, closest_point_on_stratum(x, s));
}

Point closest_point_on_stratum(const Point& x, const Stratum& s)
{
    return std::visit(
        [&](const auto& g) -> Point {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, VertexStratum>) {
                require_same_dim(x, g.at);
                return g.at;
            } else if constexpr (std::is_same_v<T, SegmentStratum>) {
                require_same_dim(x, g.a);
                return lerp(g.a, g.b, segment_parameter(x, g.a, g.b));
            } else if constexpr (std::is_same_v<T, CircleStratum>) {
                require_same_dim(x, g.center);
                return radial_projection(x, g.center, g.radius, 0.0);
            } else {
                require_same_dim(x, g.center);
                bool at_center = x == g.center;
                if (!at_center && angle_within(planar_angle(x, g.center), g.theta0, g.theta1)) {
                    return radial_projection(x, g.center, g.radius, g.theta0);
                }
                Point e0 = on_circle(g.center, g.radius, g.theta0);
                Point e1 = on_circle(g.center, g.radius, g.theta1);
                return squared_distance(x, e0) <= squared_distance(x, e1) ? e0 : e1;
            }
        },
        s.geometry);
}

double stratum_length(const Stratum& s)
{
    return std::visit(
        [](const auto& g) -> double {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, VertexStratum>) return 0.0;
            else if constexpr (std::is_same_v<T, SegmentStratum>) return distance(g.a, g.b);
            else if constexpr (std::is_same_v<T, CircleStratum>) return two_pi * g.radius;
            else return (g.theta1 - g.theta0) * g.radius;
        },
        s.geometry);
}

Point stratum_point_at(const Stratum& s, double u)
{
    return std::visit(
        [&](const auto& g) -> Point {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, VertexStratum>) return g.at;
            else if constexpr (std::is_same_v<T, SegmentStratum>) return lerp(g.a, g.b, u / distance(g.a, g.b));
            else if constexpr (std::is_same_v<T, CircleStratum>) return on_circle(g.center, g.radius, u / g.radius);
            else return on_circle(g.center, g.radius, g.theta0 + u / g.radius);
        },
        s.geometry);
}

ShapeDistance dist_to_shape(const Point& x, const StratifiedShape& shape)
{
    ShapeDistance best{std::numeric_limits<double>::infinity(), -1};
    for (const auto& s : shape.strata()) {
        double d = distance_to_stratum(x, s);
        if (d < best.distance) best = {d, s.id};
    }
    return best;
}

Point closest_point(const Point& x, const StratifiedShape& shape)
{
    return closest_point_on_stratum(x, shape.stratum(dist_to_shape(x, shape).stratum));
}

HausdorffEstimate hausdorff(std::span<const Point> points, const StratifiedShape& shape, int grid)
{
    if (grid < 1) throw std::invalid_argument("hausdorff grid must be >= 1");
    if (points.empty()) throw std::invalid_argument("hausdorff needs a nonempty point set");

    HausdorffEstimate est;
    for (const auto& p : points) est.sample_to_shape = std::max(est.sample_to_shape, dist_to_shape(p, shape).distance);

    std::vector<Point> probes;
    for (const auto& s : shape.strata()) {
        double len = stratum_length(s);
        if (len == 0.0) {
            probes.push_back(stratum_point_at(s, 0.0));
            continue;
        }
        auto cells = static_cast<int>(std::ceil(len * grid));
        double step = len / cells;
        est.error_bound = std::max(est.error_bound, step / 2.0);
        bool closed = std::holds_alternative<CircleStratum>(s.geometry);
        int last = closed ? cells - 1 : cells;
        for (int k = 0; k <= last; ++k) probes.push_back(stratum_point_at(s, k * step));
    }
    double worst = 0.0;
    for (const auto& y : probes) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& p : points) nearest = std::min(nearest, squared_distance(y, p));
        worst = std::max(worst, nearest);
    }
    est.shape_to_sample = std::sqrt(worst);
    est.value = std::max(est.sample_to_shape, est.shape_to_sample);
    return est;
}

std::vector<Point> even_points(const StratifiedShape& shape, int n)
{
    if (n < 1) throw std::invalid_argument("sample size must be positive");
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(n));
    const auto& strata = shape.strata();

    if (shape.kind() == ShapeKind::circle) {
        const Stratum& s = strata.front();
        double len = stratum_length(s);
        for (int k = 0; k < n; ++k) pts.push_back(stratum_point_at(s, len * k / n));
        return pts;
    }
    if (shape.kind() == ShapeKind::segment) {
        if (n < 2) throw std::invalid_argument("segment sampling needs n >= 2");
        const auto& seg = std::get<SegmentStratum>(shape.stratum(2).geometry);
        for (int k = 0; k < n; ++k) pts.push_back(lerp(seg.a, seg.b, static_cast<double>(k) / (n - 1)));
        return pts;
    }

    std::vector<const Stratum*> curves;
    for (const auto& s : strata) {
        if (s.height == 0) pts.push_back(std::get<VertexStratum>(s.geometry).at);
        else curves.push_back(&s);
    }
    int rest = n - static_cast<int>(pts.size());
    if (rest < 0) throw std::invalid_argument("sample size smaller than the number of vertex strata");
    if (curves.empty()) return pts;

    // Largest-remainder apportionment of the remaining points by length.
    double total = shape.total_length();
    std::vector<int> counts(curves.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    int assigned = 0;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        double exact = rest * stratum_length(*curves[i]) / total;
        counts[i] = static_cast<int>(std::floor(exact));
        assigned += counts[i];
        remainders.emplace_back(exact - counts[i], i);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int k = 0; k < rest - assigned; ++k) ++counts[remainders[static_cast<std::size_t>(k)].second];

    for (std::size_t i = 0; i < curves.size(); ++i) {
        double len = stratum_length(*curves[i]);
        bool closed = std::holds_alternative<CircleStratum>(curves[i]->geometry);
        for (int k = 0; k < counts[i]; ++k) {
            double u = closed ? len * k / counts[i] : len * (k + 0.5) / counts[i];
            pts.push_back(stratum_point_at(*curves[i], u));
        }
    }
    return pts;
}

Sample generate_sample(const StratifiedShape& shape, double eps, int n, NoiseModel noise, std::uint64_t seed)
{
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    if (noise.radius < 0 || noise.radius >= eps) throw std::invalid_argument("noise radius must lie in [0, eps)");

    Sample sample;
    sample.epsilon = eps;
    sample.noisy = !noise.is_none();
    sample.seed = seed;
    sample.generators = even_points(shape, n);

    Rng rng(seed);
    sample.points.reserve(sample.generators.size());
    for (const auto& g : sample.generators) {
        if (noise.is_none()) {
            sample.points.push_back(g);
            continue;
        }
        // Rejection sampling in the enclosing cube gives the uniform law on
        // the closed ball.
        std::vector<double> offset(g.dim());
        for (;;) {
            double r2 = 0.0;
            for (auto& o : offset) {
                o = 2.0 * rng.uniform() - 1.0;
                r2 += o * o;
            }
            if (r2 <= 1.0) break;
        }
        std::vector<double> c(g.dim());
        for (std::size_t i = 0; i < g.dim(); ++i) c[i] = g[i] + noise.radius * offset[i];
        sample.points.emplace_back(std::move(c));
    }

    int grid = std::max(64, static_cast<int>(std::ceil(20.0 / eps)));
    HausdorffEstimate est = hausdorff(sample.points, shape, grid);
    if (!(est.upper() < eps)) {
        std::ostringstream msg;
        msg << "sample of " << n << " points is not an eps-sample: d_H = " << est.value << " (+ "
            << est.error_bound << " discretization) >= eps = " << eps;
        throw SampleVerificationError(msg.str(), est.value);
    }
    return sample;
}

int GroundTruthLabel::rank(int degree) const
{
    auto it = local_ranks.find(degree);
    return it == local_ranks.end() ? 0 : it->second;
}

GroundTruthLabel ground_truth(const StratifiedShape& shape, const Point& x, double tolerance)
{
    const Stratum* owner = nullptr;
    for (const auto& s : shape.strata()) {
        if (distance_to_stratum(x, s) > tolerance) continue;
        if (!owner || s.height < owner->height) owner = &s;
    }
    if (!owner) {
        std::ostringstream msg;
        msg << "point lies at distance " << dist_to_shape(x, shape).distance << " from the shape";
        throw std::invalid_argument(msg.str());
    }
    GroundTruthLabel label;
    label.stratum = owner->id;
    if (const auto* v = std::get_if<VertexStratum>(&owner->geometry)) {
        // A k-valent vertex of a graph has H_1(K, K - x) of rank k - 1.
        if (v->valence > 1) label.local_ranks[1] = v->valence - 1;
    } else {
        label.local_ranks[1] = 1;
    }
    return label;
}

}  // namespace lochom
