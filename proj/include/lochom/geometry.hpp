// Euclidean points, samples, and analytic stratified shapes with known local
// homology.

#ifndef LOCHOM_GEOMETRY_HPP
#define LOCHOM_GEOMETRY_HPP

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lochom {

/// A point of R^n. Coordinates are finite; the dimension is fixed per dataset.
class Point
{
  public:
    Point() = default;
    explicit Point(std::vector<double> coords);
    Point(std::initializer_list<double> coords);

    std::size_t dim() const { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<double>& coords() const { return coords_; }

    friend bool operator==(const Point&, const Point&) = default;

  private:
    std::vector<double> coords_;
};

double squared_distance(const Point& a, const Point& b);

/// Euclidean distance. Throws std::invalid_argument on dimension mismatch.
double distance(const Point& a, const Point& b);

/// A finite sample with its nominal density bound. `generators` holds, for
/// generated samples, the point of the shape each sample point was drawn
/// around; it is empty for external samples.
struct Sample
{
    std::vector<Point> points;
    double epsilon = 0.0;
    bool noisy = false;
    std::vector<Point> generators;
    std::optional<std::uint64_t> seed;

    /// Throws std::invalid_argument unless the sample is nonempty, of uniform
    /// dimension, with epsilon > 0 and generators empty or one per point.
    void validate() const;
    std::size_t size() const { return points.size(); }
};

// -- strata -----------------------------------------------------------------

struct VertexStratum
{
    Point at;
    int valence = 0;  // number of incident 1-dimensional branches
};

/// Open arc of a planar circle, running counterclockwise from theta0 to theta1.
struct ArcStratum
{
    Point center;
    double radius = 1.0;
    double theta0 = 0.0;
    double theta1 = 0.0;
};

struct CircleStratum
{
    Point center;
    double radius = 1.0;
};

/// Open segment between two points.
struct SegmentStratum
{
    Point a;
    Point b;
};

using StratumGeometry = std::variant<VertexStratum, ArcStratum, CircleStratum, SegmentStratum>;

struct Stratum
{
    int id = 0;
    int height = 0;
    StratumGeometry geometry;
};

enum class ShapeKind
{
    circle,
    circle_chord,
    segment,
    union_of_primitives
};

std::string to_string(ShapeKind kind);

/// A compact stratified subset of R^n described analytically: every stratum
/// admits closed-form distance, length, and arc-length parametrization.
class StratifiedShape
{
  public:
    /// Circle of the given radius centered at the origin of R^2. One stratum.
    static StratifiedShape circle(double radius = 1.0);
    /// Unit circle with its horizontal diameter: vertices (1,0) and (-1,0)
    /// (ids 0, 1), open chord (2), upper arc (3), lower arc (4).
    static StratifiedShape circle_chord();
    /// Closed segment: endpoint vertices (ids 0, 1) and the open segment (2).
    static StratifiedShape segment(const Point& a, const Point& b);
    /// Arbitrary union given by explicit strata; validated on construction.
    static StratifiedShape union_of(std::vector<Stratum> strata, std::optional<double> reach = std::nullopt);

    ShapeKind kind() const { return kind_; }
    const std::vector<Stratum>& strata() const { return strata_; }
    const Stratum& stratum(int id) const;
    std::size_t ambient_dim() const { return ambient_dim_; }

    /// Reach of the shape (for manifolds, with boundary included as
    /// min{reach(K), reach(dK)}), when known.
    std::optional<double> reach() const { return reach_; }

    double total_length() const;
    /// Shape description used by sidecar metadata, e.g. "circle-chord".
    std::string name() const;
    std::vector<int> zero_strata() const;

  private:
    StratifiedShape(ShapeKind kind, std::vector<Stratum> strata, std::optional<double> reach);

    ShapeKind kind_ = ShapeKind::union_of_primitives;
    std::vector<Stratum> strata_;
    std::optional<double> reach_;
    std::size_t ambient_dim_ = 0;
};

/// Distance to the closure of a single stratum.
double distance_to_stratum(const Point& x, const Stratum& s);
/// Closest point on the closure of a single stratum.
Point closest_point_on_stratum(const Point& x, const Stratum& s);
/// Length of a stratum (0 for vertices).
double stratum_length(const Stratum& s);
/// Point at arc length `u` along a 1-dimensional stratum.
Point stratum_point_at(const Stratum& s, double u);

struct ShapeDistance
{
    double distance = 0.0;
    int stratum = -1;
};

/// Exact distance to the shape and the nearest stratum, ties going to the
/// lowest stratum id.
ShapeDistance dist_to_shape(const Point& x, const StratifiedShape& shape);

/// Closest point of the shape to x (on the nearest stratum).
Point closest_point(const Point& x, const StratifiedShape& shape);

struct HausdorffEstimate
{
    double value = 0.0;        // max of the two one-sided terms
    double sample_to_shape = 0.0;  // exact
    double shape_to_sample = 0.0;  // over the discretized shape
    double error_bound = 0.0;  // shape_to_sample is within this of the true sup

    /// Guaranteed upper bound on the true Hausdorff distance.
    double upper() const { return value + error_bound; }
};

/// Hausdorff distance between a point set and a shape. The sup over the shape
/// is taken over a discretization with at least `grid` points per unit length.
HausdorffEstimate hausdorff(std::span<const Point> points, const StratifiedShape& shape, int grid);

struct NoiseModel
{
    /// Radius of the closed ball each generated point is displaced within;
    /// 0 means noise free.
    double radius = 0.0;

    static NoiseModel none() { return {}; }
    static NoiseModel uniform_disc(double r) { return {r}; }
    bool is_none() const { return radius == 0.0; }
};

/// Raised when a generated sample fails its Hausdorff verification.
class SampleVerificationError : public std::runtime_error
{
  public:
    SampleVerificationError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved)
    {
    }
    double achieved() const { return achieved_; }

  private:
    double achieved_;
};

/// Evenly spaced points along the shape (no noise). Circles start at angle 0;
/// a standalone segment includes both endpoints; unions place one point per
/// vertex stratum and distribute the rest over the 1-strata by length,
/// at cell midpoints.
std::vector<Point> even_points(const StratifiedShape& shape, int n);

/// Even sampling plus optional uniform noise in a closed ball, verified to be
/// an eps-sample (upper Hausdorff estimate < eps). Deterministic given seed.
Sample generate_sample(const StratifiedShape& shape, double eps, int n, NoiseModel noise, std::uint64_t seed);

/// Local homology ranks H_l(K, K - {x}) by degree; absent degrees are 0.
struct GroundTruthLabel
{
    int stratum = -1;
    std::map<int, int> local_ranks;

    int rank(int degree) const;
};

/// Ground-truth local homology at a point of the shape. Throws
/// std::invalid_argument when x is farther than `tolerance` from the shape.
GroundTruthLabel ground_truth(const StratifiedShape& shape, const Point& x, double tolerance = 1e-12);

/// mt19937_64 with a portable conversion to doubles (the standard
/// distributions are implementation defined).
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace lochom

#endif
