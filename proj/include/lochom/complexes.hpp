// Vietoris-Rips and Cech complexes over subsets of a sample, ball deletion,
// localized quotient bases for relative homology, and coned pairs.
//
// Scales follow the ball-RADIUS convention: at scale alpha every sample point
// carries a closed ball of radius alpha, so an edge {i, j} is present iff
// d(i, j) <= 2 * alpha. Many libraries parametrize Rips complexes by diameter
// instead; pass alpha = diameter / 2 when porting parameters.

#ifndef LOCHOM_COMPLEXES_HPP
#define LOCHOM_COMPLEXES_HPP

#include "lochom/geometry.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lochom {

/// Largest simplex dimension any complex may be built to.
inline constexpr int max_simplex_dim = 7;

/// A simplex as a sorted list of distinct vertex indices.
class Simplex
{
  public:
    Simplex() = default;
    Simplex(std::initializer_list<int> vertices);
    explicit Simplex(std::span<const int> vertices);

    int dim() const { return static_cast<int>(size_) - 1; }
    std::size_t size() const { return size_; }
    int operator[](std::size_t i) const { return v_[i]; }
    std::span<const int> vertices() const { return {v_.data(), size_}; }

    /// Face obtained by dropping the i-th vertex.
    Simplex facet(std::size_t i) const;
    /// This simplex with `apex` appended; apex must exceed every vertex.
    Simplex join(int apex) const;
    bool contains(int vertex) const;

    /// Lexicographic within a dimension; lower dimensions first.
    friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b);
    friend bool operator==(const Simplex& a, const Simplex& b);

  private:
    std::array<int, max_simplex_dim + 1> v_{};
    std::uint8_t size_ = 0;
};

std::string to_string(const Simplex& s);

/// Simplices grouped by dimension, each dimension sorted lexicographically.
using SimplexLists = std::vector<std::vector<Simplex>>;

enum class ComplexFlavor
{
    rips,
    cech
};

std::string to_string(ComplexFlavor f);

struct SimplicialComplex
{
    std::vector<int> vertex_ids;  // sorted sample indices
    SimplexLists simplices;       // simplices[k] = k-simplices, sorted
    int max_dim = 0;

    std::size_t count(int dim) const;
    std::size_t total_size() const;
    bool contains(const Simplex& s) const;
};

/// Vietoris-Rips complex over `subset` (sample indices): cliques of the graph
/// with edges d <= 2 * alpha, up to dimension max_dim.
SimplicialComplex rips(std::span<const Point> points, std::span<const int> subset, double alpha, int max_dim);

/// Cech complex over `subset`: simplices whose minimal enclosing ball has
/// radius <= alpha, up to dimension max_dim.
SimplicialComplex cech(std::span<const Point> points, std::span<const int> subset, double alpha, int max_dim);

SimplicialComplex build_complex(ComplexFlavor flavor, std::span<const Point> points, std::span<const int> subset,
                                double alpha, int max_dim);

/// All sample indices.
std::vector<int> all_indices(std::size_t n);

/// Indices of points with distance >= radius from center (the open ball
/// B_radius(center) is removed; points on its boundary are kept).
std::vector<int> delete_ball(std::span<const Point> points, const Point& center, double radius);

/// A chain-complex basis: per-degree sorted simplex lists with boundary maps
/// obtained by dropping faces that are not basis elements. For a pair (X, A)
/// the basis is X - A.
struct ChainBasis
{
    SimplexLists cells;

    int top_dim() const { return static_cast<int>(cells.size()) - 1; }
    std::size_t count(int dim) const;
    /// Index of s among the cells of its dimension, or -1.
    long index_of(const Simplex& s) const;
};

/// Relative chain basis of the pair (X, A) with A a subcomplex of X.
ChainBasis relative_basis(const SimplicialComplex& x, const SimplicialComplex& a);
/// Chain basis of X (A empty).
ChainBasis absolute_basis(const SimplicialComplex& x);

/// Localized quotient C(X_a) / C(X_a(P - B_b(p))): the basis holds the
/// simplices of the complex at scale a that meet the open ball B_b(p).
struct QuotientPairComplex
{
    Point center;
    double scale = 0.0;   // a
    double radius = 0.0;  // b
    ComplexFlavor flavor = ComplexFlavor::rips;
    int max_dim = 0;
    ChainBasis basis;
};

/// Builds the quotient pair, using only the points within b + 2a of the
/// center (any simplex meeting the ball has all its vertices there).
QuotientPairComplex quotient_pair(std::span<const Point> points, const Point& center, double scale, double radius,
                                  ComplexFlavor flavor, int max_dim);

/// Restricts an already built complex to the simplices meeting B_b(center).
ChainBasis restrict_to_ball(const SimplicialComplex& x, std::span<const Point> points, const Point& center,
                            double radius);

/// X together with the cone omega * A over the deleted-ball subcomplex.
struct ConedPair
{
    SimplicialComplex base;   // X
    SimplicialComplex sub;    // A: full subcomplex of X on delete_ball vertices
    int apex = 0;             // omega, a fresh index (== number of points)
    SimplexLists coned;       // coned[k]: k-simplices omega * tau, plus {omega} in coned[0]

    /// Every simplex of X u omega*A, grouped by dimension and sorted.
    SimplexLists all_simplices() const;
};

/// Coned pair up to dimension max_dim (cone simplices included).
ConedPair cone_pair(std::span<const Point> points, const Point& center, double scale, double radius,
                    ComplexFlavor flavor, int max_dim);

struct PairLevel
{
    double scale = 0.0;
    double radius = 0.0;
};

/// Simplices of X2 u omega*A2 in filtration order: all simplices of
/// X1 u omega*A1 first (by dimension, then lexicographic), then the rest.
struct TwoLevelFiltration
{
    std::vector<Simplex> order;
    std::vector<int> level;  // 1 or 2
    int apex = 0;
};

/// Throws std::invalid_argument unless level1.scale <= level2.scale and
/// level2.radius <= level1.radius.
TwoLevelFiltration coned_filtration(std::span<const Point> points, const Point& center, PairLevel level1,
                                    PairLevel level2, ComplexFlavor flavor, int max_dim);

/// One simplex per line, "dim k: v0 v1 ... vk", in sorted order.
std::string dump(const SimplicialComplex& complex);
std::string dump(const SimplexLists& simplices);

}  // namespace lochom

#endif
