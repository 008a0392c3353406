// Relative homology of quotient pairs and ranks of the maps induced by
// inclusions of nested pairs
//
//     H_l(X1, A1) -> H_l(X2, A2),   X1 = K_a1(P), A1 = K_a1(P - B_b1(p)),
//                                   X2 = K_a2(P), A2 = K_a2(P - B_b2(p)),
//
// with a1 <= a2 and b2 <= b1. Two independent routes are provided: a direct
// route on localized quotient complexes, and a coned two-level persistence
// route over the whole sample that serves as an oracle.

#ifndef LOCHOM_RELHOM_HPP
#define LOCHOM_RELHOM_HPP

#include "lochom/complexes.hpp"
#include "lochom/fieldla.hpp"

#include <string>
#include <vector>

namespace lochom {

struct QuerySpec
{
    int center = 0;  // sample index p
    PairLevel level1;
    PairLevel level2;
    ComplexFlavor flavor = ComplexFlavor::rips;
    std::uint32_t field = 2;
    int max_degree = 1;

    /// Throws std::invalid_argument on broken nesting or bad parameters.
    void validate(std::size_t sample_size) const;
};

enum class RankMethod
{
    direct,
    coned
};

std::string to_string(RankMethod m);

/// Ranks of the induced map by degree 0..max_degree.
struct HomologySignature
{
    std::vector<int> ranks;
    RankMethod method = RankMethod::direct;

    int rank(int degree) const;
    friend bool operator==(const HomologySignature& a, const HomologySignature& b) { return a.ranks == b.ranks; }
};

/// Boundary column of the dim-cell j of a chain basis; faces outside the
/// basis are dropped.
SparseColumn boundary_column(const ChainBasis& basis, int dim, std::size_t j, const PrimeField& field);
/// Matrix of the boundary map C_dim -> C_{dim-1} (dim >= 1).
FieldMatrix boundary_matrix(const ChainBasis& basis, int dim, std::uint32_t q);

/// dim H_l of a chain basis: dim ker d_l - rank d_{l+1}. The basis must
/// reach dimension l + 1.
int betti(const ChainBasis& basis, int degree, std::uint32_t q);

/// dim H_l(X_a, A_b) of a quotient pair; throws std::invalid_argument when
/// the pair was built below dimension l + 1.
int relative_betti(const QuotientPairComplex& q, int degree, std::uint32_t field);

/// Cycle representatives of a basis of H_l, for l = 0..max_degree, in the
/// coordinates of the pair's chain basis.
struct HomologyBasis
{
    std::vector<std::vector<SparseColumn>> representatives;
};

HomologyBasis homology_basis(const ChainBasis& basis, const PrimeField& field, int max_degree);

/// Reduced boundary spaces B_l = im d_{l+1}, for l = 0..max_degree.
struct BoundarySpace
{
    std::vector<ColumnReducer> boundaries;
};

BoundarySpace boundary_space(const ChainBasis& basis, const PrimeField& field, int max_degree);

/// Pushes chains of the first pair forward to the second along the chain
/// map of the inclusion (a cell maps to itself if it is a cell of the
/// second quotient, else to 0). Throws std::invalid_argument unless the
/// pairs nest: same flavor, scale1 <= scale2, and every vertex outside
/// B_b1(c1) lies outside B_b2(c2) (guaranteed by b1 - b2 >= |c1 - c2|).
std::vector<SparseColumn> push_forward(const QuotientPairComplex& from, const QuotientPairComplex& to,
                                       std::span<const Point> points, int degree,
                                       const std::vector<SparseColumn>& chains);

/// Rank of span(vectors) modulo the boundaries B_degree.
int rank_modulo_boundaries(const BoundarySpace& space, int degree, std::vector<SparseColumn> vectors);

/// Echelon basis of span(vectors) + B_degree, reduced against B_degree; two
/// families span the same subspace of homology iff their reductions have
/// equal rank and rank_modulo_boundaries of their union equals it.
std::vector<SparseColumn> reduce_modulo_boundaries(const BoundarySpace& space, int degree,
                                                   std::vector<SparseColumn> vectors);

/// Direct route: localized quotients, cycle representatives of the first
/// pair pushed into the second and reduced modulo its boundaries.
HomologySignature image_rank(const QuerySpec& spec, std::span<const Point> points);

/// Oracle route: coned pair X u omega*A over all points, two-level
/// persistence, surviving first-level classes (degree 0 reduced).
HomologySignature image_rank_oracle(const QuerySpec& spec, std::span<const Point> points);

/// Batch evaluation; results are identical to sequential evaluation and
/// ordered like `specs` for any thread count.
std::vector<HomologySignature> image_rank_batch(std::span<const QuerySpec> specs, std::span<const Point> points,
                                                int threads = 1);

struct ExactnessReport
{
    std::vector<int> betti_x;
    std::vector<int> betti_a;
    std::vector<int> betti_relative;
    long long les_alternating_sum = 0;  // sum (-1)^l [b(A) - b(X) + b(X,A)]
    long long relative_euler = 0;       // sum (-1)^l b(X,A)
    long long cell_euler = 0;           // sum (-1)^k (#X_k - #A_k)
    bool ok = false;
};

/// Long-exact-sequence and Euler characteristic sanity checks for a pair
/// (X, A), A a subcomplex of X.
ExactnessReport exactness_check(const SimplicialComplex& x, const SimplicialComplex& a, std::uint32_t q);

}  // namespace lochom

#endif
