// Empirical alpha-sections of the admissible-scale set at a point of a known
// shape. The continuous neighborhoods of the shape are replaced by complexes
// over a dense noise-free sample, so every result here is EMPIRICAL: a
// surrogate for the continuous condition, not a certified decision.

#ifndef LOCHOM_EXPLORER_HPP
#define LOCHOM_EXPLORER_HPP

#include "lochom/complexes.hpp"
#include "lochom/geometry.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lochom {

struct ScanGrid
{
    std::vector<double> R_values;  // ascending
    std::vector<double> r_values;  // ascending

    /// `steps` evenly spaced values from lo to hi inclusive, on both axes.
    static ScanGrid uniform(double lo, double hi, int steps);
};

enum class Membership : std::int8_t
{
    outside_domain = -1,  // not R >= r > alpha
    no = 0,
    yes = 1
};

struct SectionSummary
{
    // Extents of the member set; empty when nothing is a member.
    std::optional<double> R_u, R_l, r_u, r_l;
    // Smallest grid offset delta such that every domain cell with
    // r >= r_l, R <= R_u and R - r >= delta is a member.
    std::optional<double> delta_bar;
    // Side of the largest right isosceles triangle inside the member set,
    // R_u - r_l - delta_bar (clamped at 0).
    std::optional<double> tau;
};

struct AlphaSectionScan
{
    Point center;
    double alpha = 0.0;
    double eps = 0.0;
    ComplexFlavor flavor = ComplexFlavor::cech;
    int dense_n = 0;
    double dense_hausdorff = 0.0;  // upper estimate of d_H(dense sample, shape)
    std::map<int, int> truth;
    ScanGrid grid;
    std::vector<std::vector<Membership>> member;  // [R index][r index]
    SectionSummary summary;
    bool empirical = true;

    Membership at(std::size_t iR, std::size_t ir) const { return member[iR][ir]; }
};

/// Membership at (R, r): the image of H(pair at (eps, R)) in H(pair at
/// (alpha, r)), both over the dense sample and centered at x, has the ground
/// truth ranks of x in degrees 0..max_degree. Throws std::invalid_argument
/// unless alpha >= eps > 0 and some grid cell has R >= r > alpha.
AlphaSectionScan scan_alpha_section(const StratifiedShape& shape, const Point& x, double alpha, double eps,
                                    const ScanGrid& grid, int dense_n, ComplexFlavor flavor = ComplexFlavor::cech,
                                    int max_degree = 1, int threads = 1);

SectionSummary summarize(const AlphaSectionScan& scan);

struct SectionProperties
{
    bool rows_are_intervals = true;     // fixed r, varying R
    bool columns_are_intervals = true;  // fixed R, varying r
    bool nested = true;
    std::vector<std::string> violations;

    bool ok() const { return rows_are_intervals && columns_are_intervals && nested; }
};

/// Interval checks on every line section, closing gaps of one cell first.
SectionProperties section_properties(const AlphaSectionScan& scan);

/// Checks that the section at the larger alpha is contained in the one at
/// the smaller alpha, up to one grid cell. Both scans must share the grid.
SectionProperties section_nesting(const AlphaSectionScan& smaller_alpha, const AlphaSectionScan& larger_alpha);

}  // namespace lochom

#endif
