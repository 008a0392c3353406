// Per-point local homology inference over a sample, classification against
// an analytic shape, and grouping of points into strata candidates.

#ifndef LOCHOM_PIPELINE_HPP
#define LOCHOM_PIPELINE_HPP

#include "lochom/geometry.hpp"
#include "lochom/relhom.hpp"
#include "lochom/scales.hpp"

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lochom {

struct PointResult
{
    int index = 0;
    HomologySignature signature;
    std::string label;
    // Filled in by classify().
    int nearest_stratum = -1;
    std::vector<double> stratum_distances;  // ordered like shape.strata()
    double dist_to_0strata = std::numeric_limits<double>::infinity();
    std::optional<bool> correct;
    std::map<int, int> truth;
};

/// Label from the degree-1 rank: 0 -> "boundary", 1 -> "rank1",
/// 2 -> "rank2", anything else "other(r0,r1,...)".
std::string label_for(const HomologySignature& sig);

/// One image-rank query per sample point with level1 = (scale1, ball_R) and
/// level2 = (scale2, ball_r). The complex flavor follows cc (c = 1: Cech).
std::vector<PointResult> infer_all(const Sample& sample, const SelectedScales& scales, const ScaleConstants& cc,
                                   std::uint32_t field, int max_degree, int threads = 1);

std::vector<QuerySpec> query_specs(std::size_t n, const SelectedScales& scales, ComplexFlavor flavor,
                                   std::uint32_t field, int max_degree);

struct AccuracyAt
{
    double w0 = 0.0;
    double accuracy = 0.0;  // NaN when no point qualifies
    std::size_t count = 0;
};

/// The published w0 sweep 0, 0.05, ..., 0.5.
std::vector<double> default_w0_grid();

struct Accuracy
{
    std::optional<double> overall;
    std::vector<AccuracyAt> by_w0;
};

struct RunReport
{
    Sample sample;
    std::optional<StratifiedShape> shape;
    SelectedScales scales;
    ScaleConstants constants;
    std::uint32_t field = 2;
    int max_degree = 1;
    std::vector<PointResult> points;
    Accuracy accuracy;
};

/// Compares every signature with the ground truth at the point's generator
/// (or, without generators, at the closest shape point) and fills in the
/// per-point fields. Accuracy restricted to points at distance >= w0 from
/// every 0-stratum is reported per w0.
Accuracy classify(std::vector<PointResult>& results, const Sample& sample, const StratifiedShape& shape,
                  const std::vector<double>& w0_grid);

/// infer_all followed, when a shape is given, by classify.
RunReport run_inference(const Sample& sample, const std::optional<StratifiedShape>& shape,
                        const SelectedScales& scales, const ScaleConstants& cc, std::uint32_t field, int max_degree,
                        int threads = 1, const std::vector<double>& w0_grid = default_w0_grid());

/// Heuristic grouping: p and q are joined when d(p, q) < 2 eps and, in every
/// degree, the image of the cross map H(pair1 at p) -> H(pair2 at q) equals
/// the image of q's own map, and symmetrically with p and q exchanged.
/// Neighbor pairs whose cross map does not nest (ball_R - ball_r < d(p, q))
/// are never joined.
struct StrataGroups
{
    std::vector<int> group_of;                // group id per point, ids by first member
    std::vector<std::vector<int>> groups;     // members, ascending
    std::size_t neighbor_pairs = 0;           // pairs with d < 2 eps
    std::size_t non_nesting_pairs = 0;        // skipped, cross map undefined
    std::size_t joined_pairs = 0;
    std::size_t cross_rank_exceeds_self = 0;  // directed pairs where rank(cross) > rank(self)
    bool heuristic = true;
};

StrataGroups group_strata(const Sample& sample, const SelectedScales& scales, const ScaleConstants& cc,
                          std::uint32_t field, int max_degree, int threads = 1);

}  // namespace lochom

#endif
