// Smallest enclosing ball of a handful of points in R^n.

#ifndef LOCHOM_MEB_HPP
#define LOCHOM_MEB_HPP

#include "lochom/geometry.hpp"

#include <span>
#include <vector>

namespace lochom {

struct Ball
{
    std::vector<double> center;
    double squared_radius = 0.0;
};

/// Smallest ball enclosing `points`, by Welzl's move-to-front recursion over
/// the input order (no shuffling, so results are deterministic). Intended for
/// simplices, i.e. at most a few dozen points.
Ball min_enclosing_ball(std::span<const Point* const> points);

/// Smallest ball with all of `support` on its boundary (circumball within the
/// affine hull). Degenerate supports fall back to the ball on the farthest
/// pair.
Ball circumball(std::span<const Point* const> support);

}  // namespace lochom

#endif
