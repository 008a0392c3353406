// Self-validation: random cross-checks of the direct image-rank engine
// against the coned oracle, and golden fixtures with hand-derived answers.

#ifndef LOCHOM_SELFCHECK_HPP
#define LOCHOM_SELFCHECK_HPP

#include "lochom/relhom.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lochom {

struct RandomInstance
{
    std::vector<Point> points;
    QuerySpec spec;
};

/// Up to max_pts points uniform in the unit square, a random center, random
/// nested levels, flavor and field in {2, 3}. Deterministic given rng state.
RandomInstance random_instance(Rng& rng, int max_pts);

struct CrossCheckFailure
{
    std::size_t instance = 0;
    std::vector<int> direct;
    std::vector<int> coned;
};

struct CrossCheckReport
{
    std::size_t instances = 0;
    std::size_t agree = 0;
    std::vector<CrossCheckFailure> failures;
};

CrossCheckReport cross_check_random(int count, int max_pts, std::uint64_t seed);

struct FixtureResult
{
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<FixtureResult> run_fixtures();

}  // namespace lochom

#endif
