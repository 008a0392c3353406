#include "lochom/explorer.hpp"

#include "lochom/relhom.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lochom {

ScanGrid ScanGrid::uniform(double lo, double hi, int steps)
{
    if (steps < 2 || !(hi > lo)) throw std::invalid_argument("grid needs steps >= 2 and hi > lo");
    ScanGrid g;
    for (int k = 0; k < steps; ++k) g.R_values.push_back(lo + (hi - lo) * k / (steps - 1));
    g.r_values = g.R_values;
    return g;
}

namespace {

bool ascending(const std::vector<double>& v)
{
    return !v.empty() && std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

}  // namespace

AlphaSectionScan scan_alpha_section(const StratifiedShape& shape, const Point& x, double alpha, double eps,
                                    const ScanGrid& grid, int dense_n, ComplexFlavor flavor, int max_degree,
                                    int threads)
{
    if (!(eps > 0) || !(alpha >= eps)) throw std::invalid_argument("scan needs alpha >= eps > 0");
    if (!ascending(grid.R_values) || !ascending(grid.r_values)) {
        throw std::invalid_argument("grid values must be nonempty and strictly ascending");
    }
    const std::size_t nR = grid.R_values.size();
    const std::size_t nr = grid.r_values.size();

    AlphaSectionScan scan;
    scan.center = x;
    scan.alpha = alpha;
    scan.eps = eps;
    scan.flavor = flavor;
    scan.dense_n = dense_n;
    scan.grid = grid;
    scan.truth = ground_truth(shape, x).local_ranks;
    scan.member.assign(nR, std::vector<Membership>(nr, Membership::outside_domain));

    bool any = false;
    for (std::size_t i = 0; i < nR; ++i) {
        for (std::size_t j = 0; j < nr; ++j) {
            double R = grid.R_values[i];
            double r = grid.r_values[j];
            if (R >= r && r > alpha) {
                scan.member[i][j] = Membership::no;
                any = true;
            }
        }
    }
    if (!any) throw std::invalid_argument("infeasible grid: no cell with R >= r > alpha");

    std::vector<Point> dense = even_points(shape, dense_n);
    if (std::find(dense.begin(), dense.end(), x) == dense.end()) dense.push_back(x);
    scan.dense_hausdorff = hausdorff(dense, shape, std::max(64, static_cast<int>(std::ceil(20.0 / alpha)))).upper();

    std::vector<int> want(static_cast<std::size_t>(max_degree) + 1, 0);
    for (auto [deg, rk] : scan.truth) {
        if (deg <= max_degree) want[static_cast<std::size_t>(deg)] = rk;
    }

    const PrimeField field(2);
    const int cap = max_degree + 1;
    std::vector<QuotientPairComplex> first(nR);
    std::vector<HomologyBasis> reps(nR);
    detail::parallel_for(nR, threads, [&](std::size_t i) {
        first[i] = quotient_pair(dense, x, eps, grid.R_values[i], flavor, cap);
        reps[i] = homology_basis(first[i].basis, field, max_degree);
    });
    detail::parallel_for(nr, threads, [&](std::size_t j) {
        bool needed = false;
        for (std::size_t i = 0; i < nR; ++i) needed = needed || scan.member[i][j] != Membership::outside_domain;
        if (!needed) return;
        QuotientPairComplex second = quotient_pair(dense, x, alpha, grid.r_values[j], flavor, cap);
        BoundarySpace bounds = boundary_space(second.basis, field, max_degree);
        for (std::size_t i = 0; i < nR; ++i) {
            if (scan.member[i][j] == Membership::outside_domain) continue;
            bool ok = true;
            for (int l = 0; l <= max_degree && ok; ++l) {
                auto mapped = push_forward(first[i], second, dense, l, reps[i].representatives[static_cast<std::size_t>(l)]);
                ok = rank_modulo_boundaries(bounds, l, std::move(mapped)) == want[static_cast<std::size_t>(l)];
            }
            scan.member[i][j] = ok ? Membership::yes : Membership::no;
        }
    });
    scan.summary = summarize(scan);
    return scan;
}

SectionSummary summarize(const AlphaSectionScan& scan)
{
    SectionSummary s;
    const auto& R = scan.grid.R_values;
    const auto& r = scan.grid.r_values;
    for (std::size_t i = 0; i < R.size(); ++i) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (scan.member[i][j] != Membership::yes) continue;
            s.R_u = std::max(s.R_u.value_or(R[i]), R[i]);
            s.R_l = std::min(s.R_l.value_or(R[i]), R[i]);
            s.r_u = std::max(s.r_u.value_or(r[j]), r[j]);
            s.r_l = std::min(s.r_l.value_or(r[j]), r[j]);
        }
    }
    if (!s.R_u) return s;

    // Candidate offsets: every R - r attained by a cell of the triangle.
    std::vector<double> offsets;
    for (std::size_t i = 0; i < R.size(); ++i) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (R[i] <= *s.R_u && r[j] >= *s.r_l && R[i] >= r[j]) offsets.push_back(R[i] - r[j]);
        }
    }
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
    for (double delta : offsets) {
        bool inside = true;
        for (std::size_t i = 0; i < R.size() && inside; ++i) {
            for (std::size_t j = 0; j < r.size() && inside; ++j) {
                if (scan.member[i][j] == Membership::outside_domain) continue;
                if (R[i] <= *s.R_u && r[j] >= *s.r_l && R[i] - r[j] >= delta) {
                    inside = scan.member[i][j] == Membership::yes;
                }
            }
        }
        if (inside) {
            s.delta_bar = delta;
            break;
        }
    }
    if (s.delta_bar) s.tau = std::max(0.0, *s.R_u - *s.r_l - *s.delta_bar);
    return s;
}

namespace {

// True when the yes-cells of `line` form one run after filling single-cell
// gaps between members.
bool interval_with_slack(const std::vector<bool>& line)
{
    std::vector<bool> closed = line;
    for (std::size_t k = 1; k + 1 < line.size(); ++k) {
        if (!line[k] && line[k - 1] && line[k + 1]) closed[k] = true;
    }
    int runs = 0;
    for (std::size_t k = 0; k < closed.size(); ++k) {
        if (closed[k] && (k == 0 || !closed[k - 1])) ++runs;
    }
    return runs <= 1;
}

}  // namespace

SectionProperties section_properties(const AlphaSectionScan& scan)
{
    SectionProperties out;
    const std::size_t nR = scan.grid.R_values.size();
    const std::size_t nr = scan.grid.r_values.size();
    for (std::size_t j = 0; j < nr; ++j) {
        std::vector<bool> line(nR);
        for (std::size_t i = 0; i < nR; ++i) line[i] = scan.member[i][j] == Membership::yes;
        if (!interval_with_slack(line)) {
            out.rows_are_intervals = false;
            std::ostringstream msg;
            msg << "section r = " << scan.grid.r_values[j] << " is not an interval in R";
            out.violations.push_back(msg.str());
        }
    }
    for (std::size_t i = 0; i < nR; ++i) {
        std::vector<bool> line(nr);
        for (std::size_t j = 0; j < nr; ++j) line[j] = scan.member[i][j] == Membership::yes;
        if (!interval_with_slack(line)) {
            out.columns_are_intervals = false;
            std::ostringstream msg;
            msg << "section R = " << scan.grid.R_values[i] << " is not an interval in r";
            out.violations.push_back(msg.str());
        }
    }
    return out;
}

SectionProperties section_nesting(const AlphaSectionScan& smaller_alpha, const AlphaSectionScan& larger_alpha)
{
    if (smaller_alpha.grid.R_values != larger_alpha.grid.R_values ||
        smaller_alpha.grid.r_values != larger_alpha.grid.r_values) {
        throw std::invalid_argument("nesting check needs scans on the same grid");
    }
    if (smaller_alpha.alpha > larger_alpha.alpha) throw std::invalid_argument("first scan must have the smaller alpha");
    SectionProperties out;
    const auto nR = static_cast<long>(smaller_alpha.grid.R_values.size());
    const auto nr = static_cast<long>(smaller_alpha.grid.r_values.size());
    for (long i = 0; i < nR; ++i) {
        for (long j = 0; j < nr; ++j) {
            if (larger_alpha.member[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != Membership::yes) continue;
            bool covered = false;
            for (long di = -1; di <= 1 && !covered; ++di) {
                for (long dj = -1; dj <= 1 && !covered; ++dj) {
                    long a = i + di;
                    long b = j + dj;
                    if (a < 0 || b < 0 || a >= nR || b >= nr) continue;
                    covered = smaller_alpha.member[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] == Membership::yes;
                }
            }
            if (!covered) {
                out.nested = false;
                std::ostringstream msg;
                msg << "(R, r) = (" << smaller_alpha.grid.R_values[static_cast<std::size_t>(i)] << ", "
                    << smaller_alpha.grid.r_values[static_cast<std::size_t>(j)] << ") is a member at alpha = "
                    << larger_alpha.alpha << " but not near any member at alpha = " << smaller_alpha.alpha;
                out.violations.push_back(msg.str());
            }
        }
    }
    return out;
}

}  // namespace lochom
