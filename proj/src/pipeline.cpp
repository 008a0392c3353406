#include "lochom/pipeline.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace lochom {

std::string label_for(const HomologySignature& sig)
{
    switch (sig.rank(1)) {
    case 0: return "boundary";
    case 1: return "rank1";
    case 2: return "rank2";
    default: break;
    }
    std::ostringstream out;
    out << "other(";
    for (std::size_t l = 0; l < sig.ranks.size(); ++l) out << (l ? "," : "") << sig.ranks[l];
    out << ")";
    return out.str();
}

std::vector<QuerySpec> query_specs(std::size_t n, const SelectedScales& scales, ComplexFlavor flavor,
                                   std::uint32_t field, int max_degree)
{
    std::vector<QuerySpec> specs(n);
    for (std::size_t i = 0; i < n; ++i) {
        QuerySpec& s = specs[i];
        s.center = static_cast<int>(i);
        s.level1 = {scales.scale1, scales.ball_R};
        s.level2 = {scales.scale2, scales.ball_r};
        s.flavor = flavor;
        s.field = field;
        s.max_degree = max_degree;
    }
    return specs;
}

std::vector<PointResult> infer_all(const Sample& sample, const SelectedScales& scales, const ScaleConstants& cc,
                                   std::uint32_t field, int max_degree, int threads)
{
    sample.validate();
    cc.validate();
    auto specs = query_specs(sample.size(), scales, cc.flavor(), field, max_degree);
    if (!specs.empty()) specs.front().validate(sample.size());
    auto sigs = image_rank_batch(specs, sample.points, threads);
    std::vector<PointResult> out(sigs.size());
    for (std::size_t i = 0; i < sigs.size(); ++i) {
        out[i].index = static_cast<int>(i);
        out[i].label = label_for(sigs[i]);
        out[i].signature = std::move(sigs[i]);
    }
    return out;
}

std::vector<double> default_w0_grid()
{
    std::vector<double> grid;
    for (int k = 0; k <= 10; ++k) grid.push_back(0.05 * k);
    return grid;
}

namespace {

bool matches(const HomologySignature& sig, const std::map<int, int>& truth)
{
    for (std::size_t l = 0; l < sig.ranks.size(); ++l) {
        auto it = truth.find(static_cast<int>(l));
        int want = it == truth.end() ? 0 : it->second;
        if (sig.ranks[l] != want) return false;
    }
    // Truth in degrees that were not computed cannot be confirmed.
    for (auto [deg, rk] : truth) {
        if (rk != 0 && deg >= static_cast<int>(sig.ranks.size())) return false;
    }
    return true;
}

}  // namespace

Accuracy classify(std::vector<PointResult>& results, const Sample& sample, const StratifiedShape& shape,
                  const std::vector<double>& w0_grid)
{
    std::vector<Point> vertices;
    for (int id : shape.zero_strata()) vertices.push_back(std::get<VertexStratum>(shape.stratum(id).geometry).at);

    std::size_t right = 0;
    for (auto& r : results) {
        const Point& p = sample.points.at(static_cast<std::size_t>(r.index));
        Point anchor = sample.generators.empty() ? closest_point(p, shape)
                                                 : sample.generators[static_cast<std::size_t>(r.index)];
        GroundTruthLabel truth = ground_truth(shape, anchor, 1e-9);
        r.truth = truth.local_ranks;
        r.nearest_stratum = truth.stratum;
        r.stratum_distances.clear();
        for (const auto& s : shape.strata()) r.stratum_distances.push_back(distance_to_stratum(p, s));
        r.dist_to_0strata = std::numeric_limits<double>::infinity();
        for (const auto& v : vertices) r.dist_to_0strata = std::min(r.dist_to_0strata, distance(p, v));
        r.correct = matches(r.signature, truth.local_ranks);
        if (*r.correct) ++right;
    }

    Accuracy acc;
    if (!results.empty()) acc.overall = static_cast<double>(right) / static_cast<double>(results.size());
    for (double w0 : w0_grid) {
        AccuracyAt a{w0, std::numeric_limits<double>::quiet_NaN(), 0};
        std::size_t ok = 0;
        for (const auto& r : results) {
            if (r.dist_to_0strata < w0) continue;
            ++a.count;
            if (*r.correct) ++ok;
        }
        if (a.count > 0) a.accuracy = static_cast<double>(ok) / static_cast<double>(a.count);
        acc.by_w0.push_back(a);
    }
    return acc;
}

RunReport run_inference(const Sample& sample, const std::optional<StratifiedShape>& shape,
                        const SelectedScales& scales, const ScaleConstants& cc, std::uint32_t field, int max_degree,
                        int threads, const std::vector<double>& w0_grid)
{
    RunReport report;
    report.sample = sample;
    report.shape = shape;
    report.scales = scales;
    report.constants = cc;
    report.field = field;
    report.max_degree = max_degree;
    report.points = infer_all(sample, scales, cc, field, max_degree, threads);
    if (shape) report.accuracy = classify(report.points, sample, *shape, w0_grid);
    return report;
}

namespace {

class DisjointSets
{
  public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }

    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

  private:
    std::vector<std::size_t> parent_;
};

struct Neighbor
{
    int index;
    bool nests;
    bool same_image = false;
    bool cross_exceeds = false;
};

}  // namespace

StrataGroups group_strata(const Sample& sample, const SelectedScales& scales, const ScaleConstants& cc,
                          std::uint32_t field, int max_degree, int threads)
{
    sample.validate();
    cc.validate();
    const auto& pts = sample.points;
    const std::size_t n = pts.size();
    const ComplexFlavor flavor = cc.flavor();
    const PrimeField f(field);
    const int cap = max_degree + 1;
    auto specs = query_specs(n, scales, flavor, field, max_degree);
    specs.front().validate(n);

    // First-level pairs and their homology representatives, one per point.
    std::vector<QuotientPairComplex> first(n);
    std::vector<HomologyBasis> reps(n);
    detail::parallel_for(n, threads, [&](std::size_t i) {
        first[i] = quotient_pair(pts, pts[i], scales.scale1, scales.ball_R, flavor, cap);
        reps[i] = homology_basis(first[i].basis, f, max_degree);
    });

    const double reach = 2.0 * sample.epsilon;
    const double slack = scales.ball_R - scales.ball_r;
    std::vector<std::vector<Neighbor>> nbrs(n);
    for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t p = 0; p < n; ++p) {
            if (p == q) continue;
            double d = distance(pts[p], pts[q]);
            if (d < reach) nbrs[q].push_back({static_cast<int>(p), slack >= d * (1.0 + 1e-12)});
        }
    }

    // Column spaces in H(pair2 at q): image of q's own map against each
    // neighbor's cross map.
    detail::parallel_for(n, threads, [&](std::size_t q) {
        QuotientPairComplex second = quotient_pair(pts, pts[q], scales.scale2, scales.ball_r, flavor, cap);
        BoundarySpace bounds = boundary_space(second.basis, f, max_degree);
        std::vector<std::vector<SparseColumn>> self(static_cast<std::size_t>(max_degree) + 1);
        for (int l = 0; l <= max_degree; ++l) {
            self[static_cast<std::size_t>(l)] =
                push_forward(first[q], second, pts, l, reps[q].representatives[static_cast<std::size_t>(l)]);
        }
        for (auto& nb : nbrs[q]) {
            if (!nb.nests) continue;
            const auto p = static_cast<std::size_t>(nb.index);
            nb.same_image = true;
            for (int l = 0; l <= max_degree; ++l) {
                const auto& own = self[static_cast<std::size_t>(l)];
                auto cross = push_forward(first[p], second, pts, l, reps[p].representatives[static_cast<std::size_t>(l)]);
                int rs = rank_modulo_boundaries(bounds, l, own);
                int rc = rank_modulo_boundaries(bounds, l, cross);
                std::vector<SparseColumn> both = own;
                both.insert(both.end(), cross.begin(), cross.end());
                int ru = rank_modulo_boundaries(bounds, l, std::move(both));
                if (rc > rs) nb.cross_exceeds = true;
                if (!(rs == rc && rc == ru)) nb.same_image = false;
            }
        }
    });

    StrataGroups out;
    DisjointSets sets(n);
    for (std::size_t q = 0; q < n; ++q) {
        for (const auto& nb : nbrs[q]) {
            if (nb.cross_exceeds) ++out.cross_rank_exceeds_self;
            const auto p = static_cast<std::size_t>(nb.index);
            if (p < q) continue;
            ++out.neighbor_pairs;
            if (!nb.nests) {
                ++out.non_nesting_pairs;
                continue;
            }
            auto back = std::find_if(nbrs[p].begin(), nbrs[p].end(), [&](const Neighbor& m) {
                return m.index == static_cast<int>(q);
            });
            if (nb.same_image && back != nbrs[p].end() && back->same_image) {
                ++out.joined_pairs;
                sets.unite(p, q);
            }
        }
    }
    out.group_of.assign(n, -1);
    std::vector<int> id_of_root(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t root = sets.find(i);
        if (id_of_root[root] < 0) {
            id_of_root[root] = static_cast<int>(out.groups.size());
            out.groups.emplace_back();
        }
        out.group_of[i] = id_of_root[root];
        out.groups[static_cast<std::size_t>(id_of_root[root])].push_back(static_cast<int>(i));
    }
    return out;
}

}  // namespace lochom
