#include "lochom/relhom.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace lochom {

void QuerySpec::validate(std::size_t sample_size) const
{
    if (center < 0 || static_cast<std::size_t>(center) >= sample_size) throw std::invalid_argument("query center out of range");
    if (!(level1.scale > 0) || !(level2.scale > 0)) throw std::invalid_argument("complex scales must be positive");
    if (level1.radius < 0 || level2.radius < 0) throw std::invalid_argument("ball radii must be nonnegative");
    if (level1.scale > level2.scale) throw std::invalid_argument("nesting violation: scale1 > scale2");
    if (level2.radius > level1.radius) throw std::invalid_argument("nesting violation: radius2 > radius1");
    if (max_degree < 0) throw std::invalid_argument("max degree must be >= 0");
    if (max_degree + 2 > max_simplex_dim + 1) throw std::invalid_argument("max degree too large for the build cap");
    PrimeField check(field);
    (void)check;
}

std::string to_string(RankMethod m) { return m == RankMethod::direct ? "direct" : "coned"; }

int HomologySignature::rank(int degree) const
{
    if (degree < 0 || degree >= static_cast<int>(ranks.size())) return 0;
    return ranks[static_cast<std::size_t>(degree)];
}

SparseColumn boundary_column(const ChainBasis& basis, int dim, std::size_t j, const PrimeField& field)
{
    const Simplex& s = basis.cells.at(static_cast<std::size_t>(dim))[j];
    SparseColumn col;
    if (dim == 0) return col;
    col.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        long idx = basis.index_of(s.facet(i));
        if (idx < 0) continue;
        std::uint32_t sign = (i % 2 == 0) ? 1u : field.neg(1u);
        col.push_back({static_cast<int>(idx), sign});
    }
    std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
    return col;
}

FieldMatrix boundary_matrix(const ChainBasis& basis, int dim, std::uint32_t q)
{
    if (dim < 1) throw std::invalid_argument("boundary matrix needs dim >= 1");
    PrimeField field(q);
    FieldMatrix m(static_cast<int>(basis.count(dim - 1)), 0, q);
    for (std::size_t j = 0; j < basis.count(dim); ++j) m.push_column(boundary_column(basis, dim, j, field));
    return m;
}

namespace {

void require_cap(const ChainBasis& basis, int degree)
{
    if (degree < 0) throw std::invalid_argument("degree must be >= 0");
    if (basis.top_dim() < degree + 1) {
        throw std::invalid_argument("insufficient max_dim: degree " + std::to_string(degree) +
                                    " needs cells up to dimension " + std::to_string(degree + 1));
    }
}

std::size_t boundary_rank(const ChainBasis& basis, int dim, std::uint32_t q)
{
    if (dim < 1 || dim > basis.top_dim()) return 0;
    return rank(boundary_matrix(basis, dim, q));
}

ColumnReducer reduce_boundaries(const ChainBasis& basis, int degree, const PrimeField& field)
{
    ColumnReducer red(field, static_cast<int>(basis.count(degree)));
    for (std::size_t j = 0; j < basis.count(degree + 1); ++j) red.add(boundary_column(basis, degree + 1, j, field));
    return red;
}

// Reduces col against the boundaries and the extra vectors until its pivot
// is free in both.
bool reduce_against(SparseColumn& col, const ColumnReducer& base, const ColumnReducer& extra)
{
    const PrimeField& f = base.field();
    while (!col.empty()) {
        const SparseColumn* piv = base.pivot_column(col.back().row);
        if (!piv) piv = extra.pivot_column(col.back().row);
        if (!piv) return true;
        std::uint32_t factor = f.neg(f.mul(col.back().value, f.inv(piv->back().value)));
        col = axpy(f, col, factor, *piv);
    }
    return false;
}

}  // namespace

int betti(const ChainBasis& basis, int degree, std::uint32_t q)
{
    require_cap(basis, degree);
    auto cells = static_cast<long long>(basis.count(degree));
    auto rk_out = static_cast<long long>(boundary_rank(basis, degree, q));
    auto rk_in = static_cast<long long>(boundary_rank(basis, degree + 1, q));
    return static_cast<int>(cells - rk_out - rk_in);
}

int relative_betti(const QuotientPairComplex& q, int degree, std::uint32_t field)
{
    if (q.max_dim < degree + 1) {
        throw std::invalid_argument("insufficient max_dim: pair built to " + std::to_string(q.max_dim) +
                                    ", degree " + std::to_string(degree) + " needs " + std::to_string(degree + 1));
    }
    return betti(q.basis, degree, field);
}

HomologyBasis homology_basis(const ChainBasis& basis, const PrimeField& field, int max_degree)
{
    require_cap(basis, max_degree);
    HomologyBasis hb;
    hb.representatives.resize(static_cast<std::size_t>(max_degree) + 1);
    for (int l = 0; l <= max_degree; ++l) {
        // Cycles: unit vectors in degree 0, otherwise the kernel of d_l; each
        // kernel vector's pivot is the index of the column that produced it.
        std::vector<SparseColumn> cycles;
        if (l == 0) {
            for (std::size_t j = 0; j < basis.count(0); ++j) cycles.push_back({{static_cast<int>(j), 1}});
        } else {
            cycles = kernel_basis(boundary_matrix(basis, l, field.modulus()));
        }
        ColumnReducer bounds = reduce_boundaries(basis, l, field);
        // Reduced boundaries have pivots among the cycle pivots; the cycles
        // whose pivot is left over complete them to a basis of Z_l, so they
        // represent a basis of H_l.
        for (auto& z : cycles) {
            if (!bounds.pivot_column(z.back().row)) hb.representatives[static_cast<std::size_t>(l)].push_back(std::move(z));
        }
    }
    return hb;
}

BoundarySpace boundary_space(const ChainBasis& basis, const PrimeField& field, int max_degree)
{
    require_cap(basis, max_degree);
    BoundarySpace space;
    for (int l = 0; l <= max_degree; ++l) space.boundaries.push_back(reduce_boundaries(basis, l, field));
    return space;
}

std::vector<SparseColumn> push_forward(const QuotientPairComplex& from, const QuotientPairComplex& to,
                                       std::span<const Point> points, int degree,
                                       const std::vector<SparseColumn>& chains)
{
    if (from.flavor != to.flavor) throw std::invalid_argument("pairs use different complex flavors");
    if (from.scale > to.scale) throw std::invalid_argument("nesting violation: scale1 > scale2");
    double shift = from.center.dim() == to.center.dim() ? distance(from.center, to.center) : -1.0;
    if (shift < 0) throw std::invalid_argument("pair centers have different dimensions");
    if (to.radius > 0 && from.radius - to.radius < shift * (1.0 + 1e-12)) {
        throw std::invalid_argument("nesting violation: deleted subcomplexes do not nest");
    }
    const auto& src = from.basis.cells.at(static_cast<std::size_t>(degree));
    const double r2 = to.radius * to.radius;
    std::vector<SparseColumn> out;
    out.reserve(chains.size());
    for (const auto& chain : chains) {
        SparseColumn mapped;
        for (const auto& e : chain) {
            const Simplex& s = src[static_cast<std::size_t>(e.row)];
            long idx = to.basis.index_of(s);
            if (idx >= 0) {
                mapped.push_back({static_cast<int>(idx), e.value});
                continue;
            }
            auto vs = s.vertices();
            bool meets = std::any_of(vs.begin(), vs.end(), [&](int v) {
                return squared_distance(points[static_cast<std::size_t>(v)], to.center) < r2;
            });
            if (meets) throw std::logic_error("cell " + to_string(s) + " meets the target ball but is not in the target complex");
        }
        std::sort(mapped.begin(), mapped.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
        out.push_back(std::move(mapped));
    }
    return out;
}

std::vector<SparseColumn> reduce_modulo_boundaries(const BoundarySpace& space, int degree,
                                                   std::vector<SparseColumn> vectors)
{
    const ColumnReducer& base = space.boundaries.at(static_cast<std::size_t>(degree));
    ColumnReducer extra(base.field(), 0);
    std::vector<SparseColumn> kept;
    int rows = 0;
    for (const auto& v : vectors) {
        if (!v.empty()) rows = std::max(rows, v.back().row + 1);
    }
    extra = ColumnReducer(base.field(), std::max(rows, 1));
    for (auto& v : vectors) {
        if (!reduce_against(v, base, extra)) continue;
        extra.add(v);
        kept.push_back(std::move(v));
    }
    return kept;
}

int rank_modulo_boundaries(const BoundarySpace& space, int degree, std::vector<SparseColumn> vectors)
{
    return static_cast<int>(reduce_modulo_boundaries(space, degree, std::move(vectors)).size());
}

HomologySignature image_rank(const QuerySpec& spec, std::span<const Point> points)
{
    spec.validate(points.size());
    PrimeField field(spec.field);
    const int cap = spec.max_degree + 1;
    const Point& center = points[static_cast<std::size_t>(spec.center)];

    QuotientPairComplex first = quotient_pair(points, center, spec.level1.scale, spec.level1.radius, spec.flavor, cap);
    QuotientPairComplex second = quotient_pair(points, center, spec.level2.scale, spec.level2.radius, spec.flavor, cap);
    HomologyBasis reps = homology_basis(first.basis, field, spec.max_degree);
    BoundarySpace bounds = boundary_space(second.basis, field, spec.max_degree);

    HomologySignature sig;
    sig.method = RankMethod::direct;
    for (int l = 0; l <= spec.max_degree; ++l) {
        auto mapped = push_forward(first, second, points, l, reps.representatives[static_cast<std::size_t>(l)]);
        sig.ranks.push_back(rank_modulo_boundaries(bounds, l, std::move(mapped)));
    }
    return sig;
}

HomologySignature image_rank_oracle(const QuerySpec& spec, std::span<const Point> points)
{
    spec.validate(points.size());
    const Point& center = points[static_cast<std::size_t>(spec.center)];
    TwoLevelFiltration filt = coned_filtration(points, center, spec.level1, spec.level2, spec.flavor, spec.max_degree + 1);

    const auto n = static_cast<int>(filt.order.size());
    std::vector<std::pair<Simplex, int>> index;
    index.reserve(filt.order.size());
    for (int i = 0; i < n; ++i) index.emplace_back(filt.order[static_cast<std::size_t>(i)], i);
    std::sort(index.begin(), index.end());
    auto position = [&](const Simplex& s) {
        auto it = std::lower_bound(index.begin(), index.end(), s, [](const auto& a, const Simplex& b) { return a.first < b; });
        if (it == index.end() || it->first != s) throw std::logic_error("filtration is not closed under faces");
        return it->second;
    };

    FieldMatrix d(n, n, spec.field);
    std::vector<int> degree(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const Simplex& s = filt.order[static_cast<std::size_t>(j)];
        degree[static_cast<std::size_t>(j)] = s.dim();
        if (s.dim() == 0) continue;
        std::vector<std::pair<int, long long>> entries;
        for (std::size_t i = 0; i < s.size(); ++i) entries.emplace_back(position(s.facet(i)), i % 2 == 0 ? 1 : -1);
        d.set_column(j, std::move(entries));
    }
    std::vector<int> surviving = persistent_reduce(d, filt.level, degree);

    HomologySignature sig;
    sig.method = RankMethod::coned;
    sig.ranks.assign(static_cast<std::size_t>(spec.max_degree) + 1, 0);
    for (int l = 0; l <= spec.max_degree && l < static_cast<int>(surviving.size()); ++l) {
        sig.ranks[static_cast<std::size_t>(l)] = surviving[static_cast<std::size_t>(l)];
    }
    // The apex class is the extra component of unreduced H_0.
    sig.ranks[0] -= 1;
    return sig;
}

std::vector<HomologySignature> image_rank_batch(std::span<const QuerySpec> specs, std::span<const Point> points,
                                                int threads)
{
    std::vector<HomologySignature> out(specs.size());
    detail::parallel_for(specs.size(), threads, [&](std::size_t i) { out[i] = image_rank(specs[i], points); });
    return out;
}

namespace {

std::vector<int> all_betti(const ChainBasis& basis, std::uint32_t q)
{
    const int top = basis.top_dim();
    std::vector<long long> rk(static_cast<std::size_t>(top) + 2, 0);
    for (int d = 1; d <= top; ++d) rk[static_cast<std::size_t>(d)] = static_cast<long long>(boundary_rank(basis, d, q));
    std::vector<int> b;
    for (int d = 0; d <= top; ++d) {
        b.push_back(static_cast<int>(static_cast<long long>(basis.count(d)) - rk[static_cast<std::size_t>(d)] -
                                     rk[static_cast<std::size_t>(d) + 1]));
    }
    return b;
}

}  // namespace

ExactnessReport exactness_check(const SimplicialComplex& x, const SimplicialComplex& a, std::uint32_t q)
{
    ExactnessReport r;
    ChainBasis rel = relative_basis(x, a);
    r.betti_x = all_betti(absolute_basis(x), q);
    ChainBasis a_basis = absolute_basis(a);
    a_basis.cells.resize(x.simplices.size());
    r.betti_a = all_betti(a_basis, q);
    r.betti_relative = all_betti(rel, q);
    for (std::size_t l = 0; l < r.betti_x.size(); ++l) {
        long long sign = l % 2 == 0 ? 1 : -1;
        r.les_alternating_sum += sign * (r.betti_a[l] - r.betti_x[l] + r.betti_relative[l]);
        r.relative_euler += sign * r.betti_relative[l];
        r.cell_euler += sign * (static_cast<long long>(x.count(static_cast<int>(l))) - static_cast<long long>(a.count(static_cast<int>(l))));
    }
    r.ok = r.les_alternating_sum == 0 && r.relative_euler == r.cell_euler;
    return r;
}

}  // namespace lochom
