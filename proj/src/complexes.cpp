#include "lochom/complexes.hpp"

#include "lochom/meb.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lochom {

// -- Simplex -----------------------------------------------------------------

Simplex::Simplex(std::initializer_list<int> vertices) : Simplex(std::span<const int>(vertices.begin(), vertices.size()))
{
}

Simplex::Simplex(std::span<const int> vertices)
{
    if (vertices.empty()) throw std::invalid_argument("simplex needs at least one vertex");
    if (vertices.size() > v_.size()) throw std::invalid_argument("simplex dimension exceeds max_simplex_dim");
    std::copy(vertices.begin(), vertices.end(), v_.begin());
    size_ = static_cast<std::uint8_t>(vertices.size());
    std::sort(v_.begin(), v_.begin() + size_);
    if (std::adjacent_find(v_.begin(), v_.begin() + size_) != v_.begin() + size_) {
        throw std::invalid_argument("simplex vertices must be distinct");
    }
}

Simplex Simplex::facet(std::size_t i) const
{
    Simplex f;
    std::size_t k = 0;
    for (std::size_t j = 0; j < size_; ++j) {
        if (j != i) f.v_[k++] = v_[j];
    }
    f.size_ = static_cast<std::uint8_t>(k);
    return f;
}

Simplex Simplex::join(int apex) const
{
    if (size_ > max_simplex_dim) throw std::invalid_argument("cone exceeds max_simplex_dim");
    if (size_ > 0 && v_[size_ - 1] >= apex) throw std::invalid_argument("apex must exceed every vertex");
    Simplex s = *this;
    s.v_[s.size_++] = apex;
    return s;
}

bool Simplex::contains(int vertex) const { return std::binary_search(v_.begin(), v_.begin() + size_, vertex); }

std::strong_ordering operator<=>(const Simplex& a, const Simplex& b)
{
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    for (std::size_t i = 0; i < a.size_; ++i) {
        if (auto c = a.v_[i] <=> b.v_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

bool operator==(const Simplex& a, const Simplex& b) { return (a <=> b) == 0; }

std::string to_string(const Simplex& s)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
    return out.str();
}

std::string to_string(ComplexFlavor f) { return f == ComplexFlavor::rips ? "rips" : "cech"; }

// -- complexes ---------------------------------------------------------------

std::size_t SimplicialComplex::count(int dim) const
{
    if (dim < 0 || dim >= static_cast<int>(simplices.size())) return 0;
    return simplices[static_cast<std::size_t>(dim)].size();
}

std::size_t SimplicialComplex::total_size() const
{
    std::size_t n = 0;
    for (const auto& s : simplices) n += s.size();
    return n;
}

bool SimplicialComplex::contains(const Simplex& s) const
{
    if (s.dim() >= static_cast<int>(simplices.size())) return false;
    const auto& list = simplices[static_cast<std::size_t>(s.dim())];
    return std::binary_search(list.begin(), list.end(), s);
}

namespace {

struct CliqueBuilder
{
    std::span<const Point> points;
    std::vector<int> ids;                   // sorted global ids
    std::vector<std::vector<int>> higher;   // local neighbors with larger index
    double alpha = 0.0;
    int max_dim = 0;
    bool cech = false;
    SimplexLists out;
    std::vector<int> current;  // local indices

    bool admissible(int next)
    {
        if (!cech || current.size() < 2) return true;
        std::vector<const Point*> pts;
        for (int v : current) pts.push_back(&points[static_cast<std::size_t>(ids[static_cast<std::size_t>(v)])]);
        pts.push_back(&points[static_cast<std::size_t>(ids[static_cast<std::size_t>(next)])]);
        return min_enclosing_ball(pts).squared_radius <= alpha * alpha;
    }

    void record()
    {
        std::array<int, max_simplex_dim + 1> g{};
        for (std::size_t i = 0; i < current.size(); ++i) g[i] = ids[static_cast<std::size_t>(current[i])];
        out[current.size() - 1].emplace_back(std::span<const int>(g.data(), current.size()));
    }

    void expand(const std::vector<int>& candidates)
    {
        record();
        if (static_cast<int>(current.size()) - 1 >= max_dim) return;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            int c = candidates[i];
            if (!admissible(c)) continue;
            std::vector<int> next;
            const auto& nb = higher[static_cast<std::size_t>(c)];
            std::set_intersection(candidates.begin() + static_cast<long>(i) + 1, candidates.end(), nb.begin(),
                                  nb.end(), std::back_inserter(next));
            current.push_back(c);
            expand(next);
            current.pop_back();
        }
    }
};

SimplicialComplex clique_complex(std::span<const Point> points, std::span<const int> subset, double alpha,
                                 int max_dim, bool cech)
{
    if (max_dim < 0) throw std::invalid_argument("max_dim must be >= 0");
    if (max_dim > max_simplex_dim) throw std::invalid_argument("max_dim exceeds max_simplex_dim");
    if (!(alpha >= 0)) throw std::invalid_argument("scale must be nonnegative");

    CliqueBuilder b;
    b.points = points;
    b.ids.assign(subset.begin(), subset.end());
    std::sort(b.ids.begin(), b.ids.end());
    b.ids.erase(std::unique(b.ids.begin(), b.ids.end()), b.ids.end());
    for (int id : b.ids) {
        if (id < 0 || static_cast<std::size_t>(id) >= points.size()) throw std::out_of_range("vertex id out of range");
    }
    b.alpha = alpha;
    b.max_dim = max_dim;
    b.cech = cech;
    b.out.assign(static_cast<std::size_t>(max_dim) + 1, {});

    const double reach2 = 4.0 * alpha * alpha;
    const std::size_t m = b.ids.size();
    b.higher.assign(m, {});
    for (std::size_t i = 0; i < m; ++i) {
        const Point& pi = points[static_cast<std::size_t>(b.ids[i])];
        for (std::size_t j = i + 1; j < m; ++j) {
            if (squared_distance(pi, points[static_cast<std::size_t>(b.ids[j])]) <= reach2) {
                b.higher[i].push_back(static_cast<int>(j));
            }
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        b.current.assign(1, static_cast<int>(i));
        b.expand(b.higher[i]);
    }
    // DFS with ascending choices emits each dimension in lexicographic order.
    SimplicialComplex cx;
    cx.vertex_ids = std::move(b.ids);
    cx.simplices = std::move(b.out);
    cx.max_dim = max_dim;
    return cx;
}

}  // namespace

SimplicialComplex rips(std::span<const Point> points, std::span<const int> subset, double alpha, int max_dim)
{
    return clique_complex(points, subset, alpha, max_dim, false);
}

SimplicialComplex cech(std::span<const Point> points, std::span<const int> subset, double alpha, int max_dim)
{
    return clique_complex(points, subset, alpha, max_dim, true);
}

SimplicialComplex build_complex(ComplexFlavor flavor, std::span<const Point> points, std::span<const int> subset,
                                double alpha, int max_dim)
{
    return flavor == ComplexFlavor::rips ? rips(points, subset, alpha, max_dim) : cech(points, subset, alpha, max_dim);
}

std::vector<int> all_indices(std::size_t n)
{
    std::vector<int> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<int>(i);
    return ids;
}

std::vector<int> delete_ball(std::span<const Point> points, const Point& center, double radius)
{
    if (radius < 0) throw std::invalid_argument("ball radius must be nonnegative");
    std::vector<int> kept;
    const double r2 = radius * radius;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (squared_distance(points[i], center) >= r2) kept.push_back(static_cast<int>(i));
    }
    return kept;
}

// -- chain bases -------------------------------------------------------------

std::size_t ChainBasis::count(int dim) const
{
    if (dim < 0 || dim >= static_cast<int>(cells.size())) return 0;
    return cells[static_cast<std::size_t>(dim)].size();
}

long ChainBasis::index_of(const Simplex& s) const
{
    if (s.dim() >= static_cast<int>(cells.size())) return -1;
    const auto& list = cells[static_cast<std::size_t>(s.dim())];
    auto it = std::lower_bound(list.begin(), list.end(), s);
    if (it == list.end() || *it != s) return -1;
    return it - list.begin();
}

ChainBasis relative_basis(const SimplicialComplex& x, const SimplicialComplex& a)
{
    ChainBasis basis;
    basis.cells.resize(x.simplices.size());
    for (std::size_t d = 0; d < x.simplices.size(); ++d) {
        for (const auto& s : x.simplices[d]) {
            if (!a.contains(s)) basis.cells[d].push_back(s);
        }
    }
    for (std::size_t d = 0; d < a.simplices.size(); ++d) {
        for (const auto& s : a.simplices[d]) {
            if (!x.contains(s)) throw std::invalid_argument("subcomplex is not contained in the complex");
        }
    }
    return basis;
}

ChainBasis absolute_basis(const SimplicialComplex& x) { return ChainBasis{x.simplices}; }

ChainBasis restrict_to_ball(const SimplicialComplex& x, std::span<const Point> points, const Point& center,
                            double radius)
{
    std::vector<char> in_ball(points.size(), 0);
    const double r2 = radius * radius;
    for (int v : x.vertex_ids) {
        in_ball[static_cast<std::size_t>(v)] = squared_distance(points[static_cast<std::size_t>(v)], center) < r2;
    }
    ChainBasis basis;
    basis.cells.resize(x.simplices.size());
    for (std::size_t d = 0; d < x.simplices.size(); ++d) {
        for (const auto& s : x.simplices[d]) {
            auto vs = s.vertices();
            if (std::any_of(vs.begin(), vs.end(), [&](int v) { return in_ball[static_cast<std::size_t>(v)] != 0; })) {
                basis.cells[d].push_back(s);
            }
        }
    }
    return basis;
}

QuotientPairComplex quotient_pair(std::span<const Point> points, const Point& center, double scale, double radius,
                                  ComplexFlavor flavor, int max_dim)
{
    if (!(scale > 0)) throw std::invalid_argument("complex scale must be positive");
    if (radius < 0) throw std::invalid_argument("ball radius must be nonnegative");

    QuotientPairComplex q;
    q.center = center;
    q.scale = scale;
    q.radius = radius;
    q.flavor = flavor;
    q.max_dim = max_dim;
    if (radius == 0.0) {
        q.basis.cells.assign(static_cast<std::size_t>(max_dim) + 1, {});
        return q;
    }
    // Any simplex meeting B_b(p) has diameter <= 2a, so its vertices lie
    // within b + 2a of p. The slack absorbs rounding in the distances.
    const double reach = (radius + 2.0 * scale) * (1.0 + 1e-9);
    const double reach2 = reach * reach;
    std::vector<int> local;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (squared_distance(points[i], center) <= reach2) local.push_back(static_cast<int>(i));
    }
    SimplicialComplex x = build_complex(flavor, points, local, scale, max_dim);
    q.basis = restrict_to_ball(x, points, center, radius);
    return q;
}

// -- cones -------------------------------------------------------------------

namespace {

SimplicialComplex full_subcomplex(const SimplicialComplex& x, std::span<const int> kept_sorted)
{
    SimplicialComplex a;
    a.max_dim = x.max_dim;
    std::set_intersection(x.vertex_ids.begin(), x.vertex_ids.end(), kept_sorted.begin(), kept_sorted.end(),
                          std::back_inserter(a.vertex_ids));
    a.simplices.resize(x.simplices.size());
    for (std::size_t d = 0; d < x.simplices.size(); ++d) {
        for (const auto& s : x.simplices[d]) {
            auto vs = s.vertices();
            if (std::all_of(vs.begin(), vs.end(),
                            [&](int v) { return std::binary_search(kept_sorted.begin(), kept_sorted.end(), v); })) {
                a.simplices[d].push_back(s);
            }
        }
    }
    return a;
}

void append_sorted(std::vector<Simplex>& dst, const std::vector<Simplex>& src)
{
    std::size_t mid = dst.size();
    dst.insert(dst.end(), src.begin(), src.end());
    std::inplace_merge(dst.begin(), dst.begin() + static_cast<long>(mid), dst.end());
}

}  // namespace

SimplexLists ConedPair::all_simplices() const
{
    SimplexLists all = base.simplices;
    if (all.size() < coned.size()) all.resize(coned.size());
    for (std::size_t d = 0; d < coned.size(); ++d) append_sorted(all[d], coned[d]);
    return all;
}

ConedPair cone_pair(std::span<const Point> points, const Point& center, double scale, double radius,
                    ComplexFlavor flavor, int max_dim)
{
    if (radius < 0) throw std::invalid_argument("ball radius must be nonnegative");
    ConedPair cp;
    cp.apex = static_cast<int>(points.size());
    auto everything = all_indices(points.size());
    cp.base = build_complex(flavor, points, everything, scale, max_dim);
    cp.sub = full_subcomplex(cp.base, delete_ball(points, center, radius));
    cp.coned.assign(static_cast<std::size_t>(max_dim) + 1, {});
    cp.coned[0].push_back(Simplex{cp.apex});
    for (std::size_t d = 0; d + 1 <= static_cast<std::size_t>(max_dim) && d < cp.sub.simplices.size(); ++d) {
        for (const auto& s : cp.sub.simplices[d]) cp.coned[d + 1].push_back(s.join(cp.apex));
    }
    // Appending the largest index preserves lexicographic order.
    return cp;
}

TwoLevelFiltration coned_filtration(std::span<const Point> points, const Point& center, PairLevel level1,
                                    PairLevel level2, ComplexFlavor flavor, int max_dim)
{
    if (level1.scale > level2.scale || level2.radius > level1.radius) {
        throw std::invalid_argument("pairs do not nest: need scale1 <= scale2 and radius2 <= radius1");
    }
    ConedPair k1 = cone_pair(points, center, level1.scale, level1.radius, flavor, max_dim);
    ConedPair k2 = cone_pair(points, center, level2.scale, level2.radius, flavor, max_dim);
    SimplexLists first = k1.all_simplices();
    SimplexLists second = k2.all_simplices();

    TwoLevelFiltration f;
    f.apex = k1.apex;
    for (const auto& dim_list : first) {
        for (const auto& s : dim_list) {
            f.order.push_back(s);
            f.level.push_back(1);
        }
    }
    for (std::size_t d = 0; d < second.size(); ++d) {
        const std::vector<Simplex> empty;
        const auto& earlier = d < first.size() ? first[d] : empty;
        for (const auto& s : second[d]) {
            if (std::binary_search(earlier.begin(), earlier.end(), s)) continue;
            f.order.push_back(s);
            f.level.push_back(2);
        }
    }
    return f;
}

std::string dump(const SimplexLists& simplices)
{
    std::ostringstream out;
    for (std::size_t d = 0; d < simplices.size(); ++d) {
        for (const auto& s : simplices[d]) out << "dim " << d << ": " << to_string(s) << "\n";
    }
    return out.str();
}

std::string dump(const SimplicialComplex& complex) { return dump(complex.simplices); }

}  // namespace lochom
