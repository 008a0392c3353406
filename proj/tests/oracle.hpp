// Slow reference implementations used only by the tests: subset enumeration
// for complexes, enclosing balls from pairs and triples, dense elimination
// over F_q, and the image rank computed on whole (unlocalized) complexes.
#ifndef LOCHOM_TESTS_ORACLE_HPP
#define LOCHOM_TESTS_ORACLE_HPP

#include "lochom/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using lochom::Point;
using Cell = std::vector<int>;
using Dense = std::vector<std::vector<long long>>;  // column-major: m[col][row]

inline void subsets(int n, int k, int start, Cell& cur, std::vector<Cell>& out)
{
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

inline std::vector<Cell> subsets(int n, int k)
{
    std::vector<Cell> out;
    Cell cur;
    subsets(n, k, 0, cur, out);
    return out;
}

// Radius of the smallest disc containing up to four planar points: the best
// candidate among discs spanned by one point, a pair, or a triple.
inline double meb_radius_2d(const std::vector<Point>& p)
{
    auto contains = [&](double cx, double cy, double r) {
        for (const auto& q : p) {
            if (std::hypot(q[0] - cx, q[1] - cy) > r * (1 + 1e-12) + 1e-15) return false;
        }
        return true;
    };
    double best = INFINITY;
    if (p.size() == 1) return 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            double cx = (p[i][0] + p[j][0]) / 2, cy = (p[i][1] + p[j][1]) / 2;
            double r = lochom::distance(p[i], p[j]) / 2;
            if (contains(cx, cy, r)) best = std::min(best, r);
            for (std::size_t k = j + 1; k < p.size(); ++k) {
                double ax = p[i][0], ay = p[i][1], bx = p[j][0], by = p[j][1], qx = p[k][0], qy = p[k][1];
                double d = 2 * (ax * (by - qy) + bx * (qy - ay) + qx * (ay - by));
                if (std::abs(d) < 1e-14) continue;
                double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, q2 = qx * qx + qy * qy;
                double ux = (a2 * (by - qy) + b2 * (qy - ay) + q2 * (ay - by)) / d;
                double uy = (a2 * (qx - bx) + b2 * (ax - qx) + q2 * (bx - ax)) / d;
                double rr = std::hypot(ax - ux, ay - uy);
                if (contains(ux, uy, rr)) best = std::min(best, rr);
            }
        }
    }
    return best;
}

enum class Flavor { rips, cech };

inline bool in_complex(const std::vector<Point>& pts, const Cell& c, double alpha, Flavor flavor)
{
    if (flavor == Flavor::rips) {
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                if (lochom::distance(pts[c[i]], pts[c[j]]) > 2 * alpha) return false;
        return true;
    }
    std::vector<Point> sub;
    for (int v : c) sub.push_back(pts[v]);
    return meb_radius_2d(sub) <= alpha;
}

// All simplices by dimension 0..top.
inline std::vector<std::vector<Cell>> complex(const std::vector<Point>& pts, double alpha, Flavor flavor, int top)
{
    std::vector<std::vector<Cell>> out(top + 1);
    for (int k = 0; k <= top; ++k)
        for (auto& c : subsets(static_cast<int>(pts.size()), k + 1))
            if (in_complex(pts, c, alpha, flavor)) out[k].push_back(c);
    return out;
}

inline long long mod(long long v, long long q) { return ((v % q) + q) % q; }

inline long long inverse(long long a, long long q)
{
    long long r = 1, e = q - 2;
    a = mod(a, q);
    while (e) {
        if (e & 1) r = r * a % q;
        a = a * a % q;
        e >>= 1;
    }
    return r;
}

// Row-reduces a copy of the columns (as row vectors) and returns the rank.
inline int rank(Dense cols, long long q)
{
    int r = 0;
    if (cols.empty()) return 0;
    const std::size_t n = cols[0].size();
    for (std::size_t row = 0; row < n && r < static_cast<int>(cols.size()); ++row) {
        std::size_t piv = cols.size();
        for (std::size_t c = r; c < cols.size(); ++c)
            if (mod(cols[c][row], q)) {
                piv = c;
                break;
            }
        if (piv == cols.size()) continue;
        std::swap(cols[r], cols[piv]);
        long long inv = inverse(cols[r][row], q);
        for (auto& v : cols[r]) v = mod(v * inv, q);
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c == static_cast<std::size_t>(r)) continue;
            long long f = mod(cols[c][row], q);
            if (!f) continue;
            for (std::size_t i = 0; i < n; ++i) cols[c][i] = mod(cols[c][i] - f * cols[r][i], q);
        }
        ++r;
    }
    return r;
}

// Null space of the map given by columns (rows x ncols), as vectors of length ncols.
inline Dense kernel(const Dense& cols, std::size_t rows, long long q)
{
    const std::size_t m = cols.size();
    // Work on the row-major matrix.
    std::vector<std::vector<long long>> a(rows, std::vector<long long>(m));
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t r = 0; r < rows; ++r) a[r][c] = mod(cols[c][r], q);
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (a[i][c]) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        std::swap(a[r], a[piv]);
        long long inv = inverse(a[r][c], q);
        for (auto& v : a[r]) v = mod(v * inv, q);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || !a[i][c]) continue;
            long long f = a[i][c];
            for (std::size_t k = 0; k < m; ++k) a[i][k] = mod(a[i][k] - f * a[r][k], q);
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    Dense out;
    for (std::size_t free = 0; free < m; ++free) {
        if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(free)) != pivot_col.end()) continue;
        std::vector<long long> v(m, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = mod(-a[i][free], q);
        out.push_back(v);
    }
    return out;
}

struct Pair
{
    std::vector<std::vector<Cell>> cells;  // X - A by dimension
};

inline Pair pair(const std::vector<Point>& pts, int center, double alpha, double radius, Flavor flavor, int top)
{
    auto x = complex(pts, alpha, flavor, top);
    Pair p{std::vector<std::vector<Cell>>(top + 1)};
    for (int k = 0; k <= top; ++k)
        for (auto& c : x[k]) {
            bool meets = false;
            for (int v : c) meets |= lochom::distance(pts[v], pts[center]) < radius;
            if (meets) p.cells[k].push_back(c);
        }
    return p;
}

inline long long index_of(const std::vector<Cell>& cells, const Cell& c)
{
    auto it = std::find(cells.begin(), cells.end(), c);
    return it == cells.end() ? -1 : it - cells.begin();
}

// Boundary map C_k -> C_{k-1} of a relative basis, faces outside dropped.
inline Dense boundary(const Pair& p, int k, long long q)
{
    Dense cols;
    for (const auto& c : p.cells[k]) {
        std::vector<long long> col(p.cells[k - 1].size(), 0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            Cell face = c;
            face.erase(face.begin() + static_cast<long>(i));
            long long row = index_of(p.cells[k - 1], face);
            if (row >= 0) col[row] = mod(col[row] + (i % 2 ? -1 : 1), q);
        }
        cols.push_back(col);
    }
    return cols;
}

// Rank of H_l(X1, A1) -> H_l(X2, A2) for l = 0..max_degree.
inline std::vector<int> image_rank(const std::vector<Point>& pts, int center, double a1, double b1, double a2,
                                   double b2, Flavor flavor, long long q, int max_degree)
{
    const int top = max_degree + 1;
    Pair p1 = pair(pts, center, a1, b1, flavor, top);
    Pair p2 = pair(pts, center, a2, b2, flavor, top);
    std::vector<int> out;
    for (int l = 0; l <= max_degree; ++l) {
        Dense cycles;
        if (l == 0) {
            for (std::size_t i = 0; i < p1.cells[0].size(); ++i) {
                std::vector<long long> v(p1.cells[0].size(), 0);
                v[i] = 1;
                cycles.push_back(v);
            }
        } else {
            cycles = kernel(boundary(p1, l, q), p1.cells[l - 1].size(), q);
        }
        Dense mapped;
        for (const auto& z : cycles) {
            std::vector<long long> v(p2.cells[l].size(), 0);
            for (std::size_t i = 0; i < z.size(); ++i) {
                long long j = index_of(p2.cells[l], p1.cells[l][i]);
                if (j >= 0) v[j] = mod(v[j] + z[i], q);
            }
            mapped.push_back(v);
        }
        Dense bounds = boundary(p2, l + 1, q);
        Dense both = bounds;
        both.insert(both.end(), mapped.begin(), mapped.end());
        if (p2.cells[l].empty()) {
            out.push_back(0);
            continue;
        }
        out.push_back(rank(both, q) - rank(bounds, q));
    }
    return out;
}

}  // namespace oracle

#endif
