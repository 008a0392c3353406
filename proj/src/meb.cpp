#include "lochom/meb.hpp"

#include <cmath>

namespace lochom {

namespace {

bool inside(const Point& p, const Ball& b)
{
    if (b.squared_radius < 0) return false;
    double s = 0.0;
    for (std::size_t i = 0; i < b.center.size(); ++i) {
        double d = p[i] - b.center[i];
        s += d * d;
    }
    return s <= b.squared_radius * (1.0 + 1e-12) + 1e-300;
}

Ball farthest_pair_ball(std::span<const Point* const> support)
{
    const Point* a = support[0];
    const Point* b = support[0];
    double best = -1.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        for (std::size_t j = i + 1; j < support.size(); ++j) {
            double d = squared_distance(*support[i], *support[j]);
            if (d > best) {
                best = d;
                a = support[i];
                b = support[j];
            }
        }
    }
    Ball ball;
    ball.center.resize(a->dim());
    for (std::size_t i = 0; i < a->dim(); ++i) ball.center[i] = 0.5 * ((*a)[i] + (*b)[i]);
    ball.squared_radius = 0.25 * best;
    return ball;
}

Ball welzl(std::span<const Point* const> pts, std::size_t n, std::vector<const Point*>& support, std::size_t dim)
{
    if (n == 0 || support.size() == dim + 1) return circumball(support);
    const Point* p = pts[n - 1];
    Ball b = welzl(pts, n - 1, support, dim);
    if (inside(*p, b)) return b;
    support.push_back(p);
    b = welzl(pts, n - 1, support, dim);
    support.pop_back();
    return b;
}

}  // namespace

Ball circumball(std::span<const Point* const> support)
{
    Ball ball;
    if (support.empty()) {
        ball.squared_radius = -1.0;
        return ball;
    }
    const Point& q0 = *support[0];
    std::size_t dim = q0.dim();
    std::size_t k = support.size() - 1;
    ball.center = q0.coords();
    if (k == 0) return ball;

    // Center = q0 + sum_j lambda_j (q_j - q0), with the Gram system
    // 2 <q_i - q0, q_j - q0> lambda_j = |q_i - q0|^2.
    std::vector<std::vector<double>> diff(k, std::vector<double>(dim));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t c = 0; c < dim; ++c) diff[i][c] = (*support[i + 1])[c] - q0[c];
    }
    std::vector<std::vector<double>> a(k, std::vector<double>(k + 1));
    double scale = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            double dot = 0.0;
            for (std::size_t c = 0; c < dim; ++c) dot += diff[i][c] * diff[j][c];
            a[i][j] = 2.0 * dot;
        }
        double sq = 0.0;
        for (std::size_t c = 0; c < dim; ++c) sq += diff[i][c] * diff[i][c];
        a[i][k] = sq;
        scale = std::max(scale, sq);
    }
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        if (std::abs(a[piv][col]) <= 1e-12 * scale) return farthest_pair_ball(support);
        std::swap(a[piv], a[col]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        double lambda = a[i][k] / a[i][i];
        for (std::size_t c = 0; c < dim; ++c) ball.center[c] += lambda * diff[i][c];
    }
    double r2 = 0.0;
    for (const Point* q : support) {
        double s = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            double d = (*q)[c] - ball.center[c];
            s += d * d;
        }
        r2 = std::max(r2, s);
    }
    ball.squared_radius = r2;
    return ball;
}

Ball min_enclosing_ball(std::span<const Point* const> points)
{
    if (points.empty()) return circumball({});
    std::vector<const Point*> support;
    support.reserve(points.front()->dim() + 1);
    return welzl(points, points.size(), support, points.front()->dim());
}

}  // namespace lochom
