#include <algorithm>
#include <cmath>
#include <limits>

#include "edgedim/errors.hpp"
#include "edgedim/montecarlo.hpp"

namespace edgedim {

namespace {

using Polygon = std::vector<Point>;

// Keeps the part of a convex polygon with (x - m) . n <= 0.
Polygon clip(const Polygon& poly, Point m, Point n)
{
    Polygon out;
    out.reserve(poly.size() + 1);
    const std::size_t k = poly.size();
    for (std::size_t i = 0; i < k; ++i) {
        const Point a = poly[i];
        const Point b = poly[(i + 1) % k];
        const double da = (a.x - m.x) * n.x + (a.y - m.y) * n.y;
        const double db = (b.x - m.x) * n.x + (b.y - m.y) * n.y;
        if (da <= 0.0)
            out.push_back(a);
        if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
            const double t = da / (da - db);
            out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        }
    }
    return out;
}

double polygon_area(const Polygon& poly)
{
    double twice = 0.0;
    for (std::size_t i = 0, k = poly.size(); i < k; ++i) {
        const Point a = poly[i];
        const Point b = poly[(i + 1) % k];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * std::abs(twice);
}

}  // namespace

SiteIndex::SiteIndex(std::vector<Point> sites, double half_width)
    : sites_(std::move(sites)), half_width_(half_width)
{
    if (!(half_width > 0.0))
        throw DomainError("SiteIndex: half_width must be > 0");
    if (sites_.empty())
        throw DomainError("SiteIndex: no sites");
    // About two sites per bucket.
    const double side = 2.0 * half_width_;
    n_ = std::clamp(static_cast<int>(std::sqrt(sites_.size() / 2.0)), 1, 2048);
    bucket_ = side / n_;
    buckets_.assign(static_cast<std::size_t>(n_) * n_, {});
    for (std::size_t i = 0; i < sites_.size(); ++i) {
        const Point p = sites_[i];
        if (std::abs(p.x) > half_width_ || std::abs(p.y) > half_width_)
            throw DomainError("SiteIndex: site outside the bounding square");
        const int cx = std::min(n_ - 1, static_cast<int>((p.x + half_width_) / bucket_));
        const int cy = std::min(n_ - 1, static_cast<int>((p.y + half_width_) / bucket_));
        buckets_[static_cast<std::size_t>(cy) * n_ + cx].push_back(i);
    }
}

template <class Visit>
void SiteIndex::for_ring(int cx, int cy, int k, Visit&& visit) const
{
    auto bucket = [&](int x, int y) {
        if (x < 0 || y < 0 || x >= n_ || y >= n_)
            return;
        for (std::size_t j : buckets_[static_cast<std::size_t>(y) * n_ + x])
            visit(j);
    };
    if (k == 0) {
        bucket(cx, cy);
        return;
    }
    for (int x = cx - k; x <= cx + k; ++x) {
        bucket(x, cy - k);
        bucket(x, cy + k);
    }
    for (int y = cy - k + 1; y <= cy + k - 1; ++y) {
        bucket(cx - k, y);
        bucket(cx + k, y);
    }
}

std::size_t SiteIndex::nearest(Point p) const
{
    const int cx = std::clamp(static_cast<int>(std::floor((p.x + half_width_) / bucket_)), 0, n_ - 1);
    const int cy = std::clamp(static_cast<int>(std::floor((p.y + half_width_) / bucket_)), 0, n_ - 1);
    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= n_; ++k) {
        // Every site in ring k is at least (k - 1) buckets away, but p may
        // lie outside the grid, so only stop once a full extra ring is clear.
        const double reach = (k - 1) * bucket_;
        if (reach > 0.0 && reach * reach > best_d2)
            break;
        for_ring(cx, cy, k, [&](std::size_t j) {
            const double dx = sites_[j].x - p.x;
            const double dy = sites_[j].y - p.y;
            const double d2 = dx * dx + dy * dy;
            if (d2 < best_d2 || (d2 == best_d2 && j < best)) {
                best_d2 = d2;
                best = j;
            }
        });
    }
    return best;
}

VoronoiCell SiteIndex::cell(std::size_t i) const
{
    const Point p = sites_.at(i);
    const double w = half_width_;
    Polygon poly{{-w, -w}, {w, -w}, {w, w}, {-w, w}};
    const int cx = std::min(n_ - 1, static_cast<int>((p.x + w) / bucket_));
    const int cy = std::min(n_ - 1, static_cast<int>((p.y + w) / bucket_));

    auto radius = [&] {
        double r2 = 0.0;
        for (const Point& v : poly)
            r2 = std::max(r2, (v.x - p.x) * (v.x - p.x) + (v.y - p.y) * (v.y - p.y));
        return std::sqrt(r2);
    };

    std::vector<std::pair<double, std::size_t>> ring;
    for (int k = 0; k <= n_; ++k) {
        ring.clear();
        for_ring(cx, cy, k, [&](std::size_t j) {
            if (j == i)
                return;
            const double dx = sites_[j].x - p.x;
            const double dy = sites_[j].y - p.y;
            ring.emplace_back(dx * dx + dy * dy, j);
        });
        std::sort(ring.begin(), ring.end());
        for (const auto& [d2, j] : ring) {
            const Point q = sites_[j];
            poly = clip(poly, {0.5 * (p.x + q.x), 0.5 * (p.y + q.y)}, {q.x - p.x, q.y - p.y});
        }
        // Sites beyond the next ring are at least k buckets away and cannot
        // cut a cell whose radius is below half that distance.
        if (k * bucket_ >= 2.0 * radius())
            break;
    }

    VoronoiCell c;
    c.area = polygon_area(poly);
    c.max_vertex_distance = radius();
    const double edge = w * (1.0 - 1e-12);
    for (const Point& v : poly)
        if (std::abs(v.x) >= edge || std::abs(v.y) >= edge)
            c.clipped = true;
    return c;
}

}  // namespace edgedim
