#include "qmem/loop_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace qmem {
namespace {

constexpr double kResolutionFraction = 1e-3;
constexpr double kResolutionTolFactor = 100.0;
constexpr double kLocalArcFactor = 4.0;
constexpr double kAngleEps = 1e-12;

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.u - o.u) * (b.v - o.v) - (a.v - o.v) * (b.u - o.u);
}

double dist(const Point2& a, const Point2& b) { return std::hypot(a.u - b.u, a.v - b.v); }

Point2 lerp(const Point2& a, const Point2& b, double s) {
    return {a.u + s * (b.u - a.u), a.v + s * (b.v - a.v)};
}

struct Closest {
    double distance;
    double s;  // along first segment
    double t;  // along second segment
};

// Closest approach of point p to segment [a, b]; returns (distance, fraction).
std::pair<double, double> point_segment(const Point2& p, const Point2& a, const Point2& b) {
    const double du = b.u - a.u;
    const double dv = b.v - a.v;
    const double len2 = du * du + dv * dv;
    double s = 0.0;
    if (len2 > 0.0) s = std::clamp(((p.u - a.u) * du + (p.v - a.v) * dv) / len2, 0.0, 1.0);
    return {dist(p, lerp(a, b, s)), s};
}

Closest segment_closest(const Point2& p0, const Point2& p1, const Point2& q0, const Point2& q1) {
    const double d1 = cross(p0, p1, q0);
    const double d2 = cross(p0, p1, q1);
    const double d3 = cross(q0, q1, p0);
    const double d4 = cross(q0, q1, p1);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        return {0.0, d3 / (d3 - d4), d1 / (d1 - d2)};
    }
    Closest best{INFINITY, 0.0, 0.0};
    auto consider = [&best](double d, double s, double t) {
        if (d < best.distance) best = {d, s, t};
    };
    {
        auto [d, t] = point_segment(p0, q0, q1);
        consider(d, 0.0, t);
    }
    {
        auto [d, t] = point_segment(p1, q0, q1);
        consider(d, 1.0, t);
    }
    {
        auto [d, s] = point_segment(q0, p0, p1);
        consider(d, s, 0.0);
    }
    {
        auto [d, s] = point_segment(q1, p0, p1);
        consider(d, s, 1.0);
    }
    return best;
}

// Cyclic polygon view of a closed curve with arclength bookkeeping.
class Ring {
public:
    explicit Ring(std::vector<Point2> pts) : pts_(std::move(pts)), cum_(pts_.size() + 1, 0.0) {
        for (std::size_t i = 0; i < pts_.size(); ++i) {
            cum_[i + 1] = cum_[i] + dist(pts_[i], pts_[(i + 1) % pts_.size()]);
        }
    }

    std::size_t size() const { return pts_.size(); }
    const Point2& vertex(std::size_t k) const { return pts_[k % pts_.size()]; }
    const std::vector<Point2>& vertices() const { return pts_; }
    double perimeter() const { return cum_.back(); }

    Point2 at(double param) const {
        const double n = static_cast<double>(size());
        double p = std::fmod(param, n);
        if (p < 0) p += n;
        auto k = static_cast<std::size_t>(std::floor(p));
        if (k >= size()) k = size() - 1;
        return lerp(vertex(k), vertex(k + 1), p - static_cast<double>(k));
    }

    double arclength(double param) const {
        const double n = static_cast<double>(size());
        double p = std::fmod(param, n);
        if (p < 0) p += n;
        auto k = static_cast<std::size_t>(std::floor(p));
        if (k >= size()) k = size() - 1;
        return cum_[k] + (p - static_cast<double>(k)) * (cum_[k + 1] - cum_[k]);
    }

    // Shorter way around the ring between two parameters, in arclength.
    double cyclic_arc(double pa, double pb) const {
        const double d = std::abs(arclength(pa) - arclength(pb));
        return std::min(d, perimeter() - d);
    }

    // Point where the curve, walked from `param` in direction `dir`, first
    // leaves the disc of radius `radius` around `centre`.
    std::optional<Point2> exit_point(double param, int dir, const Point2& centre,
                                     double radius) const {
        const auto n = static_cast<long>(size());
        Point2 cur = at(param);
        long k = dir > 0 ? static_cast<long>(std::floor(param)) + 1
                         : static_cast<long>(std::ceil(param)) - 1;
        for (long steps = 0; steps < n; ++steps, k += dir) {
            const Point2& next = pts_[static_cast<std::size_t>(((k % n) + n) % n)];
            if (dist(next, centre) >= radius) {
                // |cur + s (next - cur) - centre| = radius, larger root.
                const double du = next.u - cur.u;
                const double dv = next.v - cur.v;
                const double fu = cur.u - centre.u;
                const double fv = cur.v - centre.v;
                const double a = du * du + dv * dv;
                const double b = 2.0 * (fu * du + fv * dv);
                const double c = fu * fu + fv * fv - radius * radius;
                const double disc = std::max(0.0, b * b - 4.0 * a * c);
                const double s = std::clamp((-b + std::sqrt(disc)) / (2.0 * a), 0.0, 1.0);
                return lerp(cur, next, s);
            }
            cur = next;
        }
        return std::nullopt;
    }

private:
    std::vector<Point2> pts_;
    std::vector<double> cum_;
};

struct Candidate {
    double pa;
    double pb;
    double distance;
    Point2 point;
};

std::vector<Point2> ring_vertices(const PlanarCurve& curve, double tol) {
    std::vector<Point2> out;
    out.reserve(curve.points.size());
    for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
        const Point2& p = curve.points[i];
        if (!out.empty() && dist(out.back(), p) <= tol) continue;
        out.push_back(p);
    }
    while (out.size() > 1 && dist(out.back(), out.front()) <= tol) out.pop_back();
    return out;
}

void validate(const PlanarCurve& curve, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("decompose_loop: tol must be > 0");
    if (!curve.closed) throw std::invalid_argument("decompose_loop: curve is not closed");
    if (curve.points.size() < kMinCurvePoints) {
        throw std::invalid_argument("decompose_loop: curve needs at least 8 points");
    }
    for (const auto& p : curve.points) {
        if (!std::isfinite(p.u) || !std::isfinite(p.v)) {
            throw std::invalid_argument("decompose_loop: non-finite curve point");
        }
    }
    if (dist(curve.points.front(), curve.points.back()) > tol) {
        throw std::invalid_argument("decompose_loop: first and last points do not coincide");
    }
}

std::vector<Candidate> find_contacts(const Ring& ring, double tol) {
    const std::size_t n = ring.size();
    struct Box {
        double umin, umax, vmin, vmax;
    };
    std::vector<Box> boxes(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = ring.vertex(i);
        const Point2& b = ring.vertex(i + 1);
        boxes[i] = {std::min(a.u, b.u) - tol, std::max(a.u, b.u) + tol, std::min(a.v, b.v) - tol,
                    std::max(a.v, b.v) + tol};
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&boxes](std::size_t x, std::size_t y) { return boxes[x].umin < boxes[y].umin; });

    std::vector<Candidate> found;
    for (std::size_t oi = 0; oi < n; ++oi) {
        const std::size_t i = order[oi];
        for (std::size_t oj = oi + 1; oj < n; ++oj) {
            const std::size_t j = order[oj];
            if (boxes[j].umin > boxes[i].umax) break;
            if (boxes[j].vmin > boxes[i].vmax || boxes[i].vmin > boxes[j].vmax) continue;
            const std::size_t gap = i > j ? i - j : j - i;
            if (gap <= 1 || gap == n - 1) continue;
            const Closest c =
                segment_closest(ring.vertex(i), ring.vertex(i + 1), ring.vertex(j), ring.vertex(j + 1));
            if (c.distance > tol) continue;
            const double pa = static_cast<double>(i) + c.s;
            const double pb = static_cast<double>(j) + c.t;
            const Point2 qa = ring.at(pa);
            const Point2 qb = ring.at(pb);
            found.push_back({std::min(pa, pb), std::max(pa, pb), c.distance,
                             {0.5 * (qa.u + qb.u), 0.5 * (qa.v + qb.v)}});
        }
    }
    return found;
}

// True when walking the ring, the two B arms sit on different sides of the
// path formed by the two A arms.
std::optional<bool> arms_interleave(double a1, double a2, double b1, double b2) {
    auto ccw = [](double from, double to) {
        double d = std::fmod(to - from, 2.0 * std::numbers::pi);
        if (d < 0) d += 2.0 * std::numbers::pi;
        return d;
    };
    const double angles[] = {a1, a2, b1, b2};
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const double d = ccw(angles[i], angles[j]);
            if (d < kAngleEps || 2.0 * std::numbers::pi - d < kAngleEps) return std::nullopt;
        }
    }
    const double span = ccw(a1, a2);
    const bool b1_inside = ccw(a1, b1) < span;
    const bool b2_inside = ccw(a1, b2) < span;
    return b1_inside != b2_inside;
}

bool is_transversal(const Ring& ring, const Crossing& c, double radius) {
    const auto a_fwd = ring.exit_point(c.param_a, +1, c.point, radius);
    const auto a_bwd = ring.exit_point(c.param_a, -1, c.point, radius);
    const auto b_fwd = ring.exit_point(c.param_b, +1, c.point, radius);
    const auto b_bwd = ring.exit_point(c.param_b, -1, c.point, radius);
    if (!a_fwd || !a_bwd || !b_fwd || !b_bwd) return false;
    auto angle = [&c](const Point2& p) { return std::atan2(p.v - c.point.v, p.u - c.point.u); };
    const auto inter = arms_interleave(angle(*a_bwd), angle(*a_fwd), angle(*b_bwd), angle(*b_fwd));
    return inter.value_or(false);
}

std::vector<Crossing> cluster_contacts(const Ring& ring, std::vector<Candidate> cands,
                                       double radius) {
    const double near_arc = kLocalArcFactor * radius;
    // Contacts between stretches joined by a short arc are local features.
    std::erase_if(cands, [&](const Candidate& c) { return ring.cyclic_arc(c.pa, c.pb) <= near_arc; });

    std::vector<std::size_t> parent(cands.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto same_event = [&](const Candidate& x, const Candidate& y) {
        if (dist(x.point, y.point) > radius) return false;
        const bool direct =
            ring.cyclic_arc(x.pa, y.pa) <= near_arc && ring.cyclic_arc(x.pb, y.pb) <= near_arc;
        const bool swapped =
            ring.cyclic_arc(x.pa, y.pb) <= near_arc && ring.cyclic_arc(x.pb, y.pa) <= near_arc;
        return direct || swapped;
    };
    for (std::size_t i = 0; i < cands.size(); ++i) {
        for (std::size_t j = i + 1; j < cands.size(); ++j) {
            if (same_event(cands[i], cands[j])) parent[find(i)] = find(j);
        }
    }

    std::vector<std::optional<std::size_t>> best(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) {
        auto& slot = best[find(i)];
        if (!slot || cands[i].distance < cands[*slot].distance) slot = i;
    }

    std::vector<Crossing> out;
    for (const auto& slot : best) {
        if (!slot) continue;
        const Candidate& c = cands[*slot];
        Crossing x;
        x.param_a = c.pa;
        x.param_b = c.pb;
        x.point = c.point;
        x.degenerate = !is_transversal(ring, x, radius);
        out.push_back(x);
    }
    std::sort(out.begin(), out.end(),
              [](const Crossing& x, const Crossing& y) { return x.param_a < y.param_a; });
    return out;
}

struct Cut {
    double a;
    double b;
    std::vector<std::size_t> children;
};

std::vector<Point2> trace(const Ring& ring, double from, double to, const std::vector<Cut>& cuts,
                          const std::vector<std::size_t>& children) {
    std::vector<std::size_t> kids = children;
    std::sort(kids.begin(), kids.end(),
              [&cuts](std::size_t x, std::size_t y) { return cuts[x].a < cuts[y].a; });

    std::vector<Point2> pts;
    auto append_vertices = [&](double lo, double hi) {
        for (auto k = static_cast<long>(std::floor(lo)) + 1; static_cast<double>(k) < hi; ++k) {
            pts.push_back(ring.vertex(static_cast<std::size_t>(k)));
        }
    };
    pts.push_back(ring.at(from));
    double cursor = from;
    for (std::size_t k : kids) {
        append_vertices(cursor, cuts[k].a);
        pts.push_back(ring.at(cuts[k].a));
        pts.push_back(ring.at(cuts[k].b));
        cursor = cuts[k].b;
    }
    append_vertices(cursor, to);
    pts.push_back(ring.at(to));
    return pts;
}

}  // namespace

std::size_t LoopDecomposition::transversal_count() const {
    return static_cast<std::size_t>(
        std::count_if(crossings.begin(), crossings.end(), [](const Crossing& c) { return !c.degenerate; }));
}

std::size_t LoopDecomposition::degenerate_count() const {
    return crossings.size() - transversal_count();
}

double LoopDecomposition::unsigned_area() const {
    double sum = 0.0;
    for (const auto& s : sub_loops) sum += std::abs(s.signed_area);
    return sum;
}

double shoelace_signed_area(std::span<const Point2> ring) {
    if (ring.size() < 3) return 0.0;
    // Reference-shifted to limit cancellation for curves far from the origin.
    const Point2 o = ring.front();
    double sum = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point2& p = ring[i];
        const Point2& q = ring[(i + 1) % ring.size()];
        sum += (p.u - o.u) * (q.v - o.v) - (q.u - o.u) * (p.v - o.v);
    }
    return 0.5 * sum;
}

LoopDecomposition decompose_loop(const PlanarCurve& curve, double tol) {
    validate(curve, tol);
    const Ring ring(ring_vertices(curve, tol));
    if (ring.size() < 3) throw std::invalid_argument("decompose_loop: curve collapses to a point");

    double umin = INFINITY, umax = -INFINITY, vmin = INFINITY, vmax = -INFINITY;
    for (const auto& p : ring.vertices()) {
        umin = std::min(umin, p.u);
        umax = std::max(umax, p.u);
        vmin = std::min(vmin, p.v);
        vmax = std::max(vmax, p.v);
    }
    const double diameter = std::hypot(umax - umin, vmax - vmin);
    const double radius = std::max(kResolutionFraction * diameter, kResolutionTolFactor * tol);

    LoopDecomposition out;
    out.raw_signed_area = shoelace_signed_area(ring.vertices());
    out.crossings = cluster_contacts(ring, find_contacts(ring, tol), radius);

    // Cut at crossings shortest-first; a crossing interleaving an accepted
    // cut cannot split the curve further.
    std::vector<std::size_t> order(out.crossings.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return out.crossings[x].param_b - out.crossings[x].param_a <
               out.crossings[y].param_b - out.crossings[y].param_a;
    });
    std::vector<Cut> cuts;
    for (std::size_t idx : order) {
        Crossing& c = out.crossings[idx];
        const bool clash = std::any_of(cuts.begin(), cuts.end(), [&c](const Cut& k) {
            return (k.a < c.param_a && c.param_a < k.b && k.b < c.param_b) ||
                   (c.param_a < k.a && k.a < c.param_b && c.param_b < k.b);
        });
        c.split = !clash;
        if (!clash) cuts.push_back({c.param_a, c.param_b, {}});
    }

    // Cuts were accepted shortest-first, so the first later cut that contains
    // a given one is its tightest enclosing cut.
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        std::optional<std::size_t> parent;
        for (std::size_t j = i + 1; j < cuts.size(); ++j) {
            if (cuts[j].a <= cuts[i].a && cuts[i].b <= cuts[j].b) {
                parent = j;
                break;
            }
        }
        if (parent) cuts[*parent].children.push_back(i);
        else roots.push_back(i);
    }

    for (const Cut& k : cuts) {
        SubLoop s;
        s.points = trace(ring, k.a, k.b, cuts, k.children);
        s.signed_area = shoelace_signed_area(s.points);
        out.sub_loops.push_back(std::move(s));
    }
    SubLoop outer;
    outer.points = trace(ring, 0.0, static_cast<double>(ring.size()), cuts, roots);
    outer.points.pop_back();  // at(n) repeats vertex 0
    outer.signed_area = shoelace_signed_area(outer.points);
    out.sub_loops.insert(out.sub_loops.begin(), std::move(outer));
    return out;
}

double loop_area_unsigned(const PlanarCurve& curve, double tol) {
    return decompose_loop(curve, tol).unsigned_area();
}

}  // namespace qmem
