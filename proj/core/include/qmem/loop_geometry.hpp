#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qmem {

struct Point2 {
    double u = 0.0;
    double v = 0.0;
};

/// Ordered planar curve sampled over one drive period. When closed, the
/// first and last points coincide (within tolerance) and the duplicate
/// closing point is part of the list.
struct PlanarCurve {
    std::vector<Point2> points;
    bool closed = true;
};

inline constexpr std::size_t kMinCurvePoints = 8;
inline constexpr double kDefaultIntersectionTol = 1e-9;

/// A place where two non-neighbouring stretches of the curve meet.
///
/// `param_a < param_b` are curve parameters (segment index + fraction) of the
/// two passes. `degenerate` marks contacts where the passes touch without
/// crossing over (tangential pinch) or where the crossing could not be
/// resolved at the working resolution.
struct Crossing {
    Point2 point;
    double param_a = 0.0;
    double param_b = 0.0;
    bool degenerate = false;
    /// False when this crossing interleaves with a shorter one and could not
    /// be used as a cut; it still counts as a crossing.
    bool split = true;
};

struct SubLoop {
    std::vector<Point2> points;  // closing edge implied
    double signed_area = 0.0;
};

struct LoopDecomposition {
    std::vector<Crossing> crossings;
    std::vector<SubLoop> sub_loops;
    double raw_signed_area = 0.0;

    std::size_t crossing_count() const { return crossings.size(); }
    std::size_t transversal_count() const;
    std::size_t degenerate_count() const;
    double unsigned_area() const;
};

/// Shoelace signed area of a ring; the closing edge back to the first point
/// is implied, so a duplicated closing point contributes nothing.
double shoelace_signed_area(std::span<const Point2> ring);

/// Finds every self-contact of a closed curve by segment-pair distance tests,
/// classifies each as transversal or degenerate, and splits the curve into
/// sub-loops at the contacts. Sub-loop signed areas sum to the raw shoelace
/// area of the whole curve.
///
/// Features smaller than the working resolution (1e-3 of the curve diameter,
/// at least 100 * tol) are treated as part of the curve, not as loops.
///
/// Throws std::invalid_argument for open curves, fewer than 8 points,
/// non-finite points, or tol <= 0.
LoopDecomposition decompose_loop(const PlanarCurve& curve, double tol = kDefaultIntersectionTol);

/// Sum of |area| over the sub-loops of decompose_loop.
double loop_area_unsigned(const PlanarCurve& curve, double tol = kDefaultIntersectionTol);

}  // namespace qmem
