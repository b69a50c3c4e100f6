#ifndef MORI_PADIC_HPP
#define MORI_PADIC_HPP

#include <numeric>
#include <vector>

#include "mori/intpoly.hpp"

namespace mori {

struct PolygonPoint {
    long index = 0;      // coefficient index i
    long valuation = 0;  // v(a_i), exact integer
    friend bool operator==(const PolygonPoint&, const PolygonPoint&) = default;
};

struct PolygonSegment {
    PolygonPoint from;
    PolygonPoint to;
    long slope_num = 0;  // reduced, slope = slope_num / slope_den
    long slope_den = 1;  // > 0
    long lattice_points = 2;  // lattice points on the closed segment
    friend bool operator==(const PolygonSegment&, const PolygonSegment&) = default;
};

/// Lower convex hull of (i, v(a_i)) over the nonzero coefficients.
class NewtonPolygon {
  public:
    // points: one entry per nonzero coefficient, ascending index; must
    // include index 0 (a_0 != 0) and the leading index.
    static NewtonPolygon from_points(std::vector<PolygonPoint> points);

    const std::vector<PolygonPoint>& points() const { return points_; }
    const std::vector<PolygonPoint>& vertices() const { return vertices_; }
    const std::vector<PolygonSegment>& segments() const { return segments_; }

  private:
    std::vector<PolygonPoint> points_;
    std::vector<PolygonPoint> vertices_;
    std::vector<PolygonSegment> segments_;
};

// 2-adic polygon of u over Z[1/2]: v(a_i / 2^e) = v2(a_i) - e.
// Requires a_0 != 0 (strip the root zero first) and u nonzero.
NewtonPolygon newton_polygon_2adic(const IntPolynomial& u);

struct EisensteinDumasResult {
    bool irreducible = false;
    bool single_segment = false;
    long span_gcd = 0;  // gcd(|v(a_0) - v(a_n)|, n), the witness
    PolygonSegment segment;  // the single segment when present
};

// Single segment whose endpoints are its only lattice points, i.e.
// gcd(v(a_0) - v(a_n), n) == 1, certifies irreducibility over the local
// field (and hence over the global one) for monic input.
EisensteinDumasResult eisenstein_dumas(const NewtonPolygon& polygon);

}  // namespace mori

#endif
