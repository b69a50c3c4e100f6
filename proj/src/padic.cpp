#include "mori/padic.hpp"

#include <stdexcept>

namespace mori {

namespace {

// cross product orientation of (b - a) x (c - a)
long long cross(const PolygonPoint& a, const PolygonPoint& b, const PolygonPoint& c) {
    long long abx = b.index - a.index, aby = b.valuation - a.valuation;
    long long acx = c.index - a.index, acy = c.valuation - a.valuation;
    return abx * acy - aby * acx;
}

}  // namespace

NewtonPolygon NewtonPolygon::from_points(std::vector<PolygonPoint> points) {
    if (points.size() < 2)
        throw std::invalid_argument("newton polygon needs at least two points");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].index <= points[i - 1].index)
            throw std::invalid_argument("newton polygon points must have ascending indices");
    if (points.front().index != 0)
        throw std::invalid_argument("newton polygon undefined: a_0 = 0 (strip the root zero first)");

    NewtonPolygon pg;
    pg.points_ = std::move(points);

    // Andrew-style lower hull over points already sorted by index.
    std::vector<PolygonPoint> hull;
    for (const auto& pt : pg.points_) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0)
            hull.pop_back();
        hull.push_back(pt);
    }
    pg.vertices_ = std::move(hull);

    for (std::size_t i = 1; i < pg.vertices_.size(); ++i) {
        PolygonSegment s;
        s.from = pg.vertices_[i - 1];
        s.to = pg.vertices_[i];
        long dx = s.to.index - s.from.index;
        long dy = s.to.valuation - s.from.valuation;
        long g = std::gcd(dx, dy < 0 ? -dy : dy);
        if (g == 0) g = dx;  // horizontal segment
        s.slope_num = dy / g;
        s.slope_den = dx / g;
        s.lattice_points = g + 1;
        pg.segments_.push_back(s);
    }

    // hull sanity: every point on or above the hull, slopes strictly increase
    for (std::size_t i = 1; i < pg.segments_.size(); ++i) {
        const auto& a = pg.segments_[i - 1];
        const auto& b = pg.segments_[i];
        if (static_cast<long long>(a.slope_num) * b.slope_den >=
            static_cast<long long>(b.slope_num) * a.slope_den)
            throw std::logic_error("newton polygon: slopes not strictly increasing");
    }
    for (const auto& pt : pg.points_) {
        for (const auto& s : pg.segments_) {
            if (pt.index < s.from.index || pt.index > s.to.index) continue;
            long long lhs = static_cast<long long>(pt.valuation - s.from.valuation) *
                            (s.to.index - s.from.index);
            long long rhs = static_cast<long long>(s.to.valuation - s.from.valuation) *
                            (pt.index - s.from.index);
            if (lhs < rhs) throw std::logic_error("newton polygon: point below hull");
        }
    }
    return pg;
}

NewtonPolygon newton_polygon_2adic(const IntPolynomial& u) {
    if (u.is_zero() || u.degree() < 1)
        throw std::invalid_argument("newton polygon needs degree >= 1");
    if (u.numerator(0) == 0)
        throw std::invalid_argument("newton polygon undefined: a_0 = 0 (strip the root zero first)");
    std::vector<PolygonPoint> pts;
    long e = static_cast<long>(u.denom_exponent());
    for (int i = 0; i <= u.degree(); ++i) {
        const mpz_class& a = u.numerator(static_cast<std::size_t>(i));
        if (a == 0) continue;
        mpz_class m = abs(a);
        long v2 = static_cast<long>(mpz_scan1(m.get_mpz_t(), 0));
        pts.push_back({i, v2 - e});
    }
    return NewtonPolygon::from_points(std::move(pts));
}

EisensteinDumasResult eisenstein_dumas(const NewtonPolygon& polygon) {
    EisensteinDumasResult r;
    r.single_segment = polygon.segments().size() == 1;
    if (!r.single_segment) return r;
    r.segment = polygon.segments().front();
    long n = r.segment.to.index - r.segment.from.index;
    long span = r.segment.from.valuation - r.segment.to.valuation;
    r.span_gcd = std::gcd(span < 0 ? -span : span, n);
    // endpoints are the only lattice points iff the gcd is 1
    r.irreducible = (r.span_gcd == 1);
    return r;
}

}  // namespace mori
