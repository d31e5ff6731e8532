#include "supnorm/hyperbolic.hpp"

#include <cmath>
#include <stdexcept>

namespace supnorm {

PlanePoint act(const Isometry& g, const PlanePoint& z) {
    if (g.det() <= 0) throw std::invalid_argument("isometry must have positive determinant");
    // (az+b)/(cz+d) with z = x+iy
    double re_num = g.a * z.x + g.b;
    double im_num = g.a * z.y;
    double re_den = g.c * z.x + g.d;
    double im_den = g.c * z.y;
    double den2 = re_den * re_den + im_den * im_den;
    if (den2 == 0) throw std::invalid_argument("degenerate Mobius denominator");
    return {(re_num * re_den + im_num * im_den) / den2,
            (im_num * re_den - re_num * im_den) / den2};
}

double point_pair_u(const PlanePoint& z, const PlanePoint& w) {
    double dx = z.x - w.x;
    double dy = z.y - w.y;
    return (dx * dx + dy * dy) / (4.0 * z.y * w.y);
}

Isometry transporter(const PlanePoint& z) {
    double s = std::sqrt(z.y);
    return {s, z.x / s, 0.0, 1.0 / s};
}

double distance(const PlanePoint& z, const PlanePoint& w) {
    return 2.0 * std::asinh(std::sqrt(point_pair_u(z, w)));
}

}  // namespace supnorm
