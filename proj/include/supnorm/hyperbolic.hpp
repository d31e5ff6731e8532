#pragma once

#include "supnorm/mat2.hpp"

namespace supnorm {

// z = x + iy in the upper half plane, y > 0.
struct PlanePoint {
    double x = 0;
    double y = 1;
};

// Positive-determinant matrices acting by Mobius maps.
using Isometry = Mat2;

PlanePoint act(const Isometry& g, const PlanePoint& z);

// u(z,w) = |z-w|^2 / (4 Im z Im w) = sinh^2(d/2).
double point_pair_u(const PlanePoint& z, const PlanePoint& w);

// sigma_z = [[sqrt(y), x/sqrt(y)], [0, 1/sqrt(y)]], moving i to z; det = 1.
Isometry transporter(const PlanePoint& z);

double distance(const PlanePoint& z, const PlanePoint& w);

}  // namespace supnorm
