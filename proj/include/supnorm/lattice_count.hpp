#pragma once

#include <vector>

#include "supnorm/hyperbolic.hpp"
#include "supnorm/quaternion.hpp"

namespace supnorm {

struct CountQuery {
    long long norm = 1;  // target reduced norm N >= 1
    double t = 1.0;      // u-radius, > 0
    PlanePoint z;
};

// Gram matrix of gamma -> ||sigma_z^-1 tau(gamma) sigma_z||_F^2 in order-basis
// coordinates, together with its Cholesky factor (Q = R^T R, R upper triangular).
struct PulledBackForm {
    double q[4][4];
    double chol[4][4];
};

// Throws std::domain_error if the form is not numerically positive definite.
PulledBackForm gram_form(const Order& order, const PlanePoint& z);

double form_value(const PulledBackForm& form, const OrderElement& el);

struct EnumerationResult {
    std::vector<OrderElement> elements;  // canonical (lexicographic) order
    long long count = 0;
    long long boundary_count = 0;  // elements with |u - t| <= 1e-9
};

// All gamma in the order with reduced_norm = N and u(gamma z, z) < t.
// Recursive Cholesky enumeration over the ellipsoid Q_z < 2N(1+2t), exact norm solve
// at the innermost level, float u filter.
EnumerationResult enumerate_ball(const Order& order, const CountQuery& q);

// Same, with the outermost enumeration coordinate restricted to [outer_lo, outer_hi].
EnumerationResult enumerate_ball_slab(const Order& order, const CountQuery& q,
                                      long long outer_lo, long long outer_hi);

// Range of the outermost enumeration coordinate used by enumerate_ball.
std::pair<long long, long long> outer_range(const Order& order, const CountQuery& q);

long long count_ball(const Order& order, const CountQuery& q);

struct GrowthRow {
    long long norm;   // N = p^k
    long long count;  // M(N, t; z)
    double ratio;     // M / (t N^2)
};

struct GrowthScanResult {
    std::vector<GrowthRow> rows;
    double slope;  // least-squares slope of log M vs log N over rows with M > 0
};

GrowthScanResult growth_scan(const Order& order, long long p, int k_max, double t,
                             const PlanePoint& z);

struct DeltaRow {
    long long norm;
    double delta;  // N^-4
    long long count;
    bool flagged;  // count exceeds the small-count threshold
};

std::vector<DeltaRow> delta_scan(const Order& order, long long p, int k_max,
                                 const PlanePoint& z, long long flag_threshold = 4);

}  // namespace supnorm
