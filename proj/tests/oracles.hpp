#pragma once

// Test-only oracles, kept independent of the library's enumeration path.

#include <algorithm>
#include <cmath>
#include <vector>

#include "supnorm/lattice_count.hpp"

namespace supnorm::testing {

// Inverse of a 4x4 matrix by Gauss-Jordan (doubles).
inline void invert4(const double a_in[4][4], double out[4][4]) {
    double m[4][8];
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            m[r][c] = a_in[r][c];
            m[r][4 + c] = (r == c) ? 1.0 : 0.0;
        }
    }
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
        for (int c = 0; c < 8; ++c) std::swap(m[col][c], m[pivot][c]);
        double inv = 1.0 / m[col][col];
        for (int c = 0; c < 8; ++c) m[col][c] *= inv;
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            double f = m[r][col];
            for (int c = 0; c < 8; ++c) m[r][c] -= f * m[col][c];
        }
    }
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[r][c] = m[r][4 + c];
}

// Naive box scan over the coordinate bounding box of the ellipsoid
// Q_z < 2N(1+2t): exact norm filter, then the same float u filter as the library.
inline EnumerationResult box_scan(const Order& order, const CountQuery& q) {
    PulledBackForm form = gram_form(order, q.z);
    double bound = 2.0 * static_cast<double>(q.norm) * (1.0 + 2.0 * q.t) * (1.0 + 1e-9);

    double inv[4][4];
    invert4(form.q, inv);
    long long hi[4];
    for (int k = 0; k < 4; ++k) hi[k] = static_cast<long long>(std::floor(std::sqrt(bound * inv[k][k]))) + 1;

    const auto& gram = order.norm_gram2();
    const __int128 target = 2 * static_cast<__int128>(q.norm);

    EnumerationResult res;
    OrderElement el;
    for (long long x0 = -hi[0]; x0 <= hi[0]; ++x0)
        for (long long x1 = -hi[1]; x1 <= hi[1]; ++x1)
            for (long long x2 = -hi[2]; x2 <= hi[2]; ++x2)
                for (long long x3 = -hi[3]; x3 <= hi[3]; ++x3) {
                    el.x = {x0, x1, x2, x3};
                    __int128 v = 0;
                    for (int i = 0; i < 4; ++i)
                        for (int j = 0; j < 4; ++j)
                            v += static_cast<__int128>(gram[i][j]) * el.x[i] * el.x[j];
                    if (v != target) continue;
                    Mat2 m = order.embed(el);
                    if (m.det() <= 0) continue;
                    PlanePoint w = act(m, q.z);
                    double u = point_pair_u(w, q.z);
                    if (std::fabs(u - q.t) <= 1e-9) res.boundary_count++;
                    if (u < q.t) res.elements.push_back(el);
                }
    std::sort(res.elements.begin(), res.elements.end());
    res.count = static_cast<long long>(res.elements.size());
    return res;
}

}  // namespace supnorm::testing
