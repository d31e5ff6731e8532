#include "supnorm/lattice_count.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace supnorm {

namespace {

constexpr double kEllipsoidMargin = 1e-9;
constexpr double kBoundaryTol = 1e-9;

void cholesky4(const double q[4][4], double r[4][4]) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = 0;
    for (int i = 0; i < 4; ++i) {
        double d = q[i][i];
        for (int k = 0; k < i; ++k) d -= r[k][i] * r[k][i];
        if (d <= 0) throw std::domain_error("pulled-back form is not positive definite");
        r[i][i] = std::sqrt(d);
        for (int j = i + 1; j < 4; ++j) {
            double s = q[i][j];
            for (int k = 0; k < i; ++k) s -= r[k][i] * r[k][j];
            r[i][j] = s / r[i][i];
        }
    }
}

using int128 = __int128;

// Largest s with s*s <= v, for v >= 0.
long long isqrt128(int128 v) {
    if (v < 0) return -1;
    long long s = static_cast<long long>(std::sqrt(static_cast<double>(v)));
    while (static_cast<int128>(s) * s > v) --s;
    while (static_cast<int128>(s + 1) * (s + 1) <= v) ++s;
    return s;
}

struct EnumContext {
    const Order* order;
    double bound;  // inflated ellipsoid bound on Q_z
    double t;
    PlanePoint z;
    long long target2n;      // 2N
    int perm[4];             // enumeration level -> original coordinate (level 0 innermost)
    double r[4][4];          // Cholesky of permuted Q
    long long gram[4][4];    // permuted integer norm gram T (x^T T x = 2 N(x))
    bool solve_inner;        // innermost level solved from the norm equation
    EnumerationResult out;
};

void emit(EnumContext& ctx, const long long xs[4]) {
    OrderElement el;
    for (int lvl = 0; lvl < 4; ++lvl) el.x[ctx.perm[lvl]] = xs[lvl];
    Mat2 m = ctx.order->embed(el);
    if (m.det() <= 0) return;  // u-ball is defined through the Mobius action, det > 0 only
    PlanePoint w = act(m, ctx.z);
    double u = point_pair_u(w, ctx.z);
    if (std::fabs(u - ctx.t) <= kBoundaryTol) ctx.out.boundary_count++;
    if (u < ctx.t) ctx.out.elements.push_back(el);
}

// Check 2*N(el) == target exactly for a candidate completion.
bool norm_matches(const EnumContext& ctx, const long long xs[4]) {
    int128 v = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) v += static_cast<int128>(ctx.gram[i][j]) * xs[i] * xs[j];
    return v == ctx.target2n;
}

// Innermost level: solve gram[0][0] x^2 + l x + c = 2N over the integers.
void solve_level0(EnumContext& ctx, long long xs[4]) {
    long long q = ctx.gram[0][0];
    int128 l = 0, c = -static_cast<int128>(ctx.target2n);
    for (int j = 1; j < 4; ++j) l += static_cast<int128>(2 * ctx.gram[0][j]) * xs[j];
    for (int i = 1; i < 4; ++i)
        for (int j = 1; j < 4; ++j) c += static_cast<int128>(ctx.gram[i][j]) * xs[i] * xs[j];

    auto try_root = [&](int128 num, int128 den) {
        if (den == 0 || num % den != 0) return;
        int128 x = num / den;
        if (x > (1ll << 40) || x < -(1ll << 40)) return;
        xs[0] = static_cast<long long>(x);
        if (norm_matches(ctx, xs)) emit(ctx, xs);
    };

    if (q != 0) {
        int128 disc = l * l - 4 * static_cast<int128>(q) * c;
        if (disc < 0) return;
        long long s = isqrt128(disc);
        if (static_cast<int128>(s) * s != disc) return;
        try_root(-l + s, 2 * q);
        if (s != 0) try_root(-l - s, 2 * q);
    } else if (l != 0) {
        try_root(-c, l);
    } else if (c == 0) {
        // Norm equation degenerate at this node: fall back to scanning the
        // Cholesky interval of the innermost coordinate.
        double rest = 0, center = 0;
        for (int j = 1; j < 4; ++j) center += ctx.r[0][j] * static_cast<double>(xs[j]);
        (void)rest;
        double radius = std::sqrt(ctx.bound);  // conservative
        long long lo = static_cast<long long>(std::ceil((-radius - center) / ctx.r[0][0])) - 1;
        long long hi = static_cast<long long>(std::floor((radius - center) / ctx.r[0][0])) + 1;
        for (long long x = lo; x <= hi; ++x) {
            xs[0] = x;
            if (norm_matches(ctx, xs)) emit(ctx, xs);
        }
    }
}

void enumerate_level(EnumContext& ctx, int lvl, double budget, long long xs[4]) {
    if (lvl == 0 && ctx.solve_inner) {
        solve_level0(ctx, xs);
        return;
    }
    double center = 0;
    for (int j = lvl + 1; j < 4; ++j) center += ctx.r[lvl][j] * static_cast<double>(xs[j]);
    double radius = std::sqrt(std::max(budget, 0.0));
    long long lo = static_cast<long long>(std::ceil((-radius - center) / ctx.r[lvl][lvl]));
    long long hi = static_cast<long long>(std::floor((radius - center) / ctx.r[lvl][lvl]));
    for (long long x = lo; x <= hi; ++x) {
        double y = ctx.r[lvl][lvl] * static_cast<double>(x) + center;
        double rem = budget - y * y;
        if (rem < 0) continue;
        xs[lvl] = x;
        if (lvl == 0) {
            if (norm_matches(ctx, xs)) emit(ctx, xs);
        } else {
            enumerate_level(ctx, lvl - 1, rem, xs);
        }
    }
}

EnumContext make_context(const Order& order, const CountQuery& q) {
    if (q.norm < 1) throw std::invalid_argument("count query requires norm >= 1");
    if (q.t <= 0) throw std::invalid_argument("count query requires t > 0");
    if (q.z.y <= 0) throw std::invalid_argument("count query requires Im z > 0");

    EnumContext ctx;
    ctx.order = &order;
    ctx.t = q.t;
    ctx.z = q.z;
    ctx.target2n = 2 * q.norm;
    ctx.bound = 2.0 * static_cast<double>(q.norm) * (1.0 + 2.0 * q.t) * (1.0 + kEllipsoidMargin);

    const auto& gram = order.norm_gram2();
    // Innermost coordinate: largest |diagonal| of the norm form, so the inner level
    // reduces to an integer quadratic.
    int inner = -1;
    long long best = 0;
    for (int k = 0; k < 4; ++k)
        if (std::llabs(gram[k][k]) > best) {
            best = std::llabs(gram[k][k]);
            inner = k;
        }
    ctx.solve_inner = inner >= 0;
    if (inner < 0) inner = 0;
    ctx.perm[0] = inner;
    for (int k = 0, lvl = 1; k < 4; ++k)
        if (k != inner) ctx.perm[lvl++] = k;

    PulledBackForm form = gram_form(order, q.z);
    double qp[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            qp[i][j] = form.q[ctx.perm[i]][ctx.perm[j]];
            ctx.gram[i][j] = gram[ctx.perm[i]][ctx.perm[j]];
        }
    cholesky4(qp, ctx.r);
    return ctx;
}

EnumerationResult finish(EnumContext&& ctx) {
    std::sort(ctx.out.elements.begin(), ctx.out.elements.end());
    ctx.out.count = static_cast<long long>(ctx.out.elements.size());
    return std::move(ctx.out);
}

}  // namespace

PulledBackForm gram_form(const Order& order, const PlanePoint& z) {
    Isometry sigma = transporter(z);
    Isometry sigma_inv = sigma.inverse();
    Mat2 m[4];
    for (int k = 0; k < 4; ++k) m[k] = sigma_inv * order.basis_matrices()[k] * sigma;
    PulledBackForm form;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            form.q[i][j] = m[i].a * m[j].a + m[i].b * m[j].b + m[i].c * m[j].c + m[i].d * m[j].d;
    cholesky4(form.q, form.chol);
    return form;
}

double form_value(const PulledBackForm& form, const OrderElement& el) {
    double v = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            v += form.q[i][j] * static_cast<double>(el.x[i]) * static_cast<double>(el.x[j]);
    return v;
}

EnumerationResult enumerate_ball(const Order& order, const CountQuery& q) {
    EnumContext ctx = make_context(order, q);
    long long xs[4] = {0, 0, 0, 0};
    enumerate_level(ctx, 3, ctx.bound, xs);
    return finish(std::move(ctx));
}

std::pair<long long, long long> outer_range(const Order& order, const CountQuery& q) {
    EnumContext ctx = make_context(order, q);
    double radius = std::sqrt(ctx.bound);
    long long lo = static_cast<long long>(std::ceil(-radius / ctx.r[3][3]));
    long long hi = static_cast<long long>(std::floor(radius / ctx.r[3][3]));
    return {lo, hi};
}

EnumerationResult enumerate_ball_slab(const Order& order, const CountQuery& q,
                                      long long outer_lo, long long outer_hi) {
    EnumContext ctx = make_context(order, q);
    long long xs[4] = {0, 0, 0, 0};
    double radius = std::sqrt(ctx.bound);
    long long lo = static_cast<long long>(std::ceil(-radius / ctx.r[3][3]));
    long long hi = static_cast<long long>(std::floor(radius / ctx.r[3][3]));
    lo = std::max(lo, outer_lo);
    hi = std::min(hi, outer_hi);
    for (long long x = lo; x <= hi; ++x) {
        double y = ctx.r[3][3] * static_cast<double>(x);
        double rem = ctx.bound - y * y;
        if (rem < 0) continue;
        xs[3] = x;
        enumerate_level(ctx, 2, rem, xs);
    }
    return finish(std::move(ctx));
}

long long count_ball(const Order& order, const CountQuery& q) {
    return enumerate_ball(order, q).count;
}

GrowthScanResult growth_scan(const Order& order, long long p, int k_max, double t,
                             const PlanePoint& z) {
    if (t <= 1) throw std::invalid_argument("growth scan requires t > 1");
    GrowthScanResult res;
    long long n = 1;
    for (int k = 0; k <= k_max; ++k) {
        long long m = count_ball(order, {n, t, z});
        double nd = static_cast<double>(n);
        res.rows.push_back({n, m, static_cast<double>(m) / (t * nd * nd)});
        if (k < k_max) n *= p;
    }
    // least-squares slope of log M against log N, rows with M > 0
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& row : res.rows) {
        if (row.count <= 0) continue;
        double x = std::log(static_cast<double>(row.norm));
        double y = std::log(static_cast<double>(row.count));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    double denom = cnt * sxx - sx * sx;
    res.slope = denom != 0 ? (cnt * sxy - sx * sy) / denom : 0.0;
    return res;
}

std::vector<DeltaRow> delta_scan(const Order& order, long long p, int k_max,
                                 const PlanePoint& z, long long flag_threshold) {
    std::vector<DeltaRow> rows;
    long long n = 1;
    for (int k = 0; k <= k_max; ++k) {
        double nd = static_cast<double>(n);
        double delta = 1.0 / (nd * nd * nd * nd);
        long long m = count_ball(order, {n, delta, z});
        rows.push_back({n, delta, m, m > flag_threshold});
        if (k < k_max) n *= p;
    }
    return rows;
}

}  // namespace supnorm
