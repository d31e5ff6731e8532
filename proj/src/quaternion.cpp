#include "supnorm/quaternion.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace supnorm {

Quat q_add(const Quat& x, const Quat& y) {
    Quat z;
    for (int k = 0; k < 4; ++k) z.c[k] = x.c[k] + y.c[k];
    return z;
}

Quat q_scale(const Rat& s, const Quat& x) {
    Quat z;
    for (int k = 0; k < 4; ++k) z.c[k] = s * x.c[k];
    return z;
}

// Multiplication table with k = ij:
//   i*j = k,  j*i = -k,  i*k = a j,  k*i = -a j,  j*k = -b i,  k*j = b i,  k^2 = -ab.
Quat q_mul(const AlgebraSpec& alg, const Quat& x, const Quat& y) {
    const Rat &a = alg.a, &b = alg.b;
    const auto &u = x.c, &v = y.c;
    Quat z;
    z.c[0] = u[0] * v[0] + a * u[1] * v[1] + b * u[2] * v[2] - a * b * u[3] * v[3];
    z.c[1] = u[0] * v[1] + u[1] * v[0] - b * u[2] * v[3] + b * u[3] * v[2];
    z.c[2] = u[0] * v[2] + u[2] * v[0] + a * u[1] * v[3] - a * u[3] * v[1];
    z.c[3] = u[0] * v[3] + u[3] * v[0] + u[1] * v[2] - u[2] * v[1];
    return z;
}

Quat q_conj(const Quat& x) {
    Quat z = x;
    for (int k = 1; k < 4; ++k) z.c[k] = -z.c[k];
    return z;
}

Rat q_norm(const AlgebraSpec& alg, const Quat& x) {
    const auto& u = x.c;
    return u[0] * u[0] - alg.a * u[1] * u[1] - alg.b * u[2] * u[2] +
           alg.a * alg.b * u[3] * u[3];
}

Rat q_trace(const Quat& x) { return 2 * x.c[0]; }

Mat2 embed_standard(const AlgebraSpec& alg, const Quat& x) {
    double a = to_double(alg.a), b = to_double(alg.b);
    double x0 = to_double(x.c[0]), x1 = to_double(x.c[1]);
    double x2 = to_double(x.c[2]), x3 = to_double(x.c[3]);
    if (alg.b > 0) {
        // i -> [[0,1],[a,0]], j -> diag(sqrt(b), -sqrt(b))
        double s = std::sqrt(b);
        return {x0 + x2 * s, x1 - x3 * s, a * (x1 + x3 * s), x0 - x2 * s};
    }
    if (alg.a > 0) {
        // roles of i and j swapped: j -> [[0,1],[b,0]], i -> diag(sqrt(a), -sqrt(a))
        double s = std::sqrt(a);
        return {x0 + x1 * s, x2 + x3 * s, b * (x2 - x3 * s), x0 - x1 * s};
    }
    throw std::invalid_argument("algebra (a,b) with a<0 and b<0 does not split over R");
}

namespace {

// Gauss-Jordan inverse of a 4x4 rational matrix (rows = basis vectors).
std::array<std::array<Rat, 4>, 4> invert4(const std::array<Quat, 4>& e) {
    std::array<std::array<Rat, 8>, 4> m{};
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) m[r][c] = e[r].c[c];
        m[r][4 + r] = Rat(1);
    }
    for (int col = 0; col < 4; ++col) {
        int pivot = -1;
        for (int r = col; r < 4; ++r)
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw std::invalid_argument("order basis matrix is singular");
        std::swap(m[col], m[pivot]);
        Rat inv = Rat(1) / m[col][col];
        for (int c = 0; c < 8; ++c) m[col][c] *= inv;
        for (int r = 0; r < 4; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (int c = 0; c < 8; ++c) m[r][c] -= f * m[col][c];
        }
    }
    std::array<std::array<Rat, 4>, 4> out;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[r][c] = m[r][4 + c];
    return out;
}

long long to_ll_checked(const BigInt& v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw std::overflow_error("gram entry exceeds 64-bit range");
    return v.convert_to<long long>();
}

}  // namespace

Order::Order(AlgebraSpec alg, OrderBasis basis) : alg_(std::move(alg)), basis_(std::move(basis)) {
    if (alg_.a == 0 || alg_.b == 0)
        throw std::invalid_argument("algebra structure constants must be nonzero");
    if (!alg_.splits_at_infinity())
        throw std::invalid_argument("algebra (a,b) with a<0 and b<0 does not split over R");
    inv_ = invert4(basis_.e);
    for (int k = 0; k < 4; ++k) tau_[k] = embed_standard(alg_, basis_.e[k]);
}

Quat Order::coords_to_standard(const std::array<Rat, 4>& coords) const {
    Quat q;
    for (int k = 0; k < 4; ++k)
        for (int c = 0; c < 4; ++c) q.c[c] += coords[k] * basis_.e[k].c[c];
    return q;
}

Quat Order::to_standard(const OrderElement& el) const {
    std::array<Rat, 4> coords;
    for (int k = 0; k < 4; ++k) coords[k] = Rat(BigInt(el.x[k]));
    return coords_to_standard(coords);
}

std::array<Rat, 4> Order::standard_to_coords(const Quat& q) const {
    // coords = q * inv  (q as a row vector of standard coordinates)
    std::array<Rat, 4> out;
    for (int k = 0; k < 4; ++k) {
        Rat s(0);
        for (int c = 0; c < 4; ++c) s += q.c[c] * inv_[c][k];
        out[k] = s;
    }
    return out;
}

std::optional<OrderElement> Order::from_standard(const Quat& q) const {
    auto coords = standard_to_coords(q);
    OrderElement el;
    for (int k = 0; k < 4; ++k) {
        if (!is_integer(coords[k])) return std::nullopt;
        el.x[k] = to_ll_checked(rat_num(coords[k]));
    }
    return el;
}

OrderElement Order::multiply(const OrderElement& x, const OrderElement& y) const {
    Quat p = q_mul(alg_, to_standard(x), to_standard(y));
    auto el = from_standard(p);
    if (!el)
        throw std::domain_error("product left the lattice: basis is not multiplicatively closed");
    return *el;
}

OrderElement Order::conjugate(const OrderElement& x) const {
    auto el = from_standard(q_conj(to_standard(x)));
    if (!el) throw std::domain_error("conjugate left the lattice: not a valid order basis");
    return *el;
}

BigInt Order::reduced_norm(const OrderElement& x) const {
    Rat n = q_norm(alg_, to_standard(x));
    if (!is_integer(n)) throw std::domain_error("reduced norm is not an integer");
    return rat_num(n);
}

BigInt Order::reduced_trace(const OrderElement& x) const {
    Rat t = q_trace(to_standard(x));
    if (!is_integer(t)) throw std::domain_error("reduced trace is not an integer");
    return rat_num(t);
}

Mat2 Order::embed(const OrderElement& x) const {
    Mat2 m{};
    for (int k = 0; k < 4; ++k) m = m + tau_[k] * static_cast<double>(x.x[k]);
    return m;
}

const std::array<std::array<long long, 4>, 4>& Order::norm_gram2() const {
    if (!gram2_) {
        // T_kl = rtr(e_k * conj(e_l)), so that x^T T x = 2 N(x).
        std::array<std::array<long long, 4>, 4> t;
        for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) {
                Rat v = q_trace(q_mul(alg_, basis_.e[k], q_conj(basis_.e[l])));
                if (!is_integer(v))
                    throw std::domain_error("norm form is not half-integral: invalid order basis");
                t[k][l] = to_ll_checked(rat_num(v));
            }
        gram2_ = t;
    }
    return *gram2_;
}

OrderReport Order::verify() const {
    OrderReport rep;
    auto fail = [&rep](const std::string& msg) {
        rep.ok = false;
        rep.violations.push_back(msg);
    };

    // 1 must lie in the lattice.
    if (!from_standard(Quat::one())) fail("1 is not in the lattice");

    for (int k = 0; k < 4; ++k) {
        const Quat& ek = basis_.e[k];
        if (!is_integer(q_norm(alg_, ek)))
            fail("reduced norm of basis vector e" + std::to_string(k) + " is not an integer: " +
                 to_string(q_norm(alg_, ek)));
        if (!is_integer(q_trace(ek)))
            fail("reduced trace of basis vector e" + std::to_string(k) + " is not an integer: " +
                 to_string(q_trace(ek)));
        for (int l = 0; l < 4; ++l) {
            Quat p = q_mul(alg_, ek, basis_.e[l]);
            if (!from_standard(p))
                fail("product e" + std::to_string(k) + "*e" + std::to_string(l) +
                     " has non-integer coordinates in the basis");
        }
    }
    return rep;
}

std::string coords_to_string(const OrderElement& el) {
    std::ostringstream os;
    os << "[" << el.x[0] << "," << el.x[1] << "," << el.x[2] << "," << el.x[3] << "]";
    return os.str();
}

}  // namespace supnorm
