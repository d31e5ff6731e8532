#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "supnorm/mat2.hpp"
#include "supnorm/rational.hpp"

namespace supnorm {

// Structure constants of the quaternion algebra B = (a,b): i^2 = a, j^2 = b, ij = -ji.
// At least one of a, b must be positive so that B splits over the reals.
struct AlgebraSpec {
    Rat a;
    Rat b;

    bool splits_at_infinity() const { return a > 0 || b > 0; }
};

// Quaternion with rational coordinates in the standard basis {1, i, j, ij}.
struct Quat {
    std::array<Rat, 4> c{};

    static Quat one() {
        Quat q;
        q.c[0] = Rat(1);
        return q;
    }
    static Quat unit(int k) {
        Quat q;
        q.c[k] = Rat(1);
        return q;
    }
};

Quat q_add(const Quat& x, const Quat& y);
Quat q_scale(const Rat& s, const Quat& x);
Quat q_mul(const AlgebraSpec& alg, const Quat& x, const Quat& y);
Quat q_conj(const Quat& x);
Rat q_norm(const AlgebraSpec& alg, const Quat& x);
Rat q_trace(const Quat& x);

// Real splitting of the algebra into 2x2 matrices (double precision, geometry only).
Mat2 embed_standard(const AlgebraSpec& alg, const Quat& x);

// Four basis vectors of a rank-4 lattice in B, given in standard-basis coordinates.
struct OrderBasis {
    std::array<Quat, 4> e;
};

// Integer coordinates with respect to the active OrderBasis.
struct OrderElement {
    std::array<long long, 4> x{};

    bool operator==(const OrderElement&) const = default;
    bool operator<(const OrderElement& o) const { return x < o.x; }
};

struct OrderReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// A lattice in B claimed to be an order.  Construction only requires the basis to be
// nonsingular and the algebra to split at infinity; order axioms are checked by verify().
class Order {
  public:
    Order(AlgebraSpec alg, OrderBasis basis);

    const AlgebraSpec& algebra() const { return alg_; }
    const OrderBasis& basis() const { return basis_; }

    Quat to_standard(const OrderElement& el) const;
    Quat coords_to_standard(const std::array<Rat, 4>& coords) const;
    // Basis coordinates of a standard-coordinate quaternion.
    std::array<Rat, 4> standard_to_coords(const Quat& q) const;
    // nullopt when q has non-integer coordinates in the basis.
    std::optional<OrderElement> from_standard(const Quat& q) const;

    // Exact product in basis coordinates.  Throws std::domain_error when the basis is
    // not multiplicatively closed (non-integer result).
    OrderElement multiply(const OrderElement& x, const OrderElement& y) const;
    OrderElement conjugate(const OrderElement& x) const;
    BigInt reduced_norm(const OrderElement& x) const;
    BigInt reduced_trace(const OrderElement& x) const;

    Mat2 embed(const OrderElement& x) const;
    const std::array<Mat2, 4>& basis_matrices() const { return tau_; }

    // T with x^T T x = 2*N(x) in basis coordinates.  Integral for a valid order;
    // throws std::domain_error otherwise.
    const std::array<std::array<long long, 4>, 4>& norm_gram2() const;

    // Checks all order axioms: closure of products, integral norms/traces, 1 in the lattice.
    OrderReport verify() const;

  private:
    AlgebraSpec alg_;
    OrderBasis basis_;
    std::array<std::array<Rat, 4>, 4> inv_;  // inverse of the coordinate matrix
    std::array<Mat2, 4> tau_;
    mutable std::optional<std::array<std::array<long long, 4>, 4>> gram2_;
};

std::string coords_to_string(const OrderElement& el);

}  // namespace supnorm
