#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace supnorm {

// Truncated (p+1)-regular tree of depth R, vertices in BFS order so that each
// vertex's children occupy a contiguous index range.
class TruncatedTree {
  public:
    TruncatedTree(long long p, int radius);

    long long p() const { return p_; }
    int radius() const { return radius_; }
    std::int64_t vertex_count() const { return static_cast<std::int64_t>(parent_.size()); }

    std::int64_t parent(std::int64_t v) const { return parent_[v]; }
    int depth(std::int64_t v) const { return depth_[v]; }
    std::int64_t child_begin(std::int64_t v) const { return child_begin_[v]; }
    std::int64_t child_count(std::int64_t v) const { return child_count_[v]; }

    // Vertices at tree distance exactly k from v.  Complete only when depth(v)+? stays
    // inside the truncation; valid whenever depth(v) <= radius - k.
    std::vector<std::int64_t> sphere(std::int64_t v, int k) const;

    // 1 + (p+1)(p^R - 1)/(p - 1)
    static std::int64_t expected_vertex_count(long long p, int radius);

  private:
    void collect_descendants(std::int64_t v, int depth_left,
                             std::vector<std::int64_t>& out) const;

    long long p_;
    int radius_;
    std::vector<std::int64_t> parent_;
    std::vector<std::int64_t> child_begin_;
    std::vector<std::int64_t> child_count_;
    std::vector<int> depth_;
};

// Sphere operator S_k as an explicit sparse matrix (row -> sorted vertex list).
// Materialized only for small trees; verify_hecke_relation works row by row instead.
struct SphereOperator {
    int k = 0;
    std::vector<std::vector<std::int64_t>> rows;
};

SphereOperator sphere_operator(const TruncatedTree& tree, int k);

// Row u of U(n) = sum_{k <= n, k = n mod 2} S_k as a multiset of vertices (all
// multiplicities are 1 since the S_k are disjoint).
std::vector<std::int64_t> u_row(const TruncatedTree& tree, std::int64_t u, int n);

// sigma(p^n) = 1 + p + ... + p^n, the interior row sum of U(n).
long long sigma_sum(long long p, int n);

struct HeckeRelationReport {
    bool ok = true;
    std::int64_t rows_checked = 0;
    // first mismatch, if any
    std::int64_t row = -1;
    std::int64_t col = -1;
    long long lhs = 0;
    long long rhs = 0;
    std::string message;
};

// Exact integer identity U(a)U(b) = sum_{i=0}^{min(a,b)} p^i U(a+b-2i) on all rows of
// depth <= R - a - b.  This is the Hecke relation T(m)T(n) = sum_{d|(m,n)} T(mn/d^2)
// rescaled so no square roots of p appear.
HeckeRelationReport verify_hecke_relation(const TruncatedTree& tree, int ord_m, int ord_n);

// Residuals |lambda(p^{n+1}) - lambda(p^n)lambda(p) + lambda(p^{n-1})| for a supplied
// eigenvalue sequence lambda(p^0..p^n).
std::vector<double> recurrence_residuals(const std::vector<double>& lambda);

}  // namespace supnorm
