#include "supnorm/hecke_tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace supnorm {

namespace {

bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

std::int64_t TruncatedTree::expected_vertex_count(long long p, int radius) {
    std::int64_t pk = 1;
    for (int i = 0; i < radius; ++i) pk *= p;
    return 1 + (p + 1) * (pk - 1) / (p - 1);
}

TruncatedTree::TruncatedTree(long long p, int radius) : p_(p), radius_(radius) {
    if (!is_prime(p)) throw std::invalid_argument("tree degree parameter must be prime");
    if (radius < 1) throw std::invalid_argument("tree radius must be >= 1");

    std::int64_t total = expected_vertex_count(p, radius);
    parent_.reserve(total);
    depth_.reserve(total);
    parent_.push_back(-1);
    depth_.push_back(0);

    std::int64_t level_begin = 0, level_end = 1;  // index range of the previous level
    std::int64_t next = 1;
    child_begin_.assign(1, 0);
    child_count_.assign(1, 0);
    for (int d = 1; d <= radius; ++d) {
        std::int64_t nc = (d == 1) ? p + 1 : p;
        for (std::int64_t v = level_begin; v < level_end; ++v) {
            child_begin_[v] = next;
            child_count_[v] = nc;
            for (std::int64_t c = 0; c < nc; ++c) {
                parent_.push_back(v);
                depth_.push_back(d);
                child_begin_.push_back(0);
                child_count_.push_back(0);
                ++next;
            }
        }
        level_begin = level_end;
        level_end = next;
    }
}

void TruncatedTree::collect_descendants(std::int64_t v, int depth_left,
                                        std::vector<std::int64_t>& out) const {
    if (depth_left == 0) {
        out.push_back(v);
        return;
    }
    std::int64_t begin = child_begin_[v];
    for (std::int64_t c = 0; c < child_count_[v]; ++c)
        collect_descendants(begin + c, depth_left - 1, out);
}

std::vector<std::int64_t> TruncatedTree::sphere(std::int64_t v, int k) const {
    std::vector<std::int64_t> out;
    if (k == 0) {
        out.push_back(v);
        return out;
    }
    collect_descendants(v, k, out);
    std::int64_t cur = v;
    for (int j = 1; j <= k; ++j) {
        std::int64_t par = parent_[cur];
        if (par < 0) break;
        if (j == k) {
            out.push_back(par);
        } else {
            std::int64_t begin = child_begin_[par];
            for (std::int64_t c = 0; c < child_count_[par]; ++c) {
                std::int64_t ch = begin + c;
                if (ch == cur) continue;
                collect_descendants(ch, k - j - 1, out);
            }
        }
        cur = par;
    }
    return out;
}

SphereOperator sphere_operator(const TruncatedTree& tree, int k) {
    if (k > tree.radius()) throw std::invalid_argument("sphere radius exceeds tree radius");
    SphereOperator op;
    op.k = k;
    op.rows.resize(tree.vertex_count());
    for (std::int64_t v = 0; v < tree.vertex_count(); ++v) {
        auto row = tree.sphere(v, k);
        std::sort(row.begin(), row.end());
        op.rows[v] = std::move(row);
    }
    return op;
}

std::vector<std::int64_t> u_row(const TruncatedTree& tree, std::int64_t u, int n) {
    std::vector<std::int64_t> out;
    for (int k = n % 2; k <= n; k += 2) {
        auto s = tree.sphere(u, k);
        out.insert(out.end(), s.begin(), s.end());
    }
    return out;
}

long long sigma_sum(long long p, int n) {
    long long s = 0, pk = 1;
    for (int i = 0; i <= n; ++i) {
        s += pk;
        pk *= p;
    }
    return s;
}

HeckeRelationReport verify_hecke_relation(const TruncatedTree& tree, int ord_m, int ord_n) {
    if (ord_m < 0 || ord_n < 0) throw std::invalid_argument("negative p-power order");
    if (ord_m + ord_n > tree.radius())
        throw std::invalid_argument("tree radius too small for the requested operator orders");

    const long long p = tree.p();
    const int reach = ord_m + ord_n;
    HeckeRelationReport rep;

    std::vector<long long> lhs(tree.vertex_count(), 0), rhs(tree.vertex_count(), 0);
    std::vector<std::int64_t> touched;

    for (std::int64_t u = 0; u < tree.vertex_count(); ++u) {
        if (tree.depth(u) > tree.radius() - reach) continue;
        touched.clear();

        for (std::int64_t v : u_row(tree, u, ord_m))
            for (std::int64_t w : u_row(tree, v, ord_n)) {
                if (lhs[w] == 0 && rhs[w] == 0) touched.push_back(w);
                lhs[w] += 1;
            }

        long long pi = 1;
        for (int i = 0; i <= std::min(ord_m, ord_n); ++i) {
            for (std::int64_t w : u_row(tree, u, ord_m + ord_n - 2 * i)) {
                if (lhs[w] == 0 && rhs[w] == 0) touched.push_back(w);
                rhs[w] += pi;
            }
            pi *= p;
        }

        for (std::int64_t w : touched) {
            if (lhs[w] != rhs[w] && rep.ok) {
                rep.ok = false;
                rep.row = u;
                rep.col = w;
                rep.lhs = lhs[w];
                rep.rhs = rhs[w];
                rep.message = "mismatch at row " + std::to_string(u) + ", col " +
                              std::to_string(w);
            }
            lhs[w] = 0;
            rhs[w] = 0;
        }
        ++rep.rows_checked;
        if (!rep.ok) break;
    }
    return rep;
}

std::vector<double> recurrence_residuals(const std::vector<double>& lambda) {
    std::vector<double> res;
    if (lambda.size() < 3) return res;
    for (std::size_t n = 1; n + 1 < lambda.size(); ++n)
        res.push_back(std::fabs(lambda[n + 1] - lambda[n] * lambda[1] + lambda[n - 1]));
    return res;
}

}  // namespace supnorm
