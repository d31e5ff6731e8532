#include "supnorm/amplifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

namespace supnorm {

namespace {
constexpr double kSingularWindow = 1e-8;
}

SatakeParameter SatakeParameter::tempered(double theta) {
    if (theta < 0 || theta > std::numbers::pi)
        throw std::invalid_argument("tempered parameter requires theta in (0,pi)");
    if (theta <= kSingularWindow) return singular(+1);
    if (std::numbers::pi - theta <= kSingularWindow) return singular(-1);
    SatakeParameter par;
    par.kind = SatakeKind::Tempered;
    par.theta = theta;
    return par;
}

SatakeParameter SatakeParameter::nontempered(double theta, int sign) {
    if (theta <= 0) throw std::invalid_argument("nontempered parameter requires theta > 0");
    SatakeParameter par;
    par.kind = SatakeKind::Nontempered;
    par.theta = theta;
    par.sign = sign;
    return par;
}

SatakeParameter SatakeParameter::singular(int sign) {
    SatakeParameter par;
    par.kind = SatakeKind::Singular;
    par.sign = sign;
    return par;
}

double lambda_closed_form(const SatakeParameter& par, int n) {
    switch (par.kind) {
        case SatakeKind::Tempered:
            return std::sin((n + 1) * par.theta) / std::sin(par.theta);
        case SatakeKind::Nontempered: {
            double v = std::sinh((n + 1) * par.theta) / std::sinh(par.theta);
            return (par.sign < 0 && n % 2 == 1) ? -v : v;
        }
        case SatakeKind::Singular: {
            double v = n + 1;
            return (par.sign < 0 && n % 2 == 1) ? -v : v;
        }
    }
    return 0;
}

EigenvalueSequence::EigenvalueSequence(long long p, SatakeParameter par, int max_n)
    : p_(p), par_(par) {
    cache_.resize(max_n + 1);
    for (int n = 0; n <= max_n; ++n) cache_[n] = lambda_closed_form(par_, n);
}

double EigenvalueSequence::lambda(int n) const {
    if (n < 0) throw std::invalid_argument("lambda(p^n) requires n >= 0");
    if (n < static_cast<int>(cache_.size())) return cache_[n];
    return lambda_closed_form(par_, n);
}

double EigenvalueSequence::recurrence_value(int n) const {
    if (n <= 1) return lambda(n);
    double prev = 1.0, cur = lambda(1);
    for (int k = 1; k < n; ++k) {
        double next = cur * lambda(1) - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double lambda_multiplicative(const std::vector<EigenvalueSequence>& seqs,
                             const std::vector<int>& valuations) {
    if (seqs.size() != valuations.size())
        throw std::invalid_argument("one valuation per amplifier prime required");
    double v = 1.0;
    for (std::size_t i = 0; i < seqs.size(); ++i) v *= seqs[i].lambda(valuations[i]);
    return v;
}

std::vector<BigInt> support_moduli(const AmplifierSupport& support) {
    if (support.L < 1) throw std::invalid_argument("amplifier length must be >= 1");
    std::vector<BigInt> out{BigInt(1)};
    for (long long p : support.primes) {
        std::vector<BigInt> next;
        BigInt pk = 1;
        for (int k = 1; k <= support.L; ++k) {
            pk *= p;
            for (const BigInt& m : out) next.push_back(m * pk);
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SweepResult sum_lower_bound_sweep(long long p, int L, double grid_step) {
    (void)p;  // tempered eigenvalues do not involve p
    if (L < 1 || grid_step <= 0) throw std::invalid_argument("invalid sweep parameters");
    SweepResult res;
    res.min_ratio = std::numeric_limits<double>::infinity();
    for (double theta = grid_step; theta < std::numbers::pi; theta += grid_step) {
        double s = 0;
        double sin_t = std::sin(theta);
        for (int n = 1; n <= L; ++n) {
            double lam = std::sin((n + 1) * theta) / sin_t;
            s += lam * lam;
        }
        double ratio = s / L;
        // |alpha^2-1| = 2|sin theta|; the proof splits at scale 1/L
        res.rows.push_back({theta, ratio, 2.0 * std::fabs(sin_t) > 1.0 / L});
        if (ratio < res.min_ratio) {
            res.min_ratio = ratio;
            res.argmin_theta = theta;
        }
    }
    return res;
}

std::vector<NontemperedRow> nontempered_check(long long p, double theta, int n_max) {
    if (theta <= 0) throw std::invalid_argument("nontempered check requires theta > 0");
    SatakeParameter par = SatakeParameter::nontempered(theta, +1);
    std::vector<NontemperedRow> rows;
    double sinh_t = std::sinh(theta);
    double partial = 0;
    for (int n = 0; n <= n_max; ++n) {
        // sigma(p^m) is the eigenvalue of p^{m/2}T(p^m) - p^{m/2-1}T(p^{m-2})
        double pn = std::pow(static_cast<double>(p), n);
        double sigma;
        if (n == 0) {
            sigma = 1.0;
        } else {
            sigma = pn * lambda_closed_form(par, 2 * n) -
                    (pn / p) * lambda_closed_form(par, 2 * n - 2);
        }
        partial += sigma;
        double closed = pn * std::sinh((2 * n + 1) * theta) / sinh_t;
        rows.push_back({n, partial, closed, std::fabs(partial - closed) / closed,
                        lambda_closed_form(par, n)});
    }
    return rows;
}

AmplifierValue amplifier_value(const std::vector<EigenvalueSequence>& seqs, int L) {
    double a_l = 1.0;
    for (const auto& seq : seqs) {
        double s = 0;
        for (int n = 1; n <= L; ++n) {
            double lam = seq.lambda(n);
            s += lam * lam;
        }
        a_l *= s;
    }
    return {a_l, a_l * a_l};
}

namespace {

// Iterate all valuation vectors with entries in [lo, hi]; f receives each vector.
template <typename F>
void for_each_valuation(int dims, int lo, int hi, std::vector<int>& v, int pos, F&& f) {
    if (pos == dims) {
        f(v);
        return;
    }
    for (int k = lo; k <= hi; ++k) {
        v[pos] = k;
        for_each_valuation(dims, lo, hi, v, pos + 1, f);
    }
}

}  // namespace

AmplifierExpansion expand_kl(const std::vector<EigenvalueSequence>& seqs, int L) {
    if (seqs.empty()) throw std::invalid_argument("amplifier requires at least one prime");
    const int np = static_cast<int>(seqs.size());

    std::map<std::vector<int>, double> coeff;
    std::vector<int> r(np), s(np), m(np);
    for_each_valuation(np, 1, L, r, 0, [&](const std::vector<int>& rv) {
        double lam_m = lambda_multiplicative(seqs, rv);
        for_each_valuation(np, 1, L, s, 0, [&](const std::vector<int>& sv) {
            double w = lam_m * lambda_multiplicative(seqs, sv);
            // divisors d of (m,n): valuation i_p in [0, min(r_p, s_p)]
            std::vector<int> iv(np, 0);
            for (;;) {
                for (int k = 0; k < np; ++k) m[k] = rv[k] + sv[k] - 2 * iv[k];
                coeff[m] += w;
                int k = 0;
                while (k < np && iv[k] == std::min(rv[k], sv[k])) iv[k++] = 0;
                if (k == np) break;
                iv[k]++;
            }
        });
    });

    AmplifierExpansion exp;
    for (auto& [val, c] : coeff) {
        BigInt modulus = 1;
        for (int k = 0; k < np; ++k) modulus *= boost::multiprecision::pow(BigInt(seqs[k].p()), val[k]);
        exp.terms.push_back({modulus, val, c});
    }
    return exp;
}

double contract_expansion(const AmplifierExpansion& exp,
                          const std::vector<EigenvalueSequence>& seqs) {
    double total = 0;
    for (const auto& term : exp.terms)
        total += term.coefficient * lambda_multiplicative(seqs, term.valuations);
    return total;
}

TechnicalSumResult technical_sum(const std::vector<EigenvalueSequence>& seqs, int L, double x) {
    if (seqs.empty()) throw std::invalid_argument("technical sum requires at least one prime");
    const int np = static_cast<int>(seqs.size());

    double lhs = 0;
    std::vector<int> r(np), s(np);
    for_each_valuation(np, 1, L, r, 0, [&](const std::vector<int>& rv) {
        double lam_m = std::fabs(lambda_multiplicative(seqs, rv));
        for_each_valuation(np, 1, L, s, 0, [&](const std::vector<int>& sv) {
            double w = lam_m * std::fabs(lambda_multiplicative(seqs, sv));
            // sum over d|(m,n) of (sqrt(mn)/d)^x; factors over the primes
            double dsum = 1.0;
            for (int k = 0; k < np; ++k) {
                double lp = std::log(static_cast<double>(seqs[k].p()));
                double f = 0;
                for (int i = 0; i <= std::min(rv[k], sv[k]); ++i)
                    f += std::exp(x * lp * (0.5 * (rv[k] + sv[k]) - i));
                dsum *= f;
            }
            lhs += w * dsum;
        });
    });

    double rhs = 1.0;
    for (const auto& seq : seqs) {
        double sum_sq = 0;
        for (int n = 1; n <= L; ++n) {
            double lam = seq.lambda(n);
            sum_sq += lam * lam;
        }
        double f = sum_sq;
        if (x >= 0) f *= std::pow(static_cast<double>(seq.p()), x * L) * L;
        rhs *= f;
    }
    return {lhs, rhs, lhs / rhs};
}

double efficiency_ratio(const std::vector<double>& weights, const EigenvalueSequence& seq) {
    double dot = 0, norm2 = 0;
    for (std::size_t m = 0; m < weights.size(); ++m) {
        dot += weights[m] * seq.lambda(static_cast<int>(m) + 1);
        norm2 += weights[m] * weights[m];
    }
    if (norm2 == 0) throw std::invalid_argument("efficiency ratio requires a nonzero weight vector");
    return dot * dot / norm2;
}

}  // namespace supnorm
