#pragma once

#include <vector>

#include "supnorm/rational.hpp"

namespace supnorm {

enum class SatakeKind { Tempered, Nontempered, Singular };

// Parametrization of lambda(p) = alpha + alpha^-1: alpha = e^{i theta}, +-e^{theta},
// or +-1.  Eigenvalues are real in all three cases.
struct SatakeParameter {
    SatakeKind kind = SatakeKind::Singular;
    double theta = 0;
    int sign = 1;

    // Reclassified to singular when theta is within 1e-8 of {0, pi}; the sin-ratio
    // closed form is unstable there.
    static SatakeParameter tempered(double theta);
    static SatakeParameter nontempered(double theta, int sign = 1);
    static SatakeParameter singular(int sign = 1);
};

double lambda_closed_form(const SatakeParameter& par, int n);

class EigenvalueSequence {
  public:
    EigenvalueSequence(long long p, SatakeParameter par, int max_n);

    long long p() const { return p_; }
    const SatakeParameter& parameter() const { return par_; }
    int max_n() const { return static_cast<int>(cache_.size()) - 1; }

    double lambda(int n) const;
    // Value from the three-term recurrence lambda(p^{n+1}) = lambda(p^n)lambda(p) - lambda(p^{n-1}).
    double recurrence_value(int n) const;

  private:
    long long p_;
    SatakeParameter par_;
    std::vector<double> cache_;
};

// lambda(prod p^{v_p}) = prod lambda_p(p^{v_p}); valuations aligned with seqs.
double lambda_multiplicative(const std::vector<EigenvalueSequence>& seqs,
                             const std::vector<int>& valuations);

struct AmplifierSupport {
    std::vector<long long> primes;
    int L = 1;
};

// M(P,L) = { prod p^{k_p} : 1 <= k_p <= L }, sorted.
std::vector<BigInt> support_moduli(const AmplifierSupport& support);

struct SweepRow {
    double theta;
    double ratio;       // S(theta,L)/L
    bool wide_regime;   // |alpha^2 - 1| > 1/L
};

struct SweepResult {
    double min_ratio = 0;
    double argmin_theta = 0;
    std::vector<SweepRow> rows;
};

// S(theta,L) = sum_{n<=L} lambda(p^n)^2 over a theta grid in (0,pi).
SweepResult sum_lower_bound_sweep(long long p, int L, double grid_step);

struct NontemperedRow {
    int n;
    double partial_sum;  // sum_{k<=n} sigma(p^{2k})
    double closed;       // p^n sinh((2n+1)theta)/sinh(theta)
    double rel_residual;
    double lambda_n;     // lambda(p^n)
};

std::vector<NontemperedRow> nontempered_check(long long p, double theta, int n_max);

struct AmplifierValue {
    double a_l;            // prod_p sum_{n<=L} lambda(p^n)^2
    double kl_eigenvalue;  // a_l^2
};

AmplifierValue amplifier_value(const std::vector<EigenvalueSequence>& seqs, int L);

struct ExpansionTerm {
    BigInt modulus;               // M = mn/d^2
    std::vector<int> valuations;  // per prime of the support
    double coefficient;
};

struct AmplifierExpansion {
    std::vector<ExpansionTerm> terms;  // sorted by valuation vector
};

// Expansion of K_L = sum_{m,n in M(P,L)} lambda(m)lambda(n) sum_{d|(m,n)} T(mn/d^2),
// coefficients aggregated per modulus.
AmplifierExpansion expand_kl(const std::vector<EigenvalueSequence>& seqs, int L);

// sum over terms of coefficient * lambda(modulus); equals A_L^2.
double contract_expansion(const AmplifierExpansion& exp,
                          const std::vector<EigenvalueSequence>& seqs);

struct TechnicalSumResult {
    double lhs;
    double rhs;
    double ratio;
};

// LHS = sum_{m,n in M(P,L)} |lambda(m)lambda(n)| sum_{d|(m,n)} (sqrt(mn)/d)^x,
// evaluated directly from the definition; RHS per the x<0 / x>=0 branch.
TechnicalSumResult technical_sum(const std::vector<EigenvalueSequence>& seqs, int L, double x);

// (sum_m alpha_m lambda(p^m))^2 / sum_m alpha_m^2 for m = 1..L.
double efficiency_ratio(const std::vector<double>& weights, const EigenvalueSequence& seq);

}  // namespace supnorm
