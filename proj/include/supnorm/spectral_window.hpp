#pragma once

#include <vector>

#include "supnorm/lattice_count.hpp"

namespace supnorm {

// Test function h with h(0)=1, h >= 0 and Fourier transform supported in [-1/2,1/2],
// built from the self-convolution of the bump chi(x) = exp(-1/(1-(4x)^2)) on (-1/4,1/4):
// h(xi) = (chi_hat(xi))^2 / chi_hat(0)^2.
class WindowFunction {
  public:
    // nodes: quadrature nodes over the support of chi; doubled until h changes by
    // <= 1e-8 on a probe grid.  Throws std::runtime_error on non-convergence.
    explicit WindowFunction(int nodes = 256);

    double chi(double x) const;
    double chi_hat(double xi) const;
    double h(double xi) const;
    // psi = chi * chi by direct quadrature (support (-1/2,1/2))
    double psi(double t) const;
    double normalization() const { return norm_; }
    int nodes() const { return panels_ * 16; }
    // change between the last two node-doubling rounds
    double stability() const { return stability_; }

    // (1/2pi) int_{-X}^{X} h(xi) cos(t xi) dxi; approximates hhat(t) = psi(t)/int(psi).
    double hhat_reconstructed(double t, double cutoff = 1000.0) const;

  private:
    int panels_;
    double norm_;  // chi_hat(0)^2
    double chi_hat_with_panels(double xi, int panels) const;
    double stability_;
};

// Piecewise kernel envelope in log space: returns log K(d) and a zero flag.
//   d <= 1:             max(lambda*eps + e^{C/eps}, lambda^{1/2} e^{C/eps})
//   1 < d <= eps^-1:    (lambda/d)^{1/2} e^{C/eps}
//   d > eps^-1:         0
struct EnvelopeValue {
    bool zero = false;
    double log_value = 0;
};

EnvelopeValue kernel_envelope(double d, double log_lambda, double eps, double C);

struct PlanInput {
    double log_lambda = 0;
    std::vector<long long> primes;
    double C = 1.0;
    // log A_L override; when negative-infinite/unset the singular-case default
    // prod_p sum_{n<=L}(n+1)^2 is used.
    bool have_a_l = false;
    double log_a_l = 0;
};

struct PlanOutput {
    int L = 0;
    double c = 0;
    double eps = 0;
    double log_a_l = 0;
    double log_term1 = 0;       // (lambda/log lambda) * A_L
    double log_term2 = 0;       // lambda^{1/2+(C+1)/c} L^{|P|} A_L prod p^{7L}
    double log_bound = 0;       // lambda/(log lambda)^{|P|+1}
    bool dominance = false;     // term2 <= term1
    double saving_exponent = 0; // (|P|+1)/2
};

// Reproduces the parameter choices L = log(lambda)/(100 log prod p), c = 4C+4,
// eps = c/log(lambda) and the resulting two-term comparison.
// Throws std::invalid_argument when lambda is too small for the prime set (L < 1).
PlanOutput plan(const PlanInput& input);

struct SplitTerms {
    long long near_count = 0;  // M(N, delta; z)
    long long far_count = 0;   // M(N, lambda^{1/c}; z)
    double log_near = 0;       // -inf when the count is 0
    double log_far = 0;
};

// Evaluates the near/far splitting of sum_{gamma in R(N)} K(gamma z, z) with actual
// counts: near = (lambda/log lambda) M(N,delta;z),
// far = (lambda/log(1+2 delta))^{1/2} lambda^{C/c} M(N,lambda^{1/c};z).
SplitTerms splitting_estimate(const Order& order, long long N, double delta,
                              double log_lambda, double C, const PlanePoint& z);

}  // namespace supnorm
