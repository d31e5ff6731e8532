#include "supnorm/spectral_window.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace supnorm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 16-point Gauss-Legendre nodes/weights on [-1,1].
constexpr int kGL = 16;
constexpr double kGLNode[kGL] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
constexpr double kGLWeight[kGL] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

double log_sum_exp(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

double WindowFunction::chi(double x) const {
    double s = 4.0 * x;
    if (s * s >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
}

double WindowFunction::chi_hat_with_panels(double xi, int panels) const {
    // 2 * int_0^{1/4} chi(x) cos(xi x) dx
    double total = 0;
    double width = 0.25 / panels;
    for (int p = 0; p < panels; ++p) {
        double mid = (p + 0.5) * width;
        double half = 0.5 * width;
        double acc = 0;
        for (int g = 0; g < kGL; ++g) {
            double x = mid + half * kGLNode[g];
            acc += kGLWeight[g] * chi(x) * std::cos(xi * x);
        }
        total += acc * half;
    }
    return 2.0 * total;
}

WindowFunction::WindowFunction(int nodes) {
    if (nodes < 256) throw std::invalid_argument("window quadrature requires >= 256 nodes");
    panels_ = (nodes + kGL - 1) / kGL;

    // Double node count until h stabilizes on a probe grid.
    const double probes[] = {0.0, 0.7, 3.3, 11.0, 29.5, 47.0};
    stability_ = kInf;
    for (int round = 0; round < 12; ++round) {
        double n0 = chi_hat_with_panels(0.0, panels_);
        double n1 = chi_hat_with_panels(0.0, 2 * panels_);
        double diff = 0;
        for (double xi : probes) {
            double a = chi_hat_with_panels(xi, panels_) / n0;
            double b = chi_hat_with_panels(xi, 2 * panels_) / n1;
            diff = std::max(diff, std::fabs(a * a - b * b));
        }
        stability_ = diff;
        if (diff <= 1e-8) break;
        panels_ *= 2;
    }
    if (stability_ > 1e-8)
        throw std::runtime_error("window quadrature did not converge under node doubling");
    double n = chi_hat_with_panels(0.0, panels_);
    norm_ = n * n;
}

double WindowFunction::chi_hat(double xi) const { return chi_hat_with_panels(xi, panels_); }

double WindowFunction::h(double xi) const {
    double v = chi_hat(xi);
    return v * v / norm_;
}

double WindowFunction::psi(double t) const {
    // int chi(y) chi(t-y) dy over the overlap of (-1/4,1/4) and (t-1/4,t+1/4)
    double lo = std::max(-0.25, t - 0.25);
    double hi = std::min(0.25, t + 0.25);
    if (lo >= hi) return 0.0;
    double total = 0;
    int panels = panels_;
    double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        double mid = lo + (p + 0.5) * width;
        double half = 0.5 * width;
        double acc = 0;
        for (int g = 0; g < kGL; ++g) {
            double y = mid + half * kGLNode[g];
            acc += kGLWeight[g] * chi(y) * chi(t - y);
        }
        total += acc * half;
    }
    return total;
}

double WindowFunction::hhat_reconstructed(double t, double cutoff) const {
    // (1/pi) int_0^X h(xi) cos(t xi) dxi, using panels of length 1/2
    int panels = static_cast<int>(std::ceil(cutoff / 0.5));
    double width = cutoff / panels;
    double total = 0;
    for (int p = 0; p < panels; ++p) {
        double mid = (p + 0.5) * width;
        double half = 0.5 * width;
        double acc = 0;
        for (int g = 0; g < kGL; ++g) {
            double xi = mid + half * kGLNode[g];
            acc += kGLWeight[g] * h(xi) * std::cos(t * xi);
        }
        total += acc * half;
    }
    return total / std::numbers::pi;
}

EnvelopeValue kernel_envelope(double d, double log_lambda, double eps, double C) {
    if (d < 0) throw std::invalid_argument("distance must be nonnegative");
    if (eps < std::exp(-log_lambda) || eps > 1.0)
        throw std::invalid_argument("envelope requires lambda^-1 <= eps <= 1");
    if (d > 1.0 / eps) return {true, -kInf};
    double ce = C / eps;
    if (d <= 1.0) {
        // both positive branches evaluated at d=1, maximum taken
        double b1 = log_sum_exp(log_lambda + std::log(eps), ce);
        double b2 = 0.5 * log_lambda + ce;
        return {false, std::max(b1, b2)};
    }
    return {false, 0.5 * (log_lambda - std::log(d)) + ce};
}

PlanOutput plan(const PlanInput& input) {
    if (input.primes.empty()) throw std::invalid_argument("plan requires a nonempty prime set");
    if (input.log_lambda <= 1.0) throw std::invalid_argument("plan requires log(lambda) > 1");
    if (input.C <= 0) throw std::invalid_argument("plan requires C > 0");

    double log_prod = 0;
    for (long long p : input.primes) log_prod += std::log(static_cast<double>(p));

    PlanOutput out;
    // guard against floor(9.999...) when the quotient is an exact integer
    out.L = static_cast<int>(std::floor(input.log_lambda / (100.0 * log_prod) + 1e-9));
    if (out.L < 1)
        throw std::invalid_argument("lambda too small for the prime set: L < 1");
    out.c = 4.0 * input.C + 4.0;
    out.eps = out.c / input.log_lambda;

    const int np = static_cast<int>(input.primes.size());
    if (input.have_a_l) {
        out.log_a_l = input.log_a_l;
    } else {
        // singular-case default: per prime sum_{n<=L} (n+1)^2
        double s = 0;
        for (int n = 1; n <= out.L; ++n) s += static_cast<double>(n + 1) * (n + 1);
        out.log_a_l = np * std::log(s);
    }

    double ll = input.log_lambda;
    out.log_term1 = ll - std::log(ll) + out.log_a_l;
    out.log_term2 = (0.5 + (input.C + 1.0) / out.c) * ll + np * std::log(static_cast<double>(out.L)) +
                    out.log_a_l + 7.0 * out.L * log_prod;
    out.log_bound = ll - (np + 1) * std::log(ll);
    out.dominance = out.log_term2 <= out.log_term1;
    out.saving_exponent = (np + 1) / 2.0;
    return out;
}

SplitTerms splitting_estimate(const Order& order, long long N, double delta,
                              double log_lambda, double C, const PlanePoint& z) {
    if (delta <= 0) throw std::invalid_argument("splitting requires delta > 0");
    double c = 4.0 * C + 4.0;
    double far_radius = std::exp(log_lambda / c);
    if (!std::isfinite(far_radius) || far_radius > 1e8)
        throw std::invalid_argument("far radius lambda^{1/c} too large for enumeration");

    SplitTerms out;
    out.near_count = count_ball(order, {N, delta, z});
    out.far_count = count_ball(order, {N, far_radius, z});
    double ll = log_lambda;
    out.log_near = out.near_count > 0
                       ? ll - std::log(ll) + std::log(static_cast<double>(out.near_count))
                       : -kInf;
    out.log_far = out.far_count > 0
                      ? 0.5 * (ll - std::log(std::log1p(2.0 * delta))) + (C / c) * ll +
                            std::log(static_cast<double>(out.far_count))
                      : -kInf;
    return out;
}

}  // namespace supnorm
