#pragma once

#include <cstdint>
#include <vector>

#include "ran/graph.hpp"
#include "ran/rng.hpp"

namespace ran {
namespace theory {

// mu_d = (d+1) H(d+1) and sigma_d^2 = sum (1-p_i)/p_i^2, p_i = i/(d+1),
// both assembled in exact rational arithmetic before the float conversion.
double mu_exact(int d);
double sigma2_exact(int d);

// Coupon-collector time Y_d: number of uniform draws from {1..d+1} until all
// symbols appear. pmf[t] = P(Y_d = t) for t = 0..t_max (zero below d+1).
struct CouponLaw {
    int d;
    std::vector<double> pmf;
    double mu;
    double sigma2;

    double cdf(std::size_t t) const;                 // P(Y <= t)
    double truncated_pmf(std::size_t t, std::size_t k) const;  // P(Y ^ k = t)
    double tail_bound() const;                        // >= P(Y > t_max), geometric union bound
};
CouponLaw coupon_pmf(int d, std::size_t t_max);

// log E[e^{lambda Y_d}]; defined for lambda < log((d+1)/d).
double log_mgf(int d, double lambda);
double log_mgf_mean(int d, double lambda);  // d/dlambda log_mgf

// Legendre transform I_d(x) = sup_lambda { lambda x - log_mgf } and its
// conjugate argument lambda*(x) = I_d'(x); domain x in (d+1, infinity).
double rate_function(int d, double x);
double rate_derivative(int d, double x);

// f_d(c) = c - (d+1)/d - c log(c d/(d+1)); c_tilde is the root of f_d = -1
// above (d+1)/d.
double f_d(int d, double c);
double c_tilde(int d);

struct TheoryBundle {
    int d;
    double mu, sigma2;
    double c_tilde;
    double alpha, beta;
    double diam_const;   // 2 alpha beta c~ / mu
    double flood_const;  // ((d+1)/d + alpha beta c~) / mu
    double hop_mean_coeff, hop_var_coeff;
};

// Maximizes alpha*beta on the constraint g(alpha,beta)=0 over
// (0,1] x [1, mu/(d+1)] and verifies the Lagrange stationarity identities.
TheoryBundle solve_diameter(int d);

struct HopCltConstants {
    double mean_coeff;  // (2/mu)(d+1)/d
    double var_coeff;   // 2 (sigma^2 + mu)/mu^3 (d+1)/d
};
HopCltConstants hop_clt_constants(int d);

struct EanCltConstants {
    double center;    // (2/mu) sum q_i
    double variance;  // 2 (sigma^2+mu)/mu^3 sum q_i(1-q_i)
    double sum_q;
    double sum_q1q;
};
EanCltConstants ean_hop_clt(int d, const QSchedule& schedule, std::uint64_t n);

// Generation of the m-th splitting vertex: sum of independent
// Bernoulli((d+1)/(d i + 1)), i = 1..m.
std::uint32_t sample_gm(int d, std::uint64_t m, Rng& rng);
double gm_exact_mean(int d, std::uint64_t m);
// EAN analogue with P(bump at i) = q_i.
std::uint32_t sample_gm_ean(const QSchedule& schedule, std::uint64_t n, Rng& rng);

// One draw of Y_d and the renewal count H_k = max{i : sum Y^(j) <= k}.
std::uint32_t sample_coupon_time(int d, Rng& rng);
std::uint64_t renewal_hk(int d, std::uint64_t k, Rng& rng);

}  // namespace theory
}  // namespace ran
