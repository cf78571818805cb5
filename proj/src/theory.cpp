#include "ran/theory.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ran {
namespace theory {

namespace {

// Minimal exact fraction on __int128; enough headroom for harmonic numbers
// up to H(80) (lcm(1..80) < 2^127).
struct Frac {
    __int128 num = 0;
    __int128 den = 1;

    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    void reduce() {
        __int128 g = gcd128(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (den < 0) {
            num = -num;
            den = -den;
        }
    }
    Frac& operator+=(const Frac& o) {
        num = num * o.den + o.num * den;
        den *= o.den;
        reduce();
        return *this;
    }
    Frac& operator*=(const Frac& o) {
        num *= o.num;
        den *= o.den;
        reduce();
        return *this;
    }
    long double value_l() const {
        return static_cast<long double>(num) / static_cast<long double>(den);
    }
    double value() const { return static_cast<double>(value_l()); }
};

Frac harmonic(int n) {
    Frac h;
    for (int i = 1; i <= n; ++i) {
        h += Frac{1, i};
    }
    return h;
}

// The exact-rational paths (harmonic numbers, lcm-sized denominators) stay
// inside __int128 up to d = 40.
void check_dim(int d) {
    if (d < 2 || d > 40) throw std::invalid_argument("dimension must be in [2, 40]");
}

Frac mu_frac(int d) {
    Frac mu = harmonic(d + 1);
    mu *= Frac{d + 1, 1};
    return mu;
}

Frac sigma2_frac(int d) {
    // (1 - i/(d+1)) / (i/(d+1))^2 = (d+1)(d+1-i)/i^2
    Frac s;
    for (int i = 1; i <= d + 1; ++i)
        s += Frac{static_cast<__int128>(d + 1) * (d + 1 - i), static_cast<__int128>(i) * i};
    return s;
}

}  // namespace

double mu_exact(int d) {
    check_dim(d);
    return mu_frac(d).value();
}

double sigma2_exact(int d) {
    check_dim(d);
    return sigma2_frac(d).value();
}

double CouponLaw::cdf(std::size_t t) const {
    double s = 0.0;
    for (std::size_t i = 0; i <= t && i < pmf.size(); ++i) s += pmf[i];
    return s;
}

double CouponLaw::truncated_pmf(std::size_t t, std::size_t k) const {
    if (t > k) return 0.0;
    if (t < k) return t < pmf.size() ? pmf[t] : 0.0;
    return 1.0 - cdf(k - 1);  // mass of {Y >= k}
}

double CouponLaw::tail_bound() const {
    const std::size_t t = pmf.size() - 1;
    return (d + 1) * std::pow(static_cast<double>(d) / (d + 1), static_cast<double>(t));
}

CouponLaw coupon_pmf(int d, std::size_t t_max) {
    check_dim(d);
    if (t_max < static_cast<std::size_t>(d) + 1)
        throw std::invalid_argument("t_max must be at least d+1");
    CouponLaw law;
    law.d = d;
    law.mu = mu_exact(d);
    law.sigma2 = sigma2_exact(d);
    law.pmf.assign(t_max + 1, 0.0);
    // Markov chain on the number of distinct coupons: state j advances with
    // probability (d+1-j)/(d+1).
    std::vector<long double> state(d + 2, 0.0L);
    state[0] = 1.0L;
    for (std::size_t t = 1; t <= t_max; ++t) {
        for (int j = d; j >= 0; --j) {
            const long double adv = static_cast<long double>(d + 1 - j) / (d + 1);
            const long double moved = state[j] * adv;
            state[j] -= moved;
            state[j + 1] += moved;
        }
        law.pmf[t] = static_cast<double>(state[d + 1]);
        state[d + 1] = 0.0L;  // absorbed mass counted once
    }
    return law;
}

static double mgf_boundary(int d) { return std::log((d + 1.0) / d); }

double log_mgf(int d, double lambda) {
    check_dim(d);
    if (!(lambda < mgf_boundary(d)))
        throw std::domain_error("log_mgf defined only for lambda < log((d+1)/d)");
    double s = std::lgamma(d + 1.0) - d * std::log(d + 1.0) + (d + 1) * lambda;
    for (int i = 1; i <= d; ++i) s -= std::log1p(-(static_cast<double>(i) / (d + 1)) * std::exp(lambda));
    return s;
}

double log_mgf_mean(int d, double lambda) {
    check_dim(d);
    if (!(lambda < mgf_boundary(d)))
        throw std::domain_error("log_mgf defined only for lambda < log((d+1)/d)");
    double s = d + 1;
    const double e = std::exp(lambda);
    for (int i = 1; i <= d; ++i) {
        const double x = (static_cast<double>(i) / (d + 1)) * e;
        s += x / (1.0 - x);
    }
    return s;
}

double rate_derivative(int d, double x) {
    check_dim(d);
    if (!(x > d + 1)) throw std::domain_error("rate function domain is x > d+1");
    double hi = mgf_boundary(d) - 1e-13;
    if (log_mgf_mean(d, hi) < x)
        throw std::domain_error("x beyond the numerically attainable mean range");
    double lo = -1.0;
    while (log_mgf_mean(d, lo) > x) {
        lo *= 2.0;
        if (lo < -745.0) throw std::domain_error("x too close to the lattice minimum d+1");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (log_mgf_mean(d, mid) < x)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-15 * std::max(1.0, std::abs(lo))) break;
    }
    return 0.5 * (lo + hi);
}

double rate_function(int d, double x) {
    const double l = rate_derivative(d, x);
    return l * x - log_mgf(d, l);
}

double f_d(int d, double c) {
    check_dim(d);
    if (!(c > 0)) throw std::invalid_argument("f_d defined for c > 0");
    return c - (d + 1.0) / d - c * std::log(static_cast<double>(d) / (d + 1) * c);
}

double c_tilde(int d) {
    check_dim(d);
    double lo = (d + 1.0) / d + 1e-9;
    double hi = 20.0;
    // f_d + 1 is positive at lo (f_d((d+1)/d) = 0) and negative at hi.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f_d(d, mid) + 1.0 > 0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-12) break;
    }
    return 0.5 * (lo + hi);
}

namespace {

struct DiamProblem {
    int d;
    double mu, ct;

    double g(double a, double b) const {
        return 1.0 + f_d(d, a * ct) - a * ct * (b / mu) * rate_function(d, mu / b);
    }
    // For fixed beta, g is concave in alpha with its peak at a0; the relevant
    // root is the larger one in [a0, 1]. Returns -1 when infeasible.
    double alpha_hi(double b) const {
        const double rate = rate_function(d, mu / b);
        const double a0 = (d + 1.0) / (d * ct) * std::exp(-(b / mu) * rate);
        if (g(a0, b) < 0) return -1.0;
        if (g(1.0, b) >= 0) return 1.0;
        double lo = a0, hi = 1.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (g(mid, b) >= 0)
                lo = mid;
            else
                hi = mid;
            if (hi - lo < 1e-14) break;
        }
        return 0.5 * (lo + hi);
    }
    double objective(double b) const {
        const double a = alpha_hi(b);
        return a < 0 ? -1.0 : a * b;
    }
};

}  // namespace

TheoryBundle solve_diameter(int d) {
    check_dim(d);
    DiamProblem p{d, mu_exact(d), c_tilde(d)};
    const double bmax = p.mu / (d + 1) - 1e-9;
    // coarse grid, then ternary refinement around the best point
    const int grid = 400;
    double best_b = 1.0, best = p.objective(1.0);
    for (int i = 0; i <= grid; ++i) {
        const double b = 1.0 + (bmax - 1.0) * i / grid;
        const double v = p.objective(b);
        if (v > best) {
            best = v;
            best_b = b;
        }
    }
    double lo = std::max(1.0, best_b - (bmax - 1.0) / grid);
    double hi = std::min(bmax, best_b + (bmax - 1.0) / grid);
    for (int it = 0; it < 120; ++it) {
        const double m1 = lo + (hi - lo) / 3;
        const double m2 = hi - (hi - lo) / 3;
        if (p.objective(m1) < p.objective(m2))
            lo = m1;
        else
            hi = m2;
    }
    double beta = 0.5 * (lo + hi);
    double alpha = p.alpha_hi(beta);

    // Newton polish on the stationarity system
    //   F1 = g(a,b) = 0
    //   F2 = lambda*(mu/b) + log((d/(d+1)) a ct) = 0
    for (int it = 0; it < 40; ++it) {
        const double f1 = p.g(alpha, beta);
        const double f2 = rate_derivative(d, p.mu / beta) +
                          std::log(static_cast<double>(d) / (d + 1) * alpha * p.ct);
        const double ha = 1e-8, hb = 1e-8;
        const double f1a = (p.g(alpha + ha, beta) - p.g(alpha - ha, beta)) / (2 * ha);
        const double f1b = (p.g(alpha, beta + hb) - p.g(alpha, beta - hb)) / (2 * hb);
        const double f2a = 1.0 / alpha;
        const double f2b = (rate_derivative(d, p.mu / (beta + hb)) -
                            rate_derivative(d, p.mu / (beta - hb))) /
                           (2 * hb);
        const double det = f1a * f2b - f1b * f2a;
        if (std::abs(det) < 1e-300) break;
        const double da = (f1 * f2b - f1b * f2) / det;
        const double db = (f1a * f2 - f1 * f2a) / det;
        alpha -= da;
        beta -= db;
        if (std::abs(da) + std::abs(db) < 1e-14) break;
    }

    if (!(alpha > 0 && alpha <= 1.0 + 1e-12 && beta >= 1.0 - 1e-12 && beta <= p.mu / (d + 1)))
        throw std::runtime_error("diameter maximizer escaped the admissible box");
    // verify both first-order optimality identities
    const double id1 = std::abs(alpha - (d + 1.0) / (d * p.ct) *
                                            std::exp(-rate_derivative(d, p.mu / beta)));
    const double lhs = (beta / p.mu) * rate_function(d, p.mu / beta);
    const double rhs = (1.0 + f_d(d, alpha * p.ct)) / (alpha * p.ct);
    if (id1 > 1e-6 || std::abs(lhs - rhs) > 1e-6)
        throw std::runtime_error("stationarity verification failed in solve_diameter");

    TheoryBundle out;
    out.d = d;
    out.mu = p.mu;
    out.sigma2 = sigma2_exact(d);
    out.c_tilde = p.ct;
    out.alpha = alpha;
    out.beta = beta;
    out.diam_const = 2.0 * alpha * beta * p.ct / p.mu;
    out.flood_const = ((d + 1.0) / d + alpha * beta * p.ct) / p.mu;
    const auto clt = hop_clt_constants(d);
    out.hop_mean_coeff = clt.mean_coeff;
    out.hop_var_coeff = clt.var_coeff;
    return out;
}

HopCltConstants hop_clt_constants(int d) {
    check_dim(d);
    // mean coefficient 2(d+1)/(d mu) = 2/(d H(d+1)) kept rational to the end
    Frac mean = harmonic(d + 1);
    mean *= Frac{d, 2};  // d H / 2; coefficient is its reciprocal
    // var_coeff = 2 (sigma^2 + mu)(d+1) / (mu^3 d), combined in long double
    // from the exact rationals (a cubed lcm-denominator would overflow)
    const long double mu = mu_frac(d).value_l();
    const long double s2 = sigma2_frac(d).value_l();
    const long double var =
        2.0L * (s2 + mu) * (d + 1) / (mu * mu * mu * d);
    return {Frac{mean.den, mean.num}.value(), static_cast<double>(var)};
}

EanCltConstants ean_hop_clt(int d, const QSchedule& schedule, std::uint64_t n) {
    check_dim(d);
    long double sq = 0.0L, sq1 = 0.0L;
    for (std::uint64_t i = 1; i <= n; ++i) {
        const long double q = schedule.at(i);
        sq += q;
        sq1 += q * (1.0L - q);
    }
    const double mu = mu_exact(d);
    const double s2 = sigma2_exact(d);
    EanCltConstants out;
    out.sum_q = static_cast<double>(sq);
    out.sum_q1q = static_cast<double>(sq1);
    out.center = 2.0 / mu * out.sum_q;
    out.variance = 2.0 * (s2 + mu) / (mu * mu * mu) * out.sum_q1q;
    return out;
}

std::uint32_t sample_gm(int d, std::uint64_t m, Rng& rng) {
    check_dim(d);
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    std::uint32_t g = 0;
    for (std::uint64_t i = 1; i <= m; ++i)
        g += rng.uniform01() * (static_cast<double>(d) * i + 1) < (d + 1);
    return g;
}

double gm_exact_mean(int d, std::uint64_t m) {
    check_dim(d);
    long double s = 0.0L;
    for (std::uint64_t i = 1; i <= m; ++i)
        s += static_cast<long double>(d + 1) / (static_cast<long double>(d) * i + 1);
    return static_cast<double>(s);
}

std::uint32_t sample_gm_ean(const QSchedule& schedule, std::uint64_t n, Rng& rng) {
    std::uint32_t g = 0;
    for (std::uint64_t i = 1; i <= n; ++i) g += rng.bernoulli(schedule.at(i));
    return g;
}

std::uint32_t sample_coupon_time(int d, Rng& rng) {
    std::uint64_t seen = 0;
    const std::uint64_t full = (static_cast<std::uint64_t>(1) << (d + 1)) - 1;
    std::uint32_t t = 0;
    while (seen != full) {
        seen |= static_cast<std::uint64_t>(1) << rng.below(d + 1);
        ++t;
    }
    return t;
}

std::uint64_t renewal_hk(int d, std::uint64_t k, Rng& rng) {
    check_dim(d);
    std::uint64_t total = 0, h = 0;
    for (;;) {
        const std::uint32_t y = sample_coupon_time(d, rng);
        if (total + y > k) return h;
        total += y;
        ++h;
    }
}

}  // namespace theory
}  // namespace ran
