#pragma once

// Exact and Monte Carlo evaluation of the averages
//   (1/eps^m) int_{[0,eps]^m} prod_i 1_{U_i}(x + sum_j a_ij t_j) dt
// together with their superlevel sets, discrete Riemann analogues, the cube
// certificate and the lower bounds for degenerate averages.

#include "divlab/constructions.hpp"
#include "divlab/interval_union.hpp"
#include "divlab/piecewise_linear.hpp"
#include "divlab/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace divlab {

/// One-parameter average: x + c_i t for t in `domain`.
struct AverageQuery {
    std::vector<IntervalUnion> sets;
    std::vector<long> coefficients;
    Interval domain;
    Rational x;
};

/// {t in domain : x + c_i t in U_i for all i}. Throws std::invalid_argument on
/// mismatched sizes or a zero coefficient.
[[nodiscard]] IntervalUnion average_t_support(const AverageQuery& q);

/// Exact value of int_domain prod_i 1_{U_i}(x + c_i t) dt.
[[nodiscard]] Rational multilinear_integral_1d(const AverageQuery& q);

struct SweepResult {
    PiecewiseLinear function;  // F on the window
    IntervalUnion superlevel;  // {x in window : F(x) >= level}
    Rational superlevel_measure;
};

/// F(x) = int_domain prod_i 1_{U_i}(x + c_i t) dt as an exact piecewise linear
/// function of x over the window.
[[nodiscard]] PiecewiseLinear average_profile(const std::vector<IntervalUnion>& sets,
                                              const std::vector<long>& coefficients, const Interval& domain,
                                              const Interval& window);

[[nodiscard]] SweepResult superlevel_set(const std::vector<IntervalUnion>& sets, const std::vector<long>& coefficients,
                                         const Rational& level, const Interval& window,
                                         const Interval& domain = Interval(Rational(0), Rational(1)));

/// Addition on the line, or modulo a circle [origin, origin + circumference).
struct Topology {
    enum class Kind { line, circle };
    Kind kind = Kind::line;
    Rational origin = Rational(-1);
    Rational circumference = Rational(2);

    static Topology line() { return {}; }
    static Topology circle(Rational circumference = Rational(2)) {
        Rational origin = -circumference / Rational(2);
        return {Kind::circle, std::move(origin), std::move(circumference)};
    }
};

struct DiscreteSweepResult {
    StepFunction function;  // G_N on the window (0 outside)
    IntervalUnion superlevel;
    Rational superlevel_measure;
};

/// G_N(x) = (1/N) sum_{n=1}^N prod_i 1_{U_i}(x + c_i n/N), exactly.
[[nodiscard]] DiscreteSweepResult discrete_superlevel(const std::vector<IntervalUnion>& sets,
                                                      const std::vector<long>& coefficients, long n_steps,
                                                      const Rational& level, const Interval& window,
                                                      const Topology& topology = Topology::line());

struct RiemannSearch {
    std::optional<long> n;                         // first certified N
    Rational measure;                              // superlevel measure at that N (or the last tried)
    std::vector<std::pair<long, Rational>> tried;  // (N, measure) per candidate
};

/// Smallest N in {start, start+step, ..., <= max_n} for which the discrete
/// superlevel set of the depth-k triple at `level` has measure >= target
/// inside [-1, 0). An empty result means the range was exhausted.
[[nodiscard]] RiemannSearch find_riemann_n(int k, const Rational& level, const Rational& target, long start,
                                           long step, long max_n, const Topology& topology = Topology::line());

struct CertificateEntry {
    Rational x;
    CubeVertex eps;
    bool member;     // base point of x + t.eps lies in A~_eps
    Rational margin; // tail(A_eps) - (x-box + ones * t-box)
    bool pass;
};

struct CubeCertificate {
    std::vector<CertificateEntry> entries;
    bool all_pass;
    Rational x_box;
    Rational t_box;
    /// t-box volume t_box^m, the lower bound for the m-fold integral at every x in C.
    Rational integral_lower_bound;
};

/// For each base point x = b_1+...+b_m-(m-1)b of C~ takes t_j = b - b_j and checks
/// x + t.eps in A_eps for every vertex eps and every point of the x- and t-boxes.
/// `t_box_override` replaces the t-box side (used to exercise a failing certificate).
[[nodiscard]] CubeCertificate cube_certificate_check(const ScenarioCubes& scenario,
                                                     const std::optional<Rational>& t_box_override = std::nullopt);

struct MonteCarloEstimate {
    double estimate;
    double standard_error;
};

/// Unbiased estimate of (1/eps^m) int_{[0,eps]^m} prod_i 1_{U_i}(x + sum_j a_ij t_j) dt.
/// Sample s draws its coordinates from a counter-based stream keyed by (seed, s),
/// so the result does not depend on evaluation order.
[[nodiscard]] MonteCarloEstimate mc_average_estimate(const std::vector<std::vector<long>>& matrix,
                                                     const std::vector<IntervalUnion>& sets, const Rational& x,
                                                     const Rational& eps, std::uint64_t samples, std::uint64_t seed);

/// Pointwise lower bound 4/(M|x|+1)^2 for the maximal operator of the degenerate
/// square averages f(x+2s) g(x+2t) h(x+s+t) at f=g=h=1_{[-1/M,1/M]}.
[[nodiscard]] double degenerate_lower_bound(long big_m, double x);

struct DegenerateRatio {
    double ratio;              // (int_{-L}^{L} g^q)^{1/q} / (2/M)^{1/q}
    double truncated_integral; // int_{-L}^{L} g^q, closed form
};

/// q = p4' in (0, 1); requires L > 1/M. Throws std::invalid_argument otherwise.
[[nodiscard]] DegenerateRatio degenerate_ratio(long big_m, double q, double big_l);

struct GeneralizedDegenerateRatio {
    double ratio;
    double truncated_integral;
    double growth_exponent;  // 1 - (r-1) p / r; positive iff the ratio grows in L
    bool grows;
};

/// Lower bound min(2^{r-1}, (2/S)^{r-1}/(M|x|+1)^{r-1}), S = sum |b_i|, for
/// f_i = 1_{[-1/M,1/M]} in the r-linear average with last form x + sum b_i t_i.
[[nodiscard]] double generalized_degenerate_lower_bound(int r, const std::vector<long>& b, long big_m, double x);

/// Truncated L^{p/r} ratio against prod ||f_i||_p = (2/M)^{r/p}. Requires
/// sum b_i = 1 and b of length r-1.
[[nodiscard]] GeneralizedDegenerateRatio generalized_degenerate_ratio(int r, const std::vector<long>& b, long big_m,
                                                                      double p, double big_l);

}  // namespace divlab
