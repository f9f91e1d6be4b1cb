// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include "cli.hpp"
#include "divlab/averages.hpp"
#include "divlab/constructions.hpp"
#include "divlab/hilbert.hpp"
#include "divlab/linear_forms.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace divlab;

namespace {

// Tolerances and time limits.
constexpr double kSeriesTol = 1e-12;
constexpr double kThresholdTol = 1e-12;
constexpr double kQuadratureTol = 1e-9;
constexpr double kMinDegenerateGrowth = 5.0;
constexpr double kMaxStandardErrors = 4.0;
constexpr std::uint64_t kMcSamples = 400000;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

Rational pow_r(long base, int e) {
    Rational out(1);
    for (int i = 0; i < e; ++i) out *= Rational(base);
    return out;
}

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

Outcome exact_measures() {
    Outcome o;
    for (int k = 1; k <= 4; ++k) {
        const ScenarioThm1 s = furstenberg_family(k);
        const std::string at = " at k=" + std::to_string(k);
        o.require(s.set_a.measure() == Rational(1) / (Rational(2) * pow_r(4, k)), "m(A)" + at);
        o.require(s.set_b.measure() == Rational(1) / (Rational(2) * pow_r(3, k)), "m(B)" + at);
        o.require(s.set_c.measure() == Rational(1) / (Rational(2) * pow_r(2, k)), "m(C)" + at);
        o.require(s.set_d.measure() == Rational(1, 8), "m(D)" + at);
        o.require(s.measure(TripleSet::A, Normalization::normalized) == Rational(1) / (Rational(4) * pow_r(4, k)),
                  "normalized m(A)" + at);
        o.require(s.measure(TripleSet::C, Normalization::normalized) == Rational(1) / (Rational(4) * pow_r(2, k)),
                  "normalized m(C)" + at);
    }
    if (o.pass) o.detail = "m(A), m(B), m(C), m(D) exact for k=1..4";
    return o;
}

Outcome claim_certificate() {
    Outcome o;
    const Interval window(-1, 0);
    std::ostringstream summary;
    for (int k = 1; k <= 3; ++k) {
        const ScenarioThm1 s = furstenberg_family(k);
        const SweepResult r = superlevel_set({s.set_a, s.set_b, s.set_c}, {1, 2, 3}, s.lambda, window);
        const IntervalUnion d_left = intersect(s.set_d, IntervalUnion::single(-1, 0));
        const std::string at = " at k=" + std::to_string(k);
        o.require(subset(d_left, r.superlevel), "D not contained" + at);
        o.require(r.superlevel_measure >= Rational(1, 8) - s.lambda, "measure below 1/8 - lambda" + at);
        o.require(r.superlevel_measure >= Rational(1, 16), "measure below 1/16" + at);
        summary << (k > 1 ? ", " : "") << "k=" << k << " measure " << r.superlevel_measure.to_double();
    }
    if (o.pass) o.detail = summary.str();
    return o;
}

Outcome riemann_discretization() {
    Outcome o;
    const RiemannSearch r = find_riemann_n(1, Rational(1, 192), Rational(1, 9), 96, 96, 10000);
    o.require(r.n.has_value(), "no N <= 10^4 certified");
    if (!r.n) return o;
    // re-verify the returned N by an independent exact step sweep
    const ScenarioThm1 s = furstenberg_family(1);
    const DiscreteSweepResult d =
        discrete_superlevel({s.set_a, s.set_b, s.set_c}, {1, 2, 3}, *r.n, Rational(1, 192), Interval(-1, 0));
    o.require(d.superlevel_measure >= Rational(1, 9), "step sweep below 1/9");
    o.require(d.superlevel_measure == r.measure, "search and sweep disagree");
    if (o.pass) o.detail = "N=" + std::to_string(*r.n) + " measure " + std::to_string(r.measure.to_double());
    return o;
}

// Independent per-step base of the bound-mode cube series.
double cube_bound_base(int m, double p) {
    double log2_base = -static_cast<double>(m) * (m + 1);
    for (const auto& eps : cube_vertices(m)) {
        int ones = 0;
        for (int e : eps) ones += e;
        const int growth = ones <= m - 2 ? m - ones + 1 : 1;
        log2_base += static_cast<double>(m + 1 - growth) / p;
    }
    return std::exp2(log2_base);
}

Outcome blowup_thresholds() {
    Outcome o;
    const double p0 = threshold(ThresholdKind::furstenberg()).value;
    o.require(std::abs(p0 - std::log(24.0) / std::log(12.0)) < kThresholdTol, "p0 value");
    const double l = std::log(2.0) / std::log(6.0);
    o.require(std::abs(p0 - (1.0 + l / (1.0 + l))) < kThresholdTol, "p0 log6 identity");
    o.require(std::abs(p0 - furstenberg_p0_log6_form()) < kThresholdTol, "p0 log6 form");

    for (double dp : {-0.2, -0.05, 0.05, 0.2}) {
        const double p = p0 + dp;
        const double base = std::pow(24.0, 1.0 / p) / 12.0;
        BlowupRequest req;
        req.p = p;
        req.kmax = 6;
        const BlowupSeries thm1 = blowup_series(req);
        const BlowupSeries h3 = h3_ratio_series(p, 6);
        for (const auto* s : {&thm1, &h3}) {
            for (std::size_t i = 1; i < s->entries.size(); ++i) {
                o.require(close(*s->entries[i].step_ratio, base, kSeriesTol), "step ratio closed form");
            }
            o.require((s->asymptotic_ratio > 1.0) == (p < p0), "ratio > 1 iff p < p0");
        }
    }

    for (int m = 3; m <= 5; ++m) {
        const Threshold t = threshold(ThresholdKind::cubes(m));
        for (double dp : {-0.2, -0.05, 0.05, 0.2}) {
            BlowupRequest req;
            req.kind = SeriesKind::cubes;
            req.m = m;
            req.kmax = 3;
            req.mode = CardinalityMode::bound;
            req.p = t.value + dp;
            const BlowupSeries s = blowup_series(req);
            const double base = cube_bound_base(m, req.p);
            for (std::size_t i = 1; i < s.entries.size(); ++i) {
                o.require(close(*s.entries[i].step_ratio, base, kSeriesTol), "cube step ratio closed form");
            }
            o.require((s.asymptotic_ratio > 1.0) == (req.p < t.value), "cube ratio > 1 iff p < threshold");

            req.mode = CardinalityMode::exact;
            req.p = cube_exact_threshold(m) + dp;
            o.require((blowup_series(req).asymptotic_ratio > 1.0) == (dp < 0), "exact-mode cube crossing");
        }
    }

    for (int m = 3; m <= 10; ++m) {
        Rational sum(1);
        mpz_class binom = 1;  // C(m, l)
        for (int l = 1; l <= m - 2; ++l) {
            binom = binom * (m - l + 1) / l;
            sum += Rational(mpz_class(l) * binom, mpz_class(m * (m + 1)));
        }
        const Rational closed = Rational((1L << (m - 1)) + 1, m + 1);
        o.require(sum == closed, "cube sum identity m=" + std::to_string(m));
        o.require(threshold(ThresholdKind::cubes(m)).exact == std::optional<Rational>(closed), "cube threshold m=" +
                                                                                                 std::to_string(m));
        o.require(cube_threshold_sum_form(m) == closed, "library sum form m=" + std::to_string(m));
    }
    if (o.pass) o.detail = "closed-form ratios, crossings at p0=" + std::to_string(p0) + ", sum identity m=3..10";
    return o;
}

Outcome cube_certificates() {
    Outcome o;
    for (auto [m, k] : {std::pair{3, 1}, {3, 2}, {4, 1}}) {
        const ScenarioCubes s = cube_family(m, k);
        const std::string at = " at (m,k)=(" + std::to_string(m) + "," + std::to_string(k) + ")";
        o.require(cube_certificate_check(s).all_pass, "certificate" + at);
        o.require(materialize(s.c).measure() == Rational(1, m + 1), "measure(C)" + at);
        for (const auto& set : s.sets) {
            const mpz_class bound = mpz_class(1) << static_cast<mp_bitcnt_t>((m - set.ones + 1) * k);
            o.require(set.cardinality <= bound, "cardinality" + at);
        }
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run({"verify-cubes", "--m", "3", "--k", "1", "--tamper-t-tail", "2"}, out, err);
    o.require(code == cli::kVerificationFailed, "tampered tail exit code " + std::to_string(code));
    if (o.pass) o.detail = "(3,1), (3,2), (4,1) certified; tampered tail exits 2";
    return o;
}

Outcome h3_certificate() {
    Outcome o;
    std::size_t points = 0;
    for (int k : {1, 2}) {
        const ScenarioThm1 s = furstenberg_family(k);
        for (const auto& x : base_points(s.spec_d)) {
            if (x.sign() >= 0) continue;
            const H3Evaluation e = h3_exact(x, s.set_a, s.set_b, s.set_c);
            const Rational inside = intersect(e.support, IntervalUnion::single(0, 1)).measure();
            o.require(!e.infinite, "infinite value at a negative base point");
            o.require(e.value >= inside.to_double(), "value below support measure");
            o.require(inside >= s.lambda, "support measure below level");
            ++points;
        }
    }
    for (double p : {1.1, 1.2, 1.3, 1.5}) {
        BlowupRequest req;
        req.p = p;
        req.kmax = 5;
        const BlowupSeries thm1 = blowup_series(req);
        const BlowupSeries h3 = h3_ratio_series(p, 5);
        for (std::size_t i = 1; i < h3.entries.size(); ++i) {
            o.require(std::abs(*h3.entries[i].step_ratio - *thm1.entries[i].step_ratio) < kSeriesTol, "ratio mismatch");
        }
    }
    if (o.pass) o.detail = std::to_string(points) + " base points certified, ratios match";
    return o;
}

Outcome degenerate_squares() {
    Outcome o;
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> ms(1, 500);
    std::uniform_real_distribution<double> qs(0.05, 0.95);
    std::uniform_real_distribution<double> ls(0.0, 4.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const long big_m = ms(rng);
        const double q4 = qs(rng);
        const double big_l = 1.5 / static_cast<double>(big_m) * std::pow(10.0, ls(rng));
        const auto integrand = [&](double x) { return std::pow(std::min(4.0, 4.0 / std::pow(big_m * x + 1.0, 2)), q4); };
        double total = 0.0;
        for (double lo = 0.0, hi = 1.0 / static_cast<double>(big_m); lo < big_l; lo = hi, hi *= 4.0) {
            total += oracle::quadrature(integrand, lo, std::min(hi, big_l));
        }
        total *= 2.0;
        const double ratio = std::pow(total / (2.0 / static_cast<double>(big_m)), 1.0 / q4);
        const DegenerateRatio d = degenerate_ratio(big_m, q4, big_l);
        const double err = std::abs(d.ratio - ratio) / ratio;
        worst = std::max(worst, err);
        o.require(err <= kQuadratureTol, "closed form vs quadrature");
    }
    const double r2 = degenerate_ratio(100, 0.4, 1e2).ratio;
    const double r3 = degenerate_ratio(100, 0.4, 1e3).ratio;
    const double r4 = degenerate_ratio(100, 0.4, 1e4).ratio;
    o.require(r2 < r3 && r3 < r4, "ratio not increasing at p4'=0.4");
    o.require(r4 / r2 >= kMinDegenerateGrowth, "growth below 5x");

    std::vector<double> ladder;
    for (double l = 1e2; l <= 1e2 * 1024; l *= 2) ladder.push_back(degenerate_ratio(100, 0.6, l).ratio);
    for (std::size_t i = 2; i < ladder.size(); ++i) {
        const double inc = ladder[i] - ladder[i - 1];
        const double prev = ladder[i - 1] - ladder[i - 2];
        o.require(inc > 0 && inc / prev < 0.9, "increments at p4'=0.6 not geometric");
    }
    if (o.pass) {
        std::ostringstream d;
        d << "max rel err " << worst << ", growth " << r4 / r2;
        o.detail = d.str();
    }
    return o;
}

Outcome classification() {
    Outcome o;
    const Classification f = classify({{1}, {2}, {3}});
    o.require(f.scenario == Scenario::nondegenerate && f.witness && f.witness->r == 3, "(1;2;3)");
    const Classification d = classify({{2, 0}, {0, 2}, {1, 1}});
    o.require(d.scenario == Scenario::degenerate && d.witness && d.witness->r == 3 &&
                  d.p_bound == std::optional<Rational>(Rational(3, 2)),
              "{(2,0),(0,2),(1,1)}");
    const Classification b = classify({{1}, {2}});
    o.require(b.scenario == Scenario::independent && !b.witness, "(1;2)");
    const Classification c = classify({{0, 1}, {1, 0}, {1, 1}});
    o.require(c.scenario == Scenario::independent && !c.witness, "cube m=2");

    std::mt19937_64 rng(515);
    std::uniform_int_distribution<int> rows(2, 6);
    std::uniform_int_distribution<int> cols(1, 3);
    std::uniform_int_distribution<long> entry(-2, 2);
    for (int i = 0; i < 100; ++i) {
        IntMatrix a(static_cast<std::size_t>(rows(rng)), std::vector<long>(static_cast<std::size_t>(cols(rng))));
        for (auto& row : a) {
            for (auto& v : row) v = entry(rng);
        }
        const Classification cl = classify(a);
        if (!cl.witness) continue;
        const IntMatrix aug = augmented_rows(a);
        for (std::size_t col = 0; col < aug.front().size(); ++col) {
            Rational sum;
            for (std::size_t j = 0; j < cl.witness->indices.size(); ++j) {
                sum += cl.witness->dependence[j] * Rational(aug[static_cast<std::size_t>(cl.witness->indices[j])][col]);
            }
            o.require(sum.is_zero(), "dependence vector does not annihilate");
        }
        const int r = cl.witness->r;
        o.require(cl.t_rank == r - 1 || cl.t_rank == r - 2, "t-part rank outside {r-2, r-1}");
    }
    if (o.pass) o.detail = "examples classified, 100 random witnesses verified";
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    struct Case {
        int k;
        Rational x;
        Rational eps;
    };
    const std::vector<Case> cases{
        {1, Rational(-1, 12), Rational(1)},  {1, Rational(-1, 2), Rational(1)},   {1, Rational(-11, 12), Rational(1)},
        {1, Rational(-5, 12), Rational(1)},  {1, Rational(0), Rational(1)},       {1, Rational(-1, 24), Rational(1, 2)},
        {1, Rational(-7, 12), Rational(3, 4)}, {1, Rational(-1, 4), Rational(1, 3)}, {2, Rational(-1, 144), Rational(1)},
        {2, Rational(-13, 144), Rational(1)},
    };
    const std::vector<std::vector<long>> matrix{{1}, {2}, {3}};
    double worst = 0.0;
    std::uint64_t seed = 1;
    for (const auto& c : cases) {
        const ScenarioThm1 s = furstenberg_family(c.k);
        const std::vector<IntervalUnion> sets{s.set_a, s.set_b, s.set_c};
        const double exact =
            (multilinear_integral_1d({sets, {1, 2, 3}, Interval(Rational(0), c.eps), c.x}) / c.eps).to_double();
        const MonteCarloEstimate e = mc_average_estimate(matrix, sets, c.x, c.eps, kMcSamples, seed++);
        const double diff = std::abs(e.estimate - exact);
        if (e.standard_error > 0) worst = std::max(worst, diff / e.standard_error);
        o.require(diff <= kMaxStandardErrors * e.standard_error, "estimate off by more than 4 SE");
    }
    if (o.pass) {
        std::ostringstream d;
        d << "10 cases, max deviation " << worst << " SE";
        o.detail = d.str();
    }
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "exact measures", 1, exact_measures},
        {2, "claim certificate", 30, claim_certificate},
        {3, "Riemann discretization", 60, riemann_discretization},
        {4, "blow-up thresholds", 1, blowup_thresholds},
        {5, "cube certificates", 60, cube_certificates},
        {6, "H3 certificate", 30, h3_certificate},
        {7, "degenerate squares", 10, degenerate_squares},
        {8, "classification", 30, classification},
        {9, "oracle equivalence", 30, oracle_equivalence},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > c.limit_seconds) {
            o.pass = false;
            o.detail += " (over time limit)";
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail << " ["
                  << seconds << " s, limit " << c.limit_seconds << " s]\n";
    }
    return failures == 0 ? 0 : 1;
}
