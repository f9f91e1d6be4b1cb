#include "divlab/averages.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace divlab {

IntervalUnion average_t_support(const AverageQuery& q) {
    if (q.sets.size() != q.coefficients.size()) throw std::invalid_argument("average query: sets/coefficients size mismatch");
    IntervalUnion support = IntervalUnion::single(q.domain.lo, q.domain.hi);
    for (std::size_t i = 0; i < q.sets.size(); ++i) {
        if (q.coefficients[i] == 0) throw std::invalid_argument("average query: zero coefficient");
        const Rational inv(1, q.coefficients[i]);
        support = intersect(support, q.sets[i].affine_image(inv, -q.x * inv));
        if (support.empty()) break;
    }
    return support;
}

Rational multilinear_integral_1d(const AverageQuery& q) { return average_t_support(q).measure(); }

namespace {

// {x in [origin, origin + C) : wrap(x + shift) in set}
IntervalUnion circle_preimage(const IntervalUnion& set, const Rational& shift, const Topology& topology) {
    const Rational& origin = topology.origin;
    const Rational& circ = topology.circumference;
    const IntervalUnion fundamental = IntervalUnion::single(origin, origin + circ);
    const IntervalUnion on_circle = intersect(set, fundamental);
    const mpz_class base = (shift / circ).floor();
    IntervalUnion out;
    for (long j = -1; j <= 2; ++j) {
        const Rational offset = Rational(base + j, mpz_class(1)) * circ - shift;
        out = unite(out, intersect(on_circle.translate(offset), fundamental));
    }
    return out;
}

}  // namespace

DiscreteSweepResult discrete_superlevel(const std::vector<IntervalUnion>& sets, const std::vector<long>& coefficients,
                                        long n_steps, const Rational& level, const Interval& window,
                                        const Topology& topology) {
    if (n_steps < 1) throw std::invalid_argument("discrete_superlevel: N must be >= 1");
    if (sets.size() != coefficients.size() || sets.empty()) {
        throw std::invalid_argument("discrete_superlevel: sets/coefficients size mismatch");
    }
    if (topology.kind == Topology::Kind::circle &&
        (window.lo < topology.origin || topology.origin + topology.circumference < window.hi)) {
        throw std::invalid_argument("discrete_superlevel: window must lie on the circle");
    }
    const IntervalUnion window_set = IntervalUnion::single(window.lo, window.hi);
    const Rational step(1, n_steps);

    std::vector<std::pair<Rational, int>> events;
    for (long n = 1; n <= n_steps; ++n) {
        IntervalUnion slice = window_set;
        for (std::size_t i = 0; i < sets.size() && !slice.empty(); ++i) {
            const Rational shift = Rational(coefficients[i]) * Rational(n) * step;
            const IntervalUnion pre = topology.kind == Topology::Kind::line ? sets[i].translate(-shift)
                                                                            : circle_preimage(sets[i], shift, topology);
            slice = intersect(slice, pre);
        }
        for (const auto& piece : slice.intervals()) {
            events.emplace_back(piece.lo, +1);
            events.emplace_back(piece.hi, -1);
        }
    }
    std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<Rational> xs;
    std::vector<long> counts;
    long running = 0;
    for (std::size_t i = 0; i < events.size();) {
        const Rational& x = events[i].first;
        while (i < events.size() && events[i].first == x) running += events[i++].second;
        xs.push_back(x);
        counts.push_back(running);
    }
    std::vector<Rational> values;
    for (std::size_t j = 0; j + 1 < xs.size(); ++j) values.emplace_back(counts[j], n_steps);
    if (xs.size() == 1) xs.clear();
    StepFunction g(std::move(xs), std::move(values), Rational(0));
    IntervalUnion superlevel = g.superlevel(level, window);
    Rational measure = superlevel.measure();
    return {std::move(g), std::move(superlevel), std::move(measure)};
}

RiemannSearch find_riemann_n(int k, const Rational& level, const Rational& target, long start, long step, long max_n,
                             const Topology& topology) {
    if (start < 1 || step < 1) throw std::invalid_argument("find_riemann_n: start and step must be >= 1");
    const ScenarioThm1 s = furstenberg_family(k);
    const std::vector<IntervalUnion> sets{s.set_a, s.set_b, s.set_c};
    const std::vector<long> coefficients{1, 2, 3};
    const Interval window(Rational(-1), Rational(0));
    RiemannSearch out{std::nullopt, Rational(0), {}};
    for (long n = start; n <= max_n; n += step) {
        const auto result = discrete_superlevel(sets, coefficients, n, level, window, topology);
        out.tried.emplace_back(n, result.superlevel_measure);
        out.measure = result.superlevel_measure;
        if (target <= result.superlevel_measure) {
            out.n = n;
            break;
        }
    }
    return out;
}

CubeCertificate cube_certificate_check(const ScenarioCubes& scenario, const std::optional<Rational>& t_box_override) {
    const int m = scenario.m;
    const int k = scenario.k;
    const Rational radix(1L << (m + 1));
    const Rational x_box = scenario.box_tail;
    const Rational t_box = t_box_override.value_or(scenario.box_tail);

    std::vector<std::vector<Rational>> members;
    members.reserve(scenario.sets.size());
    for (const auto& s : scenario.sets) members.push_back(base_points(s.spec));

    // digit choices per position: bit j selects 2^{j-1} in B_j, bit m selects the nonzero digit of B
    const Rational b_digit = scenario.b.alphabet().front().is_zero() ? scenario.b.alphabet().back()
                                                                     : scenario.b.alphabet().front();
    const unsigned long per_position = 1ul << (m + 1);
    unsigned long total = 1;
    for (int i = 0; i < k; ++i) total *= per_position;

    CubeCertificate out{{}, true, x_box, t_box, Rational::pow(t_box, m)};
    const auto vertices = cube_vertices(m);
    for (unsigned long code = 0; code < total; ++code) {
        std::vector<Rational> bj(static_cast<std::size_t>(m));
        Rational b;
        Rational scale(1);
        unsigned long rest = code;
        for (int i = 1; i <= k; ++i) {
            scale /= radix;
            const unsigned long digit = rest % per_position;
            rest /= per_position;
            for (int j = 0; j < m; ++j) {
                if ((digit >> j) & 1u) bj[static_cast<std::size_t>(j)] += Rational(1L << j) * scale;
            }
            if ((digit >> m) & 1u) b += b_digit * scale;
        }
        Rational x = -Rational(m - 1) * b;
        for (const auto& v : bj) x += v;
        std::vector<Rational> t(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) t[static_cast<std::size_t>(j)] = b - bj[static_cast<std::size_t>(j)];

        for (std::size_t e = 0; e < vertices.size(); ++e) {
            const auto& eps = vertices[e];
            Rational point = x;
            int ones = 0;
            for (int j = 0; j < m; ++j) {
                if (eps[static_cast<std::size_t>(j)]) {
                    point += t[static_cast<std::size_t>(j)];
                    ++ones;
                }
            }
            const auto& pts = members[e];
            const bool member = std::binary_search(pts.begin(), pts.end(), point);
            Rational margin = scenario.sets[e].spec.tail() - (x_box + Rational(ones) * t_box);
            const bool pass = member && margin.sign() >= 0;
            out.all_pass = out.all_pass && pass;
            out.entries.push_back({x, eps, member, std::move(margin), pass});
        }
    }
    std::stable_sort(out.entries.begin(), out.entries.end(),
                     [](const CertificateEntry& a, const CertificateEntry& b) { return a.x < b.x; });
    return out;
}

namespace {

// SplitMix64 finalizer, used as a counter-based generator keyed by (seed, sample, coordinate).
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t sample, std::uint64_t coordinate) {
    const std::uint64_t bits = mix64(mix64(mix64(seed) ^ sample) ^ (coordinate * 0xD1B54A32D192ED03ull));
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

struct DoubleUnion {
    std::vector<double> lo;
    std::vector<double> hi;

    explicit DoubleUnion(const IntervalUnion& u) {
        for (const auto& piece : u.intervals()) {
            lo.push_back(piece.lo.to_double());
            hi.push_back(piece.hi.to_double());
        }
    }
    [[nodiscard]] bool contains(double y) const {
        const auto it = std::upper_bound(hi.begin(), hi.end(), y);
        if (it == hi.end()) return false;
        return lo[static_cast<std::size_t>(it - hi.begin())] <= y;
    }
};

}  // namespace

MonteCarloEstimate mc_average_estimate(const std::vector<std::vector<long>>& matrix, const std::vector<IntervalUnion>& sets,
                                       const Rational& x, const Rational& eps, std::uint64_t samples,
                                       std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("mc_average_estimate: samples must be >= 1");
    if (matrix.size() != sets.size()) throw std::invalid_argument("mc_average_estimate: matrix/sets size mismatch");
    if (eps.sign() <= 0) throw std::invalid_argument("mc_average_estimate: eps must be positive");
    const std::size_t m = matrix.empty() ? 0 : matrix.front().size();
    for (const auto& row : matrix) {
        if (row.size() != m) throw std::invalid_argument("mc_average_estimate: ragged matrix");
    }
    if (std::any_of(sets.begin(), sets.end(), [](const IntervalUnion& u) { return u.empty(); })) {
        return {0.0, 0.0};
    }
    std::vector<DoubleUnion> unions;
    for (const auto& u : sets) unions.emplace_back(u);
    const double x0 = x.to_double();
    const double width = eps.to_double();

    std::uint64_t hits = 0;
    std::vector<double> t(m);
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (std::size_t j = 0; j < m; ++j) t[j] = width * uniform01(seed, s, j);
        bool inside = true;
        for (std::size_t i = 0; i < matrix.size() && inside; ++i) {
            double y = x0;
            for (std::size_t j = 0; j < m; ++j) y += static_cast<double>(matrix[i][j]) * t[j];
            inside = unions[i].contains(y);
        }
        hits += inside ? 1 : 0;
    }
    const double n = static_cast<double>(samples);
    const double mean = static_cast<double>(hits) / n;
    const double variance = samples > 1 ? mean * (1.0 - mean) * n / (n - 1.0) : 0.0;
    return {mean, std::sqrt(variance / n)};
}

double degenerate_lower_bound(long big_m, double x) {
    const double denom = static_cast<double>(big_m) * std::abs(x) + 1.0;
    return std::min(4.0, 4.0 / (denom * denom));
}

DegenerateRatio degenerate_ratio(long big_m, double q, double big_l) {
    if (big_m < 1) throw std::invalid_argument("degenerate_ratio: M must be >= 1");
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("degenerate_ratio: p4' must lie in (0, 1)");
    const double mm = static_cast<double>(big_m);
    if (!(big_l > 1.0 / mm)) throw std::invalid_argument("degenerate_ratio: requires L > 1/M");
    const double a = 1.0 - 2.0 * q;
    const double integral = std::abs(a) < 1e-15
                                ? 2.0 * std::pow(4.0, q) * std::log1p(mm * big_l) / mm
                                : 2.0 * std::pow(4.0, q) * std::expm1(a * std::log1p(mm * big_l)) / (mm * a);
    const double ratio = std::pow(integral, 1.0 / q) / std::pow(2.0 / mm, 1.0 / q);
    return {ratio, integral};
}

double generalized_degenerate_lower_bound(int r, const std::vector<long>& b, long big_m, double x) {
    double s = 0.0;
    for (long v : b) s += std::abs(static_cast<double>(v));
    const double cap = std::pow(2.0, r - 1);
    const double decay = std::pow(2.0 / s, r - 1) / std::pow(static_cast<double>(big_m) * std::abs(x) + 1.0, r - 1);
    return std::min(cap, decay);
}

GeneralizedDegenerateRatio generalized_degenerate_ratio(int r, const std::vector<long>& b, long big_m, double p,
                                                        double big_l) {
    if (r < 2) throw std::invalid_argument("generalized_degenerate_ratio: r must be >= 2");
    if (b.size() != static_cast<std::size_t>(r - 1)) {
        throw std::invalid_argument("generalized_degenerate_ratio: expected r-1 coefficients");
    }
    if (std::accumulate(b.begin(), b.end(), 0L) != 1) {
        throw std::invalid_argument("generalized_degenerate_ratio: coefficients must sum to 1");
    }
    if (big_m < 1 || !(p >= 1.0)) throw std::invalid_argument("generalized_degenerate_ratio: need M >= 1, p >= 1");
    const double mm = static_cast<double>(big_m);
    if (!(big_l > 1.0 / mm)) throw std::invalid_argument("generalized_degenerate_ratio: requires L > 1/M");
    double s = 0.0;
    for (long v : b) s += std::abs(static_cast<double>(v));
    const double q = p / r;
    const double c = std::pow(2.0 / s, r - 1);
    const double a = 1.0 - (r - 1) * q;
    const double integral = std::abs(a) < 1e-15
                                ? 2.0 * std::pow(c, q) * std::log1p(mm * big_l) / mm
                                : 2.0 * std::pow(c, q) * std::expm1(a * std::log1p(mm * big_l)) / (mm * a);
    const double ratio = std::pow(integral, 1.0 / q) / std::pow(2.0 / mm, 1.0 / q);
    return {ratio, integral, a, a > 0.0};
}

}  // namespace divlab
