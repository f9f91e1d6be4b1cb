#include "divlab/constructions.hpp"

#include "divlab/hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace divlab {

namespace {

constexpr double kBoundaryBand = 1e-12;

Rational pow_int(long base, int exponent) { return Rational::pow(Rational(base), exponent); }

std::vector<Rational> integer_range(long lo, long hi) {
    std::vector<Rational> out;
    for (long v = lo; v <= hi; ++v) out.emplace_back(v);
    return out;
}

double log_mpz(const mpz_class& v) {
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, v.get_mpz_t());
    return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

}  // namespace

std::string to_string(Normalization n) { return n == Normalization::lebesgue ? "lebesgue" : "normalized"; }

Normalization parse_normalization(const std::string& text) {
    if (text == "lebesgue") return Normalization::lebesgue;
    if (text == "normalized") return Normalization::normalized;
    throw std::invalid_argument("unknown normalization '" + text + "' (expected lebesgue|normalized)");
}

const DigitSetSpec& ScenarioThm1::spec(TripleSet which) const {
    switch (which) {
        case TripleSet::A: return spec_a;
        case TripleSet::B: return spec_b;
        case TripleSet::C: return spec_c;
        case TripleSet::D: return spec_d;
    }
    throw std::logic_error("bad set");
}

const IntervalUnion& ScenarioThm1::set(TripleSet which) const {
    switch (which) {
        case TripleSet::A: return set_a;
        case TripleSet::B: return set_b;
        case TripleSet::C: return set_c;
        case TripleSet::D: return set_d;
    }
    throw std::logic_error("bad set");
}

Rational ScenarioThm1::measure(TripleSet which, Normalization n) const {
    const Rational lebesgue = set(which).measure();
    return n == Normalization::lebesgue ? lebesgue : lebesgue / Rational(2);
}

double ScenarioThm1::norm(TripleSet which, double p, Normalization n) const {
    return std::pow(measure(which, n).to_double(), 1.0 / p);
}

ScenarioThm1 furstenberg_family(int k) {
    if (k < 1) throw std::invalid_argument("furstenberg_family: k must be >= 1");
    const Rational scale = pow_int(12, -k);
    const Rational wide_tail = scale / Rational(2);
    const Rational narrow_tail = scale / Rational(8);

    const DigitSetSpec a0(12, k, {Rational(-4), Rational(-2), Rational(0)}, wide_tail);
    const DigitSetSpec b0(12, k, integer_range(0, 3), wide_tail);
    DigitSetSpec c = alphabet_combine({{2, b0}, {-1, a0}}, wide_tail);
    DigitSetSpec d = alphabet_combine({{2, a0}, {-1, b0}}, narrow_tail);

    ScenarioThm1 out{k, a0, b0, c, d, materialize(a0), materialize(b0), materialize(c), materialize(d), narrow_tail};
    return out;
}

std::vector<CubeVertex> cube_vertices(int m) {
    if (m < 1 || m > 20) throw std::invalid_argument("cube_vertices: m out of range");
    std::vector<CubeVertex> out;
    for (unsigned long mask = 1; mask < (1ul << m); ++mask) {
        CubeVertex eps(static_cast<std::size_t>(m));
        // leading coordinate is the most significant bit, giving lexicographic order
        for (int j = 0; j < m; ++j) eps[static_cast<std::size_t>(j)] = static_cast<int>((mask >> (m - 1 - j)) & 1u);
        out.push_back(std::move(eps));
    }
    return out;
}

std::string vertex_label(const CubeVertex& eps) {
    std::string out;
    for (int e : eps) out.push_back(e ? '1' : '0');
    return out;
}

const CubeSet& ScenarioCubes::set_for(const CubeVertex& eps) const {
    for (const auto& s : sets) {
        if (s.eps == eps) return s;
    }
    throw std::invalid_argument("no cube set for vertex " + vertex_label(eps));
}

ScenarioCubes cube_family(int m, int k) {
    if (m < 3) throw std::invalid_argument("cube_family: m must be >= 3");
    if (k < 1) throw std::invalid_argument("cube_family: k must be >= 1");
    if (m > 12) throw std::invalid_argument("cube_family: m too large");
    const int radix = 1 << (m + 1);
    const Rational set_tail = Rational::pow(Rational(radix), -k);
    const Rational box_tail = set_tail / Rational(m + 1);

    std::vector<DigitSetSpec> b_sets;
    for (int j = 1; j <= m; ++j) b_sets.emplace_back(radix, k, std::vector<Rational>{Rational(0), Rational(1L << (j - 1))}, set_tail);
    const DigitSetSpec b(radix, k, {Rational(0), Rational(-(1L << m), m - 1)}, set_tail);

    std::vector<CubeSet> sets;
    for (auto& eps : cube_vertices(m)) {
        std::vector<CombineTerm> terms;
        int zeros = 0;
        int ones = 0;
        for (int j = 0; j < m; ++j) {
            if (eps[static_cast<std::size_t>(j)] == 0) {
                terms.push_back({1, b_sets[static_cast<std::size_t>(j)]});
                ++zeros;
            } else {
                ++ones;
            }
        }
        DigitSetSpec spec = zeros == 0 ? b : [&] {
            terms.push_back({-(zeros - 1), b});
            return alphabet_combine(terms, set_tail);
        }();
        mpz_class bound;
        const int bound_exponent = ones <= m - 2 ? (m - ones + 1) * k : k;
        mpz_ui_pow_ui(bound.get_mpz_t(), 2, static_cast<unsigned long>(bound_exponent));
        mpz_class card = cardinality(spec);
        sets.push_back(CubeSet{std::move(eps), ones, std::move(spec), std::move(card), std::move(bound)});
    }

    std::vector<CombineTerm> c_terms;
    for (const auto& bj : b_sets) c_terms.push_back({1, bj});
    c_terms.push_back({-(m - 1), b});
    DigitSetSpec c_tilde = alphabet_combine(c_terms, Rational(0));
    DigitSetSpec c = c_tilde.with_tail(box_tail);

    return ScenarioCubes{m, k, std::move(b_sets), b, std::move(sets), std::move(c_tilde), std::move(c), set_tail, box_tail};
}

Threshold threshold(ThresholdKind kind) {
    switch (kind.family) {
        case ThresholdKind::Family::furstenberg:
            return {std::log(24.0) / std::log(12.0), std::nullopt};
        case ThresholdKind::Family::cubes: {
            const int m = kind.parameter;
            if (m < 3) throw std::invalid_argument("threshold: cubes require m >= 3");
            const Rational exact(Rational::pow(Rational(2), m - 1) + Rational(1)) ;
            const Rational value = exact / Rational(m + 1);
            return {value.to_double(), value};
        }
        case ThresholdKind::Family::degenerate: {
            const int r = kind.parameter;
            if (r < 2) throw std::invalid_argument("threshold: degenerate requires r >= 2");
            const Rational value(r, r - 1);
            return {value.to_double(), value};
        }
    }
    throw std::logic_error("bad threshold kind");
}

double furstenberg_p0_log6_form() {
    const double log6_2 = std::log(2.0) / std::log(6.0);
    return 1.0 + log6_2 / (1.0 + log6_2);
}

Rational cube_threshold_sum_form(int m) {
    if (m < 3) throw std::invalid_argument("cube_threshold_sum_form: m must be >= 3");
    mpz_class sum = 0;
    for (int l = 1; l <= m - 2; ++l) {
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(l));
        sum += binom * l;
    }
    return Rational(1) + Rational(sum, mpz_class(m * (m + 1)));
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::diverges: return "diverges";
        case Verdict::boundary: return "boundary";
        case Verdict::decays: return "decays";
    }
    return "?";
}

std::string to_string(SeriesKind kind) {
    switch (kind) {
        case SeriesKind::thm1: return "thm1";
        case SeriesKind::cubes: return "cubes";
        case SeriesKind::h3: return "h3";
    }
    return "?";
}

Verdict verdict_for(double asymptotic_ratio) {
    if (std::abs(asymptotic_ratio - 1.0) <= kBoundaryBand) return Verdict::boundary;
    return asymptotic_ratio > 1.0 ? Verdict::diverges : Verdict::decays;
}

double cube_exact_threshold(int m) {
    const ScenarioCubes family = cube_family(m, 1);
    const double ln2 = std::log(2.0);
    double numerator = 0.0;
    for (const auto& s : family.sets) {
        numerator += static_cast<double>(m + 1) * ln2 - std::log(static_cast<double>(s.spec.alphabet().size()));
    }
    return numerator / (static_cast<double>(m) * (m + 1) * ln2);
}

namespace {

void fill_step_ratios(BlowupSeries& series) {
    for (std::size_t i = 1; i < series.entries.size(); ++i) {
        series.entries[i].step_ratio = std::exp(series.entries[i].log_value - series.entries[i - 1].log_value);
    }
}

BlowupSeries thm1_series(const BlowupRequest& req) {
    const Normalization norm = req.normalization.value_or(Normalization::normalized);
    // ||1_S||_p^p = 1/(c * base^k) with c = 4 (normalized) or 2 (Lebesgue)
    const double c = norm == Normalization::normalized ? 4.0 : 2.0;
    BlowupSeries out{SeriesKind::thm1, req.p, 0, req.weighted, norm, req.mode, {}, 0.0, 0.0, Verdict::decays};
    for (int k = 1; k <= req.kmax; ++k) {
        const double kk = k;
        const double log_norms = -(std::log(c) * 3.0 + kk * std::log(24.0)) / req.p;
        const double log_level = -(std::log(32.0) + kk * std::log(12.0));
        double log_value = log_level - log_norms;
        if (req.weighted) log_value -= 6.0 * std::log(kk);
        out.entries.push_back({k, std::exp(log_value), log_value, std::exp(log_level), std::exp(log_norms), std::nullopt});
    }
    out.asymptotic_ratio = std::exp(std::log(24.0) / req.p - std::log(12.0));
    out.threshold = threshold(ThresholdKind::furstenberg()).value;
    return out;
}

BlowupSeries cubes_series(const BlowupRequest& req) {
    const int m = req.m;
    const ScenarioCubes base = cube_family(m, 1);
    const double ln2 = std::log(2.0);
    const double functions = static_cast<double>((1 << m) - 1);
    BlowupSeries out{SeriesKind::cubes, req.p, m, req.weighted, req.normalization.value_or(Normalization::lebesgue),
                     req.mode, {}, 0.0, 0.0, Verdict::decays};
    for (int k = 1; k <= req.kmax; ++k) {
        const double kk = k;
        const double log_scale = kk * (m + 1) * ln2;  // ln 2^{k(m+1)}
        const double log_lower = -static_cast<double>(m) * (std::log(static_cast<double>(m + 1)) + log_scale);
        double log_norms = 0.0;
        for (const auto& s : base.sets) {
            double log_card = 0.0;
            if (req.mode == CardinalityMode::bound) {
                const int exponent = s.ones <= m - 2 ? (m - s.ones + 1) * k : k;
                log_card = exponent * ln2;
            } else {
                log_card = log_mpz(cardinality(s.spec.with_depth(k)));
            }
            log_norms += (log_card - log_scale) / req.p;
        }
        double log_value = log_lower - log_norms;
        if (req.weighted) log_value -= 2.0 * functions * std::log(kk);
        out.entries.push_back({k, std::exp(log_value), log_value, std::exp(log_lower), std::exp(log_norms), std::nullopt});
    }
    double log_base = -static_cast<double>(m) * (m + 1) * ln2;
    for (const auto& s : base.sets) {
        const double log_alphabet = req.mode == CardinalityMode::bound
                                        ? (s.ones <= m - 2 ? (m - s.ones + 1) : 1) * ln2
                                        : std::log(static_cast<double>(s.spec.alphabet().size()));
        log_base += ((m + 1) * ln2 - log_alphabet) / req.p;
    }
    out.asymptotic_ratio = std::exp(log_base);
    out.threshold = req.mode == CardinalityMode::bound ? threshold(ThresholdKind::cubes(m)).value
                                                       : cube_exact_threshold(m);
    return out;
}

}  // namespace

BlowupSeries blowup_series(const BlowupRequest& request) {
    if (!(request.p >= 1.0)) throw std::invalid_argument("blowup_series: p must be >= 1");
    if (request.kmax < 1) throw std::invalid_argument("blowup_series: kmax must be >= 1");
    BlowupSeries out{};
    switch (request.kind) {
        case SeriesKind::thm1:
            out = thm1_series(request);
            break;
        case SeriesKind::cubes:
            out = cubes_series(request);
            break;
        case SeriesKind::h3:
            if (request.weighted) throw std::invalid_argument("blowup_series: h3 series has no weighted form");
            return h3_ratio_series(request.p, request.kmax, request.normalization.value_or(Normalization::lebesgue));
    }
    fill_step_ratios(out);
    out.verdict = verdict_for(out.asymptotic_ratio);
    return out;
}

}  // namespace divlab
