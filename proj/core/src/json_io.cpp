#include "divlab/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace divlab::io {

double round15(double x) {
    if (!std::isfinite(x)) return x;
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.15g", x);
    return std::strtod(buffer, nullptr);
}

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.15g", x);
    return buffer;
}

Json real(double x) {
    if (!std::isfinite(x)) return nullptr;
    return round15(x);
}

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw std::invalid_argument("expected a rational string \"num/den\"");
}

Json to_json(const IntervalUnion& u) {
    Json out = Json::array();
    for (const auto& piece : u.intervals()) out.push_back(Json::array({piece.lo.str(), piece.hi.str()}));
    return out;
}

IntervalUnion interval_union_from_json(const Json& j) {
    std::vector<std::pair<Rational, Rational>> pairs;
    for (const auto& item : j) {
        if (!item.is_array() || item.size() != 2) throw std::invalid_argument("interval must be a [lo, hi] pair");
        pairs.emplace_back(rational_from_json(item[0]), rational_from_json(item[1]));
    }
    return IntervalUnion::normalize(pairs);
}

Json to_json(const DigitSetSpec& spec) {
    Json alphabet = Json::array();
    for (const auto& d : spec.alphabet()) alphabet.push_back(d.str());
    return Json{{"radix", spec.radix()}, {"depth", spec.depth()}, {"alphabet", alphabet}, {"tail", spec.tail().str()}};
}

DigitSetSpec digit_set_from_json(const Json& j) {
    std::vector<Rational> alphabet;
    for (const auto& d : j.at("alphabet")) alphabet.push_back(rational_from_json(d));
    return {j.at("radix").get<int>(), j.at("depth").get<int>(), std::move(alphabet), rational_from_json(j.at("tail"))};
}

Json to_json(const ScenarioThm1& s) {
    Json sets;
    sets["A"] = to_json(s.spec_a);
    sets["B"] = to_json(s.spec_b);
    sets["C"] = to_json(s.spec_c);
    sets["D"] = to_json(s.spec_d);
    Json measures;
    Json normalized;
    const std::pair<const char*, TripleSet> names[] = {
        {"A", TripleSet::A}, {"B", TripleSet::B}, {"C", TripleSet::C}, {"D", TripleSet::D}};
    for (const auto& [name, which] : names) {
        measures[name] = s.measure(which, Normalization::lebesgue).str();
        normalized[name] = s.measure(which, Normalization::normalized).str();
    }
    return Json{{"kind", "thm1"},  {"k", s.k}, {"sets", sets}, {"measures", measures}, {"measures_normalized", normalized},
                {"lambda", s.lambda.str()}};
}

ScenarioThm1 thm1_from_json(const Json& j) {
    if (j.at("kind") != "thm1") throw std::invalid_argument("scenario kind is not thm1");
    const auto& sets = j.at("sets");
    DigitSetSpec a = digit_set_from_json(sets.at("A"));
    DigitSetSpec b = digit_set_from_json(sets.at("B"));
    DigitSetSpec c = digit_set_from_json(sets.at("C"));
    DigitSetSpec d = digit_set_from_json(sets.at("D"));
    IntervalUnion ua = materialize(a);
    IntervalUnion ub = materialize(b);
    IntervalUnion uc = materialize(c);
    IntervalUnion ud = materialize(d);
    return ScenarioThm1{j.at("k").get<int>(), std::move(a), std::move(b), std::move(c), std::move(d), std::move(ua),
                        std::move(ub), std::move(uc), std::move(ud), rational_from_json(j.at("lambda"))};
}

Json to_json(const ScenarioCubes& s) {
    Json sets;
    for (std::size_t j = 0; j < s.b_sets.size(); ++j) sets["B_" + std::to_string(j + 1)] = to_json(s.b_sets[j]);
    sets["B"] = to_json(s.b);
    for (const auto& cs : s.sets) sets["A~" + vertex_label(cs.eps)] = to_json(cs.spec);
    sets["C~"] = to_json(s.c_tilde);
    sets["C"] = to_json(s.c);
    Json cards;
    Json bounds;
    for (const auto& cs : s.sets) {
        cards[vertex_label(cs.eps)] = cs.cardinality.get_str();
        bounds[vertex_label(cs.eps)] = cs.cardinality_bound.get_str();
    }
    const Rational c_measure = materialize(s.c).measure();
    return Json{{"kind", "cubes"},
                {"k", s.k},
                {"m", s.m},
                {"sets", sets},
                {"measures", Json{{"C", c_measure.str()}}},
                {"cardinalities", cards},
                {"cardinality_bounds", bounds},
                {"set_tail", s.set_tail.str()},
                {"box_tail", s.box_tail.str()},
                {"lambda", Rational::pow(s.box_tail, s.m).str()}};
}

ScenarioCubes cubes_from_json(const Json& j) {
    if (j.at("kind") != "cubes") throw std::invalid_argument("scenario kind is not cubes");
    const int m = j.at("m").get<int>();
    const int k = j.at("k").get<int>();
    const auto& sets = j.at("sets");
    std::vector<DigitSetSpec> b_sets;
    for (int i = 1; i <= m; ++i) b_sets.push_back(digit_set_from_json(sets.at("B_" + std::to_string(i))));
    DigitSetSpec b = digit_set_from_json(sets.at("B"));
    std::vector<CubeSet> cube_sets;
    for (auto& eps : cube_vertices(m)) {
        const std::string label = vertex_label(eps);
        DigitSetSpec spec = digit_set_from_json(sets.at("A~" + label));
        mpz_class card(j.at("cardinalities").at(label).get<std::string>());
        mpz_class bound(j.at("cardinality_bounds").at(label).get<std::string>());
        int ones = 0;
        for (int e : eps) ones += e;
        cube_sets.push_back(CubeSet{std::move(eps), ones, std::move(spec), std::move(card), std::move(bound)});
    }
    return ScenarioCubes{m,
                         k,
                         std::move(b_sets),
                         std::move(b),
                         std::move(cube_sets),
                         digit_set_from_json(sets.at("C~")),
                         digit_set_from_json(sets.at("C")),
                         rational_from_json(j.at("set_tail")),
                         rational_from_json(j.at("box_tail"))};
}

Json to_json(const SweepResult& s) {
    Json points = Json::array();
    const auto& xs = s.function.breakpoints();
    const auto& ys = s.function.values();
    for (std::size_t i = 0; i < xs.size(); ++i) points.push_back(Json::array({xs[i].str(), ys[i].str()}));
    return Json{{"breakpoints", points},
                {"superlevel", to_json(s.superlevel)},
                {"measure", s.superlevel_measure.str()},
                {"measure_real", real(s.superlevel_measure.to_double())}};
}

std::string to_csv(const PiecewiseLinear& f) {
    std::ostringstream out;
    out << "x,F,x_real,F_real\n";
    for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
        out << f.breakpoints()[i].str() << ',' << f.values()[i].str() << ','
            << format_real(f.breakpoints()[i].to_double()) << ',' << format_real(f.values()[i].to_double()) << '\n';
    }
    return out.str();
}

Json to_json(const DiscreteSweepResult& s) {
    return Json{{"superlevel", to_json(s.superlevel)},
                {"measure", s.superlevel_measure.str()},
                {"measure_real", real(s.superlevel_measure.to_double())}};
}

std::string to_csv(const StepFunction& g) {
    std::ostringstream out;
    out << "x_from,x_to,G\n";
    for (std::size_t i = 0; i < g.values().size(); ++i) {
        out << g.breakpoints()[i].str() << ',' << g.breakpoints()[i + 1].str() << ',' << g.values()[i].str() << '\n';
    }
    return out.str();
}

Json to_json(const CubeCertificate& c) {
    Json entries = Json::array();
    for (const auto& e : c.entries) {
        entries.push_back(Json{{"x", e.x.str()},
                               {"epsilon", vertex_label(e.eps)},
                               {"member", e.member},
                               {"pass", e.pass},
                               {"margin", e.margin.str()}});
    }
    return Json{{"all_pass", c.all_pass},
                {"x_box", c.x_box.str()},
                {"t_box", c.t_box.str()},
                {"integral_lower_bound", c.integral_lower_bound.str()},
                {"checks", c.entries.size()},
                {"entries", entries}};
}

namespace {

Json matrix_json(const IntMatrix& a) {
    Json out = Json::array();
    for (const auto& row : a) out.push_back(row);
    return out;
}

Json rationals_json(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

}  // namespace

Json to_json(const Classification& c, const IntMatrix& a) {
    const RankAnalysis ranks = analyze(a);
    Json out{{"matrix", matrix_json(a)},
             {"extended_matrix", matrix_json(ranks.extended)},
             {"rank", ranks.rank_extended},
             {"rank_a", ranks.rank_a},
             {"scenario", to_string(c.scenario)}};
    if (c.witness) {
        out["r"] = c.witness->r;
        out["witness"] = Json{{"indices", c.witness->indices}, {"dependence", rationals_json(c.witness->dependence)}};
        out["t_rank"] = c.t_rank;
    } else {
        out["r"] = nullptr;
        out["witness"] = nullptr;
    }
    out["predicted_p_bound"] = c.p_bound ? Json(c.p_bound->str()) : Json(nullptr);
    out["predicted_p_bound_real"] = c.p_bound ? real(c.p_bound->to_double()) : Json(nullptr);
    if (c.reduced) {
        Json coeffs = Json::array();
        for (const auto& row : c.reduced->coefficients) coeffs.push_back(rationals_json(row));
        out["reduced_operator"] =
            Json{{"basis", c.reduced->basis}, {"expressed", c.reduced->expressed}, {"coefficients", coeffs}};
    }
    return out;
}

Json to_json(const BlowupSeries& s) {
    Json entries = Json::array();
    for (const auto& e : s.entries) {
        entries.push_back(Json{{"k", e.k},
                               {"value", real(e.value)},
                               {"log_value", real(e.log_value)},
                               {"lower_bound", real(e.lower_bound)},
                               {"norm_product", real(e.norm_product)},
                               {"step_ratio", e.step_ratio ? real(*e.step_ratio) : Json(nullptr)}});
    }
    Json out{{"kind", to_string(s.kind)}, {"p", real(s.p)}};
    if (s.kind == SeriesKind::cubes) {
        out["m"] = s.m;
        out["cardinality_mode"] = s.mode == CardinalityMode::exact ? "exact" : "bound";
    }
    out["weighted"] = s.weighted;
    out["normalization"] = to_string(s.normalization);
    out["asymptotic_ratio"] = real(s.asymptotic_ratio);
    out["threshold"] = real(s.threshold);
    out["verdict"] = to_string(s.verdict);
    out["certificate"] = s.verdict == Verdict::diverges ? "divergence" : "none";
    out["entries"] = entries;
    return out;
}

std::string to_csv(const BlowupSeries& s) {
    std::ostringstream out;
    const std::string verdict = to_string(s.verdict);
    if (s.kind == SeriesKind::h3) {
        out << "k,lower_norm_bound,product_of_norms,ratio,step_ratio,verdict\n";
        for (const auto& e : s.entries) {
            out << e.k << ',' << format_real(e.lower_bound) << ',' << format_real(e.norm_product) << ','
                << format_real(e.value) << ',' << (e.step_ratio ? format_real(*e.step_ratio) : "") << ',' << verdict
                << '\n';
        }
    } else {
        out << "index,value,step_ratio,verdict\n";
        for (const auto& e : s.entries) {
            out << e.k << ',' << format_real(e.value) << ',' << (e.step_ratio ? format_real(*e.step_ratio) : "") << ','
                << verdict << '\n';
        }
    }
    return out.str();
}

Json to_json(const H3Evaluation& e) {
    return Json{{"x", e.x.str()},
                {"support", to_json(e.support)},
                {"infinite", e.infinite},
                {"value", e.infinite ? Json(nullptr) : real(e.value)},
                {"lower_bound", e.lower_bound.str()},
                {"lower_bound_real", real(e.lower_bound.to_double())}};
}

Json to_json(const Threshold& t) {
    if (t.exact) return Json{{"exact", t.exact->str()}, {"value", real(t.value)}};
    return Json{{"value", real(t.value)}};
}

}  // namespace divlab::io
