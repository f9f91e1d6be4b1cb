#include "cli.hpp"

#include "divlab/averages.hpp"
#include "divlab/constructions.hpp"
#include "divlab/hilbert.hpp"
#include "divlab/json_io.hpp"
#include "divlab/linear_forms.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace divlab::cli {

namespace {

using io::Json;

struct Artifact {
    int code = kOk;
    std::string text;
};

struct Common {
    std::string format = "json";
    std::string output;
};

Rational parse_rational(const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("invalid rational '" + text + "'");
    }
}

// Rational syntax first so that "5/4" works; scientific notation falls back to strtod.
double parse_real(const std::string& text) {
    try {
        return Rational::parse(text).to_double();
    } catch (const std::invalid_argument&) {
    }
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(value)) {
        throw std::invalid_argument("invalid number '" + text + "'");
    }
    return value;
}

std::vector<long> parse_longs(const std::string& text, char sep) {
    std::vector<long> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, sep)) {
        const Rational v = parse_rational(item);
        if (!v.is_integer() || !v.numerator().fits_slong_p()) {
            throw std::invalid_argument("expected an integer, got '" + item + "'");
        }
        out.push_back(v.numerator().get_si());
    }
    return out;
}

// "1;2;3" or "2,0;0,2;1,1": rows separated by ';', entries by ','.
IntMatrix parse_matrix(const std::string& text) {
    IntMatrix out;
    std::stringstream in(text);
    std::string row;
    while (std::getline(in, row, ';')) out.push_back(parse_longs(row, ','));
    return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void require_format(const Common& c) {
    if (c.format != "json" && c.format != "csv") throw std::invalid_argument("--format must be json or csv");
}

Json window_json(const Interval& w) { return Json::array({w.lo.str(), w.hi.str()}); }

Rational level_for(int k) { return Rational(1) / (Rational(8) * Rational::pow(12, k)); }

// ---- construct-thm1 / construct-cubes -------------------------------------

Artifact construct_thm1(const Common& c, int k) {
    if (k < 1) throw std::invalid_argument("--k must be >= 1");
    const ScenarioThm1 s = furstenberg_family(k);
    if (c.format == "json") return {kOk, dump(io::to_json(s))};
    std::ostringstream out;
    out << "set,lo,hi\n";
    for (auto [name, which] : {std::pair{"A", TripleSet::A}, {"B", TripleSet::B}, {"C", TripleSet::C},
                               {"D", TripleSet::D}}) {
        for (const auto& piece : s.set(which).intervals()) out << name << ',' << piece.lo.str() << ',' << piece.hi.str() << '\n';
    }
    return {kOk, out.str()};
}

Artifact construct_cubes(const Common& c, int m, int k) {
    const ScenarioCubes s = cube_family(m, k);
    if (c.format == "json") return {kOk, dump(io::to_json(s))};
    std::ostringstream out;
    out << "epsilon,ones,cardinality,bound\n";
    for (const auto& cs : s.sets) {
        out << vertex_label(cs.eps) << ',' << cs.ones << ',' << cs.cardinality.get_str() << ','
            << cs.cardinality_bound.get_str() << '\n';
    }
    return {kOk, out.str()};
}

// ---- verify-claim ---------------------------------------------------------

struct ClaimOptions {
    int k = 1;
    std::string lambda;
    std::string window_lo = "-1";
    std::string window_hi = "0";
};

Artifact verify_claim(const Common& c, const ClaimOptions& o) {
    if (o.k < 1) throw std::invalid_argument("--k must be >= 1");
    const ScenarioThm1 s = furstenberg_family(o.k);
    const Rational lambda = o.lambda.empty() ? s.lambda : parse_rational(o.lambda);
    const Interval window(parse_rational(o.window_lo), parse_rational(o.window_hi));
    const SweepResult sweep = superlevel_set({s.set_a, s.set_b, s.set_c}, {1, 2, 3}, lambda, window);
    const IntervalUnion d_inside = intersect(s.set_d, IntervalUnion::single(window.lo, window.hi));
    const Rational required = d_inside.measure();
    const bool contained = subset(d_inside, sweep.superlevel);
    const bool enough = sweep.superlevel_measure >= required;
    const bool verified = contained && enough;
    if (c.format == "csv") return {verified ? kOk : kVerificationFailed, io::to_csv(sweep.function)};
    Json j{{"k", o.k},
           {"lambda", lambda.str()},
           {"window", window_json(window)},
           {"measure", sweep.superlevel_measure.str()},
           {"measure_real", io::real(sweep.superlevel_measure.to_double())},
           {"required_measure", required.str()},
           {"d_contained", contained},
           {"measure_at_least_required", enough},
           {"meets_one_eighth", sweep.superlevel_measure >= Rational(1, 8)},
           {"meets_one_sixteenth", sweep.superlevel_measure >= Rational(1, 16)},
           {"verified", verified},
           {"breakpoints", sweep.function.breakpoints().size()},
           {"superlevel", io::to_json(sweep.superlevel)}};
    return {verified ? kOk : kVerificationFailed, dump(j)};
}

// ---- find-nk --------------------------------------------------------------

struct FindOptions {
    int k = 1;
    std::string lambda;
    std::string target = "1/9";
    long start = 0;
    long step = 0;
    long max_n = 10000;
    std::string topology = "line";
};

Artifact find_nk(const Common& c, const FindOptions& o) {
    if (o.k < 1) throw std::invalid_argument("--k must be >= 1");
    const Rational lambda = o.lambda.empty() ? level_for(o.k) / Rational(2) : parse_rational(o.lambda);
    const Rational target = parse_rational(o.target);
    const Rational grid = Rational(8) * Rational::pow(12, o.k);
    const long start = o.start > 0 ? o.start : grid.numerator().get_si();
    const long step = o.step > 0 ? o.step : start;
    Topology topology;
    if (o.topology == "circle") {
        topology = Topology::circle();
    } else if (o.topology != "line") {
        throw std::invalid_argument("--topology must be line or circle");
    }
    const RiemannSearch r = find_riemann_n(o.k, lambda, target, start, step, o.max_n, topology);
    const int code = r.n ? kOk : kVerificationFailed;
    if (c.format == "csv") {
        std::ostringstream out;
        out << "N,measure,measure_real\n";
        for (const auto& [n, m] : r.tried) out << n << ',' << m.str() << ',' << io::format_real(m.to_double()) << '\n';
        return {code, out.str()};
    }
    Json tried = Json::array();
    for (const auto& [n, m] : r.tried) tried.push_back(Json{{"n", n}, {"measure", m.str()}});
    Json j{{"k", o.k},
           {"lambda", lambda.str()},
           {"target", target.str()},
           {"topology", o.topology},
           {"search", Json{{"start", start}, {"step", step}, {"max_n", o.max_n}}},
           {"n", r.n ? Json(*r.n) : Json(nullptr)},
           {"measure", r.measure.str()},
           {"measure_real", io::real(r.measure.to_double())},
           {"tried", tried}};
    return {code, dump(j)};
}

// ---- verify-cubes ---------------------------------------------------------

Artifact verify_cubes(const Common& c, int m, int k, const std::string& tamper) {
    const ScenarioCubes s = cube_family(m, k);
    std::optional<Rational> t_box;
    if (!tamper.empty()) {
        const Rational factor = parse_rational(tamper);
        if (factor.sign() <= 0) throw std::invalid_argument("--tamper-t-tail must be positive");
        t_box = s.box_tail * factor;
    }
    const CubeCertificate cert = cube_certificate_check(s, t_box);
    const Rational c_measure = materialize(s.c).measure();
    bool bounds_ok = true;
    Json cards = Json::array();
    for (const auto& cs : s.sets) {
        const bool ok = cs.cardinality <= cs.cardinality_bound;
        bounds_ok = bounds_ok && ok;
        cards.push_back(Json{{"epsilon", vertex_label(cs.eps)},
                             {"cardinality", cs.cardinality.get_str()},
                             {"bound", cs.cardinality_bound.get_str()},
                             {"within_bound", ok}});
    }
    const bool measure_ok = c_measure == Rational(1, m + 1);
    const bool verified = cert.all_pass && bounds_ok && measure_ok;
    const int code = verified ? kOk : kVerificationFailed;
    if (c.format == "csv") {
        std::ostringstream out;
        out << "x,epsilon,member,pass,margin\n";
        for (const auto& e : cert.entries) {
            out << e.x.str() << ',' << vertex_label(e.eps) << ',' << e.member << ',' << e.pass << ','
                << e.margin.str() << '\n';
        }
        return {code, out.str()};
    }
    Json j{{"m", m},
           {"k", k},
           {"measure_C", c_measure.str()},
           {"measure_C_ok", measure_ok},
           {"cardinalities", cards},
           {"cardinalities_ok", bounds_ok},
           {"tampered", t_box.has_value()},
           {"verified", verified},
           {"certificate", io::to_json(cert)}};
    return {code, dump(j)};
}

// ---- blowup ---------------------------------------------------------------

struct BlowupOptions {
    std::string kind = "thm1";
    std::string p;
    int kmax = 5;
    int m = 3;
    bool weighted = false;
    std::string mode = "exact";
    std::string normalization;
};

Artifact blowup(const Common& c, const BlowupOptions& o) {
    BlowupRequest req;
    if (o.kind == "thm1") {
        req.kind = SeriesKind::thm1;
    } else if (o.kind == "cubes") {
        req.kind = SeriesKind::cubes;
    } else if (o.kind == "h3") {
        req.kind = SeriesKind::h3;
    } else {
        throw std::invalid_argument("--kind must be thm1, cubes or h3");
    }
    if (o.mode != "exact" && o.mode != "bound") throw std::invalid_argument("--mode must be exact or bound");
    req.p = parse_real(o.p);
    req.kmax = o.kmax;
    req.m = o.m;
    req.weighted = o.weighted;
    req.mode = o.mode == "exact" ? CardinalityMode::exact : CardinalityMode::bound;
    if (!o.normalization.empty()) req.normalization = parse_normalization(o.normalization);
    const BlowupSeries s = blowup_series(req);
    return {kOk, c.format == "json" ? dump(io::to_json(s)) : io::to_csv(s)};
}

// ---- h3-eval --------------------------------------------------------------

Artifact h3_eval(const Common& c, int k, const std::vector<std::string>& xs) {
    if (k < 1) throw std::invalid_argument("--k must be >= 1");
    const ScenarioThm1 s = furstenberg_family(k);
    std::vector<Rational> points;
    if (xs.empty()) {
        for (auto& x : base_points(s.spec_d)) {
            if (x.sign() < 0) points.push_back(std::move(x));
        }
    } else {
        for (const auto& x : xs) points.push_back(parse_rational(x));
    }
    const Rational level = s.lambda;
    std::vector<H3Evaluation> evals;
    evals.reserve(points.size());
    for (const auto& x : points) evals.push_back(h3_exact(x, s.set_a, s.set_b, s.set_c));

    if (c.format == "csv") {
        std::ostringstream out;
        out << "x,infinite,value,lower_bound\n";
        for (const auto& e : evals) {
            out << e.x.str() << ',' << e.infinite << ',' << (e.infinite ? "inf" : io::format_real(e.value)) << ','
                << e.lower_bound.str() << '\n';
        }
        return {kOk, out.str()};
    }
    Json items = Json::array();
    bool all = true;
    for (const auto& e : evals) {
        Json item = io::to_json(e);
        const bool chain = e.lower_bound >= level && (e.infinite || e.value >= e.lower_bound.to_double());
        all = all && chain;
        item["meets_level"] = chain;
        items.push_back(std::move(item));
    }
    Json j{{"k", k}, {"level", level.str()}, {"all_meet_level", all}, {"evaluations", items}};
    return {kOk, dump(j)};
}

// ---- degenerate -----------------------------------------------------------

struct DegenerateOptions {
    long big_m = 100;
    std::string q = "0.4";
    std::vector<std::string> big_l{"100", "1000", "10000"};
    int r = 0;
    std::string b;
    std::string p;
};

Artifact degenerate(const Common& c, const DegenerateOptions& o) {
    std::vector<double> ls;
    for (const auto& l : o.big_l) ls.push_back(parse_real(l));
    Json rows = Json::array();
    std::ostringstream csv;
    Json head;
    if (o.r == 0) {
        const double q = parse_real(o.q);
        head = Json{{"mode", "squares"}, {"M", o.big_m}, {"p4prime", io::real(q)},
                    {"lower_bound_at_0", io::real(degenerate_lower_bound(o.big_m, 0.0))}};
        csv << "L,ratio,truncated_integral\n";
        for (double l : ls) {
            const DegenerateRatio d = degenerate_ratio(o.big_m, q, l);
            rows.push_back(Json{{"L", io::real(l)}, {"ratio", io::real(d.ratio)},
                                {"truncated_integral", io::real(d.truncated_integral)}});
            csv << io::format_real(l) << ',' << io::format_real(d.ratio) << ',' << io::format_real(d.truncated_integral)
                << '\n';
        }
    } else {
        if (o.p.empty()) throw std::invalid_argument("--p is required with --r");
        const std::vector<long> b = parse_longs(o.b, ',');
        const double p = parse_real(o.p);
        head = Json{{"mode", "general"}, {"r", o.r}, {"b", b}, {"M", o.big_m}, {"p", io::real(p)},
                    {"threshold", Rational(o.r, o.r - 1).str()}};
        csv << "L,ratio,truncated_integral,growth_exponent,grows\n";
        for (double l : ls) {
            const GeneralizedDegenerateRatio d = generalized_degenerate_ratio(o.r, b, o.big_m, p, l);
            rows.push_back(Json{{"L", io::real(l)}, {"ratio", io::real(d.ratio)},
                                {"truncated_integral", io::real(d.truncated_integral)},
                                {"growth_exponent", io::real(d.growth_exponent)}, {"grows", d.grows}});
            csv << io::format_real(l) << ',' << io::format_real(d.ratio) << ',' << io::format_real(d.truncated_integral)
                << ',' << io::format_real(d.growth_exponent) << ',' << d.grows << '\n';
        }
    }
    if (c.format == "csv") return {kOk, csv.str()};
    head["rows"] = rows;
    return {kOk, dump(head)};
}

// ---- classify -------------------------------------------------------------

Artifact classify_cmd(const Common& c, const std::string& matrix) {
    const IntMatrix a = parse_matrix(matrix);
    const Classification cl = classify(a);
    if (c.format == "json") return {kOk, dump(io::to_json(cl, a))};
    std::ostringstream out;
    out << "scenario,r,t_rank,predicted_p_bound\n"
        << to_string(cl.scenario) << ',' << (cl.witness ? std::to_string(cl.witness->r) : "") << ','
        << (cl.witness ? std::to_string(cl.t_rank) : "") << ',' << (cl.p_bound ? cl.p_bound->str() : "") << '\n';
    return {kOk, out.str()};
}

// ---- thresholds -----------------------------------------------------------

Artifact thresholds(const Common& c, int m, int r) {
    if (m < 3) throw std::invalid_argument("--m must be >= 3");
    if (r < 2) throw std::invalid_argument("--r must be >= 2");
    const Threshold f = threshold(ThresholdKind::furstenberg());
    const Threshold cube = threshold(ThresholdKind::cubes(m));
    const Threshold deg = threshold(ThresholdKind::degenerate(r));
    const std::string cube_key = "cubes(" + std::to_string(m) + ")";
    const std::string deg_key = "degenerate(" + std::to_string(r) + ")";
    if (c.format == "csv") {
        std::ostringstream out;
        out << "kind,exact,value\n"
            << "furstenberg,," << io::format_real(f.value) << '\n'
            << '"' << cube_key << "\"," << cube.exact->str() << ',' << io::format_real(cube.value) << '\n'
            << '"' << deg_key << "\"," << deg.exact->str() << ',' << io::format_real(deg.value) << '\n';
        return {kOk, out.str()};
    }
    Json j{{"furstenberg", io::real(f.value)},
           {cube_key, cube.exact->str()},
           {deg_key, deg.exact->str()},
           {"details",
            Json{{"furstenberg_log6_form", io::real(furstenberg_p0_log6_form())},
                 {cube_key, io::to_json(cube)},
                 {cube_key + "_sum_form", cube_threshold_sum_form(m).str()},
                 {cube_key + "_exact_cardinalities", io::real(cube_exact_threshold(m))},
                 {deg_key, io::to_json(deg)}}}};
    return {kOk, dump(j)};
}

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--format", c.format, "json or csv")->capture_default_str();
    sub->add_option("--output,-o", c.output, "write the artifact to this file instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact digit-set counterexamples for multilinear averages", "divlab"};
    app.require_subcommand(1);
    Common common;
    std::function<Artifact()> action;

    int k = 1;
    int m = 3;
    auto* thm1 = app.add_subcommand("construct-thm1", "radix-12 sets A, B, C, D at depth k");
    thm1->add_option("--k", k)->capture_default_str();
    add_common(thm1, common);
    thm1->callback([&] { action = [&] { return construct_thm1(common, k); }; });

    auto* cubes = app.add_subcommand("construct-cubes", "cube family sets for dimension m at depth k");
    cubes->add_option("--m", m)->capture_default_str();
    cubes->add_option("--k", k)->capture_default_str();
    add_common(cubes, common);
    cubes->callback([&] { action = [&] { return construct_cubes(common, m, k); }; });

    ClaimOptions claim;
    auto* vc = app.add_subcommand("verify-claim", "exact superlevel sweep of the triple average");
    vc->add_option("--k", claim.k)->capture_default_str();
    vc->add_option("--lambda", claim.lambda, "level (default 1/(8*12^k))");
    vc->add_option("--window-lo", claim.window_lo)->capture_default_str();
    vc->add_option("--window-hi", claim.window_hi)->capture_default_str();
    add_common(vc, common);
    vc->callback([&] { action = [&] { return verify_claim(common, claim); }; });

    FindOptions find;
    auto* fn = app.add_subcommand("find-nk", "smallest Riemann N certifying the discrete superlevel bound");
    fn->add_option("--k", find.k)->capture_default_str();
    fn->add_option("--lambda", find.lambda, "level (default 1/(16*12^k))");
    fn->add_option("--target", find.target)->capture_default_str();
    fn->add_option("--start", find.start, "first N (default 8*12^k)");
    fn->add_option("--step", find.step, "progression step (default: start)");
    fn->add_option("--max-n", find.max_n)->capture_default_str();
    fn->add_option("--topology", find.topology, "line or circle")->capture_default_str();
    add_common(fn, common);
    fn->callback([&] { action = [&] { return find_nk(common, find); }; });

    std::string tamper;
    auto* vcub = app.add_subcommand("verify-cubes", "certificate boxes for the cube family");
    vcub->add_option("--m", m)->capture_default_str();
    vcub->add_option("--k", k)->capture_default_str();
    vcub->add_option("--tamper-t-tail", tamper, "multiply the t-box side by this factor");
    add_common(vcub, common);
    vcub->callback([&] { action = [&] { return verify_cubes(common, m, k, tamper); }; });

    BlowupOptions bl;
    auto* bu = app.add_subcommand("blowup", "blow-up series and threshold verdict");
    bu->add_option("--kind", bl.kind, "thm1, cubes or h3")->capture_default_str();
    bu->add_option("--p", bl.p, "exponent p >= 1")->required();
    bu->add_option("--kmax", bl.kmax)->capture_default_str();
    bu->add_option("--m", bl.m, "cube dimension")->capture_default_str();
    bu->add_flag("--weighted", bl.weighted, "include the polynomial weights");
    bu->add_option("--mode", bl.mode, "cube cardinalities: exact or bound")->capture_default_str();
    bu->add_option("--normalization", bl.normalization, "lebesgue or normalized");
    add_common(bu, common);
    bu->callback([&] { action = [&] { return blowup(common, bl); }; });

    std::vector<std::string> xs;
    auto* h3 = app.add_subcommand("h3-eval", "exact trilinear Hilbert transform on the depth-k sets");
    h3->add_option("--k", k)->capture_default_str();
    h3->add_option("--x", xs, "evaluation points (default: base points of D below 0)");
    add_common(h3, common);
    h3->callback([&] { action = [&] { return h3_eval(common, k, xs); }; });

    DegenerateOptions deg;
    auto* dg = app.add_subcommand("degenerate", "lower-bound ratios for degenerate averages");
    dg->add_option("--M", deg.big_m)->capture_default_str();
    dg->add_option("--p4prime", deg.q, "exponent of the target space, in (0, 1)")->capture_default_str();
    dg->add_option("--L", deg.big_l, "truncation radii")->capture_default_str();
    dg->add_option("--r", deg.r, "number of forms for the general construction");
    dg->add_option("--b", deg.b, "comma-separated coefficients of the last form");
    dg->add_option("--p", deg.p, "exponent p for the general construction");
    add_common(dg, common);
    dg->callback([&] { action = [&] { return degenerate(common, deg); }; });

    std::string matrix;
    auto* cl = app.add_subcommand("classify", "scenario of a linear-forms matrix");
    cl->add_option("--matrix", matrix, "rows separated by ';', entries by ','")->required();
    add_common(cl, common);
    cl->callback([&] { action = [&] { return classify_cmd(common, matrix); }; });

    int r = 3;
    auto* th = app.add_subcommand("thresholds", "critical exponents");
    th->add_option("--m", m)->capture_default_str();
    th->add_option("--r", r)->capture_default_str();
    add_common(th, common);
    th->callback([&] { action = [&] { return thresholds(common, m, r); }; });

    if (!args.empty() && !args.front().starts_with('-')) {
        const auto subs = app.get_subcommands([](CLI::App*) { return true; });
        const bool known = std::any_of(subs.begin(), subs.end(), [&](CLI::App* s) { return s->get_name() == args.front(); });
        if (!known) {
            err << "error: unknown command '" << args.front() << "'\n";
            return kUsage;
        }
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    Artifact artifact;
    try {
        require_format(common);
        artifact = action();
    } catch (const std::exception& e) {
        std::string what = e.what();
        std::replace(what.begin(), what.end(), '\n', ' ');
        err << "error: " << what << '\n';
        return kUsage;
    }

    if (common.output.empty()) {
        out << artifact.text;
    } else {
        std::ofstream file(common.output, std::ios::binary);
        file << artifact.text;
        if (!file) {
            err << "error: cannot write " << common.output << '\n';
            return kUsage;
        }
    }
    if (artifact.code == kVerificationFailed) err << "verification failed\n";
    return artifact.code;
}

}  // namespace divlab::cli
