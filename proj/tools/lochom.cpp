// lochom: local homology inference from point samples.

#include "lochom/explorer.hpp"
#include "lochom/io.hpp"
#include "lochom/pipeline.hpp"
#include "lochom/scales.hpp"
#include "lochom/selfcheck.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace lochom;

namespace {

enum ExitCode
{
    exit_ok = 0,
    exit_failure = 1,
    exit_validation = 2,
    exit_infeasible = 3,
    exit_mismatch = 4
};

class ValidationError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const char* what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    for (std::string f; std::getline(ss, f, ',');) {
        char* end = nullptr;
        double v = std::strtod(f.c_str(), &end);
        if (f.empty() || *end != '\0') throw ValidationError(std::string("bad number in ") + what + ": '" + f + "'");
        out.push_back(v);
    }
    return out;
}

Point parse_point(const std::string& text, const char* what)
{
    auto c = parse_list(text, what);
    if (c.empty()) throw ValidationError(std::string(what) + " needs coordinates");
    return Point(std::move(c));
}

double parse_constant(const std::string& text, const char* what)
{
    if (text == "sqrt2") return std::numbers::sqrt2;
    if (text == "1") return 1.0;
    if (text == "2") return 2.0;
    throw ValidationError(std::string(what) + " must be 1, sqrt2 or 2");
}

void emit(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

// -- shape options ----------------------------------------------------------

struct ShapeOptions
{
    std::string kind = "circle-chord";
    double radius = 1.0;
    std::string a = "0,0";
    std::string b = "1,0";

    void add(CLI::App* app)
    {
        app->add_option("--shape", kind, "circle, circle-chord or segment")
            ->check(CLI::IsMember({"circle", "circle-chord", "segment"}));
        app->add_option("--radius", radius, "circle radius");
        app->add_option("--a", a, "segment start, e.g. 0,0");
        app->add_option("--b", b, "segment end, e.g. 1,0");
    }

    StratifiedShape build() const
    {
        if (kind == "circle") return StratifiedShape::circle(radius);
        if (kind == "segment") return StratifiedShape::segment(parse_point(a, "--a"), parse_point(b, "--b"));
        return StratifiedShape::circle_chord();
    }
};

// -- scale options ----------------------------------------------------------

struct ScaleOptions
{
    std::string regime = "manual";
    std::optional<double> eps;
    std::string c = "sqrt2";
    std::string s = "sqrt2";
    std::optional<int> t;
    std::optional<double> scale1, scale2, ball_R, ball_r;
    std::optional<double> rbar, Rbar, M, m, M0, nu, w, R, r;

    void add(CLI::App* app, bool select_flag)
    {
        auto* opt = app->add_option(select_flag ? "--select" : "--regime", regime,
                                    "strong, bounded, manifold or manual");
        opt->check(CLI::IsMember({"strong", "bounded", "manifold", "manual"}));
        app->add_option("--eps", eps, "sampling bound (defaults to the sample metadata)");
        app->add_option("--c", c, "1 (Cech) or s (Rips): 1, sqrt2 or 2");
        app->add_option("--s", s, "sqrt2 (Euclidean) or 2");
        app->add_option("--t", t, "1 for noisy samples, 0 otherwise")->check(CLI::Range(0, 1));
        app->add_option("--scale1", scale1, "manual: first complex scale");
        app->add_option("--scale2", scale2, "manual: second complex scale");
        app->add_option("--ball-R", ball_R, "manual: first deleted-ball radius");
        app->add_option("--ball-r", ball_r, "manual: second deleted-ball radius");
        app->add_option("--rbar", rbar, "strong: r-bar at beta");
        app->add_option("--Rbar", Rbar, "strong: R-bar at beta");
        app->add_option("--M", M, "bounded: r-bar(beta) <= M beta^m");
        app->add_option("--m", m, "bounded: exponent");
        app->add_option("--M0", M0, "bounded: R-bar at eps_x");
        app->add_option("--nu", nu, "manifold: reach");
        app->add_option("--w", w, "manifold: boundary margin");
        app->add_option("--R", R, "explicit big local scale (default: interval midpoint)");
        app->add_option("--r", r, "explicit small local scale (default: interval midpoint)");
    }

    ScaleConstants constants(bool noisy) const
    {
        ScaleConstants cc;
        cc.t = t.value_or(noisy ? 1 : 0);
        cc.s = parse_constant(s, "--s");
        cc.c = parse_constant(c, "--c");
        try {
            cc.validate();
        } catch (const std::invalid_argument& e) {
            throw ValidationError(e.what());
        }
        return cc;
    }

    static double need(const std::optional<double>& v, const char* flag)
    {
        if (!v) throw ValidationError(std::string(flag) + " is required for this regime");
        return *v;
    }

    SelectedScales select(const ScaleConstants& cc, double sample_eps) const
    {
        double e = eps.value_or(sample_eps);
        if (!(e > 0)) throw ValidationError("--eps is required (no sample metadata)");
        std::optional<ScaleChoice> choice;
        if (R || r) choice = ScaleChoice{need(R, "--R"), need(r, "--r")};
        if (regime == "manual") {
            return manual_scales(cc, e, need(scale1, "--scale1"), need(scale2, "--scale2"), need(ball_R, "--ball-R"),
                                 need(ball_r, "--ball-r"));
        }
        if (regime == "strong") return select_strong(cc, e, need(rbar, "--rbar"), need(Rbar, "--Rbar"), choice);
        if (regime == "bounded") return select_bounded(cc, e, {need(M, "--M"), need(m, "--m"), need(M0, "--M0")}, choice);
        return select_manifold(cc, e, {need(nu, "--nu"), w}, choice);
    }
};

struct EngineOptions
{
    std::uint32_t field = 2;
    int maxdim = 1;
    int threads = 1;

    void add(CLI::App* app)
    {
        app->add_option("--field", field, "prime field modulus");
        app->add_option("--maxdim", maxdim, "top homology degree")->check(CLI::Range(0, 5));
        app->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 256));
    }
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Local homology inference from point samples"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate a verified eps-sample of a shape");
    ShapeOptions gen_shape;
    gen_shape.add(gen);
    double gen_eps = 0;
    int gen_n = 0;
    double gen_noise = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--eps", gen_eps, "sampling bound")->required();
    gen->add_option("--n", gen_n, "number of points")->required();
    gen->add_option("--noise", gen_noise, "radius of uniform noise (0: none)");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("-o,--output", gen_out, "sample CSV path")->required();

    // scales
    auto* sc = app.add_subcommand("scales", "select scales and print them with warnings");
    ScaleOptions sc_opts;
    sc_opts.add(sc, false);
    std::string sc_out;
    sc->add_option("-o,--output", sc_out, "output JSON (default stdout)");

    // infer
    auto* inf = app.add_subcommand("infer", "estimate local homology at every sample point");
    std::string inf_sample, inf_out;
    ScaleOptions inf_scales;
    EngineOptions inf_engine;
    inf->add_option("--sample", inf_sample, "sample CSV")->required();
    inf_scales.add(inf, true);
    inf_engine.add(inf);
    inf->add_option("-o,--output", inf_out, "report JSON (default stdout)");

    // classify
    auto* cls = app.add_subcommand("classify", "re-score a report against the sample's shape");
    std::string cls_report, cls_sample, cls_w0, cls_out;
    cls->add_option("--report", cls_report, "report JSON")->required();
    cls->add_option("--sample", cls_sample, "sample CSV with shape metadata")->required();
    cls->add_option("--w0", cls_w0, "comma separated w0 sweep (default 0,0.05,...,0.5)");
    cls->add_option("-o,--output", cls_out, "report JSON (default stdout)");

    // group
    auto* grp = app.add_subcommand("group", "group points into strata candidates (heuristic)");
    std::string grp_sample, grp_out;
    ScaleOptions grp_scales;
    EngineOptions grp_engine;
    grp->add_option("--sample", grp_sample, "sample CSV")->required();
    grp_scales.add(grp, true);
    grp_engine.add(grp);
    grp->add_option("-o,--output", grp_out, "groups JSON (default stdout)");

    // scan
    auto* scn = app.add_subcommand("scan", "empirical alpha-section scan at a shape point");
    ShapeOptions scn_shape;
    scn_shape.add(scn);
    std::string scn_x = "1,0", scn_flavor = "cech", scn_csv, scn_json, scn_svg;
    double scn_alpha = 0, scn_eps = 0, scn_lo = 0, scn_hi = 1;
    int scn_steps = 21, scn_dense = 600, scn_threads = 1, scn_maxdim = 1;
    scn->add_option("--x", scn_x, "point of the shape");
    scn->add_option("--alpha", scn_alpha, "global scale of the section")->required();
    scn->add_option("--eps", scn_eps, "first-level complex scale")->required();
    scn->add_option("--grid-lo", scn_lo, "smallest grid value");
    scn->add_option("--grid-hi", scn_hi, "largest grid value");
    scn->add_option("--steps", scn_steps, "grid values per axis")->check(CLI::Range(2, 1000));
    scn->add_option("--dense-n", scn_dense, "size of the dense sample");
    scn->add_option("--flavor", scn_flavor, "cech or rips")->check(CLI::IsMember({"cech", "rips"}));
    scn->add_option("--maxdim", scn_maxdim, "top homology degree")->check(CLI::Range(0, 5));
    scn->add_option("--threads", scn_threads, "worker threads")->check(CLI::Range(1, 256));
    scn->add_option("--csv", scn_csv, "membership CSV (R,r,member)");
    scn->add_option("--json", scn_json, "summary JSON (default stdout)");
    scn->add_option("--svg", scn_svg, "heatmap SVG");

    // check
    auto* chk = app.add_subcommand("check", "cross-validate the engine against the coned oracle");
    int chk_random = 0, chk_max_pts = 10;
    std::uint64_t chk_seed = 1;
    bool chk_fixtures = false;
    chk->add_option("--random", chk_random, "number of random instances")->check(CLI::NonNegativeNumber);
    chk->add_option("--max-pts", chk_max_pts, "points per instance")->check(CLI::Range(1, 40));
    chk->add_option("--seed", chk_seed, "random seed");
    chk->add_flag("--fixtures", chk_fixtures, "run the golden fixtures");

    // plot
    auto* plt = app.add_subcommand("plot", "SVG scatter of a report");
    std::string plt_report, plt_out;
    bool plt_only = false;
    plt->add_option("--report", plt_report, "report JSON")->required();
    plt->add_option("-o,--output", plt_out, "SVG path (default stdout)");
    plt->add_flag("--only-correct", plt_only, "draw only correctly classified points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_validation;
    }

    try {
        if (*gen) {
            StratifiedShape shape = gen_shape.build();
            NoiseModel noise = gen_noise > 0 ? NoiseModel::uniform_disc(gen_noise) : NoiseModel::none();
            Sample s = generate_sample(shape, gen_eps, gen_n, noise, gen_seed);
            save_sample(gen_out, s, &shape);
            double dh = hausdorff(s.points, shape, std::max(64, static_cast<int>(std::ceil(20.0 / gen_eps)))).upper();
            std::cout << dump_json({{"points", s.size()},
                                    {"hausdorff_upper", dh},
                                    {"epsilon", gen_eps},
                                    {"noisy", s.noisy},
                                    {"sample", gen_out},
                                    {"metadata", sidecar_path(gen_out).string()}});
        } else if (*sc) {
            ScaleConstants cc = sc_opts.constants(sc_opts.t.value_or(0) == 1);
            SelectedScales s = sc_opts.select(cc, 0.0);
            emit(sc_out, dump_json(scales_to_json(s, cc)));
        } else if (*inf) {
            LoadedSample ls = load_sample(inf_sample);
            if (inf_scales.eps) ls.sample.epsilon = *inf_scales.eps;
            ScaleConstants cc = inf_scales.constants(ls.sample.noisy);
            SelectedScales s = inf_scales.select(cc, ls.sample.epsilon);
            for (const auto& wng : s.warnings) std::cerr << "warning: " << wng.inequality << " (deficit " << wng.deficit << ")\n";
            RunReport rep = run_inference(ls.sample, ls.shape, s, cc, inf_engine.field, inf_engine.maxdim,
                                          inf_engine.threads);
            emit(inf_out, dump_json(report_to_json(rep)));
        } else if (*cls) {
            std::ifstream in(cls_report);
            if (!in) throw InputError("cannot read report " + cls_report);
            Json report;
            try {
                report = Json::parse(in);
            } catch (const Json::exception& e) {
                throw InputError(std::string("malformed report: ") + e.what());
            }
            LoadedSample ls = load_sample(cls_sample);
            if (!ls.shape) throw ValidationError("sample metadata names no shape");
            auto sigs = signatures_from_report(report);
            if (sigs.size() != ls.sample.size()) throw ValidationError("report and sample sizes differ");
            std::vector<PointResult> results(sigs.size());
            for (std::size_t i = 0; i < sigs.size(); ++i) {
                results[i].index = static_cast<int>(i);
                results[i].label = label_for(sigs[i]);
                results[i].signature = sigs[i];
            }
            std::vector<double> grid = cls_w0.empty() ? default_w0_grid() : parse_list(cls_w0, "--w0");
            RunReport rep;
            rep.sample = ls.sample;
            rep.shape = ls.shape;
            rep.points = std::move(results);
            rep.accuracy = classify(rep.points, rep.sample, *rep.shape, grid);
            const Json& sj = report.at("scales");
            rep.scales = {sj.at("scale1").get<double>(), sj.at("scale2").get<double>(), sj.at("ball_R").get<double>(),
                          sj.at("ball_r").get<double>(), sj.value("regime", "manual"), {}};
            for (const auto& wj : sj.value("warnings", Json::array())) {
                rep.scales.warnings.push_back({wj.at("inequality").get<std::string>(), wj.at("deficit").get<double>()});
            }
            rep.constants = {sj.at("t").get<int>(), sj.at("s").get<double>(), sj.at("c").get<double>()};
            rep.field = report.at("field").get<std::uint32_t>();
            rep.max_degree = report.at("max_degree").get<int>();
            emit(cls_out, dump_json(report_to_json(rep)));
        } else if (*grp) {
            LoadedSample ls = load_sample(grp_sample);
            if (grp_scales.eps) ls.sample.epsilon = *grp_scales.eps;
            ScaleConstants cc = grp_scales.constants(ls.sample.noisy);
            SelectedScales s = grp_scales.select(cc, ls.sample.epsilon);
            StrataGroups g = group_strata(ls.sample, s, cc, grp_engine.field, grp_engine.maxdim, grp_engine.threads);
            emit(grp_out, dump_json(groups_to_json(g)));
        } else if (*scn) {
            StratifiedShape shape = scn_shape.build();
            ScanGrid grid = ScanGrid::uniform(scn_lo, scn_hi, scn_steps);
            AlphaSectionScan scan = scan_alpha_section(
                shape, parse_point(scn_x, "--x"), scn_alpha, scn_eps, grid, scn_dense,
                scn_flavor == "rips" ? ComplexFlavor::rips : ComplexFlavor::cech, scn_maxdim, scn_threads);
            SectionProperties props = section_properties(scan);
            if (!scn_csv.empty()) {
                std::ostringstream csv;
                write_scan_csv(csv, scan);
                emit(scn_csv, csv.str());
            }
            if (!scn_svg.empty()) emit(scn_svg, scan_svg(scan));
            emit(scn_json, dump_json(scan_to_json(scan, props)));
        } else if (*chk) {
            Json out = Json::object();
            bool ok = true;
            if (chk_random > 0 || !chk_fixtures) {
                CrossCheckReport rep = cross_check_random(chk_random, chk_max_pts, chk_seed);
                Json failures = Json::array();
                for (const auto& f : rep.failures) {
                    failures.push_back({{"instance", f.instance}, {"direct", f.direct}, {"coned", f.coned}});
                }
                out["random"] = {{"instances", rep.instances},
                                 {"agree", rep.agree},
                                 {"summary", std::to_string(rep.agree) + "/" + std::to_string(rep.instances) +
                                                 " direct==coned"},
                                 {"failures", failures}};
                ok = ok && rep.failures.empty();
            }
            if (chk_fixtures) {
                Json fx = Json::array();
                std::size_t passed = 0;
                for (const auto& f : run_fixtures()) {
                    fx.push_back({{"name", f.name}, {"passed", f.passed}, {"detail", f.detail}});
                    passed += f.passed ? 1 : 0;
                    ok = ok && f.passed;
                }
                out["fixtures"] = {{"results", fx}, {"passed", passed}, {"total", fx.size()}};
            }
            std::cout << dump_json(out);
            return ok ? exit_ok : exit_mismatch;
        } else if (*plt) {
            std::ifstream in(plt_report);
            if (!in) throw InputError("cannot read report " + plt_report);
            Json report;
            try {
                report = Json::parse(in);
            } catch (const Json::exception& e) {
                throw InputError(std::string("malformed report: ") + e.what());
            }
            emit(plt_out, report_svg(report, plt_only));
        }
    } catch (const InfeasibleScales& e) {
        std::cerr << "infeasible scales: " << e.what() << " (deficit " << e.deficit() << ")\n";
        return exit_infeasible;
    } catch (const SampleVerificationError& e) {
        std::cerr << "sample verification failed: " << e.what() << "\n";
        return exit_validation;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const Json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_ok;
}
