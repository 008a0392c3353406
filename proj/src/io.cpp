#include "lochom/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace lochom {

std::string format_double(double v)
{
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_value(std::ostream& out, const Json& v, int indent, int depth)
{
    auto newline = [&](int d) {
        out << '\n';
        for (int i = 0; i < indent * d; ++i) out << ' ';
    };
    switch (v.type()) {
    case Json::value_t::object: {
        if (v.empty()) {
            out << "{}";
            return;
        }
        out << '{';
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) out << ',';
            first = false;
            newline(depth + 1);
            out << Json(it.key()).dump() << ": ";
            write_value(out, it.value(), indent, depth + 1);
        }
        newline(depth);
        out << '}';
        return;
    }
    case Json::value_t::array: {
        if (v.empty()) {
            out << "[]";
            return;
        }
        // Arrays of scalars stay on one line.
        bool flat = std::none_of(v.begin(), v.end(), [](const Json& e) { return e.is_structured(); });
        out << '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out << (flat ? ", " : ",");
            if (!flat) newline(depth + 1);
            write_value(out, v[i], indent, depth + 1);
        }
        if (!flat) newline(depth);
        out << ']';
        return;
    }
    case Json::value_t::number_float: out << format_double(v.get<double>()); return;
    default: out << v.dump(); return;
    }
}

double number(const Json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_number()) throw InputError(std::string("missing numeric field '") + key + "'");
    return j.at(key).get<double>();
}

Json point_json(const Point& p) { return Json(p.coords()); }

Point point_from(const Json& j)
{
    if (!j.is_array()) throw InputError("point must be an array of numbers");
    std::vector<double> c;
    for (const auto& e : j) {
        if (!e.is_number()) throw InputError("point must be an array of numbers");
        c.push_back(e.get<double>());
    }
    return Point(std::move(c));
}

Json stratum_json(const Stratum& s)
{
    Json j{{"id", s.id}, {"height", s.height}};
    std::visit(
        [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, VertexStratum>) {
                j["type"] = "vertex";
                j["at"] = point_json(g.at);
                j["valence"] = g.valence;
            } else if constexpr (std::is_same_v<T, ArcStratum>) {
                j["type"] = "arc";
                j["center"] = point_json(g.center);
                j["radius"] = g.radius;
                j["theta0"] = g.theta0;
                j["theta1"] = g.theta1;
            } else if constexpr (std::is_same_v<T, CircleStratum>) {
                j["type"] = "circle";
                j["center"] = point_json(g.center);
                j["radius"] = g.radius;
            } else {
                j["type"] = "segment";
                j["a"] = point_json(g.a);
                j["b"] = point_json(g.b);
            }
        },
        s.geometry);
    return j;
}

Stratum stratum_from(const Json& j)
{
    Stratum s;
    s.id = static_cast<int>(number(j, "id"));
    s.height = static_cast<int>(number(j, "height"));
    std::string type = j.value("type", "");
    if (type == "vertex") s.geometry = VertexStratum{point_from(j.at("at")), static_cast<int>(number(j, "valence"))};
    else if (type == "arc") {
        s.geometry = ArcStratum{point_from(j.at("center")), number(j, "radius"), number(j, "theta0"), number(j, "theta1")};
    } else if (type == "circle") s.geometry = CircleStratum{point_from(j.at("center")), number(j, "radius")};
    else if (type == "segment") s.geometry = SegmentStratum{point_from(j.at("a")), point_from(j.at("b"))};
    else throw InputError("unknown stratum type '" + type + "'");
    return s;
}

}  // namespace

void write_json(std::ostream& out, const Json& value)
{
    write_value(out, value, 2, 0);
    out << '\n';
}

std::string dump_json(const Json& value)
{
    std::ostringstream out;
    write_json(out, value);
    return out.str();
}

Json shape_to_json(const StratifiedShape& shape)
{
    switch (shape.kind()) {
    case ShapeKind::circle:
        return {{"kind", "circle"}, {"radius", std::get<CircleStratum>(shape.stratum(0).geometry).radius}};
    case ShapeKind::circle_chord: return {{"kind", "circle-chord"}};
    case ShapeKind::segment: {
        const auto& seg = std::get<SegmentStratum>(shape.stratum(2).geometry);
        return {{"kind", "segment"}, {"a", point_json(seg.a)}, {"b", point_json(seg.b)}};
    }
    case ShapeKind::union_of_primitives: break;
    }
    Json strata = Json::array();
    for (const auto& s : shape.strata()) strata.push_back(stratum_json(s));
    Json j{{"kind", "union"}, {"strata", strata}};
    j["reach"] = shape.reach() ? Json(*shape.reach()) : Json(nullptr);
    return j;
}

StratifiedShape shape_from_json(const Json& j)
{
    if (!j.is_object()) throw InputError("shape must be a JSON object");
    std::string kind = j.value("kind", "");
    try {
        if (kind == "circle") return StratifiedShape::circle(j.contains("radius") ? number(j, "radius") : 1.0);
        if (kind == "circle-chord") return StratifiedShape::circle_chord();
        if (kind == "segment") return StratifiedShape::segment(point_from(j.at("a")), point_from(j.at("b")));
        if (kind == "union") {
            std::vector<Stratum> strata;
            for (const auto& s : j.at("strata")) strata.push_back(stratum_from(s));
            std::optional<double> reach;
            if (j.contains("reach") && j.at("reach").is_number()) reach = j.at("reach").get<double>();
            return StratifiedShape::union_of(std::move(strata), reach);
        }
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed shape: ") + e.what());
    }
    throw InputError("unknown shape kind '" + kind + "'");
}

void write_points_csv(std::ostream& out, std::span<const Point> points)
{
    const std::size_t d = points.empty() ? 2 : points.front().dim();
    for (std::size_t i = 0; i < d; ++i) out << (i ? "," : "") << 'x' << i;
    out << '\n';
    for (const auto& p : points) {
        for (std::size_t i = 0; i < p.dim(); ++i) out << (i ? "," : "") << format_double(p[i]);
        out << '\n';
    }
}

std::vector<Point> read_points_csv(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    std::size_t dim = 0;
    std::vector<Point> points;
    auto fields = [](const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
        if (!s.empty() && s.back() == ',') out.emplace_back();
        return out;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto cols = fields(line);
        if (dim == 0) {
            for (std::size_t i = 0; i < cols.size(); ++i) {
                if (cols[i] != "x" + std::to_string(i)) {
                    throw InputError("line " + std::to_string(line_no) + ": expected header x0,x1,...");
                }
            }
            dim = cols.size();
            continue;
        }
        if (cols.size() != dim) {
            throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(dim) + " values");
        }
        std::vector<double> c;
        for (const auto& f : cols) {
            char* end = nullptr;
            double v = std::strtod(f.c_str(), &end);
            if (f.empty() || *end != '\0' || !std::isfinite(v)) {
                throw InputError("line " + std::to_string(line_no) + ": bad number '" + f + "'");
            }
            c.push_back(v);
        }
        points.emplace_back(std::move(c));
    }
    if (dim == 0) throw InputError("empty sample file");
    return points;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv)
{
    return csv.parent_path() / (csv.stem().string() + ".meta.json");
}

Json sample_metadata(const Sample& sample, const StratifiedShape* shape)
{
    Json j{{"epsilon", sample.epsilon}, {"noisy", sample.noisy}};
    j["seed"] = sample.seed ? Json(*sample.seed) : Json(nullptr);
    j["shape"] = shape ? shape_to_json(*shape) : Json(nullptr);
    if (!sample.generators.empty()) {
        Json g = Json::array();
        for (const auto& p : sample.generators) g.push_back(point_json(p));
        j["generators"] = std::move(g);
    }
    return j;
}

void save_sample(const std::filesystem::path& csv, const Sample& sample, const StratifiedShape* shape)
{
    std::ofstream out(csv);
    if (!out) throw InputError("cannot write " + csv.string());
    write_points_csv(out, sample.points);
    std::ofstream meta(sidecar_path(csv));
    if (!meta) throw InputError("cannot write " + sidecar_path(csv).string());
    write_json(meta, sample_metadata(sample, shape));
}

LoadedSample load_sample(const std::filesystem::path& csv)
{
    std::ifstream in(csv);
    if (!in) throw InputError("cannot read sample file " + csv.string());
    LoadedSample out;
    out.sample.points = read_points_csv(in);
    auto meta_path = sidecar_path(csv);
    std::ifstream meta(meta_path);
    if (!meta) return out;
    Json j;
    try {
        j = Json::parse(meta);
    } catch (const Json::exception& e) {
        throw InputError("malformed metadata " + meta_path.string() + ": " + e.what());
    }
    out.has_metadata = true;
    out.sample.epsilon = number(j, "epsilon");
    out.sample.noisy = j.value("noisy", false);
    if (j.contains("seed") && j.at("seed").is_number_integer()) out.sample.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("shape") && !j.at("shape").is_null()) out.shape = shape_from_json(j.at("shape"));
    if (j.contains("generators")) {
        for (const auto& g : j.at("generators")) out.sample.generators.push_back(point_from(g));
    }
    return out;
}

Json scales_to_json(const SelectedScales& s, const ScaleConstants& cc)
{
    Json warnings = Json::array();
    for (const auto& w : s.warnings) warnings.push_back({{"inequality", w.inequality}, {"deficit", w.deficit}});
    return {{"scale1", s.scale1},
            {"scale2", s.scale2},
            {"ball_R", s.ball_R},
            {"ball_r", s.ball_r},
            {"regime", s.regime},
            {"warnings", warnings},
            {"t", cc.t},
            {"s", cc.s},
            {"c", cc.c},
            {"flavor", to_string(cc.flavor())}};
}

Json report_to_json(const RunReport& report)
{
    Json sample{{"n", report.sample.size()}, {"epsilon", report.sample.epsilon}, {"noisy", report.sample.noisy}};
    sample["seed"] = report.sample.seed ? Json(*report.sample.seed) : Json(nullptr);
    sample["shape"] = report.shape ? shape_to_json(*report.shape) : Json(nullptr);

    Json points = Json::array();
    for (const auto& r : report.points) {
        Json ranks = Json::object();
        for (std::size_t l = 0; l < r.signature.ranks.size(); ++l) ranks[std::to_string(l)] = r.signature.ranks[l];
        Json p{{"i", r.index},
               {"coords", point_json(report.sample.points.at(static_cast<std::size_t>(r.index)))},
               {"ranks", ranks},
               {"label", r.label}};
        p["nearest_stratum"] = r.correct ? Json(r.nearest_stratum) : Json(nullptr);
        p["dist_to_0strata"] = r.correct ? Json(r.dist_to_0strata) : Json(nullptr);
        p["correct"] = r.correct ? Json(*r.correct) : Json(nullptr);
        if (r.correct) {
            Json truth = Json::object();
            for (auto [deg, rk] : r.truth) truth[std::to_string(deg)] = rk;
            p["truth"] = truth;
        }
        points.push_back(std::move(p));
    }

    Json by_w0 = Json::array();
    for (const auto& a : report.accuracy.by_w0) by_w0.push_back({{"w0", a.w0}, {"acc", a.accuracy}, {"n", a.count}});
    Json accuracy{{"by_w0", by_w0}};
    accuracy["overall"] = report.accuracy.overall ? Json(*report.accuracy.overall) : Json(nullptr);

    return {{"sample", sample},
            {"scales", scales_to_json(report.scales, report.constants)},
            {"field", report.field},
            {"max_degree", report.max_degree},
            {"points", points},
            {"accuracy", accuracy}};
}

Json groups_to_json(const StrataGroups& g)
{
    return {{"heuristic", g.heuristic},
            {"group_of", g.group_of},
            {"groups", g.groups},
            {"count", g.groups.size()},
            {"neighbor_pairs", g.neighbor_pairs},
            {"non_nesting_pairs", g.non_nesting_pairs},
            {"joined_pairs", g.joined_pairs},
            {"cross_rank_exceeds_self", g.cross_rank_exceeds_self}};
}

std::vector<HomologySignature> signatures_from_report(const Json& report)
{
    std::vector<HomologySignature> out;
    try {
        const auto& pts = report.at("points");
        out.resize(pts.size());
        for (const auto& p : pts) {
            auto i = p.at("i").get<std::size_t>();
            if (i >= out.size()) throw InputError("point index out of range in report");
            const auto& ranks = p.at("ranks");
            HomologySignature sig;
            sig.ranks.assign(ranks.size(), 0);
            for (auto it = ranks.begin(); it != ranks.end(); ++it) {
                std::size_t l = std::stoul(it.key());
                if (l >= sig.ranks.size()) throw InputError("rank degrees in report are not contiguous");
                sig.ranks[l] = it.value().get<int>();
            }
            out[i] = std::move(sig);
        }
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed report: ") + e.what());
    }
    return out;
}

void write_scan_csv(std::ostream& out, const AlphaSectionScan& scan)
{
    out << "R,r,member\n";
    for (std::size_t i = 0; i < scan.grid.R_values.size(); ++i) {
        for (std::size_t j = 0; j < scan.grid.r_values.size(); ++j) {
            Membership m = scan.at(i, j);
            if (m == Membership::outside_domain) continue;
            out << format_double(scan.grid.R_values[i]) << ',' << format_double(scan.grid.r_values[j]) << ','
                << (m == Membership::yes ? 1 : 0) << '\n';
        }
    }
}

Json scan_to_json(const AlphaSectionScan& scan, const SectionProperties& props)
{
    auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
    Json truth = Json::object();
    for (auto [deg, rk] : scan.truth) truth[std::to_string(deg)] = rk;
    std::size_t members = 0;
    for (const auto& row : scan.member) members += static_cast<std::size_t>(std::count(row.begin(), row.end(), Membership::yes));
    return {{"empirical", scan.empirical},
            {"center", point_json(scan.center)},
            {"alpha", scan.alpha},
            {"eps", scan.eps},
            {"flavor", to_string(scan.flavor)},
            {"dense_n", scan.dense_n},
            {"dense_hausdorff", scan.dense_hausdorff},
            {"truth", truth},
            {"members", members},
            {"summary",
             {{"R_u", opt(scan.summary.R_u)},
              {"R_l", opt(scan.summary.R_l)},
              {"r_u", opt(scan.summary.r_u)},
              {"r_l", opt(scan.summary.r_l)},
              {"delta_bar", opt(scan.summary.delta_bar)},
              {"tau", opt(scan.summary.tau)}}},
            {"properties",
             {{"rows_are_intervals", props.rows_are_intervals},
              {"columns_are_intervals", props.columns_are_intervals},
              {"violations", props.violations}}}};
}

namespace {

constexpr double canvas = 640.0;
constexpr double margin = 48.0;

struct Frame
{
    double x0 = -1, x1 = 1, y0 = -1, y1 = 1;

    double sx(double x) const { return margin + (x - x0) / (x1 - x0) * (canvas - 2 * margin); }
    double sy(double y) const { return canvas - margin - (y - y0) / (y1 - y0) * (canvas - 2 * margin); }
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

void svg_open(std::ostream& out)
{
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas << "\" height=\"" << canvas
        << "\" viewBox=\"0 0 " << canvas << ' ' << canvas << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << canvas << "\" height=\"" << canvas << "\" fill=\"white\"/>\n";
}

void svg_axes(std::ostream& out, const Frame& f, const std::string& xlabel, const std::string& ylabel)
{
    const double lo = margin;
    const double hi = canvas - margin;
    out << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
        << "<line x1=\"" << lo << "\" y1=\"" << hi << "\" x2=\"" << hi << "\" y2=\"" << hi << "\"/>\n"
        << "<line x1=\"" << lo << "\" y1=\"" << hi << "\" x2=\"" << lo << "\" y2=\"" << lo << "\"/>\n"
        << "</g>\n"
        << "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n"
        << "<text x=\"" << lo << "\" y=\"" << hi + 16 << "\">" << fmt(f.x0) << "</text>\n"
        << "<text x=\"" << hi - 24 << "\" y=\"" << hi + 16 << "\">" << fmt(f.x1) << "</text>\n"
        << "<text x=\"4\" y=\"" << hi << "\">" << fmt(f.y0) << "</text>\n"
        << "<text x=\"4\" y=\"" << lo + 4 << "\">" << fmt(f.y1) << "</text>\n"
        << "<text x=\"" << canvas / 2 << "\" y=\"" << canvas - 8 << "\">" << xlabel << "</text>\n"
        << "<text x=\"4\" y=\"" << canvas / 2 << "\">" << ylabel << "</text>\n"
        << "</g>\n";
}

const char* label_color(const std::string& label)
{
    if (label == "rank1") return "#1f4fd1";
    if (label == "rank2") return "#d62728";
    if (label == "boundary") return "#888888";
    return "#000000";
}

}  // namespace

std::string report_svg(const Json& report, bool only_correct)
{
    std::optional<StratifiedShape> shape;
    if (report.contains("sample") && report["sample"].contains("shape") && !report["sample"]["shape"].is_null()) {
        shape = shape_from_json(report["sample"]["shape"]);
    }
    struct Dot
    {
        double x, y;
        std::string label;
    };
    std::vector<Dot> dots;
    if (report.contains("points")) {
        for (const auto& p : report["points"]) {
            if (only_correct && !(p.contains("correct") && p["correct"].is_boolean() && p["correct"].get<bool>())) continue;
            const auto& c = p.at("coords");
            double x = c.size() > 0 ? c[0].get<double>() : 0.0;
            double y = c.size() > 1 ? c[1].get<double>() : 0.0;
            dots.push_back({x, y, p.value("label", "other")});
        }
    }

    Frame f;
    if (!dots.empty() || shape) {
        f = {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
        auto grow = [&](double x, double y) {
            f.x0 = std::min(f.x0, x);
            f.x1 = std::max(f.x1, x);
            f.y0 = std::min(f.y0, y);
            f.y1 = std::max(f.y1, y);
        };
        for (const auto& d : dots) grow(d.x, d.y);
        if (shape) {
            for (const auto& p : even_points(*shape, 256)) grow(p[0], p.dim() > 1 ? p[1] : 0.0);
        }
        // Square frame with a little padding.
        double span = std::max({f.x1 - f.x0, f.y1 - f.y0, 1e-9}) * 1.05;
        double cx = 0.5 * (f.x0 + f.x1);
        double cy = 0.5 * (f.y0 + f.y1);
        f = {cx - span / 2, cx + span / 2, cy - span / 2, cy + span / 2};
    }

    std::ostringstream out;
    svg_open(out);
    svg_axes(out, f, "x0", "x1");
    if (shape) {
        out << "<g class=\"shape\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\">\n";
        for (const auto& s : shape->strata()) {
            if (s.height == 0) {
                const Point& v = std::get<VertexStratum>(s.geometry).at;
                out << "<circle cx=\"" << fmt(f.sx(v[0])) << "\" cy=\"" << fmt(f.sy(v.dim() > 1 ? v[1] : 0.0))
                    << "\" r=\"4\"/>\n";
                continue;
            }
            out << "<polyline points=\"";
            double len = stratum_length(s);
            for (int k = 0; k <= 200; ++k) {
                Point p = stratum_point_at(s, len * k / 200);
                out << (k ? " " : "") << fmt(f.sx(p[0])) << ',' << fmt(f.sy(p.dim() > 1 ? p[1] : 0.0));
            }
            out << "\"/>\n";
        }
        out << "</g>\n";
    }
    out << "<g class=\"points\">\n";
    for (const auto& d : dots) {
        out << "<circle cx=\"" << fmt(f.sx(d.x)) << "\" cy=\"" << fmt(f.sy(d.y)) << "\" r=\"2.5\" fill=\""
            << label_color(d.label) << "\"/>\n";
    }
    out << "</g>\n";
    out << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
    const char* labels[] = {"rank1", "rank2", "boundary", "other"};
    for (int k = 0; k < 4; ++k) {
        double y = margin + 16.0 * k;
        out << "<circle cx=\"" << canvas - 110 << "\" cy=\"" << y << "\" r=\"4\" fill=\"" << label_color(labels[k])
            << "\"/>\n<text x=\"" << canvas - 100 << "\" y=\"" << y + 4 << "\">" << labels[k] << "</text>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

std::string scan_svg(const AlphaSectionScan& scan)
{
    const auto& R = scan.grid.R_values;
    const auto& r = scan.grid.r_values;
    Frame f{R.front(), R.back(), r.front(), r.back()};
    if (f.x1 == f.x0) f.x1 = f.x0 + 1;
    if (f.y1 == f.y0) f.y1 = f.y0 + 1;
    const double cw = (canvas - 2 * margin) / static_cast<double>(std::max<std::size_t>(R.size() - 1, 1));
    const double ch = (canvas - 2 * margin) / static_cast<double>(std::max<std::size_t>(r.size() - 1, 1));

    std::ostringstream out;
    svg_open(out);
    out << "<g class=\"cells\">\n";
    for (std::size_t i = 0; i < R.size(); ++i) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            Membership m = scan.at(i, j);
            if (m == Membership::outside_domain) continue;
            out << "<rect x=\"" << fmt(f.sx(R[i]) - cw / 2) << "\" y=\"" << fmt(f.sy(r[j]) - ch / 2) << "\" width=\""
                << fmt(cw) << "\" height=\"" << fmt(ch) << "\" fill=\""
                << (m == Membership::yes ? "#1f4fd1" : "#eeeeee") << "\"/>\n";
        }
    }
    out << "</g>\n";
    svg_axes(out, f, "R", "r");
    out << "<text x=\"" << margin << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"13\">alpha = "
        << format_double(scan.alpha) << " (empirical)</text>\n</svg>\n";
    return out.str();
}

}  // namespace lochom
