#include "lochom/io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lochom;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    fs::path dir = fs::temp_directory_path() / "lochom-io-tests";
    fs::create_directories(dir);
    return dir / name;
}

std::size_t count(const std::string& text, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

RunReport circle_report()
{
    auto shape = StratifiedShape::circle(1.0);
    auto sample = generate_sample(shape, 0.05, 150, NoiseModel::none(), 0);
    auto cc = ScaleConstants::make(false, ComplexFlavor::rips);
    auto scales = select_manifold(cc, 0.05, {1.0, std::nullopt}, ScaleChoice{1.0, 0.5});
    return run_inference(sample, shape, scales, cc, 2, 1);
}

}  // namespace

TEST_CASE("doubles keep 17 significant digits")
{
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(std::nan("")) == "null");
    CHECK(format_double(INFINITY) == "null");
    CHECK(std::stod(format_double(std::sqrt(2.0))) == std::sqrt(2.0));
}

TEST_CASE("json output is sorted and stable")
{
    Json j;
    j["zeta"] = 1;
    j["alpha"] = Json::array({0.5, 2, std::nan("")});
    j["mid"] = {{"b", true}, {"a", nullptr}};
    std::string text = dump_json(j);
    CHECK(text.find("\"alpha\"") < text.find("\"mid\""));
    CHECK(text.find("\"mid\"") < text.find("\"zeta\""));
    CHECK(text.find("[0.5, 2, null]") != std::string::npos);
    CHECK(Json::parse(text)["zeta"] == 1);
}

TEST_CASE("shapes round-trip through json")
{
    for (const auto& shape : {StratifiedShape::circle(2.5), StratifiedShape::circle_chord(),
                              StratifiedShape::segment(Point{0, 0}, Point{1, 2})}) {
        auto back = shape_from_json(shape_to_json(shape));
        CHECK(back.name() == shape.name());
        CHECK(back.strata().size() == shape.strata().size());
        CHECK(back.total_length() == doctest::Approx(shape.total_length()));
        CHECK(dump_json(shape_to_json(back)) == dump_json(shape_to_json(shape)));
    }
    CHECK(shape_from_json(Json{{"kind", "circle"}, {"radius", 3.0}}).total_length() ==
          doctest::Approx(6 * 3.14159265358979));
    CHECK_THROWS_AS(shape_from_json(Json{{"kind", "torus"}}), InputError);
    CHECK_THROWS_AS(shape_from_json(Json::array()), InputError);
    CHECK_THROWS_AS(shape_from_json(Json{{"kind", "segment"}, {"a", {0, 0}}}), InputError);
}

TEST_CASE("points csv")
{
    std::vector<Point> pts{{0.1, 2}, {-3, 1e-20}};
    std::ostringstream out;
    write_points_csv(out, pts);
    CHECK(out.str().rfind("x0,x1\n", 0) == 0);
    std::istringstream in(out.str());
    CHECK(read_points_csv(in) == pts);

    std::istringstream bad_header("a,b\n1,2\n");
    CHECK_THROWS_AS(read_points_csv(bad_header), InputError);
    std::istringstream ragged("x0,x1\n1,2\n3\n");
    CHECK_THROWS_AS(read_points_csv(ragged), InputError);
    std::istringstream junk("x0,x1\n1,abc\n");
    CHECK_THROWS_AS(read_points_csv(junk), InputError);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_points_csv(empty), InputError);
}

TEST_CASE("samples round-trip with their sidecar")
{
    auto shape = StratifiedShape::circle_chord();
    auto sample = generate_sample(shape, 0.05, 300, NoiseModel::uniform_disc(0.02), 9);
    auto path = scratch("cc.csv");
    save_sample(path, sample, &shape);
    CHECK(sidecar_path(path) == scratch("cc.meta.json"));
    CHECK(fs::exists(sidecar_path(path)));
    auto loaded = load_sample(path);
    CHECK(loaded.has_metadata);
    CHECK(loaded.sample.points == sample.points);
    CHECK(loaded.sample.generators == sample.generators);
    CHECK(loaded.sample.epsilon == sample.epsilon);
    CHECK(loaded.sample.noisy);
    CHECK(loaded.sample.seed == std::optional<std::uint64_t>{9});
    REQUIRE(loaded.shape.has_value());
    CHECK(loaded.shape->name() == "circle-chord");

    auto bare = scratch("bare.csv");
    {
        std::ofstream f(bare);
        write_points_csv(f, sample.points);
    }
    fs::remove(sidecar_path(bare));
    auto plain = load_sample(bare);
    CHECK_FALSE(plain.has_metadata);
    CHECK_FALSE(plain.shape.has_value());
    CHECK(plain.sample.points == sample.points);

    CHECK_THROWS_AS(load_sample(scratch("missing.csv")), InputError);
    {
        std::ofstream f(sidecar_path(bare));
        f << "{ not json";
    }
    CHECK_THROWS_AS(load_sample(bare), InputError);
}

TEST_CASE("reports are byte-identical across runs and thread counts")
{
    auto a = circle_report();
    auto b = circle_report();
    std::string ja = dump_json(report_to_json(a));
    CHECK(ja == dump_json(report_to_json(b)));

    auto shape = StratifiedShape::circle(1.0);
    auto cc = ScaleConstants::make(false, ComplexFlavor::rips);
    auto c = run_inference(a.sample, shape, a.scales, cc, 2, 1, 4);
    CHECK(dump_json(report_to_json(c)) == ja);

    Json j = Json::parse(ja);
    CHECK(j["points"].size() == 150);
    CHECK(j["points"][0]["label"] == "rank1");
    CHECK(j["points"][0]["ranks"]["1"] == 1);
    CHECK(j["points"][0]["dist_to_0strata"].is_null());
    CHECK(j["accuracy"]["overall"] == 1.0);
    CHECK(j["sample"]["n"] == 150);
    CHECK(j["scales"]["ball_R"] == 1.0);
    CHECK(j["field"] == 2);

    auto sigs = signatures_from_report(j);
    REQUIRE(sigs.size() == 150);
    for (std::size_t i = 0; i < sigs.size(); ++i) CHECK(sigs[i] == a.points[i].signature);
}

TEST_CASE("reports without a shape leave classification empty")
{
    auto r = circle_report();
    r.shape.reset();
    for (auto& p : r.points) p.correct.reset();
    r.accuracy = {};
    Json j = report_to_json(r);
    CHECK(j["points"][3]["correct"].is_null());
    CHECK(j["accuracy"]["overall"].is_null());
}

TEST_CASE("svg figures")
{
    Json j = report_to_json(circle_report());
    std::string svg = report_svg(j, false);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count(svg, "#1f4fd1") >= 150);
    CHECK(count(svg, "#d62728") <= 1);

    for (auto& p : j["points"]) p["correct"] = false;
    std::string only = report_svg(j, true);
    CHECK(count(only, "#1f4fd1") < 150);

    AlphaSectionScan scan;
    scan.alpha = 0.1;
    scan.grid = ScanGrid::uniform(0.0, 1.0, 5);
    scan.member.assign(5, std::vector<Membership>(5, Membership::yes));
    std::string heat = scan_svg(scan);
    CHECK(heat.rfind("<svg", 0) == 0);

    std::ostringstream csv;
    write_scan_csv(csv, scan);
    CHECK(csv.str().rfind("R,r,member\n", 0) == 0);
    CHECK(count(csv.str(), "\n") == 26);
}
