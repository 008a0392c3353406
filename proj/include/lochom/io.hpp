// File formats: sample CSV with a JSON metadata sidecar, run reports and scan
// summaries as JSON, scan grids as CSV, and SVG figures.
//
// JSON output is byte-stable: object keys sorted, every floating-point
// number printed with 17 significant digits, non-finite values as null.

#ifndef LOCHOM_IO_HPP
#define LOCHOM_IO_HPP

#include "lochom/explorer.hpp"
#include "lochom/geometry.hpp"
#include "lochom/pipeline.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace lochom {

using Json = nlohmann::json;

/// Raised for unreadable or malformed input files.
class InputError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

std::string format_double(double v);
void write_json(std::ostream& out, const Json& value);
std::string dump_json(const Json& value);

Json shape_to_json(const StratifiedShape& shape);
/// Accepts {"kind": "circle", "radius": r}, {"kind": "circle-chord"},
/// {"kind": "segment", "a": [..], "b": [..]} and {"kind": "union",
/// "strata": [...], "reach": nu}.
StratifiedShape shape_from_json(const Json& j);

/// Header x0,x1,...; one point per row.
void write_points_csv(std::ostream& out, std::span<const Point> points);
std::vector<Point> read_points_csv(std::istream& in);

/// `<dir>/<stem>.meta.json` next to the CSV.
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

/// Sample metadata: epsilon, noisy, seed, shape and generators.
Json sample_metadata(const Sample& sample, const StratifiedShape* shape);

void save_sample(const std::filesystem::path& csv, const Sample& sample, const StratifiedShape* shape);

struct LoadedSample
{
    Sample sample;
    std::optional<StratifiedShape> shape;
    bool has_metadata = false;
};

/// Reads the CSV and, when present, its sidecar. Without a sidecar the
/// sample has epsilon 0 and must be completed by the caller.
LoadedSample load_sample(const std::filesystem::path& csv);

Json scales_to_json(const SelectedScales& s, const ScaleConstants& cc);
Json report_to_json(const RunReport& report);
Json groups_to_json(const StrataGroups& groups);

/// Signatures stored in a report, by point index.
std::vector<HomologySignature> signatures_from_report(const Json& report);

void write_scan_csv(std::ostream& out, const AlphaSectionScan& scan);
Json scan_to_json(const AlphaSectionScan& scan, const SectionProperties& props);

/// Scatter plot of a report: rank1 blue, rank2 red, boundary gray, other
/// black, with the analytic shape underneath when the report names one.
std::string report_svg(const Json& report, bool only_correct);
/// Membership heatmap of an alpha-section scan.
std::string scan_svg(const AlphaSectionScan& scan);

}  // namespace lochom

#endif
