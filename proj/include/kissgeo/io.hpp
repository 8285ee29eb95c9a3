#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "kissgeo/certify.hpp"
#include "kissgeo/curve.hpp"
#include "kissgeo/packing.hpp"

namespace kissgeo::io {

using nlohmann::json;

struct PackingDocument {
  std::string format_version = "1";
  std::vector<geom::Point> disks;  // unit = disk diameters
  std::optional<std::size_t> source;
  std::map<std::string, std::string> metadata;

  packing::PackingInstance instance() const { return {disks, source}; }
  static PackingDocument from(const packing::PackingInstance& p);
};

struct CurveArc {
  geom::Point center;
  double start_angle = 0.0;
  double end_angle_ccw = 0.0;  // start_angle + sweep; smaller than start for a clockwise arc
};

struct CurveDocument {
  std::vector<CurveArc> arcs;
  bool closed = false;

  curve::SparseCurve curve() const;
  static CurveDocument from(const curve::SparseCurve& c);
};

/// Parse errors throw Error(Parse).
json to_json(const PackingDocument& d);
PackingDocument packing_from_json(const json& j);
json to_json(const CurveDocument& d);
CurveDocument curve_from_json(const json& j);
json to_json(const certify::CertReport& r);

/// Centers for the minimal-curve search: {"centers": [[x, y], ...]} or a packing document.
std::vector<geom::Point> centers_from_json(const json& j);

/// File helpers; IO failures and malformed JSON throw Error(Parse).
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Human-readable report; angles in multiples of pi with nine decimals.
std::string text_report(const certify::CertReport& r);

struct SvgOptions {
  double scale = 100.0;  // pixels per disk diameter
};

/// Disks (gray), tree edges, region rays, the curve (bold) and removed centers.
std::string render_svg(const certify::CertReport& r, const packing::PackingInstance& input, const SvgOptions& opt = {});

}  // namespace kissgeo::io
