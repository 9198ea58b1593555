#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "localizer/antipodal_opt.h"
#include "localizer/single_query.h"

namespace localizer {

using Json = nlohmann::json;

struct ParseError : Error {
  ParseError(const std::string& what, int line, int column)
      : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line(line),
        column(column) {}
  int line, column;
};

struct ArtifactError : Error {
  using Error::Error;
};

/// {"outer": [[x, y], ...], "holes": [[[x, y], ...], ...]}; coordinates are
/// JSON numbers (read as exact decimals) or strings "0.25" / "1/3".
Workspace parse_workspace(const std::string& text);
Workspace load_workspace(const std::string& path);
Json workspace_to_json(const Workspace& w);
/// FNV-1a 64 of the canonical workspace JSON, as 16 hex digits.
std::string workspace_hash(const Workspace& w);

struct Artifact {
  Workspace workspace;
  int visibility_edges = 0;
  Rtd rtd;
  SingleIndex single;
  AntipodalIndex antipodal;
  OptIndex opt;
  std::vector<double> critical;
};

constexpr const char* kArtifactVersion = "localizer-artifact/1";

Artifact build_artifact(const Workspace& w);
std::string serialize_artifact(const Artifact& a);
/// Throws ArtifactError on version or hash mismatch.
Artifact deserialize_artifact(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// Rounded to 12 significant digits.
double round12(double v);

Json single_json(const Artifact& a, const SingleResult& r, bool regions);
Json antipodal_json(const Artifact& a, double d1, double d2, const std::vector<AntipodalMatch>& m);
Json opt_json(const Artifact& a, double d1, double d2, const std::vector<OptMatch>& m);

struct RenderStyle {
  double outline_width = 1.5;
  double curve_width = 1.0;
  double fill_opacity = 0.2;  ///< per contributing cell; overlaps stack
  double deviation = 1e-3;    ///< curve flattening tolerance in workspace units
  int pixels = 800;
};

struct SvgLayers {
  std::vector<Ring> fills;                ///< one translucent ring per contributing cell piece
  std::vector<std::vector<Vec2>> curves;  ///< open polylines
};

SvgLayers single_layers(const Artifact& a, const SingleResult& r, const RenderStyle& style);
SvgLayers antipodal_layers(const Artifact& a, double d1, double d2, const std::vector<AntipodalMatch>& m,
                           const RenderStyle& style);
SvgLayers opt_layers(const Artifact& a, double d1, double d2, const std::vector<OptMatch>& m,
                     const RenderStyle& style);
std::string render_svg(const Workspace& w, const SvgLayers& layers, const RenderStyle& style);

}  // namespace localizer
