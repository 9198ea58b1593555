#include "localizer/io.h"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>

namespace localizer {

namespace {

std::pair<int, int> line_col(const std::string& text, size_t offset) {
  int line = 1, col = 1;
  for (size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Input iterator that publishes how far the parser has read.
struct TrackingIterator {
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  const char* p;
  const char** latest;

  reference operator*() const { return *p; }
  TrackingIterator& operator++() {
    ++p;
    *latest = p;
    return *this;
  }
  TrackingIterator operator++(int) {
    auto t = *this;
    ++*this;
    return t;
  }
  bool operator==(const TrackingIterator& o) const { return p == o.p; }
  bool operator!=(const TrackingIterator& o) const { return p != o.p; }
};

class WorkspaceSax : public nlohmann::json_sax<Json> {
 public:
  WorkspaceSax(const std::string& text, const char** latest) : text_(text), latest_(latest) {}

  std::vector<std::vector<Point>> rings{{}};
  bool have_outer = false;

  bool null() override { fail("unexpected null"); }
  bool boolean(bool) override { fail("unexpected boolean"); }
  bool number_integer(number_integer_t v) override { return scalar(std::to_string(v)); }
  bool number_unsigned(number_unsigned_t v) override { return scalar(std::to_string(v)); }
  bool number_float(number_float_t, const string_t& s) override { return scalar(s); }
  bool string(string_t& s) override { return scalar(s); }
  bool binary(binary_t&) override { fail("unexpected binary value"); }

  bool start_object(std::size_t) override {
    if (depth_ != 0) fail("unexpected object");
    ++depth_;
    return true;
  }
  bool key(string_t& k) override {
    if (k != "outer" && k != "holes") fail("unknown key \"" + k + "\"");
    if ((k == "outer" && have_outer) || (k == "holes" && have_holes_)) fail("duplicate key \"" + k + "\"");
    key_ = k;
    if (k == "outer") have_outer = true;
    if (k == "holes") have_holes_ = true;
    return true;
  }
  bool end_object() override {
    --depth_;
    return true;
  }
  bool start_array(std::size_t) override {
    ++depth_;
    if (depth_ == 1) fail("expected an object");
    if (depth_ == 2) ring_ = 0;
    if (depth_ == 3 && key_ == "holes") {
      rings.emplace_back();
      ring_ = rings.size() - 1;
    }
    if (depth_ == point_depth()) coord_.clear();
    if (depth_ > point_depth()) fail("unexpected array");
    return true;
  }
  bool end_array() override {
    if (depth_ == point_depth()) {
      if (coord_.size() != 2) fail("a point needs two coordinates");
      rings[ring_].push_back({coord_[0], coord_[1]});
    }
    --depth_;
    return true;
  }
  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) override {
    auto [l, c] = line_col(text_, position > 0 ? position - 1 : 0);
    std::string what = ex.what();
    auto cut = what.find("syntax error");
    throw ParseError(cut == std::string::npos ? what : what.substr(cut), l, c);
  }

 private:
  int point_depth() const { return key_ == "holes" ? 4 : 3; }

  [[noreturn]] void fail(const std::string& msg) {
    size_t off = static_cast<size_t>(*latest_ - text_.data());
    auto [l, c] = line_col(text_, off > 0 ? off - 1 : 0);
    throw ParseError(msg, l, c);
  }

  bool scalar(const std::string& s) {
    if (depth_ != point_depth() || coord_.size() >= 2) fail("unexpected value");
    try {
      coord_.push_back(parse_scalar(s));
    } catch (const Error& e) {
      fail(e.what());
    }
    return true;
  }

  const std::string& text_;
  const char** latest_;
  int depth_ = 0;
  std::string key_;
  bool have_holes_ = false;
  std::vector<Scalar> coord_;
  size_t ring_ = 0;
};

Json dir_json(const Dir& d) { return Json::array({to_string(d.dx), to_string(d.dy)}); }
Dir dir_of(const Json& j) { return {parse_scalar(j.at(0).get<std::string>()), parse_scalar(j.at(1).get<std::string>())}; }

Json profile_json(const SideProfile& p) { return {{"breaks", p.breaks}, {"values", p.values}}; }
SideProfile profile_of(const Json& j) {
  return {j.at("breaks").get<std::vector<double>>(), j.at("values").get<std::vector<double>>()};
}

const char* kind_name(Endpoint::Kind k) {
  switch (k) {
    case Endpoint::Kind::Begin:
      return "begin";
    case Endpoint::Kind::End:
      return "end";
    case Endpoint::Kind::Break:
      return "break";
    case Endpoint::Kind::Root:
      return "root";
  }
  return "begin";
}

Endpoint::Kind kind_of(const std::string& s) {
  if (s == "end") return Endpoint::Kind::End;
  if (s == "break") return Endpoint::Kind::Break;
  if (s == "root") return Endpoint::Kind::Root;
  if (s == "begin") return Endpoint::Kind::Begin;
  throw ArtifactError("unknown endpoint kind " + s);
}

Json end_json(const SymbolicEnd& e) {
  return {{"cell", e.cell},
          {"kind", kind_name(e.endpoint.kind)},
          {"side", e.endpoint.side},
          {"piece", e.endpoint.piece},
          {"theta", e.endpoint.theta}};
}

SymbolicEnd end_of(const Json& j) {
  SymbolicEnd e;
  e.cell = j.at("cell").get<int>();
  e.endpoint.kind = kind_of(j.at("kind").get<std::string>());
  e.endpoint.side = j.at("side").get<int>();
  e.endpoint.piece = j.at("piece").get<int>();
  e.endpoint.theta = j.at("theta").get<double>();
  return e;
}

Json spec_json(const SymbolicEnd& e) {
  Json j{{"cell", e.cell}, {"kind", kind_name(e.endpoint.kind)}};
  if (e.endpoint.kind == Endpoint::Kind::Root || e.endpoint.kind == Endpoint::Kind::Break) {
    j["side"] = e.endpoint.side;
    j["piece"] = e.endpoint.piece;
  }
  return j;
}

Json vec_json(const Vec2& v) { return Json::array({v.x, v.y}); }
double angle(double a) { return round12(a); }

Json curve_json(const WallCurve& c) {
  if (const auto* arc = std::get_if<CircularArc>(&c))
    return {{"type", "circle"}, {"center", vec_json(arc->center)}, {"radius", arc->radius}};
  const auto& k = std::get<ConchoidArc>(c);
  return {{"type", "conchoid"}, {"pole", vec_json(k.pole)}, {"normal", vec_json(k.normal)}, {"offset", k.k},
          {"d", k.offset_d}};
}

Json antipodal_curve_json(const std::variant<EllipseArc, ParallelBand>& c) {
  if (const auto* arc = std::get_if<EllipseArc>(&c))
    return {{"type", "ellipse_arc"},
            {"center", vec_json(arc->ellipse.center)},
            {"a", arc->ellipse.a},
            {"b", arc->ellipse.b},
            {"rotation", angle(normalize_angle(arc->ellipse.rotation))},
            {"theta_begin", angle(arc->theta_begin)},
            {"theta_end", angle(arc->theta_end)},
            {"d1", arc->d1}};
  const auto& b = std::get<ParallelBand>(c);
  return {{"type", "parallel_band"},
          {"theta", angle(b.theta)},
          {"from", vec_json(b.from)},
          {"to", vec_json(b.to)},
          {"extension", "parallel support lines"}};
}

Json pairs_json(const std::vector<PairInterval>& pairs) {
  Json out = Json::array();
  for (const auto& p : pairs) out.push_back({{"e_t", p.e_t}, {"e_b", p.e_b}, {"lo", angle(p.lo)}, {"hi", angle(p.hi)}});
  return out;
}

// Pose at angle theta on the chord of length d1 + d2 between the support lines.
Vec2 chord_pose(const Workspace& w, int e_t, int e_b, double d1, double d2, double theta) {
  double ux = std::cos(theta), uy = std::sin(theta);
  double ax = w.ax(e_t), ay = w.ay(e_t);
  double ex = w.ax(w.next(e_t)) - ax, ey = w.ay(w.next(e_t)) - ay;
  double bx = w.ax(e_b), by = w.ay(e_b);
  double fx = w.ax(w.next(e_b)) - bx, fy = w.ay(w.next(e_b)) - by;
  double nx = -fy, ny = fx;
  double s = (nx * (bx - ax + (d1 + d2) * ux) + ny * (by - ay + (d1 + d2) * uy)) / (nx * ex + ny * ey);
  return {ax + s * ex - d1 * ux, ay + s * ey - d1 * uy};
}

template <class F>
void sample_polyline(const F& f, double t0, double t1, double dev, int depth, std::vector<Vec2>& out) {
  Vec2 p0 = f(t0), p1 = f(t1), pm = f(0.5 * (t0 + t1));
  double ex = p1.x - p0.x, ey = p1.y - p0.y, len = std::hypot(ex, ey);
  double err = len > 0 ? std::abs(ex * (pm.y - p0.y) - ey * (pm.x - p0.x)) / len : std::hypot(pm.x - p0.x, pm.y - p0.y);
  if (depth >= 16 || err <= dev) {
    out.push_back(p1);
    return;
  }
  sample_polyline(f, t0, 0.5 * (t0 + t1), dev, depth + 1, out);
  sample_polyline(f, 0.5 * (t0 + t1), t1, dev, depth + 1, out);
}

template <class F>
std::vector<Vec2> polyline(const F& f, double t0, double t1, double dev) {
  std::vector<Vec2> out{f(t0)};
  if (t1 <= t0) return out;
  for (int i = 0; i < 4; ++i) sample_polyline(f, t0 + (t1 - t0) * i / 4, t0 + (t1 - t0) * (i + 1) / 4, dev, 0, out);
  return out;
}

}  // namespace

Workspace parse_workspace(const std::string& text) {
  const char* latest = text.data();
  WorkspaceSax sax(text, &latest);
  TrackingIterator first{text.data(), &latest}, last{text.data() + text.size(), &latest};
  Json::sax_parse(first, last, &sax);
  if (!sax.have_outer) {
    auto [l, c] = line_col(text, text.size());
    throw ParseError("missing \"outer\" ring", l, c);
  }
  return Workspace::from_rings(sax.rings);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("cannot write " + path);
}

Workspace load_workspace(const std::string& path) { return parse_workspace(read_file(path)); }

Json workspace_to_json(const Workspace& w) {
  auto ring_json = [&](int r) {
    Json out = Json::array();
    for (int v : w.ring(r)) out.push_back(Json::array({to_string(w.vertex(v).x), to_string(w.vertex(v).y)}));
    return out;
  };
  Json holes = Json::array();
  for (int r = 1; r < w.ring_count(); ++r) holes.push_back(ring_json(r));
  return {{"outer", ring_json(0)}, {"holes", holes}};
}

std::string workspace_hash(const Workspace& w) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : workspace_to_json(w).dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return fmt::format("{:016x}", h);
}

Artifact build_artifact(const Workspace& w) {
  Artifact a;
  a.workspace = w;
  auto vg = build_visibility(w);
  a.visibility_edges = static_cast<int>(vg.edges.size());
  a.rtd = build_rtd(w, vg);
  a.single = build_single_index(a.rtd.cells);
  a.antipodal = build_antipodal_index(a.rtd.cells);
  a.opt = build_opt_index(w, a.rtd.cells);
  a.critical = critical_values(a.rtd.cells);
  return a;
}

std::string serialize_artifact(const Artifact& a) {
  Json j;
  j["version"] = kArtifactVersion;
  j["workspace"] = workspace_to_json(a.workspace);
  j["workspace_hash"] = workspace_hash(a.workspace);
  j["visibility_edges"] = a.visibility_edges;
  Json cells = Json::array();
  for (const auto& c : a.rtd.cells)
    cells.push_back({{"id", c.id},
                     {"e_t", c.e_t},
                     {"e_b", c.e_b},
                     {"v_l", c.v_l},
                     {"v_r", c.v_r},
                     {"begin", dir_json(c.begin)},
                     {"end", dir_json(c.end)},
                     {"end_full_turn", c.end_full_turn},
                     {"theta_begin", c.theta_begin},
                     {"theta_end", c.theta_end},
                     {"parallel", c.parallel},
                     {"left", profile_json(c.left)},
                     {"right", profile_json(c.right)}});
  j["cells"] = cells;
  Json events = Json::array();
  for (const auto& e : a.rtd.events)
    events.push_back({{"kind", e.kind == EventKind::TypeI ? "I" : "II"},
                      {"origin", e.origin},
                      {"target", e.target},
                      {"direction", dir_json(e.direction)},
                      {"terminated", e.terminated},
                      {"created", e.created}});
  j["events"] = events;
  j["single_index"] = {{"order", a.single.order}, {"max_opening", a.single.max_opening}};
  Json spans = Json::array();
  for (const auto& s : a.antipodal.spans) spans.push_back(Json::array({s.lo, s.hi, s.cell}));
  j["antipodal_index"] = spans;
  Json opt = Json::array();
  for (const auto& m : a.opt.intervals)
    opt.push_back({{"e_t", m.e_t}, {"e_b", m.e_b}, {"lo", end_json(m.lo)}, {"hi", end_json(m.hi)}, {"d_lo", m.d_lo},
                   {"d_hi", m.d_hi}});
  j["opt_index"] = opt;
  j["critical_values"] = std::vector<double>(a.critical.begin() + 1, a.critical.end() - 1);
  return j.dump() + "\n";
}

Artifact deserialize_artifact(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ArtifactError(std::string("artifact is not valid JSON: ") + e.what());
  }
  try {
    if (j.value("version", "") != kArtifactVersion) throw ArtifactError("unsupported artifact version");
    Artifact a;
    a.workspace = parse_workspace(j.at("workspace").dump());
    if (workspace_hash(a.workspace) != j.at("workspace_hash").get<std::string>())
      throw ArtifactError("artifact workspace hash mismatch");
    a.visibility_edges = j.at("visibility_edges").get<int>();
    for (const auto& c : j.at("cells")) {
      RtdCell cell;
      cell.id = c.at("id");
      cell.e_t = c.at("e_t");
      cell.e_b = c.at("e_b");
      cell.v_l = c.at("v_l");
      cell.v_r = c.at("v_r");
      cell.begin = dir_of(c.at("begin"));
      cell.end = dir_of(c.at("end"));
      cell.end_full_turn = c.at("end_full_turn");
      cell.theta_begin = c.at("theta_begin");
      cell.theta_end = c.at("theta_end");
      cell.parallel = c.at("parallel");
      cell.left = profile_of(c.at("left"));
      cell.right = profile_of(c.at("right"));
      if (cell.id != static_cast<int>(a.rtd.cells.size())) throw ArtifactError("cells out of order");
      a.rtd.cells.push_back(std::move(cell));
    }
    for (const auto& e : j.at("events"))
      a.rtd.events.push_back({e.at("kind") == "I" ? EventKind::TypeI : EventKind::TypeII, e.at("origin"),
                              e.at("target"), dir_of(e.at("direction")), e.at("terminated"), e.at("created")});
    a.single.order = j.at("single_index").at("order").get<std::vector<int>>();
    a.single.max_opening = j.at("single_index").at("max_opening").get<std::vector<double>>();
    std::vector<IntervalTree<int>::Entry> entries;
    for (const auto& s : j.at("antipodal_index")) {
      a.antipodal.spans.push_back({s.at(0), s.at(1), s.at(2)});
      entries.push_back({s.at(0), s.at(1), s.at(2)});
    }
    a.antipodal.tree = IntervalTree<int>(std::move(entries));
    for (const auto& m : j.at("opt_index"))
      a.opt.intervals.push_back({m.at("e_t"), m.at("e_b"), end_of(m.at("lo")), end_of(m.at("hi")), m.at("d_lo"),
                                 m.at("d_hi")});
    index_intervals(a.opt);
    a.critical = {0.0};
    for (double v : j.at("critical_values")) a.critical.push_back(v);
    a.critical.push_back(std::numeric_limits<double>::infinity());
    return a;
  } catch (const Json::exception& e) {
    throw ArtifactError(std::string("malformed artifact: ") + e.what());
  } catch (const ParseError& e) {
    throw ArtifactError(std::string("malformed artifact workspace: ") + e.what());
  }
}

double round12(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  return std::stod(fmt::format("{:.12g}", v));
}

Json single_json(const Artifact& a, const SingleResult& r, bool regions) {
  Json j{{"query", "single"}, {"inspected", r.inspected}};
  Json cells = Json::array();
  Json regs = Json::array();
  for (const auto& pre : r.cells) {
    const RtdCell& c = a.rtd.cells[pre.cell];
    Json ranges = Json::array();
    for (const auto& rg : pre.ranges) ranges.push_back({{"begin", angle(rg.begin)}, {"end", angle(rg.end)}});
    cells.push_back({{"cell", c.id}, {"e_t", c.e_t}, {"e_b", c.e_b}, {"v_l", c.v_l}, {"v_r", c.v_r}, {"ranges", ranges}});
    if (!regions) continue;
    auto reg = project_region(a.workspace, c, pre.d);
    Json pieces = Json::array();
    for (const auto& p : reg.pieces)
      pieces.push_back({{"theta_begin", angle(p.theta_begin)},
                        {"theta_end", angle(p.theta_end)},
                        {"left", curve_json(p.left)},
                        {"right", curve_json(p.right)}});
    regs.push_back({{"cell", c.id},
                    {"pieces", pieces},
                    {"floor", {{"normal", vec_json(reg.floor_normal)}, {"offset", reg.floor_offset}}}});
  }
  j["d"] = r.d;
  j["cells"] = cells;
  if (regions) j["regions"] = regs;
  if (r.cells.empty()) j["notice"] = "no poses";
  return j;
}

Json antipodal_json(const Artifact& a, double d1, double d2, const std::vector<AntipodalMatch>& m) {
  Json matches = Json::array();
  for (const auto& x : m)
    matches.push_back({{"cell", x.cell},
                       {"e_t", x.e_t},
                       {"e_b", x.e_b},
                       {"lo", angle(x.range.lo.theta)},
                       {"hi", angle(x.range.hi.theta)},
                       {"lo_spec", spec_json({x.cell, x.range.lo})},
                       {"hi_spec", spec_json({x.cell, x.range.hi})},
                       {"curve", antipodal_curve_json(x.curve)}});
  (void)a;
  Json j{{"query", "antipodal"}, {"engine", "rtd"}, {"d1", d1}, {"d2", d2}, {"matches", matches},
         {"pairs", pairs_json(merge_by_pair(m))}};
  if (m.empty()) j["notice"] = "no poses";
  return j;
}

Json opt_json(const Artifact& a, double d1, double d2, const std::vector<OptMatch>& m) {
  (void)a;
  Json intervals = Json::array();
  std::vector<PairInterval> pairs;
  for (const auto& x : m) {
    intervals.push_back({{"e_t", x.interval.e_t},
                         {"e_b", x.interval.e_b},
                         {"lo", angle(x.interval.lo)},
                         {"hi", angle(x.interval.hi)},
                         {"lo_cell", x.lo_cell},
                         {"hi_cell", x.hi_cell},
                         {"curve", antipodal_curve_json(x.curve)}});
    pairs.push_back(x.interval);
  }
  Json j{{"query", "antipodal"}, {"engine", "opt"}, {"d1", d1}, {"d2", d2}, {"intervals", intervals},
         {"pairs", pairs_json(pairs)}};
  if (m.empty()) j["notice"] = "no poses";
  return j;
}

SvgLayers single_layers(const Artifact& a, const SingleResult& r, const RenderStyle& style) {
  SvgLayers out;
  for (const auto& pre : r.cells) {
    auto rings = flatten_region(project_region(a.workspace, a.rtd.cells[pre.cell], pre.d), style.deviation);
    out.fills.insert(out.fills.end(), rings.begin(), rings.end());
  }
  return out;
}

SvgLayers antipodal_layers(const Artifact& a, double d1, double d2, const std::vector<AntipodalMatch>& m,
                           const RenderStyle& style) {
  SvgLayers out;
  for (const auto& x : m) {
    if (const auto* b = std::get_if<ParallelBand>(&x.curve)) {
      out.curves.push_back({b->from, b->to});
      continue;
    }
    auto f = [&](double th) { return chord_pose(a.workspace, x.e_t, x.e_b, d1, d2, th); };
    out.curves.push_back(polyline(f, x.range.lo.theta, x.range.hi.theta, style.deviation));
  }
  return out;
}

SvgLayers opt_layers(const Artifact& a, double d1, double d2, const std::vector<OptMatch>& m,
                     const RenderStyle& style) {
  SvgLayers out;
  for (const auto& x : m) {
    if (const auto* b = std::get_if<ParallelBand>(&x.curve)) {
      out.curves.push_back({b->from, b->to});
      continue;
    }
    auto f = [&](double th) { return chord_pose(a.workspace, x.interval.e_t, x.interval.e_b, d1, d2, th); };
    out.curves.push_back(polyline(f, x.interval.lo, x.interval.hi, style.deviation));
  }
  return out;
}

std::string render_svg(const Workspace& w, const SvgLayers& layers, const RenderStyle& style) {
  double x0 = w.ax(0), x1 = x0, y0 = w.ay(0), y1 = y0;
  for (int v = 0; v < w.size(); ++v) {
    x0 = std::min(x0, w.ax(v));
    x1 = std::max(x1, w.ax(v));
    y0 = std::min(y0, w.ay(v));
    y1 = std::max(y1, w.ay(v));
  }
  double span = std::max(x1 - x0, y1 - y0);
  double margin = 0.05 * span;
  double s = style.pixels / (span + 2 * margin);
  double width = (x1 - x0 + 2 * margin) * s, height = (y1 - y0 + 2 * margin) * s;
  auto X = [&](double x) { return (x - x0 + margin) * s; };
  auto Y = [&](double y) { return (y1 - y + margin) * s; };
  auto path = [&](const std::vector<Vec2>& pts, bool closed) {
    std::string d;
    for (size_t i = 0; i < pts.size(); ++i) d += fmt::format("{}{:.3f} {:.3f} ", i == 0 ? "M" : "L", X(pts[i].x), Y(pts[i].y));
    if (closed) d += "Z";
    return d;
  };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.3f} {:.3f}\">\n",
      std::ceil(width), std::ceil(height), width, height);
  std::string ws;
  for (int r = 0; r < w.ring_count(); ++r) {
    std::vector<Vec2> pts;
    for (int v : w.ring(r)) pts.push_back({w.ax(v), w.ay(v)});
    ws += path(pts, true);
  }
  out += fmt::format("<path d=\"{}\" fill=\"#f5f5f0\" fill-rule=\"evenodd\" stroke=\"none\"/>\n", ws);
  for (const auto& ring : layers.fills)
    out += fmt::format("<path d=\"{}\" fill=\"#1f4e9c\" fill-opacity=\"{:.3f}\" stroke=\"none\"/>\n", path(ring, true),
                       style.fill_opacity);
  for (const auto& c : layers.curves)
    out += fmt::format("<path d=\"{}\" fill=\"none\" stroke=\"#b8322a\" stroke-width=\"{:.2f}\"/>\n", path(c, false),
                       style.curve_width);
  out += fmt::format("<path d=\"{}\" fill=\"none\" stroke=\"#222222\" stroke-width=\"{:.2f}\"/>\n", ws,
                     style.outline_width);
  out += "</svg>\n";
  return out;
}

}  // namespace localizer
