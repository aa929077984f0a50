#include "tspn/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tspn/error.hpp"

namespace tspn {

using Json = nlohmann::ordered_json;

namespace {

double number(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number()) throw InvalidInput(where + ": missing numeric field '" + key + "'");
  double v = it->get<double>();
  if (!std::isfinite(v)) throw InvalidInput(where + ": non-finite '" + key + "'");
  return v;
}

Point point(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw InvalidInput(where + ": missing point '" + key + "'");
  if (it->is_array()) {
    if (it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number())
      throw InvalidInput(where + ": point '" + key + "' must be [x, y]");
    return {(*it)[0].get<double>(), (*it)[1].get<double>()};
  }
  if (!it->is_object()) throw InvalidInput(where + ": point '" + key + "' must be an object");
  std::string sub = where + "." + key;
  return {number(*it, "x", sub), number(*it, "y", sub)};
}

Json point_json(Point p) { return Json::array({p.x, p.y}); }

Point point_from_array(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidInput(where + ": expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json parse_json(std::string_view text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string(what) + " is not valid JSON: " + e.what());
  }
}

void check_version(const Json& j, const char* what) {
  if (!j.is_object()) throw InvalidInput(std::string(what) + " must be a JSON object");
  auto it = j.find("version");
  if (it == j.end() || !it->is_number_integer() || it->get<int>() != kFormatVersion)
    throw InvalidInput(std::string(what) + ": unsupported or missing version (expected " +
                       std::to_string(kFormatVersion) + ")");
}

template <class Fn>
auto with_context(const std::string& where, Fn fn) {
  try {
    return fn();
  } catch (const InvalidInput& e) {
    std::string msg = e.what();
    if (msg.rfind(where, 0) == 0) throw;
    throw InvalidInput(where + ": " + msg);
  }
}

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t word) {
  for (int k = 0; k < 8; ++k) {
    h ^= (word >> (8 * k)) & 0xffu;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a(std::uint64_t h, double v) {
  if (v == 0.0) v = 0.0;  // -0 and +0 hash alike
  return fnv1a(h, std::bit_cast<std::uint64_t>(v));
}

}  // namespace

std::string_view to_string(RegionKind k) { return k == RegionKind::Lines ? "lines" : "rays"; }

Instance parse_instance(std::string_view text) {
  Json j = parse_json(text, "instance");
  check_version(j, "instance");
  Instance inst;
  auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) throw InvalidInput("instance: missing 'kind'");
  if (*kind == "lines")
    inst.kind = RegionKind::Lines;
  else if (*kind == "rays")
    inst.kind = RegionKind::Rays;
  else
    throw InvalidInput("instance: kind must be 'lines' or 'rays'");
  auto regions = j.find("regions");
  if (regions == j.end() || !regions->is_array()) throw InvalidInput("instance: missing 'regions' array");
  if (regions->empty()) throw InvalidInput("instance: at least one region is required");

  for (std::size_t i = 0; i < regions->size(); ++i) {
    const Json& r = (*regions)[i];
    std::string where = "region " + std::to_string(i);
    if (!r.is_object()) throw InvalidInput(where + ": must be an object");
    with_context(where, [&] {
      if (inst.kind == RegionKind::Lines) {
        if (r.contains("p1") || r.contains("p2"))
          inst.lines.push_back(Line::through(point(r, "p1", where), point(r, "p2", where)));
        else
          inst.lines.push_back(Line::from_general(number(r, "a", where), number(r, "b", where), number(r, "c", where)));
      } else {
        Point apex = point(r, "apex", where);
        if (r.contains("angle_degrees"))
          inst.rays.push_back(Ray::from_angle(apex, number(r, "angle_degrees", where) * kPi / 180.0));
        else
          inst.rays.push_back(Ray::make(apex, point(r, "dir", where)));
      }
      return 0;
    });
  }
  return inst;
}

Instance read_instance(const std::filesystem::path& path) { return parse_instance(read_text_file(path)); }

std::string instance_to_json(const Instance& inst) {
  Json j;
  j["version"] = kFormatVersion;
  j["kind"] = to_string(inst.kind);
  Json regions = Json::array();
  if (inst.kind == RegionKind::Lines) {
    for (const Line& l : inst.lines) regions.push_back({{"a", l.a()}, {"b", l.b()}, {"c", l.c()}});
  } else {
    for (const Ray& r : inst.rays)
      regions.push_back({{"apex", {{"x", r.apex().x}, {"y", r.apex().y}}}, {"dir", {{"x", r.dir().x}, {"y", r.dir().y}}}});
  }
  j["regions"] = std::move(regions);
  return j.dump(2) + "\n";
}

std::string instance_hash(const Instance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv1a(h, static_cast<std::uint64_t>(inst.kind == RegionKind::Lines ? 1 : 2));
  if (inst.kind == RegionKind::Lines) {
    for (const Line& l : inst.lines) h = fnv1a(fnv1a(fnv1a(h, l.a()), l.b()), l.c());
  } else {
    for (const Ray& r : inst.rays) h = fnv1a(fnv1a(fnv1a(fnv1a(h, r.apex().x), r.apex().y), r.dir().x), r.dir().y);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string_view to_string(RunMode m) {
  switch (m) {
    case RunMode::TourLines: return "tour-lines";
    case RunMode::PathLines: return "path-lines";
    case RunMode::TourRays: return "tour-rays";
    case RunMode::PathRays: return "path-rays";
  }
  return "unknown";
}

RunMode parse_run_mode(std::string_view s) {
  for (RunMode m : {RunMode::TourLines, RunMode::PathLines, RunMode::TourRays, RunMode::PathRays})
    if (to_string(m) == s) return m;
  throw InvalidInput("unknown mode '" + std::string(s) + "'");
}

RegionKind kind_of(RunMode m) {
  return (m == RunMode::TourLines || m == RunMode::PathLines) ? RegionKind::Lines : RegionKind::Rays;
}

namespace {

CertificateMethod parse_method(std::string_view s) {
  for (auto m : {CertificateMethod::DenseSweepLemma1, CertificateMethod::DenseSweepPath, CertificateMethod::DenseSweepRayPath,
                 CertificateMethod::KnownOptimum, CertificateMethod::BasisEnum})
    if (to_string(m) == s) return m;
  throw InvalidInput("result: unknown certificate method '" + std::string(s) + "'");
}

}  // namespace

std::string result_to_json(const ResultFile& rf) {
  const TourResult& r = rf.result;
  Json j;
  j["version"] = kFormatVersion;
  j["mode"] = to_string(rf.mode);
  j["instance_hash"] = rf.instance_hash;
  j["epsilon"] = r.epsilon;
  j["seed"] = r.seed;
  j["m"] = r.m;
  j["winning_angle_index"] = r.winning_angle_index;
  j["winning_angle"] = r.rect.frame_angle;
  Json corners = Json::array();
  for (Point p : r.rect.corners()) corners.push_back(point_json(p));
  j["rectangle"] = {{"frame_angle", r.rect.frame_angle},
                    {"x1", r.rect.x1},
                    {"x2", r.rect.x2},
                    {"y1", r.rect.y1},
                    {"y2", r.rect.y2},
                    {"corners", std::move(corners)}};
  j["objective_value"] = r.objective_value;
  Json path = Json::array();
  for (Point p : r.path) path.push_back(point_json(p));
  j["path"] = std::move(path);
  j["degenerate"] = r.degenerate;
  if (r.certificate) {
    const RatioCertificate& c = *r.certificate;
    Json cj{{"output_value", c.output_value}, {"lower_bound", c.lower_bound}};
    if (c.ratio) cj["ratio"] = *c.ratio;
    cj["bound"] = c.bound;
    cj["method"] = to_string(c.method);
    cj["passed"] = c.passed();
    j["certificate"] = std::move(cj);
  }
  if (rf.elapsed_ms) j["timing"] = {{"elapsed_ms", *rf.elapsed_ms}};
  return j.dump(2) + "\n";
}

ResultFile parse_result(std::string_view text) {
  Json j = parse_json(text, "result");
  check_version(j, "result");
  try {
    ResultFile rf;
    rf.mode = parse_run_mode(j.at("mode").get<std::string>());
    rf.instance_hash = j.at("instance_hash").get<std::string>();
    TourResult& r = rf.result;
    r.mode = (rf.mode == RunMode::TourLines || rf.mode == RunMode::TourRays) ? Mode::Tour : Mode::Path;
    r.epsilon = j.at("epsilon").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.m = j.at("m").get<std::size_t>();
    r.winning_angle_index = j.at("winning_angle_index").get<std::size_t>();
    const Json& rect = j.at("rectangle");
    r.rect = {rect.at("frame_angle").get<double>(), rect.at("x1").get<double>(), rect.at("x2").get<double>(),
              rect.at("y1").get<double>(), rect.at("y2").get<double>()};
    r.objective_value = j.at("objective_value").get<double>();
    const Json& path = j.at("path");
    for (std::size_t i = 0; i < path.size(); ++i) r.path.push_back(point_from_array(path[i], "result path vertex " + std::to_string(i)));
    r.degenerate = j.at("degenerate").get<bool>();
    if (auto c = j.find("certificate"); c != j.end()) {
      RatioCertificate cert;
      cert.output_value = c->at("output_value").get<double>();
      cert.lower_bound = c->at("lower_bound").get<double>();
      if (c->contains("ratio")) cert.ratio = c->at("ratio").get<double>();
      cert.bound = c->at("bound").get<double>();
      cert.method = parse_method(c->at("method").get<std::string>());
      r.certificate = cert;
    }
    if (auto t = j.find("timing"); t != j.end()) rf.elapsed_ms = t->at("elapsed_ms").get<double>();
    return rf;
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("result: ") + e.what());
  }
}

ResultFile read_result(const std::filesystem::path& path) { return parse_result(read_text_file(path)); }

Polyline parse_curve(std::string_view text) {
  Json j = parse_json(text, "curve");
  check_version(j, "curve");
  auto v = j.find("vertices");
  if (v == j.end() || !v->is_array()) throw InvalidInput("curve: missing 'vertices' array");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < v->size(); ++i) pts.push_back(point_from_array((*v)[i], "curve vertex " + std::to_string(i)));
  return Polyline(std::move(pts));
}

Polyline read_curve(const std::filesystem::path& path) { return parse_curve(read_text_file(path)); }

std::string curve_to_json(const Polyline& curve) {
  Json j;
  j["version"] = kFormatVersion;
  Json v = Json::array();
  for (Point p : curve.vertices()) v.push_back(point_json(p));
  j["vertices"] = std::move(v);
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename onto '" + path.string() + "': " + ec.message());
  }
}

}  // namespace tspn
