#pragma once

// Versioned JSON file formats (instances, results, curves), instance hashing
// and atomic file output.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tspn/geom.hpp"
#include "tspn/sweep.hpp"

namespace tspn {

inline constexpr int kFormatVersion = 1;

enum class RegionKind { Lines, Rays };

std::string_view to_string(RegionKind k);

struct Instance {
  RegionKind kind = RegionKind::Lines;
  std::vector<Line> lines;
  std::vector<Ray> rays;

  std::size_t size() const { return kind == RegionKind::Lines ? lines.size() : rays.size(); }
};

/// Accepts {"version":1,"kind":"lines","regions":[...]} where a line is
/// {"a","b","c"} or {"p1":{x,y},"p2":{x,y}} and a ray is
/// {"apex":{x,y},"dir":{x,y}} or {"apex":{x,y},"angle_degrees":d}.
/// Throws InvalidInput naming the offending record index.
Instance parse_instance(std::string_view text);
Instance read_instance(const std::filesystem::path& path);
/// Canonical form: lines as {a,b,c}, rays as {apex,dir}.
std::string instance_to_json(const Instance& inst);

/// FNV-1a 64 over the kind and the bit patterns of the canonical
/// coefficients, as 16 lowercase hex digits.
std::string instance_hash(const Instance& inst);

enum class RunMode { TourLines, PathLines, TourRays, PathRays };

std::string_view to_string(RunMode m);
RunMode parse_run_mode(std::string_view s);
RegionKind kind_of(RunMode m);

struct ResultFile {
  RunMode mode = RunMode::TourLines;
  TourResult result;
  std::string instance_hash;
  /// Wall-clock milliseconds; not part of the deterministic content.
  std::optional<double> elapsed_ms;
};

std::string result_to_json(const ResultFile& r);
ResultFile parse_result(std::string_view text);
ResultFile read_result(const std::filesystem::path& path);

/// {"version":1,"vertices":[[x,y],...]}
Polyline parse_curve(std::string_view text);
Polyline read_curve(const std::filesystem::path& path);
std::string curve_to_json(const Polyline& curve);

std::string read_text_file(const std::filesystem::path& path);
/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace tspn
