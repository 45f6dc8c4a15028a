#pragma once

#include <string>
#include <vector>

#include "curvepi/cover.hpp"
#include "curvepi/curve.hpp"
#include "curvepi/oracle.hpp"
#include "curvepi/perm_group.hpp"
#include "curvepi/realizability.hpp"

namespace curvepi {

std::string read_file(const std::string& path);

// Omitted "points" are inferred from the identifications and removed points.
CurveConfiguration config_from_json(const std::string& text);
CurveConfiguration load_config(const std::string& path);
std::string config_to_json(const CurveConfiguration& config, bool pretty = false);

// A catalog or family name, or {"degree": n, "generators": [[...], ...]}.
PermutationGroup group_from_json(const std::string& text);
// A group file path if it exists, otherwise a name.
PermutationGroup resolve_group(const std::string& spec);
std::string group_to_json(const PermutationGroup& g, bool pretty = false);

// Relative config and group paths are resolved against base_dir.
CoverDescriptor cover_from_json(const std::string& text, const std::string& base_dir = ".");
CoverDescriptor load_cover(const std::string& path);
std::string cover_to_json(const CoverDescriptor& cover, bool pretty = false);

std::string verdict_to_json(const RealizabilityVerdict& v, bool pretty = false);
std::string rank_report_to_json(const RankReport& r, bool pretty = false);
std::string violations_to_json(const std::vector<Violation>& v, bool pretty = false);
std::string census_to_json(const CurveConfiguration& config, const std::vector<CensusEntry>& census,
                           bool pretty = false);
std::string census_to_text(const CurveConfiguration& config, const std::vector<CensusEntry>& census);
std::string enumeration_to_json(const PermutationGroup& g, const CurveConfiguration& config,
                                const EnumerationResult& r, bool pretty = false);
std::string descent_report_to_json(const DescentReport& r, bool pretty = false);

// Runs a gluing script: {"cover": <cover or path>, "steps": [...]} where each
// step is {"op": "same_component", "group", "gamma", "y1", "y2"} or
// {"op": "two_components", "group", "cover", "y1", "y2"}.
CoverDescriptor run_glue_script(const std::string& text, const std::string& base_dir = ".");

}  // namespace curvepi
