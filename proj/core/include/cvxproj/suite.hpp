#pragma once

#include "cvxproj/catalog.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cvx {

struct CheckRecord {
    std::string name;
    std::string status; // PASS / FAIL / SKIP
    double margin = 0.0;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<CheckRecord> records; // sorted by name
    int exit_status() const;          // 0 iff no FAIL record
};

std::vector<std::string> suite_names();

/// Runs one of the built-in check suites against the given scenes (catalog
/// defaults when empty). All randomness flows from the seed; identical
/// invocations produce identical reports. Throws UnknownSuite and
/// SceneIncompatible.
SuiteReport run_check_suite(const std::string& suite, const std::vector<Scene>& scenes,
                            std::uint64_t seed);

/// Machine-readable JSON for a report; records sorted by name, stable layout.
std::string report_to_json(const SuiteReport& report);

struct EmitParams {
    int grid = 50;         // distance-field resolution
    int word_length = 8;   // orbit radius
    int steps = 20;        // geodesic subdivisions
    std::optional<Vec> x;  // geodesic endpoints, affine coordinates
    std::optional<Vec> y;
};

/// CSV sample emission: "geodesic" (chord parameter vs arc length), "orbit"
/// (word, chart coordinates), "distance-field" (grid point, distance to the
/// interior base point). Metric kinds require a proper scene (NotProper).
std::string emit_samples(const Scene& scene, const std::string& kind,
                         const EmitParams& params, std::uint64_t seed);

} // namespace cvx
