#pragma once

#include "cvxproj/catalog.hpp"
#include "cvxproj/equivariant.hpp"

#include <string>

namespace cvx {

// Matrices and vectors serialize as row-major JSON arrays of doubles:
// a vector is [x0, x1, ...], a matrix a list of rows.

std::string matrix_to_json(const Mat& m);
Mat matrix_from_json(const std::string& text);
Vec vector_from_json(const std::string& text);

/// {"type":"polytope","chart":[...],"vertices":[[...],...]} |
/// {"type":"ellipsoid","chart":[...],"center":[...],"shape":[[...],...]} |
/// {"type":"interval","chart":[...],"endpoints":[lo,hi]} |
/// {"type":"halfspaces","chart":[...],"normals":[[...],...],"offsets":[...]}
/// The chart defaults to the standard chart; "proper":false tags a stand-in.
std::string body_to_json(const ConvexBody& body);
ConvexBody body_from_json(const std::string& text);

/// {"generators":[{"label":"a","matrix":[[...],...]}, ...]}
std::string group_to_json(const GroupGens& group);
GroupGens group_from_json(const std::string& text);

/// {"type":"rays","rays":[[...],...]} | {"type":"over-body","body":{...}}
std::string cone_to_json(const ConvexCone& cone);
ConvexCone cone_from_json(const std::string& text);

std::string scene_to_json(const Scene& scene);
Scene scene_from_json(const std::string& text);

/// {"source":{group},"image":[[[...]]],"source_cone":{...},"target_cone":{...}}
Equivariance equivariance_from_json(const std::string& text);
/// Cones bundled with an equivariance file for the solve subcommand.
std::pair<ConvexCone, ConvexCone> equivariance_cones_from_json(const std::string& text);

std::string basis_to_json(const std::vector<Mat>& basis);

std::string decomposition_to_json(const Decomposition& decomposition,
                                  const DecompositionReport& report);

std::string factorization_to_json(const Factorization& factorization);

std::string blend_to_json(const BlendInterval& blend);

/// A single projective map, canonical form applied on load.
std::string proj_map_to_json(const ProjLinearMap& map);
ProjLinearMap proj_map_from_json(const std::string& text);

} // namespace cvx
