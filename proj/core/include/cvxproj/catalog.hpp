#pragma once

#include "cvxproj/cone.hpp"
#include "cvxproj/convex_body.hpp"
#include "cvxproj/group.hpp"

#include <map>
#include <string>
#include <vector>

namespace cvx {

/// A built-in scene: a body, a group preserving it, the cone above it, and
/// structured expectations used by the check suites.
struct Scene {
    std::string name;
    ConvexBody body;
    GroupGens group;
    ConvexCone cone;
    std::map<std::string, bool> tags; // proper, strictly_convex, reducible
    std::vector<Mat> expected_aut;    // automorphism generators of the body
    std::vector<ProjPoint> orbit_targets; // extreme points the orbit accumulates on
    int expected_split_blocks = 0;    // 0 = unspecified

    bool tag(const std::string& key) const {
        const auto it = tags.find(key);
        return it != tags.end() && it->second;
    }
};

/// Builds one of the named scenes; dim applies to the torus families.
///   torus-affine(d):  a full affine chart (box stand-in, tagged non-proper)
///                     with the unipotent integer translation lattice.
///   torus-orthant(d): the open d-simplex with the diagonal exp lattice.
///   klein-disk:       the unit disk with two hyperbolic boosts.
///   product-orthant:  orthant_2 x orthant_2 with a block-diagonal group.
///   lorentz:          the cone over the disk with an irreducible boost pair.
/// Throws UnknownScene for other names.
Scene catalog_build(const std::string& name, int dim = 2);

std::vector<std::string> catalog_names();

} // namespace cvx
