#include <doctest.h>

#include <cvxproj/catalog.hpp>
#include <cvxproj/hilbert.hpp>

using namespace cvx;

TEST_CASE("catalog names build and unknown names are rejected") {
    for (const std::string& name : catalog_names()) CHECK_NOTHROW(catalog_build(name));
    CHECK_THROWS_AS(catalog_build("hyperbolic-surface"), UnknownScene);
    CHECK_THROWS_AS(catalog_build("torus-orthant(x)"), UnknownScene);
    CHECK(catalog_build("torus-orthant(3)").body.dim() == 3);
}

TEST_CASE("tags are re-derived by the library") {
    for (const std::string& name : catalog_names()) {
        const Scene scene = catalog_build(name);
        CHECK(scene.body.proper() == scene.tag("proper"));
        CHECK(is_strictly_convex(scene.body) == scene.tag("strictly_convex"));
        if (scene.tag("proper") && scene.expected_split_blocks > 0) {
            const Decomposition d = invariant_splitting(scene.group, scene.cone, 0);
            CHECK(d.block_count() == scene.expected_split_blocks);
            CHECK((d.block_count() > 1) == scene.tag("reducible"));
        }
    }
}

TEST_CASE("proper scenes: generators preserve the body and act isometrically") {
    for (const std::string& name : catalog_names()) {
        const Scene scene = catalog_build(name);
        if (!scene.tag("proper")) continue; // the affine stand-in box is not preserved
        for (const Generator& g : scene.group.generators())
            CHECK(preserves_body(g.matrix, scene.body));
        const auto pairs = sample_pairs(scene.body, 50, 7);
        for (const Mat& g : scene.expected_aut) {
            const CheckReport r = check_isometry(g, scene.body, pairs);
            CHECK(r.pass);
            CHECK(r.max_margin <= 1e-9);
        }
    }
}

TEST_CASE("torus-affine is the non-proper counterexample") {
    const Scene scene = catalog_build("torus-affine", 2);
    CHECK_FALSE(scene.body.proper());
    const auto pts = scene.body.sample_interior(2, 1);
    CHECK_THROWS_AS(hilbert_distance(scene.body, scene.body.chart().from_affine(pts[0]),
                                     scene.body.chart().from_affine(pts[1])),
                    NotProper);
}

TEST_CASE("product-orthant splits into exactly two blocks") {
    const Scene scene = catalog_build("product-orthant");
    CHECK(invariant_splitting(scene.group, scene.cone, 0).block_count() == 2);
}

TEST_CASE("scene dimensions are consistent") {
    for (const std::string& name : catalog_names()) {
        const Scene scene = catalog_build(name);
        CHECK(scene.cone.ambient_dim() == scene.body.dim() + 1);
        if (!scene.group.empty())
            CHECK(scene.group.ambient_dim() == scene.body.dim() + 1);
    }
}
