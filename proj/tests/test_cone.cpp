#include <doctest.h>

#include "oracles.hpp"

#include <cvxproj/catalog.hpp>
#include <cvxproj/cone.hpp>

#include <cmath>

using namespace cvx;

namespace {

Vec v2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}

GroupGens diagonal_lattice(int n) {
    std::vector<std::pair<std::string, Mat>> gens;
    for (int i = 0; i < n; ++i) {
        Mat m = Mat::Identity(n, n);
        m(i, i) = std::exp(1.0);
        gens.emplace_back("g" + std::to_string(i), std::move(m));
    }
    return GroupGens(std::move(gens));
}

} // namespace

TEST_CASE("cone_over: simplex gives the positive orthant") {
    const Scene scene = catalog_build("torus-orthant", 2);
    const ConvexCone cone = cone_over(scene.body);
    REQUIRE(cone.rep() == ConvexCone::Rep::PolyhedralRays);
    CHECK(cone.ambient_dim() == 3);
    REQUIRE(cone.rays().size() == 3);
    // Rays are the standard basis directions.
    for (const Vec& r : cone.rays()) {
        int nonzeros = 0;
        for (int i = 0; i < 3; ++i)
            if (std::abs(r[i]) > 1e-12) ++nonzeros;
        CHECK(nonzeros == 1);
        CHECK(r.maxCoeff() > 0.0);
    }
    Vec inside(3), outside(3), edge(3);
    inside << 1, 2, 3;
    outside << 1, -1, 1;
    edge << 1, 0, 1;
    CHECK(cone.classify(inside) == Region::Interior);
    CHECK(cone.classify(outside) == Region::Exterior);
    CHECK(cone.classify(edge) == Region::Boundary);
    CHECK(cone.classify(Vec::Zero(3)) == Region::Boundary); // apex
}

TEST_CASE("cone_over: interval gives a planar wedge") {
    const ConvexBody seg = ConvexBody::interval(-1.0, 1.0);
    const ConvexCone cone = cone_over(seg);
    REQUIRE(cone.rays().size() == 2);
    // Rays (1, -1) and (1, 1) up to normalization.
    for (const Vec& r : cone.rays()) {
        CHECK(r[0] > 0.0);
        CHECK(std::abs(std::abs(r[1]) - r[0]) < 1e-12);
    }
}

TEST_CASE("cone_over: disk gives the quadric cone with exact membership") {
    const ConvexCone cone = cone_over(ConvexBody::ellipsoid(
        Vec::Zero(2), Mat::Identity(2, 2), AffineChart::standard(2)));
    REQUIRE(cone.rep() == ConvexCone::Rep::BaseBody);
    Rng rng(9);
    for (int k = 0; k < 100; ++k) {
        Vec x(3);
        x << rng.uniform(0.1, 3.0), rng.normal(), rng.normal();
        const double r = std::hypot(x[1], x[2]);
        const Region expect = r < x[0] * (1 - 1e-7)   ? Region::Interior
                              : r > x[0] * (1 + 1e-7) ? Region::Exterior
                                                      : Region::Boundary;
        // t > 0 and point/t in the disk.
        CHECK(cone.classify(x) == expect);
        CHECK(cone.classify(Vec(-x)) == Region::Exterior);
    }
}

TEST_CASE("cone properness rejects line-containing ray families") {
    std::vector<Vec> bad{v2(1, 0), v2(-1, 0), v2(0, 1)};
    CHECK_THROWS_AS(ConvexCone::from_rays(bad), NotProper);
    std::vector<Vec> flat{v2(1, 0), v2(2, 0)};
    CHECK_THROWS_AS(ConvexCone::from_rays(flat), NotProper); // no interior
}

TEST_CASE("commutant of the diagonal lattice is the diagonal algebra") {
    const auto basis = commutant_basis(diagonal_lattice(3));
    CHECK(basis.size() == 3);
    for (const Mat& b : basis) {
        // Off-diagonal entries vanish.
        CHECK((b - Mat(b.diagonal().asDiagonal())).norm() < 1e-9);
    }
}

TEST_CASE("commutant of the trivial group is everything") {
    GroupGens trivial{{{"e", Mat::Identity(3, 3)}}};
    CHECK(commutant_basis(trivial).size() == 9);
}

TEST_CASE("commutant of a rotation and a reflection is the scalars") {
    Mat rot(2, 2), refl(2, 2);
    rot << std::cos(1.0), -std::sin(1.0), std::sin(1.0), std::cos(1.0);
    refl << 1, 0, 0, -1;
    GroupGens pair{{{"r", rot}, {"s", refl}}};
    const auto basis = commutant_basis(pair);
    CHECK(basis.size() == 1);

    // A single irrational rotation alone has the complex-type commutant.
    GroupGens alone{{{"r", rot}}};
    CHECK(commutant_basis(alone).size() == 2);
}

TEST_CASE("commutant basis solves the Sylvester system (independent construction)") {
    const Scene scene = catalog_build("product-orthant");
    const auto basis = commutant_basis(scene.group);
    CHECK(basis.size() == 2);
    for (const Mat& b : basis)
        for (const Generator& g : scene.group.generators())
            CHECK((b * g.matrix - g.matrix * b).norm() < 1e-9);

    // Independent route: entrywise-constructed constraints, LU kernel.
    std::vector<Mat> phis, taus;
    for (const Generator& g : scene.group.generators()) {
        phis.push_back(g.matrix);
        taus.push_back(g.matrix);
    }
    const Mat constraints = oracle::equivariance_constraints(phis, taus);
    Eigen::FullPivLU<Mat> lu(constraints);
    lu.setThreshold(1e-10);
    CHECK(lu.dimensionOfKernel() == 2);
}

TEST_CASE("commutant dimension is conjugation invariant") {
    Rng rng(77);
    const Scene scene = catalog_build("product-orthant");
    Mat q(4, 4);
    do {
        for (int i = 0; i < 16; ++i) q.data()[i] = rng.normal();
    } while (std::abs(q.determinant()) < 0.1);
    const Mat q_inv = q.inverse();
    std::vector<std::pair<std::string, Mat>> conj;
    for (const Generator& g : scene.group.generators())
        conj.emplace_back(g.label, Mat(q * g.matrix * q_inv));
    CHECK(commutant_basis(GroupGens(conj)).size() ==
          commutant_basis(scene.group).size());
}

TEST_CASE("invariant splitting of the torus-orthant scenes") {
    SUBCASE("three one-dimensional blocks in R^3") {
        const Scene scene = catalog_build("torus-orthant", 2);
        const Decomposition d = invariant_splitting(scene.group, scene.cone, 0);
        CHECK(d.block_count() == 3);
        for (const DecompositionBlock& b : d.blocks) {
            CHECK(b.basis.cols() == 1);
            CHECK(b.cone.rays().size() == 1);
        }
        CHECK(verify_decomposition(scene.cone, scene.group, d).pass);
    }
    SUBCASE("four blocks in R^4") {
        const Scene scene = catalog_build("torus-orthant", 3);
        const Decomposition d = invariant_splitting(scene.group, scene.cone, 0);
        CHECK(d.block_count() == 4);
        CHECK(verify_decomposition(scene.cone, scene.group, d).pass);
    }
}

TEST_CASE("invariant splitting: irreducible scenes stay whole") {
    const Scene scene = catalog_build("lorentz");
    const Decomposition d = invariant_splitting(scene.group, scene.cone, 0);
    CHECK(d.block_count() == 1);
    CHECK_FALSE(d.blocks.front().irreducible_nonabsolute);
    CHECK(verify_decomposition(scene.cone, scene.group, d).pass);
}

TEST_CASE("invariant splitting of the product scene: two blocks") {
    const Scene scene = catalog_build("product-orthant");
    const Decomposition d = invariant_splitting(scene.group, scene.cone, 0);
    REQUIRE(d.block_count() == 2);
    for (const DecompositionBlock& b : d.blocks) {
        CHECK(b.basis.cols() == 2);
        CHECK(b.cone.rays().size() == 2);
    }
    const DecompositionReport r = verify_decomposition(scene.cone, scene.group, d);
    CHECK(r.pass);
    CHECK(r.max_invariance_residual <= 1e-9);
}

TEST_CASE("splitting is idempotent on a returned block") {
    const Scene scene = catalog_build("product-orthant");
    const Decomposition d = invariant_splitting(scene.group, scene.cone, 0);
    const DecompositionBlock& block = d.blocks.front();
    std::vector<std::pair<std::string, Mat>> restricted;
    for (const Generator& g : scene.group.generators())
        restricted.emplace_back(g.label,
                                Mat(block.basis.transpose() * g.matrix * block.basis));
    const Decomposition again =
        invariant_splitting(GroupGens(restricted), block.cone, 0);
    CHECK(again.block_count() == 1);
}

TEST_CASE("verify_decomposition rejects a rotated splitting") {
    std::vector<Vec> rays{Vec::Unit(2, 0), Vec::Unit(2, 1)};
    const ConvexCone orthant = ConvexCone::from_rays(rays);
    GroupGens diag = diagonal_lattice(2);

    Decomposition good;
    for (int i = 0; i < 2; ++i) {
        DecompositionBlock b;
        b.basis = Mat::Zero(2, 1);
        b.basis(i, 0) = 1.0;
        b.cone = ConvexCone::from_rays({Vec::Ones(1)});
        good.blocks.push_back(std::move(b));
    }
    CHECK(verify_decomposition(orthant, diag, good).pass);

    Decomposition rotated = good;
    rotated.blocks[0].basis << std::cos(0.4), std::sin(0.4);
    rotated.blocks[1].basis << -std::sin(0.4), std::cos(0.4);
    const DecompositionReport r = verify_decomposition(orthant, diag, rotated);
    CHECK_FALSE(r.pass);
    CHECK(r.max_invariance_residual > 1e-3);
}

TEST_CASE("round trip: splitting output verifies on every catalog scene with a cone split") {
    for (const std::string name : {"torus-orthant", "product-orthant", "lorentz"}) {
        const Scene scene = catalog_build(name);
        const Decomposition d = invariant_splitting(scene.group, scene.cone, 0);
        CHECK(verify_decomposition(scene.cone, scene.group, d, 100, 1).pass);
        if (scene.expected_split_blocks > 0)
            CHECK(d.block_count() == scene.expected_split_blocks);
    }
}
