#include <benchmark/benchmark.h>

#include <cvxproj/catalog.hpp>
#include <cvxproj/cone.hpp>
#include <cvxproj/equivariant.hpp>
#include <cvxproj/hilbert.hpp>

using namespace cvx;

namespace {

void BM_HilbertDistanceDisk(benchmark::State& state) {
    const ConvexBody disk =
        ConvexBody::ellipsoid(Vec::Zero(2), Mat::Identity(2, 2), AffineChart::standard(2));
    Vec a(2), b(2);
    a << 0.1, 0.2;
    b << -0.4, 0.5;
    const ProjPoint x = disk.chart().from_affine(a);
    const ProjPoint y = disk.chart().from_affine(b);
    for (auto _ : state) benchmark::DoNotOptimize(hilbert_distance(disk, x, y));
}
BENCHMARK(BM_HilbertDistanceDisk);

void BM_HilbertDistanceSimplex(benchmark::State& state) {
    const Scene scene = catalog_build("torus-orthant", static_cast<int>(state.range(0)));
    const auto pts = scene.body.sample_interior(2, 1);
    const ProjPoint x = scene.body.chart().from_affine(pts[0]);
    const ProjPoint y = scene.body.chart().from_affine(pts[1]);
    for (auto _ : state) benchmark::DoNotOptimize(hilbert_distance(scene.body, x, y));
}
BENCHMARK(BM_HilbertDistanceSimplex)->Arg(2)->Arg(3)->Arg(4);

void BM_OrbitBall(benchmark::State& state) {
    const Scene scene = catalog_build("torus-orthant", 2);
    const ProjPoint base = scene.body.chart().from_affine(scene.body.interior_point());
    const int radius = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(orbit_ball(scene.group, base, radius).points.size());
}
BENCHMARK(BM_OrbitBall)->Arg(4)->Arg(8)->Arg(12);

void BM_CommutantBasis(benchmark::State& state) {
    const Scene scene = catalog_build("torus-orthant", static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(commutant_basis(scene.group).size());
}
BENCHMARK(BM_CommutantBasis)->Arg(2)->Arg(3)->Arg(4);

void BM_InvariantSplitting(benchmark::State& state) {
    const Scene scene = catalog_build("product-orthant");
    for (auto _ : state)
        benchmark::DoNotOptimize(invariant_splitting(scene.group, scene.cone, 0).block_count());
}
BENCHMARK(BM_InvariantSplitting);

void BM_BoundaryReconstruct(benchmark::State& state) {
    const Scene disk = catalog_build("klein-disk");
    const ProjLinearMap boost(disk.expected_aut.front());
    std::vector<std::pair<ProjPoint, ProjPoint>> pairs;
    for (int j = 0; j < 12; ++j) {
        const double a = 2.0 * 3.14159265358979 * j / 12.0 + 0.1;
        Vec b(2);
        b << std::cos(a), std::sin(a);
        const ProjPoint xi = disk.body.chart().from_affine(b);
        pairs.emplace_back(xi, proj_apply(boost, xi));
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(boundary_reconstruct(disk.body, disk.body, pairs));
}
BENCHMARK(BM_BoundaryReconstruct);

} // namespace

BENCHMARK_MAIN();
