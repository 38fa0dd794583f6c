// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero when any fails.
// With --cli PATH the determinism criterion exercises the installed
// command-line tool; otherwise it runs the library entry points in-process.

#include <cvxproj/catalog.hpp>
#include <cvxproj/equivariant.hpp>
#include <cvxproj/hilbert.hpp>
#include <cvxproj/json_io.hpp>
#include <cvxproj/suite.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace cvx;

namespace {

struct Criterion {
    int index;
    std::string name;
    bool pass = false;
    std::string detail;
    double millis = 0.0;
};

std::vector<Criterion> g_results;

void run(int index, const std::string& name, const std::function<std::string()>& body) {
    Criterion c{index, name, false, "", 0.0};
    const auto start = std::chrono::steady_clock::now();
    try {
        c.detail = body();
        c.pass = true;
    } catch (const std::exception& e) {
        c.pass = false;
        c.detail = e.what();
    }
    c.millis = std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start)
                   .count();
    g_results.push_back(std::move(c));
}

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& message) {
    if (!cond) throw Failure(message);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

ProjPoint chart_pt(const ConvexBody& b, const Vec& affine) {
    return b.chart().from_affine(affine);
}

Vec v2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}

// ---- criteria ----

std::string interval_distance_criterion() {
    const ConvexBody seg = ConvexBody::interval(-1.0, 1.0);
    const ProjPoint x = chart_pt(seg, Vec::Zero(1));
    const ProjPoint y = chart_pt(seg, Vec::Constant(1, 0.5));
    const double d = hilbert_distance(seg, x, y);
    require(std::abs(d - std::log(3.0)) <= 1e-12,
            "d = " + fmt(d) + " differs from ln 3 by " + fmt(std::abs(d - std::log(3.0))));

    // Median steady-state runtime over 101 evaluations.
    std::vector<double> times;
    volatile double sink = 0.0;
    for (int k = 0; k < 101; ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        sink = sink + hilbert_distance(seg, x, y);
        times.push_back(std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count());
    }
    std::nth_element(times.begin(), times.begin() + 50, times.end());
    require(times[50] < 1.0, "median runtime " + fmt(times[50]) + " ms >= 1 ms");
    return "d = ln 3 within 1e-12, median " + fmt(times[50]) + " ms";
}

std::string metric_axioms_criterion() {
    std::vector<Scene> scenes{catalog_build("torus-orthant", 2),
                              catalog_build("torus-orthant", 3), catalog_build("klein-disk")};
    // Seeded random 5-vertex polygon on the unit circle.
    {
        Rng rng(2024);
        std::vector<double> angles;
        while (angles.size() < 5) {
            const double a = rng.uniform(0.0, 2 * M_PI);
            bool ok = true;
            for (double b : angles)
                if (std::abs(a - b) < 0.35 || 2 * M_PI - std::abs(a - b) < 0.35) ok = false;
            if (ok) angles.push_back(a);
        }
        std::sort(angles.begin(), angles.end());
        std::vector<Vec> verts;
        for (double a : angles) verts.push_back(v2(std::cos(a), std::sin(a)));
        const ConvexBody poly = ConvexBody::polytope(verts, AffineChart::standard(2));
        GroupGens trivial{{{"e", Mat::Identity(3, 3)}}};
        scenes.push_back(Scene{"random-polygon", poly, trivial, cone_over(poly), {}, {}, {}, 0});
    }

    double worst_sym = 0.0, worst_tri = 0.0;
    for (const Scene& scene : scenes) {
        const auto pts = scene.body.sample_interior(300, 0);
        for (int i = 0; i < 100; ++i) {
            const ProjPoint x = chart_pt(scene.body, pts[3 * i]);
            const ProjPoint y = chart_pt(scene.body, pts[3 * i + 1]);
            const ProjPoint z = chart_pt(scene.body, pts[3 * i + 2]);
            const double dxy = hilbert_distance(scene.body, x, y);
            const double dyx = hilbert_distance(scene.body, y, x);
            const double dxz = hilbert_distance(scene.body, x, z);
            const double dyz = hilbert_distance(scene.body, y, z);
            worst_sym = std::max(worst_sym, std::abs(dxy - dyx));
            worst_tri = std::max(worst_tri, dxz - (dxy + dyz));
        }
    }
    require(worst_sym <= 1e-10, "symmetry error " + fmt(worst_sym) + " > 1e-10");
    require(worst_tri <= 1e-9, "triangle violation " + fmt(worst_tri) + " > 1e-9");
    return "4 bodies x 100 triples: symmetry " + fmt(worst_sym) + ", triangle " +
           fmt(worst_tri);
}

std::string isometry_criterion() {
    double worst = 0.0;
    int checked = 0;
    const Scene orthant = catalog_build("torus-orthant", 2);
    const auto pairs = sample_pairs(orthant.body, 100, 0);
    for (const Mat& g : orthant.expected_aut) {
        const CheckReport r = check_isometry(g, orthant.body, pairs);
        require(r.pass, "torus-orthant generator broke isometry by " + fmt(r.max_margin));
        worst = std::max(worst, r.max_margin);
        ++checked;
    }
    const Scene disk = catalog_build("klein-disk");
    const auto disk_pairs = sample_pairs(disk.body, 100, 0);
    for (std::size_t i = 0; i < 2; ++i) { // the two boosts
        const CheckReport r = check_isometry(disk.group.at(i).matrix, disk.body, disk_pairs);
        require(r.pass, "klein-disk boost broke isometry by " + fmt(r.max_margin));
        worst = std::max(worst, r.max_margin);
        ++checked;
    }
    return std::to_string(checked) + " generators, worst margin " + fmt(worst);
}

std::string contraction_criterion() {
    const ConvexBody inner = ConvexBody::interval(-0.5, 0.5);
    const ConvexBody outer = ConvexBody::interval(-1.0, 1.0);
    const CheckReport r1 = check_contraction(ProjLinearMap::identity(1), inner, outer,
                                             sample_pairs(inner, 1000, 0));
    require(r1.pass, "interval inclusion violated by " + fmt(r1.max_margin));

    const double d_in = hilbert_distance(inner, chart_pt(inner, Vec::Zero(1)),
                                         chart_pt(inner, Vec::Constant(1, 0.25)));
    const double d_out = hilbert_distance(outer, chart_pt(outer, Vec::Zero(1)),
                                          chart_pt(outer, Vec::Constant(1, 0.25)));
    require(std::abs(d_in - std::log(3.0)) <= 1e-12, "inner distance is not ln 3");
    require(std::abs(d_out - std::log(5.0 / 3.0)) <= 1e-12, "outer distance is not ln(5/3)");
    require(d_out <= d_in, "ln(5/3) <= ln 3 violated");

    std::vector<Vec> sverts{v2(0, 0), v2(1, 0), v2(0, 1)};
    const ConvexBody simplex = ConvexBody::polytope(sverts, AffineChart::standard(2));
    std::vector<Vec> qverts{v2(-1, -1), v2(1, -1), v2(1, 1), v2(-1, 1)};
    const ConvexBody square = ConvexBody::polytope(qverts, AffineChart::standard(2));
    const CheckReport r2 = check_contraction(ProjLinearMap::identity(2), simplex, square,
                                             sample_pairs(simplex, 1000, 0));
    require(r2.pass, "simplex-into-square violated by " + fmt(r2.max_margin));
    return "2000 pairs, worst margins " + fmt(r1.max_margin) + " / " + fmt(r2.max_margin) +
           "; pair (0,1/4): ln(5/3) <= ln 3";
}

std::string orbit_criterion() {
    const Scene scene = catalog_build("torus-orthant", 2);
    const ProjPoint base = chart_pt(scene.body, scene.body.interior_point());
    const OrbitBall ball = orbit_ball(scene.group, base, 12);
    double worst = 0.0;
    for (const ProjPoint& target : scene.orbit_targets) {
        const Vec t = scene.body.chart().to_affine(target);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& [word, p] : ball.points)
            best = std::min(best, (scene.body.chart().to_affine(p) - t).norm());
        require(best <= 1e-2, "vertex missed by " + fmt(best));
        worst = std::max(worst, best);
    }
    return std::to_string(ball.points.size()) + " orbit points, worst vertex gap " +
           fmt(worst);
}

std::string blend_criterion() {
    std::vector<Vec> rays{Vec::Unit(2, 0), Vec::Unit(2, 1)};
    const ConvexCone orthant = ConvexCone::from_rays(rays);
    const Mat scale = std::exp(1.0) * Mat::Identity(2, 2);
    const EquivariantSpace space = equivariant_solution_space(
        Equivariance{GroupGens{{{"scale", scale}}}, {scale}}, orthant, orthant);
    Mat s2 = Mat::Identity(2, 2);
    s2(1, 1) = 2.0;
    const BlendInterval blend = blend_interval(space, Mat::Identity(2, 2), s2,
                                               orthant.sample_interior(25, 0));
    require(std::abs(blend.r - std::log(2.0)) <= 1e-9,
            "R = " + fmt(blend.r) + " is not ln 2");
    require(std::abs(blend.lo + 0.5) <= 1e-9 && std::abs(blend.hi - 1.5) <= 1e-9,
            "interval is not (-0.5, 1.5)");
    require(blend.verified, "a grid blend left the cone");
    return "R = ln 2, interval (-0.5, 1.5), all grid blends strictly inside";
}

std::string splitting_criterion() {
    // The torus-orthant scene with three diagonal directions (cone in R^3).
    const Scene orthant = catalog_build("torus-orthant", 2);
    const Decomposition d1 = invariant_splitting(orthant.group, orthant.cone, 0);
    require(d1.block_count() == 3,
            "torus-orthant split into " + std::to_string(d1.block_count()) + " blocks");
    for (const DecompositionBlock& b : d1.blocks)
        require(b.basis.cols() == 1, "block is not one-dimensional");
    const DecompositionReport v1 = verify_decomposition(orthant.cone, orthant.group, d1);
    require(v1.pass && v1.max_invariance_residual <= 1e-9,
            "verification residual " + fmt(v1.max_invariance_residual));

    const Scene lorentz = catalog_build("lorentz");
    const Decomposition d2 = invariant_splitting(lorentz.group, lorentz.cone, 0);
    require(d2.block_count() == 1,
            "lorentz split into " + std::to_string(d2.block_count()) + " blocks");
    const DecompositionReport v2r = verify_decomposition(lorentz.cone, lorentz.group, d2);
    require(v2r.pass, "lorentz verification failed");
    return "3 one-dimensional blocks + irreducible lorentz, residual " +
           fmt(std::max(v1.max_invariance_residual, v2r.max_invariance_residual));
}

std::string factorization_criterion() {
    const Scene scene = catalog_build("product-orthant");
    Mat s0 = Mat::Zero(2, 4);
    s0(0, 0) = 1.0;
    s0(1, 1) = 1.0;
    Equivariance equiv{scene.group, {}};
    for (const Generator& g : scene.group.generators())
        equiv.image.push_back(g.matrix.topLeftCorner(2, 2));
    std::vector<Vec> rays{Vec::Unit(2, 0), Vec::Unit(2, 1)};
    const ConvexCone target = ConvexCone::from_rays(rays);

    const Factorization f = factorize(s0, scene.group, equiv, scene.cone, target, 0);
    const double proj_err = (f.projector * f.projector - f.projector).norm();
    require(proj_err <= 1e-9, "p_W o p_W != p_W, residual " + fmt(proj_err));
    const Mat coord = f.w_basis.transpose() * f.projector;
    const double fact_err = (s0 - f.injective_part * coord).norm();
    require(fact_err <= 1e-9, "S0 != Sbar o p_W, residual " + fmt(fact_err));
    double equi_err = equiv.residual(s0);
    for (const Generator& g : f.quotient_group.generators()) {
        // quotient generators must also be equivariant for the factored map
        const Mat r = f.injective_part * g.matrix -
                      equiv.image[&g - f.quotient_group.generators().data()] *
                          f.injective_part;
        equi_err = std::max(equi_err, r.norm());
    }
    require(equi_err <= 1e-9, "equivariance residual " + fmt(equi_err));
    require(numeric_rank(f.injective_part) == f.injective_part.cols(),
            "factored map is rank deficient");
    return "identities at " + fmt(std::max({proj_err, fact_err, equi_err})) +
           ", factored map full rank";
}

std::string rigidity_criterion() {
    const Scene disk = catalog_build("klein-disk");
    const Mat boost = disk.expected_aut.front();
    const ProjLinearMap pg(boost);
    std::vector<std::pair<ProjPoint, ProjPoint>> pairs;
    for (int j = 0; j < 12; ++j) {
        const double a = 2 * M_PI * j / 12.0 + 0.1;
        const ProjPoint xi = chart_pt(disk.body, v2(std::cos(a), std::sin(a)));
        pairs.emplace_back(xi, proj_apply(pg, xi));
    }
    const ProjLinearMap recon = boundary_reconstruct(disk.body, disk.body, pairs);
    const double gap = proj_map_distance(recon, pg);
    require(gap <= 1e-8, "reconstruction off by " + fmt(gap));

    auto corrupted = pairs;
    Mat rot = Mat::Identity(3, 3);
    rot(1, 1) = std::cos(0.1);
    rot(1, 2) = -std::sin(0.1);
    rot(2, 1) = std::sin(0.1);
    rot(2, 2) = std::cos(0.1);
    corrupted[3].second = ProjPoint(rot * corrupted[3].second.coords());
    bool rejected = false;
    try {
        boundary_reconstruct(disk.body, disk.body, corrupted);
    } catch (const InconsistentBoundaryData&) {
        rejected = true;
    }
    require(rejected, "corrupted sample was not rejected");
    return "boost recovered at " + fmt(gap) + "; corrupted variant rejected";
}

std::string kernel_discontinuity_criterion() {
    Vec d(3);
    d << 1, 1, 0;
    const ProjLinearMap t{Mat(d.asDiagonal())};
    const Vec e1 = Vec::Unit(3, 0), e2 = Vec::Unit(3, 1), e3 = Vec::Unit(3, 2);
    const double s = 1e-10;
    const double gap = proj_point_distance(proj_apply(t, ProjPoint(e3 + s * e1)),
                                           proj_apply(t, ProjPoint(e3 + s * e2)));
    require(gap >= 0.5, "kernel limit gap " + fmt(gap) + " < 0.5");
    const Vec regular = Vec::Ones(3);
    const double agree = proj_point_distance(proj_apply(t, ProjPoint(regular + s * e1)),
                                             proj_apply(t, ProjPoint(regular + s * e2)));
    require(agree <= 1e-9, "limits at a regular point differ by " + fmt(agree));
    return "kernel gap " + fmt(gap) + ", regular-point agreement " + fmt(agree);
}

std::string nonproper_gate_criterion() {
    const Scene affine = catalog_build("torus-affine", 2);
    const auto pts = affine.body.sample_interior(2, 0);
    const ProjPoint x = chart_pt(affine.body, pts[0]);
    const ProjPoint y = chart_pt(affine.body, pts[1]);
    int gates = 0;
    try {
        hilbert_distance(affine.body, x, y);
    } catch (const NotProper&) {
        ++gates;
    }
    try {
        cone_over(affine.body);
    } catch (const NotProper&) {
        ++gates;
    }
    try {
        emit_samples(affine, "geodesic", EmitParams{}, 0);
    } catch (const NotProper&) {
        ++gates;
    }
    try {
        emit_samples(affine, "distance-field", EmitParams{}, 0);
    } catch (const NotProper&) {
        ++gates;
    }
    require(gates == 4, "only " + std::to_string(gates) + "/4 metric operations refused");
    const SuiteReport r = run_check_suite("metric-axioms", {affine}, 0);
    require(r.records.size() == 1 && r.records[0].status == "SKIP",
            "metric-axioms did not SKIP the non-proper scene");
    return "hilbert_distance, cone_over, geodesic, distance-field all raise NotProper";
}

std::string run_cli(const std::string& cli, const std::string& args, int& exit_code) {
    const std::string cmd = cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw Failure("popen failed for: " + cmd);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

std::string determinism_criterion(const std::string& cli) {
    for (const std::string& suite : suite_names()) {
        if (cli.empty()) {
            const std::string a = report_to_json(run_check_suite(suite, {}, 0));
            const std::string b = report_to_json(run_check_suite(suite, {}, 0));
            require(a == b, "suite '" + suite + "' is not byte-deterministic");
            require(run_check_suite(suite, {}, 0).exit_status() == 0,
                    "suite '" + suite + "' has FAIL records");
        } else {
            int code_a = 0, code_b = 0;
            const std::string a = run_cli(cli, "check --suite " + suite + " --seed 0", code_a);
            const std::string b = run_cli(cli, "check --suite " + suite + " --seed 0", code_b);
            require(!a.empty(), "CLI produced no output for suite '" + suite + "'");
            require(a == b, "CLI output for '" + suite + "' is not byte-identical");
            require(code_a == 0 && code_b == 0,
                    "CLI exit code nonzero for suite '" + suite + "'");
        }
    }
    return std::to_string(suite_names().size()) + " suites byte-identical, exit 0" +
           (cli.empty() ? " (in-process)" : " (via CLI)");
}

} // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

    run(1, "interval-distance", interval_distance_criterion);
    run(2, "metric-axioms", metric_axioms_criterion);
    run(3, "isometry-invariance", isometry_criterion);
    run(4, "distance-decreasing", contraction_criterion);
    run(5, "orbit-accumulation", orbit_criterion);
    run(6, "blend-interval", blend_criterion);
    run(7, "invariant-splitting", splitting_criterion);
    run(8, "factorization", factorization_criterion);
    run(9, "boundary-rigidity", rigidity_criterion);
    run(10, "kernel-discontinuity", kernel_discontinuity_criterion);
    run(11, "non-properness-gate", nonproper_gate_criterion);
    run(12, "determinism", [&] { return determinism_criterion(cli); });

    bool all_pass = true;
    for (const Criterion& c : g_results) {
        std::printf("[%2d] %s  %-22s (%.1f ms)  %s\n", c.index, c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.millis, c.detail.c_str());
        all_pass = all_pass && c.pass;
    }
    std::printf("%s\n", all_pass ? "acceptance: all criteria passed"
                                 : "acceptance: FAILURES present");
    return all_pass ? 0 : 1;
}
