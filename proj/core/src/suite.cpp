#include "cvxproj/suite.hpp"

#include "cvxproj/equivariant.hpp"
#include "cvxproj/hilbert.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cvx {
namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CheckRecord record(std::string name, bool pass, double margin, double tol,
                   std::uint64_t seed, std::string note = "") {
    return {std::move(name), pass ? "PASS" : "FAIL", margin, tol, seed, std::move(note)};
}

CheckRecord skip(std::string name, std::uint64_t seed, std::string note) {
    return {std::move(name), "SKIP", 0.0, 0.0, seed, std::move(note)};
}

// A seeded convex polygon on the unit circle: random angles with a minimum
// separation keep all five points extreme.
Scene random_polygon_scene(std::uint64_t seed) {
    Rng rng(seed ^ 0x706f6c79676f6eULL);
    std::vector<double> angles;
    while (angles.size() < 5) {
        const double a = rng.uniform(0.0, 2.0 * M_PI);
        bool ok = true;
        for (double b : angles)
            if (std::abs(a - b) < 0.35 || 2.0 * M_PI - std::abs(a - b) < 0.35) ok = false;
        if (ok) angles.push_back(a);
    }
    std::sort(angles.begin(), angles.end());
    std::vector<Vec> verts;
    for (double a : angles) {
        Vec v(2);
        v << std::cos(a), std::sin(a);
        verts.push_back(std::move(v));
    }
    ConvexBody body = ConvexBody::polytope(std::move(verts), AffineChart::standard(2));
    GroupGens trivial{{{"e", Mat::Identity(3, 3)}}};
    Scene scene{"random-polygon", body, trivial, cone_over(body), {}, {}, {}, 0};
    scene.tags = {{"proper", true}, {"strictly_convex", false}, {"reducible", false}};
    return scene;
}

void metric_axioms(const Scene& scene, std::uint64_t seed, std::vector<CheckRecord>& out) {
    const std::string prefix = "metric-axioms/" + scene.name;
    if (!scene.body.proper()) {
        bool refused = false;
        try {
            const auto pts = scene.body.sample_interior(2, seed);
            hilbert_distance(scene.body, scene.body.chart().from_affine(pts[0]),
                             scene.body.chart().from_affine(pts[1]));
        } catch (const NotProper&) {
            refused = true;
        }
        out.push_back(refused ? skip(prefix, seed, "NotProper: metric refused as required")
                              : record(prefix, false, 1.0, 0.0, seed,
                                       "non-proper scene was not refused"));
        return;
    }

    const auto pts = scene.body.sample_interior(300, seed);
    double nonneg = 0.0, identity = 0.0, symmetry = 0.0, triangle = 0.0;
    for (int i = 0; i < 100; ++i) {
        const ProjPoint x = scene.body.chart().from_affine(pts[3 * i]);
        const ProjPoint y = scene.body.chart().from_affine(pts[3 * i + 1]);
        const ProjPoint z = scene.body.chart().from_affine(pts[3 * i + 2]);
        const double dxy = hilbert_distance(scene.body, x, y);
        const double dyx = hilbert_distance(scene.body, y, x);
        const double dxz = hilbert_distance(scene.body, x, z);
        const double dyz = hilbert_distance(scene.body, y, z);
        nonneg = std::max(nonneg, -dxy);
        identity = std::max(identity, hilbert_distance(scene.body, x, x));
        symmetry = std::max(symmetry, std::abs(dxy - dyx));
        triangle = std::max(triangle, dxz - (dxy + dyz));
    }
    out.push_back(record(prefix + "/nonnegative", nonneg <= 0.0, nonneg, 0.0, seed));
    out.push_back(record(prefix + "/identity", identity <= 1e-12, identity, 1e-12, seed));
    out.push_back(record(prefix + "/symmetry", symmetry <= 1e-10, symmetry, 1e-10, seed));
    out.push_back(record(prefix + "/triangle", triangle <= 1e-9, triangle, 1e-9, seed));
}

void isometry_suite(const Scene& scene, std::uint64_t seed, std::vector<CheckRecord>& out) {
    const std::string prefix = "isometry/" + scene.name;
    if (!scene.body.proper()) {
        out.push_back(skip(prefix, seed, "NotProper"));
        return;
    }
    if (scene.expected_aut.empty()) {
        out.push_back(skip(prefix, seed, "scene lists no automorphisms"));
        return;
    }
    const auto pairs = sample_pairs(scene.body, 100, seed);
    for (std::size_t i = 0; i < scene.expected_aut.size(); ++i) {
        const CheckReport r = check_isometry(scene.expected_aut[i], scene.body, pairs);
        out.push_back(record(prefix + "/gen" + std::to_string(i), r.pass, r.max_margin,
                             r.tolerance, seed));
    }
}

void contraction_suite(const std::vector<Scene>& scenes, std::uint64_t seed,
                       std::vector<CheckRecord>& out) {
    if (scenes.size() == 2) {
        if (scenes[0].body.dim() != scenes[1].body.dim())
            throw SceneIncompatible("contraction: scene pair must share a dimension");
        const auto pairs = sample_pairs(scenes[0].body, 1000, seed);
        const CheckReport r =
            check_contraction(ProjLinearMap::identity(scenes[0].body.dim()), scenes[0].body,
                              scenes[1].body, pairs);
        out.push_back(record("contraction/" + scenes[0].name + "-into-" + scenes[1].name,
                             r.pass, r.max_margin, r.tolerance, seed));
        return;
    }

    // Interval inclusion (-1/2,1/2) into (-1,1).
    const ConvexBody inner = ConvexBody::interval(-0.5, 0.5);
    const ConvexBody outer = ConvexBody::interval(-1.0, 1.0);
    {
        const auto pairs = sample_pairs(inner, 1000, seed);
        const CheckReport r =
            check_contraction(ProjLinearMap::identity(1), inner, outer, pairs);
        out.push_back(record("contraction/interval-inclusion", r.pass, r.max_margin,
                             r.tolerance, seed));
    }
    {
        const ProjPoint x = inner.chart().from_affine(Vec::Zero(1));
        const ProjPoint y = inner.chart().from_affine(Vec::Constant(1, 0.25));
        const double d_in = hilbert_distance(inner, x, y);
        const double d_out = hilbert_distance(outer, x, y);
        out.push_back(record("contraction/interval-pair", d_out <= d_in + 1e-9,
                             d_out - d_in, 1e-9, seed,
                             "d_outer=" + fmt(d_out) + " d_inner=" + fmt(d_in)));
    }

    // Simplex included in the square [-1,1]^2.
    {
        std::vector<Vec> sverts{Vec::Zero(2), Vec::Zero(2), Vec::Zero(2)};
        sverts[1][0] = 1.0;
        sverts[2][1] = 1.0;
        const ConvexBody simplex = ConvexBody::polytope(sverts, AffineChart::standard(2));
        std::vector<Vec> qverts;
        for (double sx : {-1.0, 1.0})
            for (double sy : {-1.0, 1.0}) {
                Vec v(2);
                v << sx, sy;
                qverts.push_back(std::move(v));
            }
        const ConvexBody square = ConvexBody::polytope(qverts, AffineChart::standard(2));
        const auto pairs = sample_pairs(simplex, 1000, seed + 1);
        const CheckReport r =
            check_contraction(ProjLinearMap::identity(2), simplex, square, pairs);
        out.push_back(record("contraction/simplex-into-square", r.pass, r.max_margin,
                             r.tolerance, seed + 1));
    }
}

void orbit_extreme_suite(const Scene& scene, std::uint64_t seed, std::vector<CheckRecord>& out) {
    if (scene.orbit_targets.empty())
        throw SceneIncompatible("orbit-extreme: scene has no orbit accumulation targets");
    const ProjPoint base = scene.body.chart().from_affine(scene.body.interior_point());
    const OrbitBall ball = orbit_ball(scene.group, base, 12);
    for (std::size_t t = 0; t < scene.orbit_targets.size(); ++t) {
        const Vec target = scene.body.chart().to_affine(scene.orbit_targets[t]);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& [word, p] : ball.points)
            best = std::min(best, (scene.body.chart().to_affine(p) - target).norm());
        out.push_back(record("orbit-extreme/" + scene.name + "/vertex" + std::to_string(t),
                             best <= 1e-2, best, 1e-2, seed,
                             "orbit points: " + std::to_string(ball.points.size())));
    }
}

void blend_suite(std::uint64_t seed, std::vector<CheckRecord>& out) {
    std::vector<Vec> rays{Vec::Zero(2), Vec::Zero(2)};
    rays[0][0] = 1.0;
    rays[1][1] = 1.0;
    const ConvexCone orthant = ConvexCone::from_rays(rays);
    const Mat scale = std::exp(1.0) * Mat::Identity(2, 2);
    Equivariance equiv{GroupGens{{{"scale", scale}}}, {scale}};
    const EquivariantSpace space = equivariant_solution_space(equiv, orthant, orthant);

    Mat s2 = Mat::Identity(2, 2);
    s2(1, 1) = 2.0;
    const BlendInterval blend =
        blend_interval(space, Mat::Identity(2, 2), s2, orthant.sample_interior(25, seed));

    out.push_back(record("blend-convexity/R", std::abs(blend.r - std::log(2.0)) <= 1e-9,
                         std::abs(blend.r - std::log(2.0)), 1e-9, seed, "R=" + fmt(blend.r)));
    const double lo_err = std::abs(blend.lo + 0.5);
    const double hi_err = std::abs(blend.hi - 1.5);
    out.push_back(record("blend-convexity/interval", std::max(lo_err, hi_err) <= 1e-9,
                         std::max(lo_err, hi_err), 1e-9, seed,
                         "(" + fmt(blend.lo) + ", " + fmt(blend.hi) + ")"));
    out.push_back(record("blend-convexity/grid", blend.verified, blend.verified ? 0.0 : 1.0,
                         0.0, seed));
}

void boundary_rigidity_suite(const Scene& scene, std::uint64_t seed,
                             std::vector<CheckRecord>& out) {
    if (!scene.tag("strictly_convex"))
        throw SceneIncompatible("boundary-rigidity: target must be strictly convex");
    if (scene.expected_aut.empty())
        throw SceneIncompatible("boundary-rigidity: scene lists no automorphism to recover");
    const Mat g = scene.expected_aut.front();
    const ProjLinearMap pg(g);

    std::vector<std::pair<ProjPoint, ProjPoint>> pairs;
    for (int j = 0; j < 12; ++j) {
        const double a = 2.0 * M_PI * j / 12.0 + 0.1;
        Vec b(2);
        b << std::cos(a), std::sin(a);
        const ProjPoint xi = scene.body.chart().from_affine(b);
        pairs.emplace_back(xi, proj_apply(pg, xi));
    }
    const ProjLinearMap recon = boundary_reconstruct(scene.body, scene.body, pairs);
    const double gap = proj_map_distance(recon, pg);
    out.push_back(record("boundary-rigidity/" + scene.name + "/roundtrip", gap <= 1e-8, gap,
                         1e-8, seed));

    auto corrupted = pairs;
    Mat rot(3, 3);
    rot.setIdentity();
    rot(1, 1) = std::cos(0.1);
    rot(1, 2) = -std::sin(0.1);
    rot(2, 1) = std::sin(0.1);
    rot(2, 2) = std::cos(0.1);
    corrupted[3].second = ProjPoint(rot * corrupted[3].second.coords());
    bool rejected = false;
    try {
        boundary_reconstruct(scene.body, scene.body, corrupted);
    } catch (const InconsistentBoundaryData&) {
        rejected = true;
    }
    out.push_back(record("boundary-rigidity/" + scene.name + "/corrupted", rejected,
                         rejected ? 0.0 : 1.0, 0.0, seed,
                         rejected ? "InconsistentBoundaryData raised" : "corruption missed"));
}

void splitting_suite(const Scene& scene, std::uint64_t seed, std::vector<CheckRecord>& out) {
    const std::string prefix = "splitting/" + scene.name;
    if (scene.expected_split_blocks <= 0) {
        out.push_back(skip(prefix, seed, "scene has no expected block count"));
        return;
    }
    const Decomposition d = invariant_splitting(scene.group, scene.cone, seed);
    out.push_back(record(prefix + "/blocks", d.block_count() == scene.expected_split_blocks,
                         std::abs(d.block_count() - scene.expected_split_blocks), 0.0, seed,
                         "k=" + std::to_string(d.block_count())));
    const DecompositionReport r = verify_decomposition(scene.cone, scene.group, d, 200, seed);
    out.push_back(record(prefix + "/verify", r.pass, r.max_invariance_residual, 1e-9, seed,
                         r.detail));
}

} // namespace

int SuiteReport::exit_status() const {
    for (const CheckRecord& r : records)
        if (r.status == "FAIL") return 1;
    return 0;
}

std::vector<std::string> suite_names() {
    return {"metric-axioms", "isometry",        "contraction",      "orbit-extreme",
            "blend-convexity", "boundary-rigidity", "splitting"};
}

SuiteReport run_check_suite(const std::string& suite, const std::vector<Scene>& scenes,
                            std::uint64_t seed) {
    SuiteReport report{suite, seed, {}};

    if (suite == "metric-axioms") {
        std::vector<Scene> targets = scenes;
        if (targets.empty()) {
            targets.push_back(catalog_build("torus-orthant", 2));
            targets.push_back(catalog_build("torus-orthant", 3));
            targets.push_back(catalog_build("klein-disk"));
            targets.push_back(random_polygon_scene(seed));
            targets.push_back(catalog_build("torus-affine", 2));
        }
        for (const Scene& s : targets) metric_axioms(s, seed, report.records);
    } else if (suite == "isometry") {
        std::vector<Scene> targets = scenes;
        if (targets.empty()) {
            targets.push_back(catalog_build("torus-orthant", 2));
            targets.push_back(catalog_build("klein-disk"));
        }
        for (const Scene& s : targets) isometry_suite(s, seed, report.records);
    } else if (suite == "contraction") {
        contraction_suite(scenes, seed, report.records);
    } else if (suite == "orbit-extreme") {
        std::vector<Scene> targets = scenes;
        if (targets.empty()) targets.push_back(catalog_build("torus-orthant", 2));
        for (const Scene& s : targets) orbit_extreme_suite(s, seed, report.records);
    } else if (suite == "blend-convexity") {
        blend_suite(seed, report.records);
    } else if (suite == "boundary-rigidity") {
        std::vector<Scene> targets = scenes;
        if (targets.empty()) targets.push_back(catalog_build("klein-disk"));
        for (const Scene& s : targets) boundary_rigidity_suite(s, seed, report.records);
    } else if (suite == "splitting") {
        std::vector<Scene> targets = scenes;
        if (targets.empty()) {
            targets.push_back(catalog_build("torus-orthant", 2));
            targets.push_back(catalog_build("lorentz"));
            targets.push_back(catalog_build("product-orthant"));
        }
        for (const Scene& s : targets) splitting_suite(s, seed, report.records);
    } else {
        throw UnknownSuite("run_check_suite: unknown suite '" + suite + "'");
    }

    std::sort(report.records.begin(), report.records.end(),
              [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
    return report;
}

std::string report_to_json(const SuiteReport& report) {
    nlohmann::ordered_json j;
    j["suite"] = report.suite;
    j["seed"] = report.seed;
    j["records"] = nlohmann::ordered_json::array();
    for (const CheckRecord& r : report.records) {
        nlohmann::ordered_json rec;
        rec["name"] = r.name;
        rec["status"] = r.status;
        rec["margin"] = r.margin;
        rec["tolerance"] = r.tolerance;
        rec["seed"] = r.seed;
        if (!r.note.empty()) rec["note"] = r.note;
        j["records"].push_back(std::move(rec));
    }
    j["exit"] = report.exit_status();
    return j.dump(2) + "\n";
}

std::string emit_samples(const Scene& scene, const std::string& kind,
                         const EmitParams& params, std::uint64_t seed) {
    std::string csv;
    auto row = [&csv](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            csv += cells[i];
            csv += (i + 1 < cells.size()) ? "," : "\n";
        }
    };

    if (kind == "geodesic") {
        if (!scene.body.proper()) throw NotProper("emit geodesic: scene is not proper");
        Vec x, y;
        if (params.x && params.y) {
            x = *params.x;
            y = *params.y;
        } else {
            const auto pts = scene.body.sample_interior(2, seed);
            x = pts[0];
            y = pts[1];
        }
        row({"t", "arclength"});
        const ProjPoint px = scene.body.chart().from_affine(x);
        if ((x - y).norm() <= 1e-14) {
            row({fmt(0.0), fmt(0.0)});
            return csv;
        }
        for (int i = 0; i <= params.steps; ++i) {
            const double t = static_cast<double>(i) / params.steps;
            const Vec p = x + t * (y - x);
            const double d =
                t == 0.0 ? 0.0
                         : hilbert_distance(scene.body, px, scene.body.chart().from_affine(p));
            row({fmt(t), fmt(d)});
        }
        return csv;
    }

    if (kind == "orbit") {
        const ProjPoint base = scene.body.chart().from_affine(scene.body.interior_point());
        const OrbitBall ball = orbit_ball(scene.group, base, params.word_length);
        std::vector<std::string> header{"word"};
        for (int i = 0; i < scene.body.dim(); ++i) header.push_back("x" + std::to_string(i));
        row(header);
        for (const auto& [word, p] : ball.points) {
            std::vector<std::string> cells{word};
            const Vec a = scene.body.chart().to_affine(p);
            for (int i = 0; i < a.size(); ++i) cells.push_back(fmt(a[i]));
            row(cells);
        }
        return csv;
    }

    if (kind == "distance-field") {
        if (!scene.body.proper()) throw NotProper("emit distance-field: scene is not proper");
        if (scene.body.dim() != 2)
            throw SceneIncompatible("emit distance-field: needs a 2-dimensional scene");
        const Vec base = scene.body.interior_point();
        const ProjPoint pbase = scene.body.chart().from_affine(base);
        // Bounding box from the boundary geometry.
        double lo0 = base[0], hi0 = base[0], lo1 = base[1], hi1 = base[1];
        for (const Vec& b : scene.body.sample_boundary(256, seed)) {
            lo0 = std::min(lo0, b[0]);
            hi0 = std::max(hi0, b[0]);
            lo1 = std::min(lo1, b[1]);
            hi1 = std::max(hi1, b[1]);
        }
        row({"x", "y", "distance"});
        for (int i = 0; i < params.grid; ++i) {
            for (int j = 0; j < params.grid; ++j) {
                Vec p(2);
                p << lo0 + (hi0 - lo0) * (i + 0.5) / params.grid,
                    lo1 + (hi1 - lo1) * (j + 0.5) / params.grid;
                if (scene.body.classify_affine(p) != Region::Interior) continue;
                const double d =
                    hilbert_distance(scene.body, pbase, scene.body.chart().from_affine(p));
                row({fmt(p[0]), fmt(p[1]), fmt(d)});
            }
        }
        return csv;
    }

    throw Error("emit_samples: unknown kind '" + kind + "'");
}

} // namespace cvx
