// cvxproj: Hilbert geometry on convex projective sets from the command line.
//
// Subcommands: dist, orbit, split, solve, blend, factor, reconstruct,
// catalog, check, emit. All randomness flows from --seed; identical
// invocations produce byte-identical output.

#include <CLI11.hpp>

#include <cvxproj/equivariant.hpp>
#include <cvxproj/hilbert.hpp>
#include <cvxproj/json_io.hpp>
#include <cvxproj/suite.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace cvx;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write file: " + out_path);
    out << text;
}

Scene load_scene(const std::string& spec) {
    if (std::filesystem::exists(spec)) return scene_from_json(slurp(spec));
    return catalog_build(spec);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// {"pairs": [[[x...],[y...]], ...]} in affine coordinates. Each pair is a
// 2-row matrix; split the outer array and hand blocks to the matrix parser.
std::vector<std::pair<Vec, Vec>> parse_pairs_json(const std::string& text) {
    std::vector<std::pair<Vec, Vec>> out;
    const std::size_t pos = text.find('[');
    if (pos == std::string::npos) throw Error("pairs: malformed JSON");
    std::size_t depth = 0, start = 0;
    std::vector<std::string> chunks;
    for (std::size_t i = pos; i < text.size(); ++i) {
        if (text[i] == '[') {
            if (depth == 1) start = i;
            ++depth;
        } else if (text[i] == ']') {
            --depth;
            if (depth == 1) chunks.push_back(text.substr(start, i - start + 1));
            if (depth == 0) break;
        }
    }
    for (const std::string& chunk : chunks) {
        const Mat m = matrix_from_json(chunk);
        if (m.rows() != 2) throw Error("pairs: each entry needs exactly two points");
        out.emplace_back(m.row(0).transpose(), m.row(1).transpose());
    }
    return out;
}

int run_dist(const std::string& scene_spec, const std::string& x_json,
             const std::string& y_json, const std::string& pairs_path,
             const std::string& out_path) {
    const Scene scene = load_scene(scene_spec);
    if (!pairs_path.empty()) {
        const auto affine_pairs = parse_pairs_json(slurp(pairs_path));
        std::vector<std::pair<ProjPoint, ProjPoint>> pairs;
        for (const auto& [x, y] : affine_pairs)
            pairs.emplace_back(scene.body.chart().from_affine(x),
                               scene.body.chart().from_affine(y));
        const MetricSample sample = evaluate_pairs(scene.body, std::move(pairs));
        std::string csv;
        const int d = scene.body.dim();
        for (int i = 0; i < d; ++i) csv += "x" + std::to_string(i) + ",";
        for (int i = 0; i < d; ++i) csv += "y" + std::to_string(i) + ",";
        csv += "d\n";
        for (std::size_t k = 0; k < sample.pairs.size(); ++k) {
            const auto& [x, y] = affine_pairs[k];
            for (int i = 0; i < d; ++i) csv += fmt(x[i]) + ",";
            for (int i = 0; i < d; ++i) csv += fmt(y[i]) + ",";
            csv += fmt(sample.distances[k]) + "\n";
        }
        write_output(csv, out_path);
        return 0;
    }
    if (x_json.empty() || y_json.empty())
        throw Error("dist: provide --x and --y (affine JSON arrays) or --pairs FILE");
    const Vec x = vector_from_json(x_json);
    const Vec y = vector_from_json(y_json);
    const double dist = hilbert_distance(scene.body, scene.body.chart().from_affine(x),
                                         scene.body.chart().from_affine(y));
    write_output(fmt(dist) + "\n", out_path);
    return 0;
}

int run_orbit(const std::string& scene_spec, const std::string& base_json, int length,
              const std::string& out_path, std::uint64_t seed) {
    const Scene scene = load_scene(scene_spec);
    EmitParams params;
    params.word_length = length;
    if (!base_json.empty()) {
        // Orbit of an explicit base point; emit through the library path.
        const Vec base = vector_from_json(base_json);
        const OrbitBall ball =
            orbit_ball(scene.group, scene.body.chart().from_affine(base), length);
        std::string csv = "word";
        for (int i = 0; i < scene.body.dim(); ++i) csv += ",x" + std::to_string(i);
        csv += "\n";
        for (const auto& [word, p] : ball.points) {
            csv += word;
            const Vec a = scene.body.chart().to_affine(p);
            for (int i = 0; i < a.size(); ++i) csv += "," + fmt(a[i]);
            csv += "\n";
        }
        write_output(csv, out_path);
        return 0;
    }
    write_output(emit_samples(scene, "orbit", params, seed), out_path);
    return 0;
}

int run_split(const std::string& group_path, const std::string& cone_path,
              const std::string& scene_spec, const std::string& out_path,
              std::uint64_t seed) {
    GroupGens group;
    ConvexCone cone;
    if (!scene_spec.empty()) {
        const Scene scene = load_scene(scene_spec);
        group = scene.group;
        cone = scene.cone;
    } else {
        if (group_path.empty() || cone_path.empty())
            throw Error("split: provide --group and --cone files or --scene");
        group = group_from_json(slurp(group_path));
        cone = cone_from_json(slurp(cone_path));
    }
    const Decomposition d = invariant_splitting(group, cone, seed);
    const DecompositionReport report = verify_decomposition(cone, group, d, 200, seed);
    write_output(decomposition_to_json(d, report), out_path);
    return report.pass ? 0 : 1;
}

int run_solve(const std::string& equiv_path, const std::string& out_path) {
    const std::string text = slurp(equiv_path);
    const Equivariance equiv = equivariance_from_json(text);
    const auto [source_cone, target_cone] = equivariance_cones_from_json(text);
    const EquivariantSpace space = equivariant_solution_space(equiv, source_cone, target_cone);
    write_output(basis_to_json(space.basis()), out_path);
    return 0;
}

int run_blend(const std::string& equiv_path, const std::string& s1_path,
              const std::string& s2_path, const std::string& sample_path,
              const std::string& out_path, std::uint64_t seed) {
    const std::string text = slurp(equiv_path);
    const Equivariance equiv = equivariance_from_json(text);
    const auto [source_cone, target_cone] = equivariance_cones_from_json(text);
    const EquivariantSpace space = equivariant_solution_space(equiv, source_cone, target_cone);
    const Mat s1 = matrix_from_json(slurp(s1_path));
    const Mat s2 = matrix_from_json(slurp(s2_path));
    std::vector<Vec> sample;
    if (!sample_path.empty()) {
        const Mat rows = matrix_from_json(slurp(sample_path));
        for (int i = 0; i < rows.rows(); ++i) sample.push_back(rows.row(i).transpose());
    } else {
        sample = source_cone.sample_interior(50, seed);
    }
    write_output(blend_to_json(blend_interval(space, s1, s2, sample)), out_path);
    return 0;
}

int run_factor(const std::string& map_path, const std::string& equiv_path,
               const std::string& out_path, std::uint64_t seed) {
    const std::string text = slurp(equiv_path);
    const Equivariance equiv = equivariance_from_json(text);
    const auto [source_cone, target_cone] = equivariance_cones_from_json(text);
    const Mat s0 = matrix_from_json(slurp(map_path));
    const Factorization f =
        factorize(s0, equiv.source, equiv, source_cone, target_cone, seed);
    write_output(factorization_to_json(f), out_path);
    return 0;
}

int run_reconstruct(const std::string& pairs_path, const std::string& source_spec,
                    const std::string& target_spec, double tol,
                    const std::string& out_path) {
    const Scene source = load_scene(source_spec);
    const Scene target = target_spec.empty() ? source : load_scene(target_spec);
    const int d1 = source.body.dim(), d2 = target.body.dim();

    std::vector<std::pair<ProjPoint, ProjPoint>> pairs;
    std::istringstream in(slurp(pairs_path));
    std::string line;
    bool header_skipped = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (!header_skipped) { // first row is the column header
            header_skipped = true;
            continue;
        }
        std::istringstream row(line);
        std::string cell;
        std::vector<double> values;
        while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
        if (static_cast<int>(values.size()) != d1 + d2)
            throw Error("reconstruct: row has wrong column count");
        Vec x(d1), y(d2);
        for (int i = 0; i < d1; ++i) x[i] = values[i];
        for (int i = 0; i < d2; ++i) y[i] = values[d1 + i];
        pairs.emplace_back(source.body.chart().from_affine(x),
                           target.body.chart().from_affine(y));
    }
    const ProjLinearMap map =
        boundary_reconstruct(source.body, target.body, pairs, tol);
    write_output(proj_map_to_json(map), out_path);
    return 0;
}

int run_catalog(const std::string& dump_name, const std::string& out_path) {
    if (dump_name.empty()) {
        std::string listing;
        for (const std::string& name : catalog_names()) listing += name + "\n";
        listing += "(torus scenes take a dimension suffix, e.g. torus-orthant(3))\n";
        write_output(listing, out_path);
        return 0;
    }
    write_output(scene_to_json(catalog_build(dump_name)), out_path);
    return 0;
}

int run_check(const std::string& suite, const std::vector<std::string>& scene_specs,
              std::uint64_t seed, const std::string& out_path) {
    std::vector<Scene> scenes;
    for (const std::string& s : scene_specs) scenes.push_back(load_scene(s));
    const SuiteReport report = run_check_suite(suite, scenes, seed);
    write_output(report_to_json(report), out_path);
    return report.exit_status();
}

int run_emit(const std::string& scene_spec, const std::string& kind, const EmitParams& params,
             std::uint64_t seed, const std::string& out_path) {
    write_output(emit_samples(load_scene(scene_spec), kind, params, seed), out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hilbert geometry on convex projective sets"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand name

    std::uint64_t seed = 0;
    double tol = 1e-6;
    std::string out_path;
    app.add_option("--seed", seed, "seed for every sampled check")->capture_default_str();
    app.add_option("--tol", tol, "tolerance for reconstruction residuals")
        ->capture_default_str();
    app.add_option("--out", out_path, "write output to a file instead of stdout");

    std::string scene_spec = "klein-disk", x_json, y_json, pairs_path;
    auto* dist = app.add_subcommand("dist", "Hilbert distance between interior points");
    dist->add_option("--scene", scene_spec, "scene name or JSON file");
    dist->add_option("--x", x_json, "affine coordinates, e.g. [0.1,0.2]");
    dist->add_option("--y", y_json, "affine coordinates");
    dist->add_option("--pairs", pairs_path, "batch JSON {\"pairs\":[[[..],[..]],...]}");

    std::string orbit_scene = "torus-orthant(2)", base_json;
    int orbit_length = 8;
    auto* orbit = app.add_subcommand("orbit", "orbit ball as CSV (word, coordinates)");
    orbit->add_option("--scene", orbit_scene, "scene name or JSON file");
    orbit->add_option("--base", base_json, "base point affine coordinates (default: deep point)");
    orbit->add_option("--length,-L", orbit_length, "word length bound")->capture_default_str();

    std::string split_group, split_cone, split_scene;
    auto* split = app.add_subcommand("split", "invariant cone splitting with residual report");
    split->add_option("--group", split_group, "group JSON file");
    split->add_option("--cone", split_cone, "cone JSON file");
    split->add_option("--scene", split_scene, "scene name or JSON file");

    std::string solve_equiv;
    auto* solve = app.add_subcommand("solve", "equivariant-map solution space basis");
    solve->add_option("--equivariance", solve_equiv, "equivariance JSON file")->required();

    std::string blend_equiv, blend_s1, blend_s2, blend_sample;
    auto* blend = app.add_subcommand("blend", "guaranteed blending interval of two maps");
    blend->add_option("--equivariance", blend_equiv, "equivariance JSON file")->required();
    blend->add_option("--s1", blend_s1, "first map JSON matrix file")->required();
    blend->add_option("--s2", blend_s2, "second map JSON matrix file")->required();
    blend->add_option("--sample", blend_sample, "cone sample points (matrix JSON, one per row)");

    std::string factor_map, factor_equiv;
    auto* factor = app.add_subcommand("factor", "factor a map through its kernel quotient");
    factor->add_option("--map", factor_map, "map JSON matrix file")->required();
    factor->add_option("--equivariance", factor_equiv, "equivariance JSON file")->required();

    std::string rec_pairs, rec_source = "klein-disk", rec_target;
    auto* reconstruct =
        app.add_subcommand("reconstruct", "projective map from boundary samples (CSV)");
    reconstruct->add_option("--pairs", rec_pairs, "CSV with header: source coords, image coords")
        ->required();
    reconstruct->add_option("--source", rec_source, "source scene name or file");
    reconstruct->add_option("--target", rec_target, "target scene (defaults to source)");

    std::string catalog_dump;
    auto* catalog = app.add_subcommand("catalog", "list built-in scenes or dump one as JSON");
    catalog->add_option("--dump", catalog_dump, "scene name to dump");

    std::string check_suite_name;
    std::vector<std::string> check_scenes;
    auto* check = app.add_subcommand("check", "run a property suite, emit a JSON report");
    check->add_option("--suite", check_suite_name, "one of the built-in suites")->required();
    check->add_option("--scene", check_scenes, "scene overrides (default: suite's catalog set)");

    std::string emit_scene = "klein-disk", emit_kind = "distance-field";
    EmitParams emit_params;
    std::string emit_x, emit_y;
    auto* emit = app.add_subcommand("emit", "emit CSV samples for plots");
    emit->add_option("--scene", emit_scene, "scene name or JSON file");
    emit->add_option("--kind", emit_kind, "geodesic | orbit | distance-field");
    emit->add_option("--grid", emit_params.grid, "distance-field grid resolution")
        ->capture_default_str();
    emit->add_option("--length,-L", emit_params.word_length, "orbit word length")
        ->capture_default_str();
    emit->add_option("--steps", emit_params.steps, "geodesic subdivisions")
        ->capture_default_str();
    emit->add_option("--x", emit_x, "geodesic endpoint (affine JSON)");
    emit->add_option("--y", emit_y, "geodesic endpoint (affine JSON)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dist->parsed()) return run_dist(scene_spec, x_json, y_json, pairs_path, out_path);
        if (orbit->parsed())
            return run_orbit(orbit_scene, base_json, orbit_length, out_path, seed);
        if (split->parsed())
            return run_split(split_group, split_cone, split_scene, out_path, seed);
        if (solve->parsed()) return run_solve(solve_equiv, out_path);
        if (blend->parsed())
            return run_blend(blend_equiv, blend_s1, blend_s2, blend_sample, out_path, seed);
        if (factor->parsed()) return run_factor(factor_map, factor_equiv, out_path, seed);
        if (reconstruct->parsed())
            return run_reconstruct(rec_pairs, rec_source, rec_target, tol, out_path);
        if (catalog->parsed()) return run_catalog(catalog_dump, out_path);
        if (check->parsed()) return run_check(check_suite_name, check_scenes, seed, out_path);
        if (emit->parsed()) {
            if (!emit_x.empty()) emit_params.x = cvx::vector_from_json(emit_x);
            if (!emit_y.empty()) emit_params.y = cvx::vector_from_json(emit_y);
            return run_emit(emit_scene, emit_kind, emit_params, seed, out_path);
        }
    } catch (const cvx::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
