#include "cvxproj/json_io.hpp"

#include <nlohmann/json.hpp>

namespace cvx {
namespace {

using json = nlohmann::ordered_json;

json vec_json(const Vec& v) {
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

json mat_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Vec vec_parse(const json& j) {
    if (!j.is_array()) throw Error("json: expected an array of doubles");
    Vec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = j[i].get<double>();
    return v;
}

Mat mat_parse(const json& j) {
    if (!j.is_array() || j.empty()) throw Error("json: expected a nonempty array of rows");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[i].size()) != cols) throw Error("json: ragged matrix");
        for (int k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
    }
    return m;
}

json body_json(const ConvexBody& body) {
    json j;
    switch (body.rep()) {
        case ConvexBody::Rep::Interval: {
            j["type"] = "interval";
            j["chart"] = vec_json(body.chart().functional());
            j["endpoints"] = {body.vertices()[0][0], body.vertices()[1][0]};
            break;
        }
        case ConvexBody::Rep::Polytope: {
            j["type"] = "polytope";
            j["chart"] = vec_json(body.chart().functional());
            json verts = json::array();
            for (const Vec& v : body.vertices()) verts.push_back(vec_json(v));
            j["vertices"] = std::move(verts);
            break;
        }
        case ConvexBody::Rep::Halfspaces: {
            j["type"] = "halfspaces";
            j["chart"] = vec_json(body.chart().functional());
            json normals = json::array();
            json offsets = json::array();
            for (const Halfspace& f : body.facets()) {
                normals.push_back(vec_json(f.normal));
                offsets.push_back(f.offset);
            }
            j["normals"] = std::move(normals);
            j["offsets"] = std::move(offsets);
            break;
        }
        case ConvexBody::Rep::Ellipsoid: {
            j["type"] = "ellipsoid";
            j["chart"] = vec_json(body.chart().functional());
            j["center"] = vec_json(body.center());
            j["shape"] = mat_json(body.shape());
            break;
        }
    }
    if (!body.proper()) j["proper"] = false;
    return j;
}

ConvexBody body_parse(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    ConvexBody body = [&] {
        if (type == "interval") {
            const Vec e = vec_parse(j.at("endpoints"));
            std::optional<AffineChart> chart;
            if (j.contains("chart")) chart = AffineChart(vec_parse(j.at("chart")));
            return ConvexBody::interval(e[0], e[1], chart);
        }
        if (type == "polytope") {
            std::vector<Vec> verts;
            for (const json& row : j.at("vertices")) verts.push_back(vec_parse(row));
            const int d = static_cast<int>(verts.front().size());
            AffineChart chart = j.contains("chart") ? AffineChart(vec_parse(j.at("chart")))
                                                    : AffineChart::standard(d);
            return ConvexBody::polytope(std::move(verts), std::move(chart));
        }
        if (type == "halfspaces") {
            std::vector<Halfspace> facets;
            const json& normals = j.at("normals");
            const json& offsets = j.at("offsets");
            for (std::size_t i = 0; i < normals.size(); ++i)
                facets.push_back({vec_parse(normals[i]), offsets[i].get<double>()});
            const int d = static_cast<int>(facets.front().normal.size());
            AffineChart chart = j.contains("chart") ? AffineChart(vec_parse(j.at("chart")))
                                                    : AffineChart::standard(d);
            return ConvexBody::halfspaces(std::move(facets), std::move(chart));
        }
        if (type == "ellipsoid") {
            const Vec center = vec_parse(j.at("center"));
            AffineChart chart = j.contains("chart")
                                    ? AffineChart(vec_parse(j.at("chart")))
                                    : AffineChart::standard(static_cast<int>(center.size()));
            return ConvexBody::ellipsoid(center, mat_parse(j.at("shape")), std::move(chart));
        }
        throw Error("json: unknown body type '" + type + "'");
    }();
    if (j.contains("proper") && !j.at("proper").get<bool>())
        body = ConvexBody::improper(std::move(body));
    return body;
}

json group_json(const GroupGens& group) {
    json gens = json::array();
    for (const Generator& g : group.generators()) {
        json g_json;
        g_json["label"] = g.label;
        g_json["matrix"] = mat_json(g.matrix);
        gens.push_back(std::move(g_json));
    }
    json j;
    j["generators"] = std::move(gens);
    return j;
}

GroupGens group_parse(const json& j) {
    std::vector<std::pair<std::string, Mat>> gens;
    for (const json& g : j.at("generators"))
        gens.emplace_back(g.at("label").get<std::string>(), mat_parse(g.at("matrix")));
    return GroupGens(std::move(gens));
}

json cone_json(const ConvexCone& cone) {
    json j;
    if (cone.rep() == ConvexCone::Rep::PolyhedralRays) {
        j["type"] = "rays";
        json rays = json::array();
        for (const Vec& r : cone.rays()) rays.push_back(vec_json(r));
        j["rays"] = std::move(rays);
    } else {
        j["type"] = "over-body";
        j["body"] = body_json(cone.base());
    }
    return j;
}

ConvexCone cone_parse(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "rays") {
        std::vector<Vec> rays;
        for (const json& r : j.at("rays")) rays.push_back(vec_parse(r));
        return ConvexCone::from_rays(std::move(rays));
    }
    if (type == "over-body") return ConvexCone::over_body(body_parse(j.at("body")));
    throw Error("json: unknown cone type '" + type + "'");
}

} // namespace

std::string matrix_to_json(const Mat& m) { return mat_json(m).dump(); }

Mat matrix_from_json(const std::string& text) { return mat_parse(json::parse(text)); }

Vec vector_from_json(const std::string& text) { return vec_parse(json::parse(text)); }

std::string body_to_json(const ConvexBody& body) { return body_json(body).dump(2) + "\n"; }

ConvexBody body_from_json(const std::string& text) { return body_parse(json::parse(text)); }

std::string group_to_json(const GroupGens& group) { return group_json(group).dump(2) + "\n"; }

GroupGens group_from_json(const std::string& text) { return group_parse(json::parse(text)); }

std::string cone_to_json(const ConvexCone& cone) { return cone_json(cone).dump(2) + "\n"; }

ConvexCone cone_from_json(const std::string& text) { return cone_parse(json::parse(text)); }

std::string scene_to_json(const Scene& scene) {
    json j;
    j["name"] = scene.name;
    j["body"] = body_json(scene.body);
    j["group"] = group_json(scene.group);
    j["cone"] = cone_json(scene.cone);
    json tags;
    for (const auto& [key, value] : scene.tags) tags[key] = value;
    j["tags"] = std::move(tags);
    if (!scene.expected_aut.empty()) {
        json auts = json::array();
        for (const Mat& m : scene.expected_aut) auts.push_back(mat_json(m));
        j["expected_aut"] = std::move(auts);
    }
    if (!scene.orbit_targets.empty()) {
        json targets = json::array();
        for (const ProjPoint& p : scene.orbit_targets) targets.push_back(vec_json(p.coords()));
        j["orbit_targets"] = std::move(targets);
    }
    if (scene.expected_split_blocks > 0) j["expected_split_blocks"] = scene.expected_split_blocks;
    return j.dump(2) + "\n";
}

Scene scene_from_json(const std::string& text) {
    const json j = json::parse(text);
    ConvexBody body = body_parse(j.at("body"));
    GroupGens group = group_parse(j.at("group"));
    ConvexCone cone = j.contains("cone") ? cone_parse(j.at("cone"))
                                         : ConvexCone::over_body(body);
    Scene scene{j.at("name").get<std::string>(), std::move(body), std::move(group),
                std::move(cone), {}, {}, {}, 0};
    if (j.contains("tags"))
        for (const auto& [key, value] : j.at("tags").items())
            scene.tags[key] = value.get<bool>();
    if (j.contains("expected_aut"))
        for (const json& m : j.at("expected_aut")) scene.expected_aut.push_back(mat_parse(m));
    if (j.contains("orbit_targets"))
        for (const json& p : j.at("orbit_targets"))
            scene.orbit_targets.emplace_back(vec_parse(p));
    if (j.contains("expected_split_blocks"))
        scene.expected_split_blocks = j.at("expected_split_blocks").get<int>();
    return scene;
}

Equivariance equivariance_from_json(const std::string& text) {
    const json j = json::parse(text);
    Equivariance equiv;
    equiv.source = group_parse(j.at("source"));
    for (const json& m : j.at("image")) equiv.image.push_back(mat_parse(m));
    return equiv;
}

std::pair<ConvexCone, ConvexCone> equivariance_cones_from_json(const std::string& text) {
    const json j = json::parse(text);
    return {cone_parse(j.at("source_cone")), cone_parse(j.at("target_cone"))};
}

std::string basis_to_json(const std::vector<Mat>& basis) {
    json j;
    j["dimension"] = basis.size();
    json arr = json::array();
    for (const Mat& m : basis) arr.push_back(mat_json(m));
    j["basis"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::string decomposition_to_json(const Decomposition& decomposition,
                                  const DecompositionReport& report) {
    json j;
    j["blocks"] = json::array();
    for (const DecompositionBlock& b : decomposition.blocks) {
        json bj;
        bj["basis"] = mat_json(b.basis);
        bj["cone"] = cone_json(b.cone);
        if (b.irreducible_nonabsolute) bj["irreducible_nonabsolute"] = true;
        j["blocks"].push_back(std::move(bj));
    }
    j["report"]["pass"] = report.pass;
    j["report"]["max_invariance_residual"] = report.max_invariance_residual;
    j["report"]["failed_samples"] = report.failed_samples;
    j["report"]["samples_checked"] = report.samples_checked;
    if (!report.detail.empty()) j["report"]["detail"] = report.detail;
    return j.dump(2) + "\n";
}

std::string factorization_to_json(const Factorization& f) {
    json j;
    j["u_basis"] = mat_json(f.u_basis);
    j["w_basis"] = mat_json(f.w_basis);
    j["projector"] = mat_json(f.projector);
    j["quotient_group"] = group_json(f.quotient_group);
    j["quotient_cone"] = cone_json(f.quotient_cone);
    j["injective_part"] = mat_json(f.injective_part);
    return j.dump(2) + "\n";
}

std::string blend_to_json(const BlendInterval& blend) {
    json j;
    j["R"] = blend.r;
    j["interval"] = {blend.lo, blend.hi};
    j["verified"] = blend.verified;
    return j.dump(2) + "\n";
}

std::string proj_map_to_json(const ProjLinearMap& map) {
    json j;
    j["matrix"] = mat_json(map.matrix());
    return j.dump(2) + "\n";
}

ProjLinearMap proj_map_from_json(const std::string& text) {
    const json j = json::parse(text);
    return ProjLinearMap(mat_parse(j.at("matrix")));
}

} // namespace cvx
