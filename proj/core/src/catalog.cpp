#include "cvxproj/catalog.hpp"

#include <cmath>

namespace cvx {
namespace {

const double kE = std::exp(1.0);

// Standard open d-simplex in the chart with functional (1, ..., 1): affine
// coordinates are v_1..v_d of v / (sum v), vertices at 0 and the unit points.
ConvexBody simplex_body(int d) {
    AffineChart chart{Vec::Ones(d + 1)};
    std::vector<Vec> verts;
    verts.push_back(Vec::Zero(d));
    for (int i = 0; i < d; ++i) {
        Vec v = Vec::Zero(d);
        v[i] = 1.0;
        verts.push_back(std::move(v));
    }
    std::vector<Halfspace> facets;
    for (int i = 0; i < d; ++i) {
        Vec n = Vec::Zero(d);
        n[i] = -1.0;
        facets.push_back({std::move(n), 0.0});
    }
    facets.push_back({Vec::Ones(d), 1.0});
    return ConvexBody::polytope(std::move(verts), std::move(facets), std::move(chart));
}

Mat diag_exp(int n, int slot) {
    Mat m = Mat::Identity(n, n);
    m(slot, slot) = kE;
    return m;
}

Mat permutation(int n, const std::vector<int>& image) {
    Mat m = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) m(image[i], i) = 1.0;
    return m;
}

Mat boost_x(double s) {
    Mat m = Mat::Identity(3, 3);
    m(0, 0) = std::cosh(s);
    m(0, 1) = std::sinh(s);
    m(1, 0) = std::sinh(s);
    m(1, 1) = std::cosh(s);
    return m;
}

Mat boost_y(double s) {
    Mat m = Mat::Identity(3, 3);
    m(0, 0) = std::cosh(s);
    m(0, 2) = std::sinh(s);
    m(2, 0) = std::sinh(s);
    m(2, 2) = std::cosh(s);
    return m;
}

Mat rotation(double angle) {
    Mat m = Mat::Identity(3, 3);
    m(1, 1) = std::cos(angle);
    m(1, 2) = -std::sin(angle);
    m(2, 1) = std::sin(angle);
    m(2, 2) = std::cos(angle);
    return m;
}

Scene build_torus_affine(int d) {
    if (d < 1) throw UnknownScene("torus-affine: dimension must be >= 1");
    // Stand-in for the full affine chart: a large box, tagged non-proper so
    // the metric operations reject the scene.
    const double width = 100.0;
    AffineChart chart = AffineChart::standard(d);
    std::vector<Vec> verts;
    for (int mask = 0; mask < (1 << d); ++mask) {
        Vec v(d);
        for (int i = 0; i < d; ++i) v[i] = (mask >> i) & 1 ? width : -width;
        verts.push_back(std::move(v));
    }
    std::vector<Halfspace> facets;
    for (int i = 0; i < d; ++i) {
        Vec up = Vec::Zero(d), dn = Vec::Zero(d);
        up[i] = 1.0;
        dn[i] = -1.0;
        facets.push_back({std::move(up), width});
        facets.push_back({std::move(dn), width});
    }
    ConvexBody body = ConvexBody::improper(
        ConvexBody::polytope(std::move(verts), std::move(facets), chart));

    std::vector<std::pair<std::string, Mat>> gens;
    for (int i = 0; i < d; ++i) {
        Mat t = Mat::Identity(d + 1, d + 1);
        t(i + 1, 0) = 1.0; // [1 : x] -> [1 : x + e_i]
        gens.emplace_back("t" + std::to_string(i + 1), std::move(t));
    }

    Scene scene{"torus-affine(" + std::to_string(d) + ")", body, GroupGens(std::move(gens)),
                ConvexCone::over_body(body), {}, {}, {}, 0};
    scene.tags = {{"proper", false}, {"strictly_convex", false}, {"reducible", false}};
    return scene;
}

Scene build_torus_orthant(int d) {
    if (d < 1) throw UnknownScene("torus-orthant: dimension must be >= 1");
    ConvexBody body = simplex_body(d);
    const int n = d + 1;

    std::vector<std::pair<std::string, Mat>> gens;
    for (int i = 0; i < n; ++i)
        gens.emplace_back("g" + std::to_string(i), diag_exp(n, i));
    GroupGens group{std::move(gens)};

    Scene scene{"torus-orthant(" + std::to_string(d) + ")", body, group, cone_over(body), {}, {}, {}, n};
    scene.tags = {{"proper", true}, {"strictly_convex", false}, {"reducible", true}};

    // Aut(simplex) contains every coordinate permutation and every positive
    // diagonal; list a generating sample plus one generic diagonal direction.
    if (n >= 2) {
        std::vector<int> swap01(n);
        for (int i = 0; i < n; ++i) swap01[i] = i;
        std::swap(swap01[0], swap01[1]);
        scene.expected_aut.push_back(permutation(n, swap01));
        std::vector<int> cycle(n);
        for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
        scene.expected_aut.push_back(permutation(n, cycle));
    }
    for (const Generator& g : group.generators()) scene.expected_aut.push_back(g.matrix);
    Mat generic = Mat::Identity(n, n);
    for (int i = 0; i < n; ++i) generic(i, i) = std::exp(0.3 * (i + 1) - 0.45);
    scene.expected_aut.push_back(std::move(generic));

    for (const Vec& v : body.vertices())
        scene.orbit_targets.push_back(body.chart().from_affine(v));
    return scene;
}

Scene build_klein_disk() {
    ConvexBody body = ConvexBody::ellipsoid(Vec::Zero(2), Mat::Identity(2, 2),
                                            AffineChart::standard(2));
    std::vector<std::pair<std::string, Mat>> gens;
    gens.emplace_back("a", boost_x(1.0));
    gens.emplace_back("b", boost_y(0.75));
    GroupGens group{std::move(gens)};

    Scene scene{"klein-disk", body, group, cone_over(body), {}, {}, {}, 1};
    scene.tags = {{"proper", true}, {"strictly_convex", true}, {"reducible", false}};
    scene.expected_aut = {boost_x(1.0), boost_y(0.75), rotation(0.3)};
    return scene;
}

Scene build_product_orthant() {
    // orthant_2 + orthant_2 in R^4; each block carries the diagonal direction
    // and the swap, so the group is irreducible on each factor and the
    // commutant is exactly {a Id_2 + b Id_2}.
    ConvexBody body = simplex_body(3);
    auto embed = [](const Mat& block, int offset) {
        Mat m = Mat::Identity(4, 4);
        m.block(offset, offset, 2, 2) = block;
        return m;
    };
    Mat swap2(2, 2);
    swap2 << 0, 1, 1, 0;
    Mat diag2 = Mat::Identity(2, 2);
    diag2(0, 0) = kE;

    std::vector<std::pair<std::string, Mat>> gens;
    gens.emplace_back("a", embed(diag2, 0));
    gens.emplace_back("s", embed(swap2, 0));
    gens.emplace_back("b", embed(diag2, 2));
    gens.emplace_back("t", embed(swap2, 2));
    GroupGens group{std::move(gens)};

    Scene scene{"product-orthant", body, group, cone_over(body), {}, {}, {}, 2};
    scene.tags = {{"proper", true}, {"strictly_convex", false}, {"reducible", true}};
    for (const Generator& g : group.generators()) scene.expected_aut.push_back(g.matrix);
    return scene;
}

Scene build_lorentz() {
    ConvexBody body = ConvexBody::ellipsoid(Vec::Zero(2), Mat::Identity(2, 2),
                                            AffineChart::standard(2));
    std::vector<std::pair<std::string, Mat>> gens;
    gens.emplace_back("a", boost_x(0.8));
    gens.emplace_back("b", boost_y(0.6));
    GroupGens group{std::move(gens)};

    Scene scene{"lorentz", body, group, cone_over(body), {}, {}, {}, 1};
    scene.tags = {{"proper", true}, {"strictly_convex", true}, {"reducible", false}};
    scene.expected_aut = {boost_x(0.8), boost_y(0.6)};
    return scene;
}

} // namespace

Scene catalog_build(const std::string& name, int dim) {
    std::string base = name;
    // "torus-orthant(3)" selects the dimension inline.
    const auto open = name.find('(');
    if (open != std::string::npos && name.back() == ')') {
        base = name.substr(0, open);
        try {
            dim = std::stoi(name.substr(open + 1, name.size() - open - 2));
        } catch (const std::exception&) {
            throw UnknownScene("catalog_build: bad dimension in '" + name + "'");
        }
    }
    if (base == "torus-affine") return build_torus_affine(dim);
    if (base == "torus-orthant") return build_torus_orthant(dim);
    if (base == "klein-disk") return build_klein_disk();
    if (base == "product-orthant") return build_product_orthant();
    if (base == "lorentz") return build_lorentz();
    throw UnknownScene("catalog_build: unknown scene '" + name + "'");
}

std::vector<std::string> catalog_names() {
    return {"torus-affine", "torus-orthant", "klein-disk", "product-orthant", "lorentz"};
}

} // namespace cvx
