#include "cvxproj/group.hpp"

#include "cvxproj/cone.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace cvx {
namespace {

constexpr double kDedupTol = 1e-8;

// Spatial hash over canonical coordinates for orbit deduplication. Candidate
// lookups probe the neighboring cells of both signs of the query point.
class PointIndex {
public:
    explicit PointIndex(int dim) : dim_(dim), cell_(4.0 * kDedupTol) {}

    bool contains(const Vec& p, const std::vector<Vec>& store) const {
        return probe(p, store) || probe(Vec(-p), store);
    }

    void insert(const Vec& p, int id) {
        grid_[key(p)].push_back(id);
    }

private:
    std::int64_t key_component(double x) const {
        return static_cast<std::int64_t>(std::floor(x / cell_));
    }

    std::size_t key(const Vec& p) const {
        std::size_t h = 1469598103934665603ULL;
        for (int i = 0; i < dim_; ++i) {
            h ^= static_cast<std::size_t>(key_component(p[i]) + (1LL << 32));
            h *= 1099511628211ULL;
        }
        return h;
    }

    bool probe(const Vec& p, const std::vector<Vec>& store) const {
        std::vector<std::int64_t> base(dim_);
        for (int i = 0; i < dim_; ++i) base[i] = key_component(p[i]);
        std::vector<int> offset(dim_, -1);
        while (true) {
            Vec q(dim_);
            for (int i = 0; i < dim_; ++i) q[i] = (base[i] + offset[i] + 0.5) * cell_;
            const auto it = grid_.find(key(q));
            if (it != grid_.end()) {
                for (int id : it->second) {
                    const double d = std::min((store[id] - p).norm(), (store[id] + p).norm());
                    if (d <= kDedupTol) return true;
                }
            }
            int i = 0;
            while (i < dim_ && offset[i] == 1) offset[i++] = -1;
            if (i == dim_) return false;
            ++offset[i];
        }
    }

    int dim_;
    double cell_;
    std::unordered_map<std::size_t, std::vector<int>> grid_;
};

} // namespace

GroupGens::GroupGens(std::vector<std::pair<std::string, Mat>> generators) {
    if (generators.empty()) {
        ambient_ = 0;
        return;
    }
    ambient_ = static_cast<int>(generators.front().second.rows());
    for (auto& [label, m] : generators) {
        if (m.rows() != ambient_ || m.cols() != ambient_)
            throw DimensionMismatch("group: generators must be square of equal size");
        Eigen::FullPivLU<Mat> lu(m);
        if (!lu.isInvertible())
            throw Error("group: generator '" + label + "' is not invertible");
        Mat inv = lu.inverse();
        const double residual = (m * inv - Mat::Identity(ambient_, ambient_)).norm();
        if (residual > 1e-10 * std::max(1.0, m.norm()))
            throw Error("group: generator '" + label + "' is too ill-conditioned to invert");
        gens_.push_back({label, std::move(m), std::move(inv)});
    }
}

Mat GroupGens::word_matrix(const std::string& word) const {
    if (ambient_ == 0) throw Error("word_matrix: empty group");
    Mat acc = Mat::Identity(ambient_, ambient_);
    if (word.empty() || word == "1") return acc;
    std::size_t pos = 0;
    while (pos < word.size()) {
        std::size_t next = word.find('*', pos);
        if (next == std::string::npos) next = word.size();
        std::string token = word.substr(pos, next - pos);
        bool inverse = false;
        if (token.size() > 3 && token.substr(token.size() - 3) == "^-1") {
            inverse = true;
            token = token.substr(0, token.size() - 3);
        }
        const Generator* gen = nullptr;
        for (const Generator& g : gens_)
            if (g.label == token) { gen = &g; break; }
        if (!gen) throw Error("word_matrix: unknown generator '" + token + "'");
        acc = acc * (inverse ? gen->inverse : gen->matrix);
        pos = next + 1;
    }
    return acc;
}

OrbitBall orbit_ball(const GroupGens& group, const ProjPoint& base, int radius,
                     std::size_t cap) {
    if (radius < 0) throw Error("orbit_ball: radius must be nonnegative");
    OrbitBall ball{base, radius, {}};
    ball.points.emplace_back("1", base);
    if (group.empty() || radius == 0) return ball;
    if (group.ambient_dim() != base.coords().size())
        throw DimensionMismatch("orbit_ball: base point dimension mismatch");

    // Moves: generators then inverses; move m and its inverse pair via m^1.
    struct Move {
        std::string label;
        const Mat* matrix;
    };
    std::vector<Move> moves;
    for (const Generator& g : group.generators()) moves.push_back({g.label, &g.matrix});
    for (const Generator& g : group.generators()) moves.push_back({g.label + "^-1", &g.inverse});
    const int k = static_cast<int>(group.size());
    auto inverse_move = [k](int m) { return m < k ? m + k : m - k; };

    std::vector<Vec> store;
    PointIndex index(group.ambient_dim());
    store.push_back(base.coords());
    index.insert(base.coords(), 0);

    struct Entry {
        int point_id;
        int last_move;
        std::string word;
    };
    std::vector<Entry> frontier{{0, -1, ""}};

    for (int level = 1; level <= radius && !frontier.empty(); ++level) {
        std::vector<Entry> next;
        for (const Entry& e : frontier) {
            for (int m = 0; m < 2 * k; ++m) {
                if (e.last_move >= 0 && m == inverse_move(e.last_move)) continue; // free reduction
                const ProjPoint image(*moves[m].matrix * store[e.point_id]);
                if (index.contains(image.coords(), store)) continue;
                if (store.size() >= cap)
                    throw Exploded("orbit_ball: point cap exceeded");
                const int id = static_cast<int>(store.size());
                store.push_back(image.coords());
                index.insert(image.coords(), id);
                const std::string word = e.word.empty() ? moves[m].label
                                                        : e.word + "*" + moves[m].label;
                ball.points.emplace_back(word, image);
                next.push_back({id, m, word});
            }
        }
        frontier = std::move(next);
    }
    return ball;
}

bool preserves_body(const Mat& g, const ConvexBody& body, double tol) {
    const int n = body.dim() + 1;
    if (g.rows() != n || g.cols() != n)
        throw DimensionMismatch("preserves_body: matrix size != chart dimension + 1");
    Eigen::FullPivLU<Mat> lu(g);
    if (!lu.isInvertible()) return false;

    if (body.rep() == ConvexBody::Rep::Ellipsoid) {
        const Mat h = body.homogeneous_quadric();
        const Mat pulled = g.transpose() * h * g;
        const double mu = (pulled.cwiseProduct(h)).sum() / h.squaredNorm();
        if (mu <= 0.0) return false;
        return (pulled - mu * h).norm() <= tol * pulled.norm();
    }

    // Polytope-like: [g] must permute the vertex set.
    std::vector<ProjPoint> verts;
    for (const Vec& v : body.vertices())
        verts.push_back(body.chart().from_affine(v));
    std::vector<bool> used(verts.size(), false);
    for (const ProjPoint& v : verts) {
        const ProjPoint image(g * v.coords());
        bool matched = false;
        for (std::size_t j = 0; j < verts.size(); ++j) {
            if (!used[j] && proj_point_distance(image, verts[j]) <= tol) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

GroupGens cone_lift(const GroupGens& group, const ConvexCone& cone) {
    const int n = cone.ambient_dim();
    if (!group.empty() && group.ambient_dim() != n)
        throw DimensionMismatch("cone_lift: group and cone dimensions differ");
    const Vec ray = cone.interior_point();
    std::vector<std::pair<std::string, Mat>> lifted;
    for (const Generator& g : group.generators()) {
        const double det = g.matrix.determinant();
        if (det == 0.0) throw Error("cone_lift: singular generator");
        Mat m = g.matrix / std::pow(std::abs(det), 1.0 / n);
        if (cone.classify(m * ray) == Region::Interior) {
            lifted.emplace_back(g.label, std::move(m));
        } else if (cone.classify(Vec(-(m * ray))) == Region::Interior) {
            lifted.emplace_back(g.label, Mat(-m));
        } else {
            throw NoConsistentSign("cone_lift: generator '" + g.label +
                                   "' maps the test ray outside both cone components");
        }
    }
    lifted.emplace_back("scale", Mat(std::exp(1.0) * Mat::Identity(n, n)));
    return GroupGens(std::move(lifted));
}

bool centralizes(const Mat& h, const GroupGens& group, double tol) {
    for (const Generator& g : group.generators()) {
        if (h.rows() != g.matrix.rows())
            throw DimensionMismatch("centralizes: dimension mismatch");
        const ProjLinearMap hg(h * g.matrix);
        const ProjLinearMap gh(g.matrix * h);
        if (!proj_equal(hg, gh, tol)) return false;
    }
    return true;
}

} // namespace cvx
