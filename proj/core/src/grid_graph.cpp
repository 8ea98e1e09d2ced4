#include "qhkit/grid_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "qhkit/errors.hpp"

namespace qhkit {

namespace {

constexpr std::int64_t kCellBias = 1 << 20;

int trailing_zeros_capped(std::int64_t k, int cap) {
    if (k == 0) return cap;
    k = k < 0 ? -k : k;
    int z = 0;
    while (z < cap && (k & 1) == 0) {
        k >>= 1;
        ++z;
    }
    return z;
}

std::string bits_of(const Point& p) {
    std::string s(sizeof(double) * static_cast<std::size_t>(p.dim()), '\0');
    for (int i = 0; i < p.dim(); ++i) {
        const double v = p[i];
        std::memcpy(s.data() + sizeof(double) * static_cast<std::size_t>(i), &v, sizeof(double));
    }
    return s;
}

}  // namespace

GridGraph::GridGraph(const Domain& domain, int level, double edge_tol)
    : level_(level), edge_tol_(edge_tol), scale_(domain.shape_scale()), anchor_(domain.shape_anchor()),
      dim_(domain.dim()) {
    if (level < 0 || level > 12) throw ValidationError("/level", "must be in [0, 12]");
    if (!(edge_tol > 0.0)) throw ValidationError("/tol", "must be positive");
    build(domain);
}

double GridGraph::local_pitch(int l, double d) const {
    const double h = std::ldexp(scale_, -l);
    if (d >= 2.0 * h) return h;
    if (d >= h) return 0.5 * h;
    if (d >= 0.5 * h) return 0.25 * h;
    return 0.125 * h;
}

bool GridGraph::in_level(int i, int l) const {
    const auto u = static_cast<std::size_t>(i);
    const int j = exponent_[u];
    const double d = dist_[u];
    if (j > l + kRefineDepth) return false;
    if (d < 0.25 * std::ldexp(scale_, -l - kRefineDepth)) return false;
    return j <= l || d < 4.0 * std::ldexp(scale_, -j);
}

std::uint64_t GridGraph::cell_key(const Point& p, double cell) const {
    std::uint64_t key = 0;
    for (int i = 0; i < dim_; ++i) {
        const auto c = static_cast<std::int64_t>(std::floor((p[i] - anchor_[i]) / cell)) + kCellBias;
        key = (key << 21) | (static_cast<std::uint64_t>(c) & 0x1FFFFF);
    }
    return key;
}

template <class F>
void GridGraph::for_each_near(int l, const Point& p, double radius, F&& f) const {
    const LevelIndex& idx = index_[static_cast<std::size_t>(l)];
    std::int64_t lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0};
    for (int i = 0; i < dim_; ++i) {
        lo[i] = static_cast<std::int64_t>(std::floor((p[i] - radius - anchor_[i]) / idx.cell));
        hi[i] = static_cast<std::int64_t>(std::floor((p[i] + radius - anchor_[i]) / idx.cell));
    }
    std::int64_t c[3];
    for (c[0] = lo[0]; c[0] <= hi[0]; ++c[0])
        for (c[1] = lo[1]; c[1] <= hi[1]; ++c[1])
            for (c[2] = lo[2]; c[2] <= (dim_ == 3 ? hi[2] : lo[2]); ++c[2]) {
                std::uint64_t key = 0;
                for (int i = 0; i < dim_; ++i)
                    key = (key << 21) | (static_cast<std::uint64_t>(c[i] + kCellBias) & 0x1FFFFF);
                const auto it = idx.buckets.find(key);
                if (it == idx.buckets.end()) continue;
                for (int q : it->second) f(q);
            }
}

void GridGraph::build(const Domain& domain) {
    const double fine = std::ldexp(scale_, -level_ - kRefineDepth);
    const double base = std::ldexp(scale_, -level_);
    const int block = 1 << kRefineDepth;
    const Box box = domain.shape_box();

    std::int64_t blo[3] = {0, 0, 0}, bhi[3] = {0, 0, 0};
    for (int i = 0; i < dim_; ++i) {
        blo[i] = static_cast<std::int64_t>(std::floor((box.lo[i] - anchor_[i]) / base)) - 1;
        bhi[i] = static_cast<std::int64_t>(std::floor((box.hi[i] - anchor_[i]) / base)) + 1;
    }
    const double half_diag = base * std::sqrt(static_cast<double>(dim_)) * 0.5;

    auto consider = [&](const std::int64_t* k) {
        // Absolute exponent: coarsest lattice (pitch scale 2^-j) containing the node.
        const int finest = level_ + kRefineDepth;
        Point p = anchor_;
        int v = finest;
        for (int i = 0; i < dim_; ++i) {
            p[i] = anchor_[i] + static_cast<double>(k[i]) * fine;
            v = std::min(v, trailing_zeros_capped(k[i], finest));
        }
        const double d = domain.shape_distance(p);
        if (!(d >= 0.25 * fine)) return;
        const int j = finest - v;
        if (j > level_ && !(d < 4.0 * std::ldexp(scale_, -j))) return;
        nodes_.push_back(p);
        dist_.push_back(d);
        exponent_.push_back(j);
    };

    std::int64_t b[3] = {0, 0, 0};
    for (b[0] = blo[0]; b[0] <= bhi[0]; ++b[0])
        for (b[1] = blo[1]; b[1] <= bhi[1]; ++b[1])
            for (b[2] = blo[2]; b[2] <= (dim_ == 3 ? bhi[2] : blo[2]); ++b[2]) {
                Point c = anchor_;
                for (int i = 0; i < dim_; ++i) c[i] = anchor_[i] + (static_cast<double>(b[i]) + 0.5) * base;
                const double dc = domain.shape_distance(c);
                if (dc + half_diag <= 0.0) continue;
                std::int64_t k[3] = {0, 0, 0};
                if (dc - half_diag >= 2.0 * base) {
                    for (int i = 0; i < dim_; ++i) k[i] = b[i] * block;
                    consider(k);
                    continue;
                }
                std::int64_t o[3] = {0, 0, 0};
                for (o[0] = 0; o[0] < block; ++o[0])
                    for (o[1] = 0; o[1] < block; ++o[1])
                        for (o[2] = 0; o[2] < (dim_ == 3 ? block : 1); ++o[2]) {
                            for (int i = 0; i < dim_; ++i) k[i] = b[i] * block + o[i];
                            consider(k);
                        }
            }

    const int n = static_cast<int>(nodes_.size());
    index_.resize(static_cast<std::size_t>(level_) + 1);
    for (int l = 0; l <= level_; ++l) {
        LevelIndex& idx = index_[static_cast<std::size_t>(l)];
        idx.cell = 0.5 * std::ldexp(scale_, -l);
        for (int i = 0; i < n; ++i)
            if (in_level(i, l)) idx.buckets[cell_key(nodes_[static_cast<std::size_t>(i)], idx.cell)].push_back(i);
    }

    std::unordered_set<std::uint64_t> seen;
    std::vector<std::pair<int, int>> pairs;
    for (int l = 0; l <= level_; ++l) {
        for (int i = 0; i < n; ++i) {
            if (!in_level(i, l)) continue;
            const Point& p = nodes_[static_cast<std::size_t>(i)];
            const double li = local_pitch(l, dist_[static_cast<std::size_t>(i)]);
            const double radius = kConnectionFactor * li;
            for_each_near(l, p, radius, [&](int q) {
                if (q == i) return;
                const double lq = local_pitch(l, dist_[static_cast<std::size_t>(q)]);
                if (!(li > lq || (li == lq && i < q))) return;
                if (distance(p, nodes_[static_cast<std::size_t>(q)]) > radius) return;
                const int a = std::min(i, q), c = std::max(i, q);
                const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(c);
                if (seen.insert(key).second) pairs.emplace_back(a, c);
            });
        }
    }
    std::sort(pairs.begin(), pairs.end());

    std::vector<std::vector<Edge>> adj(static_cast<std::size_t>(n));
    for (const auto& [a, c] : pairs) {
        const Point& pa = nodes_[static_cast<std::size_t>(a)];
        const Point& pc = nodes_[static_cast<std::size_t>(c)];
        if (!domain.shape_segment_inside(pa, pc)) continue;
        const double w = qh_segment_shape(domain, pa, pc, edge_tol_);
        adj[static_cast<std::size_t>(a)].push_back({c, w});
        adj[static_cast<std::size_t>(c)].push_back({a, w});
    }
    offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) offsets_[static_cast<std::size_t>(i) + 1] = offsets_[static_cast<std::size_t>(i)] + adj[static_cast<std::size_t>(i)].size();
    targets_.reserve(offsets_.back());
    for (auto& a : adj) targets_.insert(targets_.end(), a.begin(), a.end());
}

std::pair<const GridGraph::Edge*, const GridGraph::Edge*> GridGraph::neighbours(int i) const {
    const auto u = static_cast<std::size_t>(i);
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
}

std::vector<GridGraph::Edge> GridGraph::attach(const Domain& domain, const Point& p) const {
    const double d = domain.shape_distance(p);
    if (!(d > 0.0)) throw DomainMembershipError("query point is not interior: " + domain.to_world(p).str());
    std::vector<int> cand;
    for (int l = 0; l <= level_; ++l) {
        const double lp = local_pitch(l, d);
        const double search = kConnectionFactor * std::max(lp, std::ldexp(scale_, -l));
        for_each_near(l, p, search, [&](int q) {
            const double lq = local_pitch(l, dist_[static_cast<std::size_t>(q)]);
            if (distance(p, nodes_[static_cast<std::size_t>(q)]) <= kConnectionFactor * std::max(lp, lq))
                cand.push_back(q);
        });
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::vector<Edge> out;
    for (int q : cand) {
        const Point& pq = nodes_[static_cast<std::size_t>(q)];
        if (pq == p) {
            out.push_back({q, 0.0});
            continue;
        }
        if (!domain.shape_segment_inside(p, pq)) continue;
        out.push_back({q, qh_segment_shape(domain, p, pq, edge_tol_)});
    }
    return out;
}

std::optional<double> GridGraph::direct_edge(const Domain& domain, const Point& p, const Point& q) const {
    const double dp = domain.shape_distance(p), dq = domain.shape_distance(q);
    const double len = distance(p, q);
    bool admitted = false;
    for (int l = 0; l <= level_ && !admitted; ++l)
        admitted = len <= kConnectionFactor * std::max(local_pitch(l, dp), local_pitch(l, dq));
    if (!admitted || !domain.shape_segment_inside(p, q)) return std::nullopt;
    return qh_segment_shape(domain, p, q, edge_tol_);
}

namespace {

SourceTree shortest_paths(const GridGraph& g, const std::vector<GridGraph::Edge>& source_edges) {
    const std::size_t n = g.node_count();
    SourceTree t;
    t.dist.assign(n, std::numeric_limits<double>::infinity());
    t.pred.assign(n, -2);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (const auto& e : source_edges) {
        const auto u = static_cast<std::size_t>(e.to);
        if (e.weight < t.dist[u]) {
            t.dist[u] = e.weight;
            t.pred[u] = -1;
            heap.emplace(e.weight, e.to);
        }
    }
    while (!heap.empty()) {
        const auto [du, u] = heap.top();
        heap.pop();
        if (du > t.dist[static_cast<std::size_t>(u)]) continue;
        const auto [b, e] = g.neighbours(u);
        for (const auto* it = b; it != e; ++it) {
            const double nd = du + it->weight;
            const auto v = static_cast<std::size_t>(it->to);
            if (nd < t.dist[v]) {
                t.dist[v] = nd;
                t.pred[v] = u;
                heap.emplace(nd, it->to);
            }
        }
    }
    return t;
}

std::string graph_key(const Domain& domain, int level, double tol) {
    std::ostringstream os;
    os.precision(17);
    os << domain.shape_key() << '|' << level << '|' << tol;
    return os.str();
}

}  // namespace

GraphCache& GraphCache::instance() {
    static GraphCache cache;
    return cache;
}

std::shared_ptr<const GridGraph> GraphCache::graph(const Domain& domain, int level, double edge_tol) {
    const std::string key = graph_key(domain, level, edge_tol);
    std::lock_guard lock(mu_);
    if (auto it = graphs_.find(key); it != graphs_.end()) return it->second;
    auto g = std::make_shared<const GridGraph>(domain, level, edge_tol);
    graphs_.emplace(key, g);
    return g;
}

std::shared_ptr<const SourceTree> GraphCache::tree(const Domain& domain, const GridGraph& g, const Point& source) {
    const std::string key = graph_key(domain, g.level(), g.edge_tol()) + '|' + bits_of(source);
    {
        std::lock_guard lock(mu_);
        for (auto it = trees_.begin(); it != trees_.end(); ++it)
            if (it->first == key) {
                trees_.splice(trees_.begin(), trees_, it);
                return it->second;
            }
    }
    auto t = std::make_shared<const SourceTree>(shortest_paths(g, g.attach(domain, source)));
    std::lock_guard lock(mu_);
    trees_.emplace_front(key, t);
    if (trees_.size() > kMaxTrees) trees_.pop_back();
    return t;
}

void GraphCache::clear() {
    std::lock_guard lock(mu_);
    graphs_.clear();
    trees_.clear();
}

std::size_t GraphCache::graph_count() const {
    std::lock_guard lock(mu_);
    return graphs_.size();
}

}  // namespace qhkit
