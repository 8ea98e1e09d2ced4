#pragma once
/**
 * @file grid_graph.hpp
 * @brief Boundary-graded lattice graphs carrying quasihyperbolic edge weights.
 *
 * Level l has base pitch h_l = scale * 2^-l. Finer lattices h_l/2, h_l/4, h_l/8
 * are switched on inside bands d < 2 h_l, h_l, h_l/2 respectively, so the
 * local pitch tracks d near the boundary. A node at level l connects to nodes
 * within 2.5 x the larger of the two local pitches. The graph at level L is the
 * union of the edge sets of levels 0..L, which makes graphs nested across
 * levels: shortest-path values can only decrease under refinement.
 *
 * All geometry is in shape coordinates; similar domains share one graph.
 */

#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qhkit/domain.hpp"
#include "qhkit/path.hpp"

namespace qhkit {

inline constexpr double kConnectionFactor = 2.5;
inline constexpr int kRefineDepth = 3;  ///< finest pitch = base pitch / 2^3

class GridGraph {
public:
    struct Edge {
        int to;
        double weight;
    };

    GridGraph(const Domain& domain, int level, double edge_tol = kDefaultEdgeTol);

    int level() const { return level_; }
    double edge_tol() const { return edge_tol_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return targets_.size() / 2; }
    const Point& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    double node_distance(int i) const { return dist_[static_cast<std::size_t>(i)]; }

    /// Neighbours of node i (each undirected edge is stored in both directions).
    std::pair<const Edge*, const Edge*> neighbours(int i) const;

    /// Local pitch at shape-space distance d for level l.
    double local_pitch(int l, double d) const;
    /// Whether node i belongs to the level-l node set (l <= level()).
    bool in_level(int i, int l) const;

    /// Certified, weighted edges joining an arbitrary shape-space point to the graph.
    std::vector<Edge> attach(const Domain& domain, const Point& p) const;
    /// Weight of the direct edge p-q if the connection rule admits it and it is certified.
    std::optional<double> direct_edge(const Domain& domain, const Point& p, const Point& q) const;

private:
    struct LevelIndex {
        double cell = 1.0;
        std::unordered_map<std::uint64_t, std::vector<int>> buckets;
    };

    std::uint64_t cell_key(const Point& p, double cell) const;
    template <class F>
    void for_each_near(int l, const Point& p, double radius, F&& f) const;
    void build(const Domain& domain);

    int level_;
    double edge_tol_;
    double scale_;
    Point anchor_;
    int dim_;
    std::vector<Point> nodes_;
    std::vector<double> dist_;
    std::vector<int> exponent_;  ///< absolute lattice exponent j: pitch = scale 2^-j
    std::vector<LevelIndex> index_;
    std::vector<std::size_t> offsets_;
    std::vector<Edge> targets_;
};

/// Shortest-path distances from one (possibly off-lattice) source.
struct SourceTree {
    std::vector<double> dist;
    std::vector<int> pred;  ///< -1: attached directly to the source; -2: unreached
};

/// Process-wide cache of graphs per (shape, level, tolerance) and of
/// single-source trees per (graph, source). Safe for concurrent use.
class GraphCache {
public:
    static GraphCache& instance();

    std::shared_ptr<const GridGraph> graph(const Domain& domain, int level, double edge_tol = kDefaultEdgeTol);
    std::shared_ptr<const SourceTree> tree(const Domain& domain, const GridGraph& g, const Point& source_shape);

    void clear();
    std::size_t graph_count() const;

private:
    GraphCache() = default;
    static constexpr std::size_t kMaxTrees = 32;

    mutable std::mutex mu_;
    std::unordered_map<std::string, std::shared_ptr<const GridGraph>> graphs_;
    std::list<std::pair<std::string, std::shared_ptr<const SourceTree>>> trees_;  ///< LRU, front = newest
};

}  // namespace qhkit
