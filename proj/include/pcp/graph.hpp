#ifndef PCP_GRAPH_HPP
#define PCP_GRAPH_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pcp {

/// Ground-truth directed acyclic graph. Vertices are dense 0-based
/// indices; construction rejects cycles, self-loops and duplicate pairs.
class Dag {
public:
    explicit Dag(int vertex_count);
    Dag(int vertex_count, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return edge_count_; }

    void add_edge(int parent, int child);
    bool has_edge(int parent, int child) const;
    bool adjacent(int a, int b) const { return has_edge(a, b) || has_edge(b, a); }

    const std::vector<int>& parents(int v) const { return parents_[v]; }
    const std::vector<int>& children(int v) const { return children_[v]; }

    std::vector<std::pair<int, int>> edges() const;
    /// Vertices ordered so that every edge points forward.
    std::vector<int> topological_order() const;

private:
    void check_vertex(int v) const;
    bool reachable(int from, int to) const;

    int vertex_count_;
    int edge_count_ = 0;
    std::vector<std::vector<int>> parents_;
    std::vector<std::vector<int>> children_;
};

/// Mark stored for an ordered vertex pair (i, j). Forward means i -> j.
/// The reverse cell always holds the flipped mark.
enum class EdgeMark : uint8_t {
    Absent = 0,
    Undirected,
    DirectedForward,
    DirectedBackward,
    Bidirected,
};

EdgeMark flip(EdgeMark m);

/// Working graph of the discovery pipeline: per-pair edge marks plus
/// "ambiguous" labels on undirected edges that were implicated in
/// conflicting orientations.
class MixedGraph {
public:
    explicit MixedGraph(int vertex_count);

    /// Every pair connected by an undirected edge.
    static MixedGraph complete(int vertex_count);
    /// Undirected skeleton of a DAG's adjacency structure.
    static MixedGraph skeleton_of(const Dag& dag);

    int vertex_count() const { return vertex_count_; }

    EdgeMark mark(int i, int j) const { return marks_[cell(i, j)]; }
    void set_mark(int i, int j, EdgeMark m);

    bool adjacent(int i, int j) const { return mark(i, j) != EdgeMark::Absent; }
    bool has_directed(int from, int to) const { return mark(from, to) == EdgeMark::DirectedForward; }
    bool is_undirected(int i, int j) const { return mark(i, j) == EdgeMark::Undirected; }
    bool is_bidirected(int i, int j) const { return mark(i, j) == EdgeMark::Bidirected; }

    bool is_ambiguous(int i, int j) const { return ambiguous_[cell(i, j)]; }
    void set_ambiguous(int i, int j, bool flag);

    /// Adds an arrowhead at `head` without touching the far endpoint, so
    /// opposing orientations accumulate into a bidirected mark.
    void add_arrowhead(int tail, int head);

    void remove_edge(int i, int j);

    std::vector<int> neighbors(int v) const;
    /// Vertices with an arrowhead into v (directed or bidirected mark).
    std::vector<int> vertices_into(int v) const;

    int edge_count() const;
    int directed_count() const;
    int bidirected_count() const;
    int ambiguous_count() const;

    /// Canonical (i < j) pair list of all present edges.
    std::vector<std::pair<int, int>> edge_pairs() const;

    bool operator==(const MixedGraph& other) const;

private:
    size_t cell(int i, int j) const { return static_cast<size_t>(i) * vertex_count_ + j; }

    int vertex_count_;
    std::vector<EdgeMark> marks_;
    std::vector<uint8_t> ambiguous_;
};

/// True iff every path between x and y is blocked given z
/// (colliders block unless they or a descendant are conditioned on).
/// Linear-time reachability, not path enumeration.
bool d_separated(const Dag& dag, int x, int y, std::span<const int> z);

/// The canonical representative of dag's Markov equivalence class:
/// compelled edges directed, reversible edges undirected.
MixedGraph true_cpdag(const Dag& dag);

/// Structural Hamming distance: number of unordered pairs whose marks
/// differ. Any difference on a pair counts one.
int shd(const MixedGraph& g1, const MixedGraph& g2);

}  // namespace pcp

#endif
