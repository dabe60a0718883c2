#include "pcp/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "pcp/error.hpp"

namespace pcp {

Dag::Dag(int vertex_count) : vertex_count_(vertex_count) {
    if (vertex_count < 1) throw std::invalid_argument("Dag: vertex_count must be positive");
    parents_.resize(vertex_count);
    children_.resize(vertex_count);
}

Dag::Dag(int vertex_count, const std::vector<std::pair<int, int>>& edges) : Dag(vertex_count) {
    for (const auto& [a, b] : edges) add_edge(a, b);
}

void Dag::check_vertex(int v) const {
    if (v < 0 || v >= vertex_count_) throw std::out_of_range("Dag: vertex index out of range");
}

bool Dag::reachable(int from, int to) const {
    if (from == to) return true;
    std::vector<uint8_t> seen(vertex_count_, 0);
    std::vector<int> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int c : children_[u]) {
            if (c == to) return true;
            if (!seen[c]) {
                seen[c] = 1;
                stack.push_back(c);
            }
        }
    }
    return false;
}

void Dag::add_edge(int parent, int child) {
    check_vertex(parent);
    check_vertex(child);
    if (parent == child) throw std::invalid_argument("Dag: self-loop");
    if (adjacent(parent, child)) throw std::invalid_argument("Dag: duplicate edge on pair");
    if (reachable(child, parent)) throw std::invalid_argument("Dag: edge would create a cycle");
    children_[parent].push_back(child);
    parents_[child].push_back(parent);
    ++edge_count_;
}

bool Dag::has_edge(int parent, int child) const {
    check_vertex(parent);
    check_vertex(child);
    const auto& ch = children_[parent];
    return std::find(ch.begin(), ch.end(), child) != ch.end();
}

std::vector<std::pair<int, int>> Dag::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int v = 0; v < vertex_count_; ++v)
        for (int c : children_[v]) out.emplace_back(v, c);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> Dag::topological_order() const {
    std::vector<int> indeg(vertex_count_, 0);
    for (int v = 0; v < vertex_count_; ++v) indeg[v] = static_cast<int>(parents_[v].size());
    std::vector<int> order;
    order.reserve(vertex_count_);
    std::vector<int> ready;
    for (int v = vertex_count_ - 1; v >= 0; --v)
        if (indeg[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
        const int v = ready.back();
        ready.pop_back();
        order.push_back(v);
        for (int c : children_[v])
            if (--indeg[c] == 0) ready.push_back(c);
    }
    PCP_CHECK(static_cast<int>(order.size()) == vertex_count_, "Dag: topological sort failed");
    return order;
}

EdgeMark flip(EdgeMark m) {
    switch (m) {
        case EdgeMark::DirectedForward: return EdgeMark::DirectedBackward;
        case EdgeMark::DirectedBackward: return EdgeMark::DirectedForward;
        default: return m;
    }
}

MixedGraph::MixedGraph(int vertex_count) : vertex_count_(vertex_count) {
    if (vertex_count < 1) throw std::invalid_argument("MixedGraph: vertex_count must be positive");
    marks_.assign(static_cast<size_t>(vertex_count) * vertex_count, EdgeMark::Absent);
    ambiguous_.assign(marks_.size(), 0);
}

MixedGraph MixedGraph::complete(int vertex_count) {
    MixedGraph g(vertex_count);
    for (int i = 0; i < vertex_count; ++i)
        for (int j = i + 1; j < vertex_count; ++j) g.set_mark(i, j, EdgeMark::Undirected);
    return g;
}

MixedGraph MixedGraph::skeleton_of(const Dag& dag) {
    MixedGraph g(dag.vertex_count());
    for (const auto& [a, b] : dag.edges()) g.set_mark(a, b, EdgeMark::Undirected);
    return g;
}

void MixedGraph::set_mark(int i, int j, EdgeMark m) {
    if (i < 0 || j < 0 || i >= vertex_count_ || j >= vertex_count_)
        throw std::out_of_range("MixedGraph: vertex index out of range");
    if (i == j) throw std::invalid_argument("MixedGraph: self pair");
    marks_[cell(i, j)] = m;
    marks_[cell(j, i)] = flip(m);
    if (m == EdgeMark::Absent) {
        ambiguous_[cell(i, j)] = 0;
        ambiguous_[cell(j, i)] = 0;
    }
}

void MixedGraph::set_ambiguous(int i, int j, bool flag) {
    PCP_CHECK(!flag || mark(i, j) == EdgeMark::Undirected,
              "MixedGraph: only undirected edges can be ambiguous");
    ambiguous_[cell(i, j)] = flag ? 1 : 0;
    ambiguous_[cell(j, i)] = flag ? 1 : 0;
}

void MixedGraph::add_arrowhead(int tail, int head) {
    const EdgeMark m = mark(tail, head);
    switch (m) {
        case EdgeMark::Undirected:
            set_mark(tail, head, EdgeMark::DirectedForward);
            break;
        case EdgeMark::DirectedBackward:
            set_mark(tail, head, EdgeMark::Bidirected);
            break;
        case EdgeMark::DirectedForward:
        case EdgeMark::Bidirected:
            break;  // arrowhead already present
        case EdgeMark::Absent:
            throw InternalError("MixedGraph: arrowhead on absent edge");
    }
}

void MixedGraph::remove_edge(int i, int j) { set_mark(i, j, EdgeMark::Absent); }

std::vector<int> MixedGraph::neighbors(int v) const {
    std::vector<int> out;
    for (int u = 0; u < vertex_count_; ++u)
        if (u != v && adjacent(v, u)) out.push_back(u);
    return out;
}

std::vector<int> MixedGraph::vertices_into(int v) const {
    std::vector<int> out;
    for (int u = 0; u < vertex_count_; ++u) {
        const EdgeMark m = mark(u, v);
        if (m == EdgeMark::DirectedForward || m == EdgeMark::Bidirected) out.push_back(u);
    }
    return out;
}

int MixedGraph::edge_count() const {
    int n = 0;
    for (int i = 0; i < vertex_count_; ++i)
        for (int j = i + 1; j < vertex_count_; ++j)
            if (adjacent(i, j)) ++n;
    return n;
}

int MixedGraph::directed_count() const {
    int n = 0;
    for (int i = 0; i < vertex_count_; ++i)
        for (int j = i + 1; j < vertex_count_; ++j) {
            const EdgeMark m = mark(i, j);
            if (m == EdgeMark::DirectedForward || m == EdgeMark::DirectedBackward) ++n;
        }
    return n;
}

int MixedGraph::bidirected_count() const {
    int n = 0;
    for (int i = 0; i < vertex_count_; ++i)
        for (int j = i + 1; j < vertex_count_; ++j)
            if (is_bidirected(i, j)) ++n;
    return n;
}

int MixedGraph::ambiguous_count() const {
    int n = 0;
    for (int i = 0; i < vertex_count_; ++i)
        for (int j = i + 1; j < vertex_count_; ++j)
            if (is_ambiguous(i, j)) ++n;
    return n;
}

std::vector<std::pair<int, int>> MixedGraph::edge_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < vertex_count_; ++i)
        for (int j = i + 1; j < vertex_count_; ++j)
            if (adjacent(i, j)) out.emplace_back(i, j);
    return out;
}

bool MixedGraph::operator==(const MixedGraph& other) const {
    return vertex_count_ == other.vertex_count_ && marks_ == other.marks_ &&
           ambiguous_ == other.ambiguous_;
}

bool d_separated(const Dag& dag, int x, int y, std::span<const int> z) {
    const int n = dag.vertex_count();
    if (x < 0 || x >= n || y < 0 || y >= n) throw std::out_of_range("d_separated: vertex out of range");
    if (x == y) throw std::invalid_argument("d_separated: x == y");

    std::vector<uint8_t> in_z(n, 0);
    for (int v : z) {
        if (v < 0 || v >= n) throw std::out_of_range("d_separated: conditioning vertex out of range");
        if (v == x || v == y) throw std::invalid_argument("d_separated: endpoint in conditioning set");
        in_z[v] = 1;
    }

    // Vertices that are in z or have a descendant in z; a collider on a
    // path is open exactly when it belongs to this set.
    std::vector<uint8_t> anc_z(n, 0);
    {
        std::vector<int> stack;
        for (int v = 0; v < n; ++v)
            if (in_z[v]) {
                anc_z[v] = 1;
                stack.push_back(v);
            }
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int p : dag.parents(v))
                if (!anc_z[p]) {
                    anc_z[p] = 1;
                    stack.push_back(p);
                }
        }
    }

    // Reachability over (vertex, arrival direction) states.
    // Arrival "down" means we entered v along an edge parent -> v.
    enum { kUp = 0, kDown = 1 };
    std::vector<uint8_t> seen(static_cast<size_t>(n) * 2, 0);
    std::vector<std::pair<int, int>> stack{{x, kUp}};
    seen[x * 2 + kUp] = 1;

    auto push = [&](int v, int dir) {
        if (v == y) return true;
        if (!seen[v * 2 + dir]) {
            seen[v * 2 + dir] = 1;
            stack.emplace_back(v, dir);
        }
        return false;
    };

    while (!stack.empty()) {
        const auto [v, dir] = stack.back();
        stack.pop_back();
        if (dir == kUp) {
            if (in_z[v]) continue;
            for (int p : dag.parents(v))
                if (push(p, kUp)) return false;
            for (int c : dag.children(v))
                if (push(c, kDown)) return false;
        } else {
            if (!in_z[v]) {
                for (int c : dag.children(v))
                    if (push(c, kDown)) return false;
            }
            if (anc_z[v]) {
                for (int p : dag.parents(v))
                    if (push(p, kUp)) return false;
            }
        }
    }
    return true;
}

int shd(const MixedGraph& g1, const MixedGraph& g2) {
    if (g1.vertex_count() != g2.vertex_count())
        throw std::invalid_argument("shd: vertex count mismatch");
    int dist = 0;
    for (int i = 0; i < g1.vertex_count(); ++i)
        for (int j = i + 1; j < g1.vertex_count(); ++j)
            if (g1.mark(i, j) != g2.mark(i, j)) ++dist;
    return dist;
}

}  // namespace pcp
