#pragma once

/// The neighbor-map graph of a subdivision system.
///
/// Vertices are isometries h relating the tile to a potential neighbor
/// h(A); an arrow labeled (i, j) runs from h to h' when h' = f_i^-1 h f_j.
/// The graph is built by breadth-first search from the identity, pruned by
/// an exact squared-norm bound, then trimmed to the vertices that still
/// admit arbitrarily long outgoing paths: exactly the proper neighbors.
/// Point neighbors are the vertices whose reachable set has out-degree one
/// everywhere; all other proper neighbors share a boundary arc with the
/// tile.

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "reptile/affine.hpp"
#include "reptile/errors.hpp"
#include "reptile/ifs.hpp"
#include "reptile/isometry.hpp"

namespace reptile {

struct Arrow {
    int from = 0;
    int to = 0;
    int i = 0; // first label, 1-based
    int j = 0; // second label, 1-based

    bool operator==(const Arrow&) const = default;
    auto operator<=>(const Arrow&) const = default;
};

struct NeighborGraph {
    static constexpr int kRoot = 0;

    std::vector<AffineMap> vertices; // vertices[0] is the identity (root)
    std::vector<Arrow> arrows;       // sorted by (from, to, i, j)

    std::size_t size() const { return vertices.size(); }

    std::vector<std::vector<int>> out_adjacency() const {
        std::vector<std::vector<int>> adj(vertices.size());
        for (std::size_t a = 0; a < arrows.size(); ++a)
            adj[static_cast<std::size_t>(arrows[a].from)].push_back(static_cast<int>(a));
        return adj;
    }

    int find_vertex(const AffineMap& m) const {
        for (std::size_t v = 0; v < vertices.size(); ++v)
            if (vertices[v] == m) return static_cast<int>(v);
        return -1;
    }
};

struct CandidateGraph {
    NeighborGraph graph;
    Rational bound_sq;  // exact pruning bound on |h(p*) - p*|^2
    double bound_used = 0;
};

constexpr std::size_t kDefaultVertexBudget = 1'000'000;

/// Breadth-first closure of the neighbor-map recursion from the root.
/// Successors of h are f_i^-1 h f_j for all label pairs; a successor is kept
/// iff |h'(p*) - p*|^2 <= bound_sq, tested exactly, where p* is the fixed
/// point of f_1. Throws VertexBudgetExceeded when the vertex count passes
/// max_vertices, the sign of a loose bound or a system that is not finite
/// type.
inline CandidateGraph generate_candidates(const SubdivisionIFS& ifs, const Rational& bound_sq,
                                          std::size_t max_vertices = kDefaultVertexBudget) {
    const int m = static_cast<int>(ifs.maps.size());
    std::vector<AffineMap> inverse_maps;
    inverse_maps.reserve(ifs.maps.size());
    for (const AffineMap& f : ifs.maps) inverse_maps.push_back(invert(f));
    const Vec2Q base = fixed_point(ifs.maps.at(0));

    CandidateGraph out;
    out.bound_sq = bound_sq;
    out.bound_used = bound_sq.to_double();
    NeighborGraph& g = out.graph;

    std::unordered_map<std::string, int> intern;
    auto add_vertex = [&](const AffineMap& h) {
        auto [it, fresh] = intern.try_emplace(h.encode(), static_cast<int>(g.vertices.size()));
        if (fresh) {
            if (g.vertices.size() >= max_vertices) throw VertexBudgetExceeded(max_vertices);
            g.vertices.push_back(h);
        }
        return it->second;
    };

    add_vertex(AffineMap::identity());
    std::deque<int> frontier{NeighborGraph::kRoot};
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop_front();
        AffineMap h = g.vertices[static_cast<std::size_t>(v)];
        for (int i = 1; i <= m; ++i) {
            for (int j = 1; j <= m; ++j) {
                AffineMap succ = compose(inverse_maps[static_cast<std::size_t>(i - 1)],
                                         compose(h, ifs.maps[static_cast<std::size_t>(j - 1)]));
                if (distance_squared(succ(base), base) > bound_sq) continue;
                std::size_t before = g.vertices.size();
                int w = add_vertex(succ);
                if (g.vertices.size() > before) frontier.push_back(w);
                g.arrows.push_back({v, w, i, j});
            }
        }
    }
    std::sort(g.arrows.begin(), g.arrows.end());
    return out;
}

/// Deletes non-root vertices with out-degree zero (with their incoming
/// arrows) until stable. In a finite graph the survivors are exactly the
/// vertices with arbitrarily long outgoing paths, i.e. the proper
/// neighbors. Vertex order is preserved, so the result is deterministic.
inline NeighborGraph trim_to_proper(const NeighborGraph& input) {
    std::vector<bool> alive(input.vertices.size(), true);
    std::vector<int> out_degree(input.vertices.size(), 0);
    for (const Arrow& a : input.arrows) ++out_degree[static_cast<std::size_t>(a.from)];

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> degree(input.vertices.size(), 0);
        for (const Arrow& a : input.arrows)
            if (alive[static_cast<std::size_t>(a.from)] && alive[static_cast<std::size_t>(a.to)])
                ++degree[static_cast<std::size_t>(a.from)];
        for (std::size_t v = 1; v < input.vertices.size(); ++v) {
            if (alive[v] && degree[v] == 0) {
                alive[v] = false;
                changed = true;
            }
        }
    }

    NeighborGraph out;
    std::vector<int> remap(input.vertices.size(), -1);
    for (std::size_t v = 0; v < input.vertices.size(); ++v) {
        if (!alive[v]) continue;
        remap[v] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(input.vertices[v]);
    }
    for (const Arrow& a : input.arrows) {
        int f = remap[static_cast<std::size_t>(a.from)];
        int t = remap[static_cast<std::size_t>(a.to)];
        if (f >= 0 && t >= 0) out.arrows.push_back({f, t, a.i, a.j});
    }
    std::sort(out.arrows.begin(), out.arrows.end());
    return out;
}

inline NeighborGraph trim_to_proper(const CandidateGraph& candidates) {
    return trim_to_proper(candidates.graph);
}

/// Open set condition: no arrow may terminate at the root, apart from the
/// root's own definitional (i, i) loops.
inline bool check_osc(const NeighborGraph& g) {
    for (const Arrow& a : g.arrows) {
        if (a.to != NeighborGraph::kRoot) continue;
        if (a.from != NeighborGraph::kRoot || a.i != a.j) return false;
    }
    return true;
}

enum class NeighborKind { point, edge };

struct NeighborClassification {
    std::vector<NeighborKind> kind; // indexed by vertex; root entry unused
    std::size_t point_count = 0;
    std::size_t edge_count = 0;
};

/// A vertex is a point neighbor iff the number of length-n paths starting
/// at it stays bounded as n grows: the paths then enumerate the finitely
/// many addresses of a single intersection point. Edge neighbors have
/// exponentially many paths, one per boundary-arc address. On a trimmed
/// graph this is decidable from the strongly connected components: paths
/// from v are unbounded iff v reaches a component that is more than a
/// simple cycle, or some walk from v passes through two cycles.
inline NeighborClassification classify_vertices(const NeighborGraph& g) {
    const std::size_t n = g.vertices.size();
    std::vector<std::vector<int>> succ(n);
    for (const Arrow& a : g.arrows) succ[static_cast<std::size_t>(a.from)].push_back(a.to);

    // Iterative Tarjan.
    std::vector<int> scc(n, -1), low(n, 0), index(n, -1);
    std::vector<int> stack_vertices;
    std::vector<bool> on_stack(n, false);
    int next_index = 0, scc_count = 0;
    struct Frame {
        int v;
        std::size_t child = 0;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        std::vector<Frame> call_stack{{static_cast<int>(root)}};
        while (!call_stack.empty()) {
            Frame& frame = call_stack.back();
            std::size_t v = static_cast<std::size_t>(frame.v);
            if (frame.child == 0) {
                index[v] = low[v] = next_index++;
                stack_vertices.push_back(frame.v);
                on_stack[v] = true;
            }
            if (frame.child < succ[v].size()) {
                int w = succ[v][frame.child++];
                std::size_t wu = static_cast<std::size_t>(w);
                if (index[wu] < 0) {
                    call_stack.push_back({w});
                } else if (on_stack[wu]) {
                    low[v] = std::min(low[v], index[wu]);
                }
            } else {
                if (low[v] == index[v]) {
                    while (true) {
                        int w = stack_vertices.back();
                        stack_vertices.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = false;
                        scc[static_cast<std::size_t>(w)] = scc_count;
                        if (w == frame.v) break;
                    }
                    ++scc_count;
                }
                int finished = frame.v;
                call_stack.pop_back();
                if (!call_stack.empty()) {
                    std::size_t parent = static_cast<std::size_t>(call_stack.back().v);
                    low[parent] = std::min(low[parent], low[static_cast<std::size_t>(finished)]);
                }
            }
        }
    }

    std::size_t c = static_cast<std::size_t>(scc_count);
    std::vector<bool> nontrivial(c, false), heavy(c, false);
    std::vector<int> intra_out(n, 0);
    std::vector<std::set<int>> dag_successors(c);
    for (const Arrow& a : g.arrows) {
        std::size_t cf = static_cast<std::size_t>(scc[static_cast<std::size_t>(a.from)]);
        std::size_t ct = static_cast<std::size_t>(scc[static_cast<std::size_t>(a.to)]);
        if (cf == ct) {
            nontrivial[cf] = true;
            if (++intra_out[static_cast<std::size_t>(a.from)] >= 2) heavy[cf] = true;
        } else {
            dag_successors[cf].insert(static_cast<int>(ct));
        }
    }

    // Tarjan emits components in reverse topological order, so scc ids
    // increase from sinks toward sources; process in id order.
    std::vector<bool> reaches_cycle(c, false), unbounded(c, false);
    for (std::size_t comp = 0; comp < c; ++comp) {
        bool succ_reaches_cycle = false, succ_unbounded = false;
        for (int to : dag_successors[comp]) {
            succ_reaches_cycle |= reaches_cycle[static_cast<std::size_t>(to)];
            succ_unbounded |= unbounded[static_cast<std::size_t>(to)];
        }
        reaches_cycle[comp] = nontrivial[comp] || succ_reaches_cycle;
        unbounded[comp] =
            heavy[comp] || succ_unbounded || (nontrivial[comp] && succ_reaches_cycle);
    }

    NeighborClassification cls;
    cls.kind.assign(n, NeighborKind::edge);
    for (std::size_t v = 1; v < n; ++v) {
        bool point = !unbounded[static_cast<std::size_t>(scc[v])];
        cls.kind[v] = point ? NeighborKind::point : NeighborKind::edge;
        (point ? cls.point_count : cls.edge_count) += 1;
    }
    return cls;
}

/// Exact intersection point for a point neighbor. Outgoing paths spell the
/// addresses of the single intersection point; following any of them (here:
/// always the first arrow) is eventually periodic, and the point is
/// f_prefix(fixed point of f_cycle) over the first labels of the path.
inline Vec2Q point_neighbor_coordinate(const NeighborGraph& g, const SubdivisionIFS& ifs,
                                       int vertex, const NeighborClassification& cls,
                                       bool follow_last = false) {
    if (vertex <= 0 || static_cast<std::size_t>(vertex) >= g.vertices.size() ||
        cls.kind[static_cast<std::size_t>(vertex)] != NeighborKind::point)
        throw NotPointNeighbor();
    auto adj = g.out_adjacency();
    std::vector<int> position_of(g.vertices.size(), -1);
    std::vector<int> labels;
    int cur = vertex;
    while (position_of[static_cast<std::size_t>(cur)] < 0) {
        position_of[static_cast<std::size_t>(cur)] = static_cast<int>(labels.size());
        const auto& out = adj[static_cast<std::size_t>(cur)];
        const Arrow& a =
            g.arrows[static_cast<std::size_t>(follow_last ? out.back() : out.front())];
        labels.push_back(a.i);
        cur = a.to;
    }
    int cycle_start = position_of[static_cast<std::size_t>(cur)];
    Address prefix(labels.begin(), labels.begin() + cycle_start);
    Address cycle(labels.begin() + cycle_start, labels.end());
    return piece_map(ifs, prefix)(fixed_point(piece_map(ifs, cycle)));
}

/// Subgraph on the root and the edge neighbors: the graph-directed skeleton
/// of the tile boundary.
inline NeighborGraph edge_subgraph(const NeighborGraph& g, const NeighborClassification& cls) {
    NeighborGraph out;
    std::vector<int> remap(g.vertices.size(), -1);
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        if (v != NeighborGraph::kRoot && cls.kind[v] != NeighborKind::edge) continue;
        remap[v] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(g.vertices[v]);
    }
    for (const Arrow& a : g.arrows) {
        int f = remap[static_cast<std::size_t>(a.from)];
        int t = remap[static_cast<std::size_t>(a.to)];
        if (f >= 0 && t >= 0) out.arrows.push_back({f, t, a.i, a.j});
    }
    return out;
}

/// Weakly connected components of the non-root vertices, each sorted, the
/// list ordered by smallest member.
inline std::vector<std::vector<int>> weak_components(const NeighborGraph& g) {
    std::vector<int> comp(g.vertices.size(), -1);
    std::vector<std::vector<int>> neighbors(g.vertices.size());
    for (const Arrow& a : g.arrows) {
        if (a.from == NeighborGraph::kRoot || a.to == NeighborGraph::kRoot) continue;
        neighbors[static_cast<std::size_t>(a.from)].push_back(a.to);
        neighbors[static_cast<std::size_t>(a.to)].push_back(a.from);
    }
    std::vector<std::vector<int>> comps;
    for (std::size_t v = 1; v < g.vertices.size(); ++v) {
        if (comp[v] >= 0) continue;
        std::vector<int> members;
        std::deque<int> queue{static_cast<int>(v)};
        comp[v] = static_cast<int>(comps.size());
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            members.push_back(u);
            for (int w : neighbors[static_cast<std::size_t>(u)]) {
                if (comp[static_cast<std::size_t>(w)] < 0) {
                    comp[static_cast<std::size_t>(w)] = static_cast<int>(comps.size());
                    queue.push_back(w);
                }
            }
        }
        std::sort(members.begin(), members.end());
        comps.push_back(std::move(members));
    }
    return comps;
}

/// Names for vertices: entries of `known` matched by exact map equality,
/// anything else "n<id>" ("id" for the root).
inline std::vector<std::string> vertex_names(
    const NeighborGraph& g, const std::vector<std::pair<AffineMap, std::string>>& known) {
    std::vector<std::string> names(g.vertices.size());
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        if (v == NeighborGraph::kRoot) {
            names[v] = "id";
            continue;
        }
        names[v] = "n" + std::to_string(v);
        for (const auto& [map, name] : known) {
            if (map == g.vertices[v]) {
                names[v] = name;
                break;
            }
        }
    }
    return names;
}

struct NamedArrow {
    std::string from;
    std::string to;
    int i = 0;
    int j = 0;

    bool operator==(const NamedArrow&) const = default;
    auto operator<=>(const NamedArrow&) const = default;
};

/// Arrow list of the edge subgraph with human-readable vertex names,
/// sorted; the multiset of a gallery structure can be compared against a
/// reference arrow table directly.
inline std::vector<NamedArrow> edge_arrow_table(
    const NeighborGraph& g, const NeighborClassification& cls,
    const std::vector<std::pair<AffineMap, std::string>>& known) {
    NeighborGraph edges = edge_subgraph(g, cls);
    std::vector<std::string> names = vertex_names(edges, known);
    std::vector<NamedArrow> out;
    for (const Arrow& a : edges.arrows) {
        if (a.from == NeighborGraph::kRoot && a.to == NeighborGraph::kRoot) continue;
        out.push_back({names[static_cast<std::size_t>(a.from)],
                       names[static_cast<std::size_t>(a.to)], a.i, a.j});
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Deterministic DOT text: vertices sorted by canonical map encoding,
/// arrows by endpoint names and labels.
inline std::string export_dot(const NeighborGraph& g,
                              const std::vector<std::pair<AffineMap, std::string>>& known = {}) {
    std::vector<std::string> names = vertex_names(g, known);
    std::vector<int> order(g.vertices.size());
    for (std::size_t v = 0; v < g.vertices.size(); ++v) order[v] = static_cast<int>(v);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return g.vertices[static_cast<std::size_t>(a)].encode() <
               g.vertices[static_cast<std::size_t>(b)].encode();
    });

    std::ostringstream os;
    os << "digraph neighbors {\n";
    for (int v : order) {
        os << "  \"" << names[static_cast<std::size_t>(v)] << "\"";
        if (v == NeighborGraph::kRoot) os << " [shape=doublecircle]";
        os << ";\n";
    }
    std::vector<Arrow> arrows = g.arrows;
    std::sort(arrows.begin(), arrows.end(), [&](const Arrow& a, const Arrow& b) {
        auto ka = std::tuple(names[static_cast<std::size_t>(a.from)],
                             names[static_cast<std::size_t>(a.to)], a.i, a.j);
        auto kb = std::tuple(names[static_cast<std::size_t>(b.from)],
                             names[static_cast<std::size_t>(b.to)], b.i, b.j);
        return ka < kb;
    });
    for (const Arrow& a : arrows) {
        os << "  \"" << names[static_cast<std::size_t>(a.from)] << "\" -> \""
           << names[static_cast<std::size_t>(a.to)] << "\" [label=\"" << a.i << "," << a.j
           << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace reptile
