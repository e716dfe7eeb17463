#pragma once

/// Graph-directed analysis of the tile boundary.
///
/// Each edge neighbor h contributes a boundary piece B_h = A n h(A); the
/// edge subgraph turns into set equations B_h = u f_i(B_h') whose adjacency
/// matrix determines the Hausdorff dimension of the boundary through its
/// Perron root. Convex polygons around the pieces certify the open set
/// condition of the construction, and iterating the construction on these
/// polygons yields polyline approximations of the boundary arcs.

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reptile/errors.hpp"
#include "reptile/ifs.hpp"
#include "reptile/neighbor_graph.hpp"
#include "reptile/polygon.hpp"

namespace reptile {

struct BoundaryTerm {
    int label = 0;  // map index i, 1-based: the term is f_i(B_target)
    int target = 0; // piece index within the system
    int second_label = 0;

    bool operator==(const BoundaryTerm&) const = default;
};

struct BoundarySystem {
    std::vector<int> piece_vertices;               // vertex ids in the source graph
    std::vector<std::string> piece_names;
    std::vector<std::vector<BoundaryTerm>> equations; // per piece, ordered by label
    std::vector<std::vector<int>> adjacency;          // arrow counts piece -> piece
    std::vector<std::vector<int>> components;         // piece indices, weakly connected

    std::size_t size() const { return piece_vertices.size(); }

    /// Restriction to one component; piece order preserved.
    BoundarySystem component_system(std::size_t c) const {
        BoundarySystem out;
        std::vector<int> remap(piece_vertices.size(), -1);
        for (int p : components.at(c)) {
            remap[static_cast<std::size_t>(p)] = static_cast<int>(out.piece_vertices.size());
            out.piece_vertices.push_back(piece_vertices[static_cast<std::size_t>(p)]);
            out.piece_names.push_back(piece_names[static_cast<std::size_t>(p)]);
        }
        for (int p : components.at(c)) {
            std::vector<BoundaryTerm> eq;
            for (const BoundaryTerm& t : equations[static_cast<std::size_t>(p)]) {
                int tgt = remap[static_cast<std::size_t>(t.target)];
                if (tgt >= 0) eq.push_back({t.label, tgt, t.second_label});
            }
            out.equations.push_back(std::move(eq));
        }
        std::size_t n = out.piece_vertices.size();
        out.adjacency.assign(n, std::vector<int>(n, 0));
        for (std::size_t p = 0; p < n; ++p)
            for (const BoundaryTerm& t : out.equations[p])
                ++out.adjacency[p][static_cast<std::size_t>(t.target)];
        std::vector<int> all(n);
        for (std::size_t p = 0; p < n; ++p) all[p] = static_cast<int>(p);
        out.components = {all};
        return out;
    }
};

/// Extracts the boundary equations from a trimmed, classified neighbor
/// graph. Throws NoEdgeNeighbors when there are no edge neighbors.
inline BoundarySystem boundary_equations(
    const NeighborGraph& g, const NeighborClassification& cls,
    const std::vector<std::pair<AffineMap, std::string>>& known = {}) {
    NeighborGraph edges = edge_subgraph(g, cls);
    if (edges.vertices.size() <= 1) throw NoEdgeNeighbors();
    std::vector<std::string> names = vertex_names(edges, known);

    BoundarySystem sys;
    for (std::size_t v = 1; v < edges.vertices.size(); ++v) {
        sys.piece_vertices.push_back(static_cast<int>(v));
        sys.piece_names.push_back(names[v]);
    }
    std::size_t n = sys.piece_vertices.size();
    sys.equations.assign(n, {});
    sys.adjacency.assign(n, std::vector<int>(n, 0));
    for (const Arrow& a : edges.arrows) {
        if (a.from == NeighborGraph::kRoot || a.to == NeighborGraph::kRoot) continue;
        std::size_t p = static_cast<std::size_t>(a.from - 1);
        std::size_t q = static_cast<std::size_t>(a.to - 1);
        sys.equations[p].push_back({a.i, static_cast<int>(q), a.j});
        ++sys.adjacency[p][q];
    }
    for (auto& eq : sys.equations)
        std::sort(eq.begin(), eq.end(), [](const BoundaryTerm& x, const BoundaryTerm& y) {
            return std::tuple(x.label, x.target, x.second_label) <
                   std::tuple(y.label, y.target, y.second_label);
        });

    // Weakly connected components over the piece indices.
    std::vector<int> comp(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
        if (comp[v] >= 0) continue;
        std::vector<int> members;
        std::deque<std::size_t> queue{v};
        comp[v] = static_cast<int>(sys.components.size());
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            members.push_back(static_cast<int>(u));
            for (std::size_t w = 0; w < n; ++w) {
                if (comp[w] < 0 && (sys.adjacency[u][w] > 0 || sys.adjacency[w][u] > 0)) {
                    comp[w] = comp[v];
                    queue.push_back(w);
                }
            }
        }
        std::sort(members.begin(), members.end());
        sys.components.push_back(std::move(members));
    }
    return sys;
}

struct DimensionResult {
    double spectral_radius = 0;
    double dimension = 0;
    int iterations = 0;
    double residual = 0;
};

namespace detail {

inline bool is_nilpotent(const std::vector<std::vector<int>>& adj) {
    // Nilpotent iff the digraph of positive entries is acyclic.
    std::size_t n = adj.size();
    std::vector<int> indeg(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (adj[i][j] > 0) ++indeg[j];
    std::deque<std::size_t> queue;
    for (std::size_t j = 0; j < n; ++j)
        if (indeg[j] == 0) queue.push_back(j);
    std::size_t removed = 0;
    std::vector<bool> gone(n, false);
    while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        gone[i] = true;
        ++removed;
        for (std::size_t j = 0; j < n; ++j)
            if (adj[i][j] > 0 && !gone[j] && --indeg[j] == 0) queue.push_back(j);
    }
    return removed == n;
}

} // namespace detail

struct PerronResult {
    double radius = 0;
    std::vector<double> eigenvector; // nonnegative, max entry 1
    int iterations = 0;
    double residual = 0; // max |A v - radius v|
};

/// Perron root and eigenvector of a nonnegative integer matrix by power
/// iteration; the +I shift makes the iteration aperiodic. Throws
/// NilpotentMatrix when the radius is zero (boundary is a finite set).
inline PerronResult perron_root(const std::vector<std::vector<int>>& adj, double tolerance = 1e-12,
                                int max_iterations = 100000) {
    std::size_t n = adj.size();
    if (n == 0 || detail::is_nilpotent(adj)) throw NilpotentMatrix();

    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    double lambda = 0, residual = 0;
    int it = 0;
    while (it < max_iterations) {
        ++it;
        std::vector<double> y(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) y[i] += adj[i][j] * x[j];
            y[i] += x[i]; // aperiodicity shift
        }
        double num = 0, den = 0;
        for (std::size_t i = 0; i < n; ++i) {
            num += y[i] * x[i];
            den += x[i] * x[i];
        }
        lambda = num / den - 1.0;
        double mx = 0;
        for (double v : y) mx = std::max(mx, v);
        for (double& v : y) v /= mx;
        x = std::move(y);
        // Iterate until the eigenpair itself is converged.
        residual = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double av = 0;
            for (std::size_t j = 0; j < n; ++j) av += adj[i][j] * x[j];
            residual = std::max(residual, std::abs(av - lambda * x[i]));
        }
        if (residual < tolerance) break;
    }

    PerronResult res;
    res.radius = lambda;
    res.iterations = it;
    res.eigenvector = x;
    res.residual = residual;
    return res;
}

/// Radius part of a DimensionResult, per spec operation.
inline DimensionResult spectral_radius(const std::vector<std::vector<int>>& adjacency,
                                       double tolerance = 1e-12) {
    PerronResult p = perron_root(adjacency, tolerance);
    return {p.radius, 0.0, p.iterations, p.residual};
}

/// dim_H = log(radius) / log(1/r) with r the contraction ratio.
inline DimensionResult boundary_dimension(const BoundarySystem& system,
                                          const Rational& contraction_ratio_squared,
                                          double tolerance = 1e-12) {
    if (system.size() == 0) throw NoEdgeNeighbors();
    DimensionResult res = spectral_radius(system.adjacency, tolerance);
    double r = std::sqrt(contraction_ratio_squared.to_double());
    res.dimension = std::log(res.spectral_radius) / std::log(1.0 / r);
    return res;
}

namespace detail {

inline bool strongly_connected(const std::vector<std::vector<int>>& adj) {
    std::size_t n = adj.size();
    auto reach_all = [&](bool transpose) {
        std::vector<bool> seen(n, false);
        std::deque<std::size_t> queue{0};
        seen[0] = true;
        std::size_t count = 0;
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            ++count;
            for (std::size_t w = 0; w < n; ++w) {
                int entry = transpose ? adj[w][u] : adj[u][w];
                if (entry > 0 && !seen[w]) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        return count == n;
    };
    return n > 0 && reach_all(false) && reach_all(true);
}

} // namespace detail

inline bool system_strongly_connected(const BoundarySystem& system) {
    return detail::strongly_connected(system.adjacency);
}

/// Normalized Perron right eigenvector of one strongly connected system;
/// entry ratios approximate Hausdorff-measure ratios of the boundary
/// pieces. Throws NotStronglyConnected when the system mixes components.
inline std::vector<double> measure_ratios(const BoundarySystem& system, double tolerance = 1e-12) {
    if (system.size() == 0) throw NoEdgeNeighbors();
    if (!detail::strongly_connected(system.adjacency)) throw NotStronglyConnected();
    return perron_root(system.adjacency, tolerance).eigenvector;
}

/// Certifies the open set condition of the graph-directed construction:
/// for every equation term f_i(B_h') the exact inclusion
/// f_i(C_h') within C_h holds, and distinct terms of one equation have
/// disjoint (relative) interiors.
inline bool verify_boundary_osc(const BoundarySystem& system, const SubdivisionIFS& ifs,
                                const std::vector<ConvexBody>& polygons) {
    if (polygons.size() != system.size())
        throw Error("verify_boundary_osc: need one polygon per piece");
    for (const ConvexBody& poly : polygons) geo::validate_convex(poly, /*allow_segment=*/true);

    for (std::size_t p = 0; p < system.size(); ++p) {
        std::vector<std::vector<Vec2Q>> images;
        for (const BoundaryTerm& t : system.equations[p]) {
            const AffineMap& f = ifs.maps.at(static_cast<std::size_t>(t.label - 1));
            std::vector<Vec2Q> image =
                geo::map_body(f, polygons[static_cast<std::size_t>(t.target)]);
            if (!geo::body_in_body(image, polygons[p])) return false;
            images.push_back(std::move(image));
        }
        for (std::size_t a = 0; a < images.size(); ++a)
            for (std::size_t b = a + 1; b < images.size(); ++b)
                if (!geo::interiors_disjoint(images[a], images[b])) return false;
    }
    return true;
}

namespace detail {

struct PieceChain {
    std::vector<int> term_order;      // indices into the piece's equation, canonical direction
    std::vector<bool> term_forward;   // child traversed start-to-end within each segment
    std::vector<Vec2Q> chain_points;  // size = terms + 1, from start to end
    Vec2Q start, end;                 // canonical arc endpoints (start <= end lexicographically)
};

/// Shared vertex of two exact vertex lists, if unique.
inline std::optional<Vec2Q> unique_shared_vertex(const std::vector<Vec2Q>& a,
                                                 const std::vector<Vec2Q>& b) {
    std::optional<Vec2Q> found;
    for (const Vec2Q& v : a)
        for (const Vec2Q& w : b)
            if (v == w) {
                if (found && !(*found == v)) return std::nullopt;
                found = v;
            }
    return found;
}

} // namespace detail

/// Depth-n polyline along one boundary arc: the chain of connection points
/// of the iterated quadrilateral images, endpoints included, ordered along
/// the arc. Requires polygons that verify_boundary_osc accepts.
///
/// Junction points come straight out of the depth-1 chains (consecutive
/// term images share exactly one vertex). The two arc endpoints of each
/// piece are computed exactly by following their addresses: starting from a
/// chain end, the adjacent junction pulled back through the end term
/// identifies which side of the child arc continues outward; that walk over
/// (piece, side) states is eventually periodic and yields the endpoint as
/// f_prefix(fixed point of f_cycle).
class BoundaryPolyline {
    const BoundarySystem& sys_;
    const SubdivisionIFS& ifs_;
    const std::vector<ConvexBody>& polys_;

    struct RawChain {
        std::vector<std::size_t> order;    // term indices in chain order
        std::vector<Vec2Q> junctions;      // size order.size() - 1
        std::vector<std::vector<Vec2Q>> images;
    };
    std::vector<RawChain> raw_;
    std::vector<std::array<Vec2Q, 2>> slot_endpoints_; // per piece: chain-first, chain-last
    std::vector<detail::PieceChain> chains_;

    const AffineMap& term_map(std::size_t piece, std::size_t term_idx) const {
        return ifs_.maps.at(
            static_cast<std::size_t>(sys_.equations[piece][term_idx].label - 1));
    }
    int term_target(std::size_t piece, std::size_t term_idx) const {
        return sys_.equations[piece][term_idx].target;
    }

    RawChain stitch(std::size_t p) const {
        const auto& eq = sys_.equations[p];
        RawChain chain;
        for (const BoundaryTerm& t : eq)
            chain.images.push_back(
                geo::map_body(ifs_.maps.at(static_cast<std::size_t>(t.label - 1)),
                              polys_[static_cast<std::size_t>(t.target)]));
        std::size_t k = chain.images.size();
        if (k == 0) throw Error("boundary piece with empty equation");
        if (k == 1) {
            chain.order = {0};
            return chain;
        }
        std::vector<std::vector<std::size_t>> adj(k);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b)
                if (detail::unique_shared_vertex(chain.images[a], chain.images[b])) {
                    adj[a].push_back(b);
                    adj[b].push_back(a);
                }
        std::size_t start = k;
        for (std::size_t a = 0; a < k; ++a)
            if (adj[a].size() == 1) {
                start = a;
                break;
            }
        if (start == k) throw Error("term images do not form a chain");
        std::vector<bool> used(k, false);
        chain.order.push_back(start);
        used[start] = true;
        while (chain.order.size() < k) {
            std::size_t cur = chain.order.back();
            std::size_t next = k;
            for (std::size_t b : adj[cur])
                if (!used[b]) {
                    next = b;
                    break;
                }
            if (next == k) throw Error("term images do not form a chain");
            used[next] = true;
            chain.order.push_back(next);
        }
        for (std::size_t t = 0; t + 1 < k; ++t) {
            auto shared = detail::unique_shared_vertex(chain.images[chain.order[t]],
                                                       chain.images[chain.order[t + 1]]);
            if (!shared) throw Error("consecutive images share no unique vertex");
            chain.junctions.push_back(*shared);
        }
        return chain;
    }

    /// Which chain side of `piece` holds the exact point q: 0 when q lies in
    /// the first end image, 1 for the last. The end images touch only at
    /// junctions, and q (an arc endpoint) is never a junction, so membership
    /// is exclusive.
    int far_side(std::size_t piece, const Vec2Q& q, int guard = 0) const {
        if (guard > static_cast<int>(sys_.size()) + 1)
            throw Error("cannot orient a cycle of single-term chains");
        const RawChain& chain = raw_[piece];
        if (chain.order.size() == 1) {
            AffineMap inv = invert(term_map(piece, chain.order[0]));
            return far_side(static_cast<std::size_t>(term_target(piece, chain.order[0])),
                            inv(q), guard + 1);
        }
        bool in_first = geo::contains_point(chain.images[chain.order.front()], q);
        bool in_last = geo::contains_point(chain.images[chain.order.back()], q);
        if (in_first == in_last) throw Error("cannot attribute arc endpoint to a chain side");
        return in_first ? 0 : 1;
    }

    /// Exact arc endpoint at one chain side of a piece, by the eventually
    /// periodic (piece, side) walk described above.
    Vec2Q endpoint_at(std::size_t piece, int side) const {
        std::map<std::pair<std::size_t, int>, std::size_t> seen;
        std::vector<int> labels;
        std::size_t cur = piece;
        int cur_side = side;
        while (true) {
            auto key = std::make_pair(cur, cur_side);
            auto it = seen.find(key);
            if (it != seen.end()) {
                Address prefix(labels.begin(), labels.begin() + static_cast<long>(it->second));
                Address cycle(labels.begin() + static_cast<long>(it->second), labels.end());
                return piece_map(ifs_, prefix)(fixed_point(piece_map(ifs_, cycle)));
            }
            seen.emplace(key, labels.size());
            const RawChain& chain = raw_[cur];
            std::size_t term_idx =
                cur_side == 0 ? chain.order.front() : chain.order.back();
            const BoundaryTerm& term = sys_.equations[cur][term_idx];
            labels.push_back(term.label);
            std::size_t child = static_cast<std::size_t>(term.target);
            if (chain.order.size() == 1) {
                // Single-term piece: its arc is the image of the child's
                // whole arc, so sides are inherited from the child directly.
                cur = child;
                continue;
            }
            const Vec2Q& junction =
                cur_side == 0 ? chain.junctions.front() : chain.junctions.back();
            Vec2Q q = invert(term_map(cur, term_idx))(junction);
            int child_far = far_side(child, q);
            cur = child;
            cur_side = 1 - child_far;
        }
    }

public:
    BoundaryPolyline(const BoundarySystem& sys, const SubdivisionIFS& ifs,
                     const std::vector<ConvexBody>& polygons)
        : sys_(sys), ifs_(ifs), polys_(polygons) {
        if (polygons.size() != sys.size())
            throw Error("boundary_polyline: need one polygon per piece");
        for (std::size_t p = 0; p < sys.size(); ++p) raw_.push_back(stitch(p));
        for (std::size_t p = 0; p < sys.size(); ++p)
            slot_endpoints_.push_back({endpoint_at(p, 0), endpoint_at(p, 1)});

        for (std::size_t p = 0; p < sys.size(); ++p) {
            const RawChain& chain = raw_[p];
            detail::PieceChain c;
            // Canonical arc direction: lexicographically smaller endpoint first.
            bool flip = slot_endpoints_[p][1] < slot_endpoints_[p][0];
            std::vector<std::size_t> order = chain.order;
            std::vector<Vec2Q> junctions = chain.junctions;
            if (flip) {
                std::reverse(order.begin(), order.end());
                std::reverse(junctions.begin(), junctions.end());
            }
            c.chain_points.push_back(slot_endpoints_[p][flip ? 1 : 0]);
            for (const Vec2Q& j : junctions) c.chain_points.push_back(j);
            c.chain_points.push_back(slot_endpoints_[p][flip ? 0 : 1]);
            c.start = c.chain_points.front();
            c.end = c.chain_points.back();
            for (std::size_t t : order) c.term_order.push_back(static_cast<int>(t));
            chains_.push_back(std::move(c));
        }

        // Segment orientations: the image of the child's canonical endpoints
        // must land exactly on the segment endpoints.
        for (std::size_t p = 0; p < sys_.size(); ++p) {
            detail::PieceChain& c = chains_[p];
            for (std::size_t t = 0; t < c.term_order.size(); ++t) {
                std::size_t term_idx = static_cast<std::size_t>(c.term_order[t]);
                const AffineMap& f = term_map(p, term_idx);
                const detail::PieceChain& target =
                    chains_[static_cast<std::size_t>(term_target(p, term_idx))];
                Vec2Q seg_start = c.chain_points[t];
                Vec2Q seg_end = c.chain_points[t + 1];
                Vec2Q image_start = f(target.start);
                Vec2Q image_end = f(target.end);
                if (image_start == seg_start && image_end == seg_end)
                    c.term_forward.push_back(true);
                else if (image_start == seg_end && image_end == seg_start)
                    c.term_forward.push_back(false);
                else
                    throw Error("term image endpoints do not match the chain");
            }
        }
    }

    /// Points along the arc of `piece` after `depth` refinements; depth 0
    /// yields the two arc endpoints.
    std::vector<Vec2Q> points(std::size_t piece, int depth) const {
        std::vector<Vec2Q> out;
        emit(piece, depth, AffineMap::identity(), true, out, true);
        return out;
    }

    /// The depth-n quadrilateral images covering the arc, in arc order;
    /// consecutive bodies share exactly one vertex.
    std::vector<ConvexBody> chain_quads(std::size_t piece, int depth) const {
        std::vector<ConvexBody> out;
        collect_quads(piece, depth, AffineMap::identity(), true, out);
        return out;
    }

private:
    void collect_quads(std::size_t piece, int depth, const AffineMap& transform, bool forward,
                       std::vector<ConvexBody>& out) const {
        const detail::PieceChain& c = chains_[piece];
        std::size_t k = c.term_order.size();
        for (std::size_t step = 0; step < k; ++step) {
            std::size_t t = forward ? step : k - 1 - step;
            const BoundaryTerm& term =
                sys_.equations[piece][static_cast<std::size_t>(c.term_order[t])];
            bool child_forward = c.term_forward[t] == forward;
            AffineMap child =
                compose(transform, ifs_.maps.at(static_cast<std::size_t>(term.label - 1)));
            if (depth <= 1)
                out.push_back(
                    geo::map_body(child, polys_[static_cast<std::size_t>(term.target)]));
            else
                collect_quads(static_cast<std::size_t>(term.target), depth - 1, child,
                              child_forward, out);
        }
    }

    void emit(std::size_t piece, int depth, const AffineMap& transform, bool forward,
              std::vector<Vec2Q>& out, bool include_first) const {
        const detail::PieceChain& c = chains_[piece];
        if (depth == 0) {
            Vec2Q a = transform(forward ? c.start : c.end);
            Vec2Q b = transform(forward ? c.end : c.start);
            if (include_first) out.push_back(a);
            out.push_back(b);
            return;
        }
        std::size_t k = c.term_order.size();
        for (std::size_t step = 0; step < k; ++step) {
            std::size_t t = forward ? step : k - 1 - step;
            const BoundaryTerm& term = sys_.equations[piece][static_cast<std::size_t>(c.term_order[t])];
            bool child_forward = c.term_forward[t] == forward;
            AffineMap child =
                compose(transform, ifs_.maps.at(static_cast<std::size_t>(term.label - 1)));
            emit(static_cast<std::size_t>(term.target), depth - 1, child, child_forward, out,
                 include_first && step == 0);
        }
    }
};

inline std::vector<Vec2Q> boundary_polyline(const BoundarySystem& system,
                                            const SubdivisionIFS& ifs,
                                            const std::vector<ConvexBody>& polygons,
                                            std::size_t piece, int depth) {
    return BoundaryPolyline(system, ifs, polygons).points(piece, depth);
}

} // namespace reptile
