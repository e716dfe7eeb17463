#pragma once

/// The full analysis pipeline: validate a spec, derive its contraction
/// system, certify a search bound, build and trim the neighbor graph,
/// classify neighbors, and compute boundary dimensions and measure ratios.
/// The result serializes to a deterministic JSON report.

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "reptile/boundary.hpp"
#include "reptile/gallery.hpp"
#include "reptile/ifs.hpp"
#include "reptile/isometry.hpp"
#include "reptile/neighbor_graph.hpp"
#include "reptile/serialize.hpp"

namespace reptile {

struct AnalysisOptions {
    std::size_t vertex_budget = kDefaultVertexBudget;
    std::size_t word_budget = kDefaultWordBudget;
    double tolerance = 1e-12;
};

struct ComponentAnalysis {
    std::vector<std::string> pieces;
    double spectral_radius = 0;
    double dimension = 0;
    int iterations = 0;
    double residual = 0;
    bool strongly_connected = false;
    std::vector<double> measure_ratios; // empty unless strongly connected
};

struct AnalysisReport {
    std::string spec_name;
    ValidationReport validation;
    Rational bound_sq;
    bool bound_from_hull = false;
    std::size_t candidate_count = 0;
    std::size_t proper_count_including_root = 0;
    std::size_t edge_count = 0;
    std::size_t point_count = 0;
    bool osc = false;
    std::size_t edge_components = 0;
    std::vector<ComponentAnalysis> components;
    double max_boundary_dimension = 0;
    std::vector<std::pair<std::string, IsometryClass>> edge_neighbor_isometries;
    double timing_ms = 0;

    // The analyzed structures, for callers that want more than the census.
    NeighborGraph graph;
    NeighborClassification classification;
};

namespace analysis_detail {

inline Json isometry_to_json(const IsometryClass& cls) {
    Json j;
    j["kind"] = isometry_kind_name(cls);
    if (const auto* tr = std::get_if<Translation>(&cls)) {
        j["offset"] = serialize_detail::vec_to_json(tr->offset);
    } else if (const auto* rot = std::get_if<RationalRotation>(&cls)) {
        j["order"] = rot->order;
        j["angle_degrees"] = rot->angle_degrees;
        j["center"] = serialize_detail::vec_to_json(rot->center);
    } else if (const auto* irr = std::get_if<IrrationalRotation>(&cls)) {
        j["angle_degrees"] = irr->angle_degrees;
        j["center"] = serialize_detail::vec_to_json(irr->center);
    } else if (const auto* refl = std::get_if<Reflection>(&cls)) {
        j["axis_point"] = serialize_detail::vec_to_json(refl->axis_point);
        j["axis_direction"] = serialize_detail::vec_to_json(refl->axis_direction);
    } else if (const auto* glide = std::get_if<GlideReflection>(&cls)) {
        j["axis_point"] = serialize_detail::vec_to_json(glide->axis_point);
        j["axis_direction"] = serialize_detail::vec_to_json(glide->axis_direction);
        j["shift_length_squared"] = glide->shift_length_squared.str();
    }
    return j;
}

/// Smallest usable and affordable sampling depth for the generic diameter
/// bound: deep enough that 2 r^n < 1, shallow enough to stay in budget.
inline int auto_bound_depth(std::size_t m, std::size_t budget) {
    double r = 1.0 / std::sqrt(static_cast<double>(m));
    int depth = 1;
    while (2.0 * std::pow(r, depth) >= 1.0) ++depth;
    double cap = static_cast<double>(std::min<std::size_t>(budget, 250000));
    while (std::pow(static_cast<double>(m), depth + 1) * static_cast<double>(m) <= cap) ++depth;
    return depth;
}

} // namespace analysis_detail

/// Runs the whole pipeline. When the spec carries a hull polygon that
/// passes the invariance certificate, the candidate bound is the exact
/// rational (2 diam)^2; otherwise a certified sampled bound is used (the
/// trimmed graph does not depend on which valid bound is chosen).
inline AnalysisReport analyze(const ReptileSpec& spec, const AnalysisOptions& options = {}) {
    auto t0 = std::chrono::steady_clock::now();
    AnalysisReport report;
    report.spec_name = spec.name;
    report.validation = validate(spec);
    if (!report.validation.valid) return report;

    SubdivisionIFS ifs = derive_subdivision(spec);

    if (spec.hull && check_hull_invariance(ifs, *spec.hull, HullMode::unit)) {
        report.bound_from_hull = true;
        report.bound_sq = Rational(4) * hull_diameter_squared(*spec.hull);
    } else {
        int depth = analysis_detail::auto_bound_depth(ifs.maps.size(), options.word_budget);
        DiameterBound bound = diameter_bound(ifs, depth, options.word_budget);
        // Exact rational just above the certified float bound.
        BigRational upper(std::nextafter(2.0 * bound.upper, 1e30));
        report.bound_sq = Rational(boost::multiprecision::numerator(upper),
                                   boost::multiprecision::denominator(upper));
        report.bound_sq *= report.bound_sq;
    }

    CandidateGraph candidates = generate_candidates(ifs, report.bound_sq, options.vertex_budget);
    report.candidate_count = candidates.graph.size();

    report.graph = trim_to_proper(candidates);
    report.proper_count_including_root = report.graph.size();
    report.osc = check_osc(report.graph);

    report.classification = classify_vertices(report.graph);
    report.edge_count = report.classification.edge_count;
    report.point_count = report.classification.point_count;

    auto known = gallery::pinwheel_edge_names();
    NeighborGraph edges = edge_subgraph(report.graph, report.classification);
    std::vector<std::string> edge_names = vertex_names(edges, known);
    for (std::size_t v = 1; v < edges.vertices.size(); ++v)
        report.edge_neighbor_isometries.emplace_back(edge_names[v],
                                                     classify_isometry(edges.vertices[v]));

    if (report.edge_count > 0) {
        BoundarySystem system = boundary_equations(report.graph, report.classification, known);
        report.edge_components = system.components.size();
        for (std::size_t c = 0; c < system.components.size(); ++c) {
            BoundarySystem sub = system.component_system(c);
            ComponentAnalysis comp;
            comp.pieces = sub.piece_names;
            DimensionResult dim =
                boundary_dimension(sub, ifs.contraction_ratio_squared, options.tolerance);
            comp.spectral_radius = dim.spectral_radius;
            comp.dimension = dim.dimension;
            comp.iterations = dim.iterations;
            comp.residual = dim.residual;
            comp.strongly_connected = system_strongly_connected(sub);
            if (comp.strongly_connected)
                comp.measure_ratios = measure_ratios(sub, options.tolerance);
            report.max_boundary_dimension =
                std::max(report.max_boundary_dimension, comp.dimension);
            report.components.push_back(std::move(comp));
        }
    }

    auto t1 = std::chrono::steady_clock::now();
    report.timing_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return report;
}

inline Json report_to_json(const AnalysisReport& report, bool include_timing = true) {
    Json j;
    j["spec"] = report.spec_name;
    Json v;
    v["valid"] = report.validation.valid;
    v["piece_count"] = report.validation.piece_count;
    v["ratio_squared"] = report.validation.expansion_ratio_squared
                             ? Json(report.validation.expansion_ratio_squared->str())
                             : Json(nullptr);
    v["ratio_matches_piece_count"] = report.validation.ratio_matches_piece_count;
    v["isometry_ok"] = report.validation.isometry_ok;
    v["determinant_sign"] = report.validation.determinant_sign;
    v["violations"] = report.validation.violations;
    j["validation"] = v;
    if (!report.validation.valid) return j;

    j["bound_sq"] = report.bound_sq.str();
    j["bound_from_hull"] = report.bound_from_hull;
    j["candidate_count"] = report.candidate_count;
    j["proper_count_including_root"] = report.proper_count_including_root;
    j["edge_count"] = report.edge_count;
    j["point_count"] = report.point_count;
    j["osc"] = report.osc;
    j["edge_components"] = report.edge_components;
    j["boundary_dimension"] = Json::array();
    for (const ComponentAnalysis& c : report.components) {
        Json cj;
        cj["pieces"] = c.pieces;
        cj["spectral_radius"] = c.spectral_radius;
        cj["dimension"] = c.dimension;
        cj["iterations"] = c.iterations;
        cj["residual"] = c.residual;
        j["boundary_dimension"].push_back(cj);
    }
    j["max_boundary_dimension"] = report.max_boundary_dimension;
    j["measure_ratios"] = Json::array();
    for (const ComponentAnalysis& c : report.components) {
        Json cj;
        cj["pieces"] = c.pieces;
        cj["strongly_connected"] = c.strongly_connected;
        cj["ratios"] = c.measure_ratios;
        j["measure_ratios"].push_back(cj);
    }
    Json iso;
    for (const auto& [name, cls] : report.edge_neighbor_isometries)
        iso[name] = analysis_detail::isometry_to_json(cls);
    j["edge_neighbor_isometries"] = iso;
    if (include_timing) j["timing_ms"] = report.timing_ms;
    return j;
}

} // namespace reptile
