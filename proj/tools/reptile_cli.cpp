// Command-line surface for the reptile library: analysis reports,
// subdivision figures, neighbor tables, the built-in gallery, orientation
// statistics and boundary dimensions.
//
// Exit codes: 0 success, 2 invalid or unreadable spec, 3 budget exhausted,
// 4 output I/O failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "reptile/analysis.hpp"
#include "reptile/boundary.hpp"
#include "reptile/gallery.hpp"
#include "reptile/render.hpp"
#include "reptile/serialize.hpp"

namespace {

using namespace reptile;

struct ExitWith {
    int code;
    std::string message;
};

std::size_t env_budget() {
    if (const char* raw = std::getenv("REPTILE_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(raw, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        throw ExitWith{2, "REPTILE_BUDGET must be a positive integer"};
    }
    return kDefaultWordBudget;
}

ReptileSpec resolve_spec(const std::string& ref) {
    if (ref.rfind("gallery:", 0) == 0) return gallery::by_name(ref.substr(8));
    try {
        return load_spec_file(ref);
    } catch (const IoError& e) {
        // an unreadable input spec is a spec failure (exit 2), not output I/O
        throw ExitWith{2, e.what()};
    }
}

/// Writes atomically: temp file in the target directory, then rename.
void write_file(const std::string& path, const std::string& bytes) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw IoError("short write: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path);
}

void emit(const std::optional<std::string>& out_path, const std::string& bytes) {
    if (out_path) {
        write_file(*out_path, bytes);
    } else {
        std::cout << bytes;
    }
}

ValidationReport require_valid(const ReptileSpec& spec) {
    ValidationReport rep = validate(spec);
    if (!rep.valid) {
        std::string detail;
        for (const std::string& v : rep.violations) detail += "\n  " + v;
        throw ExitWith{2, "spec '" + spec.name + "' is invalid:" + detail};
    }
    return rep;
}

ConvexBody render_hull(const ReptileSpec& spec, const SubdivisionIFS& ifs, std::size_t budget) {
    if (spec.hull) return *spec.hull;
    // No certified hull in the spec: outline pieces with the exact hull of a
    // modest attractor sample instead.
    int depth = 1;
    while (std::pow(static_cast<double>(ifs.maps.size()), depth + 1) <=
           std::min<double>(20000.0, static_cast<double>(budget)))
        ++depth;
    return geo::convex_hull(sample_points(ifs, depth, budget));
}

int cmd_analyze(const std::string& spec_ref, const std::optional<std::string>& out,
                bool no_timing) {
    ReptileSpec spec = resolve_spec(spec_ref);
    AnalysisOptions options;
    options.vertex_budget = env_budget();
    options.word_budget = env_budget();
    AnalysisReport report = analyze(spec, options);
    std::string text = report_to_json(report, !no_timing).dump(2) + "\n";
    if (!report.validation.valid) {
        emit(out, text);
        throw ExitWith{2, "spec '" + spec.name + "' failed validation"};
    }
    emit(out, text);
    return 0;
}

int cmd_render(const std::string& spec_ref, int depth, const std::string& format,
               const std::string& out, int resolution, unsigned long long /*seed*/) {
    ReptileSpec spec = resolve_spec(spec_ref);
    require_valid(spec);
    SubdivisionIFS ifs = derive_subdivision(spec);
    std::size_t budget = env_budget();
    ConvexBody hull = render_hull(spec, ifs, budget);
    std::string bytes;
    if (format == "svg") {
        bytes = render_subdivision_svg(ifs, hull, depth, ColorScheme{}, budget);
    } else if (format == "ppm") {
        bytes = render_subdivision_ppm(ifs, hull, depth, ColorScheme{}, resolution, resolution,
                                       budget);
    } else {
        throw ExitWith{2, "unknown format: " + format};
    }
    write_file(out, bytes);
    std::cout << bytes.size() << " bytes\n";
    return 0;
}

int cmd_neighbors(const std::string& spec_ref, const std::optional<std::string>& dot_path,
                  bool table) {
    ReptileSpec spec = resolve_spec(spec_ref);
    require_valid(spec);
    AnalysisOptions options;
    options.vertex_budget = env_budget();
    options.word_budget = env_budget();
    AnalysisReport report = analyze(spec, options);
    if (!report.osc) std::cerr << "warning: osc: false (pieces overlap)\n";

    auto known = gallery::pinwheel_edge_names();
    if (dot_path) write_file(*dot_path, export_dot(report.graph, known));
    if (table || !dot_path) {
        auto arrows = edge_arrow_table(report.graph, report.classification, known);
        std::cout << "initial\tterminal\tfirst\tsecond\n";
        for (const NamedArrow& a : arrows)
            std::cout << a.from << "\t" << a.to << "\t" << a.i << "\t" << a.j << "\n";
    }
    return 0;
}

int cmd_gallery(const std::string& action, const std::string& name,
                const std::optional<std::string>& out) {
    if (action == "list") {
        for (const std::string& n : gallery::names()) std::cout << n << "\n";
        return 0;
    }
    if (action == "export") {
        ReptileSpec spec = gallery::by_name(name);
        emit(out, spec_to_json(spec).dump(2) + "\n");
        return 0;
    }
    throw ExitWith{2, "gallery action must be 'list' or 'export'"};
}

int cmd_orientations(const std::string& spec_ref, int depth, double bins,
                     const std::optional<std::string>& out) {
    ReptileSpec spec = resolve_spec(spec_ref);
    require_valid(spec);
    SubdivisionIFS ifs = derive_subdivision(spec);
    OrientationCensus census = orientation_census(ifs, depth, bins, env_budget());
    std::string csv = census_csv(census);
    if (out) {
        write_file(*out, csv);
    } else {
        std::cout << csv;
    }
    std::cout << "distinct_linear_parts " << census.distinct_linear_parts << "\n";
    return 0;
}

int cmd_dimension(const std::string& spec_ref, const std::optional<std::string>& piece,
                  int depth, const std::optional<std::string>& polyline_out,
                  const std::string& polyline_format) {
    ReptileSpec spec = resolve_spec(spec_ref);
    require_valid(spec);
    AnalysisOptions options;
    options.vertex_budget = env_budget();
    options.word_budget = env_budget();
    AnalysisReport report = analyze(spec, options);

    Json j;
    j["spec"] = report.spec_name;
    j["max_boundary_dimension"] = report.max_boundary_dimension;
    j["components"] = Json::array();
    for (const ComponentAnalysis& c : report.components) {
        Json cj;
        cj["pieces"] = c.pieces;
        cj["spectral_radius"] = c.spectral_radius;
        cj["dimension"] = c.dimension;
        j["components"].push_back(cj);
    }
    std::cout << j.dump(2) << "\n";

    if (piece) {
        if (!polyline_out) throw ExitWith{2, "--piece requires --polyline-out"};
        SubdivisionIFS ifs = derive_subdivision(spec);
        auto known = gallery::pinwheel_edge_names();
        BoundarySystem system = boundary_equations(report.graph, report.classification, known);
        // restrict to the component containing the requested piece
        std::optional<BoundarySystem> sub;
        for (std::size_t c = 0; c < system.components.size(); ++c) {
            BoundarySystem candidate = system.component_system(c);
            for (const std::string& n : candidate.piece_names)
                if (n == *piece) sub = candidate;
        }
        if (!sub) throw ExitWith{2, "no edge neighbor named '" + *piece + "'"};
        std::vector<ConvexBody> polys(sub->size());
        for (std::size_t p = 0; p < sub->size(); ++p) {
            for (auto& [n, body] : gallery::pinwheel_boundary_quads())
                if (n == sub->piece_names[p]) polys[p] = body;
            if (polys[p].empty())
                throw ExitWith{2, "no certified polygon known for piece '" +
                                      sub->piece_names[p] + "'"};
        }
        if (!verify_boundary_osc(*sub, ifs, polys))
            throw ExitWith{2, "polygon certificate failed for this structure"};
        std::size_t piece_idx = 0;
        for (std::size_t p = 0; p < sub->size(); ++p)
            if (sub->piece_names[p] == *piece) piece_idx = p;
        auto points = boundary_polyline(*sub, ifs, polys, piece_idx, depth);
        write_file(*polyline_out,
                   polyline_format == "svg" ? polyline_svg(points) : polyline_csv(points));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact analysis of planar self-similar replication tiles"};
    app.require_subcommand(1);

    std::string spec_ref, format = "svg", gallery_action, gallery_name;
    std::optional<std::string> out_path, dot_path, piece;
    std::string polyline_format = "csv";
    bool table = false, no_timing = false;
    int depth = 2, resolution = 512;
    double bins = 1.0;
    unsigned long long seed = 0;

    auto* analyze_cmd = app.add_subcommand("analyze", "full neighbor and boundary analysis");
    analyze_cmd->add_option("spec", spec_ref, "spec file or gallery:NAME")->required();
    analyze_cmd->add_option("--out", out_path, "write the JSON report to a file");
    analyze_cmd->add_flag("--no-timing", no_timing, "omit the timing field");

    auto* render_cmd = app.add_subcommand("render", "draw the depth-n subdivision");
    render_cmd->add_option("spec", spec_ref, "spec file or gallery:NAME")->required();
    render_cmd->add_option("--depth", depth, "subdivision depth")->required();
    render_cmd->add_option("--format", format, "svg or ppm")->check(CLI::IsMember({"svg", "ppm"}));
    render_cmd->add_option("--out", out_path, "output file")->required();
    render_cmd->add_option("--resolution", resolution, "ppm resolution");
    render_cmd->add_option("--seed", seed, "seed for randomized estimates");

    auto* neighbors_cmd = app.add_subcommand("neighbors", "neighbor graph exports");
    neighbors_cmd->add_option("spec", spec_ref, "spec file or gallery:NAME")->required();
    neighbors_cmd->add_option("--dot", dot_path, "write the proper neighbor graph as DOT");
    neighbors_cmd->add_flag("--table", table, "print the edge-neighbor arrow table");

    auto* gallery_cmd = app.add_subcommand("gallery", "list or export built-in structures");
    gallery_cmd->add_option("action", gallery_action, "list | export")->required();
    gallery_cmd->add_option("name", gallery_name, "gallery entry for export");
    gallery_cmd->add_option("--out", out_path, "write the spec to a file");

    auto* orient_cmd = app.add_subcommand("orientations", "tile-orientation census");
    orient_cmd->add_option("spec", spec_ref, "spec file or gallery:NAME")->required();
    orient_cmd->add_option("--depth", depth, "subdivision depth")->required();
    orient_cmd->add_option("--bins", bins, "bin width in degrees");
    orient_cmd->add_option("--out", out_path, "write the census CSV to a file");

    auto* dim_cmd = app.add_subcommand("dimension", "boundary dimension per component");
    dim_cmd->add_option("spec", spec_ref, "spec file or gallery:NAME")->required();
    dim_cmd->add_option("--piece", piece, "also export a boundary polyline for this piece");
    dim_cmd->add_option("--depth", depth, "polyline refinement depth");
    dim_cmd->add_option("--polyline-out", out_path, "polyline output file");
    dim_cmd->add_option("--polyline-format", polyline_format, "svg or csv")
        ->check(CLI::IsMember({"svg", "csv"}));

    try {
        app.parse(argc, argv);
        if (analyze_cmd->parsed()) return cmd_analyze(spec_ref, out_path, no_timing);
        if (render_cmd->parsed())
            return cmd_render(spec_ref, depth, format, *out_path, resolution, seed);
        if (neighbors_cmd->parsed()) return cmd_neighbors(spec_ref, dot_path, table);
        if (gallery_cmd->parsed()) return cmd_gallery(gallery_action, gallery_name, out_path);
        if (orient_cmd->parsed()) return cmd_orientations(spec_ref, depth, bins, out_path);
        if (dim_cmd->parsed())
            return cmd_dimension(spec_ref, piece, depth, out_path, polyline_format);
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ExitWith& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const VertexBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
