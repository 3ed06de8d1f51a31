#include <algorithm>
#include <climits>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "surf/coloring.hpp"
#include "surf/errors.hpp"
#include "surf/nicecycle.hpp"
#include "surf/planarize.hpp"
#include "surf/toolkit.hpp"
#include "surf/topology.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

surf::EmbeddedGraph read_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw surf::parse_error("cannot open " + path);
    return surf::parse_embedding(in);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw surf::parse_error("cannot write " + path);
    out << text;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// Lemma width bound: 8(d+1)(2^{g/2} - 1) orientable, 8(d+1)(2^g - 1) not.
long long width_bound(int d, const surf::SurfaceInfo& s) {
    const int exponent = s.orientable ? s.euler_genus / 2 : s.euler_genus;
    if (exponent >= 40) return LLONG_MAX;
    return 8LL * (d + 1) * ((1LL << exponent) - 1);
}

json surface_json(const surf::EmbeddedGraph& g) {
    const surf::SurfaceInfo s = g.surface();
    return json{{"vertices", s.vertices},
                {"edges", s.edges},
                {"faces", s.faces},
                {"euler_characteristic", s.euler_characteristic},
                {"euler_genus", s.euler_genus},
                {"orientable", s.orientable}};
}

int run_gen(const std::string& kind, int m, int n, std::uint64_t seed, const std::string& out) {
    surf::EmbeddedGraph g;
    std::vector<surf::Vertex> core;
    try {
        if (kind == "torus-grid") {
            g = surf::gen_torus_grid(m, n);
        } else if (kind == "klein-grid") {
            g = surf::gen_klein_grid(m, n);
        } else if (kind == "projective-grid") {
            g = surf::gen_projective_grid(n);
        } else if (kind == "zigzag-klein") {
            surf::ZigzagInstance z = surf::gen_zigzag_klein(n);
            g = std::move(z.graph);
            core = std::move(z.core);
        } else {
            g = surf::gen_stacked_disk(n, seed);
        }
    } catch (const surf::hypothesis_error& e) {
        // Bad generator parameters are an input error at the command line.
        throw surf::parse_error(e.what());
    }
    write_text(out, surf::serialize(g));
    json j{{"schema_version", kSchemaVersion}, {"kind", kind}};
    j.update(surface_json(g));
    if (!core.empty()) j["core"] = core;
    j["out"] = out;
    emit(j);
    return 0;
}

int run_info(const std::string& file) {
    const surf::EmbeddedGraph g = read_graph(file);
    json j{{"schema_version", kSchemaVersion}};
    j.update(surface_json(g));
    j["triangulation"] = surf::is_triangulation(g);
    emit(j);
    return 0;
}

int run_width(const std::string& file) {
    const surf::EmbeddedGraph g = read_graph(file);
    const surf::CycleOnSurface c = surf::shortest_noncontractible_cycle(g);
    emit(json{{"schema_version", kSchemaVersion},
              {"width", c.length()},
              {"cycle", c.vertices}});
    return 0;
}

int run_planarize(const std::string& file, int d, bool force, const std::string& out) {
    const surf::EmbeddedGraph g = read_graph(file);
    const surf::PlanarizingSet ps = surf::planarizing_set(g, d, force);
    json cycles = json::array();
    for (const auto& c : ps.cycles) cycles.push_back(c.vertices);
    const json j{{"schema_version", kSchemaVersion},
                 {"d", ps.d},
                 {"k", ps.k},
                 {"cycles", cycles},
                 {"ncdist", ps.ncdist_values},
                 {"pairwise_dist", ps.pairwise_dist}};
    write_text(out, j.dump(2) + "\n");
    emit(j);
    return 0;
}

int run_nice(const std::string& file, const std::vector<int>& ids, int d, bool force) {
    const surf::EmbeddedGraph g = read_graph(file);
    for (int v : ids)
        if (v < 0 || v >= g.vertex_count())
            throw surf::parse_error("cycle vertex " + std::to_string(v) + " is outside the graph");
    if (!force) {
        const long long bound = width_bound(d, g.surface());
        const int w = surf::width(g);
        if (w < bound)
            throw surf::hypothesis_error("width " + std::to_string(w) + " is below the bound " +
                                         std::to_string(bound) + "; rerun with --force");
    }
    const surf::CycleOnSurface c = surf::make_cycle(g, ids);
    const surf::NiceCycleResult r = surf::nice_cycle(g, c, d);

    const std::vector<surf::Vertex> collar_vertices = surf::collar(g, c, 4).vertices;
    bool within = true;
    for (surf::Vertex v : r.cycle.vertices)
        within = within && std::binary_search(collar_vertices.begin(), collar_vertices.end(), v);
    const surf::DistanceReport nd = surf::ncdist(g, r.cycle);
    emit(json{{"schema_version", kSchemaVersion},
              {"cycle", r.cycle.vertices},
              {"case_taken", r.case_taken},
              {"certificates",
               json{{"length", r.cycle.length()},
                    {"chordless", !surf::has_chord(g, r.cycle)},
                    {"nice", surf::is_nice(g, r.cycle)},
                    {"within_collar", within},
                    {"ncdist", nd.infinite() ? -1 : *nd.value}}}});
    return 0;
}

int run_color5(const std::string& file, int d, bool force, const std::string& out) {
    const surf::EmbeddedGraph g = read_graph(file);
    const surf::Coloring col = surf::five_color(g, d, force);
    json colors = json::object();
    for (surf::Vertex v = 0; v < g.vertex_count(); ++v)
        colors[std::to_string(v)] = col.assignment[v];
    const json payload{{"schema_version", kSchemaVersion}, {"colors", colors}};
    write_text(out, payload.dump(2) + "\n");
    emit(json{{"schema_version", kSchemaVersion},
              {"vertices", g.vertex_count()},
              {"palette_used", col.palette_used()},
              {"out", out}});
    return 0;
}

int run_verify(const std::string& file, const std::string& colors_path, int max_colors) {
    const surf::EmbeddedGraph g = read_graph(file);
    std::ifstream in(colors_path);
    if (!in) throw surf::parse_error("cannot open " + colors_path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw surf::parse_error("colors file: " + std::string(e.what()));
    }
    const json& map = doc.contains("colors") ? doc["colors"] : doc;
    if (!map.is_object()) throw surf::parse_error("colors file must map vertex ids to colors");
    surf::Coloring col{std::vector<int>(g.vertex_count(), 0)};
    for (const auto& [key, value] : map.items()) {
        int v = -1;
        try {
            v = std::stoi(key);
        } catch (const std::exception&) {
            throw surf::parse_error("colors file key '" + key + "' is not a vertex id");
        }
        if (v < 0 || v >= g.vertex_count())
            throw surf::parse_error("colors file names vertex " + key + " outside the graph");
        if (!value.is_number_integer())
            throw surf::parse_error("color of vertex " + key + " is not an integer");
        col.assignment[v] = value.get<int>();
    }
    const surf::ColoringCheck check = surf::verify_coloring(g, col, max_colors);
    emit(json{{"schema_version", kSchemaVersion},
              {"ok", check.ok},
              {"violations", check.violations}});
    return check.ok ? 0 : 1;
}

int report(const char* kind, const std::string& what, int code) {
    std::cerr << json{{"schema_version", kSchemaVersion}, {"kind", kind}, {"error", what}}.dump(2)
              << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"surgery, planarizing sets, nice cycles and 5-coloring on embedded triangulations"};
    app.require_subcommand(1);

    std::string kind, file, out, colors_path;
    std::vector<int> cycle_ids;
    int m = 0, n = 0, d = 1, d5 = 14, max_colors = 5;
    std::uint64_t seed = 1;
    bool force = false;
    int rc = 0;

    auto* gen = app.add_subcommand("gen", "generate a fixture and write its rotation file");
    gen->add_option("kind", kind)
        ->required()
        ->check(CLI::IsMember(
            {"torus-grid", "klein-grid", "projective-grid", "zigzag-klein", "stacked-disk"}));
    gen->add_option("--m", m, "grid rows");
    gen->add_option("--n", n, "grid columns / size");
    gen->add_option("--seed", seed, "seed for randomized fixtures");
    gen->add_option("--out", out)->required();
    gen->callback([&] { rc = run_gen(kind, m, n, seed, out); });

    auto* info = app.add_subcommand("info", "surface summary of an embedding file");
    info->add_option("file", file)->required();
    info->callback([&] { rc = run_info(file); });

    auto* width_cmd = app.add_subcommand("width", "shortest noncontractible cycle");
    width_cmd->add_option("file", file)->required();
    width_cmd->callback([&] { rc = run_width(file); });

    auto* planarize = app.add_subcommand("planarize", "planarizing cycle set with certificates");
    planarize->add_option("file", file)->required();
    planarize->add_option("--d", d, "distance parameter")->required();
    planarize->add_flag("--force", force, "skip the width bound gate");
    planarize->add_option("--out", out)->required();
    planarize->callback([&] { rc = run_planarize(file, d, force, out); });

    auto* nice = app.add_subcommand("nice", "nice replacement cycle");
    nice->add_option("file", file)->required();
    nice->add_option("--cycle", cycle_ids, "comma-separated vertex ids")
        ->required()
        ->delimiter(',');
    nice->add_option("--d", d, "distance parameter")->required();
    nice->add_flag("--force", force, "skip the width bound gate");
    nice->callback([&] { rc = run_nice(file, cycle_ids, d, force); });

    auto* color5 = app.add_subcommand("color5", "five-color a locally planar triangulation");
    color5->add_option("file", file)->required();
    color5->add_option("--d", d5, "distance parameter")->capture_default_str();
    color5->add_flag("--force", force, "skip the width bound gate");
    color5->add_option("--out", out)->required();
    color5->callback([&] { rc = run_color5(file, d5, force, out); });

    auto* verify = app.add_subcommand("verify", "check a coloring file against a graph");
    verify->add_option("file", file)->required();
    verify->add_option("--colors", colors_path)->required();
    verify->add_option("--max", max_colors, "largest admissible color")->capture_default_str();
    verify->callback([&] { rc = run_verify(file, colors_path, max_colors); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const surf::parse_error& e) {
        return report("parse", e.what(), 2);
    } catch (const surf::certification_error& e) {
        return report("certification", e.what(), 1);
    } catch (const surf::hypothesis_error& e) {
        return report("hypothesis", e.what(), 1);
    } catch (const surf::resource_limit_error& e) {
        return report("resource_limit", e.what(), 1);
    } catch (const std::exception& e) {
        return report("internal", e.what(), 3);
    }
    return rc;
}
