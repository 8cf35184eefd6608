#include "imds/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "imds/alignment.hpp"
#include "imds/distance_matrix.hpp"
#include "imds/errors.hpp"
#include "imds/evaluation.hpp"
#include "imds/harness.hpp"
#include "imds/io.hpp"
#include "imds/mds.hpp"
#include "imds/ranging.hpp"
#include "imds/topology.hpp"

namespace imds {
namespace {

constexpr int kExitUsage = 2;
constexpr int kExitFailure = 1;
constexpr int kExitPartial = 3;

struct UsageError : Error {
    using Error::Error;
};

NoiseLaw parse_noise(const std::string& s) {
    if (s == "inflating") return NoiseLaw::inflating;
    if (s == "symmetric") return NoiseLaw::symmetric;
    throw UsageError("--noise must be 'inflating' or 'symmetric'");
}

/// Flags shared by `generate` and `localize` for drawing a network.
struct NetworkFlags {
    std::string topology = "cube";
    std::size_t n = 100;
    double side = 100.0;
    std::size_t per_axis = 5;
    double spacing = 25.0;
    std::optional<double> range;
    double error = 0.0;
    std::string noise = "inflating";
    Seed seed = 1;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--topology", topology, "cube | grid | valley | mountain")->capture_default_str();
        cmd.add_option("--n", n, "node count (cube, valley, mountain)")->capture_default_str();
        cmd.add_option("--side", side, "cube side / terrain base side, in r")->capture_default_str();
        cmd.add_option("--per-axis", per_axis, "grid points per axis")->capture_default_str();
        cmd.add_option("--spacing", spacing, "grid spacing, in r")->capture_default_str();
        cmd.add_option("--error", error, "range error e_r as a fraction of R")->capture_default_str();
        cmd.add_option("--noise", noise, "inflating | symmetric")->capture_default_str();
        cmd.add_option("--seed", seed, "random seed")->capture_default_str();
    }

    TopologyParams params() const {
        TopologyParams p;
        p.cube_nodes = n;
        p.cube_side = side;
        p.grid_per_axis = per_axis;
        p.grid_spacing = spacing;
        p.surface_nodes = n;
        p.valley = TerrainSpec::valley(side);
        p.mountain = TerrainSpec::mountain(side);
        return p;
    }

    TopologyKind kind() const {
        const auto k = parse_topology(topology);
        if (!k) throw UsageError("unknown topology '" + topology + "'");
        return *k;
    }

    Network draw(std::ostream& err) const {
        const auto net = draw_network(kind(), params(), *range, NoiseModel{error, parse_noise(noise)}, seed);
        if (net.resamples > 0) err << "note: discarded " << net.resamples << " disconnected draw(s)\n";
        return net;
    }
};

template <typename Write>
void write_file(const std::string& path, Write write) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write(out);
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

std::ifstream open_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return in;
}

// generate ------------------------------------------------------------------

struct GenerateCommand {
    NetworkFlags net;
    std::string nodes_out = "nodes.csv";
    std::string edges_out = "edges.csv";

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("generate", "Write a node deployment and its measured range graph");
        net.add_to(*cmd);
        cmd->add_option("--range", net.range, "radio range R, in r")->required();
        cmd->add_option("--nodes-out", nodes_out, "node CSV path")->capture_default_str();
        cmd->add_option("--edges-out", edges_out, "edge CSV path")->capture_default_str();
    }

    int run(std::ostream& out, std::ostream& err) const {
        const auto network = net.draw(err);
        write_file(nodes_out, [&](std::ostream& o) { write_nodes_csv(*network.nodes, o); });
        write_file(edges_out, [&](std::ostream& o) { write_edges_csv(network.graph, o); });
        out << "nodes=" << network.nodes->size() << " edges=" << network.graph.edges().size()
            << " connectivity=" << format_decimal(avg_connectivity(network.graph)) << '\n';
        return 0;
    }
};

// localize ------------------------------------------------------------------

struct LocalizeCommand {
    NetworkFlags net;
    std::string nodes_in;
    std::string edges_in;
    std::string algorithm = "imds";
    std::size_t anchors = 10;
    std::optional<Seed> anchor_seed;
    std::string map_out = "map.csv";
    std::string record_out;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("localize", "Localize a network with MDS-MAP or IMDS");
        net.add_to(*cmd);
        cmd->add_option("--range", net.range, "radio range R, in r")->required();
        cmd->add_option("--nodes", nodes_in, "ground-truth node CSV (otherwise a network is generated)");
        cmd->add_option("--edges", edges_in, "edge CSV measured on --nodes");
        cmd->add_option("--algorithm", algorithm, "imds | mdsmap")->capture_default_str();
        cmd->add_option("--anchors", anchors, "number of anchor nodes (at least 4)")->capture_default_str();
        cmd->add_option("--anchor-seed", anchor_seed, "seed for the anchor draw (default: --seed)");
        cmd->add_option("--out", map_out, "absolute map CSV path")->capture_default_str();
        cmd->add_option("--record", record_out, "optional JSON record of the run");
    }

    int run(std::ostream& out, std::ostream& err) const {
        const auto algo = parse_algorithm(algorithm);
        if (!algo) throw UsageError("unknown algorithm '" + algorithm + "'");
        if (anchors < kMinAnchors)
            throw UsageError("--anchors must be at least " + std::to_string(kMinAnchors) + ", got " +
                             std::to_string(anchors));
        if (!edges_in.empty() && nodes_in.empty()) throw UsageError("--edges needs --nodes for anchor positions");
        const double range = *net.range;

        std::shared_ptr<const NodeSet> nodes;
        std::optional<RangeGraph> graph;
        if (!nodes_in.empty()) {
            auto in = open_file(nodes_in);
            nodes = std::make_shared<const NodeSet>(read_nodes_csv(in));
            if (!edges_in.empty()) {
                auto ein = open_file(edges_in);
                graph.emplace(read_edges_csv(ein, nodes->size(), range));
            } else {
                graph.emplace(build_graph(nodes, range, NoiseModel{net.error, parse_noise(net.noise)}, net.seed));
            }
        } else {
            auto network = net.draw(err);
            nodes = network.nodes;
            graph.emplace(std::move(network.graph));
        }
        if (const auto c = graph->component_count(); c > 1) throw DisconnectedError(c);
        if (anchors >= nodes->size()) throw UsageError("--anchors must be smaller than the node count");

        const DistanceMatrix d = *algo == Algorithm::imds ? ha_all_pairs(*graph, range) : dijkstra_all_pairs(*graph);
        const RelativeMap relative = classical_mds(d, 3);
        Rng rng(anchor_seed.value_or(net.seed));
        const AnchorSet anchor_set = select_anchors(*nodes, anchors, rng);
        const RigidTransform fit = fit_transform(anchor_rows(relative, anchor_set), anchor_set.true_positions);
        if (fit.degenerate) err << "warning: anchors are nearly collinear; alignment is not unique\n";
        const AbsoluteMap absolute = apply_transform(fit, relative);
        const double error_pct = estimation_error(absolute, *nodes, anchor_set, range);
        const double connectivity = avg_connectivity(*graph);

        write_file(map_out, [&](std::ostream& o) { write_map_csv(absolute, o); });
        if (!record_out.empty()) {
            nlohmann::json record = {
                {"algorithm", std::string(to_string(*algo))},
                {"n", nodes->size()},
                {"R", range},
                {"num_anchors", anchors},
                {"anchors", anchor_set.indices},
                {"avg_connectivity", connectivity},
                {"error_pct", error_pct},
                {"matrix_error", matrix_error(d, *nodes, range)},
                {"clamped_eigenvalues", relative.clamped},
                {"transform", to_json(fit)},
            };
            write_file(record_out, [&](std::ostream& o) { o << record.dump(2) << '\n'; });
        }
        out << "error_pct=" << format_decimal(error_pct) << " connectivity=" << format_decimal(connectivity) << '\n';
        return 0;
    }
};

// sweep ---------------------------------------------------------------------

struct SweepCommand {
    std::string config_path;
    std::map<std::string, std::string> overrides;  // settings key -> raw flag value
    std::string output = "results.csv";
    std::string summary;
    std::optional<std::string> plots;
    bool output_set = false;

    // Every sweep setting is also a flag: key foo_bar <-> --foo-bar.
    static constexpr const char* kSettingKeys[] = {
        "topologies",  "anchors",      "ranges",        "errors",        "trials",       "seed",
        "algorithms",  "noise",        "jobs",          "cube_nodes",    "cube_side",    "grid_per_axis",
        "grid_spacing", "surface_nodes", "base_side",   "valley_height", "mountain_height", "terrain_spread",
        "antenna_height",
    };

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("sweep", "Run the Monte-Carlo experiment matrix");
        cmd->add_option("--config", config_path, "key = value configuration file");
        for (const char* key : kSettingKeys) {
            std::string flag = std::string("--") + key;
            std::replace(flag.begin(), flag.end(), '_', '-');
            cmd->add_option_function<std::string>(
                flag, [this, key](const std::string& v) { overrides[key] = v; }, "overrides config key " + std::string(key));
        }
        cmd->add_option("--output", output, "per-trial CSV path")->capture_default_str();
        cmd->add_option("--summary", summary, "per-configuration CSV path (default: <output>_summary.csv)");
        cmd->add_option("--emit-plots", plots, "also write a gnuplot script (path)")->expected(0, 1)->default_str("plots.gp");
        cmd->callback([this, cmd] { output_set = cmd->count("--output") > 0; });
    }

    int run(std::ostream& out, std::ostream& err) {
        SweepConfig cfg;
        std::string file_output, file_summary, file_plots;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw UsageError("cannot read config file '" + config_path + "'");
            for (const auto& [key, value] : read_settings(in)) {
                if (apply_setting(cfg, key, value)) continue;
                if (key == "output") file_output = value;
                else if (key == "summary") file_summary = value;
                else if (key == "emit_plots") file_plots = value;
                else throw UsageError("unknown configuration key '" + key + "' in " + config_path);
            }
        }
        for (const auto& [key, value] : overrides) apply_setting(cfg, key, value);
        if (!output_set && !file_output.empty()) output = file_output;
        if (summary.empty()) summary = file_summary;
        if (summary.empty()) {
            std::filesystem::path p(output);
            summary = (p.parent_path() / (p.stem().string() + "_summary.csv")).string();
        }
        if (plots && plots->empty()) plots = "plots.gp";
        if (!plots && !file_plots.empty()) plots = file_plots;

        const auto table = run_sweep(cfg);
        const auto aggregates = table.aggregates();
        write_csv(table, std::filesystem::path(output));
        write_aggregates_csv(aggregates, std::filesystem::path(summary));
        if (plots) write_file(*plots, [&](std::ostream& o) { write_plot_script(aggregates, o); });

        std::size_t failed = 0;
        for (const auto& r : table.rows) {
            if (r.ok()) continue;
            if (failed++ < 5)
                err << "trial failed: " << to_string(r.topology) << " R=" << format_decimal(r.radio_range)
                    << " e_r=" << format_decimal(r.range_error) << " N=" << r.num_anchors << " trial " << r.trial
                    << " (" << to_string(r.algorithm) << "): " << r.failure << '\n';
        }
        out << "rows=" << table.rows.size() << " failed=" << failed << " output=" << output << " summary=" << summary
            << '\n';
        return failed == 0 ? 0 : kExitPartial;
    }
};

// compare-distances ---------------------------------------------------------

struct CompareCommand {
    DistanceComparisonConfig cfg;
    std::string ranges, errors;
    std::string noise = "inflating";
    std::string output = "distance_comparison.csv";

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("compare-distances",
                                       "Distance-matrix error of HA versus Dijkstra on a planar square deployment");
        cmd->add_option("--n", cfg.nodes, "node count")->capture_default_str();
        cmd->add_option("--side", cfg.side, "square side, in r")->capture_default_str();
        cmd->add_option("--ranges", ranges, "comma-separated radio ranges");
        cmd->add_option("--errors", errors, "comma-separated range errors");
        cmd->add_option("--trials", cfg.trials, "trials per point")->capture_default_str();
        cmd->add_option("--seed", cfg.base_seed, "base seed")->capture_default_str();
        cmd->add_option("--noise", noise, "inflating | symmetric")->capture_default_str();
        cmd->add_option("--output", output, "per-trial CSV path")->capture_default_str();
    }

    int run(std::ostream& out, std::ostream&) {
        SweepConfig lists;  // reuse the list parser
        if (!ranges.empty()) {
            apply_setting(lists, "ranges", ranges);
            cfg.radio_ranges = lists.radio_ranges;
        }
        if (!errors.empty()) {
            apply_setting(lists, "errors", errors);
            cfg.range_errors = lists.range_errors;
        }
        cfg.noise_law = parse_noise(noise);
        const auto rows = run_distance_comparison(cfg);
        write_file(output, [&](std::ostream& o) { write_csv(rows, o); });
        // One summary line per (R, e_r).
        for (std::size_t start = 0; start < rows.size(); start += cfg.trials) {
            std::vector<double> con, dij, ha;
            for (std::size_t k = start; k < start + cfg.trials; ++k) {
                con.push_back(rows[k].avg_connectivity);
                dij.push_back(rows[k].dijkstra_error);
                ha.push_back(rows[k].ha_error);
            }
            out << "R=" << format_decimal(rows[start].radio_range) << " e_r=" << format_decimal(rows[start].range_error)
                << " connectivity=" << format_decimal(summarize(con).mean, 6)
                << " dijkstra=" << format_decimal(summarize(dij).mean, 6) << " ha=" << format_decimal(summarize(ha).mean, 6)
                << '\n';
        }
        return 0;
    }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"3D sensor network localization with MDS-MAP and IMDS", "imds"};
    app.require_subcommand(1, 1);
    GenerateCommand generate;
    LocalizeCommand localize;
    SweepCommand sweep;
    CompareCommand compare;
    generate.attach(app);
    localize.attach(app);
    sweep.attach(app);
    compare.attach(app);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        const auto* chosen = app.get_subcommands().front();
        const std::string name = chosen->get_name();
        if (name == "generate") return generate.run(out, err);
        if (name == "localize") return localize.run(out, err);
        if (name == "sweep") return sweep.run(out, err);
        return compare.run(out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DisconnectedError& e) {
        err << "error: " << e.what() << "; localization needs a connected graph\n";
        return kExitFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace imds
