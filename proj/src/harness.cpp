#include "imds/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "imds/alignment.hpp"
#include "imds/distance_matrix.hpp"
#include "imds/errors.hpp"
#include "imds/mds.hpp"

namespace imds {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <typename T>
void require_non_empty(const std::vector<T>& v, const char* what) {
    if (v.empty()) throw ParameterError(std::string(what) + " list must not be empty");
}

std::size_t node_count(TopologyKind kind, const TopologyParams& p) {
    switch (kind) {
        case TopologyKind::random_cube: return p.cube_nodes;
        case TopologyKind::grid: return p.grid_per_axis * p.grid_per_axis * p.grid_per_axis;
        case TopologyKind::valley:
        case TopologyKind::mountain: return p.surface_nodes;
    }
    return 0;
}

template <typename Generate>
Network draw_connected(Generate generate, double radio_range, const NoiseModel& noise, Seed seed) {
    std::size_t components = 0;
    for (std::size_t attempt = 0; attempt < kMaxResamples; ++attempt) {
        const Seed s = attempt == 0 ? seed : mix_seed(seed, {attempt});
        auto nodes = std::make_shared<const NodeSet>(generate(mix_seed(s, {0})));
        try {
            auto graph = build_graph(nodes, radio_range, noise, mix_seed(s, {1}));
            return Network{std::move(nodes), std::move(graph), attempt};
        } catch (const DisconnectedError& e) {
            components = e.components();
        }
    }
    throw ConfigurationError("no connected network in " + std::to_string(kMaxResamples) +
                             " draws at R = " + format_decimal(radio_range) + " (last draw had " +
                             std::to_string(components) + " components); increase the radio range");
}

}  // namespace

std::string format_decimal(double value, int significant_digits) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant_digits, value);
    return buf;
}

void SweepConfig::validate() const {
    require_non_empty(topologies, "topology");
    require_non_empty(anchor_counts, "anchor count");
    require_non_empty(radio_ranges, "radio range");
    require_non_empty(range_errors, "range error");
    require_non_empty(algorithms, "algorithm");
    if (trials < 1) throw ParameterError("trials must be at least 1");
    for (auto a : anchor_counts)
        if (a < kMinAnchors) throw ParameterError("anchor counts must be at least " + std::to_string(kMinAnchors));
    for (auto r : radio_ranges)
        if (!(r > 0.0) || !std::isfinite(r)) throw ParameterError("radio ranges must be positive");
    for (auto e : range_errors) NoiseModel{e, noise_law}.validate();
    for (auto kind : topologies) {
        const auto n = node_count(kind, topology);
        for (auto a : anchor_counts)
            if (a >= n)
                throw ParameterError("anchor count " + std::to_string(a) + " leaves no unknown nodes in a " +
                                     std::string(to_string(kind)) + " network of " + std::to_string(n));
    }
    topology.valley.validate();
    topology.mountain.validate();
}

std::size_t SweepConfig::point_count() const {
    return topologies.size() * anchor_counts.size() * radio_ranges.size() * range_errors.size();
}

std::vector<ConfigPoint> expand(const SweepConfig& cfg) {
    std::vector<ConfigPoint> points;
    points.reserve(cfg.point_count());
    for (std::size_t t = 0; t < cfg.topologies.size(); ++t)
        for (std::size_t a = 0; a < cfg.anchor_counts.size(); ++a)
            for (std::size_t r = 0; r < cfg.radio_ranges.size(); ++r)
                for (std::size_t e = 0; e < cfg.range_errors.size(); ++e)
                    points.push_back({t, a, r, e, cfg.topologies[t], cfg.anchor_counts[a], cfg.radio_ranges[r],
                                      cfg.range_errors[e]});
    return points;
}

Seed network_seed(const SweepConfig& cfg, const ConfigPoint& point, std::size_t trial) {
    return mix_seed(cfg.base_seed, {point.topology_index, point.range_index, point.error_index, trial});
}

Seed anchor_seed(const SweepConfig& cfg, const ConfigPoint& point, std::size_t trial) {
    return mix_seed(network_seed(cfg, point, trial), {0xa2c4u, point.anchor_index});
}

NodeSet generate_topology(TopologyKind kind, const TopologyParams& params, Seed seed) {
    switch (kind) {
        case TopologyKind::random_cube: return gen_random_cube(params.cube_nodes, params.cube_side, seed);
        case TopologyKind::grid: return gen_grid(params.grid_per_axis, params.grid_spacing);
        case TopologyKind::valley: return gen_surface(params.valley, params.surface_nodes, seed);
        case TopologyKind::mountain: return gen_surface(params.mountain, params.surface_nodes, seed);
    }
    throw ParameterError("unknown topology");
}

Network draw_network(TopologyKind kind, const TopologyParams& params, double radio_range, const NoiseModel& noise,
                     Seed seed) {
    return draw_connected([&](Seed s) { return generate_topology(kind, params, s); }, radio_range, noise, seed);
}

std::vector<TrialResult> run_trial(const SweepConfig& cfg, const ConfigPoint& point, std::size_t trial) {
    const Seed seed = network_seed(cfg, point, trial);
    const NoiseModel noise{point.range_error, cfg.noise_law};
    const auto network = draw_network(point.topology, cfg.topology, point.radio_range, noise, seed);
    const NodeSet& truth = *network.nodes;

    Rng anchor_rng(anchor_seed(cfg, point, trial));
    const AnchorSet anchors = select_anchors(truth, point.num_anchors, anchor_rng);
    const double connectivity = avg_connectivity(network.graph);

    std::vector<TrialResult> out;
    out.reserve(cfg.algorithms.size());
    for (const auto algorithm : cfg.algorithms) {
        const DistanceMatrix d = algorithm == Algorithm::imds ? ha_all_pairs(network.graph, point.radio_range)
                                                              : dijkstra_all_pairs(network.graph);
        const RelativeMap relative = classical_mds(d, 3);
        const RigidTransform fit = fit_transform(anchor_rows(relative, anchors), anchors.true_positions);
        const AbsoluteMap absolute = apply_transform(fit, relative);

        TrialResult r;
        r.algorithm = algorithm;
        r.topology = point.topology;
        r.n = truth.size();
        r.num_anchors = point.num_anchors;
        r.radio_range = point.radio_range;
        r.range_error = point.range_error;
        r.trial = trial;
        r.avg_connectivity = connectivity;
        r.error_pct = estimation_error(absolute, truth, anchors, point.radio_range);
        r.matrix_error = matrix_error(d, truth, point.radio_range);
        r.resamples = network.resamples;
        r.seed = seed;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Aggregate> ResultTable::aggregates() const {
    std::vector<Aggregate> out;
    auto same_config = [](const TrialResult& r, const Aggregate& a) {
        return r.topology == a.topology && r.n == a.n && r.radio_range == a.radio_range &&
               r.num_anchors == a.num_anchors && r.range_error == a.range_error && r.algorithm == a.algorithm;
    };
    // Rows of one configuration are interleaved by algorithm, so group by
    // full key while keeping first-appearance order.
    std::vector<std::vector<const TrialResult*>> members;
    for (const auto& r : rows) {
        std::size_t k = out.size();
        for (std::size_t i = out.size(); i-- > 0;) {
            if (same_config(r, out[i])) {
                k = i;
                break;
            }
        }
        if (k == out.size()) {
            Aggregate a;
            a.topology = r.topology;
            a.n = r.n;
            a.radio_range = r.radio_range;
            a.num_anchors = r.num_anchors;
            a.range_error = r.range_error;
            a.algorithm = r.algorithm;
            out.push_back(a);
            members.emplace_back();
        }
        members[k].push_back(&r);
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        std::vector<double> err, con, mat;
        for (const auto* r : members[k]) {
            if (!r->ok()) {
                ++out[k].failed;
                continue;
            }
            err.push_back(r->error_pct);
            con.push_back(r->avg_connectivity);
            mat.push_back(r->matrix_error);
        }
        out[k].error_pct = summarize(err);
        out[k].connectivity = summarize(con);
        out[k].matrix_error = summarize(mat);
    }
    return out;
}

ResultTable run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const auto points = expand(cfg);
    const std::size_t per_trial = cfg.algorithms.size();
    const std::size_t jobs_total = points.size() * cfg.trials;

    ResultTable table;
    table.rows.resize(jobs_total * per_trial);

    // Job k fills rows [k * per_trial, (k + 1) * per_trial); order is fixed up front.
    auto run_job = [&](std::size_t k) {
        const auto& point = points[k / cfg.trials];
        const std::size_t trial = k % cfg.trials;
        auto* slot = &table.rows[k * per_trial];
        try {
            auto results = run_trial(cfg, point, trial);
            for (std::size_t a = 0; a < per_trial; ++a) slot[a] = std::move(results[a]);
        } catch (const Error& e) {
            for (std::size_t a = 0; a < per_trial; ++a) {
                TrialResult r;
                r.algorithm = cfg.algorithms[a];
                r.topology = point.topology;
                r.n = node_count(point.topology, cfg.topology);
                r.num_anchors = point.num_anchors;
                r.radio_range = point.radio_range;
                r.range_error = point.range_error;
                r.trial = trial;
                r.avg_connectivity = kNaN;
                r.error_pct = kNaN;
                r.matrix_error = kNaN;
                r.resamples = kMaxResamples;
                r.seed = network_seed(cfg, point, trial);
                r.failure = e.what();
                slot[a] = std::move(r);
            }
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(cfg.jobs, jobs_total));
    if (workers == 1) {
        for (std::size_t k = 0; k < jobs_total; ++k) run_job(k);
        return table;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < jobs_total; k = next++) run_job(k);
        });
    for (auto& t : pool) t.join();
    return table;
}

void DistanceComparisonConfig::validate() const {
    if (nodes < kMinNodes) throw ParameterError("distance comparison needs at least 4 nodes");
    if (!(side > 0.0)) throw ParameterError("square side must be positive");
    require_non_empty(radio_ranges, "radio range");
    require_non_empty(range_errors, "range error");
    if (trials < 1) throw ParameterError("trials must be at least 1");
    for (auto e : range_errors) NoiseModel{e, noise_law}.validate();
}

std::vector<DistanceComparisonRow> run_distance_comparison(const DistanceComparisonConfig& cfg) {
    cfg.validate();
    std::vector<DistanceComparisonRow> rows;
    rows.reserve(cfg.radio_ranges.size() * cfg.range_errors.size() * cfg.trials);
    for (std::size_t r = 0; r < cfg.radio_ranges.size(); ++r) {
        for (std::size_t e = 0; e < cfg.range_errors.size(); ++e) {
            for (std::size_t t = 0; t < cfg.trials; ++t) {
                const double range = cfg.radio_ranges[r];
                const Seed seed = mix_seed(cfg.base_seed, {0x5a0au, r, e, t});
                const auto net = draw_connected([&](Seed s) { return gen_random_square(cfg.nodes, cfg.side, s); },
                                                range, NoiseModel{cfg.range_errors[e], cfg.noise_law}, seed);
                DistanceComparisonRow row;
                row.radio_range = range;
                row.range_error = cfg.range_errors[e];
                row.trial = t;
                row.avg_connectivity = avg_connectivity(net.graph);
                row.dijkstra_error = matrix_error(dijkstra_all_pairs(net.graph), *net.nodes, range);
                row.ha_error = matrix_error(ha_all_pairs(net.graph, range), *net.nodes, range);
                row.resamples = net.resamples;
                row.seed = seed;
                rows.push_back(row);
            }
        }
    }
    return rows;
}

}  // namespace imds
