#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "imds/errors.hpp"
#include "imds/harness.hpp"

namespace imds {
namespace {

constexpr const char* kResultHeader =
    "topology,n,R,num_anchors,e_r,trial,algorithm,avg_connectivity,error_pct,matrix_error,resamples,seed";
constexpr const char* kAggregateHeader =
    "topology,n,R,num_anchors,e_r,algorithm,trials,failed,mean_connectivity,mean_error_pct,std_error_pct,"
    "mean_matrix_error";

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    for (;;) {
        const auto pos = s.find(sep);
        out.push_back(trim(s.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        s.remove_prefix(pos + 1);
    }
    return out;
}

double to_double(std::string_view s, std::string_view what) {
    s = trim(s);
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    // strtod: from_chars for double needs a newer libstdc++ than some targets ship.
    const std::string buf(s);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size())
        throw ParameterError("bad number '" + buf + "' for " + std::string(what));
    return v;
}

std::uint64_t to_unsigned(std::string_view s, std::string_view what) {
    s = trim(s);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ParameterError("bad non-negative integer '" + std::string(s) + "' for " + std::string(what));
    return v;
}

template <typename T, typename Parse>
std::vector<T> parse_list(std::string_view value, Parse parse) {
    std::vector<T> out;
    for (auto item : split(value, ','))
        if (!item.empty()) out.push_back(parse(item));
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

void check_written(std::ostream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void expect_header(std::istream& in, const char* header) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != header) throw IoError("unexpected CSV header: '" + line + "'");
}

}  // namespace

void write_csv(const ResultTable& table, std::ostream& out) {
    out << kResultHeader << '\n';
    for (const auto& r : table.rows) {
        out << to_string(r.topology) << ',' << r.n << ',' << format_decimal(r.radio_range) << ',' << r.num_anchors
            << ',' << format_decimal(r.range_error) << ',' << r.trial << ',' << to_string(r.algorithm) << ','
            << format_decimal(r.avg_connectivity) << ',' << format_decimal(r.error_pct) << ','
            << format_decimal(r.matrix_error) << ',' << r.resamples << ',' << r.seed << '\n';
    }
}

void write_csv(const ResultTable& table, const std::filesystem::path& path) {
    auto out = open_out(path);
    write_csv(table, out);
    check_written(out, path);
}

ResultTable read_csv(std::istream& in) {
    expect_header(in, kResultHeader);
    ResultTable table;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 12) throw IoError("line " + std::to_string(line_no) + ": expected 12 fields");
        TrialResult r;
        const auto topo = parse_topology(f[0]);
        const auto algo = parse_algorithm(f[6]);
        if (!topo || !algo) throw IoError("line " + std::to_string(line_no) + ": unknown topology or algorithm");
        r.topology = *topo;
        r.n = to_unsigned(f[1], "n");
        r.radio_range = to_double(f[2], "R");
        r.num_anchors = to_unsigned(f[3], "num_anchors");
        r.range_error = to_double(f[4], "e_r");
        r.trial = to_unsigned(f[5], "trial");
        r.algorithm = *algo;
        r.avg_connectivity = to_double(f[7], "avg_connectivity");
        r.error_pct = to_double(f[8], "error_pct");
        r.matrix_error = to_double(f[9], "matrix_error");
        r.resamples = to_unsigned(f[10], "resamples");
        r.seed = to_unsigned(f[11], "seed");
        if (std::isnan(r.error_pct)) r.failure = "failed trial";
        table.rows.push_back(std::move(r));
    }
    return table;
}

ResultTable read_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_csv(in);
}

void write_aggregates_csv(const std::vector<Aggregate>& aggregates, std::ostream& out) {
    out << kAggregateHeader << '\n';
    for (const auto& a : aggregates) {
        out << to_string(a.topology) << ',' << a.n << ',' << format_decimal(a.radio_range) << ',' << a.num_anchors
            << ',' << format_decimal(a.range_error) << ',' << to_string(a.algorithm) << ',' << a.error_pct.count
            << ',' << a.failed << ',' << format_decimal(a.connectivity.mean) << ','
            << format_decimal(a.error_pct.mean) << ',' << format_decimal(a.error_pct.stddev) << ','
            << format_decimal(a.matrix_error.mean) << '\n';
    }
}

void write_aggregates_csv(const std::vector<Aggregate>& aggregates, const std::filesystem::path& path) {
    auto out = open_out(path);
    write_aggregates_csv(aggregates, out);
    check_written(out, path);
}

std::vector<Aggregate> read_aggregates_csv(std::istream& in) {
    expect_header(in, kAggregateHeader);
    std::vector<Aggregate> out;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 12) throw IoError("aggregate CSV: expected 12 fields");
        Aggregate a;
        const auto topo = parse_topology(f[0]);
        const auto algo = parse_algorithm(f[5]);
        if (!topo || !algo) throw IoError("aggregate CSV: unknown topology or algorithm");
        a.topology = *topo;
        a.n = to_unsigned(f[1], "n");
        a.radio_range = to_double(f[2], "R");
        a.num_anchors = to_unsigned(f[3], "num_anchors");
        a.range_error = to_double(f[4], "e_r");
        a.algorithm = *algo;
        a.error_pct.count = a.connectivity.count = a.matrix_error.count = to_unsigned(f[6], "trials");
        a.failed = to_unsigned(f[7], "failed");
        a.connectivity.mean = to_double(f[8], "mean_connectivity");
        a.error_pct.mean = to_double(f[9], "mean_error_pct");
        a.error_pct.stddev = to_double(f[10], "std_error_pct");
        a.matrix_error.mean = to_double(f[11], "mean_matrix_error");
        out.push_back(a);
    }
    return out;
}

void write_plot_script(const std::vector<Aggregate>& aggregates, std::ostream& out) {
    // Curve key: (topology, e_r, anchors) -> algorithm -> points sorted by R.
    struct Key {
        TopologyKind topology;
        double range_error;
        std::size_t anchors;
        auto operator<=>(const Key&) const = default;
    };
    std::map<Key, std::map<Algorithm, std::vector<const Aggregate*>>> charts;
    for (const auto& a : aggregates) charts[{a.topology, a.range_error, a.num_anchors}][a.algorithm].push_back(&a);

    out << "# Estimation error versus average connectivity.\n"
        << "# Run with: gnuplot <this file>\n"
        << "set terminal pngcairo size 800,600\n"
        << "set xlabel 'average connectivity'\n"
        << "set ylabel 'estimation error (% of R)'\n"
        << "set key top right\n"
        << "set grid\n";
    std::size_t block = 0;
    for (const auto& [key, curves] : charts) {
        const std::string tag = std::string(to_string(key.topology)) + "_er" + format_decimal(key.range_error, 3) +
                                "_N" + std::to_string(key.anchors);
        std::vector<std::pair<Algorithm, std::string>> names;
        for (const auto& [algorithm, points] : curves) {
            const std::string name = "$d" + std::to_string(block++);
            auto sorted = points;
            std::sort(sorted.begin(), sorted.end(),
                      [](const Aggregate* a, const Aggregate* b) { return a->radio_range < b->radio_range; });
            out << name << " << EOD\n";
            for (const auto* a : sorted)
                out << format_decimal(a->connectivity.mean) << ' ' << format_decimal(a->error_pct.mean) << ' '
                    << format_decimal(a->error_pct.stddev) << '\n';
            out << "EOD\n";
            names.emplace_back(algorithm, name);
        }
        out << "set output '" << tag << ".png'\n"
            << "set title '" << to_string(key.topology) << ", e_r = " << format_decimal(key.range_error, 3)
            << " R, " << key.anchors << " anchors' noenhanced\n"
            << "plot ";
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (i) out << ", \\\n     ";
            out << names[i].second << " using 1:2 with linespoints title '"
                << (names[i].first == Algorithm::imds ? "IMDS" : "MDS-MAP") << "'";
        }
        out << "\n";
    }
}

Settings read_settings(std::istream& in) {
    Settings out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw ParameterError("config line " + std::to_string(line_no) + ": expected key = value");
        out.emplace_back(std::string(trim(view.substr(0, eq))), std::string(trim(view.substr(eq + 1))));
    }
    return out;
}

bool apply_setting(SweepConfig& cfg, std::string_view key, std::string_view value) {
    auto number = [&](std::string_view s) { return to_double(s, key); };
    auto count = [&](std::string_view s) { return static_cast<std::size_t>(to_unsigned(s, key)); };
    if (key == "topologies") {
        cfg.topologies = parse_list<TopologyKind>(value, [&](std::string_view s) {
            const auto t = parse_topology(s);
            if (!t) throw ParameterError("unknown topology '" + std::string(s) + "'");
            return *t;
        });
    } else if (key == "algorithms") {
        cfg.algorithms = parse_list<Algorithm>(value, [&](std::string_view s) {
            const auto a = parse_algorithm(s);
            if (!a) throw ParameterError("unknown algorithm '" + std::string(s) + "'");
            return *a;
        });
    } else if (key == "anchors") {
        cfg.anchor_counts = parse_list<std::size_t>(value, count);
    } else if (key == "ranges") {
        cfg.radio_ranges = parse_list<double>(value, number);
    } else if (key == "errors") {
        cfg.range_errors = parse_list<double>(value, number);
    } else if (key == "trials") {
        cfg.trials = count(value);
    } else if (key == "seed") {
        cfg.base_seed = to_unsigned(value, key);
    } else if (key == "jobs") {
        cfg.jobs = count(value);
    } else if (key == "noise") {
        if (value == "inflating") cfg.noise_law = NoiseLaw::inflating;
        else if (value == "symmetric") cfg.noise_law = NoiseLaw::symmetric;
        else throw ParameterError("noise must be 'inflating' or 'symmetric'");
    } else if (key == "cube_nodes") {
        cfg.topology.cube_nodes = count(value);
    } else if (key == "cube_side") {
        cfg.topology.cube_side = number(value);
    } else if (key == "grid_per_axis") {
        cfg.topology.grid_per_axis = count(value);
    } else if (key == "grid_spacing") {
        cfg.topology.grid_spacing = number(value);
    } else if (key == "surface_nodes") {
        cfg.topology.surface_nodes = count(value);
    } else if (key == "base_side") {
        const double side = number(value);
        for (auto* t : {&cfg.topology.valley, &cfg.topology.mountain}) {
            t->base_side = side;
            t->center = {side / 2, side / 2};
        }
    } else if (key == "valley_height") {
        cfg.topology.valley.peak_height = number(value);
    } else if (key == "mountain_height") {
        cfg.topology.mountain.peak_height = number(value);
    } else if (key == "terrain_spread") {
        cfg.topology.valley.spread = cfg.topology.mountain.spread = number(value);
    } else if (key == "antenna_height") {
        cfg.topology.valley.antenna_height = cfg.topology.mountain.antenna_height = number(value);
    } else {
        return false;
    }
    return true;
}

SweepConfig parse_sweep_config(std::istream& in, SweepConfig base) {
    for (const auto& [key, value] : read_settings(in))
        if (!apply_setting(base, key, value)) throw ParameterError("unknown configuration key '" + key + "'");
    base.validate();
    return base;
}

SweepConfig load_sweep_config(const std::filesystem::path& path, SweepConfig base) {
    auto in = open_in(path);
    return parse_sweep_config(in, std::move(base));
}

void write_csv(const std::vector<DistanceComparisonRow>& rows, std::ostream& out) {
    out << "R,e_r,trial,avg_connectivity,dijkstra_error,ha_error,resamples,seed\n";
    for (const auto& r : rows)
        out << format_decimal(r.radio_range) << ',' << format_decimal(r.range_error) << ',' << r.trial << ','
            << format_decimal(r.avg_connectivity) << ',' << format_decimal(r.dijkstra_error) << ','
            << format_decimal(r.ha_error) << ',' << r.resamples << ',' << r.seed << '\n';
}

}  // namespace imds
