#include "imds/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "imds/errors.hpp"

namespace imds {
namespace {

std::string full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> fields(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

double number(const std::string& s, std::size_t line_no) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0') throw IoError("line " + std::to_string(line_no) + ": bad number '" + s + "'");
    return v;
}

std::size_t index(const std::string& s, std::size_t line_no) {
    const double v = number(s, line_no);
    if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
        throw IoError("line " + std::to_string(line_no) + ": bad index '" + s + "'");
    return static_cast<std::size_t>(v);
}

bool next_data_line(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return true;
    }
    return false;
}

void expect_header(std::istream& in, const std::string& header, std::size_t& line_no) {
    std::string line;
    if (!next_data_line(in, line, line_no) || line != header)
        throw IoError("expected header '" + header + "', got '" + line + "'");
}

void write_rows(const Eigen::MatrixXd& coords, std::ostream& out) {
    out << "id,x,y,z\n";
    for (Eigen::Index i = 0; i < coords.rows(); ++i) {
        out << i;
        for (Eigen::Index k = 0; k < 3; ++k) out << ',' << full(k < coords.cols() ? coords(i, k) : 0.0);
        out << '\n';
    }
}

}  // namespace

void write_nodes_csv(const NodeSet& nodes, std::ostream& out) {
    out << "id,x,y,z\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& p = nodes.positions[i];
        out << i << ',' << full(p.x()) << ',' << full(p.y()) << ',' << full(p.z()) << '\n';
    }
}

NodeSet read_nodes_csv(std::istream& in) {
    std::size_t line_no = 0;
    expect_header(in, "id,x,y,z", line_no);
    NodeSet nodes;
    std::string line;
    while (next_data_line(in, line, line_no)) {
        const auto f = fields(line);
        if (f.size() != 4) throw IoError("line " + std::to_string(line_no) + ": expected id,x,y,z");
        if (index(f[0], line_no) != nodes.size())
            throw IoError("line " + std::to_string(line_no) + ": node ids must be 0..n-1 in order");
        nodes.positions.emplace_back(number(f[1], line_no), number(f[2], line_no), number(f[3], line_no));
    }
    if (nodes.positions.empty()) throw IoError("node file has no rows");
    nodes.bounds = {nodes.positions.front(), nodes.positions.front()};
    for (const auto& p : nodes.positions) {
        nodes.bounds.lo = nodes.bounds.lo.cwiseMin(p);
        nodes.bounds.hi = nodes.bounds.hi.cwiseMax(p);
    }
    return nodes;
}

void write_edges_csv(const RangeGraph& graph, std::ostream& out) {
    out << "i,j,measured_distance\n";
    for (const auto& e : graph.edges()) out << e.i << ',' << e.j << ',' << full(e.measured) << '\n';
}

RangeGraph read_edges_csv(std::istream& in, std::size_t n, double radio_range) {
    std::size_t line_no = 0;
    expect_header(in, "i,j,measured_distance", line_no);
    std::vector<Edge> edges;
    std::size_t max_id = 0;
    std::string line;
    while (next_data_line(in, line, line_no)) {
        const auto f = fields(line);
        if (f.size() != 3) throw IoError("line " + std::to_string(line_no) + ": expected i,j,measured_distance");
        Edge e{index(f[0], line_no), index(f[1], line_no), number(f[2], line_no)};
        max_id = std::max({max_id, e.i, e.j});
        edges.push_back(e);
    }
    if (n == 0) n = edges.empty() ? 0 : max_id + 1;
    return RangeGraph(n, radio_range, std::move(edges));
}

void write_distance_matrix_csv(const DistanceMatrix& d, std::ostream& out) {
    const auto n = d.values.rows();
    out << n << '\n';
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) out << (j ? "," : "") << full(d.values(i, j));
        out << '\n';
    }
}

DistanceMatrix read_distance_matrix_csv(std::istream& in) {
    std::size_t line_no = 0;
    std::string line;
    if (!next_data_line(in, line, line_no)) throw IoError("empty distance matrix file");
    const auto n = static_cast<Eigen::Index>(index(line, line_no));
    DistanceMatrix d{Eigen::MatrixXd(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!next_data_line(in, line, line_no)) throw IoError("distance matrix has too few rows");
        const auto f = fields(line);
        if (static_cast<Eigen::Index>(f.size()) != n)
            throw IoError("line " + std::to_string(line_no) + ": expected " + std::to_string(n) + " values");
        for (Eigen::Index j = 0; j < n; ++j) d.values(i, j) = number(f[static_cast<std::size_t>(j)], line_no);
    }
    return d;
}

void write_map_csv(const AbsoluteMap& map, std::ostream& out) {
    write_rows(map.coords, out);
}

void write_relative_map(const RelativeMap& map, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    write_rows(map.coords, out);
    std::ofstream side(path.string() + ".eig");
    if (!side) throw IoError("cannot open eigenvalue sidecar for '" + path.string() + "'");
    for (Eigen::Index k = 0; k < map.eigenvalues.size(); ++k) side << (k ? "," : "") << full(map.eigenvalues(k));
    side << '\n';
    if (!out || !side) throw IoError("write to '" + path.string() + "' failed");
}

nlohmann::json to_json(const RigidTransform& transform) {
    nlohmann::json rotation = nlohmann::json::array();
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) rotation.push_back(transform.rotation(r, c));
    return {
        {"rotation", rotation},
        {"translation", {transform.translation.x(), transform.translation.y(), transform.translation.z()}},
        {"residual", transform.residual},
        {"degenerate", transform.degenerate},
    };
}

}  // namespace imds
