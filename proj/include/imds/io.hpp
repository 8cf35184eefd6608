#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>

#include <nlohmann/json.hpp>

#include "imds/alignment.hpp"
#include "imds/distance_matrix.hpp"
#include "imds/mds.hpp"
#include "imds/ranging.hpp"
#include "imds/topology.hpp"

namespace imds {

// Node coordinates: header `id,x,y,z`, 17 significant digits.
void write_nodes_csv(const NodeSet& nodes, std::ostream& out);
/// Ids must run 0..n-1 in order. Bounds are the bounding box of the points.
NodeSet read_nodes_csv(std::istream& in);

// Edge list: header `i,j,measured_distance`.
void write_edges_csv(const RangeGraph& graph, std::ostream& out);
/// `n` fixes the node count; 0 infers it from the largest id.
RangeGraph read_edges_csv(std::istream& in, std::size_t n, double radio_range);

// Distance matrix: first line is n, then n rows of n values.
void write_distance_matrix_csv(const DistanceMatrix& d, std::ostream& out);
DistanceMatrix read_distance_matrix_csv(std::istream& in);

void write_map_csv(const AbsoluteMap& map, std::ostream& out);

/// Writes `path` (id,x,y,z) and `path` + ".eig" holding the retained eigenvalues on one line.
void write_relative_map(const RelativeMap& map, const std::filesystem::path& path);

/// {"rotation": [9 values, row-major], "translation": [3 values], ...}
nlohmann::json to_json(const RigidTransform& transform);

}  // namespace imds
