#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "imds/random.hpp"

namespace imds {

using Vec3 = Eigen::Vector3d;

enum class TerrainKind { valley, mountain };

/// Single Gaussian bump (mountain) or bowl (valley) over a square base.
///
/// h(x, y) = peak_height * exp(-((x - cx)^2 + (y - cy)^2) / (2 spread^2)).
/// A valley carries a negative peak_height.
struct TerrainSpec {
    TerrainKind kind = TerrainKind::mountain;
    Eigen::Vector2d center{50.0, 50.0};
    double peak_height = 40.0;
    double spread = 25.0;
    double base_side = 100.0;
    double antenna_height = 2.0;  ///< radios sit this far above the ground for line-of-sight tests

    double height(double x, double y) const;
    void validate() const;

    static TerrainSpec valley(double base_side = 100.0);
    static TerrainSpec mountain(double base_side = 100.0);
};

/// Axis-aligned box every node must lie in.
struct Bounds {
    Vec3 lo = Vec3::Zero();
    Vec3 hi = Vec3::Zero();

    bool contains(const Vec3& p, double tol = 0.0) const;
};

/// Ground-truth positions of a deployment, in units of r.
struct NodeSet {
    std::vector<Vec3> positions;
    Bounds bounds;
    std::optional<TerrainSpec> terrain;

    std::size_t size() const noexcept { return positions.size(); }
};

inline constexpr std::size_t kMinNodes = 4;

NodeSet gen_random_cube(std::size_t n, double side, Seed seed);

/// Planar deployment (z = 0) over [0, side]^2.
NodeSet gen_random_square(std::size_t n, double side, Seed seed);

/// Lattice in row-major (x slowest, z fastest) order.
NodeSet gen_grid(std::size_t points_per_axis, double spacing);

NodeSet gen_surface(const TerrainSpec& spec, std::size_t n, Seed seed);

/// True iff the chord between the two antennas (p and q raised by
/// antenna_height) clears the terrain at every sampled interior point.
/// Always true for valleys.
bool line_of_sight(const TerrainSpec& spec, const Vec3& p, const Vec3& q);

std::string_view to_string(TerrainKind kind);

}  // namespace imds
