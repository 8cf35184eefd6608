#include "imds/topology.hpp"

#include <cmath>
#include <string>

#include "imds/errors.hpp"

namespace imds {
namespace {

constexpr int kLosSamples = 100;
constexpr double kLosEpsilon = 1e-9;

void require_nodes(std::size_t n) {
    if (n < kMinNodes)
        throw ParameterError("node count must be at least " + std::to_string(kMinNodes) + ", got " +
                             std::to_string(n));
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError(std::string(what) + " must be positive and finite");
}

}  // namespace

double TerrainSpec::height(double x, double y) const {
    const double dx = x - center.x();
    const double dy = y - center.y();
    return peak_height * std::exp(-(dx * dx + dy * dy) / (2.0 * spread * spread));
}

void TerrainSpec::validate() const {
    require_positive(spread, "terrain spread");
    require_positive(base_side, "terrain base side");
    if (!(antenna_height >= 0.0) || !std::isfinite(antenna_height))
        throw ParameterError("antenna height must be non-negative");
    if (!std::isfinite(peak_height) || !center.allFinite()) throw ParameterError("terrain parameters must be finite");
}

TerrainSpec TerrainSpec::valley(double base_side) {
    return TerrainSpec{TerrainKind::valley, {base_side / 2, base_side / 2}, -40.0, 25.0, base_side, 2.0};
}

TerrainSpec TerrainSpec::mountain(double base_side) {
    return TerrainSpec{TerrainKind::mountain, {base_side / 2, base_side / 2}, 40.0, 25.0, base_side, 2.0};
}

bool Bounds::contains(const Vec3& p, double tol) const {
    return (p.array() >= lo.array() - tol).all() && (p.array() <= hi.array() + tol).all();
}

NodeSet gen_random_cube(std::size_t n, double side, Seed seed) {
    require_nodes(n);
    require_positive(side, "cube side");
    Rng rng(seed);
    NodeSet out;
    out.bounds = {Vec3::Zero(), Vec3::Constant(side)};
    out.positions.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.uniform(0.0, side);
        const double y = rng.uniform(0.0, side);
        const double z = rng.uniform(0.0, side);
        out.positions.emplace_back(x, y, z);
    }
    return out;
}

NodeSet gen_random_square(std::size_t n, double side, Seed seed) {
    require_nodes(n);
    require_positive(side, "square side");
    Rng rng(seed);
    NodeSet out;
    out.bounds = {Vec3::Zero(), Vec3(side, side, 0.0)};
    out.positions.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.uniform(0.0, side);
        const double y = rng.uniform(0.0, side);
        out.positions.emplace_back(x, y, 0.0);
    }
    return out;
}

NodeSet gen_grid(std::size_t points_per_axis, double spacing) {
    if (points_per_axis < 2) throw ParameterError("grid needs at least 2 points per axis");
    require_positive(spacing, "grid spacing");
    const auto m = points_per_axis;
    NodeSet out;
    out.bounds = {Vec3::Zero(), Vec3::Constant(static_cast<double>(m - 1) * spacing)};
    out.positions.reserve(m * m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k)
                out.positions.emplace_back(static_cast<double>(i) * spacing, static_cast<double>(j) * spacing,
                                           static_cast<double>(k) * spacing);
    return out;
}

NodeSet gen_surface(const TerrainSpec& spec, std::size_t n, Seed seed) {
    require_nodes(n);
    spec.validate();
    Rng rng(seed);
    NodeSet out;
    const double zmin = std::min(spec.peak_height, 0.0);
    const double zmax = std::max(spec.peak_height, 0.0);
    out.bounds = {Vec3(0.0, 0.0, zmin), Vec3(spec.base_side, spec.base_side, zmax)};
    out.terrain = spec;
    out.positions.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.uniform(0.0, spec.base_side);
        const double y = rng.uniform(0.0, spec.base_side);
        out.positions.emplace_back(x, y, spec.height(x, y));
    }
    return out;
}

bool line_of_sight(const TerrainSpec& spec, const Vec3& p, const Vec3& q) {
    if (spec.kind == TerrainKind::valley) return true;
    // Walk from the lexicographically smaller endpoint so los(p, q) == los(q, p) bit-for-bit.
    const bool swap = std::lexicographical_compare(q.data(), q.data() + 3, p.data(), p.data() + 3);
    const Vec3& a = swap ? q : p;
    const Vec3& b = swap ? p : q;
    const Vec3 lift(0.0, 0.0, spec.antenna_height);
    const Vec3 from = a + lift;
    const Vec3 dir = b - a;
    for (int k = 1; k <= kLosSamples; ++k) {
        const double t = static_cast<double>(k) / (kLosSamples + 1);
        const Vec3 s = from + t * dir;
        if (!(s.z() > spec.height(s.x(), s.y()) + kLosEpsilon)) return false;
    }
    return true;
}

std::string_view to_string(TerrainKind kind) {
    return kind == TerrainKind::valley ? "valley" : "mountain";
}

}  // namespace imds
