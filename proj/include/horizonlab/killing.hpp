#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "horizonlab/horizons.hpp"

namespace horizonlab {

/// Per-cell components (X^t, X^x) in the (t, x) chart.
struct VectorFieldGrid {
    std::vector<std::array<double, 2>> components;
    const std::array<double, 2>& at(std::size_t i) const { return components[i]; }
};

/// Samples X at the cell centres of every passable cell (zero elsewhere).
VectorFieldGrid sample_field(const GridSpacetime& st, const std::function<std::array<double, 2>(double t, double x)>& X);

/// Named fields: "dt", "dx", "boost" (x dt + t dx), "x_dx" (x dx).
VectorFieldGrid named_field(const GridSpacetime& st, const std::string& name);

/// Max over interior cells (all four neighbours in the domain) of the largest
/// component of the Lie derivative of g along X, by central differences.
double killing_residual(const GridSpacetime& st, const VectorFieldGrid& X);

inline constexpr double kNullBandTolerance = 1e-6;

struct CharacterMasks {
    RegionMask spacelike;
    RegionMask timelike;
    RegionMask null_band;
};

/// Sign of g(X, X) per cell; |g(X, X)| below tol * (largest |g_ab|) * |X|^2 is null.
CharacterMasks causal_character_masks(const GridSpacetime& st, const VectorFieldGrid& X,
                                      double tol = kNullBandTolerance);

enum class KillingHorizonKind : std::uint8_t { NotKilling, None, Strong, Ultrastrong };

const char* to_string(KillingHorizonKind k);

struct KillingHorizonParams {
    /// Residual allowed, relative to max |g_ab| * max |X|.
    double residual_tolerance = 1e-9;
    double null_tolerance = kNullBandTolerance;
    /// Bound on slice diameters; negative selects half the coordinate diameter of the domain.
    double diameter_bound = -1.0;
};

struct KillingHorizonReport {
    KillingHorizonKind kind = KillingHorizonKind::None;
    double residual = 0.0;
    bool nonempty = false;
    bool connected = false;
    bool future_set = false;
    bool spatially_bounded = false;
    bool spatially_compact = false;
    double max_slice_diameter = 0.0;  ///< induced length of the widest slice piece
    double diameter_bound = 0.0;
    RegionMask region;                ///< the spacelike mask; its boundary cells form the horizon
};

/// Slices are the levels of the model's foliation; a slice piece is a
/// 4-connected component of (level set) intersected with the mask, measured by
/// sum of sqrt(|g_xx|) * spacing over its cells.
KillingHorizonReport killing_horizon_detect(const CausalModel& model, const VectorFieldGrid& X,
                                            KillingHorizonParams params = {});

}  // namespace horizonlab
