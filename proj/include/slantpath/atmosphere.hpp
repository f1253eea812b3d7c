#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "slantpath/errors.hpp"
#include "slantpath/units.hpp"

namespace slantpath {

/// Largest zenith angle the flat-slab secant geometry is trusted for.
/// The model diverges at 90 degrees and ignores Earth curvature well before.
inline constexpr double kMaxZenithDeg = 85.0;

/// Tolerance on the per-slab occurrence-probability sum.
inline constexpr double kProbabilityTolerance = 1e-6;

/// One mutually exclusive weather state inside a slab: an extinction
/// coefficient together with the long-term fraction of time it applies.
struct LayerState {
    std::string label;
    ExtinctionCoefficient attenuation;
    double probability = 1.0;
    /// Meteorological visibility, used only for wavelength scaling.
    std::optional<double> visibility_km;

    bool operator==(const LayerState&) const = default;
};

/// One horizontally uniform atmosphere layer.
struct Slab {
    double base_km = 0.0;
    double top_km = 0.0;
    std::vector<LayerState> states;

    double extent_km() const { return top_km - base_km; }

    bool operator==(const Slab&) const = default;
};

/// How extinction values enter the exponent.
///   Paper:    the stored numeric value is exponentiated as-is, reproducing
///             results computed directly from dB/km coefficient tables.
///   Physical: values tagged dB/km are converted to natural units (1/km)
///             first, so exp(-x) is dimensionally consistent.
enum class EvalMode {
    Paper,
    Physical,
};

/// Ordered, non-overlapping stack of slabs plus the evaluation mode.
struct AtmosphereProfile {
    std::string name;
    std::vector<Slab> slabs;
    EvalMode mode = EvalMode::Physical;

    bool operator==(const AtmosphereProfile&) const = default;
};

/// Endpoints of a slant link. A missing platform altitude means the platform
/// sits above the whole profile (ground-satellite case).
struct LinkGeometry {
    double zenith_deg = 0.0;
    double ground_km = 0.0;
    std::optional<double> platform_km;
};

struct TransmittanceResult {
    double transmittance = 1.0;
    double loss_db = 0.0;
    /// The non-negative value actually exponentiated, in the active mode's units.
    double exponent = 0.0;
};

/// One violated profile invariant.
struct Violation {
    std::optional<std::size_t> slab_index;
    std::string rule;
    std::string message;
};

/// sec(zenith) for the flat-slab slant geometry. Throws GeometryError outside
/// [0, 85] degrees.
double secant_of_zenith(double zenith_deg);

/// Transmittance of a single slab occupied by one state with certainty:
/// exp(-sec(zenith) * extinction * extent). The state's occurrence probability
/// is not applied here.
double slab_transmittance(const LayerState& state, double extent_km,
                          double zenith_deg, EvalMode mode);

/// End-to-end transmittance of a profile whose slabs each hold exactly one
/// state; the state's probability weights the exponent. Slab probability sums
/// are not required to be normalized on this route.
TransmittanceResult path_transmittance(const AtmosphereProfile& profile,
                                       double zenith_deg);

/// Probability-weighted end-to-end transmittance over all slabs and states:
/// exp(-sec(zenith) * sum_j sum_k eta_jk * extinction_jk * extent_j).
/// Requires a fully valid profile (per-slab probabilities sum to 1).
TransmittanceResult effective_transmittance(const AtmosphereProfile& profile,
                                            double zenith_deg);

/// -10*log10 of the effective transmittance. In Physical mode with dB/km
/// inputs this equals sec(zenith) * sum eta * att_db * extent.
double total_loss_db(const AtmosphereProfile& profile, double zenith_deg);

/// Intersects every slab with [ground, platform]. Boundary slabs shrink to the
/// intersection, empty ones are dropped; state sets and probabilities are kept
/// as-is. A missing platform keeps the profile's full vertical extent.
AtmosphereProfile clip_profile(const AtmosphereProfile& profile,
                               const LinkGeometry& geometry);

/// Reports every violated Slab/AtmosphereProfile invariant. Empty report iff
/// the profile is valid.
std::vector<Violation> validate_profile(const AtmosphereProfile& profile);

namespace detail {

/// Extinction value as it enters the exponent under the given mode.
double mode_value(const ExtinctionCoefficient& c, EvalMode mode);

/// sum_j sum_k eta_jk * mode_value(omega_jk) * extent_j, accumulated in slab
/// then state order. No validation.
double exponent_sum(const AtmosphereProfile& profile);

/// Builds a TransmittanceResult from a non-negative exponent.
TransmittanceResult result_from_exponent(double exponent);

/// Throws ValidationError on the first violation. When require_normalization
/// is false, per-slab probability sums are not checked (single-state route).
void ensure_valid(const AtmosphereProfile& profile, bool require_normalization);

}  // namespace detail

}  // namespace slantpath
