#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "slantpath/atmosphere.hpp"
#include "slantpath/extinction.hpp"

namespace slantpath {

enum class SweepAxis {
    ZenithDeg,
    WavelengthNm,
};

struct SweepRow {
    double axis_value;
    double transmittance;
    double loss_db;
};

/// Result of a zenith or wavelength sweep; axis values strictly increasing.
struct SweepTable {
    SweepAxis axis;
    std::vector<SweepRow> rows;
};

/// Summary statistics of Monte Carlo state sampling. The geometric mean
/// converges to the effective (probability-weighted) transmittance; the
/// arithmetic mean is never below it.
struct MonteCarloStats {
    std::uint64_t samples = 0;
    double mean_transmittance = 1.0;
    double geometric_mean_transmittance = 1.0;
    double p05 = 1.0;
    double p50 = 1.0;
    double p95 = 1.0;
    /// Sample standard deviation of ln(transmittance); 0 for deterministic
    /// profiles. Used for convergence bounds on the geometric mean.
    double log_std = 0.0;
    std::uint64_t seed = 0;
};

/// One perturbation experiment: the loss change caused by moving a slab
/// boundary or re-weighting a state probability.
struct SensitivityReport {
    std::string perturbation;
    double baseline_loss_db = 0.0;
    double perturbed_loss_db = 0.0;
    double delta_db = 0.0;
    /// False when the requested shift would invert a slab; the numeric fields
    /// are NaN in that case.
    bool feasible = true;
};

/// One sampled atmosphere realization: the state drawn per slab and the
/// resulting deterministic-presence transmittance.
struct Realization {
    std::vector<std::string> state_labels;
    double transmittance = 1.0;
};

/// Effective transmittance at each grid point. Grid must be strictly
/// increasing within [0, 85] degrees. Parallelized over grid points.
SweepTable sweep_zenith(const AtmosphereProfile& profile,
                        std::span<const double> zenith_grid_deg);

/// Serial twin of sweep_zenith; produces bitwise-identical tables.
SweepTable sweep_zenith_reference(const AtmosphereProfile& profile,
                                  std::span<const double> zenith_grid_deg);

/// Rescales every state's extinction to each wavelength (Kim ratio anchored
/// at 1550 nm) and evaluates the effective transmittance at the given zenith
/// angle. States need a visibility unless the grid point is exactly 1550 nm;
/// a missing one raises ConfigError naming the state.
SweepTable sweep_wavelength(const AtmosphereProfile& profile,
                            std::span<const double> wavelength_grid_nm,
                            double zenith_deg);

/// Serial twin of sweep_wavelength; produces bitwise-identical tables.
SweepTable sweep_wavelength_reference(const AtmosphereProfile& profile,
                                      std::span<const double> wavelength_grid_nm,
                                      double zenith_deg);

/// Profile with every state's extinction carried to the given wavelength.
AtmosphereProfile rescale_profile_to_wavelength(const AtmosphereProfile& profile,
                                                Wavelength wavelength);

/// Draws one state per slab from the (seed, sample_index, slab_index)
/// substreams and multiplies the per-slab deterministic-presence
/// transmittances.
Realization sample_realization(const AtmosphereProfile& profile,
                               double zenith_deg, std::uint64_t seed,
                               std::uint64_t sample_index = 0);

/// Samples n realizations and reports arithmetic mean, geometric mean,
/// quantiles (nearest-rank p05/p50/p95), and the log-sample spread.
/// Reproducible from the seed under any parallel schedule; parallelized over
/// sample indices.
MonteCarloStats monte_carlo(const AtmosphereProfile& profile, double zenith_deg,
                            std::uint64_t n, std::uint64_t seed);

/// Serial twin of monte_carlo; produces bitwise-identical statistics.
MonteCarloStats monte_carlo_reference(const AtmosphereProfile& profile,
                                      double zenith_deg, std::uint64_t n,
                                      std::uint64_t seed);

/// For each interior boundary of the clipped profile, shifts the boundary by
/// +delta and -delta (adjacent extents adjust oppositely, state sets stay) and
/// reports the loss change. A shift that would invert a slab is reported
/// infeasible; one that shrinks it to exactly zero extent removes the slab.
std::vector<SensitivityReport> boundary_sensitivity(
    const AtmosphereProfile& profile, const LinkGeometry& geometry,
    double delta_km, double zenith_deg);

/// For each multi-state slab of the clipped profile and each of its states,
/// scales that state's probability by (1 +/- fraction), clamps to [0, 1],
/// renormalizes the complement proportionally, and reports the loss change.
/// Single-state slabs are skipped (the perturbation is undefined under
/// normalization).
std::vector<SensitivityReport> probability_sensitivity(
    const AtmosphereProfile& profile, const LinkGeometry& geometry,
    double fraction, double zenith_deg);

/// tx_power - fixed_losses - total_loss_db(profile, zenith) - rx_sensitivity.
double link_margin_db(const AtmosphereProfile& profile, double zenith_deg,
                      double tx_power_dbm, double rx_sensitivity_dbm,
                      double fixed_losses_db);

}  // namespace slantpath
