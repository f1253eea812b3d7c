#include "slantpath/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "slantpath/numformat.hpp"
#include "slantpath/rng.hpp"

namespace slantpath {

namespace {

void check_grid(std::span<const double> grid, const char* axis) {
    if (grid.empty()) {
        throw DomainError(std::string(axis) + " grid is empty");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) {
            throw DomainError(std::string(axis) + " grid contains a non-finite value");
        }
        if (i > 0 && grid[i] <= grid[i - 1]) {
            throw DomainError(std::string(axis) + " grid must be strictly increasing");
        }
    }
}

// Draws the state index for one slab from a uniform variate in [0, 1).
std::size_t draw_state_index(const Slab& slab, double u) {
    double cumulative = 0.0;
    for (std::size_t k = 0; k + 1 < slab.states.size(); ++k) {
        cumulative += slab.states[k].probability;
        if (u < cumulative) return k;
    }
    return slab.states.size() - 1;
}

// Product of per-slab deterministic-presence transmittances for one sampled
// realization. Optionally records the chosen state indices.
double realize_transmittance(const AtmosphereProfile& profile, double sec,
                             std::uint64_t seed, std::uint64_t sample_index,
                             std::vector<std::size_t>* picks = nullptr) {
    double transmittance = 1.0;
    for (std::size_t j = 0; j < profile.slabs.size(); ++j) {
        const Slab& slab = profile.slabs[j];
        const double u = rng::uniform01(seed, sample_index, j);
        const std::size_t k = draw_state_index(slab, u);
        transmittance *=
            std::exp(-sec * detail::mode_value(slab.states[k].attenuation,
                                               profile.mode) *
                     slab.extent_km());
        if (picks) picks->push_back(k);
    }
    return transmittance;
}

bool all_slabs_deterministic(const AtmosphereProfile& profile) {
    for (const Slab& slab : profile.slabs) {
        if (slab.states.size() != 1) return false;
    }
    return true;
}

// Nearest-rank quantile of an ascending-sorted sample.
double quantile(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
    if (rank < 1) rank = 1;
    if (rank > n) rank = n;
    return sorted[rank - 1];
}

// Index-ordered reductions keep the statistics independent of how the sample
// vector was filled.
MonteCarloStats assemble_stats(std::vector<double> samples, std::uint64_t seed) {
    const std::size_t n = samples.size();
    MonteCarloStats stats;
    stats.samples = n;
    stats.seed = seed;

    double sum = 0.0;
    double log_sum = 0.0;
    for (const double t : samples) {
        sum += t;
        log_sum += std::log(t);
    }
    const double log_mean = log_sum / static_cast<double>(n);
    stats.mean_transmittance = sum / static_cast<double>(n);
    stats.geometric_mean_transmittance = std::exp(log_mean);

    double sq_dev = 0.0;
    for (const double t : samples) {
        const double d = std::log(t) - log_mean;
        sq_dev += d * d;
    }
    stats.log_std = n > 1 ? std::sqrt(sq_dev / static_cast<double>(n - 1)) : 0.0;

    std::sort(samples.begin(), samples.end());
    stats.p05 = quantile(samples, 0.05);
    stats.p50 = quantile(samples, 0.50);
    stats.p95 = quantile(samples, 0.95);
    return stats;
}

MonteCarloStats degenerate_stats(const AtmosphereProfile& profile, double sec,
                                 std::uint64_t n, std::uint64_t seed) {
    const double t = realize_transmittance(profile, sec, seed, 0);
    MonteCarloStats stats;
    stats.samples = n;
    stats.seed = seed;
    stats.mean_transmittance = t;
    stats.geometric_mean_transmittance = t;
    stats.p05 = stats.p50 = stats.p95 = t;
    stats.log_std = 0.0;
    return stats;
}

void check_sample_count(std::uint64_t n) {
    if (n == 0) {
        throw DomainError("sample count must be at least 1");
    }
}

std::string boundary_description(double boundary_km, double signed_delta_km) {
    std::ostringstream out;
    out << "boundary " << format_compact(boundary_km) << " km "
        << (signed_delta_km >= 0 ? "+" : "-")
        << format_compact(std::abs(signed_delta_km)) << " km";
    return out.str();
}

}  // namespace

SweepTable sweep_zenith_reference(const AtmosphereProfile& profile,
                                  std::span<const double> zenith_grid_deg) {
    check_grid(zenith_grid_deg, "zenith");
    SweepTable table{SweepAxis::ZenithDeg, {}};
    table.rows.resize(zenith_grid_deg.size());
    for (std::size_t i = 0; i < zenith_grid_deg.size(); ++i) {
        const TransmittanceResult r = effective_transmittance(profile, zenith_grid_deg[i]);
        table.rows[i] = {zenith_grid_deg[i], r.transmittance, r.loss_db};
    }
    return table;
}

SweepTable sweep_zenith(const AtmosphereProfile& profile,
                        std::span<const double> zenith_grid_deg) {
    check_grid(zenith_grid_deg, "zenith");
    detail::ensure_valid(profile, /*require_normalization=*/true);
    for (const double z : zenith_grid_deg) {
        secant_of_zenith(z);  // range check before entering the parallel region
    }

    // The probability-weighted sum does not depend on the zenith angle.
    const double sum = detail::exponent_sum(profile);

    SweepTable table{SweepAxis::ZenithDeg, {}};
    table.rows.resize(zenith_grid_deg.size());
    SweepRow* rows = table.rows.data();
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(zenith_grid_deg.size()); ++i) {
        const double z = zenith_grid_deg[static_cast<std::size_t>(i)];
        const TransmittanceResult r =
            detail::result_from_exponent(secant_of_zenith(z) * sum);
        rows[i] = {z, r.transmittance, r.loss_db};
    }
    return table;
}

AtmosphereProfile rescale_profile_to_wavelength(const AtmosphereProfile& profile,
                                                Wavelength wavelength) {
    AtmosphereProfile scaled = profile;
    if (wavelength.nanometers() == Wavelength::kReferenceNm) {
        return scaled;  // exact identity; no visibility needed
    }
    for (Slab& slab : scaled.slabs) {
        for (LayerState& state : slab.states) {
            if (!state.visibility_km) {
                throw ConfigError("state \"" + state.label +
                                  "\" has no visibility for wavelength scaling");
            }
            state.attenuation.value *=
                kim_wavelength_ratio(*state.visibility_km, wavelength);
        }
    }
    return scaled;
}

SweepTable sweep_wavelength_reference(const AtmosphereProfile& profile,
                                      std::span<const double> wavelength_grid_nm,
                                      double zenith_deg) {
    check_grid(wavelength_grid_nm, "wavelength");
    SweepTable table{SweepAxis::WavelengthNm, {}};
    table.rows.resize(wavelength_grid_nm.size());
    for (std::size_t i = 0; i < wavelength_grid_nm.size(); ++i) {
        const AtmosphereProfile scaled =
            rescale_profile_to_wavelength(profile, Wavelength(wavelength_grid_nm[i]));
        const TransmittanceResult r = effective_transmittance(scaled, zenith_deg);
        table.rows[i] = {wavelength_grid_nm[i], r.transmittance, r.loss_db};
    }
    return table;
}

SweepTable sweep_wavelength(const AtmosphereProfile& profile,
                            std::span<const double> wavelength_grid_nm,
                            double zenith_deg) {
    check_grid(wavelength_grid_nm, "wavelength");
    detail::ensure_valid(profile, /*require_normalization=*/true);
    secant_of_zenith(zenith_deg);

    bool needs_scaling = false;
    for (const double nm : wavelength_grid_nm) {
        Wavelength probe(nm);  // range check
        needs_scaling |= nm != Wavelength::kReferenceNm;
    }
    if (needs_scaling) {
        for (const Slab& slab : profile.slabs) {
            for (const LayerState& state : slab.states) {
                if (!state.visibility_km) {
                    throw ConfigError("state \"" + state.label +
                                      "\" has no visibility for wavelength scaling");
                }
            }
        }
    }

    SweepTable table{SweepAxis::WavelengthNm, {}};
    table.rows.resize(wavelength_grid_nm.size());
    SweepRow* rows = table.rows.data();
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(wavelength_grid_nm.size()); ++i) {
        const double nm = wavelength_grid_nm[static_cast<std::size_t>(i)];
        const AtmosphereProfile scaled =
            rescale_profile_to_wavelength(profile, Wavelength(nm));
        const TransmittanceResult r =
            detail::result_from_exponent(secant_of_zenith(zenith_deg) *
                                         detail::exponent_sum(scaled));
        rows[i] = {nm, r.transmittance, r.loss_db};
    }
    return table;
}

Realization sample_realization(const AtmosphereProfile& profile, double zenith_deg,
                               std::uint64_t seed, std::uint64_t sample_index) {
    detail::ensure_valid(profile, /*require_normalization=*/true);
    const double sec = secant_of_zenith(zenith_deg);

    std::vector<std::size_t> picks;
    picks.reserve(profile.slabs.size());
    Realization realization;
    realization.transmittance =
        realize_transmittance(profile, sec, seed, sample_index, &picks);
    realization.state_labels.reserve(picks.size());
    for (std::size_t j = 0; j < picks.size(); ++j) {
        realization.state_labels.push_back(profile.slabs[j].states[picks[j]].label);
    }
    return realization;
}

MonteCarloStats monte_carlo_reference(const AtmosphereProfile& profile,
                                      double zenith_deg, std::uint64_t n,
                                      std::uint64_t seed) {
    check_sample_count(n);
    detail::ensure_valid(profile, /*require_normalization=*/true);
    const double sec = secant_of_zenith(zenith_deg);
    if (all_slabs_deterministic(profile)) {
        return degenerate_stats(profile, sec, n, seed);
    }

    std::vector<double> samples(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        samples[i] = sample_realization(profile, zenith_deg, seed, i).transmittance;
    }
    return assemble_stats(std::move(samples), seed);
}

MonteCarloStats monte_carlo(const AtmosphereProfile& profile, double zenith_deg,
                            std::uint64_t n, std::uint64_t seed) {
    check_sample_count(n);
    detail::ensure_valid(profile, /*require_normalization=*/true);
    const double sec = secant_of_zenith(zenith_deg);
    if (all_slabs_deterministic(profile)) {
        return degenerate_stats(profile, sec, n, seed);
    }

    std::vector<double> samples(n);
    double* out = samples.data();
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        out[i] = realize_transmittance(profile, sec, seed,
                                       static_cast<std::uint64_t>(i));
    }
    return assemble_stats(std::move(samples), seed);
}

std::vector<SensitivityReport> boundary_sensitivity(
    const AtmosphereProfile& profile, const LinkGeometry& geometry,
    double delta_km, double zenith_deg) {
    if (!std::isfinite(delta_km) || delta_km == 0.0) {
        throw DomainError("boundary shift must be finite and non-zero");
    }
    const double delta = std::abs(delta_km);
    const AtmosphereProfile clipped = clip_profile(profile, geometry);
    detail::ensure_valid(clipped, /*require_normalization=*/true);
    const double sec = secant_of_zenith(zenith_deg);
    const double baseline =
        detail::result_from_exponent(sec * detail::exponent_sum(clipped)).loss_db;

    std::vector<SensitivityReport> reports;
    for (std::size_t i = 0; i + 1 < clipped.slabs.size(); ++i) {
        const double boundary = clipped.slabs[i].top_km;
        for (const double signed_delta : {delta, -delta}) {
            SensitivityReport report;
            report.perturbation = boundary_description(boundary, signed_delta);
            report.baseline_loss_db = baseline;

            const double moved = boundary + signed_delta;
            // Zero extent is allowed (the slab stops contributing); only an
            // inversion past a neighbouring edge is infeasible.
            if (moved < clipped.slabs[i].base_km ||
                moved > clipped.slabs[i + 1].top_km) {
                report.perturbation += " (infeasible)";
                report.perturbed_loss_db = std::nan("");
                report.delta_db = std::nan("");
                report.feasible = false;
                reports.push_back(std::move(report));
                continue;
            }

            AtmosphereProfile perturbed = clipped;
            perturbed.slabs[i].top_km = moved;
            perturbed.slabs[i + 1].base_km = moved;
            report.perturbed_loss_db =
                detail::result_from_exponent(sec * detail::exponent_sum(perturbed))
                    .loss_db;
            report.delta_db = report.perturbed_loss_db - baseline;
            reports.push_back(std::move(report));
        }
    }
    return reports;
}

std::vector<SensitivityReport> probability_sensitivity(
    const AtmosphereProfile& profile, const LinkGeometry& geometry,
    double fraction, double zenith_deg) {
    if (!std::isfinite(fraction) || fraction <= 0.0 || fraction >= 1.0) {
        throw DomainError("perturbation fraction must lie in (0, 1)");
    }
    const AtmosphereProfile clipped = clip_profile(profile, geometry);
    detail::ensure_valid(clipped, /*require_normalization=*/true);
    const double sec = secant_of_zenith(zenith_deg);
    const double baseline =
        detail::result_from_exponent(sec * detail::exponent_sum(clipped)).loss_db;

    std::vector<SensitivityReport> reports;
    for (std::size_t j = 0; j < clipped.slabs.size(); ++j) {
        const Slab& slab = clipped.slabs[j];
        if (slab.states.size() < 2) continue;  // perturbation undefined

        for (std::size_t k = 0; k < slab.states.size(); ++k) {
            const double eta = slab.states[k].probability;
            for (const double factor : {1.0 + fraction, 1.0 - fraction}) {
                const double scaled = std::clamp(eta * factor, 0.0, 1.0);

                AtmosphereProfile perturbed = clipped;
                Slab& target = perturbed.slabs[j];
                target.states[k].probability = scaled;

                double complement = 0.0;
                for (std::size_t m = 0; m < slab.states.size(); ++m) {
                    if (m != k) complement += slab.states[m].probability;
                }
                if (complement > 0.0) {
                    const double rescale = (1.0 - scaled) / complement;
                    for (std::size_t m = 0; m < target.states.size(); ++m) {
                        if (m != k) target.states[m].probability *= rescale;
                    }
                } else {
                    // All remaining mass sat on state k; spread the complement
                    // evenly over the other states.
                    const double share = (1.0 - scaled) /
                                         static_cast<double>(slab.states.size() - 1);
                    for (std::size_t m = 0; m < target.states.size(); ++m) {
                        if (m != k) target.states[m].probability = share;
                    }
                }

                SensitivityReport report;
                std::ostringstream desc;
                desc << "slab " << j << " state " << slab.states[k].label << " eta "
                     << format_compact(eta) << " -> " << format_compact(scaled);
                report.perturbation = desc.str();
                report.baseline_loss_db = baseline;
                report.perturbed_loss_db =
                    detail::result_from_exponent(sec * detail::exponent_sum(perturbed))
                        .loss_db;
                report.delta_db = report.perturbed_loss_db - baseline;
                reports.push_back(std::move(report));
            }
        }
    }
    return reports;
}

double link_margin_db(const AtmosphereProfile& profile, double zenith_deg,
                      double tx_power_dbm, double rx_sensitivity_dbm,
                      double fixed_losses_db) {
    if (!std::isfinite(tx_power_dbm) || !std::isfinite(rx_sensitivity_dbm) ||
        !std::isfinite(fixed_losses_db)) {
        throw DomainError("link budget inputs must be finite");
    }
    return tx_power_dbm - fixed_losses_db - total_loss_db(profile, zenith_deg) -
           rx_sensitivity_dbm;
}

}  // namespace slantpath
