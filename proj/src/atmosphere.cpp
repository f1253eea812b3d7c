#include "slantpath/atmosphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace slantpath {

namespace {

bool finite_nonnegative(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

double db_per_km_to_natural(double db_per_km) {
    if (!finite_nonnegative(db_per_km)) {
        throw DomainError("extinction value must be finite and non-negative");
    }
    return db_per_km * kDbToNatural;
}

double natural_to_db_per_km(double per_km) {
    if (!finite_nonnegative(per_km)) {
        throw DomainError("extinction value must be finite and non-negative");
    }
    return per_km * kNaturalToDb;
}

ExtinctionCoefficient ExtinctionCoefficient::db_per_km(double value) {
    if (!finite_nonnegative(value)) {
        throw DomainError("extinction value must be finite and non-negative");
    }
    return {value, ExtinctionUnit::DbPerKm};
}

ExtinctionCoefficient ExtinctionCoefficient::per_km(double value) {
    if (!finite_nonnegative(value)) {
        throw DomainError("extinction value must be finite and non-negative");
    }
    return {value, ExtinctionUnit::PerKm};
}

double secant_of_zenith(double zenith_deg) {
    if (!std::isfinite(zenith_deg) || zenith_deg < 0.0 || zenith_deg > kMaxZenithDeg) {
        std::ostringstream msg;
        msg << "zenith angle " << zenith_deg << " outside [0, " << kMaxZenithDeg
            << "] degrees";
        throw GeometryError(msg.str());
    }
    return 1.0 / std::cos(zenith_deg * std::numbers::pi / 180.0);
}

double slab_transmittance(const LayerState& state, double extent_km,
                          double zenith_deg, EvalMode mode) {
    if (!std::isfinite(extent_km) || extent_km <= 0.0) {
        throw DomainError("slab extent must be positive");
    }
    const double sec = secant_of_zenith(zenith_deg);
    return std::exp(-sec * detail::mode_value(state.attenuation, mode) * extent_km);
}

TransmittanceResult path_transmittance(const AtmosphereProfile& profile,
                                       double zenith_deg) {
    detail::ensure_valid(profile, /*require_normalization=*/false);
    for (std::size_t j = 0; j < profile.slabs.size(); ++j) {
        if (profile.slabs[j].states.size() > 1) {
            std::ostringstream msg;
            msg << "slab " << j << " has " << profile.slabs[j].states.size()
                << " states; use effective_transmittance";
            throw ValidationError(msg.str());
        }
    }
    const double sec = secant_of_zenith(zenith_deg);
    return detail::result_from_exponent(sec * detail::exponent_sum(profile));
}

TransmittanceResult effective_transmittance(const AtmosphereProfile& profile,
                                            double zenith_deg) {
    detail::ensure_valid(profile, /*require_normalization=*/true);
    const double sec = secant_of_zenith(zenith_deg);
    return detail::result_from_exponent(sec * detail::exponent_sum(profile));
}

double total_loss_db(const AtmosphereProfile& profile, double zenith_deg) {
    return effective_transmittance(profile, zenith_deg).loss_db;
}

AtmosphereProfile clip_profile(const AtmosphereProfile& profile,
                               const LinkGeometry& geometry) {
    if (!std::isfinite(geometry.ground_km) || geometry.ground_km < 0.0) {
        throw GeometryError("ground altitude must be finite and non-negative");
    }
    if (geometry.platform_km &&
        (!std::isfinite(*geometry.platform_km) ||
         *geometry.platform_km <= geometry.ground_km)) {
        throw GeometryError("platform altitude must lie above the ground altitude");
    }

    AtmosphereProfile clipped;
    clipped.name = profile.name;
    clipped.mode = profile.mode;
    for (const Slab& slab : profile.slabs) {
        const double lo = std::max(slab.base_km, geometry.ground_km);
        const double hi = geometry.platform_km
                              ? std::min(slab.top_km, *geometry.platform_km)
                              : slab.top_km;
        if (hi > lo) {
            clipped.slabs.push_back({lo, hi, slab.states});
        }
    }
    if (clipped.slabs.empty()) {
        throw EmptyPathError("no atmosphere intersects the link path");
    }
    return clipped;
}

std::vector<Violation> validate_profile(const AtmosphereProfile& profile) {
    std::vector<Violation> report;
    auto add = [&report](std::optional<std::size_t> slab, std::string rule,
                         std::string message) {
        report.push_back({slab, std::move(rule), std::move(message)});
    };

    if (profile.slabs.empty()) {
        add(std::nullopt, "empty_profile", "profile has no slabs");
        return report;
    }

    for (std::size_t j = 0; j < profile.slabs.size(); ++j) {
        const Slab& slab = profile.slabs[j];
        std::ostringstream at;
        at << "slab " << j << " [" << slab.base_km << ", " << slab.top_km << "]";

        if (!std::isfinite(slab.base_km) || slab.base_km < 0.0) {
            add(j, "base_nonnegative", at.str() + ": base altitude must be >= 0");
        }
        if (!std::isfinite(slab.top_km) || slab.top_km <= slab.base_km) {
            add(j, "extent_positive", at.str() + ": top must lie above base");
        }
        if (j + 1 < profile.slabs.size() &&
            slab.top_km > profile.slabs[j + 1].base_km) {
            std::ostringstream msg;
            msg << "slabs " << j << " and " << j + 1 << " overlap ("
                << slab.top_km << " > " << profile.slabs[j + 1].base_km << ")";
            add(j, "slab_overlap", msg.str());
        }

        if (slab.states.empty()) {
            add(j, "state_count", at.str() + ": slab needs at least one state");
            continue;
        }

        double probability_sum = 0.0;
        for (const LayerState& state : slab.states) {
            if (!std::isfinite(state.probability) || state.probability < 0.0 ||
                state.probability > 1.0) {
                add(j, "probability_range",
                    at.str() + ": state \"" + state.label +
                        "\" probability outside [0, 1]");
            } else {
                probability_sum += state.probability;
            }
            if (!finite_nonnegative(state.attenuation.value)) {
                add(j, "attenuation_invalid",
                    at.str() + ": state \"" + state.label +
                        "\" extinction must be finite and non-negative");
            }
            if (state.visibility_km &&
                (!std::isfinite(*state.visibility_km) || *state.visibility_km <= 0.0)) {
                add(j, "visibility_positive",
                    at.str() + ": state \"" + state.label +
                        "\" visibility must be positive");
            }
        }
        if (std::abs(probability_sum - 1.0) > kProbabilityTolerance) {
            std::ostringstream msg;
            msg << at.str() << ": state probabilities sum to " << probability_sum
                << ", expected 1 within " << kProbabilityTolerance;
            add(j, "probability_normalization", msg.str());
        }
        for (std::size_t a = 0; a < slab.states.size(); ++a) {
            for (std::size_t b = a + 1; b < slab.states.size(); ++b) {
                if (slab.states[a].label == slab.states[b].label) {
                    add(j, "duplicate_state_label",
                        at.str() + ": duplicate state label \"" +
                            slab.states[a].label + "\"");
                }
            }
        }
    }
    return report;
}

namespace detail {

double mode_value(const ExtinctionCoefficient& c, EvalMode mode) {
    return mode == EvalMode::Paper ? c.value : c.natural();
}

double exponent_sum(const AtmosphereProfile& profile) {
    double sum = 0.0;
    for (const Slab& slab : profile.slabs) {
        const double extent = slab.extent_km();
        for (const LayerState& state : slab.states) {
            sum += state.probability * mode_value(state.attenuation, profile.mode) *
                   extent;
        }
    }
    return sum;
}

TransmittanceResult result_from_exponent(double exponent) {
    TransmittanceResult result;
    result.exponent = exponent;
    result.transmittance = std::exp(-exponent);
    result.loss_db = exponent == 0.0 ? 0.0 : -10.0 * std::log10(result.transmittance);
    return result;
}

void ensure_valid(const AtmosphereProfile& profile, bool require_normalization) {
    for (const Violation& v : validate_profile(profile)) {
        if (!require_normalization && v.rule == "probability_normalization") {
            continue;
        }
        throw ValidationError(v.message);
    }
}

}  // namespace detail

}  // namespace slantpath
