#pragma once

#include <cmath>

#include "slantpath/errors.hpp"

namespace slantpath {

/// ln(10)/10: multiply a dB/km extinction value by this to get 1/km.
inline constexpr double kDbToNatural = 0.23025850929940458;

/// 10/ln(10): the inverse factor.
inline constexpr double kNaturalToDb = 4.3429448190325175;

/// Converts an extinction value from dB/km to natural units (1/km).
double db_per_km_to_natural(double db_per_km);

/// Converts an extinction value from natural units (1/km) to dB/km.
double natural_to_db_per_km(double per_km);

enum class ExtinctionUnit {
    DbPerKm,
    PerKm,  // natural units
};

/// A per-kilometer extinction value with an explicit unit tag. Values are
/// non-negative and finite.
struct ExtinctionCoefficient {
    double value = 0.0;
    ExtinctionUnit unit = ExtinctionUnit::DbPerKm;

    static ExtinctionCoefficient db_per_km(double value);
    static ExtinctionCoefficient per_km(double value);

    /// Value expressed in natural units (1/km).
    double natural() const {
        return unit == ExtinctionUnit::PerKm ? value : db_per_km_to_natural(value);
    }

    /// Value expressed in dB/km.
    double db() const {
        return unit == ExtinctionUnit::DbPerKm ? value : natural_to_db_per_km(value);
    }

    bool operator==(const ExtinctionCoefficient&) const = default;
};

}  // namespace slantpath
