#pragma once

#include <span>
#include <string>
#include <string_view>

#include "slantpath/errors.hpp"
#include "slantpath/units.hpp"

namespace slantpath {

enum class ConditionCategory {
    Fog,
    Cloud,
    Pollution,
    Snow,
};

enum class VisibilityClass {
    Low,
    Moderate,
    High,
};

/// One row of the embedded coefficient database: an atmospheric condition with
/// its meteorological visibility and extinction at the 1550 nm reference
/// wavelength.
struct CoefficientRecord {
    std::string_view condition;
    ConditionCategory category;
    double visibility_km;
    double att_db_per_km_1550;
    VisibilityClass visibility_class;
};

/// Version of the embedded coefficient table.
inline constexpr int kCoefficientTableVersion = 1;

/// All database rows, grouped by category.
std::span<const CoefficientRecord> coefficient_table();

/// Case-insensitive, whitespace-trimmed lookup. Throws LookupError listing the
/// valid labels on an unknown condition.
const CoefficientRecord& lookup_coefficient(std::string_view condition);

/// The database as CSV with header
/// condition,category,visibility_km,att_db_per_km_1550.
std::string export_coefficient_csv();

std::string_view to_string(ConditionCategory category);
std::string_view to_string(VisibilityClass cls);

/// Operating wavelength, restricted to the [500, 1600] nm band.
class Wavelength {
public:
    explicit Wavelength(double nanometers);

    double nanometers() const { return nm_; }

    static constexpr double kMinNm = 500.0;
    static constexpr double kMaxNm = 1600.0;
    /// Wavelength the coefficient database is anchored at.
    static constexpr double kReferenceNm = 1550.0;

private:
    double nm_;
};

/// Piecewise visibility-dependent wavelength exponent:
///   q = 1.6            for V > 50 km
///       1.3            for 6 < V <= 50
///       0.16 V + 0.34  for 1 <= V <= 6
///       V - 0.5        for 0.5 <= V < 1
///       0              for V < 0.5.
double kim_q(double visibility_km);

/// Visibility-based extinction (3.91/V) * (lambda/550 nm)^(-q(V)), in natural
/// 1/km units.
ExtinctionCoefficient kim_extinction(double visibility_km, Wavelength wavelength);

/// Ratio (lambda/1550 nm)^(-q(V)) used to carry a 1550 nm coefficient to
/// another wavelength. Exactly 1 at the reference wavelength.
double kim_wavelength_ratio(double visibility_km, Wavelength wavelength);

/// Rescales a 1550 nm extinction value to the given wavelength. The ratio is
/// unit-agnostic, so the result stays in the unit of the input.
double scale_to_wavelength(double att_db_per_km_at_1550, double visibility_km,
                           Wavelength wavelength);

}  // namespace slantpath
