#include "slantpath/extinction.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <sstream>

#include "slantpath/numformat.hpp"

namespace slantpath {

namespace {

// Coefficient database, version 1. Attenuation is at the 1550 nm reference.
constexpr std::array<CoefficientRecord, 18> kTable{{
    {"Dense fog", ConditionCategory::Fog, 0.05, 7.0721, VisibilityClass::Low},
    {"Thick fog", ConditionCategory::Fog, 0.20, 1.7680, VisibilityClass::Low},
    {"Moderate fog", ConditionCategory::Fog, 0.50, 0.7072, VisibilityClass::Low},
    {"Light fog", ConditionCategory::Fog, 0.77, 0.4592, VisibilityClass::Low},
    {"Thin fog", ConditionCategory::Fog, 1.90, 0.1860, VisibilityClass::Moderate},
    {"Cumulus", ConditionCategory::Cloud, 0.0280, 12.6287, VisibilityClass::Low},
    {"Stratus", ConditionCategory::Cloud, 0.0626, 5.6486, VisibilityClass::Low},
    {"Stratocumulus", ConditionCategory::Cloud, 0.0959, 3.6872, VisibilityClass::Low},
    {"Altostratus", ConditionCategory::Cloud, 0.0369, 9.5827, VisibilityClass::Low},
    {"Nimbostratus", ConditionCategory::Cloud, 0.0429, 8.2425, VisibilityClass::Low},
    {"Cirrus", ConditionCategory::Cloud, 64.66, 0.00305, VisibilityClass::Moderate},
    {"Thin cirrus", ConditionCategory::Cloud, 290.69, 0.00193, VisibilityClass::High},
    {"Extremely polluted atmosphere", ConditionCategory::Pollution, 1.0, 0.3536,
     VisibilityClass::Low},
    {"Normal atmosphere", ConditionCategory::Pollution, 10.0, 0.0340,
     VisibilityClass::Moderate},
    {"Non-polluted atmosphere", ConditionCategory::Pollution, 145.0, 0.0025,
     VisibilityClass::High},
    {"Heavy snow", ConditionCategory::Snow, 0.1, 0.2, VisibilityClass::Low},
    {"Moderate snow", ConditionCategory::Snow, 0.5, 0.08, VisibilityClass::Low},
    {"Light snow", ConditionCategory::Snow, 1.0, 0.03, VisibilityClass::Moderate},
}};

std::string normalized(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    std::string out;
    out.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(s[i]))));
    }
    return out;
}

void check_visibility(double visibility_km) {
    if (!std::isfinite(visibility_km) || visibility_km <= 0.0) {
        throw DomainError("visibility must be finite and positive");
    }
}

}  // namespace

std::span<const CoefficientRecord> coefficient_table() { return kTable; }

const CoefficientRecord& lookup_coefficient(std::string_view condition) {
    const std::string key = normalized(condition);
    for (const CoefficientRecord& record : kTable) {
        if (normalized(record.condition) == key) {
            return record;
        }
    }
    std::ostringstream msg;
    msg << "unknown condition \"" << condition << "\"; valid labels:";
    for (const CoefficientRecord& record : kTable) {
        msg << " \"" << record.condition << "\"";
    }
    throw LookupError(msg.str());
}

std::string_view to_string(ConditionCategory category) {
    switch (category) {
        case ConditionCategory::Fog: return "fog";
        case ConditionCategory::Cloud: return "cloud";
        case ConditionCategory::Pollution: return "pollution";
        case ConditionCategory::Snow: return "snow";
    }
    return "?";
}

std::string_view to_string(VisibilityClass cls) {
    switch (cls) {
        case VisibilityClass::Low: return "low";
        case VisibilityClass::Moderate: return "moderate";
        case VisibilityClass::High: return "high";
    }
    return "?";
}

std::string export_coefficient_csv() {
    std::string out = "condition,category,visibility_km,att_db_per_km_1550\n";
    for (const CoefficientRecord& record : kTable) {
        out += csv_row({std::string(record.condition),
                        std::string(to_string(record.category)),
                        format_compact(record.visibility_km),
                        format_compact(record.att_db_per_km_1550)});
        out += '\n';
    }
    return out;
}

Wavelength::Wavelength(double nanometers) : nm_(nanometers) {
    if (!std::isfinite(nm_) || nm_ < kMinNm || nm_ > kMaxNm) {
        std::ostringstream msg;
        msg << "wavelength " << nanometers << " nm outside [" << kMinNm << ", "
            << kMaxNm << "] nm";
        throw DomainError(msg.str());
    }
}

double kim_q(double visibility_km) {
    check_visibility(visibility_km);
    const double v = visibility_km;
    if (v > 50.0) return 1.6;
    if (v > 6.0) return 1.3;
    if (v >= 1.0) return 0.16 * v + 0.34;
    if (v >= 0.5) return v - 0.5;
    return 0.0;
}

ExtinctionCoefficient kim_extinction(double visibility_km, Wavelength wavelength) {
    check_visibility(visibility_km);
    const double q = kim_q(visibility_km);
    const double beta =
        3.91 / visibility_km * std::pow(wavelength.nanometers() / 550.0, -q);
    return ExtinctionCoefficient::per_km(beta);
}

double kim_wavelength_ratio(double visibility_km, Wavelength wavelength) {
    check_visibility(visibility_km);
    const double q = kim_q(visibility_km);
    return std::pow(wavelength.nanometers() / Wavelength::kReferenceNm, -q);
}

double scale_to_wavelength(double att_db_per_km_at_1550, double visibility_km,
                           Wavelength wavelength) {
    if (!std::isfinite(att_db_per_km_at_1550) || att_db_per_km_at_1550 < 0.0) {
        throw DomainError("extinction value must be finite and non-negative");
    }
    return att_db_per_km_at_1550 * kim_wavelength_ratio(visibility_km, wavelength);
}

}  // namespace slantpath
