#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slantpath/atmosphere.hpp"
#include "slantpath/rng.hpp"

namespace testutil {

using namespace slantpath;

inline LayerState st(std::string label, double att_db_per_km, double probability,
                     std::optional<double> visibility_km = std::nullopt) {
    return {std::move(label), ExtinctionCoefficient::db_per_km(att_db_per_km),
            probability, visibility_km};
}

inline AtmosphereProfile make_profile(EvalMode mode, std::vector<Slab> slabs,
                                      std::string name = "test") {
    return {std::move(name), std::move(slabs), mode};
}

/// Deterministic generator for property tests.
struct TestRng {
    std::uint64_t counter = 0;
    std::uint64_t seed;

    explicit TestRng(std::uint64_t s) : seed(s) {}

    double next01() { return rng::uniform01(seed, counter++, 0); }

    double range(double lo, double hi) { return lo + (hi - lo) * next01(); }

    std::size_t upto(std::size_t n) {  // in [0, n)
        return static_cast<std::size_t>(next01() * static_cast<double>(n)) % n;
    }
};

/// Valid random profile: contiguous slabs, 1-3 states each, probabilities
/// summing to exactly 1.
inline AtmosphereProfile random_profile(TestRng& rng, bool db_units_only = true) {
    (void)db_units_only;
    AtmosphereProfile profile;
    profile.name = "random";
    profile.mode = rng.next01() < 0.5 ? EvalMode::Paper : EvalMode::Physical;

    const std::size_t n_slabs = 1 + rng.upto(4);
    double base = rng.range(0.0, 2.0);
    for (std::size_t j = 0; j < n_slabs; ++j) {
        Slab slab;
        slab.base_km = base;
        slab.top_km = base + rng.range(0.2, 12.0);
        base = slab.top_km;

        const std::size_t n_states = 1 + rng.upto(3);
        double sum = 0.0;
        std::vector<double> raw(n_states);
        for (std::size_t k = 0; k < n_states; ++k) {
            raw[k] = 0.05 + rng.next01();
            sum += raw[k];
        }
        double assigned = 0.0;
        for (std::size_t k = 0; k < n_states; ++k) {
            double p = k + 1 == n_states ? 1.0 - assigned : raw[k] / sum;
            assigned += p;
            slab.states.push_back({"s" + std::to_string(j) + "_" + std::to_string(k),
                                   ExtinctionCoefficient::db_per_km(rng.range(0.0, 5.0)),
                                   p, std::nullopt});
        }
        profile.slabs.push_back(std::move(slab));
    }
    return profile;
}

}  // namespace testutil
