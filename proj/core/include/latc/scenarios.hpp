#pragma once

#include <cstdint>

#include "latc/tensor.hpp"

namespace latc {

enum class MissingKind { random, non_random };

/// Axis of the fibers hidden by the non-random scenario. `day` hides whole
/// days per sensor (all points i for a chosen (sensor, day) pair); the
/// alternative `time_of_day` hides a point-of-day across all days for a
/// chosen (sensor, point) pair.
enum class NmFiberAxis { day, time_of_day };

struct MissingScenario {
    MissingKind kind = MissingKind::random;
    double rate = 0.0;
    std::uint64_t seed = 0;
    NmFiberAxis nm_axis = NmFiberAxis::day;

    void validate() const {
        if (!(rate > 0.0 && rate < 1.0)) throw ConfigError("MissingScenario: rate must be in (0,1)");
    }
};

struct MaskResult {
    TimeSeriesMatrix masked;  // input values with hidden entries removed from the mask
    Mask hidden;              // true where an observed entry was hidden
};

/// Hide entries of y according to the scenario. Random missing hides each
/// entry independently with probability rate; non-random missing selects
/// (sensor, fiber) pairs with probability rate and hides the whole fiber.
/// Only entries observed in y can be hidden; values are never altered.
/// Non-random missing requires the column count to be divisible by
/// points_per_season.
MaskResult apply_mask(const TimeSeriesMatrix& y, const MissingScenario& scenario,
                      Index points_per_season);

}  // namespace latc
