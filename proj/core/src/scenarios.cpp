#include "latc/scenarios.hpp"

#include "latc/rng.hpp"

namespace latc {

MaskResult apply_mask(const TimeSeriesMatrix& y, const MissingScenario& scenario,
                      Index points_per_season) {
    scenario.validate();
    y.validate();
    const Index sensors = y.sensors();
    const Index n = y.time_points();

    Mask hidden = Mask::Constant(sensors, n, false);
    Rng rng(scenario.seed);

    if (scenario.kind == MissingKind::random) {
        // fixed draw order (sensor outer, time inner) keeps masks seed-stable
        for (Index m = 0; m < sensors; ++m)
            for (Index t = 0; t < n; ++t)
                if (rng.uniform() < scenario.rate) hidden(m, t) = true;
    } else {
        if (points_per_season < 1)
            throw DimensionError("apply_mask: points_per_season must be >= 1");
        if (n % points_per_season != 0)
            throw DimensionError("apply_mask: column count not divisible by points_per_season");
        const Index seasons = n / points_per_season;
        if (scenario.nm_axis == NmFiberAxis::day) {
            for (Index m = 0; m < sensors; ++m)
                for (Index j = 0; j < seasons; ++j)
                    if (rng.uniform() < scenario.rate)
                        for (Index i = 0; i < points_per_season; ++i)
                            hidden(m, j * points_per_season + i) = true;
        } else {
            for (Index m = 0; m < sensors; ++m)
                for (Index i = 0; i < points_per_season; ++i)
                    if (rng.uniform() < scenario.rate)
                        for (Index j = 0; j < seasons; ++j)
                            hidden(m, j * points_per_season + i) = true;
        }
    }

    // only observed entries can be hidden; values pass through untouched
    hidden = hidden && y.mask;
    MaskResult result;
    result.masked.values = y.values;
    result.masked.mask = y.mask && !hidden;
    result.hidden = std::move(hidden);
    return result;
}

}  // namespace latc
