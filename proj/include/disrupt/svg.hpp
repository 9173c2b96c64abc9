#pragma once

// Self-contained SVG line chart for one indicator: three percentile timelines
// (median, p90, p99 in light/mid/dark grey) with milestone annual medians as
// circle markers. No external assets.

#include <ostream>

#include "disrupt/summaries.hpp"

namespace disrupt {

void write_percentile_chart(const YearlyPercentiles& percentiles,
                            const MilestoneMedians& milestones, std::ostream& os);

}  // namespace disrupt
