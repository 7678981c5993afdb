#pragma once

#include "countem/events.hpp"
#include "countem/grid.hpp"

#include <stdexcept>
#include <vector>

namespace countem {

class PeakPickError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PeakPickConfig {
    int radius_frames = 1;
    enum class Fallback { kError, kTopValues };
    /// What to do when a column has fewer local peaks than its target count.
    /// Near-flat early-EM posteriorgrams would otherwise stall training.
    Fallback fallback = Fallback::kTopValues;
};

/// Indices t with column[t] >= column[s] for every in-range s, 0 < |s-t| <= radius.
/// Plateaus count: adjacent equal values are all peaks.
std::vector<Index> local_peaks(const Eigen::Ref<const Vec>& column, int radius);

/// Top-K local-peak selection per pitch. Column p of the result has exactly
/// h.counts[p] ones, placed on the highest-valued local peaks (ties broken
/// by earlier frame). With Fallback::kTopValues, missing peaks are filled
/// with the best unselected frames; Fallback::kError throws instead.
/// Column sums of the result equal h exactly.
LabelMatrix peak_pick(const Posteriorgram& z, const Histogram& h,
                      const PeakPickConfig& cfg = {});

/// Same, on a raw value matrix (frames x pitches).
MatU8 peak_pick_values(const Eigen::Ref<const Mat>& values, const VecI& counts,
                       const PeakPickConfig& cfg = {});

/// Column sums of the posteriorgram: the predicted histogram.
VecD predicted_histogram(const Posteriorgram& z);
VecD predicted_histogram(const Eigen::Ref<const Mat>& values);

/// Euclidean distance between predicted and target histograms.
double histogram_distance(const VecD& predicted, const Histogram& target);

/// Deployment-mode decoder: 1 at local peaks with value >= threshold.
LabelMatrix threshold_decode(const Posteriorgram& z, double threshold,
                             int radius_frames);

}  // namespace countem
