#include "countem/peakpick.hpp"

#include <algorithm>
#include <numeric>

namespace countem {

std::vector<Index> local_peaks(const Eigen::Ref<const Vec>& column, int radius) {
    if (radius < 1) throw PeakPickError("local_peaks: radius must be >= 1");
    const Index n = column.size();
    std::vector<Index> peaks;
    for (Index t = 0; t < n; ++t) {
        const Index lo = std::max<Index>(0, t - radius);
        const Index hi = std::min<Index>(n - 1, t + radius);
        bool is_peak = true;
        for (Index s = lo; s <= hi && is_peak; ++s)
            if (s != t && column[t] < column[s]) is_peak = false;
        if (is_peak) peaks.push_back(t);
    }
    return peaks;
}

namespace {

// Descending by value, earlier frame first on ties.
void sort_by_value(std::vector<Index>& idx, const Eigen::Ref<const Vec>& column) {
    std::sort(idx.begin(), idx.end(), [&](Index a, Index b) {
        if (column[a] != column[b]) return column[a] > column[b];
        return a < b;
    });
}

}  // namespace

MatU8 peak_pick_values(const Eigen::Ref<const Mat>& values, const VecI& counts,
                       const PeakPickConfig& cfg) {
    const Index frames = values.rows();
    const Index pitches = values.cols();
    if (counts.size() != pitches)
        throw PeakPickError("peak_pick: histogram pitch count mismatch");

    MatU8 out = MatU8::Zero(frames, pitches);
    std::vector<char> taken(static_cast<std::size_t>(frames));
    for (Index p = 0; p < pitches; ++p) {
        const std::int64_t k = counts[p];
        if (k < 0) throw PeakPickError("peak_pick: negative count");
        if (k > frames)
            throw PeakPickError("peak_pick: count exceeds frame count (window/grid mismatch)");
        if (k == 0) continue;

        const auto column = values.col(p);
        std::vector<Index> peaks = local_peaks(column, cfg.radius_frames);
        sort_by_value(peaks, column);

        std::fill(taken.begin(), taken.end(), 0);
        std::int64_t placed = 0;
        for (Index t : peaks) {
            if (placed == k) break;
            out(t, p) = 1;
            taken[static_cast<std::size_t>(t)] = 1;
            ++placed;
        }
        if (placed < k) {
            if (cfg.fallback == PeakPickConfig::Fallback::kError)
                throw PeakPickError("peak_pick: fewer local peaks than the target count");
            std::vector<Index> rest;
            rest.reserve(static_cast<std::size_t>(frames));
            for (Index t = 0; t < frames; ++t)
                if (!taken[static_cast<std::size_t>(t)]) rest.push_back(t);
            sort_by_value(rest, column);
            for (Index t : rest) {
                if (placed == k) break;
                out(t, p) = 1;
                ++placed;
            }
        }
    }
    return out;
}

LabelMatrix peak_pick(const Posteriorgram& z, const Histogram& h,
                      const PeakPickConfig& cfg) {
    if (h.counts.size() != z.grid.pitch_count)
        throw PeakPickError("peak_pick: histogram pitch count mismatch");
    return {z.grid, peak_pick_values(z.values, h.counts, cfg)};
}

VecD predicted_histogram(const Eigen::Ref<const Mat>& values) {
    return values.cast<double>().colwise().sum().transpose();
}

VecD predicted_histogram(const Posteriorgram& z) {
    return predicted_histogram(z.values);
}

double histogram_distance(const VecD& predicted, const Histogram& target) {
    if (predicted.size() != target.counts.size())
        throw std::invalid_argument("histogram_distance: dimension mismatch");
    return (predicted - target.counts.cast<double>()).norm();
}

LabelMatrix threshold_decode(const Posteriorgram& z, double threshold,
                             int radius_frames) {
    LabelMatrix out = LabelMatrix::zero(z.grid);
    for (Index p = 0; p < z.grid.pitch_count; ++p)
        for (Index t : local_peaks(z.values.col(p), radius_frames))
            if (z.values(t, p) >= threshold) out.values(t, p) = 1;
    return out;
}

}  // namespace countem
