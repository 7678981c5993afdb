#pragma once

#include "countem/events.hpp"

#include <string>
#include <vector>

namespace countem {

struct EvalResult {
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
    std::int64_t matched = 0;
    std::int64_t ref_count = 0;
    std::int64_t est_count = 0;
};

/// Combine raw counts into precision/recall/F. Empty-side conventions:
/// precision = 1 with no estimates, recall = 1 with no references.
EvalResult make_eval_result(std::int64_t matched, std::int64_t ref_count,
                            std::int64_t est_count);

/// Note-level onset matching: a reference and an estimated note may pair iff
/// pitches agree and |onset difference| <= tol_s. `matched` is the size of a
/// maximum-cardinality bipartite matching (Hopcroft-Karp per pitch).
EvalResult match_notes(const EventTrack& reference, const EventTrack& estimate,
                       double tol_s);

/// Timing-free variant: matched = sum_p min(ref_count_p, est_count_p).
EvalResult f_histogram(const EventTrack& reference, const EventTrack& estimate);

struct TrackEval {
    std::string track_id;
    EvalResult result;
};

struct CorpusEval {
    EvalResult summary;  // micro-average over all pairs
    std::vector<TrackEval> per_track;
};

/// Micro-average: counts are summed over pairs before computing P/R/F.
CorpusEval evaluate_corpus(
    const std::vector<std::tuple<std::string, const EventTrack*, const EventTrack*>>& pairs,
    double tol_s);

}  // namespace countem
