#include "countem/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

namespace countem {

EvalResult make_eval_result(std::int64_t matched, std::int64_t ref_count,
                            std::int64_t est_count) {
    EvalResult r;
    r.matched = matched;
    r.ref_count = ref_count;
    r.est_count = est_count;
    r.precision = est_count == 0 ? 1.0 : static_cast<double>(matched) / est_count;
    r.recall = ref_count == 0 ? 1.0 : static_cast<double>(matched) / ref_count;
    const double pr = r.precision + r.recall;
    r.f_score = pr > 0.0 ? 2.0 * r.precision * r.recall / pr : 0.0;
    return r;
}

namespace {

/// Hopcroft-Karp maximum matching on a bipartite adjacency list
/// (left vertex -> right vertices).
class HopcroftKarp {
public:
    HopcroftKarp(int left, int right, std::vector<std::vector<int>> adj)
        : n_left_(left), n_right_(right), adj_(std::move(adj)),
          match_left_(left, kFree), match_right_(right, kFree), dist_(left) {}

    int solve() {
        int matching = 0;
        while (bfs()) {
            for (int u = 0; u < n_left_; ++u)
                if (match_left_[u] == kFree && dfs(u)) ++matching;
        }
        return matching;
    }

private:
    static constexpr int kFree = -1;
    static constexpr int kInf = std::numeric_limits<int>::max();

    bool bfs() {
        std::queue<int> q;
        for (int u = 0; u < n_left_; ++u) {
            if (match_left_[u] == kFree) {
                dist_[u] = 0;
                q.push(u);
            } else {
                dist_[u] = kInf;
            }
        }
        bool found = false;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v : adj_[u]) {
                const int w = match_right_[v];
                if (w == kFree) {
                    found = true;
                } else if (dist_[w] == kInf) {
                    dist_[w] = dist_[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    }

    bool dfs(int u) {
        for (int v : adj_[u]) {
            const int w = match_right_[v];
            if (w == kFree || (dist_[w] == dist_[u] + 1 && dfs(w))) {
                match_left_[u] = v;
                match_right_[v] = u;
                return true;
            }
        }
        dist_[u] = kInf;
        return false;
    }

    int n_left_;
    int n_right_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_left_;
    std::vector<int> match_right_;
    std::vector<int> dist_;
};

std::map<int, std::vector<double>> onsets_by_pitch(const EventTrack& track) {
    std::map<int, std::vector<double>> by_pitch;
    for (const NoteEvent& e : track.events) by_pitch[e.pitch].push_back(e.onset_s);
    return by_pitch;
}

}  // namespace

EvalResult match_notes(const EventTrack& reference, const EventTrack& estimate,
                       double tol_s) {
    if (!(tol_s > 0.0))
        throw std::invalid_argument("match_notes: tolerance must be positive");

    const auto ref = onsets_by_pitch(reference);
    const auto est = onsets_by_pitch(estimate);

    std::int64_t matched = 0;
    for (const auto& [pitch, ref_onsets] : ref) {
        const auto it = est.find(pitch);
        if (it == est.end()) continue;
        const auto& est_onsets = it->second;
        std::vector<std::vector<int>> adj(ref_onsets.size());
        for (size_t i = 0; i < ref_onsets.size(); ++i)
            for (size_t j = 0; j < est_onsets.size(); ++j)
                if (std::abs(ref_onsets[i] - est_onsets[j]) <= tol_s)
                    adj[i].push_back(static_cast<int>(j));
        matched += HopcroftKarp(static_cast<int>(ref_onsets.size()),
                                static_cast<int>(est_onsets.size()), std::move(adj))
                       .solve();
    }
    return make_eval_result(matched, static_cast<std::int64_t>(reference.events.size()),
                            static_cast<std::int64_t>(estimate.events.size()));
}

EvalResult f_histogram(const EventTrack& reference, const EventTrack& estimate) {
    const auto ref = onsets_by_pitch(reference);
    const auto est = onsets_by_pitch(estimate);
    std::int64_t matched = 0;
    for (const auto& [pitch, ref_onsets] : ref) {
        const auto it = est.find(pitch);
        if (it == est.end()) continue;
        matched += std::min(ref_onsets.size(), it->second.size());
    }
    return make_eval_result(matched, static_cast<std::int64_t>(reference.events.size()),
                            static_cast<std::int64_t>(estimate.events.size()));
}

CorpusEval evaluate_corpus(
    const std::vector<std::tuple<std::string, const EventTrack*, const EventTrack*>>& pairs,
    double tol_s) {
    if (pairs.empty())
        throw std::invalid_argument("evaluate_corpus: empty pair sequence");
    CorpusEval out;
    std::int64_t matched = 0, ref_count = 0, est_count = 0;
    for (const auto& [id, ref, est] : pairs) {
        const EvalResult r = match_notes(*ref, *est, tol_s);
        matched += r.matched;
        ref_count += r.ref_count;
        est_count += r.est_count;
        out.per_track.push_back({id, r});
    }
    out.summary = make_eval_result(matched, ref_count, est_count);
    return out;
}

}  // namespace countem
