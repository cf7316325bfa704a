#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace alrates {

// One state-changing event of an algorithm run. Actions:
//   'q' label query        (index, v1..v3 action-specific)
//   'i' label inference    (index, v1 = inferred label, v2 = threshold, v3 = gap)
//   'r' sampling-region reset (v1 = new region mass)
//   't' per-round summary  (v1 = DIS mass, v2 = region mass, v3 = beta)
//   'b' bound recompute    (v1 = bound value, v2 = data size)
//   's' subroutine summary (index = class position, v1 = allowance, v2 = |L|, v3 = |Q|)
//   'a'/'x' candidate accepted / rejected (index = class position)
//   'e' early exit, 'c' cap hit
struct TraceEvent {
    std::uint64_t step = 0;
    char action = '?';
    std::uint64_t index = 0;
    double v1 = 0.0, v2 = 0.0, v3 = 0.0;
};

// Deterministic audit trail: identical (seed, config) runs serialize to
// identical bytes, which is what replay verification checks.
struct RunTrace {
    std::string algorithm;
    std::string config_json;  // replay recipe (problem/points, seed, budget, options)
    std::vector<TraceEvent> events;
    std::string final_hypothesis;
    std::string failure;  // empty on success
    std::uint64_t labels_used = 0;
    std::uint64_t unlabeled_used = 0;

    void log(std::uint64_t step, char action, std::uint64_t index, double v1 = 0.0,
             double v2 = 0.0, double v3 = 0.0) {
        events.push_back(TraceEvent{step, action, index, v1, v2, v3});
    }

    std::string serialize() const;
};

}  // namespace alrates
