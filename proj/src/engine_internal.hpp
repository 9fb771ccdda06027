#pragma once

// Internal contract between the scenario engines and the trial driver.

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>

#include "imsim/config.hpp"
#include "imsim/histogram.hpp"
#include "imsim/similarity.hpp"

namespace imsim::detail {

struct Accum {
    OutageCounts counts;
    double rate_x = 0.0, rate_y = 0.0;   // sums of log2(1 + gamma)
    double gated_x = 0.0, gated_y = 0.0; // sums of log2(1 + gamma_y) behind each gate
    bool with_hist = false;
    Histogram hx, hy, hx0, hx1;

    explicit Accum(bool hist = false) : with_hist(hist) {}

    void record(double gx, double gy, double beta) {
        bool ox = outage(gx, beta);
        bool oy = outage(gy, beta);
        counts.add(ox, oy);
        double ry = std::log2(1.0 + gy);
        rate_x += std::log2(1.0 + gx);
        rate_y += ry;
        if (!ox) gated_x += ry;
        if (!oy) gated_y += ry;
        if (with_hist) {
            hx.add_linear(gx);
            hy.add_linear(gy);
            (oy ? hx1 : hx0).add_linear(gx);
        }
    }

    void merge(const Accum& o) {
        counts.merge(o.counts);
        rate_x += o.rate_x;
        rate_y += o.rate_y;
        gated_x += o.gated_x;
        gated_y += o.gated_y;
        if (with_hist) {
            hx.merge(o.hx);
            hy.merge(o.hy);
            hx0.merge(o.hx0);
            hx1.merge(o.hx1);
        }
    }
};

// One engine instance per worker thread; chunk RNG comes from
// make_stream(seed, chunk_index), so results do not depend on scheduling.
class TrialEngine {
  public:
    virtual ~TrialEngine() = default;
    virtual void run_chunk(std::uint64_t chunk_index, std::uint64_t n_trials, Accum& acc) = 0;
};

using EngineFactory = std::function<std::unique_ptr<TrialEngine>()>;

constexpr std::uint64_t kChunkTrials = 4096;

Accum run_trials(std::uint64_t trials, int threads, bool with_hist,
                 const EngineFactory& make_engine);

// Scenario-4 engine (obstacles, reflections, directional mmWave links).
EngineFactory make_s4_engine_factory(const ScenarioConfig& resolved);

} // namespace imsim::detail
