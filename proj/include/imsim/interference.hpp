#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

namespace imsim {

enum class ModelKind { PhyM, IBM, PRM, TIM };

struct ModelSpec {
    ModelKind kind = ModelKind::PhyM;
    double r_ibm = 0.0;
    double r_prm = 0.0;
    double eps_gain = 0.0; // TIM channel-gain threshold, linear

    static ModelSpec phym() { return {ModelKind::PhyM}; }
    static ModelSpec ibm(double r) { return {ModelKind::IBM, r}; }
    static ModelSpec prm(double r) { return {ModelKind::PRM, 0.0, r}; }
    static ModelSpec prm_delta(double delta, double d0) { return prm((1.0 + delta) * d0); }
    static ModelSpec tim(double eps) { return {ModelKind::TIM, 0.0, 0.0, eps}; }
};

struct LinkBudgetTerm {
    double tx_power = 0.0;    // watts
    double tx_gain = 1.0;     // linear
    double channel_gain = 0.0;
    double rx_gain = 1.0;
    double distance = 0.0;    // meters
};

struct SinrPair {
    double gamma_x = 0.0;
    double gamma_y = 0.0;
};

// Virtual channel gain mask a_k. Boundary ties are included ("<=").
inline double virtual_mask(const ModelSpec& model, const LinkBudgetTerm& term) {
    switch (model.kind) {
        case ModelKind::PhyM:
            return 1.0;
        case ModelKind::IBM:
            return term.distance <= model.r_ibm ? 1.0 : 0.0;
        case ModelKind::PRM:
            return term.distance <= model.r_prm ? std::numeric_limits<double>::infinity() : 0.0;
        case ModelKind::TIM:
            return term.channel_gain > model.eps_gain ? 1.0 : 0.0;
    }
    return 1.0;
}

// SINR of the typical link under the given model. An infinite mask (PRM with an
// in-range interferer) forces SINR = 0 so the shared outage predicate applies.
inline double sinr(const ModelSpec& model, const LinkBudgetTerm& signal,
                   const std::vector<LinkBudgetTerm>& interferers, double noise) {
    double denom = noise;
    for (const LinkBudgetTerm& term : interferers) {
        double a = virtual_mask(model, term);
        if (a == std::numeric_limits<double>::infinity()) return 0.0;
        if (a != 0.0) denom += term.tx_power * term.tx_gain * term.channel_gain * term.rx_gain;
    }
    double num = signal.tx_power * signal.tx_gain * signal.channel_gain * signal.rx_gain;
    if (denom <= 0.0) {
        if (num == 0.0) throw std::invalid_argument("sinr: 0/0");
        return std::numeric_limits<double>::infinity();
    }
    return num / denom;
}

inline bool outage(double gamma, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("outage: beta must be > 0");
    return gamma < beta;
}

} // namespace imsim
