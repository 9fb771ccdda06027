#pragma once

#include <cmath>

#include "imsim/geometry.hpp"
#include "imsim/rng.hpp"

namespace imsim {

// dB/dBm <-> linear conversions (used only at module boundaries).
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

enum class FadingFamily { Rayleigh, Nakagami, Deterministic, LogNormalShadow };

struct FadingKind {
    FadingFamily family = FadingFamily::Rayleigh;
    double m = 1.0;        // Nakagami shape
    double c0 = 1.0;       // Deterministic gain
    double sigma_db = 0.0; // LogNormalShadow standard deviation

    static FadingKind rayleigh() { return {FadingFamily::Rayleigh}; }
    static FadingKind nakagami(double m) { return {FadingFamily::Nakagami, m}; }
    static FadingKind deterministic(double c0) { return {FadingFamily::Deterministic, 1.0, c0}; }
};

// Modified power law: gain(d) = c for d < a, c * d^{-alpha} for d >= a.
struct PathLossLaw {
    double c = 1.0;
    double alpha = 2.0;
    double a = 1.0;
};

double path_gain(const PathLossLaw& law, double distance);

// One i.i.d. power-gain draw; unit mean for Rayleigh and Nakagami.
double sample_fading(const FadingKind& kind, Rng& rng);

struct MmWavePath {
    double length_m = 1.0;
    int n_blockers = 0;
    bool has_reflection = false;
    double reflection_coeff = 1.0;
    double penetration_loss_db = 0.0;
    double shadow_sigma_db = 0.0;
};

// 28 GHz multipath gain: -61.4 - 20 log10(d) + 1_refl*10 log10(r) - n*l_o - X,
// X ~ N(0, shadow_sigma_db^2) drawn fresh per call.
double mmwave_path_gain_db(const MmWavePath& path, Rng& rng);

// Ideal sector pattern: main-lobe gain (2pi - (2pi - theta) z)/theta, side lobe z.
struct SectorAntenna {
    double theta = kTwoPi;
    double z = 0.0;
};

double sector_gain(const SectorAntenna& antenna, bool in_main_lobe);

// True with probability theta/2pi: a uniformly oriented beam covers the peer.
bool alignment_draw(double theta, Rng& rng);

} // namespace imsim
