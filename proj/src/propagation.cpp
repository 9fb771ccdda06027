#include "imsim/propagation.hpp"

#include <stdexcept>

namespace imsim {

double path_gain(const PathLossLaw& law, double distance) {
    if (distance < 0.0) throw std::invalid_argument("path_gain: negative distance");
    if (distance < law.a) return law.c;
    return law.c * std::pow(distance, -law.alpha);
}

double sample_fading(const FadingKind& kind, Rng& rng) {
    switch (kind.family) {
        case FadingFamily::Rayleigh: {
            std::exponential_distribution<double> dist(1.0);
            return dist(rng);
        }
        case FadingFamily::Nakagami: {
            // Power gain ~ Gamma(m, 1/m), unit mean.
            std::gamma_distribution<double> dist(kind.m, 1.0 / kind.m);
            return dist(rng);
        }
        case FadingFamily::Deterministic:
            return kind.c0;
        case FadingFamily::LogNormalShadow: {
            std::normal_distribution<double> dist(0.0, kind.sigma_db);
            return db_to_linear(dist(rng));
        }
    }
    throw std::logic_error("sample_fading: unknown fading kind");
}

double mmwave_path_gain_db(const MmWavePath& path, Rng& rng) {
    if (!(path.length_m > 0.0)) throw std::invalid_argument("mmwave_path_gain_db: length <= 0");
    double g = -61.4 - 20.0 * std::log10(path.length_m);
    if (path.has_reflection) g += 10.0 * std::log10(path.reflection_coeff);
    g -= path.n_blockers * path.penetration_loss_db;
    if (path.shadow_sigma_db > 0.0) {
        std::normal_distribution<double> shadow(0.0, path.shadow_sigma_db);
        g -= shadow(rng);
    }
    return g;
}

double sector_gain(const SectorAntenna& antenna, bool in_main_lobe) {
    if (!(antenna.theta > 0.0 && antenna.theta <= kTwoPi)) {
        throw std::invalid_argument("sector_gain: theta outside (0, 2pi]");
    }
    if (in_main_lobe) return (kTwoPi - (kTwoPi - antenna.theta) * antenna.z) / antenna.theta;
    return antenna.z;
}

bool alignment_draw(double theta, Rng& rng) {
    if (!(theta > 0.0 && theta <= kTwoPi)) {
        throw std::invalid_argument("alignment_draw: theta outside (0, 2pi]");
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return unit(rng) < theta / kTwoPi;
}

} // namespace imsim
