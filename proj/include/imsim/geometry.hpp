#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "imsim/rng.hpp"

namespace imsim {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Annulus sector B(theta, r_in, r_out) centered at the origin, boresight at
// azimuth 0, spanning azimuths [-theta/2, theta/2).
struct AnnulusSector {
    double theta = kTwoPi;
    double r_in = 0.0;
    double r_out = 0.0;

    double area() const { return 0.5 * theta * (r_out * r_out - r_in * r_in); }
    void validate() const;
};

struct PolarPoint {
    double radius;
    double azimuth;
    double x() const { return radius * std::cos(azimuth); }
    double y() const { return radius * std::sin(azimuth); }
};

struct PointField {
    std::vector<PolarPoint> points;
    double intensity = 0.0;
    AnnulusSector region;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Obstacle {
    Vec2 center;
    double width = 0.0;       // full extent along the orientation axis
    double length = 0.0;      // full extent across it
    double orientation = 0.0; // radians
    bool is_reflector = false;
    double penetration_loss_db = 0.0;
    double reflection_coeff = 1.0;
};

PointField sample_homogeneous_ppp(double intensity, const AnnulusSector& region, Rng& rng);

PointField sample_thinned_ppp(double base_intensity,
                              const std::function<double(double)>& keep_prob,
                              const AnnulusSector& region, Rng& rng);

std::vector<Obstacle> sample_obstacles(double density, const AnnulusSector& extent,
                                       double reflector_prob, double loss_db,
                                       double refl_coeff, Rng& rng);

// Number of obstacles whose rectangle intersects segment (tx, rx).
int count_blockers(const Vec2& tx, const Vec2& rx, const std::vector<Obstacle>& obstacles);

bool segment_intersects_obstacle(const Vec2& tx, const Vec2& rx, const Obstacle& o);

bool bernoulli_los(double distance, double eps_lambda_o, Rng& rng);

// Mirror image of p across the reflector's surface line (the line through the
// obstacle center along its orientation axis).
Vec2 mirror_across_reflector(const Vec2& p, const Obstacle& reflector);

// First-order specular reflection tx -> reflector -> rx. Returns true and the
// path length when the specular point lies on the reflector surface segment and
// tx, rx are on the same side of it.
bool specular_path(const Vec2& tx, const Vec2& rx, const Obstacle& reflector,
                   double& path_length, Vec2& specular_point);

} // namespace imsim
