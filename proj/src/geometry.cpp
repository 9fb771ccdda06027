#include "imsim/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace imsim {

void AnnulusSector::validate() const {
    if (!(theta > 0.0 && theta <= kTwoPi)) {
        throw std::invalid_argument("AnnulusSector: theta must be in (0, 2pi]");
    }
    if (!(r_in >= 0.0 && r_out > r_in)) {
        throw std::invalid_argument("AnnulusSector: need 0 <= r_in < r_out");
    }
}

PointField sample_homogeneous_ppp(double intensity, const AnnulusSector& region, Rng& rng) {
    region.validate();
    if (!std::isfinite(region.r_out)) {
        throw std::invalid_argument("sample_homogeneous_ppp: r_out must be finite");
    }
    if (intensity < 0.0) throw std::invalid_argument("sample_homogeneous_ppp: intensity < 0");

    PointField field;
    field.intensity = intensity;
    field.region = region;
    if (intensity == 0.0) return field;

    std::poisson_distribution<int> count_dist(intensity * region.area());
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int n = count_dist(rng);
    field.points.reserve(n);
    const double r_in2 = region.r_in * region.r_in;
    const double r_out2 = region.r_out * region.r_out;
    for (int i = 0; i < n; ++i) {
        double r = std::sqrt(r_in2 + unit(rng) * (r_out2 - r_in2));
        double az = region.theta * (unit(rng) - 0.5);
        field.points.push_back({r, az});
    }
    return field;
}

PointField sample_thinned_ppp(double base_intensity,
                              const std::function<double(double)>& keep_prob,
                              const AnnulusSector& region, Rng& rng) {
    PointField field = sample_homogeneous_ppp(base_intensity, region, rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<PolarPoint> kept;
    kept.reserve(field.points.size());
    for (const PolarPoint& pt : field.points) {
        double p = keep_prob(pt.radius);
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("sample_thinned_ppp: keep_prob outside [0,1]");
        }
        if (unit(rng) < p) kept.push_back(pt);
    }
    field.points = std::move(kept);
    return field;
}

std::vector<Obstacle> sample_obstacles(double density, const AnnulusSector& extent,
                                       double reflector_prob, double loss_db,
                                       double refl_coeff, Rng& rng) {
    if (density < 0.0) throw std::invalid_argument("sample_obstacles: density < 0");
    if (!(reflector_prob >= 0.0 && reflector_prob <= 1.0)) {
        throw std::invalid_argument("sample_obstacles: reflector_prob outside [0,1]");
    }
    PointField centers = sample_homogeneous_ppp(density, extent, rng);
    std::uniform_real_distribution<double> width_dist(0.0, 4.0);
    std::uniform_real_distribution<double> length_dist(0.0, 3.0);
    std::uniform_real_distribution<double> orient_dist(0.0, kTwoPi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Obstacle> obstacles;
    obstacles.reserve(centers.points.size());
    for (const PolarPoint& pt : centers.points) {
        Obstacle o;
        o.center = {pt.x(), pt.y()};
        o.width = width_dist(rng);
        o.length = length_dist(rng);
        o.orientation = orient_dist(rng);
        o.is_reflector = unit(rng) < reflector_prob;
        o.penetration_loss_db = loss_db;
        o.reflection_coeff = refl_coeff;
        obstacles.push_back(o);
    }
    return obstacles;
}

bool segment_intersects_obstacle(const Vec2& tx, const Vec2& rx, const Obstacle& o) {
    // Transform the segment into the rectangle's local frame and run a
    // slab (Liang-Barsky) test against the axis-aligned box.
    const double c = std::cos(o.orientation);
    const double s = std::sin(o.orientation);
    const double px = tx.x - o.center.x, py = tx.y - o.center.y;
    const double qx = rx.x - o.center.x, qy = rx.y - o.center.y;
    const double p0 = c * px + s * py, p1 = -s * px + c * py;
    const double q0 = c * qx + s * qy, q1 = -s * qx + c * qy;
    const double hx = 0.5 * o.width, hy = 0.5 * o.length;

    double t0 = 0.0, t1 = 1.0;
    const double d[2] = {q0 - p0, q1 - p1};
    const double p[2] = {p0, p1};
    const double h[2] = {hx, hy};
    for (int axis = 0; axis < 2; ++axis) {
        if (d[axis] == 0.0) {
            if (p[axis] < -h[axis] || p[axis] > h[axis]) return false;
        } else {
            double ta = (-h[axis] - p[axis]) / d[axis];
            double tb = (h[axis] - p[axis]) / d[axis];
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
            if (t0 > t1) return false;
        }
    }
    return true;
}

int count_blockers(const Vec2& tx, const Vec2& rx, const std::vector<Obstacle>& obstacles) {
    if (tx.x == rx.x && tx.y == rx.y) {
        throw std::invalid_argument("count_blockers: tx == rx");
    }
    int n = 0;
    for (const Obstacle& o : obstacles) {
        if (segment_intersects_obstacle(tx, rx, o)) ++n;
    }
    return n;
}

bool bernoulli_los(double distance, double eps_lambda_o, Rng& rng) {
    if (distance < 0.0 || eps_lambda_o < 0.0) {
        throw std::invalid_argument("bernoulli_los: negative argument");
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return unit(rng) < std::exp(-eps_lambda_o * distance);
}

Vec2 mirror_across_reflector(const Vec2& p, const Obstacle& reflector) {
    const double c = std::cos(reflector.orientation);
    const double s = std::sin(reflector.orientation);
    const double rx = p.x - reflector.center.x, ry = p.y - reflector.center.y;
    const double along = c * rx + s * ry;
    const double across = -s * rx + c * ry;
    return {reflector.center.x + c * along + s * across,
            reflector.center.y + s * along - c * across};
}

bool specular_path(const Vec2& tx, const Vec2& rx, const Obstacle& reflector,
                   double& path_length, Vec2& specular_point) {
    const double c = std::cos(reflector.orientation);
    const double s = std::sin(reflector.orientation);
    const double tx_along = c * (tx.x - reflector.center.x) + s * (tx.y - reflector.center.y);
    const double tx_across = -s * (tx.x - reflector.center.x) + c * (tx.y - reflector.center.y);
    const double rx_along = c * (rx.x - reflector.center.x) + s * (rx.y - reflector.center.y);
    const double rx_across = -s * (rx.x - reflector.center.x) + c * (rx.y - reflector.center.y);
    if (tx_across * rx_across <= 0.0) return false; // opposite sides or on the surface line
    // In the local frame the surface is the segment |along| <= width/2 at across = 0;
    // the mirrored tx is (tx_along, -tx_across).
    const double denom = tx_across + rx_across;
    const double hit = tx_along + (rx_along - tx_along) * (tx_across / denom);
    if (std::fabs(hit) > 0.5 * reflector.width) return false;
    const double da = rx_along - tx_along;
    path_length = std::sqrt(da * da + denom * denom);
    specular_point = {reflector.center.x + c * hit, reflector.center.y + s * hit};
    return true;
}

} // namespace imsim
