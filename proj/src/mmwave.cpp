#include <algorithm>
#include <cmath>
#include <vector>

#include "engine_internal.hpp"
#include "imsim/geometry.hpp"
#include "imsim/interference.hpp"
#include "imsim/propagation.hpp"
#include "imsim/rng.hpp"

namespace imsim::detail {

namespace {

// Scenario 4: directional mmWave links over a window of rectangular obstacles.
// Each link budget sums a direct path and first-order specular reflections;
// per-path shadowing is drawn once and shared by x and y, so the models differ
// only through the configured simplifications.
class S4Engine final : public TrialEngine {
  public:
    explicit S4Engine(const ScenarioConfig& cfg)
        : cfg_(cfg),
          p_(dbm_to_watts(cfg.p_dbm)),
          sigma_(dbm_to_watts(cfg.sigma_dbm)),
          beta_(db_to_linear(cfg.beta_db)),
          theta_(cfg.theta_deg * kTwoPi / 360.0),
          ant_y_{cfg.theta_deg * kTwoPi / 360.0, cfg.z_linear()},
          ant_x_{cfg.theta_deg * kTwoPi / 360.0, cfg.x_no_sidelobe ? 0.0 : cfg.z_linear()},
          window_(cfg.truncation_radius),
          obstacle_extent_(cfg.truncation_radius + 5.0) {
        if (cfg.x_model == "phym") x_spec_ = ModelSpec::phym();
        else if (cfg.x_model == "ibm") x_spec_ = ModelSpec::ibm(cfg.r_ibm);
        else if (cfg.x_model == "prm") x_spec_ = ModelSpec::prm(cfg.r_prm);
        else x_spec_ = ModelSpec::tim(db_to_linear(cfg.tim_eps_db));
        grid_extent_ = obstacle_extent_ + kCell;
        grid_n_ = static_cast<int>(std::ceil(2.0 * grid_extent_ / kCell));
        grid_cells_.resize(static_cast<size_t>(grid_n_) * grid_n_);
        bins_.resize(kBins);
    }

    void run_chunk(std::uint64_t chunk, std::uint64_t n, Accum& acc) override {
        Rng rng = make_stream(cfg_.seed, chunk);
        for (std::uint64_t t = 0; t < n; ++t) run_trial(rng, acc);
    }

  private:
    static constexpr int kBins = 2048;
    static constexpr double kCell = 25.0;
    static constexpr double kFloor = 1e-18; // -180 dB total path gain
    static constexpr double kMinLength = 1e-3;

    struct PathBudget {
        double y_gain = 0.0;
        double x_gain = 0.0;
        bool sum_mode = false; // interferers sum paths, the typical link keeps the best
        void take(double gy, double gx) {
            if (sum_mode) {
                y_gain += gy;
                x_gain += gx;
            } else {
                y_gain = std::max(y_gain, gy);
                x_gain = std::max(x_gain, gx);
            }
        }
    };

    static double wrap_angle(double a) { return std::remainder(a, kTwoPi); }

    bool in_main(double boresight_az, double direction_az) const {
        return std::abs(wrap_angle(direction_az - boresight_az)) <= 0.5 * theta_;
    }

    // ---- per-trial spatial indexes ----
    void build_indexes() {
        for (auto& b : bins_) b.clear();
        near_origin_.clear();
        for (auto& c : grid_cells_) c.clear();
        reflectors_.clear();
        stamp_.assign(obstacles_.size(), -1);
        query_id_ = 0;
        for (size_t i = 0; i < obstacles_.size(); ++i) {
            const Obstacle& o = obstacles_[i];
            if (o.is_reflector) reflectors_.push_back(static_cast<int>(i));
            double bound = 0.5 * std::hypot(o.width, o.length);
            double dist = std::hypot(o.center.x, o.center.y);
            if (dist <= bound) {
                near_origin_.push_back(static_cast<int>(i));
            } else {
                double az = std::atan2(o.center.y, o.center.x);
                double half = std::asin(std::min(1.0, bound / dist));
                int lo = static_cast<int>(std::floor((az - half) / kTwoPi * kBins));
                int hi = static_cast<int>(std::floor((az + half) / kTwoPi * kBins));
                for (int b = lo; b <= hi; ++b) {
                    bins_[((b % kBins) + kBins) % kBins].push_back(static_cast<int>(i));
                }
            }
            // axis-aligned bounds of the rotated rectangle
            double cx = std::abs(std::cos(o.orientation)), sx = std::abs(std::sin(o.orientation));
            double hx = 0.5 * (o.width * cx + o.length * sx);
            double hy = 0.5 * (o.width * sx + o.length * cx);
            int x0 = cell_index(o.center.x - hx), x1 = cell_index(o.center.x + hx);
            int y0 = cell_index(o.center.y - hy), y1 = cell_index(o.center.y + hy);
            for (int gx = x0; gx <= x1; ++gx) {
                for (int gy = y0; gy <= y1; ++gy) {
                    grid_cells_[static_cast<size_t>(gy) * grid_n_ + gx].push_back(
                        static_cast<int>(i));
                }
            }
        }
    }

    int cell_index(double coord) const {
        int c = static_cast<int>(std::floor((coord + grid_extent_) / kCell));
        return std::clamp(c, 0, grid_n_ - 1);
    }

    // Blockers on the segment from `from` to the origin (receiver).
    int count_blockers_to_origin(const Vec2& from, int exclude) {
        double az = std::atan2(from.y, from.x);
        int bin =
            ((static_cast<int>(std::floor(az / kTwoPi * kBins)) % kBins) + kBins) % kBins;
        int n = 0;
        ++query_id_;
        auto test = [&](int i) {
            if (i == exclude || stamp_[i] == query_id_) return;
            stamp_[i] = query_id_;
            if (segment_intersects_obstacle(from, {0.0, 0.0}, obstacles_[i])) ++n;
        };
        for (int i : bins_[bin]) test(i);
        for (int i : near_origin_) test(i);
        return n;
    }

    // Blockers on an arbitrary segment, via grid traversal.
    int count_blockers_segment(const Vec2& a, const Vec2& b, int exclude) {
        int n = 0;
        ++query_id_;
        auto visit = [&](int cx, int cy) {
            for (int i : grid_cells_[static_cast<size_t>(cy) * grid_n_ + cx]) {
                if (i == exclude || stamp_[i] == query_id_) continue;
                stamp_[i] = query_id_;
                if (segment_intersects_obstacle(a, b, obstacles_[i])) ++n;
            }
        };
        int cx = cell_index(a.x), cy = cell_index(a.y);
        int tx = cell_index(b.x), ty = cell_index(b.y);
        double dx = b.x - a.x, dy = b.y - a.y;
        int step_x = dx > 0 ? 1 : -1, step_y = dy > 0 ? 1 : -1;
        double inv_dx = dx != 0.0 ? 1.0 / dx : 0.0, inv_dy = dy != 0.0 ? 1.0 / dy : 0.0;
        auto boundary = [&](int cell, int step) {
            return (cell + (step > 0 ? 1 : 0)) * kCell - grid_extent_;
        };
        double t_max_x = dx != 0.0 ? (boundary(cx, step_x) - a.x) * inv_dx : 2.0;
        double t_max_y = dy != 0.0 ? (boundary(cy, step_y) - a.y) * inv_dy : 2.0;
        double t_delta_x = dx != 0.0 ? kCell * std::abs(inv_dx) : 2.0;
        double t_delta_y = dy != 0.0 ? kCell * std::abs(inv_dy) : 2.0;
        for (int guard = 0; guard < 4 * grid_n_; ++guard) {
            visit(cx, cy);
            if (cx == tx && cy == ty) break;
            if (t_max_x < t_max_y) {
                cx += step_x;
                t_max_x += t_delta_x;
                if (cx < 0 || cx >= grid_n_) break;
            } else {
                cy += step_y;
                t_max_y += t_delta_y;
                if (cy < 0 || cy >= grid_n_) break;
            }
        }
        return n;
    }

    // Enumerates the paths of one link and accumulates both model budgets.
    void link_budget(const Vec2& tx, double tx_boresight, Rng& rng, PathBudget& out) {
        auto add_path = [&](double length, int n_blockers, bool has_refl, double dep_az,
                            double arr_az) {
            MmWavePath path;
            path.length_m = std::max(length, kMinLength);
            path.n_blockers = n_blockers;
            path.has_reflection = has_refl;
            path.reflection_coeff = cfg_.refl_coeff;
            path.penetration_loss_db = cfg_.l_o_db;
            path.shadow_sigma_db = cfg_.shadow_db;
            double channel = db_to_linear(mmwave_path_gain_db(path, rng));
            bool dep_main = in_main(tx_boresight, dep_az);
            bool arr_main = in_main(0.0, arr_az);
            double gy = channel * sector_gain(ant_y_, dep_main) * sector_gain(ant_y_, arr_main);
            if (gy < kFloor) gy = 0.0;
            double gx = 0.0;
            bool keep_x = !(cfg_.x_no_reflection && has_refl) &&
                          !(cfg_.x_impenetrable && n_blockers > 0);
            if (keep_x) {
                gx = channel * sector_gain(ant_x_, dep_main) * sector_gain(ant_x_, arr_main);
                if (gx < kFloor) gx = 0.0;
            }
            if (gy > 0.0 || gx > 0.0) out.take(gy, gx);
        };

        double dist = std::hypot(tx.x, tx.y);
        double dep_az = std::atan2(-tx.y, -tx.x);
        double arr_az = std::atan2(tx.y, tx.x);
        add_path(dist, count_blockers_to_origin(tx, -1), false, dep_az, arr_az);

        for (int j : reflectors_) {
            double length = 0.0;
            Vec2 spec;
            if (!specular_path(tx, {0.0, 0.0}, obstacles_[j], length, spec)) continue;
            int n = count_blockers_segment(tx, spec, j) + count_blockers_to_origin(spec, j);
            add_path(length, n, true, std::atan2(spec.y - tx.y, spec.x - tx.x),
                     std::atan2(spec.y, spec.x));
        }
    }

    void run_trial(Rng& rng, Accum& acc) {
        AnnulusSector obstacle_region{kTwoPi, 0.0, obstacle_extent_};
        obstacles_ = sample_obstacles(cfg_.lambda_o(), obstacle_region, cfg_.refl_prob,
                                      cfg_.l_o_db, cfg_.refl_coeff, rng);
        build_indexes();

        // typical link: transmitter on the boresight axis, mutually aligned
        Vec2 tx0{cfg_.d0, 0.0};
        PathBudget typical;
        link_budget(tx0, kTwoPi / 2.0, rng, typical);

        AnnulusSector field_region{kTwoPi, 0.0, window_};
        PointField field = sample_homogeneous_ppp(cfg_.lambda_t(), field_region, rng);
        std::uniform_real_distribution<double> uni_az(0.0, kTwoPi);
        terms_y_.clear();
        terms_x_.clear();
        for (const PolarPoint& pt : field.points) {
            Vec2 pos{pt.x(), pt.y()};
            double boresight = uni_az(rng);
            PathBudget interferer;
            interferer.sum_mode = true;
            link_budget(pos, boresight, rng, interferer);
            terms_y_.push_back({p_, 1.0, interferer.y_gain, 1.0, pt.radius});
            terms_x_.push_back({p_, 1.0, interferer.x_gain, 1.0, pt.radius});
        }
        LinkBudgetTerm signal_y{p_, 1.0, typical.y_gain, 1.0, cfg_.d0};
        LinkBudgetTerm signal_x{p_, 1.0, typical.x_gain, 1.0, cfg_.d0};
        double gy = sinr(ModelSpec::phym(), signal_y, terms_y_, sigma_);
        double gx = sinr(x_spec_, signal_x, terms_x_, sigma_);
        acc.record(gx, gy, beta_);
    }

    ScenarioConfig cfg_;
    double p_, sigma_, beta_, theta_;
    SectorAntenna ant_y_, ant_x_;
    double window_, obstacle_extent_, grid_extent_ = 0.0;
    int grid_n_ = 0;
    ModelSpec x_spec_;

    std::vector<Obstacle> obstacles_;
    std::vector<int> reflectors_, near_origin_;
    std::vector<std::vector<int>> bins_, grid_cells_;
    std::vector<int> stamp_;
    int query_id_ = 0;
    std::vector<LinkBudgetTerm> terms_y_, terms_x_;
};

} // namespace

EngineFactory make_s4_engine_factory(const ScenarioConfig& resolved) {
    return [resolved] { return std::make_unique<S4Engine>(resolved); };
}

} // namespace imsim::detail
