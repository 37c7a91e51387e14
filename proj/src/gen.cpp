#include "scps/gen.hpp"

#include "scps/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace scps {

const char* availability_name(AvailabilityLevel a) {
    switch (a) {
    case AvailabilityLevel::Low: return "low";
    case AvailabilityLevel::Med: return "med";
    case AvailabilityLevel::High: return "high";
    }
    return "?";
}

AvailabilityLevel availability_from_name(const std::string& name) {
    if (name == "low") return AvailabilityLevel::Low;
    if (name == "med") return AvailabilityLevel::Med;
    if (name == "high") return AvailabilityLevel::High;
    throw std::invalid_argument("unknown availability level: " + name);
}

double availability_mean(AvailabilityLevel a) {
    switch (a) {
    case AvailabilityLevel::Low: return 0.15;
    case AvailabilityLevel::Med: return 0.60;
    case AvailabilityLevel::High: return 0.90;
    }
    return 0.60;
}

std::pair<double, double> availability_params(double mean, double concentration) {
    if (!(mean > 0.0 && mean < 1.0))
        throw std::invalid_argument("availability_params: mean must lie strictly in (0,1)");
    if (!(concentration > 0.0))
        throw std::invalid_argument("availability_params: concentration must be > 0");
    return {mean * concentration, (1.0 - mean) * concentration};
}

namespace {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double dist_m(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::vector<Point> sample_layout(const GenConfig& config, SplitMix64& rng) {
    const int n = config.n_stations + 1; // start vertex plus stations
    std::vector<Point> pts;
    auto far_enough = [&](const Point& p) {
        for (const Point& q : pts)
            if (dist_m(p, q) < config.min_separation_m) return false;
        return true;
    };
    std::vector<Point> centers;
    if (config.layout == LayoutKind::Clustered) {
        for (int k = 0; k < std::max(1, config.clusters); ++k)
            centers.push_back({config.side_m * rng.next_double(), config.side_m * rng.next_double()});
    }
    while (static_cast<int>(pts.size()) < n) {
        Point p;
        if (config.layout == LayoutKind::UniformSquare || pts.empty()) {
            // The start vertex is drawn uniformly for both layouts.
            p = {config.side_m * rng.next_double(), config.side_m * rng.next_double()};
        } else {
            const Point& c = centers[rng.next_below(centers.size())];
            const double spread = config.side_m / (4.0 * std::max(1, config.clusters));
            p = {c.x + spread * sample_normal(rng), c.y + spread * sample_normal(rng)};
            p.x = std::clamp(p.x, 0.0, config.side_m);
            p.y = std::clamp(p.y, 0.0, config.side_m);
        }
        if (far_enough(p)) pts.push_back(p);
    }
    return pts;
}

} // namespace

Instance generate(const GenConfig& config, Variant variant) {
    if (config.n_stations < 1) throw std::invalid_argument("generate: need at least one station");
    if (config.speed_kmh <= 0.0) throw std::invalid_argument("generate: speed must be > 0");
    if (config.side_m <= 0.0) throw std::invalid_argument("generate: side must be > 0");
    if (config.t_max < 0.0) throw std::invalid_argument("generate: t_max must be >= 0");

    SplitMix64 rng(config.seed);
    const auto pts = sample_layout(config, rng);
    const int n = static_cast<int>(pts.size());

    Instance inst;
    inst.variant = variant;
    inst.t_max = config.t_max;
    inst.beta_bar = variant == Variant::C || variant == Variant::D ? 200.0 : 120.0;
    inst.action_space = config.action_space;
    inst.recovery = config.recovery;

    const double meters_per_minute = config.speed_kmh * 1000.0 / 60.0;
    inst.travel.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) inst.travel[i][j] = dist_m(pts[i], pts[j]) / meters_per_minute;

    const auto [a, b] = availability_params(availability_mean(config.availability),
                                            config.concentration);
    static constexpr double kWaitMenu[] = {3.0, 15.0, 60.0, 120.0};
    static constexpr double kChargeMenu[] = {30.0, 60.0, 120.0};

    inst.stations.resize(static_cast<std::size_t>(n));
    inst.stations[0] = Station{0, 0.0, 0.0, 0.0, std::nullopt, std::nullopt, std::nullopt};
    for (int c = 1; c < n; ++c) {
        Station& s = inst.stations[static_cast<std::size_t>(c)];
        s.id = c;
        s.p = sample_beta(rng, a, b);
        s.wait = kWaitMenu[rng.next_below(4)];
        s.charge = kChargeMenu[rng.next_below(3)];
        if (config.recovery) s.mu_inv = config.mu_inv;
    }
    return inst;
}

} // namespace scps
