#ifndef SCPS_GEN_HPP
#define SCPS_GEN_HPP

#include "scps/instance.hpp"

#include <cstdint>
#include <utility>

namespace scps {

enum class AvailabilityLevel { Low, Med, High }; // Beta means 0.15 / 0.60 / 0.90

const char* availability_name(AvailabilityLevel a);
AvailabilityLevel availability_from_name(const std::string& name);
double availability_mean(AvailabilityLevel a);

enum class LayoutKind { UniformSquare, Clustered };

struct GenConfig {
    int n_stations = 10;
    LayoutKind layout = LayoutKind::UniformSquare;
    double side_m = 2000.0;   // square side for both layouts
    int clusters = 3;         // Clustered only
    double min_separation_m = 0.0; // optional resampling floor on pairwise distance
    double speed_kmh = 30.0;  // travel-time conversion
    AvailabilityLevel availability = AvailabilityLevel::Med;
    double concentration = 10.0; // Beta a+b total
    std::uint64_t seed = 0;
    double t_max = 10.0;      // minutes
    ActionSpace action_space;
    bool recovery = false;
    double mu_inv = 120.0;    // mean occupied duration when recovery is on
};

// Beta parameters with the requested mean: (mean * kappa, (1 - mean) * kappa).
std::pair<double, double> availability_params(double mean, double concentration);

// Synthetic instance: Beta-distributed availabilities, waiting durations
// uniform over {3, 15, 60, 120} minutes, charging durations uniform over
// {30, 60, 120} minutes, Euclidean travel times, beta_bar 120 (variant A)
// or 200 (variant C). Deterministic for a fixed (config, variant).
Instance generate(const GenConfig& config, Variant variant);

} // namespace scps

#endif // SCPS_GEN_HPP
