#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "occtime/params.hpp"

namespace occtime::mc {

struct PathConfig {
    std::size_t n_steps = 4096; // power of two (bridge bisection)
    std::size_t n_paths = 10000;
    std::uint64_t seed = 1;
    unsigned workers = 1;

    void validate() const; // throws std::domain_error
};

/// Sorted Monte Carlo sample of occupation-time fractions.
struct EmpiricalCDF {
    std::vector<double> samples; // sorted, size n_paths
    PathConfig config;

    double value_at(double x) const; // right-continuous empirical cdf
};

/// Counter-keyed splitmix64 stream: a deterministic function of
/// (seed, stream index), independent of scheduling.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t stream);
    std::uint64_t next_u64();
    double next_unit();   // [0,1), 53-bit
    double next_open();   // (0,1)
    double next_gaussian();

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Brownian motion occupation fractions; oracle for the arc-sine law.
EmpiricalCDF simulate_bm_occupation(const PathConfig& config);

/// Brownian bridge (dyadic bisection) occupation fractions; the law is
/// uniform on (0,1).
EmpiricalCDF simulate_bridge_occupation(const PathConfig& config);

/// Skew Brownian bridge: |bridge| with each excursion independently signed
/// positive with probability p.  Oracle for G_{1/2,p}.
/// degenerate_paths, when given, counts paths with fewer than 2 excursions.
EmpiricalCDF simulate_skew_bridge_occupation(double p, const PathConfig& config,
                                             std::size_t* degenerate_paths = nullptr);

/// Closed-form positivity parameter of a strictly stable law,
/// c = 1/2 + (pi a)^{-1} atan(skew tan(pi a / 2)).
double stable_positivity(double stable_index, double skew);

struct StableOccupation {
    EmpiricalCDF ecdf;
    double positivity;           // closed form c
    double empirical_positivity; // fraction of paths with X(1) > 0
};

/// Stable-process occupation fractions via the Chambers-Mallows-Stuck
/// sampler; oracle for the generalized arc-sine law f_{Z_c}.
StableOccupation simulate_stable_occupation(double stable_index, double skew,
                                            const PathConfig& config);

/// Exact law of the positive-side time fraction over all simple random-walk
/// bridges of length 2 n_half (exhaustive enumeration, exact integers).
struct WalkBridgeLaw {
    int n_half = 0;
    long long total_paths = 0;       // C(2n, n)
    std::vector<long long> counts;   // counts[k] = #bridges with fraction k/n

    bool exactly_uniform() const;    // rational equality, no tolerance
};
WalkBridgeLaw walk_bridge_exact(int n_half);

/// Two-sided one-sample Kolmogorov-Smirnov statistic.
double ks_statistic(const EmpiricalCDF& emp,
                    const std::function<double(double)>& cdf);

std::string empirical_to_csv(const EmpiricalCDF& e);
std::string empirical_to_json(const EmpiricalCDF& e);

} // namespace occtime::mc
