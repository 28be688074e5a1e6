#include "occtime/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace occtime::mc {

namespace {

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void parallel_paths(std::size_t n_paths, unsigned workers,
                    const std::function<void(std::size_t)>& body) {
    if (workers <= 1 || n_paths < 2) {
        for (std::size_t i = 0; i < n_paths; ++i) body(i);
        return;
    }
    std::vector<std::thread> threads;
    const std::size_t nw = std::min<std::size_t>(workers, n_paths);
    for (std::size_t w = 0; w < nw; ++w) {
        threads.emplace_back([&, w] {
            for (std::size_t i = w; i < n_paths; i += nw) body(i);
        });
    }
    for (auto& t : threads) t.join();
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void PathConfig::validate() const {
    if (!is_power_of_two(n_steps))
        throw std::domain_error("PathConfig: n_steps must be a power of two >= 2");
    if (n_paths < 1) throw std::domain_error("PathConfig: n_paths must be >= 1");
    if (workers < 1) throw std::domain_error("PathConfig: workers must be >= 1");
}

double EmpiricalCDF::value_at(double x) const {
    const auto it = std::upper_bound(samples.begin(), samples.end(), x);
    return static_cast<double>(it - samples.begin()) / samples.size();
}

Stream::Stream(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1)))) {}

std::uint64_t Stream::next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Stream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Stream::next_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Stream::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u = next_open();
    const double v = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double theta = 2.0 * M_PI * v;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

EmpiricalCDF simulate_bm_occupation(const PathConfig& config) {
    config.validate();
    const std::size_t n = config.n_steps;
    const double sd = std::sqrt(1.0 / static_cast<double>(n));
    EmpiricalCDF out;
    out.samples.assign(config.n_paths, 0.0);
    out.config = config;
    parallel_paths(config.n_paths, config.workers, [&](std::size_t path) {
        Stream rng(config.seed, path);
        double x = 0.0;
        std::size_t positive = 0;
        for (std::size_t k = 0; k < n; ++k) {
            x += sd * rng.next_gaussian();
            if (x > 0.0) ++positive;
        }
        out.samples[path] = static_cast<double>(positive) / n;
    });
    std::sort(out.samples.begin(), out.samples.end());
    return out;
}

namespace {

// Dyadic bridge bisection into path[0..n]; path[0] = path[n] = 0.
void fill_bridge(std::vector<double>& path, std::size_t n, Stream& rng) {
    path[0] = 0.0;
    path[n] = 0.0;
    for (std::size_t span = n; span > 1; span /= 2) {
        const double sd = std::sqrt(static_cast<double>(span) / (4.0 * n));
        for (std::size_t i = span / 2; i < n; i += span)
            path[i] = 0.5 * (path[i - span / 2] + path[i + span / 2]) +
                      sd * rng.next_gaussian();
    }
}

} // namespace

EmpiricalCDF simulate_bridge_occupation(const PathConfig& config) {
    config.validate();
    const std::size_t n = config.n_steps;
    EmpiricalCDF out;
    out.samples.assign(config.n_paths, 0.0);
    out.config = config;
    parallel_paths(config.n_paths, config.workers, [&](std::size_t path_idx) {
        Stream rng(config.seed, path_idx);
        std::vector<double> path(n + 1);
        fill_bridge(path, n, rng);
        std::size_t positive = 0;
        for (std::size_t k = 1; k <= n; ++k)
            if (path[k] > 0.0) ++positive;
        out.samples[path_idx] = static_cast<double>(positive) / n;
    });
    std::sort(out.samples.begin(), out.samples.end());
    return out;
}

EmpiricalCDF simulate_skew_bridge_occupation(double p, const PathConfig& config,
                                             std::size_t* degenerate_paths) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("simulate_skew_bridge_occupation: p must lie in (0,1)");
    config.validate();
    const std::size_t n = config.n_steps;
    EmpiricalCDF out;
    out.samples.assign(config.n_paths, 0.0);
    out.config = config;
    std::vector<std::uint8_t> degenerate(config.n_paths, 0);
    parallel_paths(config.n_paths, config.workers, [&](std::size_t path_idx) {
        Stream rng(config.seed, path_idx);
        std::vector<double> path(n + 1);
        fill_bridge(path, n, rng);
        // maximal constant-sign runs of the underlying bridge are the
        // excursions of |bridge|; exact zeros separate runs
        std::size_t positive_cells = 0;
        std::size_t excursions = 0;
        int run_sign = 0;
        std::size_t run_len = 0;
        auto close_run = [&] {
            if (run_len == 0) return;
            ++excursions;
            if (rng.next_unit() < p) positive_cells += run_len;
            run_len = 0;
        };
        for (std::size_t k = 1; k < n; ++k) {
            const int s = path[k] > 0.0 ? 1 : (path[k] < 0.0 ? -1 : 0);
            if (s != run_sign) {
                close_run();
                run_sign = s;
            }
            if (s != 0) ++run_len;
        }
        close_run();
        if (excursions < 2) degenerate[path_idx] = 1;
        out.samples[path_idx] = static_cast<double>(positive_cells) / n;
    });
    if (degenerate_paths) {
        *degenerate_paths = 0;
        for (const auto d : degenerate) *degenerate_paths += d;
    }
    std::sort(out.samples.begin(), out.samples.end());
    return out;
}

double stable_positivity(double stable_index, double skew) {
    if (!(stable_index > 1.0 && stable_index < 2.0))
        throw std::domain_error("stable_positivity: index must lie in (1,2)");
    if (!(skew >= -1.0 && skew <= 1.0))
        throw std::domain_error("stable_positivity: skew must lie in [-1,1]");
    return 0.5 + std::atan(skew * std::tan(M_PI * stable_index / 2.0)) /
                     (M_PI * stable_index);
}

namespace {

// Chambers-Mallows-Stuck variate for a strictly stable law of index a in
// (1,2) and skewness parameter b in [-1,1] (S1 parameterization, no drift).
double stable_variate(double a, double b, Stream& rng) {
    const double u = M_PI * (rng.next_open() - 0.5);
    const double w = -std::log(rng.next_open());
    const double b_ab = std::atan(b * std::tan(M_PI * a / 2.0)) / a;
    const double s = std::pow(1.0 + b * b * std::pow(std::tan(M_PI * a / 2.0), 2),
                              1.0 / (2.0 * a));
    return s * std::sin(a * (u + b_ab)) / std::pow(std::cos(u), 1.0 / a) *
           std::pow(std::cos(u - a * (u + b_ab)) / w, (1.0 - a) / a);
}

} // namespace

StableOccupation simulate_stable_occupation(double stable_index, double skew,
                                            const PathConfig& config) {
    const double c = stable_positivity(stable_index, skew);
    config.validate();
    const std::size_t n = config.n_steps;
    const double scale = std::pow(1.0 / static_cast<double>(n), 1.0 / stable_index);
    StableOccupation out;
    out.positivity = c;
    out.ecdf.samples.assign(config.n_paths, 0.0);
    out.ecdf.config = config;
    std::vector<std::uint8_t> end_positive(config.n_paths, 0);
    parallel_paths(config.n_paths, config.workers, [&](std::size_t path) {
        Stream rng(config.seed, path);
        double x = 0.0;
        std::size_t positive = 0;
        for (std::size_t k = 0; k < n; ++k) {
            x += scale * stable_variate(stable_index, skew, rng);
            if (x > 0.0) ++positive;
        }
        end_positive[path] = x > 0.0 ? 1 : 0;
        out.ecdf.samples[path] = static_cast<double>(positive) / n;
    });
    std::size_t pos = 0;
    for (const auto e : end_positive) pos += e;
    out.empirical_positivity = static_cast<double>(pos) / config.n_paths;
    std::sort(out.ecdf.samples.begin(), out.ecdf.samples.end());
    return out;
}

bool WalkBridgeLaw::exactly_uniform() const {
    if (counts.size() != static_cast<std::size_t>(n_half) + 1) return false;
    if (total_paths % (n_half + 1) != 0) return false;
    const long long each = total_paths / (n_half + 1);
    for (const long long c : counts)
        if (c != each) return false;
    return true;
}

WalkBridgeLaw walk_bridge_exact(int n_half) {
    if (n_half < 1 || n_half > 8)
        throw std::domain_error("walk_bridge_exact: n_half must lie in [1,8]");
    const int len = 2 * n_half;
    WalkBridgeLaw law;
    law.n_half = n_half;
    law.counts.assign(n_half + 1, 0);
    for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
        int s = 0;
        int above = 0;
        bool ok = true;
        for (int k = 0; k < len; ++k) {
            const int step = (mask >> k) & 1 ? 1 : -1;
            const int prev = s;
            s += step;
            // an edge lies above 0 iff its endpoint sum is positive
            if (prev + s > 0) ++above;
        }
        ok = (s == 0);
        if (!ok) continue;
        ++law.total_paths;
        // edges-above comes in pairs for a bridge
        if (above % 2 != 0)
            throw std::logic_error("walk_bridge_exact: odd edge count on a bridge");
        ++law.counts[above / 2];
    }
    return law;
}

double ks_statistic(const EmpiricalCDF& emp,
                    const std::function<double(double)>& cdf) {
    if (emp.samples.empty())
        throw std::domain_error("ks_statistic: empty sample");
    const double n = static_cast<double>(emp.samples.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < emp.samples.size(); ++i) {
        const double f = cdf(emp.samples[i]);
        sup = std::max(sup, std::fabs((i + 1) / n - f));
        sup = std::max(sup, std::fabs(f - i / n));
    }
    return sup;
}

std::string empirical_to_csv(const EmpiricalCDF& e) {
    std::ostringstream out;
    out << "# occtime-empirical-cdf\n";
    out << "# n_steps=" << e.config.n_steps << "\n";
    out << "# n_paths=" << e.config.n_paths << "\n";
    out << "# seed=" << e.config.seed << "\n";
    out << "fraction\n";
    for (const double s : e.samples) out << fmt17(s) << "\n";
    return out.str();
}

std::string empirical_to_json(const EmpiricalCDF& e) {
    nlohmann::json j;
    j["n_steps"] = e.config.n_steps;
    j["n_paths"] = e.config.n_paths;
    j["seed"] = e.config.seed;
    j["samples"] = e.samples;
    return j.dump();
}

} // namespace occtime::mc
