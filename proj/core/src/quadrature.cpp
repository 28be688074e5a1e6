#include "occtime/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace occtime {

namespace {

constexpr int kNewtonMaxIter = 200;
constexpr double kNewtonEps = 1e-14;

// Gauss-Jacobi abscissas/weights on [-1,1] for the weight
// (1-x)^alf (1+x)^bet, by Newton iteration on the three-term recurrence.
// Nodes come out in decreasing order.
void gaujac(int n, double alf, double bet, std::vector<double>& x,
            std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const double alfbet = alf + bet;
    double z = 0.0, pp = 0.0, p2 = 0.0, temp = 0.0;
    for (int i = 1; i <= n; ++i) {
        if (i == 1) {
            const double an = alf / n, bn = bet / n;
            const double r1 = (1.0 + alf) * (2.78 / (4.0 + n * n) + 0.768 * an / n);
            const double r2 =
                1.0 + 1.48 * an + 0.96 * bn + 0.452 * an * an + 0.83 * an * bn;
            z = 1.0 - r1 / r2;
        } else if (i == 2) {
            const double r1 = (4.1 + alf) / ((1.0 + alf) * (1.0 + 0.156 * alf));
            const double r2 = 1.0 + 0.06 * (n - 8.0) * (1.0 + 0.12 * alf) / n;
            const double r3 = 1.0 + 0.012 * bet * (1.0 + 0.25 * std::fabs(alf)) / n;
            z -= (1.0 - z) * r1 * r2 * r3;
        } else if (i == 3) {
            const double r1 = (1.67 + 0.28 * alf) / (1.0 + 0.37 * alf);
            const double r2 = 1.0 + 0.22 * (n - 8.0) / n;
            const double r3 = 1.0 + 8.0 * bet / ((6.28 + bet) * n * n);
            z -= (x[0] - z) * r1 * r2 * r3;
        } else if (i == n - 1) {
            const double r1 = (1.0 + 0.235 * bet) / (0.766 + 0.119 * bet);
            const double r2 = 1.0 / (1.0 + 0.639 * (n - 4.0) / (1.0 + 0.71 * (n - 4.0)));
            const double r3 = 1.0 / (1.0 + 20.0 * alf / ((7.5 + alf) * n * n));
            z += (z - x[n - 4]) * r1 * r2 * r3;
        } else if (i == n) {
            const double r1 = (1.0 + 0.37 * bet) / (1.67 + 0.28 * bet);
            const double r2 = 1.0 / (1.0 + 0.22 * (n - 8.0) / n);
            const double r3 = 1.0 / (1.0 + 8.0 * alf / ((6.28 + alf) * n * n));
            z += (z - x[n - 3]) * r1 * r2 * r3;
        } else {
            z = 3.0 * x[i - 2] - 3.0 * x[i - 3] + x[i - 4];
        }
        int its = 1;
        for (; its <= kNewtonMaxIter; ++its) {
            temp = 2.0 + alfbet;
            double p1 = (alf - bet + temp * z) / 2.0;
            p2 = 1.0;
            for (int j = 2; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                temp = 2.0 * j + alfbet;
                const double a = 2.0 * j * (j + alfbet) * (temp - 2.0);
                const double b =
                    (temp - 1.0) * (alf * alf - bet * bet + temp * (temp - 2.0) * z);
                const double c = 2.0 * (j - 1 + alf) * (j - 1 + bet) * temp;
                p1 = (b * p2 - c * p3) / a;
            }
            pp = (n * (alf - bet - temp * z) * p1 +
                  2.0 * (n + alf) * (n + bet) * p2) /
                 (temp * (1.0 - z * z));
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) <= kNewtonEps) break;
        }
        if (its > kNewtonMaxIter)
            throw convergence_error("gauss_jacobi_rule: Newton iteration failed");
        x[i - 1] = z;
        w[i - 1] = std::exp(std::lgamma(alf + n) + std::lgamma(bet + n) -
                            std::lgamma(n + 1.0) - std::lgamma(n + alfbet + 1.0)) *
                   temp * std::pow(2.0, alfbet) / (pp * p2);
    }
}

std::map<std::tuple<int, double, double>, std::unique_ptr<JacobiRule>> rule_cache;
std::mutex rule_cache_mutex;

// Iterated Aitken acceleration of a sequence with geometric error terms.
// Returns the deepest stable value; err receives the last increment seen.
double accelerate(std::vector<double> s, double* err) {
    *err = s.size() >= 2 ? std::fabs(s[s.size() - 1] - s[s.size() - 2])
                         : HUGE_VAL;
    for (int level = 0; level < 3 && s.size() >= 3; ++level) {
        std::vector<double> t;
        t.reserve(s.size() - 2);
        for (std::size_t i = 0; i + 2 < s.size(); ++i) {
            const double d1 = s[i + 1] - s[i];
            const double d2 = s[i + 2] - 2.0 * s[i + 1] + s[i];
            t.push_back(d2 != 0.0 ? s[i + 2] - (s[i + 2] - s[i + 1]) *
                                                  (s[i + 2] - s[i + 1]) / d2
                                  : s[i + 2]);
        }
        s = std::move(t);
        if (s.size() >= 2)
            *err = std::min(*err, std::fabs(s[s.size() - 1] - s[s.size() - 2]));
    }
    return s.back();
}

} // namespace

const JacobiRule& gauss_jacobi_rule(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_jacobi_rule: n must be >= 1");
    if (!(a > -1.0 && b > -1.0))
        throw std::domain_error("gauss_jacobi_rule: exponents must exceed -1");
    const auto key = std::make_tuple(n, a, b);
    std::lock_guard<std::mutex> lock(rule_cache_mutex);
    auto it = rule_cache.find(key);
    if (it != rule_cache.end()) return *it->second;

    std::vector<double> x, w;
    gaujac(n, a, b, x, w);
    auto rule = std::make_unique<JacobiRule>();
    rule->nodes.resize(n);
    rule->weights.resize(n);
    // map [-1,1] with weight (1-x)^a (1+x)^b onto [0,1] with (1-s)^a s^b
    const double scale = std::pow(2.0, -(a + b + 1.0));
    for (int i = 0; i < n; ++i) {
        rule->nodes[i] = 0.5 * (1.0 + x[i]);
        rule->weights[i] = w[i] * scale;
    }
    auto& slot = rule_cache[key];
    slot = std::move(rule);
    return *slot;
}

double jacobi_integrate(const std::function<double(double)>& smooth, double a,
                        double b, const QuadratureSpec& spec) {
    constexpr int kMaxNodes = 16384;
    int n = 32;
    std::vector<double> sums;
    double scale = 1.0;
    double best_err = HUGE_VAL;
    double best_val = 0.0;
    for (int refinement = 0; refinement <= spec.max_refinements; ++refinement) {
        const JacobiRule& rule = gauss_jacobi_rule(n, a, b);
        double sum = 0.0;
        double sum_abs = 0.0;
        for (int i = 0; i < n; ++i) {
            const double term = rule.weights[i] * smooth(rule.nodes[i]);
            sum += term;
            sum_abs += std::fabs(term);
        }
        sums.push_back(sum);
        // a near-cancelling integrand cannot meet a purely relative target;
        // let the magnitude of the integrand contribute to the scale
        scale = std::max({std::fabs(sum), 1e-2 * sum_abs, 1e-300});
        if (sums.size() >= 2 &&
            std::fabs(sum - sums[sums.size() - 2]) <= spec.rel_tol * scale)
            return sum;
        // non-analytic smooth factors converge only polynomially in n; the
        // doubling errors are then geometric and Aitken-summable
        if (sums.size() >= 4) {
            double err = HUGE_VAL;
            const double value = accelerate(sums, &err);
            if (err < best_err) {
                best_err = err;
                best_val = value;
            }
            if (err <= 0.1 * spec.rel_tol * scale) return value;
        }
        if (n >= kMaxNodes) break;
        n *= 2;
    }
    // past ~4k nodes the rule construction itself is the noise floor; accept
    // a mildly degraded value rather than refining into that noise
    if (best_err <= 20.0 * spec.rel_tol * scale) return best_val;
    throw convergence_error("jacobi_integrate: node doubling did not converge");
}

namespace {

double gl16(const std::function<double(double)>& F, double a, double b,
            double* abs_sum = nullptr) {
    const JacobiRule& rule = gauss_jacobi_rule(16, 0.0, 0.0);
    const double len = b - a;
    double sum = 0.0;
    double asum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double term = rule.weights[i] * F(a + len * rule.nodes[i]);
        sum += term;
        asum += std::fabs(term);
    }
    if (abs_sum) *abs_sum = asum * len;
    return sum * len;
}

double adapt_interval(const std::function<double(double)>& F, double a, double b,
                      double tol, double noise_rel, int depth) {
    const double m = 0.5 * (a + b);
    const double whole = gl16(F, a, b);
    double abs_lo = 0.0, abs_hi = 0.0;
    const double halves = gl16(F, a, m, &abs_lo) + gl16(F, m, b, &abs_hi);
    // the noise floor of the two-panel estimate: agreement below the
    // evaluation noise of the integrand itself is unattainable, and
    // recursing after it only multiplies work without gaining accuracy.
    // The two estimates sample disjoint node sets, so their difference in a
    // noise-limited region is a small multiple of the noise itself; the
    // factor keeps the recursion from hovering at the margin
    const double floor = 4.0 * noise_rel * (abs_lo + abs_hi);
    if (std::fabs(halves - whole) <= std::max(tol, floor) || depth >= 30)
        return halves;
    return adapt_interval(F, a, m, 0.5 * tol, noise_rel, depth + 1) +
           adapt_interval(F, m, b, 0.5 * tol, noise_rel, depth + 1);
}

// One dyadic sweep toward both endpoints.  panel_rel and tail_rel are
// tolerances relative to a running scale (largest panel magnitude or
// accumulated total seen so far), so integrands of any magnitude work.
double panel_sweep(const std::function<double(double)>& F, double sigma0,
                   double sigma1, double panel_rel, double tail_rel,
                   double noise_rel) {
    double total = 0.0;
    double scale = 1e-300;
    // panels below 2^-50 would round 1 - 2^-k to 1.0; the geometric tail
    // estimate must have stabilized long before that
    constexpr int kDeepestPanel = 50;
    for (int side = 0; side < 2; ++side) {
        const double sigma = side == 0 ? sigma0 : sigma1;
        const double r_model = std::exp2(-sigma);
        double side_total = 0.0;
        double prev = 0.0;
        bool have_prev = false;
        bool done = false;
        double best_err = HUGE_VAL;
        double best_val = 0.0;
        int ok_streak = 0;
        std::vector<double> ests;
        for (int k = 1; k <= kDeepestPanel; ++k) {
            const double lo = std::ldexp(1.0, -(k + 1));
            const double hi = std::ldexp(1.0, -k);
            const double a = side == 0 ? lo : 1.0 - hi;
            const double b = side == 0 ? hi : 1.0 - lo;
            // probe the panel once to let its magnitude feed the scale
            scale = std::max(scale, std::fabs(gl16(F, a, b)));
            const double c =
                adapt_interval(F, a, b, panel_rel * scale, noise_rel, 0);
            side_total += c;
            scale = std::max({scale, std::fabs(c),
                              std::fabs(total + side_total)});
            if (c == 0.0) {
                total += side_total;
                done = true;
                break;
            }
            double r = r_model;
            bool in_asymptotic_regime = false;
            if (have_prev && prev != 0.0) {
                const double ratio = c / prev;
                if (ratio > 0.0 && ratio < 0.97) {
                    r = ratio;
                    // an extrapolated tail is only trustworthy once the
                    // observed decay matches the declared endpoint exponent;
                    // before that the sequence can plateau on a transient
                    // decay rate and extrapolate to the wrong limit
                    in_asymptotic_regime =
                        std::fabs(ratio - r_model) <= 0.05 * r_model;
                }
            }
            ests.push_back(side_total + c * r / (1.0 - r));
            if (ests.size() >= 4) {
                double err = HUGE_VAL;
                const double value = accelerate(ests, &err);
                if (err < best_err) {
                    best_err = err;
                    best_val = value;
                }
                // competing correction powers can make the error estimate
                // dip transiently; require two consecutive panels under
                // tolerance before trusting the extrapolated tail
                if (in_asymptotic_regime && err <= tail_rel * scale) {
                    if (++ok_streak >= 2) {
                        total += value;
                        done = true;
                        break;
                    }
                } else {
                    ok_streak = 0;
                }
            }
            prev = c;
            have_prev = true;
        }
        if (!done) {
            // deep panels near 1 lose the distance-to-endpoint to rounding;
            // accept a mildly degraded tail rather than refining into noise
            if (best_err <= 20.0 * tail_rel * scale) {
                total += best_val;
            } else {
                throw convergence_error(
                    "integrate_01: endpoint tail did not converge");
            }
        }
    }
    return total;
}

} // namespace

double integrate_interval(const std::function<double(double)>& F, double a,
                          double b, double abs_tol) {
    return adapt_interval(F, a, b, abs_tol, 1e-14, 0);
}

double integrate_01(const std::function<double(double)>& F, double sigma0,
                    double sigma1, const QuadratureSpec& spec) {
    if (!(sigma0 > 0.0 && sigma1 > 0.0))
        throw std::domain_error("integrate_01: endpoint exponents must be positive");
    return panel_sweep(F, sigma0, sigma1, 0.02 * spec.rel_tol,
                       0.5 * spec.rel_tol, spec.eval_noise_rel);
}

} // namespace occtime
