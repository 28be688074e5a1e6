#include "occtime/transforms.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "occtime/kernels.hpp"
#include "occtime/laws.hpp"

namespace occtime {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// inner evaluations get a little headroom under the outer tolerance
QuadratureSpec tighten(const QuadratureSpec& spec) {
    QuadratureSpec inner = spec;
    inner.rel_tol = std::max(spec.rel_tol * 1e-1, 1e-10);
    return inner;
}

} // namespace

TransformPair stieltjes_lamperti(const LampertiParams& params, double lambda,
                                 const QuadratureSpec& spec) {
    if (!(lambda > 0.0))
        throw std::domain_error("stieltjes_lamperti: lambda must be positive");
    const double a = params.alpha();
    const double p = params.p();
    const double numeric = integrate_01(
        [&](double x) { return lamperti_density(params, x) / (lambda + x); }, a, a,
        spec);
    const double closed =
        (p * std::pow(lambda + 1.0, a - 1.0) + (1.0 - p) * std::pow(lambda, a - 1.0)) /
        (p * std::pow(lambda + 1.0, a) + (1.0 - p) * std::pow(lambda, a));
    return {numeric, closed};
}

TransformPair stieltjes_bfry(double alpha, double lambda,
                             const QuadratureSpec& spec) {
    if (!(lambda > 0.0))
        throw std::domain_error("stieltjes_bfry: lambda must be positive");
    const double numeric = integrate_01(
        [&](double x) { return bfry_density(alpha, x) / (lambda + x); }, alpha,
        alpha, spec);
    const double closed =
        alpha / (1.0 - alpha) *
        (std::pow(lambda, alpha - 1.0) - std::pow(1.0 + lambda, alpha - 1.0)) /
        (std::pow(1.0 + lambda, alpha) - std::pow(lambda, alpha));
    return {numeric, closed};
}

TransformPair gst_bridge(const LampertiParams& params, double lambda,
                         const QuadratureSpec& spec) {
    if (!(lambda > 0.0))
        throw std::domain_error("gst_bridge: lambda must be positive");
    const double a = params.alpha();
    const double p = params.p();
    const QuadratureSpec inner = tighten(spec);
    QuadratureSpec outer = spec;
    // each outer evaluation is itself an inner quadrature; tell the outer
    // refinement where that evaluation noise sits so it does not chase it
    outer.eval_noise_rel = inner.rel_tol;
    const double numeric = integrate_01(
        [&](double x) {
            return std::pow(lambda + x, -a) * bridge_pdf(params, x, inner);
        },
        2.0 * a, 2.0 * a, outer);
    const double closed = 1.0 / (p * std::pow(1.0 + lambda, a) +
                                 (1.0 - p) * std::pow(lambda, a));
    return {numeric, closed};
}

TransformPair gst_excursion(const ExcursionParams& params, double lambda,
                            const QuadratureSpec& spec) {
    if (!(lambda > 0.0))
        throw std::domain_error("gst_excursion: lambda must be positive");
    const double g = params.gamma();
    QuadratureSpec inner = tighten(spec);
    QuadratureSpec outer = spec;
    outer.eval_noise_rel = inner.rel_tol;
    const double numeric = integrate_01(
        [&](double x) {
            QuadratureSpec local = inner;
            if (x > 0.999) local.node_rule = NodeRule::adaptive_subdivision;
            return std::pow(lambda + x, 1.0 - g) * excursion_pdf(params, x, local);
        },
        2.0 * g - 1.0, 2.0 * g - 1.0, outer);
    const double closed =
        g / (std::pow(lambda + 1.0, g) - std::pow(lambda, g));
    return {numeric, closed};
}

std::vector<double> default_lambda_grid() {
    std::vector<double> grid;
    for (int k = -4; k <= 6; ++k) grid.push_back(std::ldexp(1.0, k));
    return grid;
}

TransformResidual residual_grid(
    const std::string& name,
    const std::function<TransformPair(double)>& transform,
    const std::vector<double>& lambda_grid) {
    TransformResidual r;
    r.name = name;
    r.lambda_grid = lambda_grid;
    for (const double lambda : lambda_grid) {
        const TransformPair pair = transform(lambda);
        r.numeric.push_back(pair.numeric);
        r.closed_form.push_back(pair.closed_form);
        const double rel =
            std::fabs(pair.numeric - pair.closed_form) / std::fabs(pair.closed_form);
        r.max_rel_err = std::max(r.max_rel_err, rel);
    }
    return r;
}

std::string residual_to_csv(const TransformResidual& r) {
    std::ostringstream out;
    out << "# occtime-transform-residual\n";
    out << "# name=" << r.name << "\n";
    out << "# max_rel_err=" << fmt17(r.max_rel_err) << "\n";
    out << "lambda,numeric,closed_form\n";
    for (std::size_t i = 0; i < r.lambda_grid.size(); ++i)
        out << fmt17(r.lambda_grid[i]) << "," << fmt17(r.numeric[i]) << ","
            << fmt17(r.closed_form[i]) << "\n";
    return out.str();
}

std::string residual_to_json(const TransformResidual& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["lambda"] = r.lambda_grid;
    j["numeric"] = r.numeric;
    j["closed_form"] = r.closed_form;
    j["max_rel_err"] = r.max_rel_err;
    return j.dump(2);
}

double resemblance_sup(double alpha, int n_grid, const QuadratureSpec& spec) {
    if (!(alpha > 0.5 && alpha < 1.0))
        throw std::domain_error("resemblance_sup: alpha must lie in (1/2,1)");
    const LampertiParams bridge_params(alpha, 0.5);
    const ExcursionParams excursion_params(alpha);
    double sup = 0.0;
    for (const double x : interior_grid(n_grid)) {
        const double g = bridge_cdf(bridge_params, x, spec);
        const double h = excursion_cdf(excursion_params, x, spec);
        sup = std::max(sup, std::fabs(g - h));
    }
    return sup;
}

} // namespace occtime
