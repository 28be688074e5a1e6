#include "occtime/laws.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "occtime/special.hpp"
#include "occtime/version.hpp"

namespace occtime {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void run_indexed(std::size_t n, unsigned workers,
                 const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> threads;
    const std::size_t nw = std::min<std::size_t>(workers, n);
    for (std::size_t w = 0; w < nw; ++w) {
        threads.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += nw) fn(i);
        });
    }
    for (auto& t : threads) t.join();
}

const char* node_rule_name(NodeRule r) {
    return r == NodeRule::jacobi_weighted ? "jacobi_weighted" : "adaptive_subdivision";
}

NodeRule node_rule_from_name(const std::string& s) {
    if (s == "jacobi_weighted") return NodeRule::jacobi_weighted;
    if (s == "adaptive_subdivision") return NodeRule::adaptive_subdivision;
    throw std::invalid_argument("unknown node rule: " + s);
}

} // namespace

SingularFunction bridge_kernel_function(const LampertiParams& params, int deriv,
                                        int max_order) {
    const double beta = params.alpha() + 1.0 - deriv;
    return SingularFunction(
        [params, deriv](double t, int k) {
            return g_kernel_derivatives(params, t, k + deriv)[k + deriv];
        },
        beta, max_order);
}

SingularFunction excursion_kernel_function(const ExcursionParams& params,
                                           int deriv, int max_order) {
    const double beta = params.gamma() + 1.0 - deriv;
    return SingularFunction(
        [params, deriv](double t, int k) {
            return h_kernel_derivatives(params, t, k + deriv)[k + deriv];
        },
        beta, max_order);
}

namespace {

// Both kernels blow up algebraically at t = 1 (a (1-t)^{alpha-1} term in the
// derivative chain unless alpha = 1/2); once x gets close to 1 the Jacobi
// rule sees that as a near-singular smooth factor and stalls, so switch to
// the adaptive panels there.  The same happens across the whole interior for
// small index: the kernel's t^{alpha}, t^{2alpha}, ... correction powers sit
// far from the Jacobi weight and node doubling stops converging, so skip the
// doomed attempt instead of paying for it and falling back.
QuadratureSpec near_one_spec(const QuadratureSpec& spec, double x,
                             double index) {
    QuadratureSpec local = spec;
    if (x > 0.9 || index < 0.4)
        local.node_rule = NodeRule::adaptive_subdivision;
    return local;
}

} // namespace

double bridge_cdf(const LampertiParams& params, double x,
                  const QuadratureSpec& spec) {
    // occupation of the complementary half-line swaps p and 1-p, so the
    // whole right half reflects onto the left, where the endpoint machinery
    // is fastest and most accurate
    if (x > 0.5)
        return 1.0 - bridge_cdf(LampertiParams(params.alpha(), 1.0 - params.p()),
                                1.0 - x, spec);
    return std::tgamma(params.alpha()) *
           rl_integral(bridge_kernel_function(params), params.alpha(), x,
                       near_one_spec(spec, x, params.alpha()));
}

double bridge_pdf(const LampertiParams& params, double x,
                  const QuadratureSpec& spec) {
    if (x > 0.5)
        return bridge_pdf(LampertiParams(params.alpha(), 1.0 - params.p()),
                          1.0 - x, spec);
    return std::tgamma(params.alpha()) *
           rl_integral(bridge_kernel_function(params, 1), params.alpha(), x,
                       near_one_spec(spec, x, params.alpha()));
}

PowerLaw bridge_pdf_asymptote(const LampertiParams& params) {
    const double a = params.alpha();
    const double p = params.p();
    const double c = std::sin(a * M_PI) / M_PI * (1.0 - p) / (p * p) * a *
                     std::tgamma(a) * std::tgamma(a) / std::tgamma(2.0 * a);
    return {2.0 * a - 1.0, c};
}

double bridge_cdf_derivative(const LampertiParams& params, int n, double x,
                             const QuadratureSpec& spec) {
    if (x > 0.5) {
        const double sign = n % 2 == 1 ? 1.0 : -1.0;
        return sign * bridge_cdf_derivative(
                          LampertiParams(params.alpha(), 1.0 - params.p()), n,
                          1.0 - x, spec);
    }
    return std::tgamma(params.alpha()) *
           rl_nth_derivative(bridge_kernel_function(params), params.alpha(), n, x,
                             near_one_spec(spec, x, params.alpha()));
}

double excursion_cdf(const ExcursionParams& params, double x,
                     const QuadratureSpec& spec) {
    // the excursion occupation law is symmetric about 1/2
    if (x > 0.5) return 1.0 - excursion_cdf(params, 1.0 - x, spec);
    return std::tgamma(params.gamma()) *
           rl_integral(excursion_kernel_function(params, 1), params.gamma(), x,
                       near_one_spec(spec, x, params.gamma()));
}

double excursion_pdf(const ExcursionParams& params, double x,
                     const QuadratureSpec& spec) {
    if (x > 0.5) return excursion_pdf(params, 1.0 - x, spec);
    return std::tgamma(params.gamma()) *
           rl_derivative_via_delta(excursion_kernel_function(params, 1),
                                   params.gamma(), x, near_one_spec(spec, x, params.gamma()));
}

PowerLaw excursion_pdf_asymptote(const ExcursionParams& params) {
    const double g = params.gamma();
    const double gg = std::tgamma(g + 1.0);
    const double c = std::sin(g * M_PI) / M_PI * gg * gg / std::tgamma(2.0 * g) *
                     (2.0 * g - 1.0) / (1.0 - g);
    return {2.0 * g - 2.0, c};
}

double excursion_cdf_derivative(const ExcursionParams& params, int n, double x,
                                const QuadratureSpec& spec) {
    if (x > 0.5) {
        const double sign = n % 2 == 1 ? 1.0 : -1.0;
        return sign * excursion_cdf_derivative(params, n, 1.0 - x, spec);
    }
    return std::tgamma(params.gamma()) *
           rl_nth_derivative(excursion_kernel_function(params, 1), params.gamma(),
                             n, x, near_one_spec(spec, x, params.gamma()));
}

double quantile(const std::function<double(double)>& cdf, double q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("quantile: q must lie strictly in (0,1)");
    double lo = 1e-12, hi = 1.0 - 1e-12;
    double flo = cdf(lo), fhi = cdf(hi);
    if (!(flo <= q + 1e-8 && fhi >= q - 1e-8) || flo > fhi)
        throw std::runtime_error("quantile: bracket failure (cdf not monotone?)");
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fm = cdf(mid);
        if (std::fabs(fm - q) <= 1e-8) return mid;
        if (fm < q)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-14) return 0.5 * (lo + hi);
    }
    return 0.5 * (lo + hi);
}

double bridge_quantile(const LampertiParams& params, double q,
                       const QuadratureSpec& spec) {
    return quantile([&](double x) { return bridge_cdf(params, x, spec); }, q);
}

double excursion_quantile(const ExcursionParams& params, double q,
                          const QuadratureSpec& spec) {
    return quantile([&](double x) { return excursion_cdf(params, x, spec); }, q);
}

void LawTable::check_invariants() const {
    if (grid.size() != cdf.size() || grid.size() != pdf.size())
        throw std::runtime_error("LawTable: column length mismatch");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(cdf[i] >= -1e-9 && cdf[i] <= 1.0 + 1e-9))
            throw std::runtime_error("LawTable: cdf outside [0,1]");
        if (!(pdf[i] >= -1e-9))
            throw std::runtime_error("LawTable: negative pdf");
        if (i > 0) {
            if (!(grid[i] > grid[i - 1]))
                throw std::runtime_error("LawTable: grid not increasing");
            if (cdf[i] < cdf[i - 1] - 1e-9)
                throw std::runtime_error("LawTable: cdf not nondecreasing");
        }
    }
    if (!grid.empty()) {
        if (grid.front() <= 0.05 && cdf.front() > 0.25)
            throw std::runtime_error("LawTable: cdf does not vanish toward 0");
        if (grid.back() >= 0.95 && cdf.back() < 0.75)
            throw std::runtime_error("LawTable: cdf does not reach 1 toward 1");
    }
}

std::vector<double> interior_grid(int n) {
    if (n < 1) throw std::invalid_argument("interior_grid: n must be >= 1");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = static_cast<double>(i + 1) / (n + 1);
    return g;
}

namespace {

LawTable table_skeleton(std::string kind,
                        std::vector<std::pair<std::string, double>> params,
                        const std::vector<double>& grid,
                        const QuadratureSpec& spec) {
    LawTable t;
    t.kind = std::move(kind);
    t.params = std::move(params);
    t.grid = grid;
    t.cdf.assign(grid.size(), 0.0);
    t.pdf.assign(grid.size(), 0.0);
    t.tolerance = spec.rel_tol;
    t.node_rule = node_rule_name(spec.node_rule);
    t.version = kVersion;
    return t;
}

} // namespace

LawTable make_bridge_table(const LampertiParams& params,
                           const std::vector<double>& grid,
                           const QuadratureSpec& spec, unsigned workers) {
    LawTable t = table_skeleton(
        "bridge", {{"alpha", params.alpha()}, {"p", params.p()}}, grid, spec);
    run_indexed(grid.size(), workers, [&](std::size_t i) {
        t.cdf[i] = bridge_cdf(params, grid[i], spec);
        t.pdf[i] = bridge_pdf(params, grid[i], spec);
    });
    return t;
}

LawTable make_excursion_table(const ExcursionParams& params,
                              const std::vector<double>& grid,
                              const QuadratureSpec& spec, unsigned workers) {
    LawTable t =
        table_skeleton("excursion", {{"gamma", params.gamma()}}, grid, spec);
    t.low_confidence_above = 1.0 - 1e-4;
    run_indexed(grid.size(), workers, [&](std::size_t i) {
        QuadratureSpec local = spec;
        if (grid[i] > 0.999) local.node_rule = NodeRule::adaptive_subdivision;
        t.cdf[i] = excursion_cdf(params, grid[i], local);
        t.pdf[i] = excursion_pdf(params, grid[i], local);
    });
    return t;
}

LawTable make_lamperti_table(const LampertiParams& params,
                             const std::vector<double>& grid,
                             const QuadratureSpec& spec) {
    LawTable t = table_skeleton(
        "lamperti", {{"alpha", params.alpha()}, {"p", params.p()}}, grid, spec);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        t.pdf[i] = lamperti_density(params, x);
        t.cdf[i] = x * integrate_01(
                           [&](double s) { return lamperti_density(params, x * s); },
                           params.alpha(), 1.0, spec);
    }
    return t;
}

LawTable make_bfry_table(double alpha, const std::vector<double>& grid,
                         const QuadratureSpec& spec) {
    LawTable t = table_skeleton("bfry", {{"alpha", alpha}}, grid, spec);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        t.pdf[i] = bfry_density(alpha, x);
        t.cdf[i] = x * integrate_01(
                           [&](double s) { return bfry_density(alpha, x * s); },
                           alpha, 1.0, spec);
    }
    return t;
}

LawTable make_arcsine_table(const StableParams& params,
                            const std::vector<double>& grid) {
    LawTable t = table_skeleton("arcsine", {{"c", params.c()}}, grid, {});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        t.pdf[i] = generalized_arcsine_density(params, grid[i]);
        t.cdf[i] = generalized_arcsine_cdf(params.c(), grid[i]);
    }
    return t;
}

std::string law_table_to_csv(const LawTable& table) {
    std::ostringstream out;
    out << "# occtime-law-table\n";
    out << "# kind=" << table.kind << "\n";
    out << "# version=" << table.version << "\n";
    out << "# tolerance=" << fmt17(table.tolerance) << "\n";
    out << "# node_rule=" << table.node_rule << "\n";
    for (const auto& [name, value] : table.params)
        out << "# param " << name << "=" << fmt17(value) << "\n";
    if (table.low_confidence_above)
        out << "# low_confidence_above=" << fmt17(*table.low_confidence_above)
            << "\n";
    out << "x,cdf,pdf\n";
    for (std::size_t i = 0; i < table.grid.size(); ++i)
        out << fmt17(table.grid[i]) << "," << fmt17(table.cdf[i]) << ","
            << fmt17(table.pdf[i]) << "\n";
    return out.str();
}

LawTable law_table_from_csv(const std::string& text) {
    LawTable t;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = line.substr(1);
            auto eat = [&](const std::string& prefix) -> std::optional<std::string> {
                if (body.rfind(prefix, 0) != 0) return std::nullopt;
                return body.substr(prefix.size());
            };
            if (auto v = eat(" kind=")) t.kind = *v;
            else if (auto v2 = eat(" version=")) t.version = *v2;
            else if (auto v3 = eat(" tolerance=")) t.tolerance = std::stod(*v3);
            else if (auto v4 = eat(" node_rule=")) t.node_rule = *v4;
            else if (auto v5 = eat(" low_confidence_above="))
                t.low_confidence_above = std::stod(*v5);
            else if (auto v6 = eat(" param ")) {
                const auto eq = v6->find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("law_table_from_csv: bad param line");
                t.params.emplace_back(v6->substr(0, eq), std::stod(v6->substr(eq + 1)));
            }
            continue;
        }
        if (line.rfind("x,", 0) == 0) continue; // column header
        std::istringstream row(line);
        std::string cell;
        double vals[3];
        for (int c = 0; c < 3; ++c) {
            if (!std::getline(row, cell, ','))
                throw std::invalid_argument("law_table_from_csv: short row");
            vals[c] = std::stod(cell);
        }
        t.grid.push_back(vals[0]);
        t.cdf.push_back(vals[1]);
        t.pdf.push_back(vals[2]);
    }
    return t;
}

std::string law_table_to_json(const LawTable& table) {
    nlohmann::json j;
    j["kind"] = table.kind;
    j["version"] = table.version;
    j["tolerance"] = table.tolerance;
    j["node_rule"] = table.node_rule;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [name, value] : table.params) params[name] = value;
    j["params"] = params;
    if (table.low_confidence_above)
        j["low_confidence_above"] = *table.low_confidence_above;
    j["x"] = table.grid;
    j["cdf"] = table.cdf;
    j["pdf"] = table.pdf;
    return j.dump(2);
}

LawTable law_table_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    LawTable t;
    t.kind = j.at("kind").get<std::string>();
    t.version = j.at("version").get<std::string>();
    t.tolerance = j.at("tolerance").get<double>();
    t.node_rule = j.at("node_rule").get<std::string>();
    (void)node_rule_from_name(t.node_rule); // validate
    for (const auto& [name, value] : j.at("params").items())
        t.params.emplace_back(name, value.get<double>());
    if (j.contains("low_confidence_above"))
        t.low_confidence_above = j["low_confidence_above"].get<double>();
    t.grid = j.at("x").get<std::vector<double>>();
    t.cdf = j.at("cdf").get<std::vector<double>>();
    t.pdf = j.at("pdf").get<std::vector<double>>();
    return t;
}

} // namespace occtime
