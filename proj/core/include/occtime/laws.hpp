#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "occtime/fracint.hpp"
#include "occtime/params.hpp"

namespace occtime {

/// g_{alpha,p} (deriv = 0) or one of its derivatives as a SingularFunction
/// with the full closed-form derivative chain behind it.
SingularFunction bridge_kernel_function(const LampertiParams& params,
                                        int deriv = 0, int max_order = 8);

/// h_gamma (deriv = 0) or one of its derivatives.
SingularFunction excursion_kernel_function(const ExcursionParams& params,
                                           int deriv = 0, int max_order = 8);

/// G_{alpha,p}(x) = Gamma(alpha) I^alpha[g_{alpha,p}](x)
double bridge_cdf(const LampertiParams& params, double x,
                  const QuadratureSpec& spec = {});

/// G'_{alpha,p}(x) = Gamma(alpha) I^alpha[g'_{alpha,p}](x)
double bridge_pdf(const LampertiParams& params, double x,
                  const QuadratureSpec& spec = {});

/// Small-x power law of G'_{alpha,p}: exponent 2 alpha - 1, constant
/// (sin api/pi) ((1-p)/p^2) alpha Gamma(alpha)^2 / Gamma(2 alpha).
PowerLaw bridge_pdf_asymptote(const LampertiParams& params);

/// d^n/dx^n G_{alpha,p}(x), n >= 1, via the delta recursion.
double bridge_cdf_derivative(const LampertiParams& params, int n, double x,
                             const QuadratureSpec& spec = {});

/// H_gamma(x) = Gamma(gamma) I^gamma[h'_gamma](x)
double excursion_cdf(const ExcursionParams& params, double x,
                     const QuadratureSpec& spec = {});

/// H'_gamma(x) = (1/x) Gamma(gamma) I^gamma[gamma h' + delta h'](x)
double excursion_pdf(const ExcursionParams& params, double x,
                     const QuadratureSpec& spec = {});

/// Small-x power law of H'_gamma: exponent 2 gamma - 2, constant
/// (sin gpi/pi) (Gamma(gamma+1)^2/Gamma(2 gamma)) (2 gamma - 1)/(1 - gamma).
PowerLaw excursion_pdf_asymptote(const ExcursionParams& params);

/// d^n/dx^n H_gamma(x), n >= 1.
double excursion_cdf_derivative(const ExcursionParams& params, int n, double x,
                                const QuadratureSpec& spec = {});

/// Bracketing bisection of a monotone cdf; |cdf(x) - q| <= 1e-8 on return.
double quantile(const std::function<double(double)>& cdf, double q);

double bridge_quantile(const LampertiParams& params, double q,
                       const QuadratureSpec& spec = {});
double excursion_quantile(const ExcursionParams& params, double q,
                          const QuadratureSpec& spec = {});

/// Evaluated (x, cdf, pdf) triples on a grid with provenance metadata.
struct LawTable {
    std::string kind; // lamperti | bfry | arcsine | bridge | excursion
    std::vector<std::pair<std::string, double>> params;
    std::vector<double> grid;
    std::vector<double> cdf;
    std::vector<double> pdf;
    double tolerance = 0.0;
    std::string node_rule;
    std::string version;
    // excursion values past this abscissa rest on an unproven endpoint
    // exponent and are marked low-confidence
    std::optional<double> low_confidence_above;

    void check_invariants() const; // throws on violation
};

/// Equispaced interior grid {1/(n+1), ..., n/(n+1)}.
std::vector<double> interior_grid(int n);

LawTable make_bridge_table(const LampertiParams& params,
                           const std::vector<double>& grid,
                           const QuadratureSpec& spec = {}, unsigned workers = 1);
LawTable make_excursion_table(const ExcursionParams& params,
                              const std::vector<double>& grid,
                              const QuadratureSpec& spec = {},
                              unsigned workers = 1);
LawTable make_lamperti_table(const LampertiParams& params,
                             const std::vector<double>& grid,
                             const QuadratureSpec& spec = {});
LawTable make_bfry_table(double alpha, const std::vector<double>& grid,
                         const QuadratureSpec& spec = {});
LawTable make_arcsine_table(const StableParams& params,
                            const std::vector<double>& grid);

/// CSV with '#' metadata header and x,cdf,pdf columns at 17 significant
/// digits (lossless decimal round trip).
std::string law_table_to_csv(const LawTable& table);
LawTable law_table_from_csv(const std::string& text);

std::string law_table_to_json(const LawTable& table);
LawTable law_table_from_json(const std::string& text);

} // namespace occtime
