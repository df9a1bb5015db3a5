#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace dlab {

enum class SymbolKind { PureFractional, ILW, Smith, Custom };

std::string to_string(SymbolKind k);
SymbolKind symbol_kind_from_string(const std::string& s);

/// Odd dispersion multiplier p(xi) with derivative growth xi^alpha past xi0.
/// Immutable after construction; evaluation is pure and thread-safe.
class DispersionSymbol {
public:
    static DispersionSymbol pure_fractional(double alpha, double xi0 = 1.0);
    static DispersionSymbol ilw(double xi0 = 1.0);     // xi^2 coth(xi), alpha = 1
    static DispersionSymbol smith(double xi0 = 1.0);   // xi sqrt(1 + xi^2), alpha = 1
    static DispersionSymbol custom(double alpha, double xi0,
                                   std::function<double(double)> eval);

    double operator()(double xi) const { return eval_(xi); }
    double alpha() const { return alpha_; }
    double xi0() const { return xi0_; }
    SymbolKind kind() const { return kind_; }

    // 4th-order central differences, step h = 1e-3 * |xi|
    double dp(double xi) const;
    double d2p(double xi) const;

private:
    DispersionSymbol(SymbolKind k, double a, double x0,
                     std::function<double(double)> e)
        : kind_(k), alpha_(a), xi0_(x0), eval_(std::move(e)) {}

    SymbolKind kind_;
    double alpha_;
    double xi0_;
    std::function<double(double)> eval_;
};

DispersionSymbol make_symbol(SymbolKind kind, double alpha, double xi0 = 1.0);

/// Regularity exponents attached to a dispersion strength alpha in [1,2]:
/// s = 1 - alpha/(2(alpha+1)), beta = 1/(4(alpha+1)), b = beta + 1/4.
struct RegularityParams {
    double alpha;
    double s;
    double beta;
    double b;
};

RegularityParams regularity_params(double alpha);

struct SymbolReport {
    double dp_ratio_min, dp_ratio_max;    // p'(xi)/xi^alpha over the sample
    double d2p_ratio_min, d2p_ratio_max;  // p''(xi)/xi^(alpha-1)
    double odd_residual;                  // max |p(xi) + p(-xi)|
    bool pass;                            // both brackets strictly positive
};

SymbolReport validate_hypothesis(const DispersionSymbol& sym,
                                 double xi_lo, double xi_hi, int samples);

} // namespace dlab
