#include "dlab/symbols.hpp"

#include <cmath>
#include <limits>

namespace dlab {

std::string to_string(SymbolKind k) {
    switch (k) {
        case SymbolKind::PureFractional: return "pure";
        case SymbolKind::ILW: return "ilw";
        case SymbolKind::Smith: return "smith";
        case SymbolKind::Custom: return "custom";
    }
    return "?";
}

SymbolKind symbol_kind_from_string(const std::string& s) {
    if (s == "pure" || s == "pure_fractional") return SymbolKind::PureFractional;
    if (s == "ilw") return SymbolKind::ILW;
    if (s == "smith") return SymbolKind::Smith;
    if (s == "custom") return SymbolKind::Custom;
    throw std::invalid_argument("unknown symbol kind: " + s);
}

namespace {

double ilw_eval(double xi) {
    // xi^2 coth(xi); removable singularity at 0.  The series
    // xi + xi^3/3 - xi^5/45 + 2 xi^7/945 avoids cancellation for small xi.
    const double a = std::fabs(xi);
    if (a < 1e-2) {
        const double x2 = xi * xi;
        return xi * (1.0 + x2 / 3.0 - x2 * x2 / 45.0 + 2.0 * x2 * x2 * x2 / 945.0);
    }
    return xi * xi / std::tanh(xi);
}

void check_alpha(double alpha) {
    if (!(alpha >= 1.0 && alpha <= 2.0))
        throw std::invalid_argument("alpha must lie in [1,2]");
}

void check_xi0(double xi0) {
    if (!(xi0 > 0.0)) throw std::invalid_argument("xi0 must be positive");
}

} // namespace

DispersionSymbol DispersionSymbol::pure_fractional(double alpha, double xi0) {
    check_alpha(alpha);
    check_xi0(xi0);
    return DispersionSymbol(SymbolKind::PureFractional, alpha, xi0,
        [alpha](double xi) { return xi * std::pow(std::fabs(xi), alpha); });
}

DispersionSymbol DispersionSymbol::ilw(double xi0) {
    check_xi0(xi0);
    return DispersionSymbol(SymbolKind::ILW, 1.0, xi0, ilw_eval);
}

DispersionSymbol DispersionSymbol::smith(double xi0) {
    check_xi0(xi0);
    return DispersionSymbol(SymbolKind::Smith, 1.0, xi0,
        [](double xi) { return xi * std::sqrt(1.0 + xi * xi); });
}

DispersionSymbol DispersionSymbol::custom(double alpha, double xi0,
                                          std::function<double(double)> eval) {
    check_alpha(alpha);
    check_xi0(xi0);
    return DispersionSymbol(SymbolKind::Custom, alpha, xi0, std::move(eval));
}

DispersionSymbol make_symbol(SymbolKind kind, double alpha, double xi0) {
    switch (kind) {
        case SymbolKind::PureFractional:
            return DispersionSymbol::pure_fractional(alpha, xi0);
        case SymbolKind::ILW:
            if (alpha != 1.0) throw std::invalid_argument("ILW requires alpha = 1");
            return DispersionSymbol::ilw(xi0);
        case SymbolKind::Smith:
            if (alpha != 1.0) throw std::invalid_argument("Smith requires alpha = 1");
            return DispersionSymbol::smith(xi0);
        case SymbolKind::Custom:
            throw std::invalid_argument("custom symbols need an evaluator; use DispersionSymbol::custom");
    }
    throw std::invalid_argument("bad symbol kind");
}

double DispersionSymbol::dp(double xi) const {
    const double h = 1e-3 * std::fabs(xi);
    const auto& p = eval_;
    return (-p(xi + 2 * h) + 8 * p(xi + h) - 8 * p(xi - h) + p(xi - 2 * h)) / (12 * h);
}

double DispersionSymbol::d2p(double xi) const {
    const double h = 1e-3 * std::fabs(xi);
    const auto& p = eval_;
    return (-p(xi + 2 * h) + 16 * p(xi + h) - 30 * p(xi) + 16 * p(xi - h) - p(xi - 2 * h))
           / (12 * h * h);
}

RegularityParams regularity_params(double alpha) {
    check_alpha(alpha);
    RegularityParams r;
    r.alpha = alpha;
    r.beta = 1.0 / (4.0 * (alpha + 1.0));
    r.b = r.beta + 0.25;
    // single correctly-rounded division, so s(1) = 3/4 and s(2) = 2/3 land
    // on the same doubles as the literal quotients
    r.s = (alpha + 2.0) / (2.0 * (alpha + 1.0));
    return r;
}

SymbolReport validate_hypothesis(const DispersionSymbol& sym,
                                 double xi_lo, double xi_hi, int samples) {
    if (xi_lo < sym.xi0())
        throw std::invalid_argument("validation range must start at or above xi0");
    if (samples < 16) throw std::invalid_argument("need at least 16 samples");
    if (xi_hi <= xi_lo) throw std::invalid_argument("empty validation range");

    SymbolReport rep;
    rep.dp_ratio_min = rep.d2p_ratio_min = std::numeric_limits<double>::infinity();
    rep.dp_ratio_max = rep.d2p_ratio_max = -std::numeric_limits<double>::infinity();
    rep.odd_residual = 0.0;

    const double a = sym.alpha();
    for (int i = 0; i < samples; ++i) {
        const double xi = xi_lo + (xi_hi - xi_lo) * i / (samples - 1);
        const double p1 = sym.dp(xi), p2 = sym.d2p(xi);
        if (!std::isfinite(p1) || !std::isfinite(p2) || !std::isfinite(sym(xi)))
            throw std::runtime_error("symbol evaluator returned a non-finite value");
        const double r1 = p1 / std::pow(xi, a);
        const double r2 = p2 / std::pow(xi, a - 1.0);
        rep.dp_ratio_min = std::min(rep.dp_ratio_min, r1);
        rep.dp_ratio_max = std::max(rep.dp_ratio_max, r1);
        rep.d2p_ratio_min = std::min(rep.d2p_ratio_min, r2);
        rep.d2p_ratio_max = std::max(rep.d2p_ratio_max, r2);
        rep.odd_residual = std::max(rep.odd_residual, std::fabs(sym(xi) + sym(-xi)));
    }
    rep.pass = rep.dp_ratio_min > 0.0 && rep.d2p_ratio_min > 0.0;
    return rep;
}

} // namespace dlab
