#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dlab {

class Field;
class TorusGrid;
class DyadicSequence;

/// Entire-series nonlinearity f(x) = sum a_k x^k, a_k = f^(k)(0)/k!,
/// stored to K_max with a truncation tolerance for bounded-amplitude
/// evaluation.  Immutable.
class EntireSeries {
public:
    static constexpr int kDefaultOrder = 64;

    EntireSeries(std::vector<double> coeffs, std::string name = "poly",
                 double trunc_tol = 1e-12);

    static EntireSeries zero();
    static EntireSeries polynomial(std::vector<double> coeffs);
    static EntireSeries exp(double sign = 1.0);
    static EntireSeries sin(double sign = 1.0);
    static EntireSeries cos(double sign = 1.0);
    static EntireSeries sinh(double sign = 1.0);
    static EntireSeries cosh(double sign = 1.0);

    /// config syntax: "poly:a0,a1,...", "exp", "-exp", "sin", "-sinh", "0", ...
    static EntireSeries parse(const std::string& spec);

    const std::vector<double>& coeffs() const { return a_; }
    double coeff(int k) const { return k < static_cast<int>(a_.size()) ? a_[k] : 0.0; }
    const std::string& name() const { return name_; }
    double trunc_tol() const { return tol_; }
    bool is_zero() const;
    bool is_polynomial() const { return poly_; }
    int degree() const; // highest nonzero stored coefficient

    /// smallest K with sum_{k>K} |a_k| A^k <= tol over the stored prefix;
    /// throws if the stored coefficients cannot certify the tolerance
    int truncation_order(double amplitude) const;

    double eval(double x) const;
    double eval_truncated(double x, int K) const;

private:
    std::vector<double> a_;
    std::string name_;
    double tol_;
    bool poly_;
};

/// pointwise f(u(x_j)) on the collocation nodes, transformed back;
/// dealiasing is the caller's business
Field eval_series(const EntireSeries& f, const Field& u);

/// F(x) = int_0^x f: coefficients shift b_{k+1} = a_k/(k+1), b_0 = 0
EntireSeries antiderivative(const EntireSeries& f);

/// formal derivative, the inverse of antiderivative on stored prefixes
EntireSeries derivative_series(const EntireSeries& f);

struct GlobalClass {
    enum Kind { Case1, Case2, Unknown } kind;
    double p = 0.0;        // Case1: |F(x)| <= C(1+|x|^{p+1})
    double B = 0.0;        // Case2: F(x) <= B certified
    double window_sup = 0.0; // numeric sup of F over [-8,8]; reported, never certifies
};

GlobalClass classify_global(const EntireSeries& f, double alpha);

/// Majorant G(x) = sum_{k>=1} |a_k| C^{k-1} x^{k-1}; C is the measured
/// product-estimate constant, not assumed.
class Majorant {
public:
    Majorant(const EntireSeries& f, double C);
    double operator()(double x) const;
    double constant() const { return C_; }

private:
    std::vector<double> a_;
    double C_;
};

/// empirical constant of ||uv||_{H^s_w} <= C(||u|| ||v||_inf + ||u||_inf ||v||)
double measure_product_constant(const TorusGrid& grid, double s,
                                const DyadicSequence* env, int trials,
                                std::uint64_t seed);

} // namespace dlab
