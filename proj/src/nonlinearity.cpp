#include "dlab/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dlab/envelope.hpp"
#include "dlab/rng.hpp"
#include "dlab/spectral.hpp"

namespace dlab {

EntireSeries::EntireSeries(std::vector<double> coeffs, std::string name, double trunc_tol)
    : a_(std::move(coeffs)), name_(std::move(name)), tol_(trunc_tol) {
    if (a_.empty()) a_.push_back(0.0);
    // monotone tail test for an infinite radius of convergence:
    // |a_k|^{1/k} must not increase along the stored tail
    double prev = 0.0;
    bool started = false;
    for (size_t k = a_.size() / 2; k < a_.size(); ++k) {
        if (a_[k] == 0.0) continue;
        const double root = std::pow(std::fabs(a_[k]), 1.0 / static_cast<double>(k));
        if (started && root > prev * 1.5)
            throw std::invalid_argument("stored coefficients do not look entire");
        prev = root;
        started = true;
    }
    poly_ = name_.rfind("poly", 0) == 0 || name_ == "0";
}

EntireSeries EntireSeries::zero() { return EntireSeries({0.0}, "0"); }

EntireSeries EntireSeries::polynomial(std::vector<double> coeffs) {
    return EntireSeries(std::move(coeffs), "poly");
}

namespace {
std::vector<double> factorial_series(bool even, bool odd, double sign,
                                     bool alternate) {
    std::vector<double> a(EntireSeries::kDefaultOrder + 1, 0.0);
    double fact = 1.0;
    for (int k = 0; k <= EntireSeries::kDefaultOrder; ++k) {
        if (k > 0) fact *= k;
        const bool keep = (k % 2 == 0) ? even : odd;
        if (!keep) continue;
        double c = sign / fact;
        if (alternate && ((k / 2) % 2 == 1)) c = -c;
        a[k] = c;
    }
    return a;
}
} // namespace

EntireSeries EntireSeries::exp(double sign) {
    return EntireSeries(factorial_series(true, true, sign, false),
                        sign < 0 ? "-exp" : "exp");
}
EntireSeries EntireSeries::sin(double sign) {
    return EntireSeries(factorial_series(false, true, sign, true),
                        sign < 0 ? "-sin" : "sin");
}
EntireSeries EntireSeries::cos(double sign) {
    return EntireSeries(factorial_series(true, false, sign, true),
                        sign < 0 ? "-cos" : "cos");
}
EntireSeries EntireSeries::sinh(double sign) {
    return EntireSeries(factorial_series(false, true, sign, false),
                        sign < 0 ? "-sinh" : "sinh");
}
EntireSeries EntireSeries::cosh(double sign) {
    return EntireSeries(factorial_series(true, false, sign, false),
                        sign < 0 ? "-cosh" : "cosh");
}

EntireSeries EntireSeries::parse(const std::string& spec) {
    std::string s = spec;
    double sign = 1.0;
    if (!s.empty() && s[0] == '-') {
        sign = -1.0;
        s = s.substr(1);
    }
    if (s == "0" && sign > 0) return zero();
    if (s == "exp") return exp(sign);
    if (s == "sin") return sin(sign);
    if (s == "cos") return cos(sign);
    if (s == "sinh") return sinh(sign);
    if (s == "cosh") return cosh(sign);
    if (s.rfind("poly:", 0) == 0) {
        std::vector<double> a;
        std::stringstream ss(s.substr(5));
        std::string tok;
        while (std::getline(ss, tok, ',')) a.push_back(sign * std::stod(tok));
        if (a.empty())
            throw std::invalid_argument("poly: needs at least one coefficient");
        return polynomial(std::move(a));
    }
    throw std::invalid_argument("unknown nonlinearity spec: " + spec);
}

bool EntireSeries::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](double x) { return x == 0.0; });
}

int EntireSeries::degree() const {
    for (int k = static_cast<int>(a_.size()) - 1; k >= 0; --k)
        if (a_[k] != 0.0) return k;
    return 0;
}

int EntireSeries::truncation_order(double amplitude) const {
    const double A = std::fabs(amplitude);
    // For a genuine series the stored prefix only certifies the tolerance
    // when the final stored term has itself decayed below it; a polynomial's
    // tail beyond its degree is exactly zero.
    if (!poly_) {
        const int last = static_cast<int>(a_.size()) - 1;
        if (std::fabs(a_[last]) * std::pow(A, last) > tol_)
            throw std::domain_error(
                "amplitude exceeds the radius guard: stored coefficients cannot "
                "reach the truncation tolerance");
    }
    std::vector<double> tail(a_.size() + 1, 0.0);
    for (int k = static_cast<int>(a_.size()) - 1; k >= 0; --k)
        tail[k] = tail[k + 1] + std::fabs(a_[k]) * std::pow(A, k);
    for (int K = 0; K < static_cast<int>(a_.size()); ++K)
        if (tail[K + 1] <= tol_) return K;
    throw std::domain_error(
        "amplitude exceeds the radius guard: stored coefficients cannot reach the "
        "truncation tolerance");
}

double EntireSeries::eval(double x) const {
    // Horner over the stored prefix
    double r = 0.0;
    for (int k = static_cast<int>(a_.size()) - 1; k >= 0; --k) r = r * x + a_[k];
    return r;
}

double EntireSeries::eval_truncated(double x, int K) const {
    double r = 0.0;
    for (int k = std::min<int>(K, static_cast<int>(a_.size()) - 1); k >= 0; --k)
        r = r * x + a_[k];
    return r;
}

Field eval_series(const EntireSeries& f, const Field& u) {
    const double amp = u.linf_norm();
    const int K = f.truncation_order(amp); // throws when not attainable
    const auto values = u.to_physical();
    std::vector<double> out(values.size());
    for (size_t j = 0; j < values.size(); ++j) out[j] = f.eval_truncated(values[j], K);
    return Field::from_physical(u.grid(), out);
}

EntireSeries antiderivative(const EntireSeries& f) {
    std::vector<double> b(f.coeffs().size() + 1, 0.0);
    for (size_t k = 0; k < f.coeffs().size(); ++k)
        b[k + 1] = f.coeffs()[k] / static_cast<double>(k + 1);
    return EntireSeries(std::move(b), "int(" + f.name() + ")", f.trunc_tol());
}

EntireSeries derivative_series(const EntireSeries& f) {
    std::vector<double> b(std::max<size_t>(f.coeffs().size(), 2) - 1, 0.0);
    for (size_t k = 1; k < f.coeffs().size(); ++k)
        b[k - 1] = f.coeffs()[k] * static_cast<double>(k);
    return EntireSeries(std::move(b), "d(" + f.name() + ")", f.trunc_tol());
}

GlobalClass classify_global(const EntireSeries& f, double alpha) {
    GlobalClass g;
    g.kind = GlobalClass::Unknown;

    const EntireSeries F = antiderivative(f);
    {
        double sup = -INFINITY;
        for (int j = 0; j <= 4096; ++j) {
            const double x = -8.0 + 16.0 * j / 4096.0;
            sup = std::max(sup, F.eval(x));
        }
        g.window_sup = sup;
    }

    if (f.is_polynomial()) {
        const int d = f.degree();
        // F has even degree d+1 with negative leading coefficient: bounded
        // above, the stronger Case2 conclusion takes precedence over Case1
        if (d % 2 == 1 && f.coeff(d) < 0.0) {
            g.kind = GlobalClass::Case2;
            g.B = g.window_sup; // even-degree, downward polynomial: sup is interior
            return g;
        }
        if (static_cast<double>(d) < 2.0 * alpha) {
            g.kind = GlobalClass::Case1;
            g.p = static_cast<double>(d);
            return g;
        }
        return g;
    }

    // recognizable transcendental presets with F bounded above
    const std::string& n = f.name();
    if (n == "-exp") { g.kind = GlobalClass::Case2; g.B = 1.0; return g; }   // F = 1 - e^x
    if (n == "-sinh") { g.kind = GlobalClass::Case2; g.B = 0.0; return g; }  // F = 1 - cosh <= 0
    if (n == "sin") { g.kind = GlobalClass::Case2; g.B = 2.0; return g; }    // F = 1 - cos
    if (n == "cos" || n == "-cos" || n == "-sin") {
        g.kind = GlobalClass::Case2;
        g.B = 1.0; // F is a shifted sine/cosine, |F| <= 1
        return g;
    }
    return g;
}

Majorant::Majorant(const EntireSeries& f, double C) : a_(f.coeffs()), C_(C) {
    if (!(C > 0.0)) throw std::invalid_argument("majorant constant must be positive");
}

double Majorant::operator()(double x) const {
    // G(x) = sum_{k>=1} |a_k| C^{k-1} x^{k-1}
    double r = 0.0;
    for (int k = static_cast<int>(a_.size()) - 1; k >= 1; --k)
        r = r * (C_ * x) + std::fabs(a_[k]);
    return r;
}

double measure_product_constant(const TorusGrid& grid, double s,
                                const DyadicSequence* env, int trials,
                                std::uint64_t seed) {
    double cmax = 0.0;
    for (int t = 0; t < trials; ++t) {
        Rng rng(Rng::child_seed(seed, t));
        const auto random_field = [&]() {
            Field f(grid);
            const int kmax = std::min(grid.nyquist() - 1, 24);
            for (int k = 1; k <= kmax; ++k) {
                const double decay = std::pow(1.0 + k, -1.2);
                const cplx c{rng.normal() * decay, rng.normal() * decay};
                f.coeff(k) = c;
                f.coeff(-k) = std::conj(c);
            }
            f.coeff(0) = rng.normal();
            return f;
        };
        const Field u = random_field(), v = random_field();
        const Field uv = multiply_exact(u, v);
        const double lhs = sobolev_norm(uv, s, env);
        const double rhs = sobolev_norm(u, s, env) * v.linf_norm()
                         + u.linf_norm() * sobolev_norm(v, s, env);
        if (rhs > 0.0) cmax = std::max(cmax, lhs / rhs);
    }
    return cmax;
}

} // namespace dlab
