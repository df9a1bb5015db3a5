#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dlab {

using cplx = std::complex<double>;

class DyadicSequence; // envelope.hpp

/// Collocation grid on the 2pi-periodic torus. M points, M a power of two,
/// nodes x_j = 2 pi j / M, frequencies -M/2+1 .. M/2.
class TorusGrid {
public:
    explicit TorusGrid(int M);

    int size() const { return M_; }
    int nyquist() const { return M_ / 2; }
    double node(int j) const { return 2.0 * M_PI * j / M_; }

    /// frequency carried by storage slot k (FFT layout)
    int freq(int k) const { return k <= M_ / 2 ? k : k - M_; }
    /// storage slot of frequency xi in [-M/2+1, M/2]
    int slot(int xi) const { return xi >= 0 ? xi : xi + M_; }

    bool operator==(const TorusGrid& o) const { return M_ == o.M_; }

private:
    int M_;
};

/// Real field on the torus, stored as Fourier coefficients under the
/// convention u^(xi) = (1/2pi) int u e^{-i xi x} dx, u = sum u^(xi) e^{i xi x}.
/// Parseval: int |u|^2 dx = 2 pi sum |u^(xi)|^2.
class Field {
public:
    explicit Field(const TorusGrid& g) : grid_(g), c_(g.size(), cplx{0.0, 0.0}) {}

    static Field from_physical(const TorusGrid& g, const std::vector<double>& values);
    /// single cosine amp*cos(k x)
    static Field cosine(const TorusGrid& g, int k, double amp = 1.0);

    const TorusGrid& grid() const { return grid_; }
    cplx& coeff(int xi) { return c_[grid_.slot(xi)]; }
    cplx coeff(int xi) const { return c_[grid_.slot(xi)]; }
    cplx& slot(int k) { return c_[k]; }
    cplx slot(int k) const { return c_[k]; }
    int size() const { return grid_.size(); }

    std::vector<double> to_physical() const;
    /// physical samples on a grid padded by `factor` (trig interpolation)
    std::vector<double> to_physical_padded(int factor) const;

    double l2_norm() const;                 // sqrt(2 pi sum |c|^2)
    double linf_norm(int pad = 4) const;    // max over padded collocation nodes
    double hermitian_residual() const;      // relative, 0 for exactly real fields
    void symmetrize();                      // project onto real fields

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(double a);

private:
    TorusGrid grid_;
    std::vector<cplx> c_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double a, Field f);

// in-place complex FFTs with cached plans (sizes are reused heavily)
void fft_forward_raw(std::vector<cplx>& a);   // unnormalized DFT
void fft_inverse_raw(std::vector<cplx>& a);   // unnormalized inverse DFT

/// Littlewood-Paley cutoffs built from
/// chi(x) = eta(2-|x|) / (eta(2-|x|) + eta(|x|-1)), eta(x) = exp(-1/x) (x>0).
namespace cutoff {
double chi(double x);                 // 1 on [-1,1], supported in [-2,2]
double phi(double x);                 // chi(x) - chi(2x)
double phi_N(double N, double x);     // N=0: chi(2x); N>=1 dyadic: phi(x/N)
}

/// P_N u: coefficient-wise multiplication by phi_N
Field project_dyadic(const Field& u, int N);

/// Sharp multiplier application c(xi) -> m(xi) c(xi)
template <typename F>
Field apply_multiplier(const Field& u, F&& m) {
    Field out = u;
    for (int k = 0; k < u.size(); ++k) {
        const int xi = u.grid().freq(k);
        out.slot(k) = u.slot(k) * m(static_cast<double>(xi));
    }
    return out;
}

Field derivative(const Field& u);     // multiplier i xi

/// Canonical H^s_omega norm in Littlewood-Paley form:
/// ( sum_N omega_N^2 (1 v N)^{2s} ||P_N u||_{L^2}^2 )^{1/2}.
double sobolev_norm(const Field& u, double s, const DyadicSequence* env = nullptr);

/// <xi>-weighted comparison norm, used in tests and the global-existence bound
double sobolev_norm_sharp(const Field& u, double s);

/// spectral embedding (M_new > M) or truncation (M_new < M)
Field resample(const Field& u, int M_new);

/// pointwise product, computed alias-free via zero-padding to 2M and
/// truncated back to the common grid
Field multiply_exact(const Field& a, const Field& b);

struct CommutatorReport {
    double commutator_l2;    // ||[d_x P_N^2, w] v||_{L^2}
    double bound;            // ||d_x w||_{L^inf} ||v||_{L^2}
    double ratio;
    double identity_residual; // | int Pi(u,v) w + int u [d_x P_N^2, w] v |, relative
};

CommutatorReport commutator_check(int N, const Field& w, const Field& v, const Field& u);

/// spectral dump: header "# M=<M> convention=angular-1/2pi", rows "xi, re, im"
std::string spectral_dump(const Field& u);
Field parse_spectral_dump(const std::string& text);

} // namespace dlab
