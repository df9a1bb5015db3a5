#include "dlab/probes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dlab/envelope.hpp"
#include "dlab/nonlinearity.hpp"
#include "dlab/rng.hpp"

namespace dlab {

namespace {

void finish(ProbeReport& r) {
    if (r.rhs > 0.0) {
        r.ratio = r.lhs / r.rhs;
    } else {
        r.rhs_positive = false;
        r.ratio = r.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
}

// |D_x|^gamma P_N u
Field band_derivative(const Field& u, int N, double gamma) {
    return apply_multiplier(u, [&](double xi) {
        return cutoff::phi_N(static_cast<double>(N), xi)
             * std::pow(std::fabs(xi), gamma);
    });
}

Field band_project(const Field& u, int N) {
    return project_dyadic(u, N);
}

// trapezoid over uniformly sampled frames
double time_integral(const std::vector<double>& values, double dt) {
    if (values.size() < 2) return 0.0;
    double s = 0.5 * (values.front() + values.back());
    for (size_t j = 1; j + 1 < values.size(); ++j) s += values[j];
    return s * dt;
}

Field random_band_field(const TorusGrid& g, int band, Rng& rng) {
    Field u(g);
    for (int k = 1; k <= band; ++k) {
        const double decay = std::pow(1.0 + k, -0.8);
        const cplx c{rng.normal() * decay, rng.normal() * decay};
        u.coeff(k) = c;
        u.coeff(-k) = std::conj(c);
    }
    return u;
}

} // namespace

double l4_integral(const Field& u) {
    const auto v = u.to_physical_padded(4);
    double s = 0.0;
    for (double x : v) {
        const double x2 = x * x;
        s += x2 * x2;
    }
    return s * 2.0 * M_PI / v.size();
}

double linear_strichartz_ratio(const DispersionSymbol& sym, double T,
                               const Field& u, int time_samples) {
    if (!(T > 0.0 && T <= 1.0)) throw std::invalid_argument("need T in (0,1]");
    const double l2 = u.l2_norm();
    if (l2 == 0.0) return 0.0;
    double acc = 0.0;
    for (int j = 0; j < time_samples; ++j) {
        const double t = T * (j + 0.5) / time_samples;
        acc += l4_integral(propagator(sym, t, u));
    }
    acc *= T / time_samples;
    const double b = regularity_params(sym.alpha()).b;
    return std::pow(acc, 0.25) / (std::pow(T, 0.5 - b) * l2);
}

ProbeReport linear_strichartz(const DispersionSymbol& sym, double T, int M,
                              int trials, std::uint64_t seed, int time_samples) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    const TorusGrid g(M);
    const int band = std::min(32, M / 4);
    ProbeReport rep;
    rep.probe = "linear_strichartz";
    rep.alpha = sym.alpha();
    rep.s = 0.0;
    rep.T = T;
    rep.M = M;
    rep.seed = seed;
    for (int t = 0; t < trials; ++t) {
        Rng rng(Rng::child_seed(seed, t));
        Field u = random_band_field(g, band, rng);
        const double r = linear_strichartz_ratio(sym, T, u, time_samples);
        if (r > rep.lhs) {
            rep.lhs = r;
            rep.witness = "trial " + std::to_string(t);
        }
    }
    rep.rhs = 1.0; // the probe itself reports the constant
    finish(rep);
    return rep;
}

ImprovedStrichartz improved_strichartz(const Trajectory& traj,
                                       const DispersionSymbol& sym,
                                       const EntireSeries& f, double s,
                                       const DyadicSequence* env) {
    if (s < 0.51)
        throw std::invalid_argument("order below the regularity floor s0 = 0.51");
    const double T = traj.duration();
    const double beta = regularity_params(sym.alpha()).beta;
    const int ny = traj.grid.nyquist();

    double linf_tx = 0.0, linf_hs = 0.0, linf_h7 = 0.0;
    for (const Field& u : traj.frames) {
        linf_tx = std::max(linf_tx, u.linf_norm());
        linf_hs = std::max(linf_hs, sobolev_norm(u, s, env));
        linf_h7 = std::max(linf_h7, sobolev_norm(u, 7.0 / 12.0 + beta));
    }

    // the pairwise constant closes the power-series induction
    // ||u^k|| <= (2C)^{k-1} ||u||_inf^{k-1} ||u|| only at twice its value
    const double C = 2.0 * measure_product_constant(traj.grid, s, env, 16, 0x5eedULL);
    const Majorant G(f, C);
    const double g_val = G(linf_tx);

    double lhs1_4 = 0.0, lhs2_3 = 0.0;
    std::vector<double> l4t(traj.frames.size()), l3t(traj.frames.size());
    int N = 0;
    while (true) {
        const double w = env ? env->omega(N) : 1.0;
        for (size_t j = 0; j < traj.frames.size(); ++j) {
            l4t[j] = l4_integral(band_derivative(traj.frames[j], N, s - beta));
            const double li =
                band_derivative(traj.frames[j], N, 1.0 / 3.0).linf_norm();
            l3t[j] = li * li * li;
        }
        lhs1_4 += w * w * w * w * time_integral(l4t, traj.sample_dt);
        lhs2_3 += time_integral(l3t, traj.sample_dt);
        if (N >= ny) break;
        N = (N == 0) ? 1 : 2 * N;
    }

    ImprovedStrichartz out{ProbeReport{}, ProbeReport{}, C};
    out.eq1.probe = "improved_strichartz_l4";
    out.eq1.lhs = std::pow(lhs1_4, 0.25);
    out.eq1.rhs = std::pow(T, 0.25) * g_val * linf_hs;
    out.eq2.probe = "improved_strichartz_l3linf";
    out.eq2.lhs = std::cbrt(lhs2_3);
    out.eq2.rhs = std::cbrt(T) * g_val * linf_h7;
    for (ProbeReport* r : {&out.eq1, &out.eq2}) {
        r->alpha = sym.alpha();
        r->s = s;
        r->T = T;
        r->M = traj.grid.size();
        finish(*r);
    }
    return out;
}

ProbeReport difference_probe(const Trajectory& traj_u, const Trajectory& traj_v,
                             const DispersionSymbol& sym, const EntireSeries& f,
                             double s) {
    if (!(traj_u.grid == traj_v.grid) ||
        traj_u.frames.size() != traj_v.frames.size() ||
        std::fabs(traj_u.sample_dt - traj_v.sample_dt) > 1e-12)
        throw std::invalid_argument("trajectories use different discretizations");
    if (s < 0.51)
        throw std::invalid_argument("order below the regularity floor s0 = 0.51");

    const double T = traj_u.duration();
    const double beta = regularity_params(sym.alpha()).beta;
    const int ny = traj_u.grid.nyquist();

    double K = 0.0, sup_u = 0.0, sup_v = 0.0, linf_w = 0.0;
    std::vector<Field> w;
    w.reserve(traj_u.frames.size());
    for (size_t j = 0; j < traj_u.frames.size(); ++j) {
        sup_u = std::max(sup_u, sobolev_norm(traj_u.frames[j], s));
        sup_v = std::max(sup_v, sobolev_norm(traj_v.frames[j], s));
        w.push_back(traj_u.frames[j] - traj_v.frames[j]);
        linf_w = std::max(linf_w, sobolev_norm(w.back(), s - 1.0));
    }
    K = sup_u + sup_v;

    double lhs4 = 0.0;
    std::vector<double> l4t(w.size());
    int N = 0;
    while (true) {
        const double weight =
            std::pow(std::max(1.0, static_cast<double>(N)), s - 1.0 - beta);
        for (size_t j = 0; j < w.size(); ++j)
            l4t[j] = l4_integral(band_project(w[j], N));
        lhs4 += weight * weight * weight * weight
              * time_integral(l4t, traj_u.sample_dt);
        if (N >= ny) break;
        N = (N == 0) ? 1 : 2 * N;
    }

    const double C =
        2.0 * measure_product_constant(traj_u.grid, s, nullptr, 16, 0x5eedULL);
    const Majorant G(f, C);

    ProbeReport rep;
    rep.probe = "difference_probe";
    rep.alpha = sym.alpha();
    rep.s = s;
    rep.T = T;
    rep.M = traj_u.grid.size();
    rep.lhs = std::pow(lhs4, 0.25);
    rep.rhs = std::pow(T, 0.25) * G(K) * linf_w;
    finish(rep);
    return rep;
}

namespace {

int next_pow2(int n) {
    int p = 1;
    while (p < n) p *= 2;
    return p;
}

// 2D linear convolution of tables on an integer (tau, xi) lattice via FFT
std::vector<std::vector<cplx>> conv2(const std::vector<std::vector<cplx>>& a,
                                     const std::vector<std::vector<cplx>>& b) {
    const int nt = static_cast<int>(a.size()), nx = static_cast<int>(a[0].size());
    const int Pt = next_pow2(2 * nt), Px = next_pow2(2 * nx);
    auto lift = [&](const std::vector<std::vector<cplx>>& src) {
        std::vector<std::vector<cplx>> out(Pt, std::vector<cplx>(Px, cplx{}));
        for (int i = 0; i < nt; ++i)
            for (int j = 0; j < nx; ++j) out[i][j] = src[i][j];
        // row transforms, then column transforms
        for (auto& row : out) fft_forward_raw(row);
        std::vector<cplx> col(Pt);
        for (int j = 0; j < Px; ++j) {
            for (int i = 0; i < Pt; ++i) col[i] = out[i][j];
            fft_forward_raw(col);
            for (int i = 0; i < Pt; ++i) out[i][j] = col[i];
        }
        return out;
    };
    auto A = lift(a), B = lift(b);
    for (int i = 0; i < Pt; ++i)
        for (int j = 0; j < Px; ++j) A[i][j] *= B[i][j];
    for (auto& row : A) {
        std::vector<cplx> tmp = row;
        fft_inverse_raw(tmp);
        row = tmp;
    }
    std::vector<cplx> col(Pt);
    for (int j = 0; j < Px; ++j) {
        for (int i = 0; i < Pt; ++i) col[i] = A[i][j];
        fft_inverse_raw(col);
        for (int i = 0; i < Pt; ++i) A[i][j] = col[i] / static_cast<double>(Pt * Px);
    }
    return A;
}

} // namespace

ProbeReport bilinear_check(const DispersionSymbol& sym, int N1, int N2,
                           int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    if (N1 < 1 || N2 < 1 || (N1 & (N1 - 1)) || (N2 & (N2 - 1)))
        throw std::invalid_argument("N1, N2 must be dyadic");

    const int xi_max = 24;
    double p_max = 0.0;
    for (int x = 0; x <= xi_max; ++x)
        p_max = std::max(p_max, std::fabs(sym(static_cast<double>(x))));
    const int tau_max =
        static_cast<int>(std::ceil(p_max)) + 4 * std::max(N1, N2);
    const int nt = 2 * tau_max + 1, nx = 2 * xi_max + 1;

    const double beta = regularity_params(sym.alpha()).beta;
    const double bound = std::sqrt(static_cast<double>(std::min(N1, N2)))
                       * std::pow(static_cast<double>(std::max(N1, N2)), 2.0 * beta);

    ProbeReport rep;
    rep.probe = "bilinear_check";
    rep.alpha = sym.alpha();
    rep.seed = seed;
    rep.M = xi_max;

    for (int t = 0; t < trials; ++t) {
        Rng rng(Rng::child_seed(seed, t));
        auto make = [&](int Nloc) {
            std::vector<std::vector<cplx>> v(nt, std::vector<cplx>(nx, cplx{}));
            double norm2 = 0.0;
            // Hermitian table supported where <tau - p(xi)> ~ Nloc
            for (int i = 0; i < nt; ++i) {
                const double tau = i - tau_max;
                for (int j = 0; j < nx; ++j) {
                    const double xi = j - xi_max;
                    if (xi < 0 || (xi == 0 && tau < 0)) continue;
                    const double mod =
                        std::sqrt(1.0 + std::pow(tau - sym(xi), 2.0));
                    if (mod < Nloc || mod > 2.0 * Nloc) continue;
                    // random amplitudes with aligned phase: incoherent signs
                    // average out the resonant overlap the lemma bounds
                    const cplx c{rng.uniform(0.5, 1.5), 0.0};
                    v[i][j] = c;
                    v[nt - 1 - i][nx - 1 - j] = std::conj(c);
                    norm2 += (xi == 0 && tau == 0) ? std::norm(c)
                                                   : 2.0 * std::norm(c);
                }
            }
            return std::make_pair(std::move(v), std::sqrt(norm2));
        };
        auto [v1, n1] = make(N1);
        auto [v2, n2] = make(N2);
        if (n1 == 0.0 || n2 == 0.0) continue;
        const auto w = conv2(v1, v2);
        double l2 = 0.0;
        for (const auto& row : w)
            for (const cplx& c : row) l2 += std::norm(c);
        const double ratio = std::sqrt(l2) / (bound * n1 * n2);
        if (ratio > rep.lhs) {
            rep.lhs = ratio;
            rep.witness = "trial " + std::to_string(t);
        }
    }
    rep.rhs = 1.0;
    finish(rep);
    return rep;
}

} // namespace dlab
