#include "dlab/bourgain.hpp"

#include <algorithm>
#include <cmath>

#include "dlab/envelope.hpp"

namespace dlab {

namespace {

double mu_T(double t, double T) {
    if (t <= 0.0 || t >= 2.0 * T) return 0.0;
    return t <= T ? t : 2.0 * T - t;
}

// Lagrange interpolation of Fourier coefficients in time over up to four
// frames; collapses to the stored frame when mu hits a sample time
Field frame_at(const std::vector<Field>& frames, double spacing, double mu,
               int stride) {
    const int count = (static_cast<int>(frames.size()) - 1) / stride + 1;
    const double step = spacing * stride;
    const double pos = mu / step;
    const long long near = std::llround(pos);
    if (near >= 0 && near < count && std::fabs(pos - near) < 1e-12)
        return frames[static_cast<size_t>(near) * stride];

    const int order = std::min(4, count);
    int i0 = static_cast<int>(std::floor(pos)) - (order - 1) / 2;
    i0 = std::clamp(i0, 0, count - order);

    Field out(frames[0].grid());
    for (int a = 0; a < order; ++a) {
        double w = 1.0;
        for (int b = 0; b < order; ++b) {
            if (b == a) continue;
            w *= (pos - (i0 + b)) / static_cast<double>(a - b);
        }
        const Field& f = frames[static_cast<size_t>(i0 + a) * stride];
        for (int k = 0; k < out.size(); ++k) out.slot(k) += w * f.slot(k);
    }
    return out;
}

void build_table(ExtendedTrajectory& ext) {
    const int Nt = ext.time_samples();
    const int M = ext.base.grid.size();
    ext.table.assign(Nt, std::vector<cplx>(M, cplx{0.0, 0.0}));
    std::vector<cplx> line(Nt);
    for (int k = 0; k < M; ++k) {
        for (int m = 0; m < Nt; ++m) line[m] = ext.frames[m].slot(k);
        fft_forward_raw(line);
        // u~(tau_n) = dt sum_m u^(t_m) e^{-i tau_n t_m}, t_m = -4 + m dt,
        // and e^{i tau_n 4} = (-1)^n on the dual grid dtau = 2pi/8
        for (int n = 0; n < Nt; ++n) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            ext.table[n][k] = ext.dt * sign * line[n];
        }
    }
}

void frames_from_table(ExtendedTrajectory& ext) {
    const int Nt = ext.time_samples();
    const int M = ext.base.grid.size();
    std::vector<cplx> line(Nt);
    for (int k = 0; k < M; ++k) {
        for (int n = 0; n < Nt; ++n) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            line[n] = sign * ext.table[n][k];
        }
        fft_inverse_raw(line);
        const double scale = ext.dtau / (2.0 * M_PI);
        for (int m = 0; m < Nt; ++m) ext.frames[m].slot(k) = scale * line[m];
    }
}

} // namespace

ExtendedTrajectory extend(const Trajectory& traj, const DispersionSymbol& sym,
                          bool twist) {
    const double T = traj.duration();
    if (!(T > 0.0 && T <= 1.0))
        throw std::invalid_argument("extension requires 0 < T <= 1");
    if (traj.frames.size() < 2 || !(traj.sample_dt > 0.0))
        throw std::invalid_argument("trajectory has no usable frames");

    ExtendedTrajectory ext{traj, sym};
    ext.dt = traj.sample_dt;
    const double samples_real = 8.0 / ext.dt;
    const long long Nt = std::llround(samples_real);
    if (std::fabs(samples_real - static_cast<double>(Nt)) > 1e-9)
        throw std::invalid_argument("sample spacing must divide the window [-4,4]");
    ext.dtau = 2.0 * M_PI / 8.0;

    ext.times.resize(Nt);
    ext.frames.assign(Nt, Field(traj.grid));
    double probe = 0.0, scale = 0.0;
    for (long long m = 0; m < Nt; ++m) {
        const double t = -4.0 + m * ext.dt;
        ext.times[m] = t;
        const double chi = cutoff::chi(t);
        if (chi == 0.0) continue;
        const double mu = mu_T(t, T);
        Field u = frame_at(traj.frames, traj.sample_dt, mu, 1);
        if (mu > 0.0 && mu < T && traj.frames.size() >= 5) {
            const double avail = traj.sample_dt * 2.0
                               * ((traj.frames.size() - 1) / 2);
            if (mu <= avail) {
                const Field coarse = frame_at(traj.frames, traj.sample_dt, mu, 2);
                probe = std::max(probe, (u - coarse).l2_norm());
            }
        }
        scale = std::max(scale, u.l2_norm());
        Field out = twist ? propagator(sym, t - mu, u) : u;
        out *= chi;
        ext.frames[m] = std::move(out);
    }
    ext.interp_error = scale > 0.0 ? probe / scale : 0.0;

    build_table(ext);
    return ext;
}

ExtendedTrajectory modulation_project(const ExtendedTrajectory& ext, int L) {
    if (L < 0 || (L != 0 && (L & (L - 1)) != 0))
        throw std::invalid_argument("L must be 0 or dyadic");
    if (L != 0 && L / 2.0 > ext.tau_nyquist())
        throw std::domain_error("modulation block lies beyond the tau-Nyquist range");

    ExtendedTrajectory out = ext;
    const int Nt = out.time_samples(), M = out.base.grid.size();
    for (int n = 0; n < Nt; ++n) {
        const double tau = out.tau(n);
        for (int k = 0; k < M; ++k) {
            const double p = out.sym(static_cast<double>(out.base.grid.freq(k)));
            out.table[n][k] *= cutoff::phi_N(static_cast<double>(L), tau - p);
        }
    }
    frames_from_table(out);
    return out;
}

double xsb_norm(const ExtendedTrajectory& ext, double s, double b,
                const DyadicSequence* env) {
    const int Nt = ext.time_samples(), M = ext.base.grid.size();
    double total = 0.0;
    int N = 0;
    while (true) {
        double block = 0.0;
        for (int k = 0; k < M; ++k) {
            const double xi = ext.base.grid.freq(k);
            const double cut = cutoff::phi_N(static_cast<double>(N), xi);
            if (cut == 0.0) continue;
            const double p = ext.sym(xi);
            double col = 0.0;
            for (int n = 0; n < Nt; ++n) {
                const double m = ext.tau(n) - p;
                col += std::pow(1.0 + m * m, b) * std::norm(ext.table[n][k]);
            }
            block += cut * cut * col;
        }
        const double w = env ? env->omega(N) : 1.0;
        total += w * w * std::pow(std::max(1.0, static_cast<double>(N)), 2.0 * s)
               * block * ext.dtau;
        if (N >= ext.base.grid.nyquist()) break;
        N = (N == 0) ? 1 : 2 * N;
    }
    return std::sqrt(total);
}

SpaceTimeNorms spacetime_norms(const ExtendedTrajectory& ext, double s,
                               const DyadicSequence* env) {
    SpaceTimeNorms out;
    out.xsb = xsb_norm(ext, s - 1.0, 1.0, env);
    for (const Field& f : ext.frames)
        out.linf_hs = std::max(out.linf_hs, sobolev_norm(f, s, env));
    out.zs = out.xsb + out.linf_hs;
    return out;
}

double plancherel_defect(const ExtendedTrajectory& ext) {
    const int Nt = ext.time_samples(), M = ext.base.grid.size();
    double lhs = 0.0;
    for (int n = 0; n < Nt; ++n)
        for (int k = 0; k < M; ++k) lhs += std::norm(ext.table[n][k]);
    lhs *= ext.dtau;

    double rhs = 0.0;
    for (const Field& f : ext.frames)
        for (int k = 0; k < M; ++k) rhs += std::norm(f.slot(k));
    rhs *= 2.0 * M_PI * ext.dt;

    const double scale = std::max({lhs, rhs, 1e-300});
    return std::fabs(lhs - rhs) / scale;
}

namespace {

CutoffSplit split_on_window(double T, double R, int samples, double t_lo,
                            double t_hi) {
    const double len = t_hi - t_lo;
    const double dt = len / samples;
    const double dtau = 2.0 * M_PI / len;

    CutoffSplit out;
    out.times.resize(samples);
    std::vector<cplx> sig(samples);
    for (int m = 0; m < samples; ++m) {
        const double t = t_lo + m * dt;
        out.times[m] = t;
        sig[m] = (t >= 0.0 && t <= T) ? 1.0 : 0.0;
    }
    std::vector<cplx> ind = sig;
    fft_forward_raw(sig);
    for (int n = 0; n < samples; ++n) {
        const double tau = dtau * (n <= samples / 2 ? n : n - samples);
        sig[n] *= cutoff::chi(tau / R);
    }
    fft_inverse_raw(sig);

    out.low.resize(samples);
    out.high.resize(samples);
    for (int m = 0; m < samples; ++m) {
        out.low[m] = sig[m].real() / samples;
        out.high[m] = ind[m].real() - out.low[m];
        out.l1_high += std::fabs(out.high[m]) * dt;
        out.linf_low = std::max(out.linf_low, std::fabs(out.low[m]));
    }
    return out;
}

} // namespace

CutoffSplit cutoff_split(double T, double R, int samples, double t_lo,
                         double t_hi) {
    if (!(T > 0.0) || !(R > 0.0)) throw std::invalid_argument("need T, R > 0");
    if (t_hi == 0.0) t_hi = 8.0 + T;
    if (t_lo > -8.0 || t_hi < 8.0 + T)
        throw std::invalid_argument("window too short: need [-8, 8+T]");
    if (samples < 1024) throw std::invalid_argument("too few time samples");
    return split_on_window(T, R, samples, t_lo, t_hi);
}

} // namespace dlab
