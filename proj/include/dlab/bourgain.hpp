#pragma once

#include <vector>

#include "dlab/evolution.hpp"
#include "dlab/spectral.hpp"
#include "dlab/symbols.hpp"

namespace dlab {

/// rho_T(u)(t) = chi(t) U_alpha(t - mu_T(t)) u(mu_T(t)) sampled on the
/// window [-4, 4), together with the discrete space-time spectral table
/// table[n][k] ~= u~(tau_n, xi_k), tau_n on the FFT-layout dual grid of
/// the window (spacing 2pi/8).
struct ExtendedTrajectory {
    Trajectory base;
    DispersionSymbol sym;
    double dt = 0.0;                         // extended sample spacing
    std::vector<double> times;               // uniform on [-4, 4)
    std::vector<Field> frames;               // rho_T(u) at those times
    std::vector<std::vector<cplx>> table;    // [tau slot][xi slot]
    double dtau = 0.0;                       // 2pi / window length
    double interp_error = 0.0;               // half-step refinement probe

    int time_samples() const { return static_cast<int>(times.size()); }
    double tau(int n) const {
        const int Nt = time_samples();
        return dtau * (n <= Nt / 2 ? n : n - Nt);
    }
    double tau_nyquist() const { return dtau * (time_samples() / 2); }
};

/// Build rho_T(u) from a trajectory on [0,T], T <= 1. With twist=false the
/// free-propagator factor is dropped: chi(t) u(mu_T(t)), the comparator
/// extension used to normalize restriction norms.
ExtendedTrajectory extend(const Trajectory& traj, const DispersionSymbol& sym,
                          bool twist = true);

/// Q_L: multiply the table by phi_L(tau - p(xi)) and resynthesize the frames.
/// Throws when supp phi_L lies entirely beyond the tau-Nyquist range.
ExtendedTrajectory modulation_project(const ExtendedTrajectory& ext, int L);

struct SpaceTimeNorms {
    double xsb = 0.0;     // X^{s-1,1} (Littlewood-Paley form)
    double linf_hs = 0.0; // max_t ||u(t)||_{H^s_omega}
    double zs = 0.0;      // xsb + linf_hs
};

SpaceTimeNorms spacetime_norms(const ExtendedTrajectory& ext, double s,
                               const DyadicSequence* env = nullptr);

/// X^{s,b} with arbitrary b (the probes use b(alpha)); same quadrature
double xsb_norm(const ExtendedTrajectory& ext, double s, double b,
                const DyadicSequence* env = nullptr);

/// discrete space-time Plancherel defect: relative gap between
/// sum_{tau,xi} |u~|^2 dtau and int 2pi sum_xi |u^(t,xi)|^2 dt
double plancherel_defect(const ExtendedTrajectory& ext);

/// 1_T = 1^{low}_{T,R} + 1^{high}_{T,R} with F_t(low) = chi(tau/R) F_t(1_T)
struct CutoffSplit {
    std::vector<double> times;
    std::vector<double> low, high;
    double l1_high = 0.0;
    double linf_low = 0.0;
};

/// window [t_lo, t_hi); preconditions t_lo <= -8, t_hi >= 8 + T
CutoffSplit cutoff_split(double T, double R, int samples = 1 << 16,
                         double t_lo = -8.0, double t_hi = 0.0 /* = 8+T */);

} // namespace dlab
