#include "dlab/evolution.hpp"

#include <cmath>

#include "dlab/nonlinearity.hpp"
#include "dlab/symbols.hpp"

namespace dlab {

Field propagator(const DispersionSymbol& sym, double t, const Field& u) {
    return apply_multiplier(u, [&](double xi) {
        return std::exp(cplx{0.0, t * sym(xi)});
    });
}

namespace {

struct EtdCoeffs {
    std::vector<cplx> E1, E2, Q, f1, f2, f3;
};

// phi-functions by contour averaging: mean over 32 points on the unit circle
// around each z, which is stable for small |z|
EtdCoeffs etd_coeffs(const TorusGrid& g, const DispersionSymbol& sym, double h) {
    const int M = g.size(), R = 32;
    EtdCoeffs c;
    c.E1.resize(M); c.E2.resize(M);
    c.Q.resize(M); c.f1.resize(M); c.f2.resize(M); c.f3.resize(M);
    for (int k = 0; k < M; ++k) {
        const cplx z{0.0, h * sym(static_cast<double>(g.freq(k)))};
        c.E1[k] = std::exp(z);
        c.E2[k] = std::exp(0.5 * z);
        cplx q{}, a{}, b{}, d{};
        for (int j = 0; j < R; ++j) {
            const double th = 2.0 * M_PI * (j + 0.5) / R;
            const cplx r = z + std::exp(cplx{0.0, th});
            const cplx er = std::exp(r), r2 = r * r, r3 = r2 * r;
            q += (std::exp(0.5 * r) - 1.0) / r;
            a += (-4.0 - r + er * (4.0 - 3.0 * r + r2)) / r3;
            b += (2.0 + r + er * (-2.0 + r)) / r3;
            d += (-4.0 - 3.0 * r - r2 + er * (4.0 - r)) / r3;
        }
        const double inv = h / R;
        c.Q[k] = q * inv;
        c.f1[k] = a * inv;
        c.f2[k] = b * inv;
        c.f3[k] = d * inv;
    }
    return c;
}

using Coeffs = std::vector<cplx>;

Coeffs field_coeffs(const Field& f) {
    Coeffs v(f.size());
    for (int k = 0; k < f.size(); ++k) v[k] = f.slot(k);
    return v;
}

Field coeffs_field(const TorusGrid& g, const Coeffs& v) {
    Field f(g);
    for (int k = 0; k < g.size(); ++k) f.slot(k) = v[k];
    return f;
}

class RhsEvaluator {
public:
    RhsEvaluator(const TorusGrid& g, const EntireSeries& f, Dealias dealias,
                 const Forcing& forcing)
        : grid_(g), f_(f), forcing_(forcing), have_f_(!f.is_zero()) {
        mask_.assign(g.size(), 1.0);
        if (dealias == Dealias::TwoThirds) {
            for (int k = 0; k < g.size(); ++k)
                if (std::abs(g.freq(k)) > g.size() / 3) mask_[k] = 0.0;
        }
    }

    bool trivial() const { return !have_f_ && !forcing_; }

    // N(u, t) = dealias( i xi f(u)^ ) + g^(t); the sign pairs with the
    // free flow e^{i t p(xi)} so that E = 1/2 int u dx^{-1}L u + int F(u)
    // is the exactly conserved energy of the semi-discrete system
    Coeffs operator()(const Coeffs& u, double t, int trunc_order) const {
        Coeffs out(grid_.size(), cplx{0.0, 0.0});
        if (have_f_) {
            Field uf = coeffs_field(grid_, u);
            const auto phys = uf.to_physical();
            std::vector<double> fu(phys.size());
            for (size_t j = 0; j < fu.size(); ++j)
                fu[j] = f_.eval_truncated(phys[j], trunc_order);
            const Field fhat = Field::from_physical(grid_, fu);
            for (int k = 0; k < grid_.size(); ++k) {
                const double xi = grid_.freq(k);
                out[k] = cplx{0.0, xi} * fhat.slot(k) * mask_[k];
            }
        }
        if (forcing_) {
            const Field g = forcing_(t);
            for (int k = 0; k < grid_.size(); ++k) out[k] += g.slot(k);
        }
        return out;
    }

    const std::vector<double>& mask() const { return mask_; }

private:
    TorusGrid grid_;
    const EntireSeries& f_;
    const Forcing& forcing_;
    bool have_f_;
    std::vector<double> mask_;
};

// max on-grid vs 4x-padded nonlinear term gap over retained modes
double aliasing_probe(const TorusGrid& g, const EntireSeries& f, const Field& u,
                      const std::vector<double>& mask, int trunc_order) {
    const int Mp = 4 * g.size();
    const auto phys = u.to_physical_padded(4);
    std::vector<double> fu(phys.size());
    for (size_t j = 0; j < fu.size(); ++j)
        fu[j] = f.eval_truncated(phys[j], trunc_order);
    const Field ref = resample(Field::from_physical(TorusGrid(Mp), fu), g.size());

    const auto coarse = u.to_physical();
    std::vector<double> fc(coarse.size());
    for (size_t j = 0; j < fc.size(); ++j)
        fc[j] = f.eval_truncated(coarse[j], trunc_order);
    const Field raw = Field::from_physical(g, fc);

    double gap = 0.0;
    for (int k = 0; k < g.size(); ++k) {
        const double xi = g.freq(k);
        gap = std::max(gap,
                       std::abs(cplx{0.0, xi} * (raw.slot(k) - ref.slot(k)) * mask[k]));
    }
    return gap;
}

} // namespace

Trajectory solve(const Field& u0, const DispersionSymbol& sym, const EntireSeries& f,
                 const SolverConfig& cfg, const Forcing& forcing) {
    if (!(cfg.dt > 0.0) || !(cfg.T > 0.0) || cfg.dt > cfg.T)
        throw std::invalid_argument("need 0 < dt <= T");
    if (cfg.record_every < 1) throw std::invalid_argument("record_every must be >= 1");
    const double steps_real = cfg.T / cfg.dt;
    const long long n_steps = std::llround(steps_real);
    if (std::fabs(steps_real - static_cast<double>(n_steps)) > 1e-9 ||
        n_steps % cfg.record_every != 0)
        throw std::invalid_argument("T/dt must be an integer multiple of record_every");
    if (cfg.dealias == Dealias::None && !f.is_zero() && f.degree() >= 2)
        throw std::invalid_argument("nonlinear f requires two-thirds dealiasing");

    const TorusGrid& g = u0.grid();
    const double h = cfg.dt;
    RhsEvaluator rhs(g, f, cfg.dealias, forcing);

    Field state = u0;
    if (cfg.dealias == Dealias::TwoThirds) {
        Coeffs c = field_coeffs(state);
        for (int k = 0; k < g.size(); ++k) c[k] *= rhs.mask()[k];
        state = coeffs_field(g, c);
    }

    Trajectory traj{g};
    traj.sample_dt = h * cfg.record_every;
    traj.times.push_back(0.0);
    traj.frames.push_back(state);

    const double guard = 1e6 * std::max(sobolev_norm(u0, 1.0), 1e-300);

    const EtdCoeffs ec = cfg.scheme == Scheme::ETDRK4 ? etd_coeffs(g, sym, h)
                                                      : EtdCoeffs{};
    // Strang needs the half-step linear propagator
    std::vector<cplx> E_half(g.size());
    if (cfg.scheme == Scheme::StrangSplit)
        for (int k = 0; k < g.size(); ++k)
            E_half[k] = std::exp(cplx{0.0, 0.5 * h * sym(static_cast<double>(g.freq(k)))});

    Coeffs v = field_coeffs(state);
    const int M = g.size();
    const auto axpy = [M](const Coeffs& e, const Coeffs& x, const Coeffs& w,
                          const Coeffs& n) {
        Coeffs r(M);
        for (int k = 0; k < M; ++k) r[k] = e[k] * x[k] + w[k] * n[k];
        return r;
    };

    for (long long step = 0; step < n_steps; ++step) {
        const double t = step * h;
        int K = 0;
        if (!f.is_zero()) {
            double amp = 0.0;
            for (double x : coeffs_field(g, v).to_physical())
                amp = std::max(amp, std::fabs(x));
            K = f.truncation_order(1.25 * amp); // headroom for internal stages
        }

        if (cfg.scheme == Scheme::ETDRK4) {
            if (rhs.trivial()) {
                for (int k = 0; k < M; ++k) v[k] *= ec.E1[k];
            } else {
                const Coeffs Nv = rhs(v, t, K);
                const Coeffs a = axpy(ec.E2, v, ec.Q, Nv);
                const Coeffs Na = rhs(a, t + h / 2, K);
                const Coeffs b = axpy(ec.E2, v, ec.Q, Na);
                const Coeffs Nb = rhs(b, t + h / 2, K);
                Coeffs twoNb(M);
                for (int k = 0; k < M; ++k) twoNb[k] = 2.0 * Nb[k] - Nv[k];
                const Coeffs c = axpy(ec.E2, a, ec.Q, twoNb);
                const Coeffs Nc = rhs(c, t + h, K);
                for (int k = 0; k < M; ++k)
                    v[k] = ec.E1[k] * v[k] + ec.f1[k] * Nv[k]
                         + 2.0 * ec.f2[k] * (Na[k] + Nb[k]) + ec.f3[k] * Nc[k];
            }
        } else { // Strang: half linear, full nonlinear (RK4), half linear
            for (int k = 0; k < M; ++k) v[k] *= E_half[k];
            if (!rhs.trivial()) {
                const double tm = t + h / 2; // nonlinear substep clock
                const Coeffs k1 = rhs(v, tm, K);
                Coeffs tmp(M);
                for (int k = 0; k < M; ++k) tmp[k] = v[k] + 0.5 * h * k1[k];
                const Coeffs k2 = rhs(tmp, tm, K);
                for (int k = 0; k < M; ++k) tmp[k] = v[k] + 0.5 * h * k2[k];
                const Coeffs k3 = rhs(tmp, tm, K);
                for (int k = 0; k < M; ++k) tmp[k] = v[k] + h * k3[k];
                const Coeffs k4 = rhs(tmp, tm, K);
                for (int k = 0; k < M; ++k)
                    v[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
            }
            for (int k = 0; k < M; ++k) v[k] *= E_half[k];
        }

        Field snapshot = coeffs_field(g, v);
        const double h1 = sobolev_norm(snapshot, 1.0);
        if (!(h1 <= guard)) throw BlowUpError(t, h1);

        if ((step + 1) % cfg.record_every == 0) {
            traj.times.push_back((step + 1) * h);
            if (!f.is_zero())
                traj.aliasing_residual = std::max(
                    traj.aliasing_residual,
                    aliasing_probe(g, f, snapshot, rhs.mask(), K));
            traj.frames.push_back(std::move(snapshot));
        }
    }
    return traj;
}

InvariantReport invariants(const Field& u, const DispersionSymbol& sym,
                           const EntireSeries& f) {
    const TorusGrid& g = u.grid();
    InvariantReport rep;

    for (int k = 0; k < g.size(); ++k) rep.M += std::norm(u.slot(k));
    rep.M *= 2.0 * M_PI;

    const double xi0 = sym.xi0();
    for (int k = 0; k < g.size(); ++k) {
        const int xi = g.freq(k);
        if (xi == 0) continue;
        const double m = sym(static_cast<double>(xi)) / xi;
        const double e = 2.0 * M_PI * m * std::norm(u.slot(k));
        if (std::abs(xi) >= xi0) {
            if (m < 0.0)
                throw std::domain_error("p(k)/k negative at |k| >= xi0: symbol violates "
                                        "the high-frequency positivity");
            rep.E_quad_high += e;
        } else {
            rep.E_quad_low += e;
        }
        if (std::abs(xi) >= 1 && std::abs(xi) <= xi0)
            rep.K0 = std::max(rep.K0, std::fabs(m));
    }

    const EntireSeries F = antiderivative(f);
    const auto phys = u.to_physical_padded(4);
    double pot = 0.0;
    for (double x : phys) pot += F.eval(x);
    rep.E_potential = pot * 2.0 * M_PI / phys.size();

    rep.E = 0.5 * (rep.E_quad_high + rep.E_quad_low) + rep.E_potential;
    return rep;
}

} // namespace dlab
