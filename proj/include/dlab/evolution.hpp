#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "dlab/spectral.hpp"

namespace dlab {

class DispersionSymbol;
class EntireSeries;

enum class Scheme { ETDRK4, StrangSplit };
enum class Dealias { TwoThirds, None };

struct SolverConfig {
    double dt = 1e-3;
    double T = 1.0;
    Scheme scheme = Scheme::ETDRK4;
    Dealias dealias = Dealias::TwoThirds;
    int record_every = 1;
};

/// uniformly time-sampled solution frames on [0, T]
struct Trajectory {
    TorusGrid grid;
    double sample_dt = 0.0; // spacing between recorded frames
    std::vector<double> times;
    std::vector<Field> frames;
    double aliasing_residual = 0.0; // max on-grid vs padded nonlinearity gap

    double duration() const { return times.empty() ? 0.0 : times.back(); }
};

/// exact free flow: coefficient-wise e^{i t p(xi)}
Field propagator(const DispersionSymbol& sym, double t, const Field& u);

struct BlowUpError : std::runtime_error {
    BlowUpError(double t, double h1)
        : std::runtime_error("blow-up guard tripped"), last_stable_time(t), h1_norm(h1) {}
    double last_stable_time;
    double h1_norm;
};

/// optional manufactured-solution forcing g(t) added to the right-hand side
using Forcing = std::function<Field(double)>;

Trajectory solve(const Field& u0, const DispersionSymbol& sym, const EntireSeries& f,
                 const SolverConfig& cfg, const Forcing& forcing = nullptr);

struct InvariantReport {
    double M = 0.0;           // int u^2
    double E = 0.0;           // 1/2 int u dx^{-1}L u + int F(u)
    double E_quad_high = 0.0; // int |Lambda_{alpha/2} P_{>=xi0} u|^2
    double E_quad_low = 0.0;  // 2pi sum_{1<=|k|<xi0} (p(k)/k) |u^(k)|^2
    double E_potential = 0.0; // int F(u)
    double K0 = 0.0;          // max_{1<=|k|<=xi0} |p(k)/k|
};

InvariantReport invariants(const Field& u, const DispersionSymbol& sym,
                           const EntireSeries& f);

} // namespace dlab
