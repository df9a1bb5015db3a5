#include "dlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"

#include "dlab/bourgain.hpp"
#include "dlab/envelope.hpp"
#include "dlab/evolution.hpp"
#include "dlab/format.hpp"
#include "dlab/nonlinearity.hpp"
#include "dlab/probes.hpp"
#include "dlab/resonance.hpp"
#include "dlab/rng.hpp"
#include "dlab/spectral.hpp"
#include "dlab/symbols.hpp"

namespace dlab {

namespace {

using json = nlohmann::json;

const std::vector<std::string> kExperiments = {
    "solve",          "conserve",        "resonance", "strichartz",
    "envelope",       "bourgain_norms",  "threshold_table", "global_demo"};

int thread_cap() {
    const char* v = std::getenv("DISPERSIVE_LAB_THREADS");
    if (!v) return 1;
    const int n = std::atoi(v);
    return n >= 1 ? n : 1;
}

DispersionSymbol symbol_from(const Config& cfg) {
    const SymbolKind kind =
        symbol_kind_from_string(cfg.get_string("symbol.kind", "pure"));
    const double alpha = cfg.get_double("symbol.alpha",
                                        kind == SymbolKind::PureFractional ? 2.0 : 1.0);
    const double xi0 = cfg.get_double("symbol.xi0", 1.0);
    try {
        return make_symbol(kind, alpha, xi0);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("symbol: ") + e.what());
    }
}

EntireSeries nonlinearity_from(const Config& cfg) {
    try {
        return EntireSeries::parse(cfg.get_string("f", "poly:0,0,1"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("f: ") + e.what());
    }
}

SolverConfig solver_from(const Config& cfg) {
    SolverConfig sc;
    sc.dt = cfg.get_double("time.dt", 1e-3);
    sc.T = cfg.get_double("time.T", 1.0);
    sc.record_every = static_cast<int>(cfg.get_int("time.record_every", 10));
    const std::string scheme = cfg.get_string("solver.scheme", "etdrk4");
    if (scheme == "etdrk4") sc.scheme = Scheme::ETDRK4;
    else if (scheme == "strang") sc.scheme = Scheme::StrangSplit;
    else throw ConfigError("solver.scheme must be etdrk4 or strang");
    const std::string dealias = cfg.get_string("solver.dealias", "two_thirds");
    if (dealias == "two_thirds") sc.dealias = Dealias::TwoThirds;
    else if (dealias == "none") sc.dealias = Dealias::None;
    else throw ConfigError("solver.dealias must be two_thirds or none");
    return sc;
}

// per-experiment key tables (shared keys repeated where used)
const std::vector<std::string> kSolveKeys = {
    "experiment", "seed", "output_dir",
    "symbol.kind", "symbol.alpha", "symbol.xi0", "f", "u0",
    "grid.M", "time.dt", "time.T", "time.record_every",
    "solver.scheme", "solver.dealias"};

struct Emitter {
    std::filesystem::path dir;
    std::vector<std::pair<std::string, std::string>> files;

    void emit(const std::string& name, const std::string& body) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw IoError("cannot write " + (dir / name).string());
        out << body;
        if (!out) throw IoError("write failed: " + (dir / name).string());
        files.emplace_back(name, sha256_hex(body));
    }
};

std::string csv_invariants(const Trajectory& traj, const DispersionSymbol& sym,
                           const EntireSeries& f) {
    std::ostringstream out;
    out << "t,M,E,E_quad_high,E_quad_low,E_potential,K0\n";
    for (size_t j = 0; j < traj.frames.size(); ++j) {
        const InvariantReport r = invariants(traj.frames[j], sym, f);
        out << fmt17(traj.times[j]) << ',' << fmt17(r.M) << ',' << fmt17(r.E)
            << ',' << fmt17(r.E_quad_high) << ',' << fmt17(r.E_quad_low) << ','
            << fmt17(r.E_potential) << ',' << fmt17(r.K0) << '\n';
    }
    return out.str();
}

std::string csv_probe(const std::vector<ProbeReport>& reports) {
    std::ostringstream out;
    out << "probe,alpha,s,T,M,lhs,rhs,ratio,seed\n";
    for (const ProbeReport& r : reports)
        out << r.probe << ',' << fmt17(r.alpha) << ',' << fmt17(r.s) << ','
            << fmt17(r.T) << ',' << r.M << ',' << fmt17(r.lhs) << ','
            << fmt17(r.rhs) << ',' << fmt17(r.ratio) << ',' << r.seed << '\n';
    return out.str();
}

void run_solve(const Config& cfg, std::uint64_t seed, Emitter& em, bool drift_only) {
    cfg.require_known(kSolveKeys);
    const DispersionSymbol sym = symbol_from(cfg);
    const EntireSeries f = nonlinearity_from(cfg);
    const TorusGrid grid(static_cast<int>(cfg.get_int("grid.M", 256)));
    const Field u0 = parse_datum(cfg.get_string("u0", "cos:1:1"), grid, seed);
    const SolverConfig sc = solver_from(cfg);

    const Trajectory traj = solve(u0, sym, f, sc);
    em.emit("invariants.csv", csv_invariants(traj, sym, f));

    if (drift_only) {
        const InvariantReport first = invariants(traj.frames.front(), sym, f);
        double dM = 0.0, dE = 0.0;
        for (const Field& u : traj.frames) {
            const InvariantReport r = invariants(u, sym, f);
            dM = std::max(dM, std::fabs(r.M - first.M) / std::max(std::fabs(first.M), 1e-300));
            dE = std::max(dE, std::fabs(r.E - first.E) / std::max(std::fabs(first.E), 1e-300));
        }
        std::ostringstream out;
        out << "quantity,value\n";
        out << "rel_drift_M," << fmt17(dM) << '\n';
        out << "rel_drift_E," << fmt17(dE) << '\n';
        out << "aliasing_residual," << fmt17(traj.aliasing_residual) << '\n';
        em.emit("drift.csv", out.str());
    } else {
        em.emit("final_state.csv", spectral_dump(traj.frames.back()));
        std::ostringstream out;
        out << "quantity,value\n";
        out << "frames," << traj.frames.size() << '\n';
        out << "sample_dt," << fmt17(traj.sample_dt) << '\n';
        out << "aliasing_residual," << fmt17(traj.aliasing_residual) << '\n';
        em.emit("summary.csv", out.str());
    }
}

void run_resonance(const Config& cfg, std::uint64_t seed, Emitter& em) {
    cfg.require_known({"experiment", "seed", "output_dir",
                       "symbol.kind", "symbol.alpha", "symbol.xi0",
                       "resonance.mode", "resonance.k", "resonance.lambda_sim",
                       "resonance.lambda_gg", "resonance.xi_max",
                       "resonance.samples"});
    const DispersionSymbol sym = symbol_from(cfg);
    ScanHypothesis hyp;
    hyp.lambda_sim = cfg.get_double("resonance.lambda_sim", 2.0);
    hyp.lambda_gg = cfg.get_double("resonance.lambda_gg", 8.0);
    hyp.xi_max = cfg.get_int("resonance.xi_max", 64);
    hyp.k = static_cast<int>(cfg.get_int("resonance.k", 1));
    hyp.samples = cfg.get_int("resonance.samples", 200000);
    hyp.seed = seed;
    const std::string mode_s = cfg.get_string("resonance.mode", "res1");
    ScanMode mode;
    if (mode_s == "res1") mode = ScanMode::Res1;
    else if (mode_s == "res2") mode = ScanMode::Res2;
    else throw ConfigError("resonance.mode must be res1 or res2");

    ScanReport rep;
    try {
        rep = scan_resonance(sym, hyp, mode);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("resonance: ") + e.what());
    }
    std::ostringstream out;
    out << "mode,k,alpha,xi_max,lambda_sim,lambda_gg,min_ratio,witness\n";
    out << mode_s << ',' << hyp.k << ',' << fmt17(sym.alpha()) << ','
        << hyp.xi_max << ',' << fmt17(hyp.lambda_sim) << ','
        << fmt17(hyp.lambda_gg) << ',' << fmt17(rep.min_ratio) << ',';
    if (rep.witness.empty()) {
        out << "none(empty-admissible-set)";
    } else {
        for (size_t j = 0; j < rep.witness.size(); ++j)
            out << (j ? " " : "") << rep.witness[j];
    }
    out << '\n';
    em.emit("resonance.csv", out.str());
}

void run_strichartz(const Config& cfg, std::uint64_t seed, Emitter& em) {
    cfg.require_known({"experiment", "seed", "output_dir",
                       "symbol.kind", "symbol.alpha", "symbol.xi0", "f", "u0",
                       "grid.M", "time.dt", "time.T", "time.record_every",
                       "solver.scheme", "solver.dealias",
                       "probe.kind", "probe.trials", "probe.T", "probe.s",
                       "probe.N1", "probe.N2", "u0_perturb"});
    const DispersionSymbol sym = symbol_from(cfg);
    const std::string kind = cfg.get_string("probe.kind", "linear");
    const int trials = static_cast<int>(cfg.get_int("probe.trials", 8));
    std::vector<ProbeReport> reports;

    if (kind == "linear") {
        reports.push_back(linear_strichartz(
            sym, cfg.get_double("probe.T", 1.0),
            static_cast<int>(cfg.get_int("grid.M", 256)), trials, seed));
    } else if (kind == "improved" || kind == "difference") {
        const EntireSeries f = nonlinearity_from(cfg);
        const TorusGrid grid(static_cast<int>(cfg.get_int("grid.M", 256)));
        const Field u0 = parse_datum(cfg.get_string("u0", "cos:1:1"), grid, seed);
        const SolverConfig sc = solver_from(cfg);
        const double s = cfg.get_double("probe.s",
                                        regularity_params(sym.alpha()).s);
        const Trajectory tu = solve(u0, sym, f, sc);
        if (kind == "improved") {
            const ImprovedStrichartz imp = improved_strichartz(tu, sym, f, s);
            reports.push_back(imp.eq1);
            reports.push_back(imp.eq2);
        } else {
            Field v0 = parse_datum(
                cfg.get_string("u0_perturb", "cos:3:0.001"), grid, seed);
            const Trajectory tv = solve(u0 + v0, sym, f, sc);
            reports.push_back(difference_probe(tu, tv, sym, f, s));
        }
    } else if (kind == "bilinear") {
        reports.push_back(bilinear_check(
            sym, static_cast<int>(cfg.get_int("probe.N1", 16)),
            static_cast<int>(cfg.get_int("probe.N2", 16)), trials, seed));
    } else {
        throw ConfigError("probe.kind must be linear, improved, difference, or bilinear");
    }
    em.emit("strichartz.csv", csv_probe(reports));
}

void run_envelope(const Config& cfg, std::uint64_t seed, Emitter& em) {
    cfg.require_known({"experiment", "seed", "output_dir", "grid.M", "u0",
                       "envelope.s", "envelope.eps", "envelope.delta_prime"});
    const TorusGrid grid(static_cast<int>(cfg.get_int("grid.M", 256)));
    const Field u0 = parse_datum(cfg.get_string("u0", "cos:1:1"), grid, seed);
    const double s = cfg.get_double("envelope.s", 0.75);
    const double eps = cfg.get_double("envelope.eps", 0.25);
    const DyadicSequence env = build_from_datum(u0, s, eps);
    const double dp = cfg.get_double("envelope.delta_prime", 0.0);
    std::ostringstream out;
    out << "N,omega" << (dp > 0.0 ? ",tamed" : "") << '\n';
    const DyadicSequence tamed = dp > 0.0 ? tame(env, dp) : env;
    int N = 0;
    for (int j = 0; j < env.blocks(); ++j, N = (N == 0 ? 1 : 2 * N)) {
        out << N << ',' << fmt17(env.value_at(j));
        if (dp > 0.0) out << ',' << fmt17(tamed.value_at(j));
        out << '\n';
    }
    em.emit("envelope.csv", out.str());
}

void run_bourgain(const Config& cfg, std::uint64_t seed, Emitter& em) {
    cfg.require_known({"experiment", "seed", "output_dir",
                       "symbol.kind", "symbol.alpha", "symbol.xi0", "f", "u0",
                       "grid.M", "time.dt", "time.T", "time.record_every",
                       "solver.scheme", "solver.dealias", "norms.s"});
    const DispersionSymbol sym = symbol_from(cfg);
    const EntireSeries f = nonlinearity_from(cfg);
    const TorusGrid grid(static_cast<int>(cfg.get_int("grid.M", 128)));
    const Field u0 = parse_datum(cfg.get_string("u0", "cos:1:1"), grid, seed);
    const SolverConfig sc = solver_from(cfg);
    const double s = cfg.get_double("norms.s", regularity_params(sym.alpha()).s);

    const Trajectory traj = solve(u0, sym, f, sc);
    const ExtendedTrajectory ext = extend(traj, sym);
    const SpaceTimeNorms norms = spacetime_norms(ext, s);

    std::ostringstream out;
    out << "quantity,s,b,value,grid_M,window\n";
    const auto row = [&](const std::string& q, double ss, double b, double v) {
        out << q << ',' << fmt17(ss) << ',' << fmt17(b) << ',' << fmt17(v)
            << ',' << grid.size() << ",[-4:4]\n";
    };
    row("xsb", s - 1.0, 1.0, norms.xsb);
    row("linf_hs", s, 0.0, norms.linf_hs);
    row("zs", s, 1.0, norms.zs);
    row("plancherel_defect", 0.0, 0.0, plancherel_defect(ext));
    row("interp_error", 0.0, 0.0, ext.interp_error);
    em.emit("bourgain.csv", out.str());
}

void run_threshold_table(const Config& cfg, Emitter& em) {
    cfg.require_known({"experiment", "seed", "output_dir"});
    std::vector<double> alphas;
    for (int j = 0; j <= 10; ++j) alphas.push_back(1.0 + 0.1 * j);
    alphas.push_back(std::sqrt(2.0));
    std::ostringstream out;
    out << "alpha,s,beta,b\n";
    for (double a : alphas) {
        const RegularityParams r = regularity_params(a);
        out << fmt17(r.alpha) << ',' << fmt17(r.s) << ',' << fmt17(r.beta)
            << ',' << fmt17(r.b) << '\n';
    }
    em.emit("threshold_table.csv", out.str());
}

void run_global_demo(const Config& cfg, std::uint64_t seed, Emitter& em) {
    cfg.require_known({"experiment", "seed", "output_dir",
                       "symbol.kind", "symbol.alpha", "symbol.xi0", "f", "u0",
                       "grid.M", "time.dt", "time.T", "time.record_every",
                       "solver.scheme", "solver.dealias", "global.normalize_h1"});
    const DispersionSymbol sym = symbol_from(cfg);
    const EntireSeries f = nonlinearity_from(cfg);
    const TorusGrid grid(static_cast<int>(cfg.get_int("grid.M", 256)));
    Field u0 = parse_datum(cfg.get_string("u0", "cos:1:1"), grid, seed);
    if (cfg.get_bool("global.normalize_h1", true)) {
        const double n = sobolev_norm_sharp(u0, sym.alpha() / 2.0);
        if (n == 0.0) throw ConfigError("u0 must be nonzero for the demo");
        u0 *= 1.0 / n;
    }

    const GlobalClass cls = classify_global(f, sym.alpha());
    const InvariantReport inv0 = invariants(u0, sym, f);

    // coercivity constant of the high part of the quadratic energy in the
    // sharp H^{alpha/2} norm, measured over the represented lattice
    double c1 = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= grid.nyquist(); ++k) {
        if (k < sym.xi0()) continue;
        const double m = sym(static_cast<double>(k)) / k;
        c1 = std::min(c1, m / std::pow(1.0 + k * k, sym.alpha() / 2.0));
    }
    const double B = cls.kind == GlobalClass::Case2 ? cls.B : cls.window_sup;
    const double bound2 =
        std::pow(std::max(1.0, sym.xi0()), sym.alpha()) * inv0.M
        + (2.0 * inv0.E + inv0.K0 * inv0.M + 4.0 * M_PI * B) / c1;
    const double bound = std::sqrt(std::max(bound2, 0.0));

    const SolverConfig sc = solver_from(cfg);
    const Trajectory traj = solve(u0, sym, f, sc); // BlowUpError propagates
    double sup_norm = 0.0;
    for (const Field& u : traj.frames)
        sup_norm = std::max(sup_norm,
                            sobolev_norm_sharp(u, sym.alpha() / 2.0));

    std::ostringstream out;
    out << "quantity,value\n";
    out << "class," << (cls.kind == GlobalClass::Case1 ? "case1"
                        : cls.kind == GlobalClass::Case2 ? "case2" : "unknown")
        << '\n';
    out << "M0," << fmt17(inv0.M) << '\n';
    out << "E0," << fmt17(inv0.E) << '\n';
    out << "K0," << fmt17(inv0.K0) << '\n';
    out << "B," << fmt17(B) << '\n';
    out << "c1," << fmt17(c1) << '\n';
    out << "bound," << fmt17(bound) << '\n';
    out << "sup_h_alpha_half," << fmt17(sup_norm) << '\n';
    out << "within_bound," << (sup_norm <= bound ? 1 : 0) << '\n';
    em.emit("global.csv", out.str());
}

} // namespace

const std::vector<std::string>& experiment_names() { return kExperiments; }

Field parse_datum(const std::string& spec, const TorusGrid& grid,
                  std::uint64_t seed) {
    Field u(grid);
    std::stringstream ss(spec);
    std::string term;
    bool any = false;
    while (std::getline(ss, term, ',')) {
        any = true;
        std::stringstream ts(term);
        std::string head;
        std::getline(ts, head, ':');
        if (head == "cos") {
            std::string ks, as;
            std::getline(ts, ks, ':');
            std::getline(ts, as, ':');
            try {
                const int k = std::stoi(ks);
                const double amp = as.empty() ? 1.0 : std::stod(as);
                if (k < 0 || k > grid.nyquist())
                    throw std::out_of_range("mode outside the grid");
                u += Field::cosine(grid, k, amp);
            } catch (const std::exception& e) {
                throw ConfigError("u0 term `" + term + "`: " + e.what());
            }
        } else if (head == "random") {
            std::string bs;
            std::getline(ts, bs, ':');
            int band = 8;
            if (!bs.empty()) band = std::stoi(bs);
            band = std::min(band, grid.nyquist() - 1);
            Rng rng(Rng::child_seed(seed, 0xda7a));
            for (int k = 1; k <= band; ++k) {
                const double d = std::pow(1.0 + k, -1.0);
                const cplx c{rng.normal() * d, rng.normal() * d};
                u.coeff(k) += c;
                u.coeff(-k) += std::conj(c);
            }
        } else if (head == "zero" || head == "0" || head.empty()) {
            // explicit zero datum
        } else {
            throw ConfigError("unknown u0 term `" + term + "`");
        }
    }
    if (!any) throw ConfigError("empty u0 specification");
    return u;
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

RunManifest run_experiment(const std::string& experiment, Config cfg,
                           const std::string& out_dir,
                           std::optional<std::uint64_t> seed_override) {
    const auto t0 = std::chrono::steady_clock::now();
    if (std::find(kExperiments.begin(), kExperiments.end(), experiment) ==
        kExperiments.end())
        throw ConfigError("unknown experiment `" + experiment + "`");

    if (seed_override)
        cfg.set("seed", std::to_string(*seed_override));
    const std::uint64_t seed =
        static_cast<std::uint64_t>(cfg.get_int("seed", 1));

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir);

    Emitter em{out_dir, {}};
    if (experiment == "solve") run_solve(cfg, seed, em, false);
    else if (experiment == "conserve") run_solve(cfg, seed, em, true);
    else if (experiment == "resonance") run_resonance(cfg, seed, em);
    else if (experiment == "strichartz") run_strichartz(cfg, seed, em);
    else if (experiment == "envelope") run_envelope(cfg, seed, em);
    else if (experiment == "bourgain_norms") run_bourgain(cfg, seed, em);
    else if (experiment == "threshold_table") run_threshold_table(cfg, em);
    else if (experiment == "global_demo") run_global_demo(cfg, seed, em);

    RunManifest man;
    man.experiment = experiment;
    man.config = cfg;
    man.seed = seed;
    man.artifact_version = "1";
    man.threads = thread_cap();
    man.files = em.files;
    man.wall_time_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();

    json j;
    j["experiment"] = man.experiment;
    j["artifact_version"] = man.artifact_version;
    j["seed"] = man.seed;
    j["threads"] = man.threads;
    j["wall_time_ms"] = man.wall_time_ms;
    j["config"] = json::object();
    for (const auto& [k, v] : cfg.entries()) j["config"][k] = v;
    j["files"] = json::array();
    for (const auto& [name, digest] : man.files)
        j["files"].push_back({{"name", name}, {"sha256", digest}});
    std::ofstream out(std::filesystem::path(out_dir) / "manifest.json",
                      std::ios::binary);
    if (!out) throw IoError("cannot write manifest.json");
    out << j.dump(2) << '\n';

    return man;
}

} // namespace dlab
