#include "dlab/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <sstream>

#include "dlab/envelope.hpp"
#include "dlab/format.hpp"

namespace dlab {

namespace {

class PlanCache {
public:
    void execute(std::vector<cplx>& a, int sign) {
        fftw_plan p;
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto key = std::make_pair(a.size(), sign);
            auto it = plans_.find(key);
            if (it == plans_.end()) {
                // UNALIGNED: plans must run on plain vector storage
                p = fftw_plan_dft_1d(static_cast<int>(a.size()),
                                     reinterpret_cast<fftw_complex*>(a.data()),
                                     reinterpret_cast<fftw_complex*>(a.data()),
                                     sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
                plans_.emplace(key, p);
            } else {
                p = it->second;
            }
        }
        fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(a.data()),
                         reinterpret_cast<fftw_complex*>(a.data()));
    }

private:
    std::mutex mu_;
    std::map<std::pair<size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

} // namespace

void fft_forward_raw(std::vector<cplx>& a) { cache().execute(a, FFTW_FORWARD); }
void fft_inverse_raw(std::vector<cplx>& a) { cache().execute(a, FFTW_BACKWARD); }

TorusGrid::TorusGrid(int M) : M_(M) {
    if (M < 8 || (M & (M - 1)) != 0)
        throw std::invalid_argument("grid size must be a power of two >= 8");
}

Field Field::from_physical(const TorusGrid& g, const std::vector<double>& values) {
    if (static_cast<int>(values.size()) != g.size())
        throw std::invalid_argument("sample count does not match grid");
    Field f(g);
    for (int j = 0; j < g.size(); ++j) f.c_[j] = cplx{values[j], 0.0};
    fft_forward_raw(f.c_);
    const double inv = 1.0 / g.size();
    for (auto& c : f.c_) c *= inv;
    return f;
}

Field Field::cosine(const TorusGrid& g, int k, double amp) {
    if (k < 0 || k > g.nyquist()) throw std::invalid_argument("mode beyond Nyquist");
    Field f(g);
    if (k == 0) {
        f.coeff(0) = amp;
    } else if (k == g.nyquist()) {
        f.coeff(k) = amp; // self-conjugate slot
    } else {
        f.coeff(k) = amp / 2.0;
        f.coeff(-k) = amp / 2.0;
    }
    return f;
}

std::vector<double> Field::to_physical() const {
    std::vector<cplx> buf = c_;
    fft_inverse_raw(buf);
    std::vector<double> out(buf.size());
    for (size_t j = 0; j < buf.size(); ++j) out[j] = buf[j].real();
    return out;
}

std::vector<double> Field::to_physical_padded(int factor) const {
    if (factor <= 1) return to_physical();
    const int M = grid_.size(), Mp = M * factor, ny = M / 2;
    std::vector<cplx> buf(Mp, cplx{0.0, 0.0});
    for (int k = 0; k < M; ++k) {
        const int xi = grid_.freq(k);
        if (xi == ny) { // split Nyquist between +-ny to keep the signal real
            buf[xi] += c_[k] * 0.5;
            buf[Mp - xi] += std::conj(c_[k]) * 0.5;
        } else {
            buf[xi >= 0 ? xi : xi + Mp] += c_[k];
        }
    }
    fft_inverse_raw(buf);
    std::vector<double> out(Mp);
    for (int j = 0; j < Mp; ++j) out[j] = buf[j].real();
    return out;
}

double Field::l2_norm() const {
    double s = 0.0;
    for (const auto& c : c_) s += std::norm(c);
    return std::sqrt(2.0 * M_PI * s);
}

double Field::linf_norm(int pad) const {
    const auto v = to_physical_padded(pad);
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double Field::hermitian_residual() const {
    double scale = 0.0;
    for (const auto& c : c_) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return 0.0;
    double r = std::fabs(c_[0].imag());
    r = std::max(r, std::fabs(c_[grid_.nyquist()].imag()));
    for (int xi = 1; xi < grid_.nyquist(); ++xi)
        r = std::max(r, std::abs(coeff(-xi) - std::conj(coeff(xi))));
    return r / scale;
}

void Field::symmetrize() {
    c_[0] = cplx{c_[0].real(), 0.0};
    c_[grid_.nyquist()] = cplx{c_[grid_.nyquist()].real(), 0.0};
    for (int xi = 1; xi < grid_.nyquist(); ++xi) {
        const cplx avg = 0.5 * (coeff(xi) + std::conj(coeff(-xi)));
        coeff(xi) = avg;
        coeff(-xi) = std::conj(avg);
    }
}

Field& Field::operator+=(const Field& o) {
    if (!(grid_ == o.grid_)) throw std::invalid_argument("grid mismatch");
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

Field& Field::operator-=(const Field& o) {
    if (!(grid_ == o.grid_)) throw std::invalid_argument("grid mismatch");
    for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

Field& Field::operator*=(double a) {
    for (auto& c : c_) c *= a;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double a, Field f) { return f *= a; }

namespace cutoff {

namespace {
double eta(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
}

double chi(double x) {
    const double a = std::fabs(x);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    const double num = eta(2.0 - a), den = eta(a - 1.0);
    return num / (num + den);
}

double phi(double x) { return chi(x) - chi(2.0 * x); }

double phi_N(double N, double x) {
    if (N == 0.0) return chi(2.0 * x);
    return phi(x / N);
}

} // namespace cutoff

Field project_dyadic(const Field& u, int N) {
    if (N != 0 && (N & (N - 1)) != 0)
        throw std::invalid_argument("N must be 0 or a power of two");
    if (N > u.grid().nyquist())
        throw std::invalid_argument("dyadic block beyond the grid Nyquist range");
    return apply_multiplier(u, [N](double xi) {
        return cutoff::phi_N(static_cast<double>(N), xi);
    });
}

Field derivative(const Field& u) {
    return apply_multiplier(u, [](double xi) { return cplx{0.0, xi}; });
}

double sobolev_norm(const Field& u, double s, const DyadicSequence* env) {
    if (!std::isfinite(s)) throw std::invalid_argument("non-finite Sobolev index");
    const int ny = u.grid().nyquist();
    if (env && env->max_dyadic() < ny)
        throw std::invalid_argument("envelope does not cover the grid's dyadic range");
    double total = 0.0;
    for (int N = 0; N <= ny; N = (N == 0 ? 1 : 2 * N)) {
        double block = 0.0;
        for (int k = 0; k < u.size(); ++k) {
            const double ph = cutoff::phi_N(N, u.grid().freq(k));
            if (ph != 0.0) block += ph * ph * std::norm(u.slot(k));
        }
        if (block == 0.0) continue;
        const double w = env ? env->omega(N) : 1.0;
        const double nw = std::pow(std::max(1.0, static_cast<double>(N)), s);
        total += w * w * nw * nw * 2.0 * M_PI * block;
    }
    return std::sqrt(total);
}

double sobolev_norm_sharp(const Field& u, double s) {
    double total = 0.0;
    for (int k = 0; k < u.size(); ++k) {
        const double axi = std::fabs(static_cast<double>(u.grid().freq(k)));
        total += std::pow(std::max(1.0, axi), 2.0 * s) * std::norm(u.slot(k));
    }
    return std::sqrt(2.0 * M_PI * total);
}

Field resample(const Field& u, int M_new) {
    TorusGrid g(M_new);
    Field out(g);
    const int ny_old = u.grid().nyquist(), ny_new = g.nyquist();
    if (M_new >= u.grid().size()) {
        for (int k = 0; k < u.size(); ++k) {
            const int xi = u.grid().freq(k);
            if (xi == ny_old && M_new > u.grid().size()) {
                out.coeff(xi) += u.slot(k) * 0.5;
                out.coeff(-xi) += std::conj(u.slot(k)) * 0.5;
            } else {
                out.coeff(xi) = u.slot(k);
            }
        }
    } else {
        for (int xi = -ny_new + 1; xi <= ny_new; ++xi) out.coeff(xi) = u.coeff(xi);
    }
    return out;
}

Field multiply_exact(const Field& a, const Field& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("grid mismatch");
    const int M = a.grid().size();
    const Field ap = resample(a, 2 * M), bp = resample(b, 2 * M);
    const auto av = ap.to_physical(), bv = bp.to_physical();
    std::vector<double> prod(av.size());
    for (size_t j = 0; j < av.size(); ++j) prod[j] = av[j] * bv[j];
    return resample(Field::from_physical(TorusGrid(2 * M), prod), M);
}

namespace {

// integral over the torus of an exactly represented product on a fine grid
double integral(const std::vector<double>& samples) {
    double s = 0.0;
    for (double x : samples) s += x;
    return s * 2.0 * M_PI / samples.size();
}

} // namespace

CommutatorReport commutator_check(int N, const Field& w, const Field& v, const Field& u) {
    if (!(w.grid() == v.grid()) || !(w.grid() == u.grid()))
        throw std::invalid_argument("grid mismatch");
    if (N <= 0 || (N & (N - 1)) != 0 || N > w.grid().nyquist())
        throw std::invalid_argument("N must be a dyadic block on the grid");

    // all products involve at most three band-limited factors, so a 4x grid
    // represents them exactly
    const int M4 = 4 * w.grid().size();
    const TorusGrid g4(M4);
    const Field W = resample(w, M4), V = resample(v, M4), U = resample(u, M4);

    const auto dxPN2 = [N](const Field& f) {
        return apply_multiplier(f, [N](double xi) {
            const double ph = cutoff::phi_N(N, xi);
            return cplx{0.0, xi * ph * ph};
        });
    };
    const auto pointwise = [&g4](const Field& a, const Field& b) {
        const auto av = a.to_physical(), bv = b.to_physical();
        std::vector<double> p(av.size());
        for (size_t j = 0; j < av.size(); ++j) p[j] = av[j] * bv[j];
        return p;
    };

    const Field wv = Field::from_physical(g4, pointwise(W, V));
    Field comm = dxPN2(wv);
    {
        const auto t = pointwise(W, dxPN2(V));
        comm -= Field::from_physical(g4, std::vector<double>(t));
    }

    CommutatorReport rep;
    rep.commutator_l2 = comm.l2_norm();
    rep.bound = derivative(W).linf_norm() * V.l2_norm();
    rep.ratio = rep.bound > 0.0 ? rep.commutator_l2 / rep.bound
                                : (rep.commutator_l2 > 0.0 ? INFINITY : 0.0);

    // Pi(u,v) = v d_x P_N^2 u + u d_x P_N^2 v; integration by parts gives
    // int Pi(u,v) w = - int u [d_x P_N^2, w] v
    const auto Pi_w = integral(pointwise(Field::from_physical(g4, pointwise(V, dxPN2(U))), W))
                    + integral(pointwise(Field::from_physical(g4, pointwise(U, dxPN2(V))), W));
    const auto u_comm = integral(pointwise(U, comm));
    const double scale = std::max({std::fabs(Pi_w), std::fabs(u_comm), 1e-300});
    rep.identity_residual = std::fabs(Pi_w + u_comm) / scale;
    return rep;
}

std::string spectral_dump(const Field& u) {
    std::ostringstream os;
    os << "# M=" << u.grid().size() << " convention=angular-1/2pi\n";
    const int ny = u.grid().nyquist();
    for (int xi = -ny + 1; xi <= ny; ++xi) {
        const cplx c = u.coeff(xi);
        os << xi << ", " << fmt17(c.real()) << ", " << fmt17(c.imag()) << "\n";
    }
    return os.str();
}

Field parse_spectral_dump(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    std::getline(is, header);
    int M = 0;
    if (std::sscanf(header.c_str(), "# M=%d", &M) != 1)
        throw std::invalid_argument("bad spectral dump header");
    Field f((TorusGrid(M)));
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        int xi;
        double re, im;
        if (std::sscanf(line.c_str(), "%d , %lf , %lf", &xi, &re, &im) != 3)
            throw std::invalid_argument("bad spectral dump row: " + line);
        f.coeff(xi) = cplx{re, im};
    }
    return f;
}

} // namespace dlab
