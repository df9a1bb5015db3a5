#include "dlab/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "dlab/spectral.hpp"

namespace dlab {

namespace {

int index_of(int N) {
    if (N == 0) return 0;
    if ((N & (N - 1)) != 0) throw std::invalid_argument("N must be 0 or dyadic");
    int j = 1;
    while ((1 << (j - 1)) != N) ++j;
    return j;
}

} // namespace

DyadicSequence::DyadicSequence(std::vector<double> values, double delta)
    : v_(std::move(values)), delta_(delta) {
    if (v_.size() < 2) throw std::invalid_argument("envelope needs at least N=0,1");
    for (double x : v_)
        if (!(x > 0.0)) throw std::invalid_argument("envelope values must be positive");
    if (!(delta_ >= 1.0)) throw std::invalid_argument("delta must be >= 1");
    for (size_t j = 1; j + 1 < v_.size(); ++j) {
        if (v_[j + 1] < v_[j] * (1.0 - 1e-12) ||
            v_[j + 1] > delta_ * v_[j] * (1.0 + 1e-12))
            throw std::invalid_argument(
                "envelope violates omega_N <= omega_{2N} <= delta omega_N");
    }
}

DyadicSequence DyadicSequence::constant(int max_dyadic, double value) {
    return DyadicSequence(std::vector<double>(index_of(max_dyadic) + 1, value), 1.0);
}

double DyadicSequence::omega(int N) const {
    const int j = index_of(N);
    if (j >= static_cast<int>(v_.size()))
        throw std::out_of_range("envelope shorter than requested dyadic");
    return v_[j];
}

int DyadicSequence::max_dyadic() const { return 1 << (static_cast<int>(v_.size()) - 2); }

bool DyadicSequence::admissible() const {
    for (size_t j = 1; j + 1 < v_.size(); ++j) {
        if (v_[j + 1] < v_[j]) return false;
        if (v_[j + 1] > delta_ * v_[j] * (1.0 + 1e-12)) return false;
    }
    return true;
}

DyadicSequence DyadicSequence::scaled(double factor) const {
    std::vector<double> w(v_);
    for (double& x : w) x *= factor;
    return DyadicSequence(std::move(w), delta_);
}

DyadicSequence tame(const DyadicSequence& seq, double delta_prime) {
    if (!(delta_prime > 1.0 && delta_prime <= seq.delta()))
        throw std::invalid_argument("delta' must lie in (1, delta]");
    std::vector<double> out(seq.blocks());
    out[0] = seq.value_at(0);
    out[1] = seq.value_at(1);
    for (int j = 1; j + 1 < seq.blocks(); ++j) {
        const double ratio = seq.value_at(j + 1) / seq.value_at(j);
        out[j + 1] = std::min(ratio, delta_prime) * out[j];
    }
    return DyadicSequence(std::move(out), delta_prime);
}

DyadicSequence build_from_datum(const Field& u0, double s, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("growth exponent must lie in (0,1)");

    const int ny = u0.grid().nyquist();
    const int blocks = index_of(ny) + 2; // N = 0, 1, ..., 2*ny

    // per-block weighted mass a_K = (1 v K)^{2s} ||P_K u0||^2
    std::vector<double> a(blocks, 0.0);
    double total = 0.0;
    {
        int K = 0;
        for (int j = 0; j < blocks - 1; ++j, K = (K == 0 ? 1 : 2 * K)) {
            const Field blk = project_dyadic(u0, K);
            double m = 0.0;
            for (int k = 0; k < blk.size(); ++k) m += std::norm(blk.slot(k));
            a[j] = std::pow(std::max(1.0, static_cast<double>(K)), 2.0 * s) * 2.0 * M_PI * m;
            total += a[j];
        }
    }
    const double hs = std::sqrt(total);

    std::vector<double> w(blocks);
    if (hs == 0.0) {
        int N = 0;
        for (int j = 0; j < blocks; ++j, N = (N == 0 ? 1 : 2 * N))
            w[j] = std::pow(std::max(1.0, static_cast<double>(N)), eps);
        return DyadicSequence(std::move(w), std::pow(2.0, eps));
    }

    int N = 0;
    for (int j = 0; j < blocks; ++j, N = (N == 0 ? 1 : 2 * N)) {
        double S = 0.0;
        int K = 0;
        for (int i = 0; i < blocks - 1; ++i, K = (K == 0 ? 1 : 2 * K)) {
            if (a[i] == 0.0) continue;
            const double n = std::max(1.0, static_cast<double>(N));
            const double kk = std::max(1.0, static_cast<double>(K));
            S += std::pow(std::min(n / kk, kk / n), 2.0 * eps) * a[i];
        }
        w[j] = std::max(1.0, hs / std::sqrt(S));
    }
    // running max keeps the envelope nondecreasing; the 2^eps ratio bound
    // survives because the raw sequence already varies by at most 2^eps
    for (int j = 1; j < blocks; ++j) w[j] = std::max(w[j], w[j - 1]);

    DyadicSequence env(std::move(w), std::pow(2.0, eps));
    const double weighted = sobolev_norm(u0, s, &env);
    const double plain = sobolev_norm(u0, s);
    if (weighted > 2.0 * plain) env = env.scaled(2.0 * plain / weighted);
    return env;
}

} // namespace dlab
