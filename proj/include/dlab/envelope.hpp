#pragma once

#include <stdexcept>
#include <vector>

namespace dlab {

class Field;

/// Dyadic frequency envelope: positive weights omega_N for
/// N in {0, 1, 2, 4, ..., N_max} with omega_N <= omega_{2N} <= delta omega_N.
class DyadicSequence {
public:
    /// values[0] <-> N=0, values[j] <-> N=2^{j-1} for j >= 1
    DyadicSequence(std::vector<double> values, double delta);

    static DyadicSequence constant(int max_dyadic, double value = 1.0);

    double omega(int N) const;        // N must be 0 or a stored dyadic
    int max_dyadic() const;           // largest stored N
    int blocks() const { return static_cast<int>(v_.size()); }
    double value_at(int index) const { return v_[index]; }
    double delta() const { return delta_; }

    /// checks omega_N <= omega_{2N} <= delta omega_N on the stored range
    bool admissible() const;

    DyadicSequence scaled(double factor) const;

private:
    std::vector<double> v_;
    double delta_;
};

/// Taming recursion: omega~_0 = omega_0, omega~_1 = omega_1,
/// omega~_{2N} = min(omega_{2N}/omega_N, delta') omega~_N.
/// Output dominates nothing: omega~ <= omega pointwise, ratios within delta'.
DyadicSequence tame(const DyadicSequence& seq, double delta_prime);

/// Slowly-varying envelope adapted to a datum: ratio bound 2^eps,
/// nondecreasing, normalized so that ||u0||_{H^s_omega} <= 2 ||u0||_{H^s}.
DyadicSequence build_from_datum(const Field& u0, double s, double eps);

} // namespace dlab
