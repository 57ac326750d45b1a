#pragma once

#include <stdexcept>
#include <string>

namespace wiener {

/// Raised when two objects that must live on the same grid do not.
class GridMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a function with (numerically) zero L2 norm is used where a
/// nonzero Gaussian-process kernel is required.
class ZeroKernelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised for unknown names in the built-in kernel family registry.
class RegistryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an identity's hypothesis (e.g. h^2 = k1*k2) fails beyond
/// tolerance. The identities are conditional; running them anyway would
/// produce false counterexamples.
class HypothesisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a mixed-parameter operation receives parameters of mixed sign.
class SignConditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Uniform grid over [0, T]. The panel count must be even because the
/// quadrature rule is composite Simpson.
class Grid {
public:
    Grid(double horizon, int n_intervals);

    double horizon() const noexcept { return horizon_; }
    int intervals() const noexcept { return n_intervals_; }
    int node_count() const noexcept { return n_intervals_ + 1; }
    double spacing() const noexcept { return spacing_; }
    double node(int i) const noexcept { return spacing_ * i; }

    friend bool operator==(const Grid& a, const Grid& b) noexcept {
        return a.horizon_ == b.horizon_ && a.n_intervals_ == b.n_intervals_;
    }
    friend bool operator!=(const Grid& a, const Grid& b) noexcept { return !(a == b); }

private:
    double horizon_;
    int n_intervals_;
    double spacing_;
};

/// Throws GridMismatchError mentioning `what` when the grids differ.
void require_same_grid(const Grid& a, const Grid& b, const std::string& what);

} // namespace wiener
