#include "wiener/grid.hpp"

#include <cmath>

namespace wiener {

Grid::Grid(double horizon, int n_intervals)
    : horizon_(horizon), n_intervals_(n_intervals), spacing_(horizon / n_intervals) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw std::invalid_argument("Grid: horizon must be a positive finite real");
    }
    if (n_intervals < 2 || n_intervals % 2 != 0) {
        throw std::invalid_argument("Grid: interval count must be a positive even integer");
    }
}

void require_same_grid(const Grid& a, const Grid& b, const std::string& what) {
    if (a != b) {
        throw GridMismatchError(what + ": operands live on different grids");
    }
}

} // namespace wiener
