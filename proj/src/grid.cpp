#include "semzk/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "semzk/error.hpp"

namespace semzk {

Grid2D::Grid2D(int nx, int ny, double lx, double ly) : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
    if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0) {
        throw Error("grid sizes must be even and >= 8, got " + std::to_string(nx) + "x" +
                    std::to_string(ny));
    }
    if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
        throw Error("domain periods must be positive and finite");
    }
}

double Grid2D::xi(int i) const { return 2.0 * std::numbers::pi * mode_x(i) / lx_; }

double Grid2D::mu(int j) const { return 2.0 * std::numbers::pi * mode_y(j) / ly_; }

void require_same_grid(const Grid2D& a, const Grid2D& b, const char* what) {
    if (!(a == b)) throw Error(std::string("grid mismatch in ") + what);
}

}  // namespace semzk
