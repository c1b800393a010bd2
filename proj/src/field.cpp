#include "semzk/field.hpp"

#include <algorithm>
#include <cmath>

#include "semzk/error.hpp"

namespace semzk {

RealField::RealField(const Grid2D& grid) : grid_(grid), values_(grid.size(), 0.0) {}

RealField::RealField(const Grid2D& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw Error("field size does not match grid");
}

bool RealField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

RealField& RealField::operator+=(const RealField& other) {
    require_same_grid(grid_, other.grid_, "RealField +=");
    for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += other.values_[n];
    return *this;
}

RealField& RealField::operator-=(const RealField& other) {
    require_same_grid(grid_, other.grid_, "RealField -=");
    for (std::size_t n = 0; n < values_.size(); ++n) values_[n] -= other.values_[n];
    return *this;
}

RealField& RealField::operator*=(double a) {
    for (double& v : values_) v *= a;
    return *this;
}

RealField operator+(RealField a, const RealField& b) { return a += b; }
RealField operator-(RealField a, const RealField& b) { return a -= b; }
RealField operator*(double a, RealField b) { return b *= a; }

SpectralField::SpectralField(const Grid2D& grid) : grid_(grid), coeffs_(grid.size()) {}

SpectralField::SpectralField(const Grid2D& grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_.size()) throw Error("spectrum size does not match grid");
}

double SpectralField::hermitian_defect() const {
    double defect = 0.0;
    const int nx = grid_.nx();
    const int ny = grid_.ny();
    for (int i = 0; i < nx; ++i) {
        const int ic = (nx - i) % nx;
        for (int j = 0; j < ny; ++j) {
            const int jc = (ny - j) % ny;
            defect = std::max(defect, std::abs((*this)(i, j) - std::conj((*this)(ic, jc))));
        }
    }
    return defect;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    require_same_grid(grid_, other.grid_, "SpectralField +=");
    for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] += other.coeffs_[n];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    require_same_grid(grid_, other.grid_, "SpectralField -=");
    for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] -= other.coeffs_[n];
    return *this;
}

SpectralField& SpectralField::operator*=(Complex a) {
    for (Complex& c : coeffs_) c *= a;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(Complex a, SpectralField b) { return b *= a; }

double l2_norm(const RealField& f) { return std::sqrt(inner_product(f, f)); }

double l2_norm(const SpectralField& f) {
    double sum = 0.0;
    for (const Complex& c : f.coeffs()) sum += std::norm(c);
    return std::sqrt(f.grid().area() * sum);
}

double inner_product(const RealField& a, const RealField& b) {
    require_same_grid(a.grid(), b.grid(), "inner_product");
    double sum = 0.0;
    auto av = a.values();
    auto bv = b.values();
    for (std::size_t n = 0; n < av.size(); ++n) sum += av[n] * bv[n];
    return sum * a.grid().dx() * a.grid().dy();
}

}  // namespace semzk
