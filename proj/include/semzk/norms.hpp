#pragma once

#include <utility>
#include <string>
#include <vector>

#include "semzk/field.hpp"
#include "semzk/integrators.hpp"

namespace semzk {

/// I1 = integral of u over the cell.
double conserved_I1(const RealField& u);
/// I2 = integral of u^2 over the cell.
double conserved_I2(const RealField& u);

/// (area * sum <|k|>^{2s} |c_k|^2)^{1/2} with the bracket <x> = 1 + |x|.
double sobolev_norm(const SpectralField& f, double s);
double sobolev_norm(const RealField& u, double s);

enum class Axis { x, y, T };

/// Nested Lebesgue norm such as L^inf_x L^2_y L^2_T. Axes are listed outermost
/// first; the last axis is integrated innermost. An exponent of 0 stands for
/// infinity in the numeric representation (see kInf).
struct MixedNormDescriptor {
    struct Term {
        Axis axis;
        double exponent;
    };
    std::vector<Term> terms;

    static constexpr double kInf = 0.0;

    /// Parses "x:inf,y:2,T:2". Throws on unknown axes, repeats or exponents
    /// outside {1,2,3,4,inf}.
    static MixedNormDescriptor parse(const std::string& text);
    std::string str() const;
    bool has_time() const;
    void validate(bool require_time) const;
};

/// Mixed norm over a uniform trajectory: periodic rectangle rule in x and y,
/// trapezoid weights in t, sampled maxima for infinite exponents.
double mixed_norm(const TrajectoryPath& path, const MixedNormDescriptor& d);
/// Time-slice version; the descriptor must name exactly the axes x and y.
double mixed_norm(const RealField& u, const MixedNormDescriptor& d);

/// One row of run diagnostics.
struct DiagnosticsRecord {
    double time = 0.0;
    double I1 = 0.0;
    double I2 = 0.0;
    /// Column name and value, in output order. H1 comes first.
    std::vector<std::pair<std::string, double>> hs;
    std::vector<std::pair<std::string, double>> mixed;

    std::vector<std::string> csv_header() const;
    std::string csv_row() const;
};

/// Diagnostics of one snapshot with H^s norms for the given indices
/// (H1 is always included).
DiagnosticsRecord make_diagnostics(double t, const RealField& u, const std::vector<double>& sobolev_indices);

/// Formats a double with round-trip precision, as used in every CSV/JSON output.
std::string format_double(double v);

}  // namespace semzk
