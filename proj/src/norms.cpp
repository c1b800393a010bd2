#include "semzk/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "semzk/error.hpp"
#include "semzk/spectral.hpp"

namespace semzk {

double conserved_I1(const RealField& u) {
    double sum = 0.0;
    for (double v : u.values()) sum += v;
    return sum * u.grid().dx() * u.grid().dy();
}

double conserved_I2(const RealField& u) { return inner_product(u, u); }

double sobolev_norm(const SpectralField& f, double s) {
    if (!(s >= 0.0)) throw Error("Sobolev index must be >= 0");
    const Grid2D& g = f.grid();
    double sum = 0.0;
    for (int i = 0; i < g.nx(); ++i) {
        const double xi = g.xi(i);
        for (int j = 0; j < g.ny(); ++j) {
            const double bracket = 1.0 + std::hypot(xi, g.mu(j));
            sum += std::pow(bracket, 2.0 * s) * std::norm(f(i, j));
        }
    }
    return std::sqrt(g.area() * sum);
}

double sobolev_norm(const RealField& u, double s) { return sobolev_norm(forward_transform(u), s); }

// ---------------------------------------------------------------------------
// Mixed norms

namespace {

const char* axis_name(Axis a) {
    switch (a) {
        case Axis::x: return "x";
        case Axis::y: return "y";
        case Axis::T: return "T";
    }
    return "?";
}

bool is_inf(double p) { return p == MixedNormDescriptor::kInf; }

/// Dense array over a subset of axes, reduced one axis at a time.
struct Tensor {
    std::vector<Axis> axes;       // storage order, outermost first
    std::vector<int> dims;
    std::vector<double> data;

    std::size_t position(Axis a) const {
        return static_cast<std::size_t>(std::find(axes.begin(), axes.end(), a) - axes.begin());
    }

    Tensor reduce(Axis a, double p, const std::vector<double>& weights) const {
        const std::size_t k = position(a);
        std::size_t outer = 1, inner = 1;
        for (std::size_t q = 0; q < k; ++q) outer *= dims[q];
        for (std::size_t q = k + 1; q < dims.size(); ++q) inner *= dims[q];
        const std::size_t n = dims[k];

        Tensor out;
        for (std::size_t q = 0; q < axes.size(); ++q) {
            if (q == k) continue;
            out.axes.push_back(axes[q]);
            out.dims.push_back(dims[q]);
        }
        out.data.assign(outer * inner, 0.0);
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t i = 0; i < inner; ++i) {
                double acc = 0.0;
                for (std::size_t m = 0; m < n; ++m) {
                    const double v = std::abs(data[(o * n + m) * inner + i]);
                    if (is_inf(p)) {
                        acc = std::max(acc, v);
                    } else {
                        acc += weights[m] * std::pow(v, p);
                    }
                }
                out.data[o * inner + i] = is_inf(p) ? acc : std::pow(acc, 1.0 / p);
            }
        }
        return out;
    }
};

double reduce_all(Tensor t, const MixedNormDescriptor& d, const std::vector<double>& wx,
                  const std::vector<double>& wy, const std::vector<double>& wt) {
    for (auto it = d.terms.rbegin(); it != d.terms.rend(); ++it) {
        const auto& w = it->axis == Axis::x ? wx : it->axis == Axis::y ? wy : wt;
        t = t.reduce(it->axis, it->exponent, w);
    }
    return t.data.at(0);
}

}  // namespace

MixedNormDescriptor MixedNormDescriptor::parse(const std::string& text) {
    MixedNormDescriptor d;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw Error("invalid norm descriptor term '" + item + "'");
        const std::string ax = item.substr(0, colon);
        const std::string ex = item.substr(colon + 1);
        Term term{};
        if (ax == "x") term.axis = Axis::x;
        else if (ax == "y") term.axis = Axis::y;
        else if (ax == "T" || ax == "t") term.axis = Axis::T;
        else throw Error("invalid norm descriptor axis '" + ax + "'");
        if (ex == "inf" || ex == "Inf" || ex == "oo") {
            term.exponent = kInf;
        } else {
            try {
                term.exponent = std::stod(ex);
            } catch (const std::exception&) {
                throw Error("invalid norm descriptor exponent '" + ex + "'");
            }
        }
        d.terms.push_back(term);
    }
    d.validate(false);
    return d;
}

std::string MixedNormDescriptor::str() const {
    std::string out;
    for (const Term& t : terms) {
        if (!out.empty()) out += ',';
        out += axis_name(t.axis);
        out += ':';
        if (is_inf(t.exponent)) {
            out += "inf";
        } else {
            out += std::to_string(static_cast<int>(t.exponent));
        }
    }
    return out;
}

bool MixedNormDescriptor::has_time() const {
    return std::any_of(terms.begin(), terms.end(), [](const Term& t) { return t.axis == Axis::T; });
}

void MixedNormDescriptor::validate(bool require_time) const {
    bool seen[3] = {false, false, false};
    for (const Term& t : terms) {
        const int k = static_cast<int>(t.axis);
        if (seen[k]) throw Error("norm descriptor repeats an axis");
        seen[k] = true;
        const double p = t.exponent;
        if (!(is_inf(p) || p == 1.0 || p == 2.0 || p == 3.0 || p == 4.0)) {
            throw Error("norm exponents must lie in {1,2,3,4,inf}");
        }
    }
    if (!seen[0] || !seen[1]) throw Error("norm descriptor must contain both x and y");
    if (require_time && !seen[2]) throw Error("space-time norm descriptor must contain T");
    if (!require_time && seen[2] && terms.size() != 3) throw Error("invalid norm descriptor");
}

double mixed_norm(const TrajectoryPath& path, const MixedNormDescriptor& d) {
    d.validate(true);
    path.require_uniform();
    const Grid2D& g = path.grid;
    const std::size_t nt = path.size();
    Tensor t;
    t.axes = {Axis::T, Axis::x, Axis::y};
    t.dims = {static_cast<int>(nt), g.nx(), g.ny()};
    t.data.reserve(nt * g.size());
    for (const RealField& f : path.fields) t.data.insert(t.data.end(), f.values().begin(), f.values().end());

    const std::vector<double> wx(g.nx(), g.dx());
    const std::vector<double> wy(g.ny(), g.dy());
    std::vector<double> wt(nt, path.spacing());
    wt.front() *= 0.5;
    wt.back() *= 0.5;
    return reduce_all(std::move(t), d, wx, wy, wt);
}

double mixed_norm(const RealField& u, const MixedNormDescriptor& d) {
    d.validate(false);
    if (d.has_time()) throw Error("time-slice norm descriptor must not contain T");
    const Grid2D& g = u.grid();
    Tensor t;
    t.axes = {Axis::x, Axis::y};
    t.dims = {g.nx(), g.ny()};
    t.data.assign(u.values().begin(), u.values().end());
    return reduce_all(std::move(t), d, std::vector<double>(g.nx(), g.dx()),
                      std::vector<double>(g.ny(), g.dy()), {});
}

// ---------------------------------------------------------------------------
// Diagnostics

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> DiagnosticsRecord::csv_header() const {
    std::vector<std::string> cols = {"time", "I1", "I2"};
    for (const auto& [k, v] : hs) cols.push_back(k);
    for (const auto& [k, v] : mixed) cols.push_back(k);
    return cols;
}

std::string DiagnosticsRecord::csv_row() const {
    std::string row = format_double(time) + "," + format_double(I1) + "," + format_double(I2);
    for (const auto& [k, v] : hs) row += "," + format_double(v);
    for (const auto& [k, v] : mixed) row += "," + format_double(v);
    return row;
}

DiagnosticsRecord make_diagnostics(double t, const RealField& u, const std::vector<double>& sobolev_indices) {
    DiagnosticsRecord r;
    r.time = t;
    r.I1 = conserved_I1(u);
    r.I2 = conserved_I2(u);
    const SpectralField u_hat = forward_transform(u);
    r.hs.emplace_back("H1", sobolev_norm(u_hat, 1.0));
    for (double s : sobolev_indices) {
        if (s == 1.0) continue;
        r.hs.emplace_back("H" + format_double(s), sobolev_norm(u_hat, s));
    }
    return r;
}

}  // namespace semzk
