#include "semzk/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "semzk/littlewood_paley.hpp"
#include "semzk/norms.hpp"

namespace semzk {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* expected) {
    throw ConfigError("invalid value '" + value + "' for " + key + ": expected " + expected);
}

double to_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) bad_value(key, text, "a number");
    return v;
}

long long to_integer(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) bad_value(key, text, "an integer");
    return v;
}

int to_int(const std::string& key, const std::string& text) {
    const long long v = to_integer(key, text);
    if (v < -(1LL << 30) || v > (1LL << 30)) bad_value(key, text, "an integer of moderate size");
    return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "true") return true;
    if (t == "false") return false;
    bad_value(key, text, "true or false");
}

std::string to_string_value(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t.empty() || t.front() != '"') return t;
    std::string out;
    for (std::size_t k = 1; k < t.size(); ++k) {
        if (t[k] == '\\' && k + 1 < t.size()) {
            out += t[++k];
        } else if (t[k] == '"') {
            if (k + 1 != t.size()) bad_value(key, text, "a single quoted string");
            return out;
        } else {
            out += t[k];
        }
    }
    bad_value(key, text, "a closed quoted string");
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
    std::string t = trim(text);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']') bad_value(key, text, "a list such as [0, 2]");
    t = trim(t.substr(1, t.size() - 2));
    std::vector<double> out;
    if (t.empty()) return out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, item));
    return out;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string list_text(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + format_double(v[k]);
    return out + "]";
}

const char* shape_name(PerturbationShape s) {
    switch (s) {
        case PerturbationShape::none: return "none";
        case PerturbationShape::sinusoidal_y: return "sinusoidal-y";
        case PerturbationShape::gaussian: return "gaussian";
    }
    return "none";
}

PerturbationShape parse_shape(const std::string& key, const std::string& text) {
    const std::string s = to_string_value(key, text);
    if (s == "none") return PerturbationShape::none;
    if (s == "sinusoidal-y") return PerturbationShape::sinusoidal_y;
    if (s == "gaussian") return PerturbationShape::gaussian;
    bad_value(key, text, "none, sinusoidal-y or gaussian");
}

enum class Kind { real, integer, boolean, string, list };

struct Entry {
    ConfigKey key;
    Kind kind;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> text;
    std::function<nlohmann::ordered_json(const RunConfig&)> json;
};

template <class M>
Entry real_entry(const char* name, const char* help, M member) {
    return {{name, help}, Kind::real,
            [=](RunConfig& c, const std::string& v) { std::invoke(member, c) = to_double(name, v); },
            [=](const RunConfig& c) { return format_double(std::invoke(member, c)); },
            [=](const RunConfig& c) { return nlohmann::ordered_json(std::invoke(member, c)); }};
}

template <class M>
Entry int_entry(const char* name, const char* help, M member) {
    return {{name, help}, Kind::integer,
            [=](RunConfig& c, const std::string& v) { std::invoke(member, c) = to_int(name, v); },
            [=](const RunConfig& c) { return std::to_string(std::invoke(member, c)); },
            [=](const RunConfig& c) { return nlohmann::ordered_json(std::invoke(member, c)); }};
}

template <class M>
Entry bool_entry(const char* name, const char* help, M member) {
    return {{name, help}, Kind::boolean,
            [=](RunConfig& c, const std::string& v) { std::invoke(member, c) = to_bool(name, v); },
            [=](const RunConfig& c) { return std::string(std::invoke(member, c) ? "true" : "false"); },
            [=](const RunConfig& c) { return nlohmann::ordered_json(std::invoke(member, c)); }};
}

template <class M>
Entry string_entry(const char* name, const char* help, M member) {
    return {{name, help}, Kind::string,
            [=](RunConfig& c, const std::string& v) { std::invoke(member, c) = to_string_value(name, v); },
            [=](const RunConfig& c) { return quote(std::invoke(member, c)); },
            [=](const RunConfig& c) { return nlohmann::ordered_json(std::invoke(member, c)); }};
}

template <class M>
Entry list_entry(const char* name, const char* help, M member) {
    return {{name, help}, Kind::list,
            [=](RunConfig& c, const std::string& v) { std::invoke(member, c) = to_list(name, v); },
            [=](const RunConfig& c) { return list_text(std::invoke(member, c)); },
            [=](const RunConfig& c) { return nlohmann::ordered_json(std::invoke(member, c)); }};
}

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table = [] {
        std::vector<Entry> t;
        t.push_back(string_entry("equation", "zk, sem, sem_on_soliton or linear", &RunConfig::equation));
        t.push_back(int_entry("nx", "grid points in x", &RunConfig::nx));
        t.push_back(int_entry("ny", "grid points in y", &RunConfig::ny));
        t.push_back(real_entry("lx", "period in x", &RunConfig::lx));
        t.push_back(real_entry("ly", "period in y", &RunConfig::ly));
        t.push_back(real_entry("T", "run length", &RunConfig::T));
        t.push_back(real_entry("dt", "largest time step", &RunConfig::dt));
        t.push_back(real_entry("t0", "start time", &RunConfig::t0));
        t.push_back(string_entry("initial", "soliton, random, zero or snapshot", &RunConfig::initial));
        t.push_back(real_entry("omega", "soliton speed", &RunConfig::omega));
        t.push_back(real_entry("x0", "soliton crest at t = 0", &RunConfig::x0));
        t.push_back(int_entry("band", "band limit of random data and probes", &RunConfig::band));
        t.push_back(real_entry("amplitude", "H1 norm of random data", &RunConfig::amplitude));
        t.push_back(bool_entry("mean_zero", "subtract the mean of the initial data", &RunConfig::mean_zero));
        t.push_back(string_entry("restart", "snapshot to start from (initial = snapshot)", &RunConfig::restart));
        t.push_back(Entry{{"perturbation.shape", "none, sinusoidal-y or gaussian"}, Kind::string,
                          [](RunConfig& c, const std::string& v) { c.perturbation.shape = parse_shape("perturbation.shape", v); },
                          [](const RunConfig& c) { return quote(shape_name(c.perturbation.shape)); },
                          [](const RunConfig& c) { return nlohmann::ordered_json(shape_name(c.perturbation.shape)); }});
        t.push_back(real_entry("perturbation.amplitude", "peak perturbation value",
                               [](auto& c) -> auto& { return c.perturbation.amplitude; }));
        t.push_back(real_entry("perturbation.ky", "transverse wavenumber", [](auto& c) -> auto& { return c.perturbation.ky; }));
        t.push_back(real_entry("perturbation.width", "gaussian width", [](auto& c) -> auto& { return c.perturbation.width; }));
        t.push_back(int_entry("diagnostics_stride", "steps between diagnostics rows", &RunConfig::diagnostics_stride));
        t.push_back(int_entry("snapshot_stride", "steps between snapshots (0: final only)", &RunConfig::snapshot_stride));
        t.push_back(list_entry("sobolev", "extra H^s columns in diagnostics", &RunConfig::sobolev));
        t.push_back(string_entry("output", "run directory", &RunConfig::output));
        t.push_back(Entry{{"seed", "random seed"}, Kind::integer,
                          [](RunConfig& c, const std::string& v) {
                              const long long s = to_integer("seed", v);
                              if (s < 0) bad_value("seed", v, "a non-negative integer");
                              c.seed = static_cast<std::uint64_t>(s);
                          },
                          [](const RunConfig& c) { return std::to_string(c.seed); },
                          [](const RunConfig& c) { return nlohmann::ordered_json(c.seed); }});
        t.push_back(real_entry("fit.lower", "growth window start, in units of ||v(0)||", &RunConfig::fit_lower));
        t.push_back(real_entry("fit.upper", "growth window end, in units of ||phi||", &RunConfig::fit_upper));
        t.push_back(int_entry("picard.nodes", "time nodes of the Picard path", &RunConfig::picard_nodes));
        t.push_back(real_entry("picard.tol", "Picard stopping distance", &RunConfig::picard_tol));
        t.push_back(int_entry("picard.max_iter", "Picard iteration cap", &RunConfig::picard_max_iter));
        t.push_back(int_entry("picard.sweep", "T doublings after the base Picard run", &RunConfig::picard_sweep));
        t.push_back(string_entry("probe.kind", "strichartz, kato, maximal (probe-linear) or nonlinear, l4",
                                 &RunConfig::probe_kind));
        t.push_back(int_entry("probe.trials", "random trials per configuration", &RunConfig::trials));
        t.push_back(real_entry("probe.s", "Sobolev index of the nonlinear probe", &RunConfig::probe_s));
        t.push_back(real_entry("probe.delta", "delta of the nonlinear probe", &RunConfig::delta));
        t.push_back(int_entry("probe.nt", "time samples of the space-time lattice", &RunConfig::nt));
        t.push_back(int_entry("probe.time_nodes", "time nodes of linear probes", &RunConfig::time_nodes));
        t.push_back(list_entry("probe.dyadics", "dyadic scales of the bilinear scan", &RunConfig::dyadics));
        t.push_back(bool_entry("probe.refine", "repeat the probe on a refined lattice", &RunConfig::refine));
        return t;
    }();
    return table;
}

const Entry& find_entry(const std::string& key) {
    for (const Entry& e : entries()) {
        if (e.key.name == key) return e;
    }
    throw ConfigError("unknown config key '" + key + "'");
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
    static const std::vector<ConfigKey> keys = [] {
        std::vector<ConfigKey> k;
        for (const Entry& e : entries()) k.push_back(e.key);
        return k;
    }();
    return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) { find_entry(key).set(cfg, value); }

RunConfig parse_config(const std::string& text, RunConfig base) {
    std::stringstream ss(text);
    std::string line;
    std::string section;
    int number = 0;
    while (std::getline(ss, line)) {
        ++number;
        // Strip comments outside quotes.
        bool quoted = false;
        for (std::size_t k = 0; k < line.size(); ++k) {
            if (line[k] == '"' && (k == 0 || line[k - 1] != '\\')) quoted = !quoted;
            if (line[k] == '#' && !quoted) {
                line.resize(k);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']' && line.find('=') == std::string::npos) {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        if (!section.empty()) key = section + "." + key;
        try {
            apply_setting(base, key, line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(number) + ": " + e.what());
        }
    }
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str(), std::move(base));
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void RunConfig::validate() const {
    Equation::Tag tag{};
    try {
        tag = Equation::parse(equation, SolitonParams{omega, x0}).tag;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    require(nx >= 8 && nx % 2 == 0 && ny >= 8 && ny % 2 == 0, "nx and ny must be even and >= 8");
    require(nx <= 8192 && ny <= 8192, "nx and ny must not exceed 8192");
    require(lx > 0.0 && ly > 0.0, "lx and ly must be positive");
    require(T >= 0.0, "T must be non-negative");
    require(dt > 0.0, "dt must be positive");
    require(initial == "soliton" || initial == "random" || initial == "zero" || initial == "snapshot",
            "initial must be soliton, random, zero or snapshot");
    require(omega > 0.0, "omega must be positive");
    require(!(tag == Equation::Tag::sem_on_soliton && initial == "soliton"),
            "initial = soliton is the background itself under sem_on_soliton; use zero, random or snapshot");
    require(initial != "snapshot" || !restart.empty(), "initial = snapshot needs restart = <file>");
    require(band >= 1, "band must be >= 1");
    require(amplitude >= 0.0, "amplitude must be non-negative");
    require(perturbation.amplitude >= 0.0, "perturbation.amplitude must be non-negative");
    require(perturbation.width > 0.0, "perturbation.width must be positive");
    require(perturbation.ky > 0.0, "perturbation.ky must be positive");
    if (perturbation.shape == PerturbationShape::sinusoidal_y) {
        const double m = perturbation.ky * ly / (2.0 * std::numbers::pi);
        require(std::abs(m - std::round(m)) < 1e-9 && std::round(m) >= 1.0,
                "perturbation.ky must be a positive multiple of 2 pi / ly");
        require(std::round(m) < ny / 2, "perturbation.ky is not resolved by ny");
    }
    require(diagnostics_stride >= 1, "diagnostics_stride must be >= 1");
    require(snapshot_stride >= 0, "snapshot_stride must be >= 0");
    for (double s : sobolev) require(s >= 0.0, "sobolev indices must be non-negative");
    require(!output.empty(), "output must name a directory");
    require(fit_lower > 0.0 && fit_upper > 0.0, "fit bounds must be positive");
    require(picard_nodes >= 2, "picard.nodes must be >= 2");
    require(picard_tol > 0.0, "picard.tol must be positive");
    require(picard_max_iter >= 1, "picard.max_iter must be >= 1");
    require(picard_sweep >= 0 && picard_sweep <= 8, "picard.sweep must be in [0, 8]");
    require(trials >= 1, "probe.trials must be >= 1");
    require(delta > 0.0, "probe.delta must be positive");
    require(nt >= 2 && nt % 2 == 0, "probe.nt must be even and >= 2");
    require(time_nodes >= 2, "probe.time_nodes must be >= 2");
    require(!dyadics.empty(), "probe.dyadics must not be empty");
    for (double d : dyadics) {
        require(d == std::round(d) && d <= (1 << 20) && is_dyadic(static_cast<int>(d)), "probe.dyadics must be powers of two");
    }
}

Grid2D RunConfig::grid() const { return Grid2D(nx, ny, lx, ly); }

std::optional<SolitonParams> RunConfig::soliton() const { return SolitonParams{omega, x0}; }

Equation RunConfig::make_equation() const {
    try {
        return Equation::parse(equation, soliton());
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

std::string RunConfig::to_text() const {
    std::string out;
    for (const Entry& e : entries()) out += e.key.name + " = " + e.text(*this) + "\n";
    return out;
}

std::string RunConfig::to_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const Entry& e : entries()) j[e.key.name] = e.json(*this);
    return j.dump();
}

}  // namespace semzk
