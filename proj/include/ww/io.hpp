#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ww/evolution.hpp"
#include "ww/verify.hpp"

namespace ww {

using json = nlohmann::json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline ICDescriptor parse_ic(const json& j) {
    ICDescriptor d;
    const std::string kind = j.value("kind", "flat");
    if (kind == "flat") d.kind = ICDescriptor::Kind::flat;
    else if (kind == "mode") d.kind = ICDescriptor::Kind::mode;
    else if (kind == "random") d.kind = ICDescriptor::Kind::random;
    else if (kind == "crest") d.kind = ICDescriptor::Kind::crest;
    else throw ConfigError("ic.kind: unknown kind '" + kind + "'");
    d.mode_k = j.value("k", -1);
    d.eps = j.value("eps", 0.0);
    d.max_mode = j.value("max_mode", 16);
    d.amplitude = j.value("amplitude", 0.01);
    d.seed = j.value("seed", 1ull);
    d.symmetric = j.value("symmetric", false);
    d.r = j.value("r", 2.5);
    d.crest_amp = j.value("c", 1.0);
    const std::string loc = j.value("crest_location", "corner");
    if (loc == "corner") d.crest_interior = false;
    else if (loc == "interior") d.crest_interior = true;
    else throw ConfigError("ic.crest_location: expected 'corner' or 'interior'");
    d.crest_alpha = j.value("crest_alpha", 0.0);
    if (d.kind == ICDescriptor::Kind::mode && d.mode_k >= 0)
        throw ConfigError("ic.k: mode wavenumber must be negative");
    if (d.kind == ICDescriptor::Kind::crest && d.r <= 1.0)
        throw ConfigError("ic.r: crest exponent must exceed 1");
    if (d.eps < 0.0 || d.amplitude < 0.0)
        throw ConfigError("ic: amplitudes must be nonnegative");
    return d;
}

inline RunConfig parse_run_config(const json& j) {
    RunConfig c;
    c.grid_n = j.value("grid_n", 256);
    c.dt = j.value("dt", 0.0);
    c.cfl = j.value("cfl", 0.5);
    c.t_end = j.value("t_end", 1.0);
    c.filter_order = j.value("filter_order", 36);
    c.filter_strength = j.value("filter_strength", 36.841361487904734);
    c.reproject_every = j.value("reproject_every", 1);
    c.output_cadence = j.value("output_cadence", 0.1);
    c.anchor_alpha0 = j.value("anchor_alpha0", 0.0);
    c.seed = j.value("seed", 1ull);
    c.tol.holo_tol = j.value("holo_tol", 1e-8);
    c.tol.a1_tol = j.value("a1_tol", 1e-9);
    c.tol.gauge_tol = j.value("gauge_tol", 1e-8);
    if (j.contains("ic")) c.ic = parse_ic(j.at("ic"));
    if (c.grid_n < 8 || (c.grid_n & (c.grid_n - 1)) != 0)
        throw ConfigError("grid_n: must be a power of two >= 8");
    if (!(c.t_end > 0.0)) throw ConfigError("t_end: must be positive");
    if (c.dt < 0.0) throw ConfigError("dt: must be nonnegative");
    if (c.dt == 0.0 && !(c.cfl > 0.0)) throw ConfigError("cfl: must be positive in adaptive mode");
    return c;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
}

// Apply a dotted-path override "a.b.c=value" onto a json document. The value
// is parsed as a JSON literal, falling back to a plain string.
inline void apply_override(json& doc, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("override must look like key=value: " + kv);
    const std::string path = kv.substr(0, eq), raw = kv.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw;
    }
    json* cur = &doc;
    std::stringstream ss(path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    if (parts.empty()) throw ConfigError("empty override key");
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) cur = &((*cur)[parts[i]]);
    (*cur)[parts.back()] = value;
}

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace detail

inline std::string energy_csv(const std::vector<EnergyRow>& rows) {
    std::ostringstream os;
    os << "t,ea_1,ea_23,ea_4,eb_1,eb_2,eb_3,anchor,total,minA1,holo_drift\n";
    for (const auto& r : rows) {
        os << detail::fmt(r.e.t) << ',' << detail::fmt(r.e.ea_1) << ',' << detail::fmt(r.e.ea_23)
           << ',' << detail::fmt(r.e.ea_4) << ',' << detail::fmt(r.e.eb_1) << ','
           << detail::fmt(r.e.eb_2) << ',' << detail::fmt(r.e.eb_3) << ','
           << detail::fmt(r.e.anchor) << ',' << detail::fmt(r.e.total) << ','
           << detail::fmt(r.min_a1) << ',' << detail::fmt(r.holo_drift) << '\n';
    }
    return os.str();
}

inline json snapshot_to_json(const Snapshot& s) {
    json j;
    j["format_version"] = s.format_version;
    j["t"] = s.t;
    j["grid_n"] = s.grid_n;
    json w = json::array(), v = json::array();
    for (const auto& x : s.W) w.push_back({x.real(), x.imag()});
    for (const auto& x : s.Vbar) v.push_back({x.real(), x.imag()});
    j["W"] = std::move(w);
    j["Vbar"] = std::move(v);
    return j;
}

inline Snapshot snapshot_from_json(const json& j) {
    Snapshot s;
    s.format_version = j.at("format_version").get<int>();
    s.t = j.at("t").get<double>();
    s.grid_n = j.at("grid_n").get<int>();
    for (const auto& p : j.at("W")) s.W.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    for (const auto& p : j.at("Vbar"))
        s.Vbar.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    if (static_cast<int>(s.W.size()) != s.grid_n || static_cast<int>(s.Vbar.size()) != s.grid_n)
        throw ConfigError("snapshot: array lengths do not match grid_n");
    return s;
}

inline InterfaceState state_from_snapshot(const Snapshot& snap) {
    const PeriodicGrid g(snap.grid_n);
    InterfaceState s(g);
    s.t = snap.t;
    s.W.samples = snap.W;
    s.Vbar.samples = snap.Vbar;
    return s;
}

inline std::string scan_csv(const std::vector<ScanRow>& rows) {
    std::ostringstream os;
    os << "r,n,norm1,norm2,classification\n";
    for (const auto& r : rows)
        os << detail::fmt(r.r) << ',' << r.n << ',' << detail::fmt(r.norm1) << ','
           << detail::fmt(r.norm2) << ',' << r.classification << '\n';
    return os.str();
}

inline std::string verify_report_text(const VerifyReport& rep) {
    std::ostringstream os;
    os << "format_version 1\n";
    os << "suite " << rep.suite << "  trials " << rep.trials << "  seed " << rep.seed << '\n';
    for (const auto& c : rep.checks) {
        os << (c.pass ? "pass " : "FAIL ") << c.id << "  observed " << detail::fmt(c.observed);
        if (c.threshold != 0.0) os << "  bound " << detail::fmt(c.threshold);
        os << "  n " << c.n << '\n';
    }
    return os.str();
}

// Minimal line-plot SVG of the energy components vs time.
inline std::string energy_svg(const std::vector<EnergyRow>& rows) {
    const int width = 720, height = 420, margin = 50;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\">\n";
    if (rows.size() < 2) {
        os << "</svg>\n";
        return os.str();
    }
    const double t0 = rows.front().e.t, t1 = rows.back().e.t;
    double ymax = 1e-300;
    auto comps = [](const EnergyRow& r) {
        return std::vector<double>{r.e.total, r.e.ea_1 + r.e.ea_23 + r.e.ea_4,
                                   r.e.eb_1 + r.e.eb_2 + r.e.eb_3, r.e.anchor};
    };
    for (const auto& r : rows)
        for (double v : comps(r)) ymax = std::max(ymax, v);
    const char* colors[] = {"#000000", "#c02020", "#2040c0", "#208040"};
    const char* names[] = {"total", "E_a", "E_b", "anchor"};
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (int c = 0; c < 4; ++c) {
        os << "<polyline fill=\"none\" stroke=\"" << colors[c] << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& r : rows) {
            const double x = margin + (width - 2 * margin) * (r.e.t - t0) / std::max(1e-300, t1 - t0);
            const double y = height - margin - (height - 2 * margin) * comps(r)[c] / ymax;
            os << x << ',' << y << ' ';
        }
        os << "\"/>\n";
        os << "<text x=\"" << margin + 10 + 90 * c << "\" y=\"20\" fill=\"" << colors[c]
           << "\" font-size=\"13\">" << names[c] << "</text>\n";
    }
    os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
       << "\" y2=\"" << height - margin << "\" stroke=\"#888\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
       << height - margin << "\" stroke=\"#888\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
       << "\" font-size=\"13\" text-anchor=\"middle\">t</text>\n";
    os << "</svg>\n";
    return os.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

}  // namespace ww
