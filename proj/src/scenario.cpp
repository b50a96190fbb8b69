#include "edchrom/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "edchrom/errors.hpp"

#include "strfmt.hpp"

namespace edchrom {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("scenario: " + msg); }

void reject_unknown_keys(const json& obj, const char* where,
                         std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* k) { return key == k; }) == allowed.end())
            fail(detail::cat("unknown key '", key, "' in ", where));
    }
}

const json& require(const json& obj, const char* where, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(detail::cat("missing key '", key, "' in ", where));
    return *it;
}

double number(const json& v, const char* what) {
    if (!v.is_number()) fail(detail::cat("'", what, "' must be a number"));
    return v.get<double>();
}

int integer(const json& v, const char* what) {
    if (!v.is_number_integer()) fail(detail::cat("'", what, "' must be an integer"));
    return v.get<int>();
}

std::vector<double> number_array(const json& v, const char* what) {
    if (!v.is_array() || v.empty()) fail(detail::cat("'", what, "' must be a nonempty array"));
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(number(e, what));
    return out;
}

} // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& fallback_name) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(detail::cat("not valid JSON (", e.what(), ")"));
    }
    if (!doc.is_object()) fail("top level must be an object");
    reject_unknown_keys(doc, "the top level",
                        {"name", "isotherm", "physics", "grid", "time", "injection", "scheme"});

    // [isotherm]
    const json& iso = require(doc, "the top level", "isotherm");
    reject_unknown_keys(iso, "[isotherm]", {"a", "b", "epsilon"});
    const std::vector<double> a = number_array(require(iso, "[isotherm]", "a"), "isotherm.a");
    const std::vector<double> b = number_array(require(iso, "[isotherm]", "b"), "isotherm.b");
    const double epsilon = number(require(iso, "[isotherm]", "epsilon"), "isotherm.epsilon");

    // [scheme]
    const json& sch = require(doc, "the top level", "scheme");
    reject_unknown_keys(sch, "[scheme]", {"kind", "newton_tol", "newton_max_iter"});
    const json& kind = require(sch, "[scheme]", "kind");
    if (!kind.is_string()) fail("'scheme.kind' must be a string");
    const auto scheme = scheme_from_name(kind.get<std::string>());
    if (!scheme)
        fail(detail::cat("unknown scheme.kind '", kind.get<std::string>(),
                         "' (expected one of upwind-fe, explicit-rk2, imex-rk2, ncs1, ncs2)"));

    LangmuirParams params = [&] {
        try {
            return LangmuirParams(a, b, epsilon);
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }();
    Scenario s{fallback_name, RunConfig(*scheme, std::move(params))};
    const int n = s.config.isotherm.components();

    if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) fail("'name' must be a string");
        s.name = it->get<std::string>();
    }
    if (auto it = sch.find("newton_tol"); it != sch.end()) {
        s.config.newton.tol = number(*it, "scheme.newton_tol");
        if (!(s.config.newton.tol > 0.0)) fail("'scheme.newton_tol' must be > 0");
    }
    if (auto it = sch.find("newton_max_iter"); it != sch.end()) {
        s.config.newton.max_iter = integer(*it, "scheme.newton_max_iter");
        if (s.config.newton.max_iter < 1) fail("'scheme.newton_max_iter' must be >= 1");
    }

    // [physics]
    const json& phys = require(doc, "the top level", "physics");
    reject_unknown_keys(phys, "[physics]", {"u", "Da", "Nt"});
    s.config.phys.u = number(require(phys, "[physics]", "u"), "physics.u");
    if (!(s.config.phys.u > 0.0)) fail("'physics.u' must be > 0");
    const bool has_da = phys.contains("Da"), has_nt = phys.contains("Nt");
    if (has_da == has_nt) fail("[physics] needs exactly one of 'Da' or 'Nt'");
    if (has_da) {
        s.config.phys.Da = number(phys["Da"], "physics.Da");
        if (s.config.phys.Da < 0.0) fail("'physics.Da' must be >= 0");
    } else {
        const double nt = number(phys["Nt"], "physics.Nt");
        if (!(nt > 0.0)) fail("'physics.Nt' must be > 0");
        s.config.phys.Da = s.config.phys.u / (2.0 * nt);  // unit-length column
    }

    // [grid]
    const json& grid = require(doc, "the top level", "grid");
    reject_unknown_keys(grid, "[grid]", {"m"});
    s.config.m = integer(require(grid, "[grid]", "m"), "grid.m");
    if (s.config.m < 5) fail("'grid.m' must be >= 5");

    // [time]
    const json& time = require(doc, "the top level", "time");
    reject_unknown_keys(time, "[time]", {"dt_over_dz", "t_final", "snapshots"});
    s.config.dt_over_dz = number(require(time, "[time]", "dt_over_dz"), "time.dt_over_dz");
    if (!(s.config.dt_over_dz > 0.0)) fail("'time.dt_over_dz' must be > 0");
    s.config.t_final = number(require(time, "[time]", "t_final"), "time.t_final");
    if (s.config.t_final < 0.0) fail("'time.t_final' must be >= 0");
    if (auto it = time.find("snapshots"); it != time.end()) {
        if (!it->is_array()) fail("'time.snapshots' must be an array");
        for (const auto& e : *it) {
            const double t = number(e, "time.snapshots");
            if (t < 0.0 || t > s.config.t_final)
                fail(detail::cat("snapshot time ", detail::num(t), " outside [0, t_final]"));
            s.config.snapshots.push_back(t);
        }
    }

    // [injection]
    const json& inj = require(doc, "the top level", "injection");
    reject_unknown_keys(inj, "[injection]", {"segments"});
    const json& segs = require(inj, "[injection]", "segments");
    if (!segs.is_array()) fail("'injection.segments' must be an array");
    for (const auto& e : segs) {
        if (!e.is_object()) fail("injection segment must be an object");
        reject_unknown_keys(e, "injection segment", {"t_start", "t_end", "c"});
        InjectionSegment seg;
        seg.t_start = number(require(e, "injection segment", "t_start"), "segment.t_start");
        seg.t_end = number(require(e, "injection segment", "t_end"), "segment.t_end");
        seg.c = number_array(require(e, "injection segment", "c"), "segment.c");
        if (!(seg.t_start >= 0.0)) fail("'segment.t_start' must be >= 0");
        if (!(seg.t_end > seg.t_start)) fail("'segment.t_end' must exceed t_start");
        if (static_cast<int>(seg.c.size()) != n)
            fail(detail::cat("segment feed has ", seg.c.size(), " entries for ", n, " components"));
        for (double ci : seg.c)
            if (ci < 0.0) fail("segment feed concentrations must be >= 0");
        s.config.injection.segments.push_back(std::move(seg));
    }
    auto& segments = s.config.injection.segments;
    std::sort(segments.begin(), segments.end(),
              [](const auto& x, const auto& y) { return x.t_start < y.t_start; });
    for (std::size_t i = 1; i < segments.size(); ++i)
        if (segments[i].t_start < segments[i - 1].t_end)
            fail("injection segments overlap");

    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("scenario: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), std::filesystem::path(path).stem().string());
}

std::string emit_scenario(const Scenario& s) {
    json doc;
    doc["name"] = s.name;
    doc["isotherm"] = {{"a", s.config.isotherm.a},
                       {"b", s.config.isotherm.b},
                       {"epsilon", s.config.isotherm.epsilon}};
    doc["physics"] = {{"u", s.config.phys.u}, {"Da", s.config.phys.Da}};
    doc["grid"] = {{"m", s.config.m}};
    doc["time"] = {{"dt_over_dz", s.config.dt_over_dz},
                   {"t_final", s.config.t_final},
                   {"snapshots", s.config.snapshots}};
    json segs = json::array();
    for (const auto& seg : s.config.injection.segments)
        segs.push_back({{"t_start", seg.t_start}, {"t_end", seg.t_end}, {"c", seg.c}});
    doc["injection"] = {{"segments", std::move(segs)}};
    doc["scheme"] = {{"kind", std::string(scheme_name(s.config.scheme))},
                     {"newton_tol", s.config.newton.tol},
                     {"newton_max_iter", s.config.newton.max_iter}};
    return doc.dump(2) + "\n";
}

namespace {

Scenario elution_preset(const std::string& name, SchemeKind scheme, double da, int m,
                        double ratio, double t_final, std::vector<double> snapshots) {
    Scenario s{name, RunConfig(scheme, LangmuirParams({1.0}, {1.0}, 0.5))};
    s.config.phys = {1.0, da};
    s.config.m = m;
    s.config.dt_over_dz = ratio;
    s.config.t_final = t_final;
    s.config.snapshots = std::move(snapshots);
    s.config.injection.segments = {{0.0, 0.2, {1.0}}};
    return s;
}

// Displacement runs: premixed feed on [0, 0.1], then the displacer at c_d
// indefinitely. Nt = 10000 at u = 0.2 gives Da = 1e-5.
Scenario displacement_preset(const std::string& name, double c_d, double t_final,
                             std::vector<double> snapshots) {
    Scenario s{name,
               RunConfig(SchemeKind::ImexRK2, LangmuirParams({4.0, 5.0, 6.0}, {4.0, 5.0, 1.0}, 0.5))};
    s.config.phys = {0.2, 0.2 / (2.0 * 10000.0)};
    s.config.m = 200;
    s.config.dt_over_dz = 4.0;
    s.config.t_final = t_final;
    s.config.snapshots = std::move(snapshots);
    s.config.injection.segments = {{0.0, 0.1, {1.0, 1.0, 0.0}},
                                   {0.1, 1e9, {0.0, 0.0, c_d}}};
    return s;
}

} // namespace

std::vector<std::string> preset_names() {
    return {"single_elution",      "single_elution_da5e-4", "single_elution_da5e-3",
            "displacement_exp1",   "displacement_exp2",     "displacement_exp3",
            "stability_table2"};
}

Scenario make_preset(const std::string& name) {
    if (name == "single_elution")
        return elution_preset(name, SchemeKind::ExplicitRK2, 0.0, 100, 0.9, 1.4,
                              {0.5, 1.0, 1.4});
    if (name == "single_elution_da5e-4")
        return elution_preset(name, SchemeKind::ExplicitRK2, 0.0005, 500, 0.6, 0.5, {0.5});
    if (name == "single_elution_da5e-3")
        return elution_preset(name, SchemeKind::ImexRK2, 0.005, 2000, 0.9, 0.5, {0.5});
    if (name == "stability_table2")
        return elution_preset(name, SchemeKind::ExplicitRK2, 0.0005, 500, 0.7, 0.5, {0.5});
    if (name == "displacement_exp1")
        return displacement_preset(name, 1.0, 16.0, {1.0, 4.0, 8.0, 12.0, 16.0});
    if (name == "displacement_exp2")
        return displacement_preset(name, 0.5, 24.0, {1.0, 8.0, 16.0, 24.0});
    if (name == "displacement_exp3")
        return displacement_preset(name, 0.1, 24.0, {1.0, 12.0, 24.0});
    std::string all;
    for (const auto& p : preset_names()) {
        if (!all.empty()) all += ", ";
        all += p;
    }
    throw ConfigError(detail::cat("unknown preset '", name, "' (available: ", all, ")"));
}

} // namespace edchrom
