#include "edchrom/csv_io.hpp"

#include <cstdio>
#include <fstream>

#include "edchrom/errors.hpp"
#include "strfmt.hpp"

namespace edchrom {

namespace {

std::string g17(double v) { return detail::num(v, "%.17g"); }

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    return out;
}

} // namespace

std::string snapshot_filename(const std::string& run_name, double time) {
    return detail::cat(run_name, "_t", detail::num(time, "%g"), ".csv");
}

std::string diagnostics_filename(const std::string& run_name) {
    return run_name + "_diagnostics.csv";
}

void write_snapshot_csv(const std::string& path, const Grid& g, const Snapshot& snap) {
    std::ofstream out = open_out(path);
    const int n = snap.c.n;
    out << "z";
    for (int i = 1; i <= n; ++i) out << ",c_" << i;
    for (int i = 1; i <= n; ++i) out << ",w_" << i;
    out << "\n";
    for (int j = 0; j < g.m; ++j) {
        out << g17(g.center(j));
        for (int i = 0; i < n; ++i) out << ',' << g17(snap.c(i, j));
        for (int i = 0; i < n; ++i) out << ',' << g17(snap.w(i, j));
        out << "\n";
    }
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records, int components) {
    std::ofstream out = open_out(path);
    out << "time";
    for (int i = 1; i <= components; ++i) out << ",mass_" << i;
    out << ",oscillation_index,front_position\n";
    for (const auto& rec : records) {
        out << g17(rec.time);
        for (int i = 0; i < components; ++i) out << ',' << g17(rec.total_mass[i]);
        out << ',' << g17(rec.oscillation_index) << ',' << g17(rec.front_position) << "\n";
    }
}

} // namespace edchrom
