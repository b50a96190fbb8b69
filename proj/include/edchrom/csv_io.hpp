// CSV emission for snapshots and run diagnostics. Every numeric field is
// rendered with 17 significant digits (%.17g), so files round-trip doubles
// exactly and identical runs produce bit-identical output.

#ifndef EDCHROM_CSV_IO_HPP
#define EDCHROM_CSV_IO_HPP

#include <string>
#include <vector>

#include "edchrom/integrate.hpp"
#include "edchrom/model.hpp"

namespace edchrom {

// "<run>_t<time>.csv" with the time rendered compactly (%g).
std::string snapshot_filename(const std::string& run_name, double time);
std::string diagnostics_filename(const std::string& run_name);

// Header z,c_1..c_N,w_1..w_N; one row per cell, m rows.
void write_snapshot_csv(const std::string& path, const Grid& g, const Snapshot& snap);

// Header time,mass_1..mass_N,oscillation_index,front_position; one row per
// recorded snapshot.
void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records, int components);

} // namespace edchrom

#endif
