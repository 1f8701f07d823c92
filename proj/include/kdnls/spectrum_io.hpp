#pragma once

#include "kdnls/field.hpp"

#include <filesystem>

namespace kdnls {

/// Write a spectrum snapshot: CSV with columns (n, re, im) at 17 significant
/// digits, plus a JSON sidecar <csv_path>.json carrying
/// {N, convention: "exp(inx)/2pi", time}.
void write_spectrum_csv(const Field& u, const std::filesystem::path& csv_path,
                        double time);

/// Read a snapshot written by write_spectrum_csv. The sidecar supplies the
/// grid size; `time_out`, when non-null, receives the stored time.
Field read_spectrum_csv(const std::filesystem::path& csv_path,
                        double* time_out = nullptr);

} // namespace kdnls
