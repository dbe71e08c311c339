#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string_view>

#include "sfch/solver.hpp"

namespace sfch {

inline constexpr std::string_view kDiagnosticsHeader =
    "iteration,epsilon,e1,e2,residual,mse_known,mse_unknown";

/// One header line, then one line per record. Absent optional values are
/// written as empty fields; reals use 17 significant digits.
void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRecord> records);
void write_diagnostics_csv(const std::filesystem::path& path,
                           std::span<const DiagnosticsRecord> records);

}  // namespace sfch
