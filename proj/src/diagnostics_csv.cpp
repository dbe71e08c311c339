#include "sfch/diagnostics_csv.hpp"

#include <fstream>
#include <iomanip>
#include <locale>

#include "sfch/error.hpp"

namespace sfch {

void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRecord> records) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  const std::locale previous = out.imbue(std::locale::classic());
  out << std::setprecision(17);
  out << kDiagnosticsHeader << '\n';
  for (const DiagnosticsRecord& r : records) {
    out << r.iteration << ',' << r.epsilon << ',';
    if (r.e1) out << *r.e1;
    out << ',' << r.e2 << ',' << r.residual << ',' << r.mse_known << ',';
    if (r.mse_unknown) out << *r.mse_unknown;
    out << '\n';
  }
  out.imbue(previous);
  out.precision(precision);
  out.flags(flags);
}

void write_diagnostics_csv(const std::filesystem::path& path,
                           std::span<const DiagnosticsRecord> records) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_diagnostics_csv(out, records);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace sfch
