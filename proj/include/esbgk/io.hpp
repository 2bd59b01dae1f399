#pragma once

#include <string>

#include "esbgk/diagnostics.hpp"
#include "esbgk/grid.hpp"
#include "esbgk/harness.hpp"
#include "esbgk/stepper.hpp"

namespace esbgk {

// Every writer stages to "<path>.tmp" and renames, so a crash mid-write never
// leaves a truncated file under the final name. Floats print with %.17g and
// round-trip exactly through the CSV.

void atomic_write_text(const std::string& path, const std::string& content);

struct StateHeader {
    int n_cells = 0;
    int j_half = 0;
    double dv = 0.0;
    double dt = 0.0;
    double kappa = 0.0;
    double nu = 0.0;
    double q_weight = 0.0;
    int step_count = 0;
};

// Fixed 64-byte little-endian header, then the values row-major: cell index
// outer, then v1, v2, v3 as laid out in memory.
void dump_state(const DistributionGrid& f, const SchemeParams& p, const std::string& path);
DistributionGrid load_state(const std::string& path, StateHeader* header_out = nullptr);

std::string format_double(double x);

class DiagnosticsCsv {
  public:
    DiagnosticsCsv();
    void add_row(const StepReport& rep, const LedgerRow& row, const HValue& h);
    const std::string& text() const { return buf_; }
    void write(const std::string& path) const;

  private:
    std::string buf_;
};

std::string convergence_csv(const ConvergenceReport& report);
std::string convergence_json(const ConvergenceReport& report);

}  // namespace esbgk
