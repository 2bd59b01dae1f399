#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "esbgk/harness.hpp"
#include "esbgk/initcond.hpp"

namespace esbgk {

struct OutputConfig {
    std::string dir = "out";
    int state_cadence = 0;  // 0: final state only; k > 0: also every k steps
};

struct ConvergeConfig {
    LadderCoupling coupling = LadderCoupling::DxEqualsDt;
    std::vector<int> steps_per_level = {5, 10, 20, 40, 80};
    int n_cells_fixed = 64;
    double final_time = 0.5;
};

struct RunConfig {
    int n_cells = 64;
    int j_half = 16;
    double dv = 0.375;

    double kappa = 1.0;
    double nu = -0.4;
    double dt = 0.0;          // 0: derive in finalize_config
    double final_time = 0.0;  // 0: unconstrained
    double q_weight = 6.0;
    int n_steps = 100;

    InitialCondition ic = smooth_wave(1.0, 0.2, 1, {0.0, 0.0, 0.0}, 1.0);

    OutputConfig output;
    ConvergeConfig converge;
    int threads = 1;
    std::uint64_t seed = 0;
};

// Strict parse: unknown keys are errors, wave_k and the other counts must be
// JSON integers. Throws ConfigError. Missing keys keep the defaults above.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

// ESBGK_KAPPA, ESBGK_NU, ESBGK_DT, ESBGK_FINALTIME, ESBGK_NSTEPS, ESBGK_NCELLS,
// ESBGK_JHALF, ESBGK_DV, ESBGK_QWEIGHT, ESBGK_THREADS, ESBGK_SEED, ESBGK_OUT.
// Values that fail to parse are errors, not silently ignored.
void apply_env_overrides(RunConfig& cfg);

// Cross-field resolution: dt from final_time/n_steps or from dx when unset,
// and the dt * n_steps == final_time consistency gate when both are given.
void finalize_config(RunConfig& cfg);

// Round-trip echo of the effective configuration (written into run_meta.json).
std::string config_json(const RunConfig& cfg);

}  // namespace esbgk
