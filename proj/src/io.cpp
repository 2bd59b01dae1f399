#include "esbgk/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "esbgk/errors.hpp"

#include "json.hpp"

static_assert(std::endian::native == std::endian::little,
              "state files are little-endian; big-endian hosts need byte swaps");
static_assert(sizeof(double) == 8);

namespace esbgk {

namespace {

constexpr char kMagic[8] = {'E', 'S', 'B', 'G', 'K', 'F', '0', '1'};
constexpr std::size_t kHeaderBytes = 64;

void atomic_commit(const std::string& tmp, const std::string& path) {
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw ConfigError("cannot rename " + tmp + " to " + path);
    }
}

}  // namespace

void atomic_write_text(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open " + tmp + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw ConfigError("short write to " + tmp);
    }
    atomic_commit(tmp, path);
}

void dump_state(const DistributionGrid& f, const SchemeParams& p, const std::string& path) {
    unsigned char header[kHeaderBytes] = {};
    std::size_t off = 0;
    auto put = [&](const void* src, std::size_t n) {
        std::memcpy(header + off, src, n);
        off += n;
    };
    put(kMagic, 8);
    std::uint32_t n_cells = static_cast<std::uint32_t>(f.spatial.n_cells);
    std::uint32_t j_half = static_cast<std::uint32_t>(f.velocity.j_half);
    put(&n_cells, 4);
    put(&j_half, 4);
    put(&f.velocity.dv, 8);
    put(&p.dt, 8);
    put(&p.kappa, 8);
    put(&p.nu, 8);
    put(&p.q_weight, 8);
    std::uint32_t steps = static_cast<std::uint32_t>(f.time_index);
    put(&steps, 4);

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open " + tmp + " for writing");
        out.write(reinterpret_cast<const char*>(header), kHeaderBytes);
        out.write(reinterpret_cast<const char*>(f.values.data()),
                  static_cast<std::streamsize>(f.values.size() * sizeof(double)));
        if (!out) throw ConfigError("short write to " + tmp);
    }
    atomic_commit(tmp, path);
}

DistributionGrid load_state(const std::string& path, StateHeader* header_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path);
    unsigned char header[kHeaderBytes];
    in.read(reinterpret_cast<char*>(header), kHeaderBytes);
    if (!in || std::memcmp(header, kMagic, 8) != 0)
        throw ConfigError(path + " is not a state file");

    std::size_t off = 8;
    auto get = [&](void* dst, std::size_t n) {
        std::memcpy(dst, header + off, n);
        off += n;
    };
    std::uint32_t n_cells = 0, j_half = 0, steps = 0;
    StateHeader h;
    get(&n_cells, 4);
    get(&j_half, 4);
    get(&h.dv, 8);
    get(&h.dt, 8);
    get(&h.kappa, 8);
    get(&h.nu, 8);
    get(&h.q_weight, 8);
    get(&steps, 4);
    h.n_cells = static_cast<int>(n_cells);
    h.j_half = static_cast<int>(j_half);
    h.step_count = static_cast<int>(steps);
    if (h.n_cells < 2 || h.j_half < 1 || !std::isfinite(h.dv) || h.dv <= 0.0)
        throw ConfigError(path + " has a corrupt header");

    GridPair grids = make_grids(h.n_cells, h.j_half, h.dv);
    DistributionGrid f = make_distribution(grids);
    f.time_index = h.step_count;
    in.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!in || in.gcount() != static_cast<std::streamsize>(f.values.size() * sizeof(double)))
        throw ConfigError(path + " is truncated");
    if (header_out) *header_out = h;
    return f;
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

DiagnosticsCsv::DiagnosticsCsv()
    : buf_("step,time,mass,momentum_x,momentum_y,momentum_z,energy,min_f,sup_norm_q,"
           "min_eig_tensor,gaussian_ratio,h_value,tail_mass_max\n") {}

void DiagnosticsCsv::add_row(const StepReport& rep, const LedgerRow& row, const HValue& h) {
    buf_ += std::to_string(rep.step);
    const double cols[] = {rep.time,         rep.mass,        rep.momentum[0],
                           rep.momentum[1],  rep.momentum[2], rep.energy,
                           rep.min_value,    rep.sup_norm_q,  rep.tensor_min_eig,
                           row.gaussian_ratio, h.value,       row.tail_mass_max};
    for (double c : cols) {
        buf_ += ',';
        buf_ += format_double(c);
    }
    buf_ += '\n';
}

void DiagnosticsCsv::write(const std::string& path) const { atomic_write_text(path, buf_); }

std::string convergence_csv(const ConvergenceReport& report) {
    std::string buf = "level,dt,dx,dv,error,local_order\n";
    int level = 1;
    for (const LevelResult& res : report.levels) {
        buf += std::to_string(level++);
        for (double c : {res.dt, res.dx, res.dv, res.error, res.local_order}) {
            buf += ',';
            buf += format_double(c);
        }
        buf += '\n';
    }
    return buf;
}

std::string convergence_json(const ConvergenceReport& report) {
    nlohmann::json j;
    j["coupling"] = report.coupling == LadderCoupling::DxEqualsDt ? "dx_equals_dt"
                                                                  : "fixed_dv_refine_dt";
    j["final_time"] = report.final_time;
    j["q_weight"] = report.q_weight;
    j["reference"] = {{"n_steps", report.reference.n_steps},
                      {"dt", report.reference.dt},
                      {"n_cells", report.reference.n_cells},
                      {"j_half", report.reference.j_half},
                      {"dv", report.reference.dv}};
    nlohmann::json levels = nlohmann::json::array();
    for (const LevelResult& res : report.levels) {
        nlohmann::json lv = {{"n_steps", res.n_steps}, {"dt", res.dt},
                             {"dx", res.dx},           {"dv", res.dv},
                             {"n_cells", res.n_cells}, {"error", res.error},
                             {"tail_mass", res.tail_mass}};
        if (std::isfinite(res.local_order))
            lv["local_order"] = res.local_order;
        else
            lv["local_order"] = nullptr;
        levels.push_back(lv);
    }
    j["levels"] = levels;
    if (std::isfinite(report.fitted_order))
        j["fitted_order"] = report.fitted_order;
    else
        j["fitted_order"] = nullptr;
    j["degenerate"] = report.degenerate;
    return j.dump(2) + "\n";
}

}  // namespace esbgk
