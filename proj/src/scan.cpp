#include "polcum/scan.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "polcum/bargmann.hpp"
#include "polcum/diagnostics.hpp"
#include "polcum/errors.hpp"
#include "polcum/fibonacci.hpp"
#include "polcum/genfun.hpp"
#include "polcum/slater.hpp"
#include "polcum/version.hpp"

namespace polcum {

namespace {

constexpr const char* kNa = "NA";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt(int v) { return std::to_string(v); }
std::string fmt(std::int64_t v) { return std::to_string(v); }

std::string fmt(const Flagged& f) { return f.valid ? fmt(f.value) : kNa; }

// One scan job produces a contiguous block of rows; jobs evaluate
// independently and blocks are concatenated in job order, so the table is
// identical for any worker count.
using Job = std::function<std::vector<std::vector<std::string>>()>;

std::vector<std::vector<std::string>> evaluate_jobs(const std::vector<Job>& jobs,
                                                    int threads,
                                                    std::size_t columns) {
  std::vector<std::vector<std::vector<std::string>>> blocks(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        blocks[i] = jobs[i]();
      } catch (const std::exception& e) {
        // a failing grid point becomes an explicit error row, never an abort
        std::vector<std::string> row(columns, kNa);
        row.back() = std::string("error: ") + e.what();
        blocks[i] = {std::move(row)};
      }
    }
  };
  const int n_workers = std::max(1, threads);
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<std::vector<std::string>> rows;
  for (auto& block : blocks)
    for (auto& row : block) rows.push_back(std::move(row));
  return rows;
}

bool parity_warning(int particles, int sites) {
  // equal parity makes the total-position distribution bimodal and the
  // unimodal-distribution diagnostics unreliable
  return particles % 2 == sites % 2;
}

int required_q_max(const std::vector<int>& mu_list) {
  int q = 1;
  for (int mu : mu_list) q = std::max(q, stencil_radius(4, mu));
  return q;
}

// ---------------------------------------------------------------------------
// subcommand row builders
// ---------------------------------------------------------------------------

struct Table {
  std::vector<std::string> header;
  std::vector<Job> jobs;
};

Table fermi_obc_table(const ScanConfig& cfg) {
  Table t;
  t.header = {"sites", "particles", "mean_x", "m2", "m4", "u4", "status"};
  for (int sites : cfg.sites_list)
    for (int particles : cfg.particles_list)
      t.jobs.push_back([sites, particles] {
        const auto spec = ModelSpec::uniform_chain(sites, Boundary::Open);
        const auto spectrum = eigensolve(build_model(spec));
        const auto m = obc_position_moments(spectrum, particles);
        const auto binder = binder_u4(m.m2, m.m4);
        std::vector<std::string> row{fmt(sites),  fmt(particles), fmt(m.mean),
                                     fmt(m.m2),   fmt(m.m4),      fmt(binder.u4),
                                     "ok"};
        return std::vector<std::vector<std::string>>{std::move(row)};
      });
  return t;
}

Table fermi_pbc_table(const ScanConfig& cfg) {
  Table t;
  t.header = {"sites",  "particles", "mode",    "mu",      "abs_z1",
              "abs_z2", "m2_fdd",    "m4_fdd",  "u4_fdd",  "c1_fdld",
              "c2_fdld", "c3_fdld",  "c4_fdld", "u4_fdld", "degenerate",
              "status"};
  const auto mu_list = cfg.mu_list;
  const auto mode = cfg.mode;
  const double log_threshold = cfg.log_threshold;
  for (int sites : cfg.sites_list)
    for (int particles : cfg.particles_list)
      t.jobs.push_back([sites, particles, mu_list, mode, log_threshold] {
        const auto spec = ModelSpec::uniform_chain(sites, Boundary::Periodic);
        const auto state =
            occupy_ground(eigensolve(build_model(spec)), particles, mode);
        const auto cs = char_seq(state, required_q_max(mu_list));
        const char* mode_name =
            mode == OccupationMode::PlaneWave ? "plane_wave" : "numeric";
        std::vector<std::vector<std::string>> rows;
        for (int mu : mu_list) {
          const auto fdd = fdd_report(cs, mu);
          const auto fdld = fdld_cumulants(cs, mu, log_threshold);
          rows.push_back({fmt(sites), fmt(particles), mode_name, fmt(mu),
                          fmt(std::abs(cs.values[1])), fmt(std::abs(cs.values[2])),
                          fmt(fdd.m2), fmt(fdd.m4), fmt(fdd.u4),
                          fmt(fdld.cumulants[0]), fmt(fdld.cumulants[1]),
                          fmt(fdld.cumulants[2]), fmt(fdld.cumulants[3]),
                          fmt(fdld.u4), state.degenerate ? "1" : "0", "ok"});
        }
        return rows;
      });
  return t;
}

Table ssh_table(const ScanConfig& cfg) {
  Table t;
  t.header = {"sites", "n_cells", "j_odd", "j_even", "delta_j", "mu",
              "abs_z1", "abs_z2", "m2",    "m4",     "u4",      "status"};
  const double j_mean = cfg.j_mean;
  const auto mu_list = cfg.mu_list;
  for (int sites : cfg.sites_list)
    for (double dj : cfg.dj_list)
      t.jobs.push_back([sites, dj, j_mean, mu_list] {
        if (sites % 2 != 0)
          throw std::invalid_argument("alternating chain needs an even site count");
        const int n_cells = sites / 2;
        const auto band = ssh_lower_band(j_mean + dj, j_mean - dj, n_cells);
        const auto cs = bloch_char_seq(band, required_q_max(mu_list));
        std::vector<std::vector<std::string>> rows;
        for (int mu : mu_list) {
          const auto report = fdd_report(cs, mu);
          rows.push_back({fmt(sites), fmt(n_cells), fmt(j_mean + dj),
                          fmt(j_mean - dj), fmt(dj), fmt(mu),
                          fmt(std::abs(cs.values[1])), fmt(std::abs(cs.values[2])),
                          fmt(report.m2), fmt(report.m4), fmt(report.u4), "ok"});
        }
        return rows;
      });
  return t;
}

Table aa_variance_table(const ScanConfig& cfg) {
  Table t;
  t.header = {"sites",      "particles",     "w",         "mu",
              "abs_z1",     "m2_fdd",        "m2_fdd_per_n", "c2_fdld",
              "c2_fdld_per_n", "rel_diff",   "parity_warning", "status"};
  const int fib_index = cfg.fib_index;
  const auto mu_list = cfg.mu_list;
  const double log_threshold = cfg.log_threshold;
  const bool want_fdd = cfg.scheme == "fdd" || cfg.scheme == "both";
  const bool want_fdld = cfg.scheme == "fdld" || cfg.scheme == "both";
  for (int particles : cfg.particles_list)
    for (double w : cfg.w_list)
      t.jobs.push_back([fib_index, particles, w, mu_list, log_threshold,
                        want_fdd, want_fdld] {
        const auto spec = ModelSpec::aubry_andre(fib_index, w);
        const auto state =
            occupy_ground(eigensolve(build_model(spec)), particles,
                          OccupationMode::Numeric);
        const auto cs = char_seq(state, required_q_max(mu_list));
        const bool warn = parity_warning(particles, spec.sites);
        std::vector<std::vector<std::string>> rows;
        for (int mu : mu_list) {
          std::string m2s = kNa, m2n = kNa, c2s = kNa, c2n = kNa, rel = kNa;
          std::string status = "ok";
          double m2 = 0.0;
          if (want_fdd) {
            m2 = fdd_moments(cs, mu).m2;
            m2s = fmt(m2);
            m2n = fmt(m2 / particles);
          }
          if (want_fdld) {
            const auto fdld = fdld_cumulants(cs, mu, log_threshold);
            const Flagged& c2 = fdld.cumulants[1];
            c2s = fmt(c2);
            if (c2.valid) {
              c2n = fmt(c2.value / particles);
              if (want_fdd && m2 != 0.0)
                rel = fmt(std::abs(c2.value - m2) / std::abs(m2));
            } else {
              status = c2.reason;
            }
          }
          rows.push_back({fmt(spec.sites), fmt(particles), fmt(w), fmt(mu),
                          fmt(std::abs(cs.values[1])), m2s, m2n, c2s, c2n, rel,
                          warn ? "1" : "0", status});
        }
        return rows;
      });
  return t;
}

Table aa_fidelity_table(const ScanConfig& cfg) {
  Table t;
  t.header = {"sites", "particles", "w", "delta", "chi", "overlap_magnitude",
              "divergent", "parity_warning", "status"};
  const int fib_index = cfg.fib_index;
  const double delta = cfg.delta;
  for (int particles : cfg.particles_list)
    for (double w : cfg.w_list)
      t.jobs.push_back([fib_index, particles, w, delta] {
        auto family = [fib_index](double strength) {
          return ModelSpec::aubry_andre(fib_index, strength);
        };
        const int sites = static_cast<int>(fibonacci(fib_index));
        const auto point = fidelity_susceptibility(family, w, delta, particles);
        std::vector<std::string> row{fmt(sites),
                                     fmt(particles),
                                     fmt(w),
                                     fmt(delta),
                                     fmt(point.chi),
                                     fmt(point.overlap_magnitude),
                                     point.divergent ? "1" : "0",
                                     parity_warning(particles, sites) ? "1" : "0",
                                     "ok"};
        return std::vector<std::vector<std::string>>{std::move(row)};
      });
  return t;
}

Table zeckendorf_table(const ScanConfig& cfg) {
  Table t;
  t.header = {"n", "sites", "term_count", "terms", "indices", "classification",
              "limit_estimate", "status"};
  for (int sites : cfg.sites_list)
    for (int particles : cfg.particles_list)
      t.jobs.push_back([sites, particles] {
        const auto report = classify_filling(particles, sites);
        std::ostringstream terms, indices;
        for (int i = 0; i < report.decomposition.term_count(); ++i) {
          if (i) {
            terms << '+';
            indices << '+';
          }
          terms << report.decomposition.values[i];
          indices << report.decomposition.indices[i];
        }
        std::vector<std::string> row{
            fmt(particles),
            fmt(sites),
            fmt(report.decomposition.term_count()),
            terms.str(),
            indices.str(),
            report.classification == FillingClass::LocalizedForAllW
                ? "localized_for_all_w"
                : "transition_near_wc2",
            fmt(report.limit_estimate),
            "ok"};
        return std::vector<std::vector<std::string>>{std::move(row)};
      });
  return t;
}

// Two-level loops in the (h_z, h_x) plane used by the `berry` subcommand:
// the unit circle around the degeneracy point, a displaced circle that
// avoids it, and an axis cycle passing straight through it.
Eigen::VectorXcd two_level_ground(double hz, double hx) {
  const double r = std::hypot(hz, hx);
  Eigen::Vector2d v;
  if (hz >= 0.0)
    v << -hx, hz + r;
  else
    v << hz - r, hx;
  v.normalize();
  return v.cast<std::complex<double>>();
}

StatePath berry_scenario_path(const std::string& scenario, int m) {
  StatePath path;
  path.closure = PathClosure::Cyclic;
  path.states.reserve(m);
  for (int j = 0; j < m; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / m;
    double hz = 0.0, hx = 0.0;
    if (scenario == "encircling") {
      hz = std::cos(theta);
      hx = std::sin(theta);
    } else if (scenario == "trivial") {
      hz = 2.5 + std::cos(theta);
      hx = std::sin(theta);
    } else if (scenario == "degenerate") {
      hz = std::cos(theta);
      hx = 0.0;
    } else {
      throw std::invalid_argument("unknown loop scenario: " + scenario);
    }
    path.states.push_back(two_level_ground(hz, hx));
  }
  return path;
}

Table berry_table(const ScanConfig& cfg) {
  Table t;
  t.header = {"scenario", "m", "abs_gamma1", "berry_phase", "status"};
  const std::string scenario = cfg.berry_scenario;
  for (int m : cfg.m_list)
    t.jobs.push_back([scenario, m]() -> std::vector<std::vector<std::string>> {
      const StatePath path = berry_scenario_path(scenario, m);
      const double abs_gamma1 = std::abs(gamma_q(path, 1));
      std::string phase = kNa, status = "ok";
      try {
        phase = fmt(discrete_berry_phase(path));
      } catch (const DegeneracyError& e) {
        status = std::string("error: ") + e.what();
      }
      return {{scenario, fmt(m), fmt(abs_gamma1), phase, status}};
    });
  return t;
}

std::string plot_script_body(const ScanConfig& cfg) {
  std::ostringstream os;
  os << "#!/usr/bin/env python3\n"
     << "# renders " << cfg.out_csv << " (generated by polcum "
     << scan_command_name(cfg.command) << ")\n"
     << "import csv\n"
     << "import matplotlib\n"
     << "matplotlib.use(\"Agg\")\n"
     << "import matplotlib.pyplot as plt\n\n"
     << "rows = []\n"
     << "with open(" << std::quoted(cfg.out_csv) << ") as fh:\n"
     << "    for row in csv.DictReader(fh):\n"
     << "        rows.append(row)\n\n"
     << "def col(name, rows=rows):\n"
     << "    return [float(r[name]) for r in rows if r[name] != \"NA\"]\n\n";
  switch (cfg.command) {
    case ScanCommand::FermiObc:
      os << "plt.plot(col(\"sites\"), col(\"u4\"), \"o-\")\n"
         << "plt.xlabel(\"L\"); plt.ylabel(\"U4\")\n";
      break;
    case ScanCommand::FermiPbc:
      os << "plt.plot(col(\"mu\"), col(\"u4_fdd\"), \"o-\")\n"
         << "plt.xlabel(\"mu\"); plt.ylabel(\"U4\")\n";
      break;
    case ScanCommand::Ssh:
      os << "sizes = sorted({r[\"sites\"] for r in rows}, key=int)\n"
         << "for L in sizes:\n"
         << "    sel = [r for r in rows if r[\"sites\"] == L]\n"
         << "    plt.plot(col(\"delta_j\", sel), col(\"u4\", sel), \"o-\", label=f\"L={L}\")\n"
         << "plt.xlabel(\"delta J\"); plt.ylabel(\"U4\"); plt.legend()\n";
      break;
    case ScanCommand::AaVariance:
      os << "ws = sorted({r[\"w\"] for r in rows}, key=float)\n"
         << "for w in ws:\n"
         << "    sel = [r for r in rows if r[\"w\"] == w]\n"
         << "    plt.plot(col(\"mu\", sel), col(\"m2_fdd_per_n\", sel), \"o-\", label=f\"FDD w={w}\")\n"
         << "    plt.plot(col(\"mu\", sel), col(\"c2_fdld_per_n\", sel), \"d--\", label=f\"FDLD w={w}\")\n"
         << "plt.xlabel(\"mu\"); plt.ylabel(\"M2/N\"); plt.legend()\n";
      break;
    case ScanCommand::AaFidelity:
      os << "ns = sorted({r[\"particles\"] for r in rows}, key=int)\n"
         << "for n in ns:\n"
         << "    sel = [r for r in rows if r[\"particles\"] == n]\n"
         << "    plt.plot(col(\"w\", sel), col(\"chi\", sel), \"o-\", label=f\"N={n}\")\n"
         << "plt.xlabel(\"W/t\"); plt.ylabel(\"chi_F\"); plt.legend()\n";
      break;
    case ScanCommand::Zeckendorf:
      os << "plt.plot(col(\"n\"), col(\"term_count\"), \"o\")\n"
         << "plt.xlabel(\"N\"); plt.ylabel(\"Zeckendorf terms\")\n";
      break;
    case ScanCommand::Berry:
      os << "plt.plot(col(\"m\"), col(\"berry_phase\"), \"o-\")\n"
         << "plt.xlabel(\"M\"); plt.ylabel(\"phase\")\n";
      break;
  }
  os << "plt.savefig(" << std::quoted(cfg.out_csv + ".png") << ", dpi=160)\n"
     << "print(\"wrote " << cfg.out_csv << ".png\")\n";
  return os.str();
}

nlohmann::json config_json(const ScanConfig& cfg) {
  nlohmann::json j;
  j["command"] = scan_command_name(cfg.command);
  j["sites_list"] = cfg.sites_list;
  j["particles_list"] = cfg.particles_list;
  j["mu_list"] = cfg.mu_list;
  j["w_list"] = cfg.w_list;
  j["dj_list"] = cfg.dj_list;
  j["j_mean"] = cfg.j_mean;
  j["fib_index"] = cfg.fib_index;
  j["delta"] = cfg.delta;
  j["log_threshold"] = cfg.log_threshold;
  j["scheme"] = cfg.scheme;
  j["mode"] = cfg.mode == OccupationMode::PlaneWave ? "plane_wave" : "numeric";
  j["berry_scenario"] = cfg.berry_scenario;
  j["m_list"] = cfg.m_list;
  j["threads"] = cfg.threads;
  j["deterministic"] = cfg.deterministic;
  j["out_csv"] = cfg.out_csv;
  return j;
}

}  // namespace

const char* scan_command_name(ScanCommand c) {
  switch (c) {
    case ScanCommand::FermiObc: return "fermi-obc";
    case ScanCommand::FermiPbc: return "fermi-pbc";
    case ScanCommand::Ssh: return "ssh";
    case ScanCommand::AaVariance: return "aa-variance";
    case ScanCommand::AaFidelity: return "aa-fidelity";
    case ScanCommand::Zeckendorf: return "zeckendorf";
    case ScanCommand::Berry: return "berry";
  }
  return "unknown";
}

void ScanConfig::validate() const {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("scan config: ") + what);
  };
  switch (command) {
    case ScanCommand::FermiObc:
      need(!sites_list.empty() && !particles_list.empty(), "need L-list and N-list");
      break;
    case ScanCommand::FermiPbc:
      need(!sites_list.empty() && !particles_list.empty(), "need L-list and N-list");
      need(!mu_list.empty(), "need mu-list");
      break;
    case ScanCommand::Ssh:
      need(!sites_list.empty(), "need L-list");
      need(!dj_list.empty(), "need delta-J grid");
      need(!mu_list.empty(), "need mu-list");
      break;
    case ScanCommand::AaVariance:
      need(!particles_list.empty(), "need N-list");
      need(!w_list.empty(), "need W grid");
      need(!mu_list.empty(), "need mu-list");
      break;
    case ScanCommand::AaFidelity:
      need(!particles_list.empty(), "need N-list");
      need(!w_list.empty(), "need W grid");
      break;
    case ScanCommand::Zeckendorf:
      need(!sites_list.empty() && !particles_list.empty(), "need L-list and N-list");
      break;
    case ScanCommand::Berry:
      need(!m_list.empty(), "need M-list");
      break;
  }
}

ScanResult run_scan(const ScanConfig& cfg) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();

  Table table;
  switch (cfg.command) {
    case ScanCommand::FermiObc: table = fermi_obc_table(cfg); break;
    case ScanCommand::FermiPbc: table = fermi_pbc_table(cfg); break;
    case ScanCommand::Ssh: table = ssh_table(cfg); break;
    case ScanCommand::AaVariance: table = aa_variance_table(cfg); break;
    case ScanCommand::AaFidelity: table = aa_fidelity_table(cfg); break;
    case ScanCommand::Zeckendorf: table = zeckendorf_table(cfg); break;
    case ScanCommand::Berry: table = berry_table(cfg); break;
  }

  ScanResult result;
  result.header = table.header;
  result.rows = evaluate_jobs(table.jobs, cfg.threads, table.header.size());

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  nlohmann::json manifest;
  manifest["tool"] = "polcum";
  manifest["version"] = kVersion;
  manifest["config"] = config_json(cfg);
  manifest["rows"] = result.rows.size();
  manifest["wall_time_s"] = wall;
  result.manifest_json = manifest.dump(2) + "\n";
  return result;
}

std::string to_csv(const ScanResult& result) {
  std::ostringstream os;
  for (std::size_t c = 0; c < result.header.size(); ++c) {
    if (c) os << ',';
    os << result.header[c];
  }
  os << '\n';
  for (const auto& row : result.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      os << row[c];
    }
    os << '\n';
  }
  return os.str();
}

void write_outputs(const ScanConfig& cfg, const ScanResult& result) {
  if (cfg.out_csv.empty())
    throw std::invalid_argument("scan config: need an output CSV path");
  {
    std::ofstream csv(cfg.out_csv, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot open " + cfg.out_csv);
    csv << to_csv(result);
  }
  const std::string manifest_path =
      cfg.out_manifest.empty() ? cfg.out_csv + ".manifest.json" : cfg.out_manifest;
  {
    std::ofstream manifest(manifest_path, std::ios::binary);
    if (!manifest) throw std::runtime_error("cannot open " + manifest_path);
    manifest << result.manifest_json;
  }
  if (!cfg.out_plot.empty()) {
    std::ofstream plot(cfg.out_plot, std::ios::binary);
    if (!plot) throw std::runtime_error("cannot open " + cfg.out_plot);
    plot << plot_script_body(cfg);
  }
}

}  // namespace polcum
