#include "orislink/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "orislink/errors.hpp"
#include "orislink/montecarlo.hpp"

namespace orislink {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double to_db(double linear) {
    return 10.0 * std::log10(linear);
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open output file '" + path.string() + "'");
    }
    out << content;
    if (!out.flush()) {
        throw Error("write failed for '" + path.string() + "'");
    }
}

// Runs body(0..n-1), spreading indices over a small pool when asked. The
// caller owns ordering: results land in caller-indexed slots, so output
// order never depends on scheduling. The first exception is rethrown.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(
        n, threads < 1 ? 1 : static_cast<std::size_t>(threads));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    break;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<double> expand_grid(const PhiGrid& g) {
    if (!(g.step_deg > 0.0)) {
        throw ConfigError("grid-phi: step must be > 0");
    }
    if (!(g.start_deg >= 0.0) || !(g.stop_deg < 90.0) ||
        !(g.start_deg <= g.stop_deg)) {
        throw ConfigError("grid-phi: need 0 <= start <= stop < 90");
    }
    std::vector<double> degs;
    // Multiples of the step rather than accumulation, so long sweeps do
    // not drift and the stop point is hit exactly when it is a multiple.
    for (int k = 0;; ++k) {
        const double d = g.start_deg + k * g.step_deg;
        if (d > g.stop_deg + g.step_deg * 1e-9) break;
        degs.push_back(d);
    }
    return degs;
}

ScenarioConfig apply_overrides(const ScenarioConfig& base,
                               const RunOptions& opt) {
    ScenarioConfig cfg = base;
    if (opt.seed) cfg.mc.seed = *opt.seed;
    if (opt.samples) {
        if (*opt.samples < 1000) {
            throw ConfigError("samples: must be >= 1000");
        }
        cfg.mc.n = *opt.samples;
    }
    if (opt.profile) cfg.profile = *opt.profile;
    if (opt.pe) cfg.pe_preset = *opt.pe;
    if (opt.vacuum) cfg.vacuum_mode = true;
    return cfg;
}

HoverStats preset_hover(PePreset preset) {
    ScenarioConfig tmp;
    tmp.pe_preset = preset;
    return hover_from(tmp);
}

// ---------------------------------------------------------------- CSV ---

struct CsvDoc {
    explicit CsvDoc(std::string header) : text(std::move(header)) {
        text += "\n";
    }
    void line(const std::string& row) {
        text += row;
        text += "\n";
    }
    std::string text;
};

void join_blocks(CsvDoc& doc, const std::vector<std::vector<std::string>>& blocks) {
    for (const auto& block : blocks) {
        for (const auto& row : block) doc.line(row);
    }
}

// ---------------------------------------------------------- experiments ---

const PhiGrid kDefaultSweep{0.0, 68.0, 1.0};
const PhiGrid kScintSweep{0.0, 80.0, 1.0};

std::string run_scintillation(const Scenario& sc, const RunOptions& opt) {
    const auto degs = expand_grid(opt.grid.value_or(kScintSweep));
    std::vector<std::vector<std::string>> blocks(degs.size());
    parallel_for(degs.size(), opt.threads, [&](std::size_t i) {
        GeometryInput geo = sc.geo;
        geo.phi_i = degs[i] * kDegToRad;
        const LinkGeometry geom = derive_geometry(geo);
        PathSegment leg1{geom.h_oris, geom.h_hap, geom.phi_i};
        const double s2 = rytov_variance(leg1, sc.atm, sc.tx.k, sc.v_rms);
        blocks[i].push_back(g17(degs[i]) + "," + g17(geom.d1) + "," +
                            g17(scintillation_index(s2)));
    });
    CsvDoc doc("phi_i_deg,d1_m,sigma_I2");
    join_blocks(doc, blocks);
    return doc.text;
}

std::string run_beamwidths(const Scenario& sc, const RunOptions& opt) {
    const auto degs = expand_grid(opt.grid.value_or(kDefaultSweep));
    const PhaseProfile lps{ProfileKind::LPS, 0.0, 0.0};
    const PhaseProfile fps{ProfileKind::FPS, 0.0, 0.0};
    std::vector<std::vector<std::string>> blocks(degs.size());
    parallel_for(degs.size(), opt.threads, [&](std::size_t i) {
        GeometryInput geo = sc.geo;
        geo.phi_i = degs[i] * kDegToRad;
        const LinkGeometry geom = derive_geometry(geo);
        const BeamAtOris boris =
            beam_at_oris(sc.tx, geom, sc.atm, sc.v_rms, sc.cfg.oris_side_m);
        const RxBeam rx_lps = rx_beam_widths(lps, boris, geom, sc.rho0);
        const RxBeam rx_fps = rx_beam_widths(fps, boris, geom, sc.rho0);
        const double a = sc.cfg.aperture_radius_m;
        blocks[i].push_back(
            g17(degs[i]) + "," + g17(geom.d1) + "," + g17(boris.T) + "," +
            g17(boris.w_d1) + "," + g17(boris.w_ix) + "," + g17(boris.w_iy) +
            "," + (boris.fits_oris ? "1" : "0") + "," + g17(rx_lps.w_rx_x) +
            "," + g17(rx_lps.w_rx_y) + "," + g17(rx_fps.w_rx_x) + "," +
            g17(rx_fps.w_rx_y) + "," + g17(to_db(deterministic_gml(rx_lps, a))) +
            "," + g17(to_db(deterministic_gml(rx_fps, a))));
    });
    CsvDoc doc(
        "phi_i_deg,d1_m,T_broadening,w_d1_m,w_ix_m,w_iy_m,fits_oris,"
        "w_rx_x_lps_m,w_rx_y_lps_m,w_rx_x_fps_m,w_rx_y_fps_m,"
        "gml_det_lps_db,gml_det_fps_db");
    join_blocks(doc, blocks);
    return doc.text;
}

std::string run_gml_fixed(const Scenario& sc, const RunOptions& opt) {
    const auto degs = expand_grid(opt.grid.value_or(kDefaultSweep));
    const std::string profile_label = profile_spec_string(sc.cfg.profile);
    const std::string preset_label = pe_preset_name(sc.cfg.pe_preset);
    std::vector<std::vector<std::string>> blocks(degs.size());
    parallel_for(degs.size(), opt.threads, [&](std::size_t i) {
        const PointResult pt =
            evaluate_point(sc, degs[i] * kDegToRad, sc.cfg.profile);
        blocks[i].push_back(g17(degs[i]) + "," + profile_label + "," +
                            preset_label + "," + g17(pt.rx.w_rx_x) + "," +
                            g17(pt.rx.w_rx_y) + "," + g17(pt.gml) + "," +
                            g17(to_db(pt.gml)));
    });
    CsvDoc doc("phi_i_deg,profile,pe_preset,w_rx_x_m,w_rx_y_m,gml_linear,gml_db");
    join_blocks(doc, blocks);
    return doc.text;
}

std::string run_skr_fixed(const Scenario& sc, const RunOptions& opt) {
    const auto degs = expand_grid(opt.grid.value_or(kDefaultSweep));
    const std::string profile_label = profile_spec_string(sc.cfg.profile);
    const std::string preset_label = pe_preset_name(sc.cfg.pe_preset);
    std::vector<std::vector<std::string>> blocks(degs.size());
    parallel_for(degs.size(), opt.threads, [&](std::size_t i) {
        const PointResult pt =
            evaluate_point(sc, degs[i] * kDegToRad, sc.cfg.profile);
        blocks[i].push_back(g17(degs[i]) + "," + profile_label + "," +
                            preset_label + "," + g17(pt.loss.tau_l) + "," +
                            g17(pt.gml) + "," + g17(pt.sigma_R_sq) + "," +
                            g17(pt.skr));
    });
    CsvDoc doc(
        "phi_i_deg,profile,pe_preset,tau_l,tau_p,sigma_R_sq,skr_bits_per_use");
    join_blocks(doc, blocks);
    return doc.text;
}

// Shared shape of the two focus maps: per angle, reuse the cached scenario
// and sweep the focal length over the default log grid.
std::string run_qps_map(const Scenario& sc, const RunOptions& opt,
                        bool rate_map) {
    const auto degs = expand_grid(opt.grid.value_or(kDefaultSweep));
    const std::vector<double> f_grid =
        default_focus_grid(derive_geometry(sc.geo).d2);
    std::vector<std::vector<std::string>> blocks(degs.size());
    parallel_for(degs.size(), opt.threads, [&](std::size_t i) {
        const FocusScenario fs = focus_scenario(sc, degs[i] * kDegToRad);
        blocks[i].reserve(f_grid.size());
        for (const double f : f_grid) {
            if (rate_map) {
                blocks[i].push_back(g17(degs[i]) + "," + g17(f) + "," +
                                    g17(focus_rate(fs, f)));
            } else {
                PhaseProfile qps{ProfileKind::QPS, f, 0.0};
                const RxBeam rx = rx_beam_widths(qps, fs.boris, fs.geom, fs.rho0);
                const double gml = average_gml(rx, fs.hover, fs.aperture_a);
                blocks[i].push_back(g17(degs[i]) + "," + g17(f) + "," +
                                    g17(gml) + "," + g17(to_db(gml)));
            }
        }
    });
    CsvDoc doc(rate_map ? "phi_i_deg,f_m,skr_bits_per_use"
                        : "phi_i_deg,f_m,gml_linear,gml_db");
    join_blocks(doc, blocks);
    return doc.text;
}

std::string run_optimize_f(const Scenario& sc, const RunOptions& opt) {
    const auto degs = expand_grid(opt.grid.value_or(kDefaultSweep));
    const std::vector<double> f_grid =
        default_focus_grid(derive_geometry(sc.geo).d2);
    std::vector<std::vector<std::string>> blocks(degs.size());
    parallel_for(degs.size(), opt.threads, [&](std::size_t i) {
        const FocusScenario fs = focus_scenario(sc, degs[i] * kDegToRad);
        const FocusResult res = optimize_focus(fs, f_grid, true);
        blocks[i].push_back(g17(degs[i]) + "," + g17(res.f_opt) + "," +
                            g17(res.skr_opt));
    });
    CsvDoc doc("phi_i_deg,f_opt_m,skr_opt_bits_per_use");
    join_blocks(doc, blocks);
    return doc.text;
}

std::string run_dump_nodes(const Scenario& sc) {
    CsvDoc doc("alpha,g,x_g,w_scaled_g");
    for (const double alpha : {0.0, -0.5}) {
        const QuadratureRule rule =
            gauss_laguerre(sc.cfg.quadrature_order, alpha);
        for (int g = 0; g < rule.order; ++g) {
            doc.line(g17(alpha) + "," + std::to_string(g + 1) + "," +
                     g17(rule.nodes[static_cast<std::size_t>(g)]) + "," +
                     g17(rule.scaled_weights[static_cast<std::size_t>(g)]));
        }
    }
    return doc.text;
}

// Fixed cross-validation battery: hover-averaged collection for each
// profile x preset x angle, fading-averaged rate for each profile x preset
// at 30 degrees, and the raw fading mean (exactly 1 by construction).
// Returns the CSV; sets `failed` when any |z| exceeds 3.
std::string run_validate_mc(const Scenario& sc, const RunOptions& opt,
                            bool& failed) {
    const long long n = sc.cfg.mc.n;
    const std::uint64_t base_seed = sc.cfg.mc.seed;
    const double a = sc.cfg.aperture_radius_m;
    const double f_qps = derive_geometry(sc.geo).d2;

    const std::vector<std::pair<std::string, PhaseProfile>> profiles = {
        {"lps", PhaseProfile{ProfileKind::LPS, 0.0, 0.0}},
        {"qps", PhaseProfile{ProfileKind::QPS, f_qps, 0.0}},
        {"fps", PhaseProfile{ProfileKind::FPS, 0.0, 0.0}},
    };
    const std::vector<PePreset> presets = {PePreset::Weak, PePreset::Moderate,
                                           PePreset::Strong};
    const std::vector<double> degs = {0.0, 30.0, 60.0};

    struct Case {
        std::string name;
        double closed = 0.0;
        std::function<McResult(std::uint64_t)> sample;
    };
    std::vector<Case> cases;

    for (const auto& [plabel, profile] : profiles) {
        for (const double deg : degs) {
            const PointResult pt = evaluate_point(sc, deg * kDegToRad, profile);
            for (const PePreset preset : presets) {
                const HoverStats hover = preset_hover(preset);
                Case c;
                c.name = "gml_" + plabel + "_" + pe_preset_name(preset) +
                         "_phi" + std::to_string(static_cast<int>(deg));
                c.closed = average_gml(pt.rx, hover, a);
                c.sample = [=, rx = pt.rx, threads = opt.threads](
                               std::uint64_t seed) {
                    return mc_average_gml(rx, hover, a, n, seed, threads);
                };
                cases.push_back(std::move(c));
            }
        }
    }

    for (const auto& [plabel, profile] : profiles) {
        const PointResult pt = evaluate_point(sc, 30.0 * kDegToRad, profile);
        for (const PePreset preset : presets) {
            const HoverStats hover = preset_hover(preset);
            ChannelBudget budget;
            budget.tau_eff = sc.cfg.tau_eff;
            budget.tau_l = pt.loss.tau_l;
            budget.tau_p = average_gml(pt.rx, hover, a);
            budget.sigma_R_sq = pt.sigma_R_sq;
            Case c;
            c.name = "plob_" + plabel + "_" +
                     std::string(pe_preset_name(preset)) + "_phi30";
            c.closed = plob_average_gl(budget, sc.rule);
            c.sample = [=, threads = opt.threads](std::uint64_t seed) {
                return mc_plob(budget, n, seed, threads);
            };
            cases.push_back(std::move(c));
        }
    }

    {
        const PointResult pt = evaluate_point(
            sc, 30.0 * kDegToRad, PhaseProfile{ProfileKind::LPS, 0.0, 0.0});
        Case c;
        c.name = "lognormal_mean_phi30";
        c.closed = 1.0;
        c.sample = [=, sigma = pt.sigma_R_sq,
                    threads = opt.threads](std::uint64_t seed) {
            return mc_lognormal_mean(sigma, n, seed, threads);
        };
        cases.push_back(std::move(c));
    }

    CsvDoc doc("case,closed_form,mc_mean,mc_stderr,z_score");
    failed = false;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        // Distinct, reproducible stream per case.
        const std::uint64_t seed =
            base_seed + 1000003ull * static_cast<std::uint64_t>(i + 1);
        const McResult mc = cases[i].sample(seed);
        double z = 0.0;
        if (mc.stderr_of_mean > 0.0) {
            z = (mc.mean - cases[i].closed) / mc.stderr_of_mean;
        } else if (mc.mean != cases[i].closed) {
            z = std::numeric_limits<double>::infinity();
        }
        if (!(std::fabs(z) <= 3.0)) failed = true;
        doc.line(cases[i].name + "," + g17(cases[i].closed) + "," +
                 g17(mc.mean) + "," + g17(mc.stderr_of_mean) + "," + g17(z));
    }
    return doc.text;
}

// ---------------------------------------------------------- plot scripts ---

// Every script resolves its CSV next to itself, needs only csv/matplotlib,
// and writes a PNG alongside. Plots are a convenience; the CSVs are the
// product.

const char* kPlotScintillation = R"PY(#!/usr/bin/env python3
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
rows = list(csv.DictReader(open(os.path.join(here, "scintillation.csv"))))
d1_km = [float(r["d1_m"]) / 1000.0 for r in rows]
s2 = [float(r["sigma_I2"]) for r in rows]

fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(d1_km, s2)
ax.axhline(1.0, color="k", linestyle="--", linewidth=0.8)
ax.set_xlabel("slant distance d1 [km]")
ax.set_ylabel("scintillation index")
ax.grid(True, alpha=0.3)
fig.tight_layout()
fig.savefig(os.path.join(here, "scintillation.png"), dpi=150)
)PY";

const char* kPlotBeamwidths = R"PY(#!/usr/bin/env python3
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
rows = list(csv.DictReader(open(os.path.join(here, "beamwidths.csv"))))
phi = [float(r["phi_i_deg"]) for r in rows]

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
for col in ("w_d1_m", "w_ix_m", "w_rx_x_lps_m", "w_rx_y_lps_m",
            "w_rx_x_fps_m", "w_rx_y_fps_m"):
    ax1.semilogy(phi, [float(r[col]) for r in rows], label=col)
ax1.set_xlabel("incidence angle [deg]")
ax1.set_ylabel("width [m]")
ax1.legend(fontsize=7)
ax1.grid(True, alpha=0.3)

for col in ("gml_det_lps_db", "gml_det_fps_db"):
    ax2.plot(phi, [float(r[col]) for r in rows], label=col)
ax2.set_xlabel("incidence angle [deg]")
ax2.set_ylabel("collection fraction [dB]")
ax2.legend(fontsize=8)
ax2.grid(True, alpha=0.3)
fig.tight_layout()
fig.savefig(os.path.join(here, "beamwidths.png"), dpi=150)
)PY";

const char* kPlotGmlFixed = R"PY(#!/usr/bin/env python3
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
rows = list(csv.DictReader(open(os.path.join(here, "gml-fixed.csv"))))
phi = [float(r["phi_i_deg"]) for r in rows]
db = [float(r["gml_db"]) for r in rows]
label = rows[0]["profile"] + ", pe=" + rows[0]["pe_preset"] if rows else ""

fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(phi, db, label=label)
ax.set_xlabel("incidence angle [deg]")
ax.set_ylabel("average collection fraction [dB]")
ax.legend()
ax.grid(True, alpha=0.3)
fig.tight_layout()
fig.savefig(os.path.join(here, "gml-fixed.png"), dpi=150)
)PY";

const char* kPlotSkrFixed = R"PY(#!/usr/bin/env python3
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
rows = list(csv.DictReader(open(os.path.join(here, "skr-fixed.csv"))))
phi = [float(r["phi_i_deg"]) for r in rows]
skr = [float(r["skr_bits_per_use"]) for r in rows]
label = rows[0]["profile"] + ", pe=" + rows[0]["pe_preset"] if rows else ""

fig, ax = plt.subplots(figsize=(6, 4))
ax.semilogy(phi, skr, label=label)
ax.set_xlabel("incidence angle [deg]")
ax.set_ylabel("key rate [bits/use]")
ax.legend()
ax.grid(True, alpha=0.3, which="both")
fig.tight_layout()
fig.savefig(os.path.join(here, "skr-fixed.png"), dpi=150)
)PY";

const char* kPlotMapTemplate = R"PY(#!/usr/bin/env python3
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

CSV = "@CSV@"
VALUE = "@VALUE@"

here = os.path.dirname(os.path.abspath(__file__))
rows = list(csv.DictReader(open(os.path.join(here, CSV))))
phis = sorted({float(r["phi_i_deg"]) for r in rows})
fs = sorted({float(r["f_m"]) for r in rows})
index = {(float(r["phi_i_deg"]), float(r["f_m"])): float(r[VALUE])
         for r in rows}
grid = [[index[(p, f)] for p in phis] for f in fs]

fig, ax = plt.subplots(figsize=(6, 4.5))
mesh = ax.pcolormesh(phis, fs, grid, shading="nearest")
ax.set_yscale("log")
ax.set_xlabel("incidence angle [deg]")
ax.set_ylabel("focal length f [m]")
fig.colorbar(mesh, ax=ax, label=VALUE)
fig.tight_layout()
fig.savefig(os.path.join(here, CSV.replace(".csv", ".png")), dpi=150)
)PY";

const char* kPlotOptimizeF = R"PY(#!/usr/bin/env python3
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
rows = list(csv.DictReader(open(os.path.join(here, "optimize-f.csv"))))
phi = [float(r["phi_i_deg"]) for r in rows]
fopt = [float(r["f_opt_m"]) for r in rows]
skr = [float(r["skr_opt_bits_per_use"]) for r in rows]

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
ax1.semilogy(phi, fopt)
ax1.set_xlabel("incidence angle [deg]")
ax1.set_ylabel("optimal focal length [m]")
ax1.grid(True, alpha=0.3, which="both")
ax2.semilogy(phi, skr)
ax2.set_xlabel("incidence angle [deg]")
ax2.set_ylabel("key rate at optimum [bits/use]")
ax2.grid(True, alpha=0.3, which="both")
fig.tight_layout()
fig.savefig(os.path.join(here, "optimize-f.png"), dpi=150)
)PY";

const char* kPlotValidateMc = R"PY(#!/usr/bin/env python3
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
rows = list(csv.DictReader(open(os.path.join(here, "validate-mc.csv"))))
names = [r["case"] for r in rows]
z = [float(r["z_score"]) for r in rows]

fig, ax = plt.subplots(figsize=(8, 0.3 * len(rows) + 1.5))
ax.barh(range(len(rows)), z)
ax.set_yticks(range(len(rows)))
ax.set_yticklabels(names, fontsize=6)
ax.axvline(-3, color="r", linestyle="--", linewidth=0.8)
ax.axvline(3, color="r", linestyle="--", linewidth=0.8)
ax.set_xlabel("z score (sampled vs closed form)")
fig.tight_layout()
fig.savefig(os.path.join(here, "validate-mc.png"), dpi=150)
)PY";

const char* kPlotDumpNodes = R"PY(#!/usr/bin/env python3
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
rows = list(csv.DictReader(open(os.path.join(here, "dump-nodes.csv"))))

fig, ax = plt.subplots(figsize=(6, 4))
for alpha in sorted({r["alpha"] for r in rows}):
    xs = [float(r["x_g"]) for r in rows if r["alpha"] == alpha]
    ws = [float(r["w_scaled_g"]) for r in rows if r["alpha"] == alpha]
    ax.loglog(xs, ws, ".", markersize=3, label="alpha=" + alpha)
ax.set_xlabel("node x_g")
ax.set_ylabel("scaled weight")
ax.legend()
ax.grid(True, alpha=0.3, which="both")
fig.tight_layout()
fig.savefig(os.path.join(here, "dump-nodes.png"), dpi=150)
)PY";

std::string map_plot_script(const std::string& csv_name,
                            const std::string& value_col) {
    std::string script = kPlotMapTemplate;
    const auto replace = [&script](const std::string& from,
                                   const std::string& to) {
        const std::size_t at = script.find(from);
        script.replace(at, from.size(), to);
    };
    replace("@CSV@", csv_name);
    replace("@VALUE@", value_col);
    return script;
}

} // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "scintillation", "beamwidths", "gml-fixed",  "gml-qps-map",
        "skr-fixed",     "skr-qps-map", "optimize-f", "validate-mc",
        "dump-nodes",
    };
    return names;
}

void run_experiment(const std::string& name, const ScenarioConfig& base_cfg,
                    const std::string& out_dir, const RunOptions& opt) {
    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw ConfigError("unknown experiment '" + name + "'");
    }

    const ScenarioConfig cfg = apply_overrides(base_cfg, opt);
    const Scenario sc = build_scenario(cfg);

    std::string csv;
    std::string plot;
    bool mc_failed = false;

    if (name == "scintillation") {
        csv = run_scintillation(sc, opt);
        plot = kPlotScintillation;
    } else if (name == "beamwidths") {
        csv = run_beamwidths(sc, opt);
        plot = kPlotBeamwidths;
    } else if (name == "gml-fixed") {
        csv = run_gml_fixed(sc, opt);
        plot = kPlotGmlFixed;
    } else if (name == "gml-qps-map") {
        csv = run_qps_map(sc, opt, false);
        plot = map_plot_script("gml-qps-map.csv", "gml_db");
    } else if (name == "skr-fixed") {
        csv = run_skr_fixed(sc, opt);
        plot = kPlotSkrFixed;
    } else if (name == "skr-qps-map") {
        csv = run_qps_map(sc, opt, true);
        plot = map_plot_script("skr-qps-map.csv", "skr_bits_per_use");
    } else if (name == "optimize-f") {
        csv = run_optimize_f(sc, opt);
        plot = kPlotOptimizeF;
    } else if (name == "validate-mc") {
        csv = run_validate_mc(sc, opt, mc_failed);
        plot = kPlotValidateMc;
    } else { // dump-nodes
        csv = run_dump_nodes(sc);
        plot = kPlotDumpNodes;
    }

    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error("cannot create output directory '" + out_dir +
                    "': " + ec.message());
    }
    write_text_file(dir / (name + ".csv"), csv);
    write_text_file(dir / (name + "_plot.py"), plot);

    // The CSV lands on disk either way; the failure is still fatal so
    // callers and scripts notice.
    if (mc_failed) {
        throw ValidationFailure(
            "validate-mc: at least one |z| exceeded 3; see " +
            (dir / "validate-mc.csv").string());
    }
}

} // namespace orislink
