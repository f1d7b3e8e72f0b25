#include "rydfibre/scan.hpp"

#include <algorithm>
#include <cstdio>
#include <atomic>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "rydfibre/error.hpp"
#include "rydfibre/models.hpp"
#include "rydfibre/propagators.hpp"
#include "rydfibre/solver.hpp"
#include "rydfibre/svg_plot.hpp"
#include "rydfibre/units.hpp"

#ifndef RYDFIBRE_VERSION_STRING
#define RYDFIBRE_VERSION_STRING "0.0.0"
#endif

namespace rydfibre {

using nlohmann::json;

namespace {

constexpr double deg = units::pi / 180.0;

std::vector<double> parse_grid(const json& j, const std::string& key) {
    if (j.is_number()) return {j.get<double>()};
    if (j.is_array()) {
        std::vector<double> v;
        for (const auto& x : j) {
            if (!x.is_number()) throw ConfigError("grid '" + key + "' must contain numbers");
            v.push_back(x.get<double>());
        }
        return v;
    }
    if (j.is_object()) {
        if (!j.contains("start") || !j.contains("stop"))
            throw ConfigError("grid '" + key + "' needs start and stop");
        const double a = j["start"].get<double>(), b = j["stop"].get<double>();
        std::vector<double> v;
        if (j.contains("num")) {
            const int n = j["num"].get<int>();
            if (n < 1) throw ConfigError("grid '" + key + "' has num < 1");
            for (int i = 0; i < n; ++i) v.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
        } else if (j.contains("step")) {
            const double s = j["step"].get<double>();
            if (!(s > 0.0)) throw ConfigError("grid '" + key + "' needs a positive step");
            const int n = static_cast<int>(std::floor((b - a) / s + 1e-9)) + 1;
            for (int i = 0; i < n; ++i) v.push_back(a + s * i);
        } else {
            throw ConfigError("grid '" + key + "' needs num or step");
        }
        return v;
    }
    throw ConfigError("grid '" + key + "' must be a number, array or {start, stop, num}");
}

AtomState parse_state(const json& j) {
    try {
        AtomState s{j.at("n").get<int>(), j.at("l").get<int>(),
                    static_cast<int>(std::lround(2.0 * j.at("j").get<double>())),
                    static_cast<int>(std::lround(2.0 * j.at("mj").get<double>()))};
        if (!s.valid()) throw ConfigError("invalid state " + s.label());
        return s;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("state needs n, l, j, mj: ") + e.what());
    }
}

json state_json(const AtomState& s) { return {{"n", s.n}, {"l", s.l}, {"j", s.j()}, {"mj", s.m()}}; }

template <class T>
void read(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j[key].get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

}  // namespace

ScanConfig ScanConfig::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text, nullptr, true, true);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    ScanConfig c;
    read(j, "scenario", c.scenario);

    if (j.contains("initial")) {
        const auto& in = j["initial"];
        if (in.contains("a")) {
            c.initial_a = parse_state(in["a"]);
            c.initial_b = in.contains("b") ? parse_state(in["b"]) : c.initial_a;
        } else {
            c.initial_a = c.initial_b = parse_state(in);
        }
        if (in.contains("manifold")) {
            const auto m = in["manifold"].get<std::string>();
            if (m == "single") c.manifold = ManifoldMode::single;
            else if (m == "all_mj") c.manifold = ManifoldMode::all_mj;
            else throw ConfigError("manifold must be single or all_mj");
        }
    }
    if (j.contains("medium")) {
        const auto& m = j["medium"];
        if (m.contains("kind")) c.medium.kind = medium_kind_from_string(m["kind"].get<std::string>());
        read(m, "epsilon", c.medium.epsilon);
    }
    if (j.contains("geometry")) {
        const auto& g = j["geometry"];
        if (g.contains("a_nm")) c.a_nm = parse_grid(g["a_nm"], "a_nm");
        if (g.contains("r_a_nm")) c.r_a_nm = parse_grid(g["r_a_nm"], "r_a_nm");
        if (g.contains("r_b_nm")) c.r_b_nm = parse_grid(g["r_b_nm"], "r_b_nm");
        if (g.contains("dphi_deg")) c.dphi_deg = parse_grid(g["dphi_deg"], "dphi_deg");
        if (g.contains("dz_nm")) c.dz_nm = parse_grid(g["dz_nm"], "dz_nm");
        if (g.contains("theta_deg")) c.theta_deg = parse_grid(g["theta_deg"], "theta_deg");
        if (g.contains("phi_deg")) c.phi_deg = parse_grid(g["phi_deg"], "phi_deg");
    }
    if (j.contains("solver")) {
        const auto& s = j["solver"];
        read(s, "mode", c.mode);
        read(s, "quasi_resonance_floor_ghz", c.quasi_resonance_floor_ghz);
        read(s, "max_basis", c.max_basis);
        read(s, "c6_reference_um", c.c6_reference_um);
    }
    if (j.contains("basis")) {
        const auto& b = j["basis"];
        read(b, "dn", c.dn);
        read(b, "l_max", c.l_max);
        read(b, "energy_cutoff_ghz", c.energy_cutoff_ghz);
        c.diag_energy_cutoff_ghz = c.energy_cutoff_ghz;
        read(b, "diag_energy_cutoff_ghz", c.diag_energy_cutoff_ghz);
        read(b, "quadrupole", c.quadrupole);
    }
    if (j.contains("quadrature")) {
        const auto& q = j["quadrature"];
        read(q, "m_max", c.quadrature.m_max);
        read(q, "rel_tol", c.quadrature.rel_tol);
        read(q, "k_max_scale", c.quadrature.k_max_scale);
        read(q, "max_panels", c.quadrature.max_panels);
    }
    read(j, "n_values", c.n_values);
    if (j.contains("forster")) {
        read(j["forster"], "n_min", c.forster_n_min);
        read(j["forster"], "n_max", c.forster_n_max);
    }
    if (j.contains("output")) {
        const auto& o = j["output"];
        if (o.contains("dir")) c.out_dir = o["dir"].get<std::string>();
        read(o, "plots", c.plots);
    }
    read(j, "threads", c.threads);
    read(j, "defects", c.defects_path);
    return c;
}

ScanConfig ScanConfig::load(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return from_json(ss.str());
}

std::string ScanConfig::to_json() const {
    json j;
    j["scenario"] = scenario;
    j["initial"] = {{"a", state_json(initial_a)},
                    {"b", state_json(initial_b)},
                    {"manifold", manifold == ManifoldMode::single ? "single" : "all_mj"}};
    j["medium"] = {{"kind", to_string(medium.kind)}, {"epsilon", medium.epsilon}};
    j["geometry"] = {{"a_nm", a_nm},         {"r_a_nm", r_a_nm},         {"r_b_nm", r_b_nm},
                     {"dphi_deg", dphi_deg}, {"dz_nm", dz_nm},           {"theta_deg", theta_deg},
                     {"phi_deg", phi_deg}};
    j["solver"] = {{"mode", mode},
                   {"quasi_resonance_floor_ghz", quasi_resonance_floor_ghz},
                   {"max_basis", max_basis},
                   {"c6_reference_um", c6_reference_um}};
    j["basis"] = {{"dn", dn},
                  {"l_max", l_max},
                  {"energy_cutoff_ghz", energy_cutoff_ghz},
                  {"diag_energy_cutoff_ghz", diag_energy_cutoff_ghz},
                  {"quadrupole", quadrupole}};
    j["quadrature"] = {{"m_max", quadrature.m_max},
                       {"rel_tol", quadrature.rel_tol},
                       {"k_max_scale", quadrature.k_max_scale},
                       {"max_panels", quadrature.max_panels}};
    j["n_values"] = n_values;
    j["forster"] = {{"n_min", forster_n_min}, {"n_max", forster_n_max}};
    j["output"] = {{"dir", out_dir.string()}, {"plots", plots}};
    j["threads"] = threads;
    j["defects"] = defects_path;
    return j.dump();
}

void ScanConfig::validate() const {
    if (std::find_if(std::begin(scenario_names), std::end(scenario_names),
                     [&](const char* s) { return scenario == s; }) == std::end(scenario_names))
        throw ConfigError("unknown scenario '" + scenario + "'");
    if (mode != "pt2" && mode != "diag" && mode != "both")
        throw ConfigError("solver mode must be pt2, diag or both");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    if (medium.kind != MediumKind::vacuum && !(medium.epsilon > 1.0))
        throw ConfigError("epsilon must exceed 1");
    if (!initial_a.valid() || !initial_b.valid()) throw ConfigError("invalid initial state");
    if (dn < 0 || l_max < 0) throw ConfigError("basis window must be nonnegative");
    if (!(energy_cutoff_ghz > 0.0) || !(diag_energy_cutoff_ghz > 0.0))
        throw ConfigError("energy cutoffs must be positive");
    if (quadrature.m_max < 4 || !(quadrature.rel_tol > 0.0) || !(quadrature.k_max_scale > 0.0))
        throw ConfigError("invalid quadrature parameters");

    if (scenario == "forster") {
        if (forster_n_min < 3 || forster_n_max < forster_n_min)
            throw ConfigError("forster needs 3 <= n_min <= n_max");
        return;
    }
    auto need = [](const std::vector<double>& v, const char* name) {
        if (v.empty()) throw ConfigError(std::string("grid '") + name + "' is empty");
        for (double x : v)
            if (!std::isfinite(x)) throw ConfigError(std::string("grid '") + name + "' has non-finite values");
    };
    need(dz_nm, "dz_nm");
    for (double z : dz_nm)
        if (!(z > 0.0)) throw ConfigError("dz_nm values must be positive");
    if (scenario == "c6-table") {
        if (n_values.empty()) throw ConfigError("n_values is empty");
        if (dz_nm.size() < 4) throw ConfigError("c6-table needs at least 4 dz_nm samples");
        return;
    }
    need(a_nm, "a_nm");
    need(r_a_nm, "r_a_nm");
    if (!r_b_nm.empty()) need(r_b_nm, "r_b_nm");
    need(dphi_deg, "dphi_deg");
    need(theta_deg, "theta_deg");
    need(phi_deg, "phi_deg");
}

std::vector<std::string> scenario_columns(const std::string& s) {
    const std::vector<std::string> geo = {"a_nm",      "r_a_nm",    "r_b_nm",  "dphi_deg",
                                          "theta_deg", "phi_deg",   "dz_um",   "r_ab_um"};
    auto with = [&](std::vector<std::string> extra) {
        auto v = geo;
        v.insert(v.end(), extra.begin(), extra.end());
        return v;
    };
    if (s == "c6-table")
        return {"n",           "c6_pt2_ghz_um6", "c6_pt2_u_plus_convention", "c6_diag_ghz_um6",
                "r_vdw_um",    "fit_residual",   "fit_points",               "dropped_points",
                "basis_size",  "diag_basis_size"};
    if (s == "scan-z" || s == "scan-phi")
        return with({"t1_xx", "t1_yy", "t1_zz", "t1_xz", "t1_zx", "u_pt2_ghz", "u0_pt2_ghz",
                     "u_vacfib_ghz", "u_fibfib_ghz", "ratio_pt2", "u_diag_ghz", "u0_diag_ghz",
                     "ratio_diag", "pipi_model", "imag_residue"});
    if (s == "scan-axis")
        return with({"sigma_model", "sigma_model_vacuum", "delta_t", "t_m", "eta1", "eta2", "a1",
                     "a2", "theta_min_deg", "eta1_in_range"});
    if (s == "forster")
        return {"n", "delta1_ghz", "delta2_ghz", "delta1_over_delta2", "delta2_sign_change"};
    if (s == "channels")
        return with({"u_total_ghz", "u0_ghz", "pi_pi_ghz", "pi_sigma_ghz", "sigma_sigma_same_ghz",
                     "sigma_sigma_opposite_ghz", "vacuum_allowed_ghz", "fibre_enabled_ghz",
                     "vacuum_allowed_ratio", "fibre_enabled_ratio", "top_pair_index", "top_pair_ghz"});
    if (s == "quad")
        return with({"u_with_quad_ghz", "u_dipole_only_ghz", "u_quad_ghz", "quad_fraction"});
    throw ConfigError("unknown scenario '" + s + "'");
}

std::string columns_help() {
    std::ostringstream o;
    o << "CSV layout: index,status,<columns>,model,error\n";
    for (const char* s : scenario_names) {
        o << "  " << s << ":";
        for (const auto& c : scenario_columns(s)) o << ' ' << c;
        o << '\n';
    }
    return o.str();
}

namespace {

struct GridPoint {
    PairGeometry geometry;
};

std::vector<GridPoint> geometry_grid(const ScanConfig& c) {
    std::vector<GridPoint> pts;
    const auto& rbs = c.r_b_nm;
    for (double a : c.a_nm)
        for (double ra : c.r_a_nm)
            for (std::size_t ib = 0; ib < std::max<std::size_t>(1, rbs.size()); ++ib)
                for (double dphi : c.dphi_deg)
                    for (double th : c.theta_deg)
                        for (double ph : c.phi_deg)
                            for (double dz : c.dz_nm) {
                                PairGeometry g;
                                g.a = a;
                                g.r_a = ra;
                                g.r_b = rbs.empty() ? ra : rbs[ib];
                                g.dphi = dphi * deg;
                                g.dz = dz;
                                g.axis = {th * deg, ph * deg};
                                pts.push_back({g});
                            }
    return pts;
}

void put_geometry(Record& r, const PairGeometry& g) {
    r.values["a_nm"] = g.a;
    r.values["r_a_nm"] = g.r_a;
    r.values["r_b_nm"] = g.r_b;
    r.values["dphi_deg"] = g.dphi / deg;
    r.values["theta_deg"] = g.axis.theta / deg;
    r.values["phi_deg"] = g.axis.phi / deg;
    r.values["dz_um"] = g.dz / units::nm_per_um;
    r.values["r_ab_um"] = g.r_ab() / units::nm_per_um;
}

void fail(Record& r, const std::string& what) {
    r.status = "error";
    if (!r.error.empty()) r.error += "; ";
    r.error += what;
}

template <class F>
void guarded(Record& r, F&& f) {
    try {
        f();
    } catch (const QuasiResonanceError& e) {
        char buf[64];
        std::snprintf(buf, sizeof buf, " (delta = %.4g GHz)", e.detuning_ghz());
        fail(r, std::string("quasi-resonance: ") + e.what() + buf);
    } catch (const TrackingError& e) {
        fail(r, std::string("tracking: ") + e.what());
    } catch (const QuadratureError& e) {
        fail(r, std::string("quadrature: ") + e.what());
    } catch (const std::exception& e) {
        fail(r, e.what());
    }
}

struct Context {
    const ScanConfig& cfg;
    const AtomModel& atom;
    Pt2Options pt2_opts;
    AssemblyOptions asm_opts;
    PairBasis basis;       // PT2 basis
    PairBasis diag_basis;  // basis for dense diagonalization
    bool has_basis = false;
};

double diag_shift(const Context& c, const PairBasis& b, const PairGeometry& g, const Medium& m,
                  const ChannelFilter& f) {
    return diagonalize_track(assemble(c.atom, b, g, m, f, c.asm_opts), b.manifold_size).shift_ghz;
}

ChannelFilter scan_filter(const ScanConfig& c) {
    return c.quadrupole ? ChannelFilter::with_quadrupole() : ChannelFilter::dipole_only();
}

void eval_scan(const Context& c, const PairGeometry& g, Record& r) {
    put_geometry(r, g);
    const Medium vac{MediumKind::vacuum, c.cfg.medium.epsilon};
    const auto filter = scan_filter(c.cfg);
    guarded(r, [&] {
        g.validate(c.cfg.medium);
        const auto g1 = reflected_green(g, c.cfg.medium, c.cfg.quadrature, filter.green_order());
        const Mat3 t1m = -g1.d11;
        r.values["t1_xx"] = t1m(0, 0);
        r.values["t1_yy"] = t1m(1, 1);
        r.values["t1_zz"] = t1m(2, 2);
        r.values["t1_xz"] = t1m(0, 2);
        r.values["t1_zx"] = t1m(2, 0);
        r.values["imag_residue"] = g1.imag_residue;
        if (g.lateral()) r.values["pipi_model"] = pipi_ratio(g.dz, t1m(2, 2));
        if (c.cfg.wants_pt2()) {
            guarded(r, [&] {
                const auto g0 = vacuum_green(g.pos_a(), g.pos_b(), filter.green_order());
                const auto b = pt2(c.atom, c.basis, g0, g1, g.axis, filter, c.pt2_opts);
                r.values["u_pt2_ghz"] = b.u_with_first();
                r.values["u0_pt2_ghz"] = b.u0;
                r.values["u_vacfib_ghz"] = b.u_vacfib;
                r.values["u_fibfib_ghz"] = b.u_fibfib;
                r.values["ratio_pt2"] = b.u_total / b.u0;
            });
        }
        if (c.cfg.wants_diag()) {
            guarded(r, [&] {
                const double u = diag_shift(c, c.diag_basis, g, c.cfg.medium, filter);
                const double u0 = diag_shift(c, c.diag_basis, g, vac, filter);
                r.values["u_diag_ghz"] = u;
                r.values["u0_diag_ghz"] = u0;
                r.values["ratio_diag"] = u / u0;
            });
        }
    });
}

void eval_axis(const Context& c, const PairGeometry& g, Record& r) {
    put_geometry(r, g);
    r.model = "sigma-plus";
    guarded(r, [&] {
        if (!g.lateral()) throw GeometryError("scan-axis needs the lateral configuration");
        const Mat3 t1m = t1(g, c.cfg.medium, c.cfg.quadrature);
        r.values["sigma_model"] = sigma_model(g.axis.theta, g.axis.phi, g.dz, t1m);
        r.values["sigma_model_vacuum"] = sigma_model(g.axis.theta, g.axis.phi, g.dz, Mat3::Zero());
        const auto e = eta_from_t1(g.dz, t1m);
        r.values["delta_t"] = e.delta_t;
        r.values["t_m"] = e.t_m;
        r.values["eta1"] = e.eta1;
        r.values["eta2"] = e.eta2;
        r.values["a1"] = e.a1;
        r.values["a2"] = e.a2;
        r.values["theta_min_deg"] = e.theta_min / deg;
        r.values["eta1_in_range"] = e.in_range ? 1.0 : 0.0;
    });
}

void eval_channels(const Context& c, const PairGeometry& g, Record& r) {
    put_geometry(r, g);
    guarded(r, [&] {
        const auto rep = channel_contributions(c.atom, c.basis, g, c.cfg.medium, c.pt2_opts);
        const auto& ch = rep.breakdown.channels;
        r.values["u_total_ghz"] = rep.breakdown.u_total;
        r.values["u0_ghz"] = rep.breakdown.u0;
        r.values["pi_pi_ghz"] = ch.at("pi-pi");
        r.values["pi_sigma_ghz"] = ch.at("pi-sigma");
        r.values["sigma_sigma_same_ghz"] = ch.at("sigma-sigma-same");
        r.values["sigma_sigma_opposite_ghz"] = ch.at("sigma-sigma-opposite");
        r.values["vacuum_allowed_ghz"] = rep.vacuum_allowed;
        r.values["fibre_enabled_ghz"] = rep.fibre_enabled;
        r.values["vacuum_allowed_ratio"] = rep.vacuum_allowed_ratio;
        r.values["fibre_enabled_ratio"] = rep.fibre_enabled_ratio;
        if (!rep.breakdown.top.empty()) {
            r.values["top_pair_index"] = static_cast<double>(rep.breakdown.top.front().index);
            r.values["top_pair_ghz"] = rep.breakdown.top.front().u_ghz;
        }
    });
}

void eval_quad(const Context& c, const PairGeometry& g, Record& r) {
    put_geometry(r, g);
    guarded(r, [&] {
        const bool diag = c.cfg.mode == "diag";
        const auto q = quad_contribution(c.atom, diag ? c.diag_basis : c.basis, g, c.cfg.medium,
                                         diag ? SolverMode::diag : SolverMode::pt2, c.pt2_opts,
                                         c.asm_opts);
        r.values["u_with_quad_ghz"] = q.u_with;
        r.values["u_dipole_only_ghz"] = q.u_without;
        r.values["u_quad_ghz"] = q.u_quad;
        r.values["quad_fraction"] = q.u_with != 0.0 ? q.u_quad / q.u_with : 0.0;
    });
}

void eval_c6(const Context& c, int n, Record& r) {
    r.values["n"] = n;
    guarded(r, [&] {
        const AtomState a{n, c.cfg.initial_a.l, c.cfg.initial_a.two_j, c.cfg.initial_a.two_m};
        const AtomState b{n, c.cfg.initial_b.l, c.cfg.initial_b.two_j, c.cfg.initial_b.two_m};
        const Medium vac{MediumKind::vacuum, c.cfg.medium.epsilon};
        const auto filter = scan_filter(c.cfg);
        const auto win = BasisWindow::around(n, c.cfg.dn, c.cfg.l_max, c.cfg.energy_cutoff_ghz);
        const auto basis = build_basis(c.atom, a, b, win, c.cfg.quadrupole, c.cfg.manifold);
        r.values["basis_size"] = static_cast<double>(basis.size());

        const double rr = c.cfg.c6_reference_um * units::nm_per_um;
        const auto g = PairGeometry::lateral(0.0, 1.0, rr, {});
        guarded(r, [&] {
            const auto bd = pt2(c.atom, basis, g, vac, filter, c.pt2_opts);
            const double r6 = std::pow(c.cfg.c6_reference_um, 6);
            r.values["c6_pt2_ghz_um6"] = -bd.u_total * r6;
            r.values["c6_pt2_u_plus_convention"] = bd.u_total * r6;
        });
        if (!c.cfg.wants_diag()) return;
        const auto dwin = BasisWindow::around(n, c.cfg.dn, c.cfg.l_max, c.cfg.diag_energy_cutoff_ghz);
        const auto dbasis = build_basis(c.atom, a, b, dwin, c.cfg.quadrupole, c.cfg.manifold);
        r.values["diag_basis_size"] = static_cast<double>(dbasis.size());
        std::vector<std::pair<double, double>> samples;
        // Strong mixing at short range can make tracking ambiguous; such
        // points lie below the asymptotic window, so everything up to the
        // last failure is dropped rather than failing the fit.
        std::size_t dropped = 0;
        for (double dz : c.cfg.dz_nm) {
            const auto gz = PairGeometry::lateral(0.0, 1.0, dz, {});
            try {
                samples.emplace_back(dz / units::nm_per_um, diag_shift(c, dbasis, gz, vac, filter));
            } catch (const TrackingError&) {
                dropped += samples.size() + 1;
                samples.clear();
            }
        }
        r.values["dropped_points"] = static_cast<double>(dropped);
        const auto fit = fit_c6(samples);
        r.values["c6_diag_ghz_um6"] = fit.c6;
        r.values["r_vdw_um"] = fit.r_vdw;
        r.values["fit_residual"] = fit.residual;
        r.values["fit_points"] = static_cast<double>(fit.window_size);
    });
}

template <class F>
void parallel_for(std::size_t n, int threads, F&& f) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) f(i);
    };
    const int t = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    std::vector<std::thread> pool;
    for (int i = 1; i < t; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

}  // namespace

ResultSet run(const ScanConfig& cfg) {
    cfg.validate();
    QuantumDefectTable table = cfg.defects_path.empty() ? QuantumDefectTable::bundled()
                                                        : QuantumDefectTable::load(cfg.defects_path);
    const AtomModel atom(table);

    ResultSet rs;
    rs.scenario = cfg.scenario;
    rs.columns = scenario_columns(cfg.scenario);
    rs.config_json = cfg.to_json();
    rs.provenance = {RYDFIBRE_VERSION_STRING, utc_timestamp(),
                     cfg.defects_path.empty() ? QuantumDefectTable::bundled_path().string()
                                              : cfg.defects_path,
                     table.content_hash()};

    Context ctx{cfg, atom, {}, {}, {}, {}, false};
    ctx.pt2_opts.quasi_resonance_floor_ghz = cfg.quasi_resonance_floor_ghz;
    ctx.pt2_opts.quadrature = cfg.quadrature;
    ctx.asm_opts.max_basis = cfg.max_basis;
    ctx.asm_opts.quadrature = cfg.quadrature;

    if (cfg.scenario == "forster") {
        for (const auto& p : forster_scan(table, cfg.forster_n_min, cfg.forster_n_max)) {
            Record r;
            r.index = rs.records.size();
            r.model = "forster";
            r.values = {{"n", p.n},
                        {"delta1_ghz", p.delta1_ghz},
                        {"delta2_ghz", p.delta2_ghz},
                        {"delta1_over_delta2", p.ratio},
                        {"delta2_sign_change", p.delta2_sign_change ? 1.0 : 0.0}};
            rs.records.push_back(std::move(r));
        }
        return rs;
    }

    if (cfg.scenario == "c6-table") {
        rs.records.resize(cfg.n_values.size());
        parallel_for(cfg.n_values.size(), cfg.threads, [&](std::size_t i) {
            rs.records[i].index = i;
            eval_c6(ctx, cfg.n_values[i], rs.records[i]);
        });
        return rs;
    }

    if (cfg.scenario != "scan-axis") {
        const bool quad = cfg.quadrupole || cfg.scenario == "quad";
        const auto n = cfg.initial_a.n;
        ctx.basis = build_basis(atom, cfg.initial_a, cfg.initial_b,
                                BasisWindow::around(n, cfg.dn, cfg.l_max, cfg.energy_cutoff_ghz), quad,
                                cfg.manifold);
        ctx.diag_basis = build_basis(atom, cfg.initial_a, cfg.initial_b,
                                     BasisWindow::around(n, cfg.dn, cfg.l_max, cfg.diag_energy_cutoff_ghz),
                                     quad, cfg.manifold);
        if (cfg.wants_diag() && ctx.diag_basis.size() > cfg.max_basis)
            throw ConfigError("diagonalization basis has " + std::to_string(ctx.diag_basis.size()) +
                              " states, above max_basis; lower diag_energy_cutoff_ghz");
        ctx.has_basis = true;
    }

    const auto grid = geometry_grid(cfg);
    rs.records.resize(grid.size());
    parallel_for(grid.size(), cfg.threads, [&](std::size_t i) {
        Record& r = rs.records[i];
        r.index = i;
        const auto& g = grid[i].geometry;
        if (cfg.scenario == "scan-z" || cfg.scenario == "scan-phi") eval_scan(ctx, g, r);
        else if (cfg.scenario == "scan-axis") eval_axis(ctx, g, r);
        else if (cfg.scenario == "channels") eval_channels(ctx, g, r);
        else if (cfg.scenario == "quad") eval_quad(ctx, g, r);
    });
    return rs;
}

namespace {

// Column holding the single scanned axis, or empty when the grid is not 1-D.
std::string scanned_axis(const ResultSet& rs) {
    for (const char* c : {"dz_um", "dphi_deg", "theta_deg", "phi_deg", "a_nm", "r_a_nm", "n"}) {
        std::set<double> vals;
        for (const auto& r : rs.records)
            if (auto it = r.values.find(c); it != r.values.end()) vals.insert(it->second);
        if (vals.size() > 1) return c;
    }
    return {};
}

PlotSeries series(const ResultSet& rs, const std::string& x, const std::string& y,
                  const std::string& label) {
    PlotSeries s{label, {}, {}};
    for (const auto& r : rs.records) {
        s.x.push_back(r.get(x));
        s.y.push_back(r.get(y));
    }
    return s;
}

}  // namespace

std::vector<std::filesystem::path> emit(const ResultSet& rs, const ScanConfig& cfg) {
    if (rs.records.empty()) throw IoError("no records to emit");
    auto paths = emit_files(rs, cfg.out_dir);
    if (!cfg.plots) return paths;
    const auto x = scanned_axis(rs);
    if (x.empty()) return paths;

    PlotSpec p;
    p.title = rs.scenario;
    p.x_label = x == "dz_um" ? "dz (um)" : x;
    const auto& s = rs.scenario;
    if (s == "scan-z" || s == "scan-phi") {
        p.y_label = "U / U(0)";
        p.reference = true;
        p.reference_y = 1.0;
        p.series.push_back(series(rs, x, "ratio_pt2", "PT2"));
        p.series.push_back(series(rs, x, "ratio_diag", "diagonalization"));
        p.series.push_back(series(rs, x, "pipi_model", "pi-pi model"));
    } else if (s == "scan-axis") {
        p.y_label = "sigma+ model (nm^-6)";
        p.series.push_back(series(rs, x, "sigma_model", "fibre"));
        p.series.push_back(series(rs, x, "sigma_model_vacuum", "vacuum"));
    } else if (s == "forster") {
        p.y_label = "detuning (GHz)";
        p.reference = true;
        p.series.push_back(series(rs, x, "delta1_ghz", "delta1"));
        p.series.push_back(series(rs, x, "delta2_ghz", "delta2"));
    } else if (s == "channels") {
        p.y_label = "share of U(0)";
        p.series.push_back(series(rs, x, "vacuum_allowed_ratio", "vacuum-allowed"));
        p.series.push_back(series(rs, x, "fibre_enabled_ratio", "fibre-enabled"));
    } else if (s == "quad") {
        p.y_label = "U (GHz)";
        p.reference = true;
        p.series.push_back(series(rs, x, "u_with_quad_ghz", "with quadrupole"));
        p.series.push_back(series(rs, x, "u_dipole_only_ghz", "dipole only"));
    } else if (s == "c6-table") {
        p.y_label = "C6 (GHz um^6)";
        p.series.push_back(series(rs, x, "c6_pt2_ghz_um6", "PT2"));
        p.series.push_back(series(rs, x, "c6_diag_ghz_um6", "diagonalization fit"));
    }
    const auto svg = cfg.out_dir / (rs.scenario + ".svg");
    write_svg(svg, p);
    paths.push_back(svg);
    return paths;
}

}  // namespace rydfibre
