// qpgas: statistical mechanics of a qp-deformed Bose gas.
//
// Subcommands: bose-factor, sigma, thermo, tb, phase-map, g2, verify.
// Records go to stdout (or --out FILE) as CSV or JSON with the fixed column
// set q,p,phi,tau,domain,dim,T,mu,value,verdict. Exit codes: 0 success,
// 1 usage error, 2 domain/convergence error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qpstat/condensation.hpp"
#include "qpstat/distribution.hpp"
#include "qpstat/fock_oracle.hpp"
#include "qpstat/photon.hpp"
#include "qpstat/series.hpp"
#include "qpstat/thermo.hpp"

#include "record.hpp"
#include "sampling.hpp"

namespace qpgas {

using namespace qpstat;

// ---------------------------------------------------------------------------
// Options shared by every subcommand (held on the main app; subcommands
// fall through unmatched flags).
// ---------------------------------------------------------------------------

struct CommonOpts {
    // deformation parameters
    bool classical = false;
    double q = 0.0, p = 0.0;
    double q_re = 0.0, q_im = 0.0;
    double phi = 0.0, tau = 0.0;
    std::string family = "real";
    bool q_set = false, p_set = false, q_re_set = false, q_im_set = false;
    bool phi_set = false, tau_set = false;

    // numerics
    double eps = 1e-12;
    double tol = 1e-10;
    std::size_t max_terms = 1'000'000;

    // units
    std::string units = "reduced";
    double mass = 1.0, degeneracy = 1.0, hbar = 1.0, kb = 1.0;

    // output
    std::string out;
    std::string format = "csv";
    std::vector<std::string> sweeps;
};

struct SweepAxis {
    std::string name;
    double start = 0.0, stop = 0.0;
    int count = 1;

    double at(int i) const {
        if (count == 1) return start;
        return start + (stop - start) * static_cast<double>(i) / (count - 1);
    }
};

SweepAxis parse_sweep(const std::string& text) {
    // name=start:stop:count, inclusive linear grid
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw CLI::ValidationError("--sweep", "expected name=start:stop:count");
    SweepAxis axis;
    axis.name = text.substr(0, eq);
    const std::string rest = text.substr(eq + 1);
    const auto c1 = rest.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : rest.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw CLI::ValidationError("--sweep", "expected name=start:stop:count");
    try {
        axis.start = std::stod(rest.substr(0, c1));
        axis.stop = std::stod(rest.substr(c1 + 1, c2 - c1 - 1));
        axis.count = std::stoi(rest.substr(c2 + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--sweep", "malformed numbers in " + text);
    }
    if (axis.count < 1) throw CLI::ValidationError("--sweep", "count must be >= 1");
    return axis;
}

/// Named values for one grid point: flag values overlaid with sweep values.
struct PointContext {
    std::map<std::string, double> vals;

    bool has(const std::string& name) const { return vals.count(name) != 0; }
    double get(const std::string& name) const { return vals.at(name); }
    double get_or(const std::string& name, double fallback) const {
        auto it = vals.find(name);
        return it == vals.end() ? fallback : it->second;
    }
};

DeformationParams build_params(const PointContext& ctx, const CommonOpts& opts) {
    if (ctx.has("phi") || ctx.has("tau")) {
        if (!ctx.has("phi") || !ctx.has("tau"))
            throw CLI::ValidationError("--phi/--tau", "both are required together");
        const Family fam = opts.family == "complex" ? Family::Complex : Family::Real;
        return DeformationParams::from_phi_tau(ctx.get("phi"), ctx.get("tau"), fam, opts.eps);
    }
    if (ctx.has("q-re") || ctx.has("q-im")) {
        const std::complex<double> q(ctx.get_or("q-re", 0.0), ctx.get_or("q-im", 0.0));
        return DeformationParams::from_qp(q, std::conj(q), opts.eps);
    }
    if (ctx.has("q") || ctx.has("p")) {
        if (!ctx.has("q") || !ctx.has("p"))
            throw CLI::ValidationError("--q/--p", "both are required together");
        return DeformationParams::from_qp(ctx.get("q"), ctx.get("p"), opts.eps);
    }
    if (opts.classical) return DeformationParams::classical();
    throw CLI::ValidationError("parameters",
                               "no deformation given (use --q/--p, --q-re/--q-im, "
                               "--phi/--tau or --classical)");
}

Units build_units(const CommonOpts& opts) {
    if (opts.units == "reduced") return Units::reduced();
    return Units::si(opts.hbar, opts.kb);
}

void fill_param_columns(Record& rec, const DeformationParams& params) {
    rec.q = fmt_complex(params.q());
    rec.p = fmt_complex(params.p());
    rec.phi = params.phi();
    rec.tau = params.tau();
    rec.domain = to_string(params.domain());
}

void fill_raw_point(Record& rec, const PointContext& ctx) {
    if (ctx.has("q")) rec.q = fmt17(ctx.get("q"));
    if (ctx.has("p")) rec.p = fmt17(ctx.get("p"));
    if (ctx.has("phi")) rec.phi = ctx.get("phi");
    if (ctx.has("tau")) rec.tau = ctx.get("tau");
}

// ---------------------------------------------------------------------------
// Sweep-aware execution: the base context comes from explicit flags; each
// grid point overlays the sweep axes, row-major in declaration order.
// Points run sequentially so output bytes are reproducible. A failing point
// inside a sweep becomes an in-row verdict; a failing single point is a hard
// error.
// ---------------------------------------------------------------------------

using PointFn = std::function<Record(const PointContext&)>;

void for_each_grid_point(const PointContext& base, const std::vector<SweepAxis>& axes,
                         const std::function<void(const PointContext&)>& visit) {
    if (axes.empty()) {
        visit(base);
        return;
    }
    std::vector<int> idx(axes.size(), 0);
    for (;;) {
        PointContext ctx = base;
        for (std::size_t a = 0; a < axes.size(); ++a) ctx.vals[axes[a].name] = axes[a].at(idx[a]);
        visit(ctx);
        // odometer, last axis fastest
        std::size_t a = axes.size();
        for (;;) {
            if (a == 0) return;
            --a;
            if (++idx[a] < axes[a].count) break;
            idx[a] = 0;
        }
    }
}

std::vector<Record> run_grid(const PointContext& base, const CommonOpts& opts,
                             const PointFn& evaluate) {
    std::vector<SweepAxis> axes;
    axes.reserve(opts.sweeps.size());
    for (const std::string& s : opts.sweeps) axes.push_back(parse_sweep(s));

    if (axes.empty()) return {evaluate(base)};

    std::vector<Record> records;
    for_each_grid_point(base, axes, [&](const PointContext& ctx) {
        try {
            records.push_back(evaluate(ctx));
        } catch (const std::exception& e) {
            Record rec;
            fill_raw_point(rec, ctx);
            rec.verdict = std::string("error: ") + e.what();
            records.push_back(rec);
        }
    });
    return records;
}

void emit(const std::vector<Record>& records, const CommonOpts& opts) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!opts.out.empty()) {
        file.open(opts.out, std::ios::binary);
        if (!file) throw CLI::ValidationError("--out", "cannot open " + opts.out);
        os = &file;
    }
    if (opts.format == "json") emit_json(*os, records);
    else emit_csv(*os, records);
}

// ---------------------------------------------------------------------------
// verify: oracle cross-checks with fixed seeds and PASS/FAIL lines.
// ---------------------------------------------------------------------------

struct VerifyReport {
    std::ostringstream out;
    int passed = 0;
    int failed = 0;

    void line(bool ok, const std::string& name, const std::string& detail) {
        out << (ok ? "PASS " : "FAIL ") << name << "  " << detail << "\n";
        (ok ? passed : failed) += 1;
    }
};

const DomainCase kVerifyDomains[5] = {DomainCase::RealGeneric, DomainCase::RealReciprocal,
                                      DomainCase::RealPOne, DomainCase::ComplexConjugate,
                                      DomainCase::UnitCircle};

void verify_bose(VerifyReport& rep, double tol, int points) {
    VerifyRng rng(9001);
    double worst = 0.0;
    for (DomainCase domain : kVerifyDomains) {
        for (int i = 0; i < points; ++i) {
            const auto params = sample_domain(rng, domain);
            const double eta = sample_eta(rng, params);
            const auto oracle = oracle_bose_factor(eta, params, tol * 0.1);
            const double err = std::abs(bose_factor_at(eta, params) - oracle.value);
            worst = std::max(worst, err - oracle.truncation_bound);
        }
    }
    worst = std::max(worst, 0.0);
    rep.line(worst <= tol, "bose-factor-vs-oracle",
             "excess=" + fmt17(worst) + " points=" + std::to_string(points) + "x5");
}

void verify_moments(VerifyReport& rep, double tol, int points) {
    VerifyRng rng(9002);
    double worst_n2 = 0.0, worst_qn = 0.0;
    for (DomainCase domain : kVerifyDomains) {
        for (int i = 0; i < points; ++i) {
            const auto params = sample_domain(rng, domain);
            const double xi = sample_xi(rng, params);
            const PhotonMode mode(xi, 1.0);
            const auto n2 = oracle_n2(xi, params, tol * 0.1);
            worst_n2 = std::max(worst_n2, std::abs(mean_occupation_sq(mode, params) - n2.value)
                                              - n2.truncation_bound);
            const auto qn = oracle_qn(xi, params, tol * 0.1);
            worst_qn = std::max(worst_qn, std::abs(mean_qn_occupation(mode, params) - qn.value)
                                              - qn.truncation_bound);
        }
    }
    rep.line(worst_n2 <= tol, "occupation-sq-vs-oracle",
             "excess=" + fmt17(std::max(0.0, worst_n2)));
    rep.line(worst_qn <= tol, "qn-occupation-vs-oracle",
             "excess=" + fmt17(std::max(0.0, worst_qn)));
}

void verify_g2(VerifyReport& rep, double tol, int points) {
    VerifyRng rng(9003);
    double worst = 0.0;
    for (DomainCase domain : kVerifyDomains) {
        for (int i = 0; i < points; ++i) {
            const auto params = sample_domain(rng, domain);
            const double xi = sample_xi(rng, params);
            const auto oracle = oracle_g2(xi, params, tol * 0.1);
            const double err = std::abs(g2(PhotonMode(xi, 1.0), params) - oracle.value);
            worst = std::max(worst, err - oracle.truncation_bound);
        }
    }
    worst = std::max(worst, 0.0);
    rep.line(worst <= tol, "g2-vs-oracle", "excess=" + fmt17(worst));

    VerifyRng rng2(9004);
    double classical_dev = 0.0;
    for (int i = 0; i < points; ++i) {
        const double xi = rng2.uniform(0.05, 20.0);
        classical_dev = std::max(
            classical_dev,
            std::abs(g2(PhotonMode(xi, 1.0), DeformationParams::classical()) - 2.0));
    }
    rep.line(classical_dev <= tol, "g2-classical-pin", "dev=" + fmt17(classical_dev));
}

void verify_sigma(VerifyReport& rep, double tol, int points) {
    const double s0 = sigma0(1.5, DeformationParams::classical()).checked_value();
    rep.line(std::abs(s0 - 2.612) <= 5e-4, "sigma0-classical-constant",
             "sigma0(3/2)=" + fmt17(s0));

    const auto recip = DeformationParams::from_qp(0.9, 1.0 / 0.9);
    const double partial = oracle_sigma_partial(1.5, 0.0, recip, 500);
    const bool diverges =
        partial > 1e3 && sigma(1.5, 0.0, recip).verdict == SeriesVerdict::Divergent;
    rep.line(diverges, "reciprocal-divergence", "partial(500)=" + fmt17(partial));

    // convergent deformed points: sigma against literal partial sums, which
    // carry the full tail as their only disagreement
    VerifyRng rng(9005);
    double worst = 0.0;
    const std::int64_t j_cap = 5000;
    for (int i = 0; i < points; ++i) {
        const auto params =
            sample_domain(rng, i % 2 == 0 ? DomainCase::RealGeneric : DomainCase::ComplexConjugate);
        const double bmu = -std::max(0.0, params.log_max_abs_qp()) - rng.uniform(0.1, 1.0);
        const double s = rng.uniform(0.7, 3.0);
        const SeriesResult sig = sigma(s, bmu, params, std::min(tol * 0.01, 1e-12));
        const double part = oracle_sigma_partial(s, bmu, params, j_cap);
        worst = std::max(worst, std::abs(sig.value - part));
    }
    rep.line(worst <= tol, "sigma-vs-partial-sums", "maxdiff=" + fmt17(worst));
}

int run_verify(const std::string& suite, double tol, int points, const CommonOpts& opts) {
    VerifyReport rep;
    if (suite == "all" || suite == "bose") verify_bose(rep, tol, points);
    if (suite == "all" || suite == "moments") verify_moments(rep, tol, points);
    if (suite == "all" || suite == "g2") verify_g2(rep, tol, points);
    if (suite == "all" || suite == "sigma") verify_sigma(rep, tol, points);
    rep.out << "verify: " << rep.passed << "/" << (rep.passed + rep.failed)
            << " checks passed\n";

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!opts.out.empty()) {
        file.open(opts.out, std::ios::binary);
        os = &file;
    }
    *os << rep.out.str();
    return rep.failed == 0 ? 0 : 2;
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
    CLI::App app{"statistical mechanics of a gas of qp-deformed bosons"};
    app.set_config("--config", "", "configuration file with key = value defaults");

    CommonOpts opts;
    app.add_flag("--classical", opts.classical, "undeformed point q = p = 1");
    auto* oq = app.add_option("--q", opts.q, "real-family q");
    auto* op = app.add_option("--p", opts.p, "real-family p");
    auto* oqre = app.add_option("--q-re", opts.q_re, "Re(q) for the complex family (p = conj q)");
    auto* oqim = app.add_option("--q-im", opts.q_im, "Im(q) for the complex family");
    auto* ophi = app.add_option("--phi", opts.phi, "deformation magnitude");
    auto* otau = app.add_option("--tau", opts.tau, "deformation angle in [-pi/2, pi/2]");
    app.add_option("--family", opts.family, "real|complex (with --phi/--tau)")
        ->check(CLI::IsMember({"real", "complex"}));
    app.add_option("--eps", opts.eps, "domain classification tolerance");
    app.add_option("--tol", opts.tol, "series tolerance");
    app.add_option("--max-terms", opts.max_terms, "series iteration cap");
    app.add_option("--units", opts.units, "reduced|si")->check(CLI::IsMember({"reduced", "si"}));
    auto* omass = app.add_option("--mass", opts.mass, "particle mass (SI units)");
    auto* odeg = app.add_option("--degeneracy", opts.degeneracy, "spin degeneracy g (SI units)");
    app.add_option("--hbar", opts.hbar, "hbar value for SI units");
    app.add_option("--kb", opts.kb, "k_B value for SI units");
    app.add_option("--out", opts.out, "write records to FILE instead of stdout");
    app.add_option("--format", opts.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--sweep", opts.sweeps,
                   "sweep axis name=start:stop:count; repeatable, cartesian product");

    app.require_subcommand(1);

    auto* cmd_bose = app.add_subcommand("bose-factor", "deformed Bose factor for one mode");
    double bf_eta = 1.0, bf_temp = 1.0, bf_mu = 0.0, bf_energy = 0.0;
    auto* obf_eta = cmd_bose->add_option("--eta", bf_eta, "dimensionless exponent beta(E - mu)");
    auto* obf_t = cmd_bose->add_option("--T", bf_temp, "temperature");
    auto* obf_mu = cmd_bose->add_option("--mu", bf_mu, "chemical potential");
    auto* obf_e = cmd_bose->add_option("--energy", bf_energy, "mode kinetic energy");

    auto* cmd_sigma = app.add_subcommand("sigma", "deformed zeta series sigma(s)_qp");
    double sg_s = 1.5, sg_bmu = 0.0;
    auto* osg_s = cmd_sigma->add_option("--s", sg_s, "series exponent");
    cmd_sigma->add_option("--beta-mu", sg_bmu, "beta*mu <= 0 (default 0)");

    auto* cmd_thermo = app.add_subcommand("thermo", "thermodynamic functions of the gas");
    std::string th_quantity = "density";
    double th_dim = 3.0, th_t = 1.0, th_mu = 0.0, th_density = 0.0, th_volume = 1.0;
    cmd_thermo
        ->add_option("--quantity", th_quantity, "density|energy|pressure|entropy|cv|omega|mu")
        ->check(CLI::IsMember({"density", "energy", "pressure", "entropy", "cv", "omega", "mu"}));
    auto* oth_dim = cmd_thermo->add_option("--dim", th_dim, "spatial dimension D");
    cmd_thermo->add_option("--T", th_t, "temperature");
    cmd_thermo->add_option("--mu", th_mu, "chemical potential <= 0");
    auto* oth_rho = cmd_thermo->add_option("--density", th_density, "target density (quantity=mu)");
    cmd_thermo->add_option("--volume", th_volume, "volume V(D)");

    auto* cmd_tb = app.add_subcommand("tb", "Bose temperature T_B(D)");
    double tb_dim = 3.0, tb_density = 1.0;
    auto* otb_dim = cmd_tb->add_option("--dim", tb_dim, "spatial dimension D");
    auto* otb_rho = cmd_tb->add_option("--density", tb_density, "gas density rho(D)");

    auto* cmd_phase = app.add_subcommand("phase-map", "condensation scan over a parameter grid");
    double pm_dim = 3.0, pm_density = 1.0;
    cmd_phase->add_option("--dim", pm_dim, "spatial dimension D")->required();
    cmd_phase->add_option("--density", pm_density, "gas density rho(D)")->required();

    auto* cmd_g2 = app.add_subcommand("g2", "second-order photon correlation");
    double g2_xi = 1.0;
    auto* og2_xi = cmd_g2->add_option("--xi", g2_xi, "dimensionless mode exponent beta hbar omega");

    auto* cmd_verify = app.add_subcommand("verify", "oracle cross-validation suite");
    std::string vf_suite = "all";
    double vf_tol = 1e-8;
    int vf_points = 200;
    cmd_verify->add_option("--suite", vf_suite, "all|bose|moments|g2|sigma")
        ->check(CLI::IsMember({"all", "bose", "moments", "g2", "sigma"}));
    cmd_verify->add_option("--tol", vf_tol, "acceptance tolerance for each check");
    cmd_verify->add_option("--points", vf_points, "sample points per domain");

    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    opts.q_set = oq->count() > 0;
    opts.p_set = op->count() > 0;
    opts.q_re_set = oqre->count() > 0;
    opts.q_im_set = oqim->count() > 0;
    opts.phi_set = ophi->count() > 0;
    opts.tau_set = otau->count() > 0;

    PointContext base;
    if (opts.q_set) base.vals["q"] = opts.q;
    if (opts.p_set) base.vals["p"] = opts.p;
    if (opts.q_re_set) base.vals["q-re"] = opts.q_re;
    if (opts.q_im_set) base.vals["q-im"] = opts.q_im;
    if (opts.phi_set) base.vals["phi"] = opts.phi;
    if (opts.tau_set) base.vals["tau"] = opts.tau;

    try {
        if (opts.units == "si" && (omass->count() == 0 || odeg->count() == 0))
            throw CLI::ValidationError("--units si", "requires --mass and --degeneracy");
        const Units units = build_units(opts);

        if (cmd_bose->parsed()) {
            if (obf_eta->count()) base.vals["eta"] = bf_eta;
            if (obf_t->count()) base.vals["T"] = bf_temp;
            if (obf_mu->count()) base.vals["mu"] = bf_mu;
            if (obf_e->count()) base.vals["energy"] = bf_energy;
            auto point = [&](const PointContext& ctx) {
                const auto params = build_params(ctx, opts);
                Record rec;
                fill_param_columns(rec, params);
                double eta;
                if (ctx.has("eta")) {
                    eta = ctx.get("eta");
                    rec.temperature = 1.0;
                    rec.mu = -eta; // eta = beta(E - mu) at T = 1, E = 0
                } else if (ctx.has("T")) {
                    const double temp = ctx.get("T");
                    const double mu = ctx.get_or("mu", 0.0);
                    const double energy = ctx.get_or("energy", 0.0);
                    eta = (energy - mu) / (units.k_b * temp);
                    rec.temperature = temp;
                    rec.mu = mu;
                } else {
                    throw CLI::ValidationError("bose-factor", "give --eta or --T/--mu/--energy");
                }
                rec.value = bose_factor_at(eta, params);
                rec.verdict = "ok";
                return rec;
            };
            emit(run_grid(base, opts, point), opts);
            return 0;
        }

        if (cmd_sigma->parsed()) {
            if (osg_s->count()) base.vals["s"] = sg_s;
            base.vals["beta-mu"] = sg_bmu;
            auto point = [&](const PointContext& ctx) {
                const auto params = build_params(ctx, opts);
                Record rec;
                fill_param_columns(rec, params);
                if (!ctx.has("s"))
                    throw CLI::ValidationError("--s", "required (flag or sweep axis)");
                const double s = ctx.get("s");
                const SeriesResult r =
                    sigma(s, ctx.get("beta-mu"), params, opts.tol, opts.max_terms);
                rec.dim = 2.0 * s; // sigma(D/2) convention
                rec.mu = ctx.get("beta-mu");
                if (r.converged()) rec.value = r.value;
                rec.verdict = to_string(r.verdict);
                return rec;
            };
            emit(run_grid(base, opts, point), opts);
            return 0;
        }

        if (cmd_thermo->parsed()) {
            if (oth_dim->count()) base.vals["dim"] = th_dim;
            base.vals["T"] = th_t;
            base.vals["mu"] = th_mu;
            base.vals["volume"] = th_volume;
            if (oth_rho->count()) base.vals["density"] = th_density;
            auto point = [&](const PointContext& ctx) {
                const auto params = build_params(ctx, opts);
                if (!ctx.has("dim"))
                    throw CLI::ValidationError("--dim", "required (flag or sweep axis)");
                const GasSpec spec(ctx.get("dim"), opts.degeneracy, opts.mass, ctx.get("volume"),
                                   units);
                Record rec;
                fill_param_columns(rec, params);
                rec.dim = spec.dim;
                const double temp = ctx.get("T");
                rec.temperature = temp;
                if (th_quantity == "mu") {
                    if (!ctx.has("density"))
                        throw CLI::ValidationError("--density", "required for quantity=mu");
                    const MuSolution sol =
                        solve_mu(ctx.get("density"), temp, spec, params, opts.tol);
                    rec.mu = sol.mu;
                    rec.value = sol.mu;
                    rec.verdict = sol.condensed ? "condensed" : "ok";
                    return rec;
                }
                const double mu = ctx.get("mu");
                rec.mu = mu;
                const ThermoState state(temp, mu, params);
                double v = 0.0;
                if (th_quantity == "density") v = density(state, spec, opts.tol);
                else if (th_quantity == "energy") v = energy(state, spec, opts.tol);
                else if (th_quantity == "pressure") v = pressure(state, spec, opts.tol);
                else if (th_quantity == "entropy") v = entropy(state, spec, opts.tol);
                else if (th_quantity == "cv") v = specific_heat(state, spec, opts.tol);
                else if (th_quantity == "omega") v = grand_potential(state, spec, opts.tol);
                rec.value = v;
                rec.verdict = "ok";
                return rec;
            };
            emit(run_grid(base, opts, point), opts);
            return 0;
        }

        if (cmd_tb->parsed()) {
            if (otb_dim->count()) base.vals["dim"] = tb_dim;
            if (otb_rho->count()) base.vals["density"] = tb_density;
            auto point = [&](const PointContext& ctx) {
                const auto params = build_params(ctx, opts);
                if (!ctx.has("dim") || !ctx.has("density"))
                    throw CLI::ValidationError("--dim/--density",
                                               "required (flags or sweep axes)");
                const GasSpec spec(ctx.get("dim"), opts.degeneracy, opts.mass, 1.0, units);
                Record rec;
                fill_param_columns(rec, params);
                rec.dim = spec.dim;
                rec.mu = 0.0;
                rec.value = bose_temperature(ctx.get("density"), spec, params, opts.tol);
                rec.verdict = to_string(condenses(params, spec.dim));
                return rec;
            };
            emit(run_grid(base, opts, point), opts);
            return 0;
        }

        if (cmd_phase->parsed()) {
            if (opts.sweeps.empty())
                throw CLI::ValidationError("--sweep", "phase-map needs at least one sweep axis");
            base.vals["dim"] = pm_dim;
            base.vals["density"] = pm_density;
            std::vector<SweepAxis> axes;
            for (const std::string& s : opts.sweeps) axes.push_back(parse_sweep(s));

            // Materialize the grid first; the core phase_map evaluates the
            // valid points, construction failures stay in-row.
            std::vector<Record> records;
            std::vector<DeformationParams> valid;
            std::vector<std::size_t> valid_rows;
            for_each_grid_point(base, axes, [&](const PointContext& ctx) {
                Record rec;
                rec.dim = pm_dim;
                try {
                    const auto params = build_params(ctx, opts);
                    fill_param_columns(rec, params);
                    valid.push_back(params);
                    valid_rows.push_back(records.size());
                } catch (const std::exception& e) {
                    fill_raw_point(rec, ctx);
                    rec.verdict = std::string("error: ") + e.what();
                }
                records.push_back(rec);
            });

            const GasSpec spec(pm_dim, opts.degeneracy, opts.mass, 1.0, units);
            const auto rows = phase_map(valid, pm_density, spec, opts.tol);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                Record& rec = records[valid_rows[i]];
                rec.mu = 0.0;
                if (rows[i].error.empty()) {
                    rec.value = rows[i].t_b;
                    rec.verdict = to_string(rows[i].verdict);
                } else {
                    rec.verdict = "error: " + rows[i].error;
                }
            }
            emit(records, opts);
            return 0;
        }

        if (cmd_g2->parsed()) {
            if (og2_xi->count()) base.vals["xi"] = g2_xi;
            auto point = [&](const PointContext& ctx) {
                const auto params = build_params(ctx, opts);
                if (!ctx.has("xi"))
                    throw CLI::ValidationError("--xi", "required (flag or sweep axis)");
                Record rec;
                fill_param_columns(rec, params);
                rec.value = g2(PhotonMode(ctx.get("xi"), 1.0), params);
                rec.verdict = "ok";
                return rec;
            };
            emit(run_grid(base, opts, point), opts);
            return 0;
        }

        if (cmd_verify->parsed()) return run_verify(vf_suite, vf_tol, vf_points, opts);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "{\"error\":\"domain\",\"message\":\"" << json_escape(e.what()) << "\"}\n";
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "{\"error\":\"convergence\",\"message\":\"" << json_escape(e.what())
                  << "\"}\n";
        return 2;
    }
    return 1;
}

} // namespace qpgas

int main(int argc, char** argv) { return qpgas::run(argc, argv); }
