// Command-line front end: solves, convergence/stability/energy studies and parameter sweeps, written as CSV.
#include "morawetz/morawetz.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace morawetz;

namespace {

constexpr const char* version = "0.1.0";
constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

enum Exit { ok = 0, usage = 2, singular = 3, assertion = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AssertionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void init_logging()
{
    auto log = spdlog::stderr_color_mt("morawetz");
    spdlog::set_default_logger(log);
    spdlog::set_pattern("[%l] %v");
    const char* env = std::getenv("MORAWETZ_LOG");
    spdlog::set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
}

// ---------------------------------------------------------------------------------------------
// CSV

std::string num(double v)
{
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Csv {
public:
    explicit Csv(const std::string& path)
    {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw UsageError("cannot open output file '" + path + "'");
        }
        out() << "# morawetz " << version << '\n';
    }
    Csv& header(const std::vector<std::string>& cols) { return row(cols); }
    Csv& row(const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) out() << (i ? "," : "") << cells[i];
        out() << '\n';
        return *this;
    }

private:
    std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    std::ofstream file_;
};

// ---------------------------------------------------------------------------------------------
// Problems and parameters

ProblemSpec load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read problem config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("invalid JSON in '" + path + "': " + e.what());
    }
    static const std::vector<std::string> known{"name", "c", "theta", "domain", "T", "dirichlet", "exact", "problem"};
    for (const auto& [k, v] : j.items())
        if (std::find(known.begin(), known.end(), k) == known.end()) throw UsageError("unknown config key '" + k + "'");
    try {
        if (j.contains("problem")) {
            if (j.size() > 1) throw UsageError("'problem' cannot be combined with other keys");
            return catalog(j.at("problem").get<std::string>());
        }
        const double c = j.value("c", 1.0);
        const double theta = j.value("theta", 1.0);
        const auto dom = j.value("domain", std::vector<double>{-1.0, 1.0});
        if (dom.size() != 2) throw UsageError("'domain' must be [x_lo, x_hi]");
        const double T = j.value("T", 1.0);
        const Geometry g = j.value("dirichlet", false) ? Geometry::mixed(dom[0], dom[1], T)
                                                       : Geometry::impedance(dom[0], dom[1], T);
        const std::string ex = j.at("exact").get<std::string>();
        const auto& reg = exact_registry();
        const auto it = reg.find(ex);
        if (it == reg.end()) throw UsageError("unknown exact solution '" + ex + "'");
        std::optional<KinkLine> kink;
        if (ex == "p3") kink = KinkLine{c, 1.0};
        return from_exact(j.value("name", ex), g, c, theta, it->second(c, theta), kink);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad config value: ") + e.what());
    }
}

ProblemSpec load_problem(const std::string& s)
{
    if (s.size() > 5 && s.substr(s.size() - 5) == ".json") return load_config(s);
    return catalog(s);
}

struct Common {
    std::string problem = "p1";
    double xi = 1.0;
    std::optional<double> beta;
    bool beta_sharp = false;
    double nu = 2.0;
    double aq = 1e-2;
    double ao0 = 1.0;
    double asd = 1.0;
    std::string out;
    std::uint64_t seed = 12345;
    int quad = 6;
    unsigned jobs = 1;

    void bind(CLI::App* app)
    {
        app->add_option("--problem", problem, "p1, p2, p3 or a JSON config file")->capture_default_str();
        app->add_option("--xi", xi, "multiplier weight xi")->capture_default_str()->check(CLI::PositiveNumber);
        auto* b = app->add_option("--beta", beta, "multiplier weight beta (default beta#)");
        app->add_flag("--beta-sharp", beta_sharp, "use beta = beta#")->excludes(b);
        app->add_option("--nu", nu, "T* = nu T")->capture_default_str();
        app->add_option("--aq", aq, "volume penalty A_Q")->capture_default_str()->check(CLI::NonNegativeNumber);
        app->add_option("--ao0", ao0, "initial penalty A_O0")->capture_default_str()->check(CLI::NonNegativeNumber);
        app->add_option("--asd", asd, "Dirichlet penalty A_SD")->capture_default_str()->check(CLI::NonNegativeNumber);
        app->add_option("--out", out, "output CSV path (stdout when omitted)");
        app->add_option("--seed", seed, "random seed")->capture_default_str();
        app->add_option("--quad-order", quad, "Gauss points per direction")->capture_default_str()->check(CLI::Range(1, 32));
        app->add_option("--jobs", jobs, "worker threads, 0 = hardware")->capture_default_str();
    }

    [[nodiscard]] FormulationParams params(const ProblemSpec& prob) const
    {
        FormulationParams p;
        p.xi = xi;
        p.nu = nu;
        p.A_Q = aq;
        p.A_O0 = ao0;
        p.A_SD = asd;
        p.c = prob.c;
        p.theta = prob.theta;
        p.beta = beta.value_or(morawetz::beta_sharp(prob.geometry, prob.c, prob.theta, p.d));
        return p;
    }

    [[nodiscard]] AssemblyOptions options() const { return {quad, 1}; }
};

void report_validation(const FormulationParams& p, const Geometry& g)
{
    const ValidationReport r = validate_params(p, g);
    for (const auto& m : r.messages) spdlog::warn("{}", m);
}

std::vector<std::size_t> need_list(const std::vector<std::size_t>& v, const char* flag)
{
    if (v.empty()) throw UsageError(std::string(flag) + " needs at least one value");
    for (std::size_t n : v)
        if (n == 0) throw UsageError(std::string(flag) + " values must be positive");
    return v;
}

// One mesh run of a convergence-type study.
struct Run {
    double H = 0, Hx = 0, Ht = 0;
    std::size_t dofs = 0;
    double L2 = nan_v, H1 = nan_v, V = nan_v;
    double bL2 = nan_v, bH1 = nan_v, bV = nan_v;
    double qo = nan_v, kappa = nan_v;
};

Run run_mesh(const ProblemSpec& prob, const FormulationParams& p, std::size_t nx, std::size_t nt,
             const AssemblyOptions& opt, bool best, bool kappa)
{
    const Mesh m = build_mesh(prob.geometry, nx, nt);
    Run r;
    r.H = m.h();
    r.Hx = m.hx();
    r.Ht = m.ht();
    r.dofs = m.num_dofs();
    spdlog::info("{}: solving nx={} nt={} ({} dofs)", prob.name, nx, nt, r.dofs);
    const GalerkinSolution sol = solve_galerkin_full(prob, m, p, opt, true);
    if (kappa) r.kappa = cond2_estimate(sol.B, sol.factors).kappa;
    if (!prob.exact) return r;
    const NormKind vk = natural_norm(prob.geometry);
    const ErrorReport e = error_norms(sol.field, prob, {NormKind::L2, NormKind::H1scaled, vk});
    r.L2 = e.at(NormKind::L2).rel;
    r.H1 = e.at(NormKind::H1scaled).rel;
    r.V = e.at(vk).rel;
    if (best) {
        r.bL2 = best_approximation(prob, m, NormKind::L2, opt).error.rel;
        r.bH1 = best_approximation(prob, m, NormKind::H1scaled, opt).error.rel;
        r.bV = best_approximation(prob, m, vk, opt).error.rel;
        r.qo = r.V / r.bV;
    }
    return r;
}

// ---------------------------------------------------------------------------------------------
// Subcommands

struct SolveArgs {
    std::size_t nx = 16, nt = 16;
    std::string dofs_out;
    bool kappa = false;
};

int cmd_solve(const Common& c, const SolveArgs& a)
{
    const ProblemSpec prob = load_problem(c.problem);
    const FormulationParams p = c.params(prob);
    report_validation(p, prob.geometry);
    const Mesh m = build_mesh(prob.geometry, a.nx, a.nt);
    AssemblyOptions opt = c.options();
    opt.jobs = c.jobs;
    const GalerkinSolution sol = solve_galerkin_full(prob, m, p, opt, true);
    if (!a.dofs_out.empty()) {
        Csv d(a.dofs_out);
        d.header({"index", "it", "jx", "kind", "value"});
        static const char* kinds[] = {"u", "u_x", "u_t", "u_xt"};
        for (std::size_t k = 0; k < m.num_dofs(); ++k) {
            const DofLocation l = m.dofs().location(k);
            d.row({std::to_string(k), std::to_string(l.i), std::to_string(l.j), kinds[static_cast<int>(l.kind)],
                   num(sol.field.coeffs()[k])});
        }
    }
    double L2 = nan_v, H1 = nan_v, V = nan_v;
    if (prob.exact) {
        const NormKind vk = natural_norm(prob.geometry);
        const ErrorReport e = error_norms(sol.field, prob, {NormKind::L2, NormKind::H1scaled, vk});
        L2 = e.at(NormKind::L2).rel;
        H1 = e.at(NormKind::H1scaled).rel;
        V = e.at(vk).rel;
    }
    const double kappa = a.kappa ? cond2_estimate(sol.B, sol.factors).kappa : nan_v;
    Csv s(c.out);
    s.header({"Problem", "Nx", "Nt", "Dofs", "xi", "beta", "nu", "AQ", "AO0", "L2errors", "H1errors", "Verrors", "Kconds"});
    s.row({prob.name, std::to_string(a.nx), std::to_string(a.nt), std::to_string(m.num_dofs()), num(p.xi), num(p.beta),
           num(p.nu), num(p.A_Q), num(p.A_O0), num(L2), num(H1), num(V), num(kappa)});
    return ok;
}

struct ConvergeArgs {
    std::vector<std::size_t> N;
    bool kappa = false;
    std::vector<double> min_orders; // L2, H1, V
};

int cmd_converge(const Common& c, const ConvergeArgs& a)
{
    const auto Ns = need_list(a.N, "--N");
    const ProblemSpec prob = load_problem(c.problem);
    prob.require_exact();
    const FormulationParams p = c.params(prob);
    report_validation(p, prob.geometry);
    std::vector<Run> runs(Ns.size());
    parallel_for(Ns.size(), c.jobs, [&](std::size_t i) {
        runs[i] = run_mesh(prob, p, Ns[i], Ns[i], c.options(), true, a.kappa);
    });
    Csv csv(c.out);
    csv.header({"H", "Hx", "Ht", "Dofs", "L2errors", "H1errors", "Verrors", "L2projErrors", "H1projErrors",
                "VprojErrors", "QOconstEst", "Kconds"});
    for (const Run& r : runs)
        csv.row({num(r.H), num(r.Hx), num(r.Ht), std::to_string(r.dofs), num(r.L2), num(r.H1), num(r.V), num(r.bL2),
                 num(r.bH1), num(r.bV), num(r.qo), num(r.kappa)});
    if (!a.min_orders.empty()) {
        if (a.min_orders.size() != 3) throw UsageError("--min-orders takes three values (L2,H1,V)");
        if (runs.size() < 2) throw UsageError("--min-orders needs at least two meshes");
        std::vector<double> h, e2, e1, ev;
        for (const Run& r : runs) {
            h.push_back(r.H);
            e2.push_back(r.L2);
            e1.push_back(r.H1);
            ev.push_back(r.V);
        }
        const double o[3] = {fit_order(h, e2), fit_order(h, e1), fit_order(h, ev)};
        spdlog::info("observed orders L2 {:.3f} H1 {:.3f} V {:.3f}", o[0], o[1], o[2]);
        for (int k = 0; k < 3; ++k)
            if (!(o[k] >= a.min_orders[k]))
                throw AssertionFailure("observed orders " + num(o[0]) + ", " + num(o[1]) + ", " + num(o[2]) +
                                       " below requested minimum");
    }
    return ok;
}

struct SweepArgs {
    std::string grid = "aq-ao0";
    std::vector<double> x_range{1e-4, 1e2};
    std::vector<double> y_range{1e-4, 1e2};
    std::size_t points = 5;
    std::size_t N = 8;
    bool kappa = true;
};

int cmd_sweep(const Common& c, const SweepArgs& a)
{
    if (a.grid != "aq-ao0" && a.grid != "beta-xi") throw UsageError("--grid must be aq-ao0 or beta-xi");
    if (a.points == 0) throw UsageError("--points must be positive");
    if (a.x_range.size() != 2 || a.y_range.size() != 2) throw UsageError("ranges take two values");
    for (double v : {a.x_range[0], a.x_range[1], a.y_range[0], a.y_range[1]})
        if (!(v > 0.0)) throw UsageError("sweep ranges must be positive (log grid)");
    const ProblemSpec prob = load_problem(c.problem);
    prob.require_exact();
    const FormulationParams base = c.params(prob);
    const auto axis = [&](const std::vector<double>& r, std::size_t k) {
        if (a.points == 1) return r[0];
        return r[0] * std::pow(r[1] / r[0], static_cast<double>(k) / static_cast<double>(a.points - 1));
    };
    struct Cell {
        double x = 0, y = 0, L2 = nan_v, kappa = nan_v;
        bool coercive = false;
    };
    std::vector<Cell> cells(a.points * a.points);
    const Mesh m = build_mesh(prob.geometry, a.N, a.N);
    parallel_for(cells.size(), c.jobs, [&](std::size_t idx) {
        Cell& cell = cells[idx];
        cell.x = axis(a.x_range, idx % a.points);
        cell.y = axis(a.y_range, idx / a.points);
        FormulationParams p = base;
        if (a.grid == "aq-ao0") {
            p.A_Q = cell.x;
            p.A_O0 = cell.y;
        } else {
            p.beta = cell.x;
            p.xi = cell.y;
        }
        cell.coercive = validate_params(p, prob.geometry).coercive();
        try {
            const GalerkinSolution sol = solve_galerkin_full(prob, m, p, c.options(), true);
            cell.L2 = error_norms(sol.field, prob, {NormKind::L2}).at(NormKind::L2).rel;
            if (a.kappa) cell.kappa = cond2_estimate(sol.B, sol.factors).kappa;
        } catch (const SingularMatrixError& e) {
            spdlog::warn("grid point ({}, {}) singular: {}", cell.x, cell.y, e.what());
        }
    });
    Csv csv(c.out);
    if (a.grid == "aq-ao0")
        csv.header({"AQ", "AO0", "L2errors", "Kconds", "coercive"});
    else
        csv.header({"beta", "xi", "L2errors", "Kconds", "coercive"});
    for (const Cell& cell : cells)
        csv.row({num(cell.x), num(cell.y), num(cell.L2), num(cell.kappa), cell.coercive ? "true" : "false"});
    return ok;
}

struct CflArgs {
    std::size_t nt = 8;
    std::vector<std::size_t> nx;
};

int cmd_cfl(const Common& c, const CflArgs& a)
{
    const auto Nx = need_list(a.nx, "--nx-list");
    if (a.nt == 0) throw UsageError("--nt must be positive");
    const ProblemSpec prob = load_problem(c.problem);
    prob.require_exact();
    const FormulationParams p = c.params(prob);
    report_validation(p, prob.geometry);
    std::vector<Run> runs(Nx.size());
    parallel_for(Nx.size(), c.jobs, [&](std::size_t i) { runs[i] = run_mesh(prob, p, Nx[i], a.nt, c.options(), false, false); });
    Csv csv(c.out);
    csv.header({"Nx", "Nt", "Hx", "Ht", "HtOverHx", "L2errors", "H1errors", "Verrors"});
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const Run& r = runs[i];
        csv.row({std::to_string(Nx[i]), std::to_string(a.nt), num(r.Hx), num(r.Ht), num(r.Ht / r.Hx), num(r.L2),
                 num(r.H1), num(r.V)});
    }
    return ok;
}

struct EnergyArgs {
    std::size_t N = 32;
    std::size_t times = 768;
    std::vector<std::size_t> N_list;
    std::string out_convergence;
};

int cmd_energy(const Common& c, const EnergyArgs& a)
{
    if (a.N == 0 || a.times < 2) throw UsageError("--N must be positive and --times at least 2");
    const ProblemSpec prob = load_problem(c.problem);
    const ExactSolution& ex = prob.require_exact();
    const FormulationParams p = c.params(prob);
    report_validation(p, prob.geometry);
    const double T = prob.geometry.T();
    std::vector<double> ts(a.times), Eex(a.times);
    for (std::size_t k = 0; k < a.times; ++k) {
        ts[k] = T * static_cast<double>(k) / static_cast<double>(a.times - 1);
        Eex[k] = energy(ex.jet, prob.geometry, ts[k], prob.c);
    }
    const auto rel = [](double Eh, double E) { return E > 0.0 ? std::abs(Eh - E) / E : std::abs(Eh); };
    const auto errors = [&](const DiscreteField& u) {
        std::vector<double> e(a.times);
        for (std::size_t k = 0; k < a.times; ++k) e[k] = rel(energy(u, ts[k], prob.c), Eex[k]);
        return e;
    };
    {
        const Mesh m = build_mesh(prob.geometry, a.N, a.N);
        const std::vector<double> e = errors(solve_galerkin(prob, m, p, c.options(), true));
        Csv csv(c.out);
        csv.header({"Ts", "error"});
        for (std::size_t k = 0; k < a.times; ++k) csv.row({num(ts[k]), num(e[k])});
    }
    if (!a.out_convergence.empty()) {
        const auto Ns = need_list(a.N_list, "--N-list");
        struct Row {
            double H = 0, E = 0, V = 0;
        };
        std::vector<Row> rows(Ns.size());
        parallel_for(Ns.size(), c.jobs, [&](std::size_t i) {
            const Mesh m = build_mesh(prob.geometry, Ns[i], Ns[i]);
            const std::vector<double> e = errors(solve_galerkin(prob, m, p, c.options(), true));
            rows[i].H = m.h();
            rows[i].E = *std::max_element(e.begin(), e.end());
            rows[i].V = best_approximation(prob, m, natural_norm(prob.geometry), c.options()).error.rel;
        });
        Csv csv(a.out_convergence);
        csv.header({"H", "EnergyNormErrors", "VprojErrors"});
        for (const Row& r : rows) csv.row({num(r.H), num(r.E), num(r.V)});
    }
    return ok;
}

struct IdentityArgs {
    std::size_t count = 100;
    std::size_t degree = 4;
};

int cmd_identity_check(const Common& c, const IdentityArgs& a)
{
    if (a.count == 0) throw UsageError("--count must be positive");
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const auto poly = [&] {
        Polynomial2 q(a.degree, a.degree);
        for (std::size_t i = 0; i <= a.degree; ++i)
            for (std::size_t k = 0; i + k <= a.degree; ++k) q.coef(i, k) = 2.0 * U(rng) - 1.0;
        return q;
    };
    double worst = 0.0;
    for (std::size_t k = 0; k < a.count; ++k) {
        const Polynomial2 u = poly(), v = poly();
        FormulationParams p;
        p.xi = 0.1 + 2 * U(rng);
        p.beta = 0.1 + 4 * U(rng);
        p.nu = 1.1 + 2 * U(rng);
        p.c = 0.2 + 2 * U(rng);
        const double T = 0.5 + U(rng);
        worst = std::max(worst, pointwise_identity_residual(u, v, 2 * U(rng) - 1, T * U(rng), p, T).relative());
    }
    Csv csv(c.out);
    csv.header({"seed", "count", "max_relative_residual"});
    csv.row({std::to_string(c.seed), std::to_string(a.count), num(worst)});
    if (worst > 1e-10) throw AssertionFailure("identity residual " + num(worst) + " exceeds 1e-10");
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    init_logging();
    CLI::App app{"Coercive space-time Morawetz discretisation of the 1D wave equation"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);

    Common common;
    SolveArgs sa;
    ConvergeArgs ca;
    SweepArgs swa;
    CflArgs fa;
    EnergyArgs ea;
    IdentityArgs ia;

    auto* solve = app.add_subcommand("solve", "solve one problem on one mesh");
    common.bind(solve);
    solve->add_option("--nx", sa.nx, "cells in x")->capture_default_str()->check(CLI::PositiveNumber);
    solve->add_option("--nt", sa.nt, "cells in t")->capture_default_str()->check(CLI::PositiveNumber);
    solve->add_option("--dofs-out", sa.dofs_out, "CSV file for the solution coefficients");
    solve->add_flag("--kappa", sa.kappa, "estimate the 2-norm condition number");

    auto* conv = app.add_subcommand("converge", "errors and best approximations on N x N meshes");
    common.bind(conv);
    conv->add_option("--N", ca.N, "mesh sizes, e.g. 4,8,16")->delimiter(',')->required();
    conv->add_flag("--kappa", ca.kappa, "estimate condition numbers (Kconds column)");
    conv->add_option("--min-orders", ca.min_orders, "fail with exit 4 if L2,H1,V orders fall below")->delimiter(',');

    auto* sweep = app.add_subcommand("sweep", "log-grid sweep over (A_Q, A_O0) or (beta, xi)");
    common.bind(sweep);
    sweep->add_option("--grid", swa.grid, "aq-ao0 or beta-xi")->capture_default_str();
    sweep->add_option("--x-range", swa.x_range, "first parameter range lo,hi")->delimiter(',')->expected(2);
    sweep->add_option("--y-range", swa.y_range, "second parameter range lo,hi")->delimiter(',')->expected(2);
    sweep->add_option("--points", swa.points, "grid points per axis")->capture_default_str();
    sweep->add_option("--N", swa.N, "cells per direction")->capture_default_str()->check(CLI::PositiveNumber);
    sweep->add_flag("!--no-kappa", swa.kappa, "skip condition numbers");

    auto* cfl = app.add_subcommand("cfl", "fixed N_t, varying N_x");
    common.bind(cfl);
    cfl->add_option("--nt", fa.nt, "cells in t")->capture_default_str();
    cfl->add_option("--nx-list", fa.nx, "cells in x, e.g. 2,4,8")->delimiter(',')->required();

    auto* en = app.add_subcommand("energy", "relative energy error in time and its mesh convergence");
    common.bind(en);
    en->add_option("--N", ea.N, "cells per direction for the time series")->capture_default_str();
    en->add_option("--times", ea.times, "time samples")->capture_default_str();
    en->add_option("--N-list", ea.N_list, "mesh sizes for the convergence CSV")->delimiter(',');
    en->add_option("--out-convergence", ea.out_convergence, "CSV with H, EnergyNormErrors, VprojErrors");

    auto* id = app.add_subcommand("identity-check", "pointwise Morawetz identity on random polynomials");
    common.bind(id);
    id->add_option("--count", ia.count, "number of random pairs")->capture_default_str();
    id->add_option("--degree", ia.degree, "total polynomial degree")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int r = app.exit(e);
        return r == 0 ? ok : usage;
    }

    try {
        if (*solve) return cmd_solve(common, sa);
        if (*conv) return cmd_converge(common, ca);
        if (*sweep) return cmd_sweep(common, swa);
        if (*cfl) return cmd_cfl(common, fa);
        if (*en) return cmd_energy(common, ea);
        if (*id) return cmd_identity_check(common, ia);
    } catch (const UsageError& e) {
        spdlog::error("{}", e.what());
        return usage;
    } catch (const ConfigError& e) {
        spdlog::error("{}", e.what());
        return usage;
    } catch (const MissingExactSolution& e) {
        spdlog::error("{}", e.what());
        return usage;
    } catch (const SingularMatrixError& e) {
        spdlog::error("singular system: {}", e.what());
        return singular;
    } catch (const AssertionFailure& e) {
        spdlog::error("{}", e.what());
        return assertion;
    }
    return usage;
}
