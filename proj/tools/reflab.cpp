// reflab: batch CLI over the library. JSON problem files in, CSV/JSON out,
// plus a run manifest. Exit codes: 0 ok, 2 validation, 3 numeric failure,
// 4 property-check failure.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reflab/algebra.hpp"
#include "reflab/errors.hpp"
#include "reflab/filter.hpp"
#include "reflab/io.hpp"
#include "reflab/mahler.hpp"
#include "reflab/numeric.hpp"
#include "reflab/orbit.hpp"
#include "reflab/polynomial.hpp"
#include "reflab/quasilattice.hpp"
#include "reflab/refinable.hpp"

using json = nlohmann::json;
using namespace reflab;

namespace {

struct RunState {
    std::string command;
    std::vector<std::string> argv;
    std::string problem_path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
    double tolerance = 1e-10;
    bool tolerance_set = false;
    json problem;  // null when no problem file
    json extras = json::object();
};

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) fail(ErrorCode::BadInput, "unknown field '" + it.key() + "' in " + where);
    }
}

IntPolynomial minpoly_from_json(const json& j) {
    std::vector<BigInt> low;
    if (j.is_string()) {
        std::vector<BigInt> c = parse_poly_string(j.get<std::string>());
        if (c.back() != 1)
            fail(ErrorCode::BadInput, "minimal polynomial must be monic");
        c.pop_back();
        low = std::move(c);
    } else if (j.is_array()) {
        for (const auto& e : j) {
            if (!e.is_number_integer())
                fail(ErrorCode::BadInput, "minimal polynomial entries must be integers");
            low.emplace_back(e.get<long long>());
        }
    } else if (j.is_object()) {
        reject_unknown(j, {"minpoly"}, "context");
        return minpoly_from_json(j.at("minpoly"));
    } else {
        fail(ErrorCode::BadInput, "minimal polynomial must be a string or integer array");
    }
    return validate_min_poly(low);
}

Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(BigInt(j.get<long long>()));
    if (j.is_number_float()) return rational_from_double(j.get<double>());
    fail(ErrorCode::BadInput, "expected a rational (integer, float, or \"p/q\")");
}

Complex complex_from_json(const json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    fail(ErrorCode::BadInput, "expected a number or [re, im] pair");
}

Filter filter_from_json(const json& j, std::shared_ptr<const AlgebraicContext> ctx) {
    if (!j.is_object()) fail(ErrorCode::BadInput, "filter must be an object");
    reject_unknown(j, {"lambda", "coeffs", "translations", "basis"}, "filter");
    if (!j.contains("lambda") || !j.contains("coeffs") || !j.contains("translations"))
        fail(ErrorCode::BadInput, "filter needs lambda, coeffs, and translations");

    double lambda;
    const json& jl = j.at("lambda");
    if (jl.is_number()) {
        lambda = jl.get<double>();
    } else if (jl.is_object()) {
        reject_unknown(jl, {"minpoly", "value"}, "filter.lambda");
        auto built = std::make_shared<AlgebraicContext>(
            build_context(minpoly_from_json(jl.at("minpoly"))));
        lambda = built->lambda1();
        if (jl.contains("value")) {
            double v = jl.at("value").get<double>();
            if (std::abs(v - lambda) > 1e-6 * std::max(1.0, std::abs(v)))
                fail(ErrorCode::BadInput, "lambda value disagrees with the minimal polynomial");
        }
        ctx = built;
    } else {
        fail(ErrorCode::BadInput, "lambda must be a number or {minpoly, value}");
    }

    std::vector<Complex> coeffs;
    for (const auto& e : j.at("coeffs")) coeffs.push_back(complex_from_json(e));

    std::vector<Translation> trans;
    for (const auto& e : j.at("translations")) {
        if (e.is_number()) {
            trans.push_back(Translation::real(e.get<double>()));
        } else if (e.is_object() && e.contains("zlambda")) {
            reject_unknown(e, {"zlambda"}, "translation");
            std::vector<BigInt> c;
            for (const auto& x : e.at("zlambda")) {
                if (!x.is_number_integer())
                    fail(ErrorCode::BadInput, "zlambda coordinates must be integers");
                c.emplace_back(x.get<long long>());
            }
            trans.push_back(Translation::zl(std::move(c)));
        } else if (e.is_object() && e.contains("coords")) {
            reject_unknown(e, {"coords"}, "translation");
            std::vector<Rational> c;
            for (const auto& x : e.at("coords")) c.push_back(rational_from_json(x));
            trans.push_back(Translation::basis_coords(std::move(c)));
        } else {
            fail(ErrorCode::BadInput,
                 "translation must be a number, {zlambda: [...]}, or {coords: [...]}");
        }
    }

    std::vector<double> basis;
    if (j.contains("basis"))
        for (const auto& e : j.at("basis")) basis.push_back(e.get<double>());

    return make_filter(lambda, std::move(coeffs), std::move(trans), std::move(basis),
                       std::move(ctx));
}

std::vector<double> grid_from_json(const json& j, const char* what) {
    std::vector<double> g;
    if (j.is_array()) {
        for (const auto& e : j) g.push_back(e.get<double>());
    } else if (j.is_object()) {
        reject_unknown(j, {"min", "max", "count"}, what);
        double lo = j.at("min").get<double>(), hi = j.at("max").get<double>();
        std::int64_t n = j.at("count").get<std::int64_t>();
        if (n < 2) fail(ErrorCode::BadInput, std::string(what) + ".count must be >= 2");
        for (std::int64_t i = 0; i < n; ++i)
            g.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    } else {
        fail(ErrorCode::BadInput, std::string(what) + " must be an array or {min,max,count}");
    }
    return g;
}

// --- problem access helpers -------------------------------------------------

const json kNull;

const json& problem_task(const RunState& rs) {
    if (rs.problem.is_null() || !rs.problem.contains("task")) return kNull;
    return rs.problem.at("task");
}

std::shared_ptr<const AlgebraicContext> problem_context(const RunState& rs) {
    if (rs.problem.is_null() || !rs.problem.contains("context")) return nullptr;
    return std::make_shared<AlgebraicContext>(
        build_context(minpoly_from_json(rs.problem.at("context"))));
}

std::optional<Filter> problem_filter(const RunState& rs,
                                     std::shared_ptr<const AlgebraicContext> ctx) {
    if (rs.problem.is_null() || !rs.problem.contains("filter")) return std::nullopt;
    return filter_from_json(rs.problem.at("filter"), std::move(ctx));
}

void validate_problem_shape(const RunState& rs) {
    if (rs.problem.is_null()) return;
    if (!rs.problem.is_object()) fail(ErrorCode::BadInput, "problem file must be an object");
    reject_unknown(rs.problem, {"context", "filter", "task", "seed"}, "problem file");
}

// --- output ------------------------------------------------------------------

std::string csv_mean_rows(const std::vector<MeanEstimate>& rows) {
    std::ostringstream os;
    os << "method,value,half_width,samples,clip\n";
    for (const auto& m : rows) {
        os << to_string(m.method) << ',' << fmt_g17(m.value) << ',' << fmt_g17(m.half_width)
           << ',' << m.samples << ',' << fmt_g17(m.clip) << '\n';
        if (m.clip > 0.0) {
            os << to_string(m.method) << ',' << fmt_g17(m.value_unclipped) << ','
               << fmt_g17(m.half_width) << ',' << m.samples << ',' << fmt_g17(1e-300) << '\n';
        }
    }
    return os.str();
}

void emit(RunState& rs, const std::string& text, double seconds) {
    if (rs.out_path.empty()) {
        std::cout << text;
    } else {
        write_file(rs.out_path, text);
    }
    json manifest;
    manifest["command"] = rs.command;
    manifest["argv"] = rs.argv;
    manifest["problem"] = rs.problem;
    manifest["seed"] = rs.seed;
    manifest["threads"] = rs.threads;
    manifest["versions"] = {{"reflab", kVersion}};
    manifest["timings"] = {{"total_seconds", seconds}};
    manifest["extras"] = rs.extras;
    std::string mpath =
        rs.out_path.empty() ? "reflab_manifest.json" : rs.out_path + ".manifest.json";
    write_file(mpath, manifest.dump(2) + "\n");
}

json roots_to_json(const std::vector<Complex>& roots) {
    json a = json::array();
    for (const auto& r : roots) a.push_back({r.real(), r.imag()});
    return a;
}

// --- subcommand bodies -------------------------------------------------------

std::string run_context(RunState& rs, const std::string& minpoly_arg) {
    IntPolynomial p;
    if (!minpoly_arg.empty()) {
        json s = minpoly_arg;
        p = minpoly_from_json(s);
    } else if (!rs.problem.is_null() && rs.problem.contains("context")) {
        p = minpoly_from_json(rs.problem.at("context"));
    } else {
        fail(ErrorCode::BadInput, "context needs --minpoly or a problem file");
    }
    AlgebraicContext ctx = build_context(p);
    const int n = ctx.degree();

    json out;
    out["degree"] = n;
    out["classification"] = to_string(ctx.classification);
    out["lambda"] = fmt_g17(ctx.lambda1());
    out["roots"] = roots_to_json(ctx.roots);
    json gram = json::array(), comp = json::array();
    for (int i = 0; i < n; ++i) {
        json gr = json::array(), cr = json::array();
        for (int j = 0; j < n; ++j) {
            gr.push_back(ctx.gram[i][j].str());
            cr.push_back(ctx.companion[i][j].str());
        }
        gram.push_back(gr);
        comp.push_back(cr);
    }
    out["gram"] = gram;
    out["companion"] = comp;
    std::vector<std::vector<Rational>> G(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G[i][j] = Rational(ctx.gram[i][j]);
    out["det_gram"] = num(det_rational(G)).str();
    return out.dump(2) + "\n";
}

std::string run_mahler(RunState& rs, const std::string& poly_arg) {
    const json& task = problem_task(rs);
    if (!task.is_null())
        reject_unknown(task, {"poly", "torus_samples", "clip", "boyd_lawton"}, "task");

    std::vector<MeanEstimate> rows;
    if (!poly_arg.empty() || (!task.is_null() && task.contains("poly"))) {
        json jp = !poly_arg.empty() ? json(poly_arg) : task.at("poly");
        std::vector<Complex> coeffs;
        if (jp.is_string()) {
            for (const auto& c : parse_poly_string(jp.get<std::string>()))
                coeffs.emplace_back(to_double(c), 0.0);
        } else if (jp.is_array()) {
            for (const auto& e : jp) coeffs.push_back(complex_from_json(e));
        } else {
            fail(ErrorCode::BadInput, "poly must be a string or coefficient array");
        }
        rows.push_back(mahler_jensen(coeffs));
    } else {
        auto ctx = problem_context(rs);
        auto f = problem_filter(rs, ctx);
        if (!f) fail(ErrorCode::BadInput, "mahler needs a polynomial or a filter");
        TrigPolynomial P = to_trig_poly(*f);
        if (!task.is_null() && task.contains("boyd_lawton")) {
            std::vector<int> Ns;
            for (const auto& e : task.at("boyd_lawton")) Ns.push_back(e.get<int>());
            for (auto& m : boyd_lawton_sequence(P, Ns)) rows.push_back(m);
        } else {
            std::int64_t samples = 1 << 16;
            double clip = 1e-8;
            if (!task.is_null() && task.contains("torus_samples"))
                samples = task.at("torus_samples").get<std::int64_t>();
            if (!task.is_null() && task.contains("clip")) clip = task.at("clip").get<double>();
            rows.push_back(mahler_torus_mean(P, samples, clip, rs.seed));
        }
    }
    return csv_mean_rows(rows);
}

std::string run_filter_mean(RunState& rs) {
    const json& task = problem_task(rs);
    if (!task.is_null()) reject_unknown(task, {"schedule", "torus_samples", "clip"}, "task");
    auto ctx = problem_context(rs);
    auto f = problem_filter(rs, ctx);
    if (!f) fail(ErrorCode::BadInput, "filter-mean needs a filter");

    std::vector<double> schedule = {1e3, 1e4, 1e5};
    if (!task.is_null() && task.contains("schedule"))
        schedule = grid_from_json(task.at("schedule"), "schedule");

    std::vector<MeanEstimate> rows;
    rows.push_back(bohr_mean_log_modulus(*f, schedule));
    if (!task.is_null() && task.contains("torus_samples")) {
        double clip = task.contains("clip") ? task.at("clip").get<double>() : 1e-8;
        TrigPolynomial P = to_trig_poly(*f);
        rows.push_back(
            mahler_torus_mean(P, task.at("torus_samples").get<std::int64_t>(), clip, rs.seed));
        rs.extras["line_minus_ln_torus"] =
            fmt_g17(rows[0].value - std::log(rows[1].value));
    }
    return csv_mean_rows(rows);
}

std::string run_sublevel(RunState& rs) {
    const json& task = problem_task(rs);
    if (!task.is_null()) reject_unknown(task, {"L", "v_list", "grid"}, "task");
    auto ctx = problem_context(rs);
    auto f = problem_filter(rs, ctx);
    if (!f) fail(ErrorCode::BadInput, "sublevel needs a filter");
    if (task.is_null() || !task.contains("L") || !task.contains("v_list"))
        fail(ErrorCode::BadInput, "sublevel needs task.L and task.v_list");
    double L = task.at("L").get<double>();
    std::vector<double> v = grid_from_json(task.at("v_list"), "v_list");
    std::int64_t grid = task.contains("grid") ? task.at("grid").get<std::int64_t>() : 200000;

    std::ostringstream os;
    os << "v,measure\n";
    for (const auto& [vv, m] : sublevel_measure(*f, L, v, grid))
        os << fmt_g17(vv) << ',' << fmt_g17(m) << '\n';
    return os.str();
}

RefinableEvaluator evaluator_for(RunState& rs, const Filter& f, const json& task) {
    double tail = rs.tolerance_set ? rs.tolerance : 1e-10;
    int kmin = 8;
    if (!task.is_null() && task.contains("tail_eps")) tail = task.at("tail_eps").get<double>();
    if (!task.is_null() && task.contains("k_min")) kmin = task.at("k_min").get<int>();
    return make_evaluator(f, tail, kmin);
}

std::string run_fhat(RunState& rs) {
    const json& task = problem_task(rs);
    if (!task.is_null()) reject_unknown(task, {"y_grid", "tail_eps", "k_min"}, "task");
    auto ctx = problem_context(rs);
    auto f = problem_filter(rs, ctx);
    if (!f) fail(ErrorCode::BadInput, "fhat needs a filter");
    if (task.is_null() || !task.contains("y_grid"))
        fail(ErrorCode::BadInput, "fhat needs task.y_grid");
    RefinableEvaluator e = evaluator_for(rs, *f, task);

    std::ostringstream os;
    os << "y,re,im\n";
    for (double y : grid_from_json(task.at("y_grid"), "y_grid")) {
        Complex v = eval_fhat(e, y);
        os << fmt_g17(y) << ',' << fmt_g17(v.real()) << ',' << fmt_g17(v.imag()) << '\n';
    }
    return os.str();
}

std::string run_rho(RunState& rs) {
    const json& task = problem_task(rs);
    if (!task.is_null())
        reject_unknown(task, {"L_grid", "panels_per_unit", "tail_eps", "k_min"}, "task");
    auto ctx = problem_context(rs);
    auto f = problem_filter(rs, ctx);
    if (!f) fail(ErrorCode::BadInput, "rho needs a filter");
    RefinableEvaluator e = evaluator_for(rs, *f, task);

    std::vector<double> L_grid = {1e3, 1e4, 1e5, 1e6};
    int ppu = 32;
    if (!task.is_null() && task.contains("L_grid"))
        L_grid = grid_from_json(task.at("L_grid"), "L_grid");
    if (!task.is_null() && task.contains("panels_per_unit"))
        ppu = task.at("panels_per_unit").get<int>();

    RhoReport rep = estimate_rho(e, L_grid, ppu);
    rs.extras["rho_numeric"] = fmt_g17(rep.rho_numeric);
    rs.extras["rho_closed"] = fmt_g17(rep.rho_closed);

    std::ostringstream os;
    os << "L,mean,rho_fit,rho_closed,residual\n";
    for (std::size_t i = 0; i < rep.L_grid.size(); ++i)
        os << fmt_g17(rep.L_grid[i]) << ',' << fmt_g17(rep.raw_means[i]) << ','
           << fmt_g17(rep.rho_numeric) << ',' << fmt_g17(rep.rho_closed) << ','
           << fmt_g17(rep.extrapolation_residual) << '\n';
    return os.str();
}

std::string run_scaling(RunState& rs) {
    const json& task = problem_task(rs);
    if (!task.is_null())
        reject_unknown(task, {"alpha", "q", "k_max", "tail_eps", "k_min"}, "task");
    auto ctx = problem_context(rs);
    auto f = problem_filter(rs, ctx);
    if (!f) fail(ErrorCode::BadInput, "scaling needs a filter");
    RefinableEvaluator e = evaluator_for(rs, *f, task);

    double alpha;
    if (!task.is_null() && task.contains("alpha")) {
        alpha = task.at("alpha").get<double>();
    } else if (!task.is_null() && task.contains("q")) {
        auto c = f->ctx ? f->ctx : ctx;
        if (!c) fail(ErrorCode::BadInput, "task.q needs an algebraic context");
        std::vector<Rational> q;
        for (const auto& x : task.at("q")) q.push_back(rational_from_json(x));
        alpha = alpha_from_rational_vector(*c, q).alpha;
    } else {
        fail(ErrorCode::BadInput, "scaling needs task.alpha or task.q");
    }
    int k_max = !task.is_null() && task.contains("k_max") ? task.at("k_max").get<int>() : 40;

    std::ostringstream os;
    os << "k,fhat_abs,ratio\n";
    for (const auto& row : scaling_sequence(e, alpha, k_max))
        os << row.k << ',' << fmt_g17(std::abs(row.fhat)) << ',' << fmt_g17(row.ratio) << '\n';
    return os.str();
}

std::string run_orbit(RunState& rs, const std::string& minpoly_arg, const std::string& q_arg) {
    const json& task = problem_task(rs);
    if (!task.is_null()) reject_unknown(task, {"q"}, "task");

    std::shared_ptr<const AlgebraicContext> ctx;
    if (!minpoly_arg.empty()) {
        ctx = std::make_shared<AlgebraicContext>(build_context(minpoly_from_json(json(minpoly_arg))));
    } else {
        ctx = problem_context(rs);
    }
    if (!ctx) fail(ErrorCode::BadInput, "orbit needs --minpoly or a problem context");

    std::vector<Rational> q;
    if (!q_arg.empty()) {
        std::istringstream ss(q_arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) q.push_back(parse_rational(tok));
    } else if (!task.is_null() && task.contains("q")) {
        for (const auto& x : task.at("q")) q.push_back(rational_from_json(x));
    } else {
        fail(ErrorCode::BadInput, "orbit needs --q or task.q");
    }

    OrbitResult orb = torus_orbit(*ctx, q);
    Filter f = problem_filter(rs, ctx).value_or(bernoulli_filter(ctx));
    double mean = cycle_mean_log(to_trig_poly(f), orb);
    double llam = std::log(std::abs(ctx->lambda1()));

    json out;
    out["preperiod"] = orb.preperiod;
    out["period"] = orb.period;
    out["alpha"] = fmt_g17(orb.alpha);
    out["cycle_mean_log"] = fmt_g17(mean);
    out["limit"] = fmt_g17(mean / llam);
    return out.dump(2) + "\n";
}

AdmissibleVector sigma_from_task(const AlgebraicContext& ctx, const json& task) {
    if (task.is_null() || !task.contains("sigma"))
        fail(ErrorCode::BadInput, "need task.sigma");
    std::vector<double> s;
    for (const auto& e : task.at("sigma")) s.push_back(e.get<double>());
    return make_admissible(ctx, std::move(s));
}

std::string run_lattice(RunState& rs) {
    const json& task = problem_task(rs);
    if (!task.is_null()) reject_unknown(task, {"sigma", "L"}, "task");
    auto ctx = problem_context(rs);
    if (!ctx) fail(ErrorCode::BadInput, "lattice needs a problem context");
    if (task.is_null() || !task.contains("L")) fail(ErrorCode::BadInput, "need task.L");

    QuasilatticeWindow w =
        enumerate_window(*ctx, sigma_from_task(*ctx, task), task.at("L").get<double>());
    if (w.points.size() >= 2) {
        WindowStats st = window_stats(w);
        rs.extras["count"] = st.count;
        rs.extras["min_gap"] = fmt_g17(st.min_gap);
        rs.extras["max_gap"] = fmt_g17(st.max_gap);
    }

    std::ostringstream os;
    os << "value";
    for (int i = 0; i < ctx->degree(); ++i) os << ",l_" << i + 1;
    os << '\n';
    for (const auto& p : w.points) {
        os << fmt_g17(p.value);
        for (const auto& c : p.coords) os << ',' << c.str();
        os << '\n';
    }
    return os.str();
}

std::string run_multiscale(RunState& rs) {
    const json& task = problem_task(rs);
    if (!task.is_null()) reject_unknown(task, {"sigma", "L"}, "task");
    auto ctx = problem_context(rs);
    if (!ctx) fail(ErrorCode::BadInput, "multiscale needs a problem context");
    auto f = problem_filter(rs, ctx);
    if (!f) fail(ErrorCode::BadInput, "multiscale needs a filter");
    if (task.is_null() || !task.contains("L")) fail(ErrorCode::BadInput, "need task.L");
    AdmissibleVector sigma = sigma_from_task(*ctx, task);
    double L = task.at("L").get<double>();

    SelfSimilarityReport ss = check_self_similarity(*ctx, sigma, L);
    MultiscaleReport ms = multiscale_check(*ctx, sigma, *f, L);

    json out;
    out["self_similarity"] = {{"equal", ss.equal},
                              {"left_count", ss.left_count},
                              {"right_count", ss.right_count},
                              {"detail", ss.detail}};
    json xi = json::array();
    for (double x : ms.xi) xi.push_back(x);
    out["multiscale"] = {
        {"xi", xi}, {"checked", ms.checked}, {"ok", ms.ok}, {"detail", ms.detail}};
    return out.dump(2) + "\n";
}

std::string run_diffraction(RunState& rs) {
    const json& task = problem_task(rs);
    if (!task.is_null()) reject_unknown(task, {"sigma", "L", "y_grid"}, "task");
    auto ctx = problem_context(rs);
    if (!ctx) fail(ErrorCode::BadInput, "diffraction needs a problem context");
    if (task.is_null() || !task.contains("L") || !task.contains("y_grid"))
        fail(ErrorCode::BadInput, "need task.L and task.y_grid");

    QuasilatticeWindow w =
        enumerate_window(*ctx, sigma_from_task(*ctx, task), task.at("L").get<double>());
    std::ostringstream os;
    os << "y,abs_S\n";
    for (const auto& [y, s] :
         diffraction_sample(w, grid_from_json(task.at("y_grid"), "y_grid")))
        os << fmt_g17(y) << ',' << fmt_g17(s) << '\n';
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    RunState rs;
    for (int i = 0; i < argc; ++i) rs.argv.emplace_back(argv[i]);

    CLI::App app{"Mahler measures, refinable transforms, and PV quasilattices"};
    app.require_subcommand(1);

    std::string minpoly_arg, poly_arg, q_arg;
    app.add_option("--problem", rs.problem_path, "JSON problem file");
    app.add_option("--out", rs.out_path, "output path (default stdout)");
    auto* seed_opt = app.add_option("--seed", rs.seed, "seed for randomized batches");
    app.add_option("--threads", rs.threads, "worker threads (0 = hardware)");
    auto* tol_opt = app.add_option("--tolerance", rs.tolerance, "truncation tolerance");
    app.fallthrough();

    CLI::App* c_context = app.add_subcommand("context", "roots, Gram matrix, classification");
    c_context->add_option("--minpoly", minpoly_arg, "e.g. \"z^2-z-1\"");
    CLI::App* c_mahler = app.add_subcommand("mahler", "Mahler measures");
    c_mahler->add_option("--poly", poly_arg, "univariate polynomial");
    CLI::App* c_fmean = app.add_subcommand("filter-mean", "line mean of ln|A|");
    CLI::App* c_sub = app.add_subcommand("sublevel", "measure of {|A| <= v}");
    CLI::App* c_fhat = app.add_subcommand("fhat", "transform values");
    CLI::App* c_rho = app.add_subcommand("rho", "decay exponent fit");
    CLI::App* c_scaling = app.add_subcommand("scaling", "fhat along alpha lambda^k");
    CLI::App* c_orbit = app.add_subcommand("orbit", "exact torus orbit");
    c_orbit->add_option("--minpoly", minpoly_arg, "e.g. \"z^2-z-1\"");
    c_orbit->add_option("--q", q_arg, "rational seed, e.g. 1/3,0");
    CLI::App* c_lattice = app.add_subcommand("lattice", "enumerate a window");
    CLI::App* c_multi = app.add_subcommand("multiscale", "nesting checks");
    CLI::App* c_diff = app.add_subcommand("diffraction", "exponential sums");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    try {
        if (rs.threads == 0) {
            if (const char* env = std::getenv("REFLAB_THREADS")) rs.threads = std::atoi(env);
        }
        set_max_threads(rs.threads);
        rs.tolerance_set = tol_opt->count() > 0;
        rs.seed_set = seed_opt->count() > 0;

        if (!rs.problem_path.empty()) rs.problem = json::parse(read_file(rs.problem_path));
        validate_problem_shape(rs);
        if (!rs.seed_set && !rs.problem.is_null() && rs.problem.contains("seed"))
            rs.seed = rs.problem.at("seed").get<std::uint64_t>();

        std::string text;
        if (c_context->parsed()) {
            rs.command = "context";
            text = run_context(rs, minpoly_arg);
        } else if (c_mahler->parsed()) {
            rs.command = "mahler";
            text = run_mahler(rs, poly_arg);
        } else if (c_fmean->parsed()) {
            rs.command = "filter-mean";
            text = run_filter_mean(rs);
        } else if (c_sub->parsed()) {
            rs.command = "sublevel";
            text = run_sublevel(rs);
        } else if (c_fhat->parsed()) {
            rs.command = "fhat";
            text = run_fhat(rs);
        } else if (c_rho->parsed()) {
            rs.command = "rho";
            text = run_rho(rs);
        } else if (c_scaling->parsed()) {
            rs.command = "scaling";
            text = run_scaling(rs);
        } else if (c_orbit->parsed()) {
            rs.command = "orbit";
            text = run_orbit(rs, minpoly_arg, q_arg);
        } else if (c_lattice->parsed()) {
            rs.command = "lattice";
            text = run_lattice(rs);
        } else if (c_multi->parsed()) {
            rs.command = "multiscale";
            text = run_multiscale(rs);
        } else if (c_diff->parsed()) {
            rs.command = "diffraction";
            text = run_diffraction(rs);
        }

        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        emit(rs, text, secs);
        return 0;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        switch (e.category()) {
            case ErrorCategory::Validation: return 2;
            case ErrorCategory::Numeric: return 3;
            case ErrorCategory::PropertyFailure: return 4;
        }
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "BadInput: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
