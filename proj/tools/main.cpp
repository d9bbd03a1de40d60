#include "cliffsym/checks.hpp"
#include "cliffsym/cliffun.hpp"
#include "cliffsym/core.hpp"
#include "cliffsym/expr.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace cliffsym;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kDomain = 2, kConvergence = 3, kCheckFailed = 4 };

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::SyntaxError:
        case ErrorKind::NestedSym:
        case ErrorKind::IndexOutOfRange:
        case ErrorKind::UnknownSuite:
        case ErrorKind::InvalidArgument: return kUsage;
        case ErrorKind::Divergent:
        case ErrorKind::QuadratureNotConverged: return kConvergence;
        default: return kDomain;
    }
}

struct Options {
    int dim = 3;
    std::string engine = "auto";
    std::vector<std::string> lets;
    int quad_order = 16;
    double quad_tol = 1e-10;
    int contour_nodes = 64;
    std::uint64_t seed = 42;
    std::string output = "text";
};

EvalConfig eval_config(const Options& o) {
    EvalConfig cfg;
    cfg.dim = o.dim;
    cfg.engine = parse_engine(o.engine);
    cfg.quad = {o.quad_order, o.quad_tol, 8};
    for (const auto& let : o.lets) {
        auto eq = let.find('=');
        if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::InvalidArgument, "--let expects NAME=EXPR");
        std::string name = let.substr(0, eq);
        // Later bindings may refer to earlier ones.
        cfg.bindings[name] = eval_expr(*parse_expr(let.substr(eq + 1), o.dim), cfg);
    }
    return cfg;
}

MV eval_text(const std::string& s, const EvalConfig& cfg) { return eval_expr(*parse_expr(s, cfg.dim), cfg); }

json mv_json(const MV& a) {
    json terms = json::array();
    for (unsigned m = 0; m < a.size(); ++m)
        if (a[m] != 0.0) terms.push_back({{"blade", m == 0 ? std::string("1") : blade_name(m)}, {"coeff", a[m]}});
    return terms;
}

std::string read_stdin() {
    std::string s((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

std::string read_series(const std::string& text, const std::string& file) {
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + file);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    if (text.empty()) throw Error(ErrorKind::InvalidArgument, "a series is required (--series or --series-file)");
    return text;
}

void emit(const Options& o, const json& j, const std::string& text) {
    if (o.output == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

int cmd_eval(const Options& o, std::string input) {
    if (input.empty()) input = read_stdin();
    EvalConfig cfg = eval_config(o);
    EvalInfo info;
    MV r = eval_expr(*parse_expr(input, o.dim), cfg, &info);
    json j{{"result", mv_json(r)}, {"text", format_mv(r)}, {"dim", o.dim}, {"engines", info.engines}};
    j["error_estimate"] = info.quadrature ? json(info.error_estimate) : json(nullptr);
    std::string text = format_mv(r) + "\n";
    if (!info.engines.empty()) {
        text += "engine:";
        for (const auto& e : info.engines) text += " " + e;
        text += "\n";
    }
    if (info.quadrature) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "error estimate: %.3g\n", info.error_estimate);
        text += buf;
    }
    emit(o, j, text);
    return kOk;
}

int cmd_parse(const Options& o, std::string input) {
    if (input.empty()) input = read_stdin();
    std::string out = print_expr(*parse_expr(input, o.dim));
    emit(o, json{{"canonical", out}}, out + "\n");
    return kOk;
}

int cmd_check(const Options& o, const std::string& suite) {
    RunConfig cfg;
    cfg.dim = o.dim;
    cfg.engine = parse_engine(o.engine);
    cfg.quad_order = o.quad_order;
    cfg.quad_tol = o.quad_tol;
    cfg.contour_nodes = o.contour_nodes;
    cfg.seed = o.seed;
    std::vector<std::string> names;
    if (suite == "all")
        names = suite_names();
    else
        names = {suite};
    json arr = json::array();
    std::string text;
    bool all_pass = true;
    int cases = 0, failures = 0;
    for (const auto& name : names) {
        auto t0 = std::chrono::steady_clock::now();
        SuiteReport r = run_suite(name, cfg);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        all_pass = all_pass && r.pass();
        cases += r.cases;
        failures += r.failures;
        char buf[256];
        std::snprintf(buf, sizeof buf, "%-10s %s  cases=%d failures=%d max_residual=%.3g tol=%.3g time=%.2fs\n",
                      r.name.c_str(), r.pass() ? "PASS" : "FAIL", r.cases, r.failures, r.max_residual, r.tolerance,
                      secs);
        text += buf;
        for (const auto& note : r.notes) text += "           note: " + note + "\n";
        arr.push_back({{"suite", r.name},
                       {"pass", r.pass()},
                       {"cases", r.cases},
                       {"failures", r.failures},
                       {"max_residual", r.max_residual},
                       {"tolerance", r.tolerance},
                       {"seconds", secs},
                       {"notes", r.notes}});
    }
    text += std::string(all_pass ? "PASS" : "FAIL") + "  suites=" + std::to_string(names.size()) +
            " cases=" + std::to_string(cases) + " failures=" + std::to_string(failures) + "\n";
    emit(o, json{{"pass", all_pass}, {"suites", arr}, {"seed", o.seed}, {"dim", o.dim}}, text);
    return all_pass ? kOk : kCheckFailed;
}

int cmd_taylor(const Options& o, const std::string& series, const std::string& file, const std::string& at,
               const std::string& dir, int order) {
    EvalConfig cfg = eval_config(o);
    ScalarCoeffSeries f = ScalarCoeffSeries::parse(read_series(series, file), o.dim);
    MV a = eval_text(at, cfg), x = eval_text(dir, cfg);
    std::vector<MV> sums = taylor_partial_sums(f, a, x, order);
    MV direct = f.eval(a + x);
    json partial = json::array();
    for (const auto& s : sums) partial.push_back(format_mv(s));
    double diff = max_abs_diff(sums.back(), direct);
    json j{{"result", mv_json(sums.back())}, {"text", format_mv(sums.back())}, {"direct", format_mv(direct)},
           {"difference", diff}, {"partial_sums", partial}};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", diff);
    emit(o, j, format_mv(sums.back()) + "\ndirect: " + format_mv(direct) + "\ndifference: " + buf + "\n");
    return kOk;
}

int cmd_interp(const Options& o, const std::vector<std::string>& nodes, const std::vector<std::string>& values,
               const std::vector<std::string>& at) {
    EvalConfig cfg = eval_config(o);
    if (nodes.size() != values.size()) throw Error(ErrorKind::InvalidArgument, "--node and --value counts differ");
    std::vector<MV> xs, as;
    for (const auto& s : nodes) xs.push_back(eval_text(s, cfg));
    for (const auto& s : values) as.push_back(eval_text(s, cfg));
    auto P = lagrange_interpolate(xs, as, cfg.quad);
    json arr = json::array();
    std::string text;
    for (const auto& s : at) {
        MV v = P(eval_text(s, cfg));
        arr.push_back({{"at", s}, {"result", mv_json(v)}, {"text", format_mv(v)}, {"error_estimate", P.error_estimate()}});
        text += format_mv(v) + "\n";
    }
    emit(o, json{{"values", arr}}, text);
    return kOk;
}

int cmd_morera(const Options& o, const std::string& series, const std::string& file, const std::string& v,
               const std::vector<double>& rect) {
    EvalConfig cfg = eval_config(o);
    if (rect.size() != 4) throw Error(ErrorKind::InvalidArgument, "--rect expects x0_lo,x0_hi,y_lo,y_hi");
    ScalarCoeffSeries f = ScalarCoeffSeries::parse(read_series(series, file), o.dim);
    MV r = morera_integral(f, eval_text(v, cfg), Rect{rect[0], rect[1], rect[2], rect[3]});
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", max_abs(r));
    emit(o, json{{"result", mv_json(r)}, {"text", format_mv(r)}, {"max_abs", max_abs(r)}},
         format_mv(r) + "\nmax abs: " + buf + "\n");
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symmetric products in real Clifford algebras"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--dim,-n", o.dim, "algebra dimension n of R_{0,n}")->check(CLI::Range(0, kMaxDim));
    app.add_option("--engine", o.engine, "auto, bruteforce, multiset or polarization");
    app.add_option("--let", o.lets, "bind NAME=EXPR (repeatable)");
    app.add_option("--quad-order", o.quad_order, "base Gauss order per axis")->check(CLI::Range(2, 64));
    app.add_option("--quad-tol", o.quad_tol, "quadrature tolerance")->check(CLI::PositiveNumber);
    app.add_option("--contour-nodes", o.contour_nodes, "trapezoid nodes per contour")->check(CLI::Range(4, 1 << 16));
    app.add_option("--seed", o.seed, "seed for random cases");
    app.add_option("--output", o.output, "text or json")->check(CLI::IsMember({"text", "json"}));

    std::string expr, suite, series, series_file, at = "1", dir = "0", vdir = "e1";
    std::vector<std::string> nodes, values, points;
    std::vector<double> rect;
    int order = 8;

    auto* eval = app.add_subcommand("eval", "evaluate an expression (stdin when omitted)");
    eval->add_option("expr", expr);
    auto* parse = app.add_subcommand("parse", "print the canonical form of an expression");
    parse->add_option("expr", expr);
    auto* check = app.add_subcommand("check", "run an identity suite or 'all'");
    check->add_option("suite", suite)->required();
    auto* taylor = app.add_subcommand("taylor", "expand a coefficient series about a point");
    taylor->add_option("--series", series, "coefficient lines 'c a0..an value' / 'd b0..bn value', ';' separated");
    taylor->add_option("--series-file", series_file);
    taylor->add_option("--at", at, "expansion point a");
    taylor->add_option("--dir", dir, "increment x");
    taylor->add_option("--order", order, "truncation order K")->check(CLI::Range(0, 200));
    auto* interp = app.add_subcommand("interp", "Lagrange interpolation through paravector nodes");
    interp->add_option("--node", nodes)->required();
    interp->add_option("--value", values)->required();
    interp->add_option("--at", points)->required();
    auto* morera = app.add_subcommand("morera", "loop integral over a rectangle in span{1, v}");
    morera->add_option("--series", series);
    morera->add_option("--series-file", series_file);
    morera->add_option("--v", vdir, "unit vector v");
    morera->add_option("--rect", rect, "x0_lo,x0_hi,y_lo,y_hi")->delimiter(',')->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*eval) return cmd_eval(o, expr);
        if (*parse) return cmd_parse(o, expr);
        if (*check) return cmd_check(o, suite);
        if (*taylor) return cmd_taylor(o, series, series_file, at, dir, order);
        if (*interp) return cmd_interp(o, nodes, values, points);
        if (*morera) return cmd_morera(o, series, series_file, vdir, rect);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
