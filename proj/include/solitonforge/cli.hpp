// Command-line surface. run() is a library function so tests can drive the
// tool in-process; tools/ wraps it in main().
//
// Exit codes: 0 success; 1 verification failed / system infeasible / oracle
// mismatch; 2 input error; 3 internal invariant violation.
#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "solitonforge/catalog.hpp"
#include "solitonforge/oracle.hpp"
#include "solitonforge/report.hpp"

namespace solitonforge {

namespace cli_detail {

struct LoadedModel {
    ModelDocument doc;
    std::string id;     // as given on the command line
    std::string source; // "builtin" or the file path
};

inline LoadedModel load_model(const std::string& arg) {
    namespace fs = std::filesystem;
    auto read_file = [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw InputError("cannot open model file: " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    auto parse_file = [&](const std::string& path) {
        try {
            return LoadedModel{parse_model(read_file(path)), arg, path};
        } catch (const ParseError& e) {
            throw InputError(path + ":" + e.what());
        }
    };
    bool looks_like_path = arg.find('/') != std::string::npos ||
                           (arg.size() > 6 && arg.compare(arg.size() - 6, 6, ".model") == 0);
    if (looks_like_path) return parse_file(arg);
    if (fs::exists(arg) && fs::is_regular_file(arg)) return parse_file(arg);
    if (const char* dir = std::getenv("SOLITON_FORGE_MODELS")) {
        fs::path candidate = fs::path(dir) / (arg + ".model");
        if (fs::exists(candidate)) return parse_file(candidate.string());
    }
    CatalogEntry e = catalog_get(arg); // throws UnknownEntry for bad ids
    return {std::move(e.doc), arg, "builtin"};
}

inline std::vector<std::pair<std::string, Rat>> parse_assignments(
    const std::vector<std::string>& items) {
    std::vector<std::pair<std::string, Rat>> out;
    for (const auto& item : items) {
        std::stringstream ss(item);
        std::string piece;
        while (std::getline(ss, piece, ',')) {
            if (piece.empty()) continue;
            auto eq = piece.find('=');
            if (eq == std::string::npos)
                throw InputError("parameter assignment must look like name=value: " + piece);
            out.emplace_back(piece.substr(0, eq), rat_from_string(piece.substr(eq + 1)));
        }
    }
    return out;
}

inline void describe_model(Report& rep, const LoadedModel& lm) {
    const auto& ctx = lm.doc.model.ctx();
    rep.add("model.id", lm.id);
    rep.add("model.source", lm.source);
    rep.add("model.hash", fnv1a_hex(format_model(lm.doc)));
    rep.add("model.dim", ctx->dim());
    std::string coords;
    for (const auto& c : ctx->coords()) coords += (coords.empty() ? "" : " ") + c;
    rep.add("model.coords", coords);
    std::string params;
    for (int i = 0; i < ctx->nparams(); ++i) {
        if (!params.empty()) params += " ";
        params += ctx->param_name(i);
        if (ctx->param_kind(i) == ParamKind::nonzero) params += ":nonzero";
        if (ctx->param_kind(i) == ParamKind::pm1) params += ":pm1";
    }
    rep.add("model.params", params);
}

// lambda argument: a scalar name declared in the model, or an expression
inline ParamScalar parse_lambda(const std::string& text, const ModelDocument& doc) {
    ExpPoly e;
    if (auto s = doc.find_scalar(text)) {
        e = *s;
    } else {
        e = parse_expr(text, doc.model.ctx());
    }
    if (e.is_zero()) return ParamScalar::zero(doc.model.ctx());
    if (e.terms().size() == 1 && e.terms()[0].key.is_unit()) return e.terms()[0].coeff;
    throw InputError("lambda must be a coordinate-free scalar: " + text);
}

inline VectorField lookup_field(const ModelDocument& doc, const std::string& name) {
    if (auto f = doc.find_field(name)) return *f;
    throw InputError("model declares no vector field named '" + name + "'");
}

} // namespace cli_detail

struct CliOptions {
    std::string model;
    std::string field;
    std::string lambda;
    std::vector<std::string> params;
    std::vector<std::string> pins;
    int degree = 2;
    int freq_depth = 2;
    int points = 100;
    std::uint64_t seed = 1;
    double step = 1e-4;
    std::string report_path;
    std::string catalog_id;
};

inline int cmd_curvature(const CliOptions& opt, Report& rep, std::ostream& out) {
    auto lm = cli_detail::load_model(opt.model);
    cli_detail::describe_model(rep, lm);
    const SpaceModel& m = lm.doc.model;
    int n = m.dim();

    Connection gam = christoffel(m);
    out << "Christoffel symbols (nonzero, Gamma^k_ij with i <= j):\n";
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                if (!gam.at(k, i, j).is_zero()) {
                    out << "  Gamma^" << k + 1 << "_" << i + 1 << "," << j + 1 << " = "
                        << gam.at(k, i, j).to_string() << "\n";
                    rep.add("curvature.gamma[" + std::to_string(k + 1) + "][" +
                                std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]",
                            gam.at(k, i, j).to_string());
                }
    CurvatureSlices R = riemann(m, gam);
    out << "Curvature operators R(d_i, d_j) (nonzero entries, rows l, cols k):\n";
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            ExpMatrix s = R.slice(i, j);
            for (int l = 0; l < n; ++l)
                for (int k = 0; k < n; ++k)
                    if (!s.at(l, k).is_zero()) {
                        out << "  R[" << i + 1 << "][" << j + 1 << "][" << l + 1 << "][" << k + 1
                            << "] = " << s.at(l, k).to_string() << "\n";
                        rep.add("curvature.R[" + std::to_string(i + 1) + "][" +
                                    std::to_string(j + 1) + "][" + std::to_string(l + 1) + "][" +
                                    std::to_string(k + 1) + "]",
                                s.at(l, k).to_string());
                    }
        }
    SymTensor rho = ricci(m, R);
    out << "Ricci tensor (nonzero entries):\n";
    bool any = false;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (!rho.at(i, j).is_zero()) {
                any = true;
                out << "  ricci[" << i + 1 << "][" << j + 1 << "] = " << rho.at(i, j).to_string()
                    << "\n";
                rep.add("curvature.ricci[" + std::to_string(i + 1) + "][" +
                            std::to_string(j + 1) + "]",
                        rho.at(i, j).to_string());
            }
    if (!any) out << "  (zero)\n";
    ExpPoly tau = scalar_curvature(m, rho);
    out << "Scalar curvature: " << tau.to_string() << "\n";
    rep.add("curvature.scalar", tau.to_string());
    return 0;
}

inline int cmd_verify(const CliOptions& opt, Report& rep, std::ostream& out) {
    auto lm = cli_detail::load_model(opt.model);
    cli_detail::describe_model(rep, lm);
    VectorField X = cli_detail::lookup_field(lm.doc, opt.field);
    ParamScalar lam = cli_detail::parse_lambda(opt.lambda, lm.doc);
    rep.add("verify.field", opt.field);
    rep.add("verify.lambda", lam.to_string());

    VerifyResult res = verify(lm.doc.model, X, lam);
    rep.add("verify.ok", res.ok);
    out << "field " << opt.field << ", lambda = " << lam.to_string() << "\n";
    if (res.ok) {
        out << "soliton equation satisfied symbolically\n";
    } else {
        out << "NOT a solution; residual entries:\n";
        for (int i = 0; i < lm.doc.model.dim(); ++i)
            for (int j = i; j < lm.doc.model.dim(); ++j)
                if (!res.defect.at(i, j).is_zero()) {
                    out << "  residual[" << i + 1 << "][" << j + 1
                        << "] = " << res.defect.at(i, j).to_string() << "\n";
                    rep.add("verify.residual[" + std::to_string(i + 1) + "][" +
                                std::to_string(j + 1) + "]",
                            res.defect.at(i, j).to_string());
                }
    }
    if (!opt.params.empty()) {
        SolitonClass c = classify(lam, cli_detail::parse_assignments(opt.params));
        out << "classification: " << to_string(c) << "\n";
        rep.add("verify.class", to_string(c));
    }
    return res.ok ? 0 : 1;
}

inline int cmd_solve(const CliOptions& opt, Report& rep, std::ostream& out) {
    auto lm = cli_detail::load_model(opt.model);
    cli_detail::describe_model(rep, lm);
    SpaceModel m = lm.doc.model;
    for (const auto& [name, value] : cli_detail::parse_assignments(opt.pins)) {
        m = m.pin_param(name, value);
        rep.add("solve.pin." + name, value.str());
    }
    Ansatz ansatz = default_ansatz(m, opt.degree, opt.freq_depth);
    rep.add("solve.degree", opt.degree);
    rep.add("solve.freq-depth", opt.freq_depth);
    AssembledSystem sys = assemble_system(m, ansatz);
    rep.add("solve.columns", sys.sys.ncols);
    rep.add("solve.rows", sys.sys.rows.size());
    out << "ansatz: degree <= " << opt.degree << ", " << ansatz.shapes[0].size()
        << " shapes per component, " << sys.sys.ncols << " unknowns, " << sys.sys.rows.size()
        << " equations\n";

    SolveOutcome res = solve(sys);
    if (std::holds_alternative<Infeasible>(res)) {
        const auto& inf = std::get<Infeasible>(res);
        rep.add("solve.status", "infeasible");
        rep.add("solve.certificate", inf.certificate.to_string());
        out << "INFEASIBLE within the ansatz.\n";
        out << "certificate (reduced row):  0 = " << inf.certificate.to_string() << "\n";
        if (inf.tag.slot_i >= 0) {
            out << "collected from tensor slot (" << inf.tag.slot_i + 1 << ","
                << inf.tag.slot_j + 1 << "), shape "
                << ExpPoly::term(inf.tag.key, ParamScalar::one(m.ctx())).to_string() << "\n";
            rep.add("solve.certificate.slot", std::to_string(inf.tag.slot_i + 1) + " " +
                                                  std::to_string(inf.tag.slot_j + 1));
            rep.add("solve.certificate.shape",
                    ExpPoly::term(inf.tag.key, ParamScalar::one(m.ctx())).to_string());
        }
        return 1;
    }

    const auto& sol = std::get<SolitonSolution>(res);
    rep.add("solve.status", "solved");
    rep.add("solve.lambda", sol.lambda.to_string());
    rep.add("solve.lambda-forced", sol.lambda_forced());
    rep.add("solve.free-count", sol.homogeneous.size());
    out << "solved: lambda = " << sol.lambda.to_string()
        << (sol.lambda_forced() ? " (forced)" : " (varies over the solution set)") << "\n";
    out << "free constants: " << sol.homogeneous.size() << "\n";
    out << "particular solution:\n";
    for (int i = 0; i < m.dim(); ++i) {
        out << "  X[" << i + 1 << "] = " << sol.particular.comp[i].to_string() << "\n";
        rep.add("solve.particular.X[" + std::to_string(i + 1) + "]",
                sol.particular.comp[i].to_string());
    }
    for (size_t k = 0; k < sol.homogeneous.size(); ++k) {
        out << "direction " << k + 1 << " (lambda component "
            << sol.homogeneous[k].lambda.to_string() << "):\n";
        rep.add("solve.direction[" + std::to_string(k + 1) + "].lambda",
                sol.homogeneous[k].lambda.to_string());
        for (int i = 0; i < m.dim(); ++i) {
            out << "  X[" << i + 1 << "] = " << sol.homogeneous[k].X.comp[i].to_string() << "\n";
            rep.add("solve.direction[" + std::to_string(k + 1) + "].X[" + std::to_string(i + 1) +
                        "]",
                    sol.homogeneous[k].X.comp[i].to_string());
        }
    }
    if (!sol.pivot_denominators.empty()) {
        out << "pivot denominators (generic solution degenerates where these vanish):\n";
        for (size_t k = 0; k < sol.pivot_denominators.size(); ++k) {
            out << "  " << sol.pivot_denominators[k].to_string() << "\n";
            rep.add("solve.pivot-denominator[" + std::to_string(k + 1) + "]",
                    sol.pivot_denominators[k].to_string());
        }
    }
    if (!opt.params.empty()) {
        SolitonClass c = classify(sol.lambda, cli_detail::parse_assignments(opt.params));
        out << "classification: " << to_string(c) << "\n";
        rep.add("solve.class", to_string(c));
    }
    return 0;
}

inline int cmd_gradient_check(const CliOptions& opt, Report& rep, std::ostream& out) {
    auto lm = cli_detail::load_model(opt.model);
    cli_detail::describe_model(rep, lm);
    VectorField X = cli_detail::lookup_field(lm.doc, opt.field);
    GradientVerdict v = gradient_check(lm.doc.model, X);
    rep.add("gradient.field", opt.field);
    rep.add("gradient.verdict", v.gradient ? "gradient" : "not-gradient");
    if (v.gradient) {
        out << "field " << opt.field << " is a gradient (lowered 1-form is closed)\n";
    } else {
        out << "field " << opt.field << " is NOT a gradient\n";
        out << "witness: (d omega)[" << v.witness_i + 1 << "][" << v.witness_j + 1
            << "] = " << v.witness.to_string() << "\n";
        rep.add("gradient.witness.i", v.witness_i + 1);
        rep.add("gradient.witness.j", v.witness_j + 1);
        rep.add("gradient.witness", v.witness.to_string());
    }
    return 0;
}

inline int cmd_oracle(const CliOptions& opt, Report& rep, std::ostream& out) {
    auto lm = cli_detail::load_model(opt.model);
    cli_detail::describe_model(rep, lm);
    const SpaceModel& m = lm.doc.model;
    const auto& ctx = m.ctx();

    NumericScene scene;
    scene.model = m;
    scene.params.assign(ctx->nparams(), 1.0);
    for (const auto& [name, value] : cli_detail::parse_assignments(opt.params)) {
        auto idx = ctx->find_param(name);
        if (!idx) throw InputError("unknown parameter: " + name);
        scene.params[*idx] = to_double(value);
    }
    scene.seed = opt.seed;
    scene.h = opt.step;
    scene.points = fd::sample_points(m.dim(), opt.points, opt.seed);

    OracleReport r = oracle_compare(scene);
    rep.add("oracle.points", r.points);
    rep.add("oracle.seed", std::to_string(opt.seed));
    rep.add("oracle.h", scene.h);
    rep.add("oracle.gamma.max-abs-err", r.gamma_max_abs_err);
    rep.add("oracle.ricci.max-abs-err", r.ricci_max_abs_err);
    rep.add("oracle.gamma.worst-ratio", r.gamma_worst_ratio);
    rep.add("oracle.ricci.worst-ratio", r.ricci_worst_ratio);
    rep.add("oracle.pass", r.pass);
    out << "finite-difference cross-check: " << r.points << " points, h = " << scene.h << "\n";
    out << "  Gamma: max abs err " << r.gamma_max_abs_err << " (worst tolerance ratio "
        << r.gamma_worst_ratio << ")\n";
    out << "  Ricci: max abs err " << r.ricci_max_abs_err << " (worst tolerance ratio "
        << r.ricci_worst_ratio << ")\n";
    out << (r.pass ? "PASS" : "FAIL") << "\n";
    return r.pass ? 0 : 1;
}

inline int cmd_catalog_list(Report& rep, std::ostream& out) {
    for (const auto& id : catalog_ids()) {
        CatalogEntry e = catalog_get(id);
        out << id << "  dim " << e.model().dim() << "  " << e.notes << "\n";
        rep.add("catalog." + id + ".dim", e.model().dim());
        rep.add("catalog." + id + ".notes", e.notes);
    }
    return 0;
}

inline int cmd_catalog_show(const CliOptions& opt, Report& rep, std::ostream& out) {
    CatalogEntry e = catalog_get(opt.catalog_id);
    cli_detail::describe_model(rep, {e.doc, e.id, "builtin"});
    out << format_model(e.doc);
    out << "# " << e.notes << "\n";
    if (e.has_known_solution()) {
        auto [X, lam] = e.known_solution();
        out << "# shipped solution: field " << e.solution_field << ", lambda = "
            << lam.to_string() << "\n";
    }
    return 0;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact Ricci-soliton engine for exp-polynomial metrics"};
    app.require_subcommand(1);
    CliOptions opt;
    std::string report_path;

    app.add_option("--report", report_path, "write a machine-readable report to this file");

    auto* curvature = app.add_subcommand("curvature", "connection, curvature, Ricci, scalar");
    curvature->add_option("model", opt.model, "catalog id or model file")->required();

    auto* soliton = app.add_subcommand("soliton", "soliton equation tools");
    soliton->require_subcommand(1);
    auto* sverify = soliton->add_subcommand("verify", "check a candidate (X, lambda)");
    sverify->add_option("model", opt.model)->required();
    sverify->add_option("--field", opt.field, "vector field name declared in the model")
        ->required();
    sverify->add_option("--lambda", opt.lambda, "scalar expression or declared scalar name")
        ->required();
    sverify->add_option("--params", opt.params, "name=value[,name=value...] for classification");
    auto* ssolve = soliton->add_subcommand("solve", "solve within a finite ansatz");
    ssolve->add_option("model", opt.model)->required();
    ssolve->add_option("--pin", opt.pins, "pin parameters, e.g. --pin mu=0");
    ssolve->add_option("--degree", opt.degree, "max monomial total degree (default 2)");
    ssolve->add_option("--freq-depth", opt.freq_depth,
                       "frequency combination depth (default 2)");
    ssolve->add_option("--params", opt.params, "assignment for classification of lambda");

    auto* gradient = app.add_subcommand("gradient-check", "closedness of the lowered field");
    gradient->add_option("model", opt.model)->required();
    gradient->add_option("--field", opt.field)->required();

    auto* oracle = app.add_subcommand("oracle", "finite-difference cross-check");
    oracle->add_option("model", opt.model)->required();
    oracle->add_option("--seed", opt.seed, "RNG seed (default 1)");
    oracle->add_option("--points", opt.points, "sample count (default 100)");
    oracle->add_option("--step", opt.step, "step size (default 1e-4)");
    oracle->add_option("--params", opt.params, "parameter values (default all 1)");

    auto* catalog = app.add_subcommand("catalog", "built-in models");
    catalog->require_subcommand(1);
    auto* clist = catalog->add_subcommand("list", "list entries");
    auto* cshow = catalog->add_subcommand("show", "print an entry as a model file");
    cshow->add_option("id", opt.catalog_id)->required();

    // CLI11 wants argv-style reversed vector
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    Report rep;
    {
        std::string echo;
        for (const auto& a : args) echo += (echo.empty() ? "" : " ") + a;
        rep.add("report.version", 1);
        rep.add("command", echo);
    }

    int code = 3;
    try {
        if (curvature->parsed()) code = cmd_curvature(opt, rep, out);
        else if (sverify->parsed()) code = cmd_verify(opt, rep, out);
        else if (ssolve->parsed()) code = cmd_solve(opt, rep, out);
        else if (gradient->parsed()) code = cmd_gradient_check(opt, rep, out);
        else if (oracle->parsed()) code = cmd_oracle(opt, rep, out);
        else if (clist->parsed()) code = cmd_catalog_list(rep, out);
        else if (cshow->parsed()) code = cmd_catalog_show(opt, rep, out);
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        code = 3;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        code = 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        code = 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        code = 3;
    }

    rep.add("exit.status", code);
    if (!report_path.empty()) {
        std::ofstream f(report_path);
        if (!f) {
            err << "error: cannot write report to " << report_path << "\n";
            return 2;
        }
        f << rep.to_text();
    }
    return code;
}

} // namespace solitonforge
