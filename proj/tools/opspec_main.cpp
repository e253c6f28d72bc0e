#include "opspec/dsl.hpp"
#include "opspec/json_io.hpp"
#include "opspec/oracle.hpp"
#include "opspec/spectra.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace opspec;

constexpr int EXIT_HOLDS = 0;
constexpr int EXIT_FAILS = 1;
constexpr int EXIT_USAGE = 2;
constexpr int EXIT_INCONCLUSIVE = 3;

/* EXPR flags accept the text inline or @file. */
std::string slurp_arg(const std::string& arg) {
    if (arg.empty() || arg[0] != '@') return arg;
    std::ifstream in(arg.substr(1));
    if (!in) throw std::runtime_error("cannot read file " + arg.substr(1));
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

OperatorExpr parse_expr_arg(const std::string& arg) { return parse_operator(slurp_arg(arg)); }

SpectrumKind parse_kind(const std::string& s) {
    if (s == "spec") return SpectrumKind::Spec;
    if (s == "left") return SpectrumKind::Left;
    if (s == "right") return SpectrumKind::Right;
    if (s == "usf" || s == "sf+") return SpectrumKind::USF;
    if (s == "lsf" || s == "sf-") return SpectrumKind::LSF;
    if (s == "essential" || s == "ess") return SpectrumKind::Essential;
    if (s == "point") return SpectrumKind::Point;
    if (s == "defect") return SpectrumKind::Defect;
    if (s == "fli") return SpectrumKind::FLI;
    if (s == "fri") return SpectrumKind::FRI;
    throw std::runtime_error("unknown spectrum kind '" + s + "'");
}

CompletionTarget parse_target(const std::string& s) {
    if (s == "fli") return CompletionTarget::FLI;
    if (s == "fri") return CompletionTarget::FRI;
    if (s == "inv") return CompletionTarget::Invertible;
    throw std::runtime_error("unknown target '" + s + "' (expected fli|fri|inv)");
}

Corner parse_corner(const std::string& s) {
    if (s.empty() || s == "zero") return corner_zero();
    std::ifstream in(s);
    if (!in) throw std::runtime_error("cannot read certificate file " + s);
    Json j = Json::parse(in);
    return certificate_from_json(j);
}

std::vector<int> parse_sizes(const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        out.push_back(std::stoi(s.substr(pos, comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

void emit(const Json& j) {
    Json out = j;
    out["schema"] = "1";
    std::cout << out.dump(2) << "\n";
}

int run_classify(const std::string& op, const std::string& lambda_s, const std::string& kind_s) {
    OperatorExpr e = parse_expr_arg(op);
    GQ lambda = parse_gq(lambda_s);
    SpectrumKind kind = parse_kind(kind_s);
    PointData pd = point_data(e, lambda);
    Json classes;
    for (SpectrumKind k :
         {SpectrumKind::Spec, SpectrumKind::Left, SpectrumKind::Right, SpectrumKind::USF,
          SpectrumKind::LSF, SpectrumKind::Essential, SpectrumKind::Point, SpectrumKind::Defect,
          SpectrumKind::FLI, SpectrumKind::FRI})
        classes[spectrum_kind_name(k)] = classify(pd, k);
    bool resolvent = classify(pd, kind);
    emit(Json{{"lambda", to_json(lambda)},
              {"point_data", to_json(pd)},
              {"kind", spectrum_kind_name(kind)},
              {"resolvent", resolvent},
              {"classes", classes}});
    return resolvent ? EXIT_HOLDS : EXIT_FAILS;
}

int run_spectrum(const std::string& op, const std::string& kind_s, const std::string& out_file,
                 const std::string& plot_file, const std::string& window_s, int res,
                 const std::string& cells_file) {
    OperatorExpr e = parse_expr_arg(op);
    SpectrumKind kind = parse_kind(kind_s);
    RegionExpr r = spectrum_region(e, kind);
    if (!out_file.empty()) {
        std::ofstream out(out_file);
        Json j = to_json(r);
        j["schema"] = "1";
        out << j.dump(2) << "\n";
    }
    if (!cells_file.empty()) {
        std::ofstream out(cells_file);
        Json j = to_json(build_cells(std::vector<RegionExpr>{r}));
        j["schema"] = "1";
        out << j.dump(2) << "\n";
    }
    if (!plot_file.empty()) {
        std::vector<Rat> w;
        std::size_t pos = 0;
        while (pos < window_s.size()) {
            std::size_t comma = window_s.find(',', pos);
            w.push_back(Rat::parse(window_s.substr(pos, comma - pos)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (w.size() != 4) throw std::runtime_error("--window expects x0,y0,x1,y1");
        auto grid = sample_grid(r, w[0], w[1], w[2], w[3], static_cast<std::size_t>(res));
        std::ofstream out(plot_file, std::ios::binary);
        out << grid_to_pgm(grid);
    }
    emit(Json{{"op", to_json(e)}, {"kind", spectrum_kind_name(kind)}, {"region", to_json(r)}});
    return EXIT_HOLDS;
}

int run_complete(const std::string& a_s, const std::string& b_s, const std::string& lambda_s,
                 const std::string& target_s, const std::string& cert_file) {
    OperatorExpr a = parse_expr_arg(a_s), b = parse_expr_arg(b_s);
    GQ lambda = parse_gq(lambda_s);
    CompletionTarget target = parse_target(target_s);
    CompletionReport rep = target == CompletionTarget::FLI   ? fli_completable(a, b, lambda)
                           : target == CompletionTarget::FRI ? fri_completable(a, b, lambda)
                                                             : invertible_completable(a, b, lambda);
    if (!cert_file.empty() && rep.certificate) {
        std::ofstream out(cert_file);
        Json j = to_json(*rep.certificate);
        j["schema"] = "1";
        out << j.dump(2) << "\n";
    }
    emit(to_json(rep));
    return rep.decision ? EXIT_HOLDS : EXIT_FAILS;
}

int verdict_exit(const Verdict& v) {
    switch (v.kind) {
        case Verdict::Kind::Exact:
        case Verdict::Kind::SampledPass: return EXIT_HOLDS;
        case Verdict::Kind::Fail: return EXIT_FAILS;
        default: return EXIT_INCONCLUSIVE;
    }
}

int run_verify(const std::string& check, const std::string& a_s, const std::string& b_s,
               const std::string& c_s, const std::string& target_s, const std::string& lambda_s,
               const SampleConfig& cfg) {
    OperatorExpr a = parse_expr_arg(a_s);
    OperatorExpr b = b_s.empty() ? a : parse_expr_arg(b_s);
    Corner c = parse_corner(c_s);
    CompletionTarget target = parse_target(target_s.empty() ? "fli" : target_s);
    Json j{{"check", check}};

    if (check == "holes") {
        Verdict v = filling_holes_check(a, b, c, target, cfg);
        j["result"] = to_json(v);
        emit(j);
        return verdict_exit(v);
    }
    if (check == "sandwich") {
        Verdict v = sandwich_check(a, b, c, target, cfg);
        j["result"] = to_json(v);
        emit(j);
        return verdict_exit(v);
    }
    if (check == "eta") {
        bool ok;
        if (b_s.empty()) {
            ok = eta_spectrum_equality(a);
        } else {
            SpectrumKind k = target == CompletionTarget::FRI ? SpectrumKind::FRI : SpectrumKind::FLI;
            RegionExpr lhs = region_union(spectrum_region(a, k), spectrum_region(b, k));
            ok = region_equals(region_eta(lhs), region_eta(spectrum_region(direct_sum(a, b), k)));
        }
        j["result"] = Json{{"verdict", ok ? "exact" : "fail"}};
        emit(j);
        return ok ? EXIT_HOLDS : EXIT_FAILS;
    }
    if (check == "harte") {
        GQ lambda = lambda_s.empty() && !corner_is_zero(c)
                        ? std::get<CompletionCertificate>(c).at_lambda
                        : parse_gq(lambda_s.empty() ? "0" : lambda_s);
        CheckVerdict v = harte_identity_check(a, b, c, lambda);
        const char* name = v == CheckVerdict::Holds             ? "holds"
                           : v == CheckVerdict::Fails           ? "fails"
                                                                : "precondition_violated";
        j["result"] = Json{{"verdict", name}};
        emit(j);
        return v == CheckVerdict::Holds ? EXIT_HOLDS
               : v == CheckVerdict::Fails ? EXIT_FAILS
                                          : EXIT_INCONCLUSIVE;
    }
    if (check == "completion" || check == "delta") {
        // theorem vs corollary: the completable set must be exactly the
        // complement of the intersection spectrum
        bool ok = region_equals(region_complement(intersection_spectrum_region(a, b, target)),
                                completable_region(a, b, target));
        j["result"] = Json{{"verdict", ok ? "exact" : "fail"}};
        if (check == "delta") j["delta"] = to_json(delta_region(a, b, target));
        emit(j);
        return ok ? EXIT_HOLDS : EXIT_FAILS;
    }
    if (check == "dong") {
        CorollaryOutcome out = dong_condition_check(a, b);
        j["result"] = Json{{"hypothesis", out.hypothesis}};
        if (out.hypothesis) j["result"]["conclusion"] = to_json(out.conclusion);
        emit(j);
        if (!out.hypothesis) return EXIT_INCONCLUSIVE;
        return verdict_exit(out.conclusion);
    }
    if (check == "sclass") {
        CorollaryOutcome out = s_class_proposition_check(a, b, target);
        j["result"] = Json{{"hypothesis", out.hypothesis}};
        if (out.hypothesis) j["result"]["conclusion"] = to_json(out.conclusion);
        emit(j);
        if (!out.hypothesis) return EXIT_INCONCLUSIVE;
        return verdict_exit(out.conclusion);
    }
    throw std::runtime_error("unknown check '" + check + "'");
}

int run_oracle(const std::string& op, const std::string& lambda_s, const std::string& sizes_s,
               double tol) {
    OperatorExpr e = parse_expr_arg(op);
    GQ lambda = parse_gq(lambda_s);
    std::vector<int> sizes = parse_sizes(sizes_s.empty() ? "64,128,256" : sizes_s);
    NumericPointData est = estimate_point_data(e, lambda, sizes, tol);
    emit(to_json(est));
    return est.consistent && est.closed_evidence != ClosedEvidence::Inconclusive
               ? EXIT_HOLDS
               : EXIT_INCONCLUSIVE;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact 2x2 operator-matrix completion calculus"};
    app.require_subcommand(1);

    std::string op, lambda_s, kind_s, out_file, plot_file, window_s = "-2,-2,2,2", cells_file;
    std::string a_s, b_s, c_s = "zero", target_s, check_s;
    std::string sizes_s;
    int res = 64;
    SampleConfig cfg;

    auto* classify_cmd = app.add_subcommand("classify", "point data and class membership at λ");
    classify_cmd->add_option("--op", op, "operator expression (or @file)")->required();
    classify_cmd->add_option("--lambda", lambda_s, "spectral parameter")->required();
    classify_cmd->add_option("--kind", kind_s, "spectrum kind")->required();

    auto* spectrum_cmd = app.add_subcommand("spectrum", "exact spectrum as a plane region");
    spectrum_cmd->add_option("--op", op)->required();
    spectrum_cmd->add_option("--kind", kind_s)->required();
    spectrum_cmd->add_option("--out", out_file, "write region JSON");
    spectrum_cmd->add_option("--plot", plot_file, "write P5 PGM plot");
    spectrum_cmd->add_option("--window", window_s, "plot window x0,y0,x1,y1");
    spectrum_cmd->add_option("--res", res, "plot resolution");
    spectrum_cmd->add_option("--cells-out", cells_file, "write cell decomposition JSON");

    auto* complete_cmd = app.add_subcommand("complete", "decide completability and build C");
    complete_cmd->add_option("--a", a_s)->required();
    complete_cmd->add_option("--b", b_s)->required();
    complete_cmd->add_option("--lambda", lambda_s)->required();
    complete_cmd->add_option("--target", target_s)->required();
    complete_cmd->add_option("--cert", out_file, "write certificate JSON");

    auto* verify_cmd = app.add_subcommand("verify", "verify a theorem-level property");
    verify_cmd
        ->add_option("--check", check_s,
                     "completion|sandwich|eta|holes|harte|delta|dong|sclass")
        ->required();
    verify_cmd->add_option("--a", a_s)->required();
    verify_cmd->add_option("--b", b_s);
    verify_cmd->add_option("--c", c_s, "certificate JSON file, or 'zero'");
    verify_cmd->add_option("--target", target_s);
    verify_cmd->add_option("--lambda", lambda_s);
    verify_cmd->add_option("--samples", cfg.n_samples);
    verify_cmd->add_option("--seed", cfg.seed);
    verify_cmd->add_option("--sizes", sizes_s);
    verify_cmd->add_option("--tol", cfg.tol);

    auto* oracle_cmd = app.add_subcommand("oracle", "finite-truncation numerical estimate");
    oracle_cmd->add_option("--op", op)->required();
    oracle_cmd->add_option("--lambda", lambda_s)->required();
    oracle_cmd->add_option("--sizes", sizes_s);
    double tol = 1e-8;
    oracle_cmd->add_option("--tol", tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << app.help() << "\n";
        if (e.get_exit_code() != 0) std::cerr << "error: " << e.what() << "\n";
        return e.get_exit_code() == 0 ? EXIT_HOLDS : EXIT_USAGE;
    }

    try {
        if (!sizes_s.empty()) cfg.sizes = parse_sizes(sizes_s);
        if (classify_cmd->parsed()) return run_classify(op, lambda_s, kind_s);
        if (spectrum_cmd->parsed())
            return run_spectrum(op, kind_s, out_file, plot_file, window_s, res, cells_file);
        if (complete_cmd->parsed()) return run_complete(a_s, b_s, lambda_s, target_s, out_file);
        if (verify_cmd->parsed())
            return run_verify(check_s, a_s, b_s, c_s, target_s, lambda_s, cfg);
        if (oracle_cmd->parsed()) return run_oracle(op, lambda_s, sizes_s, tol);
    } catch (const opspec::DslError& e) {
        std::cerr << "parse error at " << e.line << ":" << e.col << ": " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const opspec::ArrangementError& e) {
        std::cerr << "arrangement refusal: " << e.what() << "\n";
        return EXIT_INCONCLUSIVE;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    }
    return EXIT_USAGE;
}
