// winratio: win ratio / AUC comparison and non-transitivity analysis.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal invariant
// breach (a theorem-backed audit or cross-check failed on computed data).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#ifdef _WIN32
#include <io.h>
#else
#include <unistd.h>
#endif

#include <CLI11.hpp>

#include "winratio/demos.hpp"
#include "winratio/winratio.hpp"

namespace {

using namespace winratio;

ReportFormat parse_format(const std::string& f) {
    if (f == "text") return ReportFormat::text;
    if (f == "csv") return ReportFormat::csv;
    if (f == "json") return ReportFormat::json_tree;
    throw InvalidArgument("unknown format '" + f + "' (expected text, csv or json)");
}

void emit(const std::string& content, const std::string& output_path) {
    if (output_path.empty()) {
        std::fputs(content.c_str(), stdout);
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw DataError("cannot open output file: " + output_path);
    out << content;
    if (!out) throw DataError("failed writing output file: " + output_path);
}

bool styling_enabled() {
    if (std::getenv("NO_COLOR") != nullptr) return false;
    return isatty(fileno(stdout)) != 0;
}

std::string heading(const std::string& text) {
    if (styling_enabled()) return "\033[1m" + text + "\033[0m";
    return text;
}

void log_provenance(const AnalysisOptions& opt, const std::string& digest) {
    std::fprintf(stderr, "[winratio] version=%s tie_epsilon=%g seed=%llu abs_tol=%g%s%s\n",
                 kVersion, opt.tie_epsilon, static_cast<unsigned long long>(opt.seed),
                 opt.abs_tol, digest.empty() ? "" : " digest=sha256:",
                 digest.c_str());
}

std::string fmt(double v, const char* spec = "%.6f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// ---------------------------------------------------------------------------

int run_analyze(const std::string& input, AnalysisOptions options, ReportFormat format,
                const std::string& output) {
    const AnalysisReport report = analyze_dataset_file(input, options);
    log_provenance(options, report.input_digest);
    emit(render_report(report, format), output);
    return 0;
}

int run_simulate(const std::vector<std::string>& spec_texts, AnalysisOptions options,
                 ReportFormat format, const std::string& output) {
    std::vector<DistributionSpec> specs;
    for (const std::string& text : spec_texts) specs.push_back(parse_spec(text));
    const AnalysisReport report = analyze_specs("simulation", specs, options);
    log_provenance(options, "");
    emit(render_report(report, format), output);
    return 0;
}

int run_demo(const std::string& name, AnalysisOptions options, ReportFormat format,
             const std::string& output) {
    const demos::DemoRun run = demos::run_demo(name, options);
    log_provenance(options, run.report.input_digest);
    std::string content;
    if (format == ReportFormat::text) {
        content += heading("Demo: " + name) + "\n";
        for (const std::string& line : run.commentary) content += line + "\n";
        content += "\n";
    }
    content += render_report(run.report, format);
    emit(content, output);
    return 0;
}

int run_construct(double b, double c, const std::vector<double>& support_arg,
                  const std::string& output) {
    std::array<double, 5> support{1, 2, 3, 4, 5};
    if (!support_arg.empty()) {
        if (support_arg.size() != 5)
            throw InvalidArgument("--support needs exactly 5 increasing values");
        std::copy(support_arg.begin(), support_arg.end(), support.begin());
    }
    const SigmaTriplet sigma = construct_sigma(b, c, support);

    const double a_xy = exact_auc_discrete(sigma.x, sigma.y);
    const double a_yz = exact_auc_discrete(sigma.y, sigma.z);
    const double a_zx = exact_auc_discrete(sigma.z, sigma.x);
    const double tol = 1e-12;
    if (std::fabs(a_xy - sigma.target.a) > tol || std::fabs(a_yz - sigma.target.b) > tol ||
        std::fabs(a_zx - sigma.target.c) > tol)
        throw InvariantViolation("constructed triplet does not reproduce its target AUCs");

    std::ostringstream os;
    os << "Sigma-family triplet for (b, c) = (" << fmt(b) << ", " << fmt(c) << "):\n";
    auto print_pmf = [&os](const char* name, const DiscreteDistribution& d) {
        os << "  " << name << ": ";
        bool first = true;
        for (const auto& atom : d.atoms()) {
            os << (first ? "" : ", ") << "Pr(" << atom.value << ") = " << atom.prob;
            first = false;
        }
        os << "\n";
    };
    print_pmf("x", sigma.x);
    print_pmf("y", sigma.y);
    print_pmf("z", sigma.z);
    os << "Realized AUCs: Pr(x<y) = " << detail::fmt_auc(a_xy)
       << ", Pr(y<z) = " << detail::fmt_auc(a_yz) << ", Pr(z<x) = " << detail::fmt_auc(a_zx)
       << "\n";
    os << "Realized WRs:  " << detail::fmt_wr(wr_from_auc(a_xy)) << ", "
       << detail::fmt_wr(wr_from_auc(a_yz)) << ", " << detail::fmt_wr(wr_from_auc(a_zx))
       << "\n";
    os << "Cyclic AUC product: " << detail::fmt_auc(a_xy * a_yz * a_zx) << " (upper bound 0.25)\n";
    emit(os.str(), output);
    return 0;
}

int run_membership(double a, double b, double c, const std::string& output) {
    const AucTriplet t{a, b, c};
    const MembershipVerdict v = classify_triplet(t);

    std::ostringstream os;
    os << "Triplet (Pr(x<y), Pr(y<z), Pr(z<x)) = (" << fmt(a) << ", " << fmt(b) << ", "
       << fmt(c) << ")\n";
    os << "Feasible (some independent x, y, z realize it): " << (v.feasible ? "yes" : "no")
       << "\n";
    os << "  alpha(a, b) = " << fmt(alpha(a, b), "%.8f")
       << ", lower limit = " << fmt(std::max(0.0, 1.0 - alpha(1.0 - a, 1.0 - b)), "%.8f")
       << "\n";
    os << "Non-transitive member (closed region): " << (v.member ? "yes" : "no");
    if (v.member) os << (v.strict ? " (strict)" : " (boundary)");
    os << "\n";

    const double min_comp = std::min({a, b, c});
    os << "Necessary condition for a 3-loop (min <= " << fmt(komisarski_bound(3), "%.6f")
       << "): min = " << fmt(min_comp) << " -> "
       << (min_comp <= komisarski_bound(3) + 1e-9 ? "satisfied" : "ruled out") << "\n";

    auto sufficiency_line = [&os](const char* pair_name, double u, double w) {
        os << "Sufficiency " << pair_name << ": ";
        if (u >= 0.5 && w >= 0.5) {
            const SufficiencyFlags f = sufficiency_flags(u, w);
            os << "product " << fmt(f.product, "%.6f")
               << (f.transitive_guaranteed ? " >= 1/2: transitive with any third variable"
                                           : " < 1/2: no transitivity guarantee");
            if (f.both_at_least_inv_sqrt2) os << " (both >= 1/sqrt(2))";
        } else {
            os << "n/a (needs both AUCs >= 1/2)";
        }
        os << "\n";
    };
    sufficiency_line("(a, b)", a, b);
    sufficiency_line("(b, c)", b, c);
    sufficiency_line("(c, a)", c, a);

    auto strength_line = [&os](const char* name, double v_auc) {
        const StrengthClass s = classify_strength(v_auc);
        os << "Strength " << name << ": " << s.name() << (s.reversed ? " (reversed)" : "")
           << "\n";
    };
    strength_line("a", a);
    strength_line("b", b);
    strength_line("c", c);
    emit(os.str(), output);
    return 0;
}

int run_bounds(int n_max, const std::string& surface_path, int grid_steps,
               const std::string& view, const std::string& output) {
    if (n_max < 3) throw InvalidArgument("--max-n must be at least 3");
    std::ostringstream os;
    os << "Loop length n | min-AUC bound | min-WR bound\n";
    for (int n = 3; n <= n_max; ++n)
        os << "  " << n << "  " << detail::fmt_auc(komisarski_bound(n)) << "  "
           << fmt(komisarski_bound_wr(n), "%.8f") << "\n";
    os << "  limit  " << detail::fmt_auc(0.75) << "  " << fmt(3.0, "%.8f") << "\n";
    emit(os.str(), output);

    if (!surface_path.empty()) {
        const SurfaceView sv = view == "wr" ? SurfaceView::wr : SurfaceView::auc;
        if (view != "wr" && view != "auc")
            throw InvalidArgument("--view must be auc or wr");
        const SurfaceGrid grid = export_surface(grid_steps, sv);
        std::ofstream out(surface_path, std::ios::binary);
        if (!out) throw DataError("cannot open surface file: " + surface_path);
        out << render_surface(grid);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Win ratio / AUC comparison strength and non-transitivity toolkit"};
    app.require_subcommand(1);

    std::string input, output, format_name = "text", view = "auc", surface_path, demo_name;
    std::vector<std::string> spec_texts;
    std::vector<double> support_arg;
    double tie_epsilon = 0.0, abs_tol = 1e-10;
    double arg_a = 0, arg_b = 0, arg_c = 0;
    int max_loop = 0, n_max = 10, grid_steps = 101;
    unsigned threads = 1;
    std::uint64_t seed = 1, samples = 1'000'000;
    std::string method_name = "quadrature";

    CLI::App* analyze = app.add_subcommand("analyze", "analyze a long-CSV trial dataset");
    analyze->add_option("input", input, "CSV file with header arm,time,event")->required();
    analyze->add_option("--tie-epsilon", tie_epsilon, "half-width of the undecided AUC band");
    analyze->add_option("--max-loop", max_loop, "maximum loop length (default: arm count)");
    analyze->add_option("--threads", threads, "parallelism across pairwise comparisons");
    analyze->add_option("--format", format_name, "text, csv or json");
    analyze->add_option("--output", output, "write the report to a file");

    CLI::App* construct = app.add_subcommand("construct",
                                             "build the extremal Sigma triplet for (b, c)");
    construct->add_option("b", arg_b, "Pr(y<z), in [1/2, 1]")->required();
    construct->add_option("c", arg_c, "Pr(z<x), in [1/2, 1/(2b)]")->required();
    construct->add_option("--support", support_arg, "five increasing support values")
        ->delimiter(',');
    construct->add_option("--output", output, "write to a file");

    CLI::App* membership = app.add_subcommand("membership",
                                              "test a triplet of AUCs for feasibility and "
                                              "non-transitive membership");
    membership->add_option("a", arg_a, "Pr(x<y)")->required();
    membership->add_option("b", arg_b, "Pr(y<z)")->required();
    membership->add_option("c", arg_c, "Pr(z<x)")->required();
    membership->add_option("--output", output, "write to a file");

    CLI::App* bounds = app.add_subcommand("bounds",
                                          "print the loop-length bounds; optionally export "
                                          "the non-transitive boundary surface");
    bounds->add_option("--max-n", n_max, "largest loop length in the table");
    bounds->add_option("--surface", surface_path, "write the boundary surface to a file");
    bounds->add_option("--grid-steps", grid_steps, "grid points per axis for --surface");
    bounds->add_option("--view", view, "surface coordinates: auc or wr");
    bounds->add_option("--output", output, "write the table to a file");

    CLI::App* simulate = app.add_subcommand("simulate",
                                            "pairwise AUC analysis of parametric "
                                            "distributions");
    simulate->add_option("specs", spec_texts,
                         "three or more expressions, e.g. 'chisq(1)' "
                         "'normal(0.5875,0.1)' 'reflect(chisq(1))+1.175'")
        ->required()
        ->expected(-3);
    simulate->add_option("--method", method_name, "mc, quadrature or both");
    simulate->add_option("--samples", samples, "Monte Carlo draws per pair");
    simulate->add_option("--seed", seed, "Monte Carlo seed");
    simulate->add_option("--abs-tol", abs_tol, "quadrature absolute tolerance");
    simulate->add_option("--tie-epsilon", tie_epsilon, "half-width of the undecided AUC band");
    simulate->add_option("--max-loop", max_loop, "maximum loop length");
    simulate->add_option("--threads", threads, "parallelism across pairs");
    simulate->add_option("--format", format_name, "text, csv or json");
    simulate->add_option("--output", output, "write the report to a file");

    CLI::App* demo = app.add_subcommand("demo", "run a built-in scenario");
    demo->add_option("name", demo_name, "table1, example2, efron or figure1")->required();
    demo->add_option("--tie-epsilon", tie_epsilon, "half-width of the undecided AUC band");
    demo->add_option("--seed", seed, "seed echoed into the report options");
    demo->add_option("--format", format_name, "text, csv or json");
    demo->add_option("--output", output, "write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the parse message
        return code == 0 ? 0 : 1;      // all usage errors exit 1
    }

    try {
        AnalysisOptions options;
        options.tie_epsilon = tie_epsilon;
        options.max_loop = max_loop;
        options.threads = threads;
        options.abs_tol = abs_tol;
        options.samples = samples;
        options.seed = seed;
        if (method_name == "mc") options.method = AucMethod::mc;
        else if (method_name == "quadrature") options.method = AucMethod::quadrature;
        else if (method_name == "both") options.method = AucMethod::both;
        else throw InvalidArgument("unknown method '" + method_name + "'");
        const ReportFormat format = parse_format(format_name);

        if (analyze->parsed()) return run_analyze(input, options, format, output);
        if (construct->parsed()) return run_construct(arg_b, arg_c, support_arg, output);
        if (membership->parsed()) {
            for (double v : {arg_a, arg_b, arg_c})
                if (!(v >= 0.0 && v <= 1.0))
                    throw InvalidArgument("AUC components must lie in [0, 1]");
            return run_membership(arg_a, arg_b, arg_c, output);
        }
        if (bounds->parsed())
            return run_bounds(n_max, surface_path, grid_steps, view, output);
        if (simulate->parsed()) return run_simulate(spec_texts, options, format, output);
        if (demo->parsed()) return run_demo(demo_name, options, format, output);
        std::fprintf(stderr, "no subcommand selected\n");
        return 1;
    } catch (const InvalidArgument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 2;
    } catch (const InvariantViolation& e) {
        std::fprintf(stderr, "invariant breach: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 3;
    }
}
