// radial_tps: fit, evaluate and benchmark radial thin plate spline profiles.
//
// Exit codes: 0 success, 2 usage/input error, 3 numerical failure, 4 I/O error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radial_tps/radial_tps.hpp"

namespace rt = radial_tps;

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kNumerical = 3, kIo = 4 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Inline comma list if it parses as one, otherwise a single-column file.
std::vector<double> read_numbers(const std::string& arg, const char* what) {
    try {
        return rt::parse_number_list(arg);
    } catch (const rt::ArgumentError&) {
    }
    if (!std::filesystem::exists(arg))
        throw rt::ArgumentError(std::string(what) + ": '" + arg + "' is neither a number list nor an existing file");
    try {
        return rt::parse_column(read_file(arg));
    } catch (const rt::ArgumentError& e) {
        throw rt::ArgumentError(std::string(what) + " file '" + arg + "': " + e.what());
    }
}

/// Writes to --out when given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw IoError("cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    void finish() {
        stream().flush();
        if (!stream()) throw IoError("write failed");
    }

private:
    std::ofstream file_;
};

std::string g17(double v) { return rt::format_g17(v); }

// fit ---------------------------------------------------------------------

struct FitArgs {
    std::string knots, values, type, out;
    std::optional<double> alpha;
};

int cmd_fit(const FitArgs& args) {
    const rt::KnotSet knots(read_numbers(args.knots, "knots"));
    const auto values = read_numbers(args.values, "values");
    if (values.size() != knots.size())
        throw rt::ArgumentError("got " + std::to_string(knots.size()) + " knots but " + std::to_string(values.size()) +
                                " values");
    if (args.type == "A" && !args.alpha) throw rt::ArgumentError("--type A requires --alpha");
    const auto model =
        args.type == "A" ? rt::fit_type_a(knots, values, *args.alpha) : rt::fit_type_b(knots, values);

    double residual = 0.0;
    for (std::size_t j = 0; j < knots.size(); ++j) residual = std::max(residual, std::abs(model(knots[j]) - values[j]));

    Output out(args.out);
    out.stream() << rt::model_to_json(model) << '\n';
    out.finish();
    std::cerr << "max interpolation residual: " << g17(residual) << '\n';
    double scale = 1.0;
    for (double v : values) scale = std::max(scale, std::abs(v));
    if (residual > 1e-8 * scale) std::cerr << "warning: residual is large; knots may be nearly coincident\n";
    return kOk;
}

// eval --------------------------------------------------------------------

struct EvalArgs {
    std::string model, builtin, grid, out;
    int derivatives = 0;
};

rt::DilateModel builtin_model(const std::string& name) {
    if (name == "eta2") return rt::eta2_model();
    if (name == "beta") return rt::beta_model();
    if (name == "phi0") return rt::DilateModel(rt::KnotSet({1.0}), 0.0, {1.0}, rt::ModelKind::TypeA, 0.0);
    throw rt::ArgumentError("unknown builtin '" + name + "' (expected eta2, beta or phi0)");
}

int cmd_eval(const EvalArgs& args) {
    if (args.model.empty() == args.builtin.empty()) throw rt::ArgumentError("give exactly one of --model or --builtin");
    const auto grid = rt::parse_grid(args.grid);
    if (grid.start < 0.0) throw rt::ArgumentError("grid: radii must be nonnegative");
    const auto model = args.builtin.empty() ? rt::model_from_json(read_file(args.model)) : builtin_model(args.builtin);

    Output out(args.out);
    auto& os = out.stream();
    os << "r,value";
    if (args.derivatives >= 1) os << ",d1";
    if (args.derivatives >= 2) os << ",d2";
    os << '\n';
    for (const double r : grid.points()) {
        os << g17(r) << ',' << g17(model(r));
        // At the origin d1 tends to 0 and d2 diverges unless the singular coefficient vanishes.
        if (args.derivatives >= 1) os << ',' << (r > 0.0 ? g17(model.derivative(r, 1)) : g17(0.0));
        if (args.derivatives >= 2) os << ',' << (r > 0.0 ? g17(model.derivative(r, 2)) : "");
        os << '\n';
    }
    out.finish();
    return kOk;
}

// bench -------------------------------------------------------------------

struct BenchArgs {
    std::string profile = "feps:0.1";
    std::string levels = "4..10";
    std::string out;
};

rt::BuiltinProfile parse_profile(const std::string& spec) {
    if (spec == "linear") return rt::BuiltinProfile::linear();
    if (spec == "cos3") return rt::BuiltinProfile::cos3();
    if (spec.rfind("feps:", 0) == 0) {
        const double eps = rt::parse_number(std::string_view(spec).substr(5));
        if (!(eps > 0.0)) throw rt::ArgumentError("feps: epsilon must be > 0");
        return rt::BuiltinProfile::feps(eps);
    }
    throw rt::ArgumentError("unknown profile '" + spec + "' (expected feps:<eps>, linear or cos3)");
}

std::vector<std::size_t> parse_levels(const std::string& spec) {
    const auto dots = spec.find("..");
    if (dots == std::string::npos) throw rt::ArgumentError("--levels must be a..b");
    const double a = rt::parse_number(std::string_view(spec).substr(0, dots));
    const double b = rt::parse_number(std::string_view(spec).substr(dots + 2));
    if (a != std::floor(a) || b != std::floor(b) || a < 0 || b < a || b > 20)
        throw rt::ArgumentError("--levels a..b needs integers 0 <= a <= b <= 20");
    return rt::dyadic_levels(static_cast<unsigned>(a), static_cast<unsigned>(b));
}

unsigned bench_threads() {
    const char* env = std::getenv("RADIAL_TPS_THREADS");
    if (!env || !*env) return 1;
    double v = 0.0;
    try {
        v = rt::parse_number(env);
    } catch (const rt::ArgumentError&) {
        throw rt::ArgumentError("RADIAL_TPS_THREADS must be an integer >= 1");
    }
    if (!(v >= 1.0) || v != std::floor(v) || v > 1024) throw rt::ArgumentError("RADIAL_TPS_THREADS must be an integer >= 1");
    return static_cast<unsigned>(v);
}

int cmd_bench(const BenchArgs& args) {
    const auto profile = parse_profile(args.profile);
    const auto levels = parse_levels(args.levels);
    const auto rows = rt::run_convergence(profile, levels, bench_threads());

    Output out(args.out);
    rt::write_convergence_csv(out.stream(), rows);
    out.finish();

    const auto diag = rt::diagnose(profile, rows);
    for (const auto& w : diag.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& e : diag.errors) std::cerr << "error: " << e << '\n';
    for (const auto& row : rows)
        if (row.error) return kNumerical;
    return kOk;
}

// rabut-compare -------------------------------------------------------------

struct RabutArgs {
    std::string knots, values, grid, out;
    std::optional<double> R1, R2;
};

int cmd_rabut_compare(const RabutArgs& args) {
    const rt::KnotSet knots(read_numbers(args.knots, "knots"));
    const auto values = read_numbers(args.values, "values");
    if (values.size() != knots.size()) throw rt::ArgumentError("knot/value count mismatch");
    if (knots.size() < 2) throw rt::ArgumentError("rabut-compare needs at least two knots");
    if (args.R1.has_value() != args.R2.has_value()) throw rt::ArgumentError("give both --R1 and --R2, or neither");

    const auto bounds = args.R1 ? rt::KernelBounds::finite(*args.R1, *args.R2) : rt::KernelBounds::limit();
    const auto grid = args.grid.empty() ? rt::GridSpec{knots.front(), knots.back(), 200} : rt::parse_grid(args.grid);
    if (!(grid.start > 0.0)) throw rt::ArgumentError("grid: radii must be positive");
    if (!bounds.is_limit() && (grid.start < bounds.lower || grid.stop > bounds.upper))
        throw rt::ArgumentError("grid must lie inside [R1, R2]");

    const auto ki = rt::fit_rabut(knots, values, bounds);
    const auto sigma = rt::fit_type_b(knots, values);

    Output out(args.out);
    auto& os = out.stream();
    os << "r,s_rabut,sigma_B,diff\n";
    double sup = 0.0;
    for (const double r : grid.points()) {
        const double s = rt::evaluate_rabut(ki, r), b = sigma(r);
        sup = std::max(sup, std::abs(s - b));
        os << g17(r) << ',' << g17(s) << ',' << g17(b) << ',' << g17(s - b) << '\n';
    }
    out.finish();
    std::cerr << "sup |s_rabut - sigma_B| = " << g17(sup) << '\n';
    return kOk;
}

// compact -------------------------------------------------------------------

struct CompactArgs {
    std::string profile, emit = "values", grid, out;
};

int cmd_compact(const CompactArgs& args) {
    std::optional<rt::CompactProfile> p;
    if (args.profile == "eta2") p = rt::CompactProfile::eta2();
    else if (args.profile == "beta") p = rt::CompactProfile::beta();
    else throw rt::ArgumentError("unknown profile '" + args.profile + "' (expected eta2 or beta)");

    Output out(args.out);
    auto& os = out.stream();
    if (args.emit == "values") {
        const auto grid = rt::parse_grid(args.grid.empty() ? "0:4:401" : args.grid);
        if (grid.start < 0.0) throw rt::ArgumentError("grid: radii must be nonnegative");
        os << "r,value\n";
        for (const double r : grid.points()) os << g17(r) << ',' << g17((*p)(r)) << '\n';
        out.finish();
        return kOk;
    }
    if (args.emit != "fourier") throw rt::ArgumentError("--emit must be values or fourier");
    const auto grid = rt::parse_grid(args.grid.empty() ? "0:60:400" : args.grid);
    if (grid.start < 0.0) throw rt::ArgumentError("grid: t must be nonnegative");
    const auto scan = rt::scan_fourier(*p, grid.start, grid.stop, grid.count);
    os << "t,F\n";
    for (std::size_t i = 0; i < scan.t.size(); ++i) os << g17(scan.t[i]) << ',' << g17(scan.values[i]) << '\n';
    out.finish();
    if (scan.all_positive) {
        std::cerr << "all sampled values positive\n";
    } else if (scan.first_root) {
        std::cerr << "sign change in [" << g17(scan.first_bracket->first) << ", " << g17(scan.first_bracket->second)
                  << "], root at t = " << g17(*scan.first_root) << '\n';
    } else {
        std::cerr << "non-positive sample without sign change\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radial thin plate spline profiles: fitting, evaluation and convergence benchmarks"};
    app.require_subcommand(1);

    FitArgs fit;
    auto* fit_cmd = app.add_subcommand("fit", "Fit an interpolating profile and print its model JSON");
    fit_cmd->add_option("--knots", fit.knots, "Knots: comma list or single-column file")->required();
    fit_cmd->add_option("--values", fit.values, "Values: comma list or single-column file")->required();
    fit_cmd->add_option("--type", fit.type, "A (matches --alpha at r=0) or B (non-singular)")
        ->required()
        ->check(CLI::IsMember({"A", "B"}));
    fit_cmd->add_option("--alpha", fit.alpha, "Value at r = 0 (type A)");
    fit_cmd->add_option("--out", fit.out, "Output path (default stdout)");

    EvalArgs eval;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model on a grid as CSV");
    eval_cmd->add_option("--model", eval.model, "Model JSON file");
    eval_cmd->add_option("--builtin", eval.builtin, "eta2, beta or phi0");
    eval_cmd->add_option("--grid", eval.grid, "start:stop:count")->required();
    eval_cmd->add_option("--derivatives", eval.derivatives, "Highest derivative column (0, 1 or 2)")
        ->check(CLI::Range(0, 2));
    eval_cmd->add_option("--out", eval.out, "Output path (default stdout)");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Convergence table on uniform knots over [1, 2]");
    bench_cmd->add_option("--profile", bench.profile, "feps:<eps>, linear or cos3");
    bench_cmd->add_option("--levels", bench.levels, "a..b meaning n-1 = 2^a .. 2^b");
    bench_cmd->add_option("--out", bench.out, "Output path (default stdout)");

    RabutArgs rabut;
    auto* rabut_cmd = app.add_subcommand("rabut-compare", "Compare the kernel interpolant with the type B fit");
    rabut_cmd->add_option("--knots", rabut.knots, "Knots: comma list or single-column file")->required();
    rabut_cmd->add_option("--values", rabut.values, "Values: comma list or single-column file")->required();
    rabut_cmd->add_option("--grid", rabut.grid, "start:stop:count (default r_1:r_n:200)");
    rabut_cmd->add_option("--R1", rabut.R1, "Finite lower bound");
    rabut_cmd->add_option("--R2", rabut.R2, "Finite upper bound");
    rabut_cmd->add_option("--out", rabut.out, "Output path (default stdout)");

    CompactArgs compact;
    auto* compact_cmd = app.add_subcommand("compact", "Compactly supported profiles and their Hankel transforms");
    compact_cmd->add_option("--profile", compact.profile, "eta2 or beta")->required();
    compact_cmd->add_option("--emit", compact.emit, "values or fourier");
    compact_cmd->add_option("--grid", compact.grid, "start:stop:count");
    compact_cmd->add_option("--out", compact.out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*fit_cmd) return cmd_fit(fit);
        if (*eval_cmd) return cmd_eval(eval);
        if (*bench_cmd) return cmd_bench(bench);
        if (*rabut_cmd) return cmd_rabut_compare(rabut);
        if (*compact_cmd) return cmd_compact(compact);
    } catch (const rt::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
