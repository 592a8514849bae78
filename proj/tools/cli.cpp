#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include <hypgeo/analytic.hpp>
#include <hypgeo/criteria.hpp>
#include <hypgeo/report.hpp>
#include <hypgeo/scanner.hpp>
#include <hypgeo/series.hpp>

namespace hypgeo::cli {

namespace {

using json = nlohmann::ordered_json;

// Parse failure tied to the command-line argument it came from.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Rational rational_arg(const std::string& text, const std::string& option)
{
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(option + ": " + e.what());
    }
}

ParameterSet params_arg(const std::vector<std::string>& raw)
{
    if (raw.size() != 5) {
        throw UsageError("--params: expected five values a b c d e");
    }
    std::array<Rational, 5> v;
    for (std::size_t i = 0; i < 5; ++i) {
        v[i] = rational_arg(raw[i], "--params");
    }
    try {
        return ParameterSet::make(v[0], v[1], v[2], v[3], v[4]);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--params: ") + e.what());
    }
}

std::vector<Theorem> theorems_arg(const std::vector<std::string>& raw)
{
    std::vector<Theorem> out;
    for (const auto& t : raw) {
        if (t == "all") {
            out = {Theorem::T1, Theorem::T2, Theorem::T3, Theorem::T4};
            continue;
        }
        try {
            out.push_back(parse_theorem(t));
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--theorem: ") + e.what());
        }
    }
    return out;
}

SequenceKind kind_arg(const std::string& raw)
{
    try {
        return parse_sequence_kind(raw);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--kind: ") + e.what());
    }
}

Real tol_arg(const std::string& raw)
{
    const Rational q = rational_arg(raw, "--tol");
    if (q <= 0) {
        throw UsageError("--tol: must be positive");
    }
    return to_real(q);
}

GridSpec grid_arg(const std::vector<std::string>& raw)
{
    GridSpec grid;
    if (raw.empty()) {
        return grid;
    }
    if (raw.size() != 3) {
        throw UsageError("--grid: expected n_r n_theta r_max");
    }
    const Rational nr = rational_arg(raw[0], "--grid");
    const Rational nt = rational_arg(raw[1], "--grid");
    if (!is_integer(nr) || !is_integer(nt) || nr < 1 || nt < 1) {
        throw UsageError("--grid: n_r and n_theta must be positive integers");
    }
    grid.n_r = nr.get_num().get_ui();
    grid.n_theta = nt.get_num().get_ui();
    grid.r_max = rational_arg(raw[2], "--grid");
    if (!(grid.r_max > 0 && grid.r_max <= Rational(99, 100))) {
        throw UsageError("--grid: r_max must lie in (0, 0.99]");
    }
    return grid;
}

std::string params_text(const ParameterSet& p)
{
    return "(" + to_string(p.a()) + ", " + to_string(p.b()) + ", " + to_string(p.c()) + ", "
           + to_string(p.d()) + ", " + to_string(p.e()) + ")";
}

void print_verdict(std::ostream& out, const PredicateVerdict& v)
{
    out << "theorem " << to_string(v.theorem) << "  (a,b,c,d,e) = " << params_text(v.params) << '\n';
    std::size_t width = 4;
    for (const auto& p : v.parts) {
        width = std::max(width, p.name.size());
    }
    for (const auto& p : v.parts) {
        out << "  " << (p.satisfied ? "[ok]  " : "[FAIL]") << ' ' << std::left
            << std::setw(static_cast<int>(width)) << p.name << std::right << "  lhs "
            << to_string(p.lhs) << "  rhs " << to_string(p.rhs) << '\n';
    }
    out << "  overall: " << (v.overall ? "true" : "false") << '\n';
    if (const auto* f = v.first_failure()) {
        out << "  failing part: " << f->name << " (lhs " << to_string(f->lhs) << ", rhs "
            << to_string(f->rhs) << ")\n";
    }
    for (const auto& [name, value] : v.variant_flags) {
        out << "  variant " << name << ": " << (value ? "true" : "false") << '\n';
    }
}

void print_evidence(std::ostream& out, const DiskEvidence& e)
{
    out << to_string(e.functional) << ": min " << format_real(e.min_value) << " at ("
        << format_real(e.argmin.re) << ", " << format_real(e.argmin.im) << "), error budget "
        << format_real(e.error_budget) << ", positive " << (e.positive ? "true" : "false")
        << ", nodes " << e.evaluated_nodes << " (skipped " << e.skipped_nodes << ")\n";
}

struct Format {
    std::string name = "text";
    bool json_flag = false;
    bool csv_flag = false;

    std::string resolve() const
    {
        if (json_flag) {
            return "json";
        }
        if (csv_flag) {
            return "csv";
        }
        return name;
    }
};

void add_format(CLI::App* cmd, Format& fmt, bool allow_csv)
{
    auto* format = cmd->add_option("--format", fmt.name, "Output format")
                       ->check(allow_csv ? CLI::IsMember({"text", "json", "csv"})
                                         : CLI::IsMember({"text", "json"}));
    auto* json_flag = cmd->add_flag("--json", fmt.json_flag, "Shorthand for --format json");
    json_flag->excludes(format);
    if (allow_csv) {
        auto* csv_flag = cmd->add_flag("--csv", fmt.csv_flag, "Shorthand for --format csv");
        csv_flag->excludes(format);
        csv_flag->excludes(json_flag);
    }
}

bool emit(std::ostream& out, const std::string& payload, const std::string& path)
{
    if (path.empty()) {
        out << payload;
        return true;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw UsageError("--output: cannot open '" + path + "'");
    }
    file << payload;
    return true;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact close-to-convexity and starlikeness checks for z 3F2(a,b,c;d,e;z)", "hypgeo"};
    app.require_subcommand(1);

    std::vector<std::string> params_raw;
    std::vector<std::string> theorems_raw{"all"};
    std::string kind_raw = "normalized";
    std::string tol_raw = "1/1000000000000";
    std::vector<std::string> grid_raw;
    std::string output;
    std::size_t n = 0;
    unsigned workers = 0;
    Format fmt;

    auto* coeffs = app.add_subcommand("coeffs", "Print A_1..A_N exactly");
    coeffs->add_option("--params", params_raw, "a b c d e")->expected(5)->required();
    coeffs->add_option("--n", n, "Number of coefficients")->default_val(10);
    coeffs->add_option("--kind", kind_raw, "normalized | odd | alexander");
    add_format(coeffs, fmt, false);

    auto* check = app.add_subcommand("check", "Evaluate theorem predicates");
    check->add_option("--params", params_raw, "a b c d e")->expected(5)->required();
    check->add_option("--theorem", theorems_raw, "1..4 or all (repeatable)");
    add_format(check, fmt, false);

    auto* audit = app.add_subcommand("audit", "Audit a proof polynomial identity");
    audit->add_option("--params", params_raw, "a b c d e")->expected(5)->required();
    audit->add_option("--theorem", theorems_raw, "1..4 or all (repeatable)");
    audit->add_option("--n", n, "Audit 1 <= n <= N")->default_val(100);
    add_format(audit, fmt, false);

    std::vector<std::string> z_raw;
    bool derivative = false;
    auto* eval = app.add_subcommand("eval", "Evaluate the series (or derivative) at z");
    eval->add_option("--params", params_raw, "a b c d e")->expected(5)->required();
    eval->add_option("--z", z_raw, "re [im]")->expected(1, 2)->required();
    eval->add_option("--kind", kind_raw, "normalized | odd | alexander");
    eval->add_option("--tol", tol_raw, "Tail tolerance");
    eval->add_flag("--derivative", derivative, "Evaluate f' instead of f");
    add_format(eval, fmt, false);

    std::string functional_raw;
    auto* evidence = app.add_subcommand("evidence", "Disk-sampled KS* evidence");
    evidence->add_option("--params", params_raw, "a b c d e")->expected(5)->required();
    evidence->add_option("--kind", kind_raw, "normalized | alexander (odd with --functional)");
    evidence->add_option("--functional", functional_raw, "Single functional: ctc_log | ctc_atanh | starlike");
    evidence->add_option("--grid", grid_raw, "n_r n_theta r_max")->expected(3);
    evidence->add_option("--tol", tol_raw, "Tail tolerance");
    evidence->add_option("--workers", workers, "Worker threads (0 = all cores)");
    add_format(evidence, fmt, false);

    std::vector<std::string> fixed_raw;
    std::vector<std::string> axes_raw;
    bool lemmas = false;
    bool disk = false;
    std::size_t lemma_n = 200;
    std::string find_target;
    auto* scan = app.add_subcommand("scan", "Scan a 2-D parameter slice");
    scan->add_option("--fix", fixed_raw, "name=value (three of a..e)")->required();
    scan->add_option("--axis", axes_raw, "name:start:stop:steps (two)")->required();
    scan->add_flag("--lemmas", lemmas, "Run lemma checks per cell");
    scan->add_option("--lemma-n", lemma_n, "Lemma prefix length")->default_val(200);
    scan->add_flag("--disk", disk, "Run disk evidence per cell");
    scan->add_option("--grid", grid_raw, "n_r n_theta r_max")->expected(3);
    scan->add_option("--tol", tol_raw, "Tail tolerance");
    scan->add_option("--workers", workers, "Worker threads (0 = all cores)");
    scan->add_option("--find", find_target, "Report the first cell satisfying a condition");
    scan->add_option("--output", output, "Write the report here instead of stdout");
    fmt.name = "";
    add_format(scan, fmt, true);

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("hypgeo");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_affirmative;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_affirmative;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        std::string format = fmt.resolve();

        if (coeffs->parsed()) {
            const auto p = params_arg(params_raw);
            if (n < 2) {
                throw UsageError("--n: must be at least 2");
            }
            const auto seq = build_sequence(p, n, kind_arg(kind_raw));
            if (format == "json") {
                json doc = {{"command", "coeffs"}};
                doc.update(to_json(seq));
                out << doc.dump(2) << '\n';
            } else {
                for (std::size_t i = 1; i <= seq.size(); ++i) {
                    out << (i > 1 ? ", " : "") << to_string(seq.A(i));
                }
                out << '\n';
            }
            return exit_affirmative;
        }

        if (check->parsed()) {
            const auto p = params_arg(params_raw);
            p.require_positive_denominators();
            bool all = true;
            json verdicts = json::array();
            for (const auto t : theorems_arg(theorems_raw)) {
                const auto v = theorem_predicate(t, p);
                all = all && v.overall;
                if (format == "json") {
                    verdicts.push_back(to_json(v));
                } else {
                    print_verdict(out, v);
                }
            }
            if (format == "json") {
                out << json{{"command", "check"}, {"verdicts", verdicts}}.dump(2) << '\n';
            }
            return all ? exit_affirmative : exit_negative;
        }

        if (audit->parsed()) {
            const auto p = params_arg(params_raw);
            if (n < 2) {
                throw UsageError("--n: must be at least 2");
            }
            bool ok = true;
            json reports = json::array();
            for (const auto t : theorems_arg(theorems_raw)) {
                const auto r = proof_identity_audit(t, p, n);
                ok = ok && r.identity_ok;
                if (format == "json") {
                    reports.push_back(to_json(r));
                    continue;
                }
                std::size_t negatives = 0;
                for (const auto& v : r.nonnegativity) {
                    negatives += v.nonneg ? 0 : 1;
                }
                out << "audit " << to_string(t) << "  (a,b,c,d,e) = " << params_text(p) << '\n'
                    << "  range: n = " << r.first << ".." << r.last << '\n'
                    << "  identity_ok: " << (r.identity_ok ? "true" : "false") << '\n'
                    << "  proof polynomial negative at " << negatives << " of "
                    << r.nonnegativity.size() << " indices\n";
                if (!r.nonnegativity.empty()) {
                    out << "  value at n = 1: " << to_string(r.nonnegativity.front().value) << '\n';
                }
                if (!r.mismatches.empty()) {
                    out << "  first mismatch at n = " << r.mismatches.front() << '\n';
                }
            }
            if (format == "json") {
                out << json{{"command", "audit"}, {"reports", reports}}.dump(2) << '\n';
            }
            return ok ? exit_affirmative : exit_negative;
        }

        if (eval->parsed()) {
            const auto p = params_arg(params_raw);
            const Rational re = rational_arg(z_raw.at(0), "--z");
            const Rational im = z_raw.size() > 1 ? rational_arg(z_raw[1], "--z") : Rational(0);
            if (re * re + im * im >= 1) {
                throw UsageError("--z: must lie inside the unit disk");
            }
            const auto seq = build_sequence(p, 2, kind_arg(kind_raw));
            const auto z = ComplexPoint::from(re, im);
            const Real tol = tol_arg(tol_raw);
            const auto r = derivative ? eval_derivative(seq, z, tol) : eval_series(seq, z, tol);
            if (format == "json") {
                json doc = {{"command", "eval"},
                            {"target", derivative ? "derivative" : "value"},
                            {"kind", std::string(to_string(seq.kind()))},
                            {"params", to_json(p)},
                            {"z", {{"re", to_string(re)}, {"im", to_string(im)}}}};
                doc.update(to_json(r));
                out << doc.dump(2) << '\n';
            } else {
                out << (derivative ? "f'(z)" : "f(z)") << " = " << format_real(real(r.value), 34)
                    << " + " << format_real(imag(r.value), 34) << "i\n"
                    << "truncation_bound: " << format_real(r.truncation_bound) << '\n'
                    << "terms_used: " << r.terms_used << '\n';
            }
            return exit_affirmative;
        }

        if (evidence->parsed()) {
            const auto p = params_arg(params_raw);
            const auto kind = kind_arg(kind_raw);
            const auto grid = grid_arg(grid_raw);
            const Real tol = tol_arg(tol_raw);
            const EvidenceOptions options{workers, max_terms_from_env()};
            std::vector<DiskEvidence> results;
            if (!functional_raw.empty()) {
                Functional fn;
                try {
                    fn = parse_functional(functional_raw);
                } catch (const std::invalid_argument& e) {
                    throw UsageError(std::string("--functional: ") + e.what());
                }
                results.push_back(disk_minimum(build_sequence(p, 2, kind), fn, grid, tol, options));
            } else {
                if (kind == SequenceKind::odd_embedded) {
                    throw UsageError("--kind: KS* evidence needs normalized or alexander");
                }
                auto [ctc, star] = ks_star_evidence(p, kind, grid, tol, options);
                results = {std::move(ctc), std::move(star)};
            }
            bool positive = true;
            json items = json::array();
            for (const auto& e : results) {
                positive = positive && e.positive;
                if (format == "json") {
                    items.push_back(to_json(e));
                } else {
                    print_evidence(out, e);
                }
            }
            if (format == "json") {
                out << json{{"command", "evidence"},
                            {"kind", std::string(to_string(kind))},
                            {"params", to_json(p)},
                            {"evidence", items},
                            {"supported", positive}}
                           .dump(2)
                    << '\n';
            } else {
                out << "supported: " << (positive ? "true" : "false") << '\n';
            }
            return positive ? exit_affirmative : exit_negative;
        }

        if (scan->parsed()) {
            SliceSpec spec;
            for (const auto& f : fixed_raw) {
                const auto eq = f.find('=');
                if (eq != 1) {
                    throw UsageError("--fix: expected name=value, got '" + f + "'");
                }
                spec.fixed[f[0]] = rational_arg(f.substr(2), "--fix");
            }
            if (axes_raw.size() != 2) {
                throw UsageError("--axis: exactly two axes required");
            }
            for (std::size_t i = 0; i < 2; ++i) {
                std::vector<std::string> pieces;
                std::stringstream ss(axes_raw[i]);
                for (std::string piece; std::getline(ss, piece, ':');) {
                    pieces.push_back(piece);
                }
                if (pieces.size() != 4 || pieces[0].size() != 1) {
                    throw UsageError("--axis: expected name:start:stop:steps, got '" + axes_raw[i] + "'");
                }
                const Rational steps = rational_arg(pieces[3], "--axis");
                if (!is_integer(steps) || steps < 0) {
                    throw UsageError("--axis: steps must be a nonnegative integer");
                }
                spec.axes[i] = ScanAxis{pieces[0][0], rational_arg(pieces[1], "--axis"),
                                        rational_arg(pieces[2], "--axis"), steps.get_num().get_ui()};
            }
            spec.options.run_lemmas = lemmas;
            spec.options.lemma_length = lemma_n;
            spec.options.run_disk = disk;
            spec.options.grid = grid_arg(grid_raw);
            spec.options.tol = tol_arg(tol_raw);
            spec.options.workers = workers;
            try {
                spec.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(std::string("slice: ") + e.what());
            }

            if (!find_target.empty()) {
                if (!is_known_condition(find_target)) {
                    throw UsageError("--find: unknown condition '" + find_target + "'");
                }
                const auto hit = find_satisfying(spec, find_target);
                if (format == "json") {
                    json doc = {{"command", "scan"}, {"target", find_target}};
                    doc["found"] = hit ? to_json(*hit) : json(nullptr);
                    emit(out, doc.dump(2) + "\n", output);
                } else {
                    emit(out,
                         find_target + ": " + (hit ? params_text(*hit) : std::string("none")) + "\n",
                         output);
                }
                return hit ? exit_affirmative : exit_negative;
            }

            const auto result = run_scan(spec);
            if (format.empty() || format == "csv" || format == "text") {
                emit(out, scan_to_csv(result), output);
            } else {
                emit(out, scan_to_json(result), output);
            }
            if (!output.empty()) {
                for (const auto& [cls, count] : result.summary) {
                    out << to_string(cls) << ": " << count << '\n';
                }
            }
            return exit_affirmative;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_negative;
    }
    return exit_usage;
}

} // namespace hypgeo::cli
