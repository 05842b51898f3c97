#include "CLI11.hpp"

#include "dpii/bessel.hpp"
#include "dpii/continuum.hpp"
#include "dpii/hierarchy.hpp"
#include "dpii/laxmatrix.hpp"
#include "dpii/opuc.hpp"
#include "dpii/shiftpoly.hpp"
#include "dpii/symbol.hpp"
#include "dpii/toeplitz.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Logger {
    bool quiet = false;
    bool json = false;

    void info(const std::string& msg) const {
        if (quiet)
            return;
        if (json) {
            std::string esc;
            for (char c : msg) {
                if (c == '"' || c == '\\')
                    esc += '\\';
                esc += c;
            }
            std::cout << "{\"level\":\"info\",\"msg\":\"" << esc << "\"}\n";
        } else {
            std::cout << msg << "\n";
        }
    }
};

std::vector<std::string> split_thetas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

void write_output(const std::string& path, const std::string& content, const Logger& log,
                  const std::string& what) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw dpii::Error("cannot open output file: " + path);
    f << content;
    log.info("wrote " + what + " to " + path);
}

struct SymbolOpts {
    unsigned big_n = 1;
    std::string theta = "3";
    unsigned bits = 256;

    dpii::SymbolParams params() const {
        auto parts = split_thetas(theta);
        return dpii::SymbolParams::from_strings(big_n, parts, bits);
    }
};

void add_symbol_options(CLI::App* cmd, SymbolOpts& opts) {
    cmd->add_option("--N", opts.big_n, "Order of the weight (number of theta parameters)")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--theta", opts.theta, "Comma-separated theta_1..theta_N")->required();
    cmd->add_option("--bits", opts.bits, "Working precision in bits (default 256)");
}

dpii::SymbolParams params_or_exit(const SymbolOpts& opts) {
    try {
        return opts.params();
    } catch (const dpii::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        std::exit(2);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toeplitz determinants, circle orthogonal polynomials, and the discrete "
                 "Painleve II hierarchy"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key=value file");

    Logger log;
    app.add_flag("--quiet", log.quiet, "Suppress informational output");
    app.add_flag("--json-logs", log.json, "Emit log lines as JSON objects");

    // --- coeffs ---
    auto* coeffs_cmd = app.add_subcommand("coeffs", "Fourier coefficients of the symbol");
    SymbolOpts coeffs_opts;
    int coeffs_kmax = 64;
    std::string coeffs_out;
    add_symbol_options(coeffs_cmd, coeffs_opts);
    coeffs_cmd->add_option("--kmax", coeffs_kmax, "Largest covered |k| (default 64)");
    coeffs_cmd->add_option("--out", coeffs_out, "Output JSON path (stdout if omitted)");

    // --- determinants ---
    auto* dets_cmd = app.add_subcommand("determinants",
                                        "Determinant sequence and gap probabilities (CSV)");
    SymbolOpts dets_opts;
    int dets_nmax = 64;
    std::string dets_out;
    add_symbol_options(dets_cmd, dets_opts);
    dets_cmd->add_option("--nmax", dets_nmax, "Largest n (default 64)");
    dets_cmd->add_option("--out", dets_out, "Output CSV path (stdout if omitted)");

    // --- opuc ---
    auto* opuc_cmd = app.add_subcommand("opuc", "Szego recursion data x_n, kappa_n^2 (CSV)");
    SymbolOpts opuc_opts;
    int opuc_nmax = 64;
    std::string opuc_out;
    bool opuc_json = false;
    add_symbol_options(opuc_cmd, opuc_opts);
    opuc_cmd->add_option("--nmax", opuc_nmax, "Largest n (default 64)");
    opuc_cmd->add_option("--out", opuc_out, "Output path (stdout if omitted)");
    opuc_cmd->add_flag("--json", opuc_json, "Emit a JSON bundle with the determinants");

    // --- verify-recursion ---
    auto* verify_cmd = app.add_subcommand(
        "verify-recursion", "Numeric bridge: determinant recursion and hierarchy residuals");
    SymbolOpts verify_opts;
    int verify_nmax = 40;
    std::string verify_out;
    add_symbol_options(verify_cmd, verify_opts);
    verify_cmd->add_option("--nmax", verify_nmax, "Largest n (default 40)");
    verify_cmd->add_option("--out", verify_out, "Optional CSV of per-n equation residuals");

    // --- hierarchy ---
    auto* hier_cmd = app.add_subcommand("hierarchy", "Emit the N-th discrete equation");
    int hier_n = 1;
    std::string hier_format = "text";
    std::string hier_out;
    hier_cmd->add_option("--N", hier_n, "Equation index")->required()->check(CLI::PositiveNumber);
    hier_cmd->add_option("--format", hier_format, "text | latex | json")
        ->check(CLI::IsMember({"text", "latex", "json"}));
    hier_cmd->add_option("--out", hier_out, "Output path (stdout if omitted)");

    // --- lax ---
    auto* lax_cmd = app.add_subcommand("lax", "Build the Lax pair and verify its identities");
    int lax_n = 1;
    std::string lax_check = "all";
    std::string lax_emit;
    std::string lax_out;
    lax_cmd->add_option("--N", lax_n, "Hierarchy index")->required()->check(CLI::PositiveNumber);
    lax_cmd->add_option("--check", lax_check, "all | identities | compatibility | gauge")
        ->check(CLI::IsMember({"all", "identities", "compatibility", "gauge"}));
    lax_cmd->add_option("--emit", lax_emit, "latex | json rendering of T and U")
        ->check(CLI::IsMember({"latex", "json"}));
    lax_cmd->add_option("--out", lax_out, "Output path for --emit (stdout if omitted)");

    // --- bessel-compare ---
    auto* bes_cmd = app.add_subcommand(
        "bessel-compare", "x_n against the generalized-Bessel large-n profile (CSV)");
    SymbolOpts bes_opts;
    int bes_nmax = 40;
    std::string bes_out;
    add_symbol_options(bes_cmd, bes_opts);
    bes_cmd->add_option("--nmax", bes_nmax, "Largest n (default 40)");
    bes_cmd->add_option("--out", bes_out, "Output CSV path (stdout if omitted)");

    // --- continuum ---
    auto* cont_cmd = app.add_subcommand("continuum",
                                        "Continuum limit of the N-th discrete equation");
    int cont_n = 1;
    std::string cont_format = "text";
    std::string cont_out;
    cont_cmd->add_option("--N", cont_n, "Equation index")->required()->check(CLI::PositiveNumber);
    cont_cmd->add_option("--format", cont_format, "text | latex | json")
        ->check(CLI::IsMember({"text", "latex", "json"}));
    cont_cmd->add_option("--out", cont_out, "Output path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (coeffs_cmd->parsed()) {
            dpii::SymbolParams params = params_or_exit(coeffs_opts);
            auto table = dpii::fourier_table(params, coeffs_kmax);
            write_output(coeffs_out, table.to_json() + "\n", log, "coefficient table");
        } else if (dets_cmd->parsed()) {
            auto params = params_or_exit(dets_opts);
            auto table = dpii::fourier_table(params, dets_nmax + 1);
            auto seq = dpii::determinant_sequence(table, dets_nmax);
            auto gaps = dpii::gap_probabilities(seq);
            auto x = dpii::szego_sequence(table, dets_nmax);
            write_output(dets_out, dpii::determinants_csv(seq, gaps, x), log,
                         "determinant table");
        } else if (opuc_cmd->parsed()) {
            auto params = params_or_exit(opuc_opts);
            auto table = dpii::fourier_table(params, opuc_nmax + 1);
            auto x = dpii::szego_sequence(table, opuc_nmax);
            if (opuc_json) {
                auto seq = dpii::determinant_sequence(table, opuc_nmax);
                std::ostringstream os;
                unsigned bits = params.precision_bits;
                os << "{\"N\":" << params.big_n << ",\"x\":[";
                for (int n = 0; n <= x.n_max(); ++n)
                    os << (n ? "," : "") << "\"" << dpii::to_decimal(x.x[n], bits) << "\"";
                os << "],\"kappa_sq\":[";
                for (int n = 0; n <= x.n_max(); ++n)
                    os << (n ? "," : "") << "\"" << dpii::to_decimal(x.kappa_sq[n], bits)
                       << "\"";
                os << "],\"D\":[";
                for (int n = 0; n <= seq.n_max(); ++n)
                    os << (n ? "," : "") << "\"" << dpii::to_decimal(seq.d(n), bits) << "\"";
                os << "]}\n";
                write_output(opuc_out, os.str(), log, "recursion bundle");
            } else {
                write_output(opuc_out, dpii::opuc_csv(x), log, "recursion table");
            }
        } else if (verify_cmd->parsed()) {
            auto params = params_or_exit(verify_opts);
            auto data = dpii::build_certified(params, verify_nmax);
            auto rec = dpii::recursion_residual(data.dets, data.opuc);
            dpii::Real worst_rec = 0;
            for (const auto& r : rec)
                worst_rec = std::max(worst_rec, r);
            auto eq = dpii::hier::generate_equation(static_cast<int>(params.big_n));
            int n_lo = static_cast<int>(params.big_n);
            int n_hi = verify_nmax - static_cast<int>(params.big_n);
            auto res = dpii::hier::residual_trace(eq, data.opuc, n_lo, n_hi);
            dpii::Real worst_eq = 0;
            for (const auto& r : res)
                worst_eq = std::max(worst_eq, r);
            std::cout << "max_recursion_residual="
                      << dpii::to_decimal(worst_rec, params.precision_bits) << "\n";
            std::cout << "max_equation_residual="
                      << dpii::to_decimal(worst_eq, params.precision_bits) << "\n";
            if (!verify_out.empty())
                write_output(verify_out, dpii::hier::residual_csv(eq, data.opuc, n_lo, n_hi),
                             log, "residual table");
        } else if (hier_cmd->parsed()) {
            auto eq = dpii::hier::generate_equation(hier_n);
            std::string body;
            if (hier_format == "text")
                body = dpii::sym::to_text(eq.lhs) + "\n";
            else if (hier_format == "latex")
                body = dpii::sym::to_latex(eq.lhs) + "\n";
            else
                body = "{\"N\":" + std::to_string(hier_n) +
                       ",\"terms\":" + dpii::sym::to_json_terms(eq.lhs) + "}\n";
            write_output(hier_out, body, log, "hierarchy equation");
        } else if (lax_cmd->parsed()) {
            auto t_matrix = dpii::lax::build_T(lax_n);
            auto u_matrix = dpii::lax::build_U();
            if (lax_check == "all" || lax_check == "identities") {
                auto report = dpii::lax::verify_identities(t_matrix, lax_n);
                std::ostringstream os;
                os << "identities verified; alpha = [";
                for (std::size_t i = 0; i < report.alphas.size(); ++i)
                    os << (i ? ", " : "") << dpii::sym::to_text(report.alphas[i]);
                os << "]";
                log.info(os.str());
            }
            if (lax_check == "all" || lax_check == "compatibility") {
                auto eq = dpii::lax::compatibility_residual(t_matrix, u_matrix, lax_n);
                auto scalar = dpii::hier::generate_equation(lax_n);
                if (!(eq == scalar.lhs) && !((eq + scalar.lhs).is_zero()))
                    throw dpii::RouteMismatch("lax: compatibility scalar differs from the "
                                              "recursion-operator equation");
                log.info("compatibility verified; scalar relation matches the hierarchy "
                         "equation");
            }
            if (lax_check == "all" || lax_check == "gauge") {
                (void)dpii::lax::cresswell_joshi_map(t_matrix, u_matrix, lax_n);
                log.info("gauge map verified; standard lattice pair recovered");
            }
            if (!lax_emit.empty()) {
                std::string body;
                if (lax_emit == "latex")
                    body = "T = " + t_matrix.to_latex() + "\nU = " + u_matrix.to_latex() + "\n";
                else
                    body = "{\"N\":" + std::to_string(lax_n) + ",\"T\":" + t_matrix.to_json() +
                           ",\"U\":" + u_matrix.to_json() + "}\n";
                write_output(lax_out, body, log, "Lax pair");
            }
        } else if (bes_cmd->parsed()) {
            auto params = params_or_exit(bes_opts);
            auto table = dpii::fourier_table(params, bes_nmax + 1);
            auto x = dpii::szego_sequence(table, bes_nmax);
            auto rows = dpii::asym::compare_asymptotics(x);
            write_output(bes_out, dpii::asym::asymptotics_csv(rows, params.precision_bits),
                         log, "comparison table");
        } else if (cont_cmd->parsed()) {
            auto limit = dpii::cont::continuum_limit(cont_n);
            std::string body;
            if (cont_format == "text") {
                std::ostringstream os;
                os << "ode: " << dpii::cont::ode_text(limit.ode) << " = 0\n";
                for (const auto& e : limit.cancellations)
                    os << "order " << e.theta_power << ": "
                       << (e.zero ? "cancels" : "DOES NOT CANCEL") << "\n";
                body = os.str();
            } else if (cont_format == "latex") {
                body = dpii::cont::ode_latex(limit.ode) + " = 0\n";
            } else {
                body = dpii::cont::cancellation_json(limit) + "\n";
            }
            write_output(cont_out, body, log, "continuum limit");
        }
    } catch (const dpii::IdentityViolation& e) {
        std::cerr << "identity violation: " << e.what() << "\n";
        return 1;
    } catch (const dpii::UnexpectedResidual& e) {
        std::cerr << "identity violation: " << e.what() << "\n";
        return 1;
    } catch (const dpii::RouteMismatch& e) {
        std::cerr << "identity violation: " << e.what() << "\n";
        return 1;
    } catch (const dpii::GaugeMismatch& e) {
        std::cerr << "identity violation: " << e.what() << "\n";
        return 1;
    } catch (const dpii::SignMismatch& e) {
        std::cerr << "identity violation: " << e.what() << "\n";
        return 1;
    } catch (const dpii::LeadingOrderNonzero& e) {
        std::cerr << "identity violation: " << e.what() << "\n";
        return 1;
    } catch (const dpii::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
