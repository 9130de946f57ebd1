// ellu: command-line front door.
//
//   ellu eval <siegel|siegel-unit|li01|matrix|sip|height> [flags]
//   ellu verify <suite> [flags]
//   ellu qexp --v p/q,p/q [--order r] [--power k]
//   ellu decompose <divisor.json> [--check]
//
// All output is JSON.  Exit codes: 0 success, 1 verification failure,
// 2 usage error, 3 domain error.  Identical flags (including --seed)
// produce byte-identical reports.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ellu/heights.hpp"
#include "ellu/serialization.hpp"
#include "ellu/suites.hpp"

namespace {

using namespace ellu;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

Complex parse_complex_arg(const std::string& s)
{
    const auto comma = s.find(',');
    if (comma == std::string::npos) {
        throw CLI::ValidationError("expected 're,im', got '" + s + "'");
    }
    try {
        return Complex(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
    } catch (const std::exception&) {
        throw CLI::ValidationError("expected 're,im', got '" + s + "'");
    }
}

TorsionParameter parse_torsion_arg(const std::string& s)
{
    const auto comma = s.find(',');
    if (comma == std::string::npos) {
        throw CLI::ValidationError("expected 'p/q,p/q', got '" + s + "'");
    }
    return TorsionParameter(parse_rational(s.substr(0, comma)),
                            parse_rational(s.substr(comma + 1)));
}

// Working-precision request; affects the automatic series-length selection.
SiegelConfig base_config()
{
    SiegelConfig cfg;
    if (const char* env = std::getenv("ELLIPTIC_UNITS_PRECISION")) {
        try {
            cfg.target_digits = std::clamp(std::stoi(env), 6, 17);
        } catch (const std::exception&) {
            // Ignore malformed values; keep the default.
        }
    }
    return cfg;
}

void emit(const json& j, const std::string& out_path)
{
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
}

json rational_matrix_json(const std::vector<std::vector<Rational>>& m)
{
    json rows = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& x : row) r.push_back(rat_str(x));
        rows.push_back(std::move(r));
    }
    return rows;
}

int cmd_eval(const std::string& fn, const std::optional<Complex>& z,
             const std::optional<Complex>& z2, const std::optional<Complex>& tau,
             const std::optional<TorsionParameter>& v, int trunc, const std::string& out)
{
    SiegelConfig cfg = base_config();
    if (trunc > 0) cfg.max_terms = trunc;

    const auto need_tau = [&]() -> Complex {
        if (!tau) throw std::invalid_argument("--tau is required");
        return *tau;
    };
    const auto need_z = [&]() -> Complex {
        if (!z) throw std::invalid_argument("--z is required");
        return *z;
    };

    json j{{"function", fn}};
    if (fn == "siegel") {
        const TorusPoint p(need_z(), need_tau());
        const Complex val = siegel(p, cfg);
        j["value"] = complex_to_json(val);
        j["log_abs"] = std::log(std::abs(val));
        j["r1"] = p.r1;
        j["r2"] = p.r2;
    } else if (fn == "siegel-unit") {
        if (!v) throw std::invalid_argument("--v is required");
        const HalfPlanePoint h(need_tau());
        const Complex val = siegel_torsion(*v, h, cfg);
        j["value"] = complex_to_json(val);
        j["v_reduced"] = json(v->reduced());
        j["root_ambiguity_denominator"] = 12 * to_long(big_lcm(rat_den(v->v1), rat_den(v->v2)));
    } else if (fn == "li01") {
        const TorusPoint p(need_z(), need_tau());
        j["value"] = complex_to_json(li01(p, cfg));
        j["determination"] = "fundamental-domain, principal branches";
    } else if (fn == "matrix") {
        const PeriodMatrix P = period_matrix_at(TorusPoint(need_z(), need_tau()), cfg);
        j["value"] = matrix_to_json(P.entries);
        j["r1"] = P.point.r1;
        j["r2"] = P.point.r2;
    } else if (fn == "sip") {
        if (!z2) throw std::invalid_argument("--z2 is required");
        const Complex val = si_P(need_z(), *z2, HalfPlanePoint(need_tau()), cfg);
        j["value"] = complex_to_json(val);
    } else if (fn == "height") {
        const Complex t = need_tau();
        if (v && !z) {
            j["value"] = neron_height_torsion(*v, HalfPlanePoint(t), cfg).lambda;
        } else {
            j["value"] = neron_height(TorusPoint(need_z(), t), cfg).lambda;
        }
    } else {
        throw CLI::ValidationError("unknown eval function: " + fn);
    }
    j["max_terms"] = cfg.max_terms;
    emit(j, out);
    return kExitOk;
}

int cmd_verify(const std::string& suite, const SuiteOptions& opts, const std::string& out)
{
    const SuiteResult r = run_suite(suite, opts);
    emit(r.report, out);
    return r.pass ? kExitOk : kExitVerifyFail;
}

int cmd_qexp(const TorsionParameter& v, const std::string& order_str, long power,
             const std::string& out)
{
    if (v.reduced().is_lattice_point()) {
        throw std::domain_error("the Siegel function vanishes identically at integral v");
    }
    const Rational order = parse_rational(order_str);
    json j{{"v", json(v.reduced())}};
    if (power == 1) {
        j["series"] = qseries_to_json(qexp_siegel(v, order));
    } else {
        j["series"] = qseries_to_json(qexp_siegel_power(v, BigInt(power), order));
        j["power"] = power;
    }
    emit(j, out);
    return kExitOk;
}

int cmd_decompose(const std::string& path, bool check, const std::string& out)
{
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read divisor file: " + path);
    json in = json::parse(f);
    const Divisor s = divisor_from_json(in);
    if (!kernel_member(s)) {
        json err{{"error", "divisor is not in the kernel of d"},
                 {"d_matrix", rational_matrix_json(d_map(s))}};
        std::cout << err.dump(2) << "\n";
        return kExitDomain;
    }
    const GeneratorCertificate cert = decompose(s);
    json j = certificate_to_json(cert);
    if (check) {
        const bool ok = (cert.expand() == s);
        j["check"] = ok;
        if (!ok) {
            emit(j, out);
            return kExitVerifyFail;
        }
    }
    emit(j, out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"elliptic-units toolkit: Siegel functions, modular units, "
                 "q-expansions, heights, divisor certificates"};
    app.require_subcommand(1);

    std::string z_str, z2_str, tau_str, v_str, out_path, group_spec = "r=2;tors=6";
    std::string order_str = "5";
    long power = 1;
    int trunc = 0;
    SuiteOptions opts;

    // eval -------------------------------------------------------------
    CLI::App* eval = app.add_subcommand("eval", "evaluate a named function at a point");
    std::string eval_fn;
    eval->add_option("function", eval_fn, "siegel | siegel-unit | li01 | matrix | sip | height")
        ->required();
    eval->add_option("--z", z_str, "point z as re,im");
    eval->add_option("--z2", z2_str, "second point for sip, as re,im");
    eval->add_option("--tau", tau_str, "upper-half-plane parameter as re,im");
    eval->add_option("--v", v_str, "torsion parameter as p/q,p/q");
    eval->add_option("--trunc", trunc, "series length override");
    eval->add_option("--out", out_path, "write JSON here instead of stdout");

    // verify -----------------------------------------------------------
    CLI::App* verify = app.add_subcommand("verify", "run a named verification suite");
    std::string suite;
    verify->add_option("suite", suite, "one of: lemma13, matrix-monodromy, prop45, distribution, "
                                       "parallelogram, holomod, heights, decompose-roundtrip, qexp")
        ->required();
    verify->add_option("--samples", opts.samples, "sample count override");
    verify->add_option("--tol", opts.tol, "tolerance override");
    verify->add_option("--seed", opts.seed, "random seed (reports are deterministic per seed)");
    verify->add_option("--group", group_spec, "target group, e.g. r=2;tors=6");
    verify->add_option("--count", opts.count, "decompose-roundtrip cases per side");
    verify->add_option("--out", out_path, "write JSON report here instead of stdout");

    // qexp ---------------------------------------------------------------
    CLI::App* qexp = app.add_subcommand("qexp", "exact q-expansion of a Siegel unit");
    qexp->add_option("--v", v_str, "torsion parameter as p/q,p/q")->required();
    qexp->add_option("--order", order_str, "truncation order (rational, e.g. 3 or 7/2)");
    qexp->add_option("--power", power, "integer power to apply");
    qexp->add_option("--trunc", trunc, "alias for --order when --order is absent (integer)");
    qexp->add_option("--out", out_path, "write JSON here instead of stdout");

    // decompose ----------------------------------------------------------
    CLI::App* dec = app.add_subcommand("decompose", "write a generator certificate for a kernel divisor");
    std::string divisor_path;
    bool check = false;
    dec->add_option("file", divisor_path, "JSON divisor file")->required();
    dec->add_flag("--check", check, "re-expand the certificate and compare");
    dec->add_option("--out", out_path, "write JSON here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*eval) {
            std::optional<Complex> z, z2, tau;
            std::optional<TorsionParameter> v;
            if (!z_str.empty()) z = parse_complex_arg(z_str);
            if (!z2_str.empty()) z2 = parse_complex_arg(z2_str);
            if (!tau_str.empty()) tau = parse_complex_arg(tau_str);
            if (!v_str.empty()) v = parse_torsion_arg(v_str);
            return cmd_eval(eval_fn, z, z2, tau, v, trunc, out_path);
        }
        if (*verify) {
            opts.group = parse_group_spec(group_spec);
            const auto names = suite_names();
            if (std::find(names.begin(), names.end(), suite) == names.end()) {
                std::cerr << "unknown suite: " << suite << "\n";
                return kExitUsage;
            }
            return cmd_verify(suite, opts, out_path);
        }
        if (*qexp) {
            if (order_str == "5" && trunc > 0) order_str = std::to_string(trunc);
            return cmd_qexp(parse_torsion_arg(v_str), order_str, power, out_path);
        }
        if (*dec) {
            return cmd_decompose(divisor_path, check, out_path);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cout << json{{"error", e.what()}}.dump(2) << "\n";
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
