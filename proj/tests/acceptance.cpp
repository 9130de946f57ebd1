// Acceptance harness: one line per criterion, nonzero exit iff any fail.
//
// Each criterion maps to a named verification suite or a direct check; the
// command-line determinism criterion shells out to the installed CLI binary
// (path injected at compile time as ELLU_CLI_PATH).

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ellu/heights.hpp"
#include "ellu/suites.hpp"

using namespace ellu;

namespace {

int g_failures = 0;

void report(int idx, bool pass, const std::string& text)
{
    std::printf("%s  criterion %2d: %s\n", pass ? "PASS" : "FAIL", idx, text.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, ...)
{
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return std::string(buf);
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

int main()
{
    detail::Sampler rng(424242);

    // 1. Translation laws, 100 random (z, tau), < 2 s.
    {
        const auto t0 = std::chrono::steady_clock::now();
        SuiteOptions o;
        o.samples = 100;
        const SuiteResult r = suite_lemma13(o);
        const double dt = seconds_since(t0);
        const double worst = r.report["max_residual"].get<double>();
        report(1, r.pass && dt < 2.0,
               fmt("translation laws, 100 samples (max rel err %.2e, %.2fs)", worst, dt));
    }

    // 2. Two independent paths: Siegel product vs Klein form times the
    //    twelfth root of the discriminant, 50 samples, < 5 s.
    {
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const Complex tau = rng.tau(0.4, 3.0);
            // Stay inside the sigma/Klein q-product strip r2 in (-1, 1).
            const auto [a, b] = rng.coords(-0.95, 0.95, 0.05);
            const Complex z = Complex(a, 0.0) + Complex(b, 0.0) * tau;
            const TorusPoint p(z, tau);
            const LatticeFunctions lf{HalfPlanePoint(tau)};
            const double lhs = std::abs(siegel(p));
            const double rhs = std::abs(lf.klein(p)) * std::abs(lf.delta_twelfth_root());
            worst = std::max(worst, std::abs(lhs - rhs) / rhs);
        }
        const double dt = seconds_since(t0);
        report(2, worst <= 1e-9 && dt < 5.0,
               fmt("|Si| = |Klein form| * |D^(1/12)|, 50 samples (max rel err %.2e, %.2fs)",
                   worst, dt));
    }

    // 3. Period-matrix structure and monodromy.
    {
        const SuiteResult r = suite_matrix_monodromy(SuiteOptions{});
        report(3, r.pass,
               fmt("period matrix exact structure + rational monodromy in W(Q) "
                   "(max residual %.2e)",
                   r.report["max_monodromy_residual"].get<double>()));
    }

    // 4. Normalization root: unit modulus and eighth-root phase grid,
    //    50 reduced samples.
    {
        double worst_mod = 0.0, worst_phase = 0.0;
        for (int i = 0; i < 50; ++i) {
            const Complex tau = rng.tau(0.5, 3.0);
            const double r1 = rng.range(0.02, 0.98);
            const double r2 = -rng.range(0.02, 0.98);
            const Complex z = Complex(r1, 0.0) - Complex(r2, 0.0) * tau;
            const TorusPoint p = TorusPoint::with_coords(z, tau, r1, r2);
            const Complex root = siegel_determination_root(p);
            worst_mod = std::max(worst_mod, std::abs(std::abs(root) - 1.0));
            const double turns = std::arg(root) / (two_pi / 8.0);
            worst_phase =
                std::max(worst_phase, std::abs(turns - std::round(turns)) * (two_pi / 8.0));
        }
        report(4, worst_mod <= 1e-9 && worst_phase <= 1e-8,
               fmt("normalization root unimodular on the 2pi/8 grid "
                   "(modulus defect %.2e, phase defect %.2e)",
                   worst_mod, worst_phase));
    }

    // 5. Torsion units against Siegel units at full 5-torsion, D = 120.
    {
        const SuiteResult r = suite_prop45(SuiteOptions{});
        report(5, r.pass,
               fmt("g_{{i_v}} * Si^v = 1 mod mu_120 over ((1/5)Z)^2 (max distance %.2e)",
                   r.report["max_residual"].get<double>()));
    }

    // 6. q-expansions: leading exponent, level-3 integrality of the 36th
    //    power, numeric resummation.
    {
        const SuiteResult r = suite_qexp(SuiteOptions{});
        report(6, r.pass, "q-expansion: -1/36 leading exponent, 36th-power integrality, "
                          "resummation at tau = 2i");
    }

    // 7. Distribution law in modulus for N = 2, 3.
    {
        const SuiteResult r = suite_distribution(SuiteOptions{});
        report(7, r.pass,
               fmt("prod_{t in E[N]} |Si(z+t)| = |Si(Nz)|, N = 2,3 (max residual %.2e)",
                   r.report["max_residual"].get<double>()));
    }

    // 8. Holomorphic modification: exact F, grid Cauchy-Riemann residual,
    //    uniqueness witness.
    {
        const SuiteResult r = suite_holomod(SuiteOptions{});
        report(8, r.pass, "holomorphic modification: exact rational F, dbar residual < 1e-6 "
                          "on 20x20 grid, perturbation witness");
    }

    // 9. Si_P: holomorphic with no modification; modulus matches the
    //    Weierstrass side.
    {
        const SuiteResult r = suite_parallelogram(SuiteOptions{});
        report(9, r.pass,
               fmt("Si_P holomorphy + |Si_P| = |wp(z1)-wp(z2)|*|D|^(-1/6) "
                   "(mod %.2e, dbar %.2e)",
                   r.report["max_modulus_residual"].get<double>(),
                   r.report["max_cr_residual"].get<double>()));
    }

    // 10. Heights: periodicity, parallelogram law, distribution, cross-path.
    {
        const SuiteResult r = suite_heights(SuiteOptions{});
        report(10, r.pass,
               fmt("local heights: periodicity %.2e, parallelogram %.2e, cross-path %.2e",
                   r.report["max_periodicity_residual"].get<double>(),
                   r.report["max_parallelogram_residual"].get<double>(),
                   r.report["max_cross_path_residual"].get<double>()));
    }

    // 11. Decompose round-trip, 50 kernel + 50 non-kernel, < 5 s.
    {
        const auto t0 = std::chrono::steady_clock::now();
        const SuiteResult r = suite_decompose_roundtrip(SuiteOptions{});
        const double dt = seconds_since(t0);
        report(11, r.pass && dt < 5.0,
               fmt("kernel divisors decompose and re-expand exactly, non-kernel rejected "
                   "(50 + 50, %.2fs)",
                   dt));
    }

    // 12. Determinism: the CLI run twice with one seed produces
    //     byte-identical reports.
    {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path();
        bool ok = true;
        std::string why = "byte-identical verify reports across reruns";
        int pair_index = 0;
        for (const std::string& args :
             {std::string("verify lemma13 --samples 5 --seed 777"),
              std::string("verify decompose-roundtrip --count 5 --seed 41")}) {
            const fs::path a = dir / ("ellu_acc_" + std::to_string(pair_index) + "_a.json");
            const fs::path b = dir / ("ellu_acc_" + std::to_string(pair_index) + "_b.json");
            ++pair_index;
            const std::string base = std::string("\"") + ELLU_CLI_PATH + "\" " + args;
            const int rc1 = std::system((base + " --out \"" + a.string() + "\"").c_str());
            const int rc2 = std::system((base + " --out \"" + b.string() + "\"").c_str());
            const std::string ca = slurp(a), cb = slurp(b);
            if (rc1 != 0 || rc2 != 0 || ca.empty() || ca != cb) {
                ok = false;
                why = "reports differ or CLI failed for: " + args;
            }
            fs::remove(a);
            fs::remove(b);
        }
        report(12, ok, why);
    }

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
    } else {
        std::printf("%d criteria FAILED\n", g_failures);
    }
    return g_failures == 0 ? 0 : 1;
}
