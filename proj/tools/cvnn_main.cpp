#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvnn/activations.hpp"
#include "cvnn/errors.hpp"
#include "cvnn/numerics.hpp"
#include "cvnn/synthesis.hpp"
#include "cvnn/targets.hpp"
#include "cvnn/trig_approx.hpp"

namespace {

using namespace cvnn;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct SynthArgs {
    std::string activation = "exp-re";
    std::string target = "zero";
    int n = 1;
    int k = 1;
    long long budget = 81;
    std::string out = "network.json";
    int quad = 0;
    int grid = 0;
    long long seed = 0;
    bool high_precision = false;
};

void write_diagnostics(const std::string& path, const SynthesisDiagnostics& d,
                       const SynthArgs& args, double seconds) {
    nlohmann::ordered_json j;
    j["target"] = args.target;
    j["activation"] = args.activation;
    j["n"] = args.n;
    j["k"] = args.k;
    j["budget"] = args.budget;
    j["seed"] = args.seed;
    j["M"] = d.M;
    j["h"] = d.h;
    j["neuron_count"] = d.neuron_count;
    j["degenerate_budget"] = d.degenerate_budget;
    j["conditioning_flag"] = d.conditioning_flag;
    j["high_precision"] = d.high_precision;
    j["derivative_method"] = d.derivative_method;
    j["sup_error"] = d.sup_error;
    j["cheb_residual"] = d.cheb_residual;
    j["basis_residual"] = d.basis_residual;
    j["basis_target"] = d.basis_target;
    auto hist = nlohmann::ordered_json::array();
    for (const auto& st : d.h_history) hist.push_back({{"h", st.h}, {"worst_ratio", st.worst_ratio}});
    j["h_history"] = std::move(hist);
    j["seconds"] = seconds;
    std::ofstream out(path, std::ios::binary);
    out << j.dump(2) << "\n";
}

int cmd_synth(const SynthArgs& args) {
    SynthesisOptions opts;
    opts.quad_points = args.quad;
    opts.grid_points = args.grid;
    opts.high_precision = args.high_precision;
    ActivationSpec spec = make_activation(args.activation);
    TargetSpec target = make_target(args.target);

    auto start = std::chrono::steady_clock::now();
    SynthesisDiagnostics diag;
    int code = 0;
    try {
        auto [net, d] = synthesize(spec, target.fn, args.n, args.k, args.budget, opts);
        diag = d;
        save_network(args.out, net);
        if (diag.conditioning_flag) code = 4;
    } catch (const ConditioningError& e) {
        std::cerr << "conditioning error: " << e.what() << "\n";
        diag.conditioning_flag = true;
        diag.sup_error = e.best_residual();
        code = 4;
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_diagnostics(args.out + ".diag.json", diag, args, seconds);
    std::cout << "error=" << fmt(diag.sup_error) << "\n";
    return code;
}

struct RatesArgs {
    std::string activation = "exp-re";
    std::string target = "gauss";
    int n = 1;
    int k = 2;
    std::vector<long long> budgets;
    std::string out = "rates.csv";
    int quad = 0;
    int grid = 0;
    long long seed = 0;
    bool high_precision = false;
};

unsigned thread_cap() {
    unsigned cap = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CVNN_SYNTH_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) cap = static_cast<unsigned>(v);
    }
    return cap;
}

struct RateRow {
    std::string text;
    bool fit_eligible = false;
    double log_m = 0.0;
    double log_err = 0.0;
};

int cmd_rates(const RatesArgs& args) {
    if (args.budgets.empty()) {
        std::cerr << "no budgets given\n";
        return 2;
    }
    SynthesisOptions opts;
    opts.quad_points = args.quad;
    opts.grid_points = args.grid;
    opts.high_precision = args.high_precision;
    ActivationSpec spec = make_activation(args.activation);
    TargetSpec target = make_target(args.target);

    std::vector<long long> budgets = args.budgets;
    std::sort(budgets.begin(), budgets.end());

    // Rows are independent; run them on a capped pool and assemble in budget
    // order so the output does not depend on the thread count.
    std::vector<RateRow> rows(budgets.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= budgets.size()) return;
            long long budget = budgets[i];
            auto start = std::chrono::steady_clock::now();
            RateRow row;
            try {
                auto [net, diag] = synthesize(spec, target.fn, args.n, args.k, budget, opts);
                double seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count();
                char sec[32];
                std::snprintf(sec, sizeof(sec), "%.3f", seconds);
                row.text = std::to_string(budget) + "," + std::to_string(diag.M) + "," +
                           std::to_string(diag.neuron_count) + "," + fmt(diag.sup_error) + "," +
                           fmt(diag.h) + "," + sec;
                if (!diag.degenerate_budget && !diag.conditioning_flag &&
                    std::isfinite(diag.sup_error) && diag.sup_error > 1e-13) {
                    row.fit_eligible = true;
                    row.log_m = std::log(static_cast<double>(budget));
                    row.log_err = std::log(diag.sup_error);
                }
            } catch (const std::exception& e) {
                double seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count();
                char sec[32];
                std::snprintf(sec, sizeof(sec), "%.3f", seconds);
                std::cerr << "budget " << budget << ": " << e.what() << "\n";
                row.text = std::to_string(budget) + ",0,0,nan,nan," + sec;
            }
            rows[i] = std::move(row);
        }
    };
    unsigned nthreads = std::min<std::size_t>(thread_cap(), budgets.size());
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::ostringstream csv;
    csv << "m,M,neurons,sup_error,h,seconds\n";
    std::vector<double> log_m, log_err;
    for (const auto& row : rows) {
        csv << row.text << "\n";
        if (row.fit_eligible) {
            log_m.push_back(row.log_m);
            log_err.push_back(row.log_err);
        }
    }
    if (log_m.size() >= 3) {
        double slope = fit_slope(log_m, log_err);
        double target_slope = -static_cast<double>(args.k) / (2.0 * args.n);
        csv << "#fitted_slope=" << fmt(slope) << " #target_slope=" << fmt(target_slope) << "\n";
    }
    std::ofstream out(args.out, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open '" << args.out << "'\n";
        return 2;
    }
    out << csv.str();
    std::cout << csv.str();
    return 0;
}

int cmd_check_activation(const std::string& id, int order) {
    ActivationSpec spec = make_activation(id);
    AdmissibilityReport report = check_admissibility(spec, order);
    std::printf("activation=%s base=(%.12g,%.12g) order=%d method=%s\n", spec.name.c_str(),
                report.base_point.real(), report.base_point.imag(), order,
                report.method == AdmissibilityReport::Method::analytic ? "analytic" : "numeric");
    std::printf("%6s", "m\\ell");
    for (int ell = 0; ell <= order; ++ell) std::printf(" %12d", ell);
    std::printf("\n");
    for (int m = 0; m <= order; ++m) {
        std::printf("%6d", m);
        for (int ell = 0; ell <= order; ++ell)
            std::printf(" %12.5e", report.moduli[static_cast<std::size_t>(m)][static_cast<std::size_t>(ell)]);
        std::printf("\n");
    }
    std::printf("min_modulus=%.5e\n", report.min_modulus);
    std::printf("verdict=%s\n", report.admissible ? "admissible" : "rejected");
    return report.admissible ? 0 : 3;
}

int cmd_kernels(int m, int s) {
    if (m < 1) throw std::invalid_argument("kernel degree must be at least 1");
    auto print_univariate = [](const char* name, const TrigPolyCoeffs& k) {
        std::printf("%s coefficients (frequency: value):\n", name);
        for (const auto& [freq, c] : k.coeffs)
            std::printf("  %4d: %.12g\n", freq[0], c.real());
    };
    print_univariate("dirichlet D_m", dirichlet(m));
    print_univariate("fejer F_m", fejer(m));
    print_univariate("de la Vallee Poussin V_m", dlvp(m, 1));

    int quad = std::max(512, 16 * m);
    double fejer_l1 = l1_norm(fejer(m), quad);
    std::printf("fejer L1 norm: %.9f\n", fejer_l1);
    TrigPolyCoeffs vs = dlvp(m, s);
    double vs_l1 = l1_norm(vs, s >= 2 ? std::max(128, 8 * m) : quad);
    double bound = std::pow(3.0, s);
    std::printf("V_m^s L1 norm (s=%d): %.9f  bound 3^s=%.1f\n", s, vs_l1, bound);
    return vs_l1 <= bound + 1e-6 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"constructive shallow complex-valued network synthesis"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "construct a network for a built-in target");
    synth->add_option("--activation", synth_args.activation, "activation id");
    synth->add_option("--target", synth_args.target, "target id (zero|conj|resq|gauss|wave)");
    synth->add_option("--n", synth_args.n, "input dimension");
    synth->add_option("--k", synth_args.k, "assumed smoothness order");
    synth->add_option("--budget", synth_args.budget, "neuron budget")->required();
    synth->add_option("--out", synth_args.out, "output network path");
    synth->add_option("--quad", synth_args.quad, "quadrature points per axis (0 = auto)");
    synth->add_option("--grid", synth_args.grid, "sup-norm grid points per axis (0 = auto)");
    synth->add_option("--seed", synth_args.seed, "seed recorded in diagnostics");
    synth->add_flag("--high-precision", synth_args.high_precision,
                    "extended-precision accumulation");

    RatesArgs rates_args;
    auto* rates = app.add_subcommand("rates", "error sweep over neuron budgets");
    rates->add_option("--activation", rates_args.activation, "activation id");
    rates->add_option("--target", rates_args.target, "target id");
    rates->add_option("--n", rates_args.n, "input dimension");
    rates->add_option("--k", rates_args.k, "assumed smoothness order");
    rates->add_option("--budgets", rates_args.budgets, "neuron budgets")
        ->required()
        ->delimiter(',');
    rates->add_option("--out", rates_args.out, "output CSV path");
    rates->add_option("--quad", rates_args.quad, "quadrature points per axis (0 = auto)");
    rates->add_option("--grid", rates_args.grid, "sup-norm grid points per axis (0 = auto)");
    rates->add_option("--seed", rates_args.seed, "seed recorded in outputs");
    rates->add_flag("--high-precision", rates_args.high_precision,
                    "extended-precision accumulation");

    std::string check_id = "exp-re";
    int check_order = 2;
    auto* check = app.add_subcommand("check-activation", "admissibility table and verdict");
    check->add_option("--activation", check_id, "activation id")->required();
    check->add_option("--order", check_order, "max mixed derivative order M");

    int kernels_m = 2, kernels_s = 1;
    auto* kernels = app.add_subcommand("kernels", "kernel coefficient tables and L1 norms");
    kernels->add_option("--m", kernels_m, "kernel degree")->required();
    kernels->add_option("--s", kernels_s, "dimension");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (synth->parsed()) return cmd_synth(synth_args);
        if (rates->parsed()) return cmd_rates(rates_args);
        if (check->parsed()) return cmd_check_activation(check_id, check_order);
        if (kernels->parsed()) return cmd_kernels(kernels_m, kernels_s);
    } catch (const NotAdmissibleError& e) {
        std::cerr << "not admissible: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
