// casimir-shear: force, stress, and Green-tensor diagnostics for two
// magnetodielectric plates in uniform shear motion.
//
// Exit codes: 0 success, 2 configuration/usage error, 3 numerical failure,
// 4 verification-suite failure.

#include <CLI11.hpp>

#include "casimir/config.hpp"
#include "casimir/errors.hpp"
#include "casimir/green.hpp"
#include "casimir/modes.hpp"
#include "casimir/stress.hpp"
#include "casimir/verification.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace {

using namespace casimir;

// Shortest round-trippable decimal form, deterministic across runs.
std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

struct CliOverrides {
    std::string config_path;
    std::string output_path;
    double quad_rel_tol = -1.0;
    int quad_max_level = -1;
    bool serial = false;
};

// Output stream selection: --output beats the config's output path beats
// stdout.
class OutputTarget {
public:
    OutputTarget(const std::string& cli_path, const RunConfig* config) {
        std::string path = cli_path;
        if (path.empty() && config && config->output) path = *config->output;
        if (!path.empty()) {
            file_.open(path, std::ios::out | std::ios::trunc);
            if (!file_) {
                throw ValidationError("cannot open output path '" + path + "' for writing");
            }
            stream_ = &file_;
        } else {
            stream_ = &std::cout;
        }
    }
    std::ostream& out() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_ = nullptr;
};

RunConfig load_config(const CliOverrides& cli) {
    if (cli.config_path.empty()) {
        throw ValidationError("--config PATH is required for this subcommand");
    }
    RunConfig config = parse_config_file(cli.config_path);
    if (cli.quad_rel_tol > 0.0) config.quad.rel_tol = cli.quad_rel_tol;
    if (cli.quad_max_level >= 0) config.quad.max_level = cli.quad_max_level;
    if (cli.serial) config.quad.serial = true;
    config.quad.validate();
    return config;
}

const char* kForceHeader = "a_m,beta,F_Pa,F_dimensionless,quad_error,imag_residual";

void write_force_row(std::ostream& os, const PlateSystem& sys, const StressResult& f) {
    os << num(sys.a) << ',' << num(sys.beta) << ',' << num(f.F) << ','
       << num(f.dimensionless_F) << ',' << num(f.quad_error) << ','
       << num(f.imag_residual) << '\n';
}

int run_force(const CliOverrides& cli) {
    RunConfig config = load_config(cli);
    OutputTarget target(cli.output_path, &config);
    auto f = force_moving(config.system, config.quad);
    target.out() << kForceHeader << '\n';
    write_force_row(target.out(), config.system, f);
    return 0;
}

int run_sweep(const CliOverrides& cli) {
    RunConfig config = load_config(cli);
    if (!config.sweep) {
        throw ValidationError("sweep subcommand requires a 'sweep' block in the config");
    }
    const SweepSpec& sw = *config.sweep;
    std::vector<double> values(sw.count);
    for (int i = 0; i < sw.count; ++i) {
        const double t = static_cast<double>(i) / (sw.count - 1);
        if (sw.spacing == "log") {
            values[i] = sw.start * std::pow(sw.stop / sw.start, t);
        } else {
            values[i] = sw.start + (sw.stop - sw.start) * t;
        }
    }
    OutputTarget target(cli.output_path, &config);
    target.out() << kForceHeader << '\n';
    for (double value : values) {
        PlateSystem sys = config.system;
        if (sw.variable == "beta") {
            sys.beta = value;
        } else {
            sys.a = value;
        }
        sys.validate();
        auto f = force_moving(sys, config.quad);
        write_force_row(target.out(), sys, f);
    }
    return 0;
}

int run_stress_profile(const CliOverrides& cli) {
    RunConfig config = load_config(cli);
    OutputTarget target(cli.output_path, &config);
    target.out() << "x_m,sigma_xx,sigma_yy,sigma_zz,offdiag_max\n";
    const int n = config.profile.count;
    for (int i = 1; i <= n; ++i) {
        const double x = config.system.a * static_cast<double>(i) / (n + 1);
        auto s = stress_tensor(x, config.system, config.quad);
        double off = 0.0;
        for (int r = 0; r < 3; ++r)
            for (int c = r + 1; c < 3; ++c)
                off = std::max(off, std::abs(s.sigma(r, c)));
        target.out() << num(x) << ',' << num(s.sigma(0, 0)) << ',' << num(s.sigma(1, 1))
                     << ',' << num(s.sigma(2, 2)) << ',' << num(off) << '\n';
    }
    return 0;
}

int run_green_dump(const CliOverrides& cli) {
    RunConfig config = load_config(cli);
    OutputTarget target(cli.output_path, &config);
    std::ostream& os = target.out();
    os << "kappa,u,v,beta,x_m,xp_m";
    const char* axes = "xyz";
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            os << ",G_" << axes[r] << axes[c] << "_re,G_" << axes[r] << axes[c] << "_im";
        }
    }
    os << '\n';
    const GreenDumpSpec& gd = config.green_dump;
    const double a = config.system.a;
    const double xp = gd.xp_frac * a;
    for (std::size_t i = 0; i < gd.kappa_scaled.size(); ++i) {
        auto mode = make_mode(gd.kappa_scaled[i] / a, gd.u_scaled[i] / a,
                              gd.v_scaled[i] / a, config.system.beta);
        for (double xf : gd.x_frac) {
            const double x = xf * a;
            auto g = green_direct(x, xp, mode, config.system);
            os << num(mode.kappa) << ',' << num(mode.u) << ',' << num(mode.v) << ','
               << num(mode.beta) << ',' << num(x) << ',' << num(xp);
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) {
                    os << ',' << num(g.matrix(r, c).real()) << ','
                       << num(g.matrix(r, c).imag());
                }
            }
            os << '\n';
        }
    }
    return 0;
}

int run_verify(const CliOverrides& cli) {
    // A config is optional here: when given it is parsed and validated (so
    // the exit code still reflects schema problems), but the check suite
    // itself runs on its own pinned configurations.
    std::unique_ptr<RunConfig> config;
    if (!cli.config_path.empty()) {
        config = std::make_unique<RunConfig>(load_config(cli));
    }
    OutputTarget target(cli.output_path, config.get());
    auto results = run_acceptance_checks(cli.serial);
    std::ostream& os = target.out();
    os << "check,pass,measured,threshold,detail\n";
    bool all_pass = true;
    for (const auto& r : results) {
        os << r.name << ',' << (r.pass ? "pass" : "FAIL") << ',' << num(r.measured)
           << ',' << num(r.threshold) << ',' << csv_quote(r.detail) << '\n';
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 4;
}

void emit_error_csv(const std::string& kind, const std::string& message) {
    std::cout << "error,message\n" << kind << ',' << csv_quote(message) << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Casimir stress and force between plates in uniform shear motion"};
    app.require_subcommand(1);

    CliOverrides cli;
    int (*handler)(const CliOverrides&) = nullptr;

    auto add_common = [&cli](CLI::App* cmd, bool config_required) {
        auto* opt = cmd->add_option("--config", cli.config_path,
                                    "JSON configuration file");
        if (config_required) opt->required();
        cmd->add_option("--output", cli.output_path,
                        "output CSV path (default: config output or stdout)");
        cmd->add_option("--quad-rel-tol", cli.quad_rel_tol,
                        "override quadrature relative tolerance");
        cmd->add_option("--quad-max-level", cli.quad_max_level,
                        "override quadrature refinement depth limit");
        cmd->add_flag("--serial", cli.serial,
                      "single-threaded, bit-reproducible integration");
    };

    auto* force_cmd = app.add_subcommand("force", "compute the force per unit area");
    add_common(force_cmd, true);
    force_cmd->callback([&handler]() { handler = run_force; });

    auto* sweep_cmd = app.add_subcommand("sweep", "force over a beta or separation sweep");
    add_common(sweep_cmd, true);
    sweep_cmd->callback([&handler]() { handler = run_sweep; });

    auto* profile_cmd = app.add_subcommand("stress-profile",
                                           "stress tensor across the gap");
    add_common(profile_cmd, true);
    profile_cmd->callback([&handler]() { handler = run_stress_profile; });

    auto* dump_cmd = app.add_subcommand("green-dump",
                                        "Green-tensor samples for regression");
    add_common(dump_cmd, true);
    dump_cmd->callback([&handler]() { handler = run_green_dump; });

    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance check suite");
    add_common(verify_cmd, false);
    verify_cmd->callback([&handler]() { handler = run_verify; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        return handler(cli);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidModel& e) {
        std::cerr << "invalid model: " << e.what() << '\n';
        return 2;
    } catch (const InvalidBeta& e) {
        std::cerr << "invalid beta: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        emit_error_csv("numerical_error", e.what());
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        emit_error_csv("internal_error", e.what());
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
