// Command-line driver: convergence study, cavity demo and small-data report.

#include "vvp/config.hpp"
#include "vvp/diagnostics.hpp"
#include "vvp/output.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

using vvp::ExitCode;

std::filesystem::path output_dir(const vvp::RunConfig& cfg)
{
    std::filesystem::path dir(cfg.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw vvp::IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    return dir;
}

ExitCode run_convergence_command(const vvp::RunConfig& cfg)
{
    const vvp::ManufacturedCase mc = vvp::config_case(cfg);
    fmt::print("convergence: {} velocity, {} vorticity, {} levels\n", vvp::to_string(cfg.family),
               vvp::to_string(cfg.effective_vorticity()), cfg.levels);
    const auto report = vvp::run_convergence(
        cfg.selection(), cfg.levels, mc, cfg.solver_settings(), cfg.threads, [](const vvp::ConvergenceLevel& l) {
            fmt::print("  n = {:3d}  dofs = {:7d}  iterations = {}  e_u = {}  e_w = {}  e_p = {}{}\n", l.n, l.dofs,
                       l.report.iterations, vvp::format_scientific(l.errors.velocity),
                       vvp::format_scientific(l.errors.vorticity), vvp::format_scientific(l.errors.pressure),
                       l.report.converged ? "" : "  (not converged)");
            std::fflush(stdout);
        });
    const auto path = output_dir(cfg) / fmt::format("convergence_{}_{}.csv", vvp::to_string(cfg.family),
                                                    vvp::to_string(cfg.effective_vorticity()));
    vvp::write_csv(report, path);
    std::cout << vvp::convergence_csv(report);
    fmt::print("wrote {}\n", path.string());
    return report.partial() ? ExitCode::NonConvergence : ExitCode::Success;
}

ExitCode run_cavity_command(const vvp::RunConfig& cfg)
{
    const vvp::CavityParameters params = vvp::config_cavity(cfg);
    fmt::print("cavity: {}x{} cells, nu0 = {}, {} warm-up Picard steps\n", params.nx, params.ny, params.nu0,
               params.picard_warmup);
    const vvp::CavityResult res = vvp::run_cavity(params);
    for (std::size_t i = 0; i < res.report.residual_history.size(); ++i) {
        fmt::print("  iteration {:2d}  residual {:.3e}\n", i, res.report.residual_history[i]);
    }
    fmt::print("converged: {}  iterations: {}\n", res.report.converged ? "yes" : "no", res.report.iterations);
    fmt::print("pressure integral: {:.3e}  ||p_h||: {:.3e}  ||div u_h||: {:.3e}\n", res.pressure_integral,
               res.pressure_l2, res.divergence_l2);

    const vvp::FieldTriple f = res.fields();
    const auto path = output_dir(cfg) / fmt::format("cavity_{}x{}.vtk", params.nx, params.ny);
    vvp::write_vtk(res.spaces.velocity->mesh(),
                   {{"velocity", f.velocity}, {"vorticity", f.vorticity}, {"pressure", f.pressure}}, path);
    fmt::print("wrote {}\n", path.string());
    return res.report.converged ? ExitCode::Success : ExitCode::NonConvergence;
}

ExitCode run_diagnostics_command(const vvp::RunConfig& cfg)
{
    const vvp::ManufacturedCase mc = vvp::config_case(cfg);
    const vvp::ProblemCoefficients coeffs = vvp::case_coefficients(mc);
    coeffs.validate();
    const vvp::Mesh mesh = vvp::build_structured(32, 32, mc.domain);
    const auto diag = vvp::make_diagnostics_config(coeffs, mesh, cfg.c_r, cfg.c_4, cfg.r, cfg.delta);
    const double f_norm = vvp::forcing_l2_norm(coeffs, mesh);
    std::cout << vvp::format_diagnostics(vvp::check_small_data(coeffs, diag, f_norm), diag);
    return ExitCode::Success;
}

int run(const std::vector<std::string>& args)
{
    try {
        const vvp::RunConfig cfg = vvp::parse_args(args);
        if (auto warning = vvp::pairing_warning(cfg)) std::cerr << *warning << '\n';
        switch (cfg.command) {
        case vvp::Command::Convergence: return static_cast<int>(run_convergence_command(cfg));
        case vvp::Command::Cavity: return static_cast<int>(run_cavity_command(cfg));
        case vvp::Command::Diagnostics: return static_cast<int>(run_diagnostics_command(cfg));
        }
    } catch (const vvp::HelpRequested& h) {
        std::cout << h.what();
        return static_cast<int>(ExitCode::Success);
    } catch (const vvp::ValidationError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Validation);
    } catch (const vvp::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Io);
    } catch (const vvp::SolverFailure& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return static_cast<int>(ExitCode::NonConvergence);
    } catch (const vvp::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Validation);
    }
    return static_cast<int>(ExitCode::Success);
}

}  // namespace

int main(int argc, char** argv)
{
    return run(std::vector<std::string>(argv + 1, argv + argc));
}
