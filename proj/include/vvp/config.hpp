#pragma once

#include "vvp/cavity.hpp"
#include "vvp/error.hpp"
#include "vvp/manufactured.hpp"
#include "vvp/solver.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace vvp {

enum class Command { Convergence, Cavity, Diagnostics };

/// Process exit status of the command-line tool.
enum class ExitCode : int { Success = 0, Validation = 2, NonConvergence = 3, Io = 4 };

/// Settings of one command-line run. Unset optionals take the default of the
/// selected command (manufactured case for convergence and diagnostics,
/// cavity data for cavity).
struct RunConfig {
    Command command = Command::Convergence;
    VelocityElement family = VelocityElement::TaylorHood;
    std::optional<VorticitySpace> vorticity;  // DG1, or CG1 for the cavity
    int levels = 5;
    int nx = 64;
    int ny = 32;
    std::optional<double> nu0, nu1, kappa1, kappa2, perm;
    NonlinearMethod method = NonlinearMethod::Newton;
    double tol = 1e-8;
    int max_iters = 25;
    std::optional<int> picard_warmup;
    int threads = 1;
    std::string out = ".";
    // Diagnostics constants.
    double c_r = 1.0;
    double c_4 = 1.0;
    double r = 4.0;
    double delta = 1.0;

    bool operator==(const RunConfig&) const = default;

    VorticitySpace effective_vorticity() const;
    ElementSelection selection() const { return {family, effective_vorticity()}; }
    NonlinearSettings solver_settings() const;
    double effective_nu0() const;
};

/// Thrown by parse_args when usage text was requested.
class HelpRequested : public Error {
public:
    using Error::Error;
};

/// Parses command-line arguments (without the program name). A `--config FILE`
/// flag loads a key=value file first; explicit flags override it. Throws
/// ValidationError naming the offending key.
RunConfig parse_args(const std::vector<std::string>& args);

/// Flat `key = value` text; blank lines and `#` comments are ignored.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& config);

/// Range checks; throws ValidationError naming the key.
void validate(const RunConfig& config);

/// Advisory message when the family/vorticity pair is not covered by the
/// convergence theory of the element family.
std::optional<std::string> pairing_warning(const RunConfig& config);

ManufacturedCase config_case(const RunConfig& config);
CavityParameters config_cavity(const RunConfig& config);

std::string to_string(Command c);
std::string to_string(VelocityElement e);
std::string to_string(VorticitySpace s);
std::string to_string(NonlinearMethod m);

}  // namespace vvp
