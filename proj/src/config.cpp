#include "vvp/config.hpp"

#include "vvp/error.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace vvp {

namespace {

constexpr double kDefaultNu0 = 0.1;
constexpr double kDefaultNu1 = 1.0;
constexpr double kCavityNu0 = 0.002;
constexpr double kDefaultPermeability = 0.1;

template <class E>
struct Names {
    E value;
    const char* name;
};

constexpr Names<Command> kCommands[] = {
    {Command::Convergence, "convergence"}, {Command::Cavity, "cavity"}, {Command::Diagnostics, "diagnostics"}};
constexpr Names<VelocityElement> kFamilies[] = {{VelocityElement::TaylorHood, "taylor-hood"},
                                                {VelocityElement::Mini, "mini"},
                                                {VelocityElement::BernardiRaugel, "bernardi-raugel"}};
constexpr Names<VorticitySpace> kVorticity[] = {
    {VorticitySpace::CG1, "cg1"}, {VorticitySpace::DG0, "dg0"}, {VorticitySpace::DG1, "dg1"}};
constexpr Names<NonlinearMethod> kMethods[] = {{NonlinearMethod::Newton, "newton"},
                                               {NonlinearMethod::Picard, "picard"}};

template <class E, std::size_t N>
std::string name_of(const Names<E> (&table)[N], E value)
{
    for (const auto& n : table) {
        if (n.value == value) return n.name;
    }
    return "unknown";
}

template <class E, std::size_t N>
E parse_enum(const Names<E> (&table)[N], const std::string& key, const std::string& text)
{
    std::string choices;
    for (const auto& n : table) {
        if (text == n.name) return n.value;
        choices += choices.empty() ? n.name : std::string(", ") + n.name;
    }
    throw ValidationError(key, fmt::format("'{}' is not one of {}", text, choices));
}

int parse_int(const std::string& key, const std::string& text)
{
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ValidationError(key, fmt::format("expected an integer, got '{}'", text));
    }
    return v;
}

double parse_double(const std::string& key, const std::string& text)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() || !std::isfinite(v)) {
        throw ValidationError(key, fmt::format("expected a real number, got '{}'", text));
    }
    return v;
}

std::string normalize_key(std::string key)
{
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

void set_key(RunConfig& c, const std::string& raw_key, const std::string& value)
{
    const std::string key = normalize_key(raw_key);
    if (key == "command") c.command = parse_enum(kCommands, key, value);
    else if (key == "family") c.family = parse_enum(kFamilies, key, value);
    else if (key == "vorticity") c.vorticity = parse_enum(kVorticity, key, value);
    else if (key == "levels") c.levels = parse_int(key, value);
    else if (key == "nx") c.nx = parse_int(key, value);
    else if (key == "ny") c.ny = parse_int(key, value);
    else if (key == "nu0") c.nu0 = parse_double(key, value);
    else if (key == "nu1") c.nu1 = parse_double(key, value);
    else if (key == "kappa1") c.kappa1 = parse_double(key, value);
    else if (key == "kappa2") c.kappa2 = parse_double(key, value);
    else if (key == "perm") c.perm = parse_double(key, value);
    else if (key == "method") c.method = parse_enum(kMethods, key, value);
    else if (key == "tol") c.tol = parse_double(key, value);
    else if (key == "max-iters") c.max_iters = parse_int(key, value);
    else if (key == "picard-warmup") c.picard_warmup = parse_int(key, value);
    else if (key == "threads") c.threads = parse_int(key, value);
    else if (key == "out") c.out = value;
    else if (key == "cr") c.c_r = parse_double(key, value);
    else if (key == "c4") c.c_4 = parse_double(key, value);
    else if (key == "r") c.r = parse_double(key, value);
    else if (key == "delta") c.delta = parse_double(key, value);
    else throw ValidationError(raw_key, "unknown key");
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues read_pairs(const std::string& text)
{
    KeyValues pairs;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ValidationError(t, fmt::format("line {}: expected key = value", lineno));
        }
        pairs.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return pairs;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

RunConfig from_pairs(const KeyValues& pairs)
{
    RunConfig c;
    for (const auto& [k, v] : pairs) set_key(c, k, v);
    validate(c);
    return c;
}

std::string real(double v) { return fmt::format("{}", v); }

}  // namespace

std::string to_string(Command c) { return name_of(kCommands, c); }
std::string to_string(VelocityElement e) { return name_of(kFamilies, e); }
std::string to_string(VorticitySpace s) { return name_of(kVorticity, s); }
std::string to_string(NonlinearMethod m) { return name_of(kMethods, m); }

VorticitySpace RunConfig::effective_vorticity() const
{
    if (vorticity) return *vorticity;
    return command == Command::Cavity ? VorticitySpace::CG1 : VorticitySpace::DG1;
}

double RunConfig::effective_nu0() const
{
    return nu0.value_or(command == Command::Cavity ? kCavityNu0 : kDefaultNu0);
}

NonlinearSettings RunConfig::solver_settings() const
{
    NonlinearSettings s;
    s.method = method;
    s.tol = tol;
    s.max_iters = max_iters;
    return s;
}

void validate(const RunConfig& c)
{
    if (c.levels < 2) throw ValidationError("levels", "at least two levels are required");
    if (c.levels > 10) throw ValidationError("levels", "more than ten levels is not supported");
    if (c.nx < 8) throw ValidationError("nx", "must be at least 8");
    if (c.ny < 8) throw ValidationError("ny", "must be at least 8");
    const double nu0 = c.effective_nu0();
    if (!(nu0 > 0.0)) throw ValidationError("nu0", "must be positive");
    if (c.nu1 && !(*c.nu1 >= nu0)) throw ValidationError("nu1", "must not be below nu0");
    if (c.perm && !(*c.perm > 0.0)) throw ValidationError("perm", "must be positive");
    if (c.kappa1 && !(*c.kappa1 > 0.0 && *c.kappa1 < kappa1_upper_bound(nu0))) {
        throw ValidationError("kappa1", fmt::format("must lie strictly between 0 and 2/3 nu0 = {}; got {}",
                                                    kappa1_upper_bound(nu0), *c.kappa1));
    }
    if (c.kappa2 && !(*c.kappa2 > 0.0)) throw ValidationError("kappa2", "must be positive");
    if (!(c.tol > 0.0)) throw ValidationError("tol", "must be positive");
    if (c.max_iters < 1) throw ValidationError("max-iters", "must be at least 1");
    if (c.picard_warmup && *c.picard_warmup < 0) throw ValidationError("picard-warmup", "must be non-negative");
    if (c.threads < 1) throw ValidationError("threads", "must be at least 1");
    if (c.out.empty()) throw ValidationError("out", "must not be empty");
    if (!(c.c_r > 0.0)) throw ValidationError("cr", "must be positive");
    if (!(c.c_4 > 0.0)) throw ValidationError("c4", "must be positive");
    if (!(c.r > 2.0)) throw ValidationError("r", "must exceed 2");
    if (!(c.delta > 0.0)) throw ValidationError("delta", "must be positive");
}

std::optional<std::string> pairing_warning(const RunConfig& c)
{
    const VorticitySpace w = c.effective_vorticity();
    const bool covered = c.family == VelocityElement::BernardiRaugel ? w != VorticitySpace::DG1
                                                                      : w != VorticitySpace::DG0;
    if (covered) return std::nullopt;
    return fmt::format("warning: {} velocity with {} vorticity is not covered by the convergence theory",
                       to_string(c.family), to_string(w));
}

RunConfig parse_config_text(const std::string& text) { return from_pairs(read_pairs(text)); }

RunConfig load_config_file(const std::filesystem::path& path) { return parse_config_text(read_file(path)); }

std::string serialize_config(const RunConfig& c)
{
    std::string out;
    auto line = [&out](const char* key, const std::string& value) { out += fmt::format("{} = {}\n", key, value); };
    line("command", to_string(c.command));
    line("family", to_string(c.family));
    if (c.vorticity) line("vorticity", to_string(*c.vorticity));
    line("levels", std::to_string(c.levels));
    line("nx", std::to_string(c.nx));
    line("ny", std::to_string(c.ny));
    if (c.nu0) line("nu0", real(*c.nu0));
    if (c.nu1) line("nu1", real(*c.nu1));
    if (c.kappa1) line("kappa1", real(*c.kappa1));
    if (c.kappa2) line("kappa2", real(*c.kappa2));
    if (c.perm) line("perm", real(*c.perm));
    line("method", to_string(c.method));
    line("tol", real(c.tol));
    line("max-iters", std::to_string(c.max_iters));
    if (c.picard_warmup) line("picard-warmup", std::to_string(*c.picard_warmup));
    line("threads", std::to_string(c.threads));
    line("out", c.out);
    line("cr", real(c.c_r));
    line("c4", real(c.c_4));
    line("r", real(c.r));
    line("delta", real(c.delta));
    return out;
}

RunConfig parse_args(const std::vector<std::string>& args)
{
    CLI::App app{"Velocity-vorticity-pressure Navier-Stokes solver", "vvp"};
    app.fallthrough();
    app.require_subcommand(0, 1);
    app.add_subcommand("convergence", "Convergence study on the manufactured solution");
    app.add_subcommand("cavity", "Wide lid-driven cavity");
    app.add_subcommand("diagnostics", "Small-data condition report");

    std::string config_path;
    app.add_option("--config", config_path, "Flat key=value file; flags override its values");

    // Flag name -> raw value; converted by the same setter as config files.
    const std::vector<std::pair<std::string, std::string>> flags = {
        {"family", "Velocity element: taylor-hood, mini, bernardi-raugel"},
        {"vorticity", "Vorticity space: cg1, dg0, dg1"},
        {"levels", "Number of refinement levels (n = 2, 4, ...)"},
        {"nx", "Cavity cells in x"},
        {"ny", "Cavity cells in y"},
        {"nu0", "Lower viscosity bound"},
        {"nu1", "Upper viscosity bound (manufactured case)"},
        {"kappa1", "Curl augmentation, 0 < kappa1 < 2/3 nu0"},
        {"kappa2", "Divergence augmentation"},
        {"perm", "Permeability; sigma = nu / perm"},
        {"tol", "Nonlinear tolerance"},
        {"max-iters", "Maximum nonlinear iterations"},
        {"method", "Nonlinear method: newton, picard"},
        {"picard-warmup", "Picard steps before the main method (cavity)"},
        {"threads", "Assembly threads"},
        {"out", "Output directory"},
        {"cr", "Sobolev embedding constant C_r (diagnostics)"},
        {"c4", "Embedding constant C_4 (diagnostics)"},
        {"r", "Integrability exponent r > 2 (diagnostics)"},
        {"delta", "Radius delta (diagnostics)"},
    };
    std::map<std::string, std::string> values;
    for (const auto& [name, help] : flags) app.add_option("--" + name, values[name], help);

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw ValidationError("arguments", e.what());
    }

    KeyValues pairs;
    if (!config_path.empty()) pairs = read_pairs(read_file(config_path));
    for (const auto* sub : app.get_subcommands()) pairs.emplace_back("command", sub->get_name());
    for (const auto& [name, help] : flags) {
        if (app.count("--" + name) > 0) pairs.emplace_back(name, values[name]);
    }
    return from_pairs(pairs);
}

ManufacturedCase config_case(const RunConfig& c)
{
    ManufacturedCase mc = example1_case_2d(c.effective_nu0(), c.nu1.value_or(kDefaultNu1),
                                           c.perm.value_or(kDefaultPermeability));
    if (c.kappa1) mc.kappa1 = *c.kappa1;
    if (c.kappa2) mc.kappa2 = *c.kappa2;
    return mc;
}

CavityParameters config_cavity(const RunConfig& c)
{
    CavityParameters p;
    p.nx = c.nx;
    p.ny = c.ny;
    p.nu0 = c.effective_nu0();
    p.permeability = c.perm.value_or(kDefaultPermeability);
    p.kappa1 = c.kappa1;
    p.kappa2 = c.kappa2;
    p.settings = c.solver_settings();
    if (c.picard_warmup) p.picard_warmup = *c.picard_warmup;
    p.threads = c.threads;
    return p;
}

}  // namespace vvp
