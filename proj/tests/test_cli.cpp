#include "test_util.hpp"

#include "vvp/config.hpp"
#include "vvp/convergence.hpp"
#include "vvp/error.hpp"
#include "vvp/output.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace vvp;
namespace fs = std::filesystem;

namespace {

std::string validation_key(const std::vector<std::string>& args)
{
    try {
        parse_args(args);
    } catch (const ValidationError& e) {
        return e.key();
    }
    return "<none>";
}

std::vector<std::string> lines_of(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string line; std::getline(is, line);) out.push_back(line);
    return out;
}

fs::path scratch_dir(const std::string& name)
{
    const fs::path d = fs::temp_directory_path() / ("vvp_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

ConvergenceReport reference_report()
{
    ConvergenceReport r;
    ConvergenceLevel a, b;
    a.n = 2;
    a.h = std::sqrt(2.0) / 2;
    a.dofs = 84;
    a.errors = {7.41e-1, 4.89e-1, 1.36e-1};
    b.n = 4;
    b.h = std::sqrt(2.0) / 4;
    b.dofs = 284;
    b.errors = {2.49e-1, 1.41e-1, 4.64e-2};
    r.levels = {a, b};
    r.rates = {{1.772, 1.948, 2.326}};
    return r;
}

int run_tool(const std::string& args)
{
    const std::string cmd = std::string(VVP_BINARY) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, ParsesConvergenceFlags)
{
    const RunConfig c = parse_args({"convergence", "--family", "mini", "--vorticity", "dg1", "--levels", "6"});
    EXPECT_EQ(c.command, Command::Convergence);
    EXPECT_EQ(c.family, VelocityElement::Mini);
    EXPECT_EQ(c.effective_vorticity(), VorticitySpace::DG1);
    EXPECT_EQ(c.levels, 6);
}

TEST(Cli, ParsesCavityFlags)
{
    const RunConfig c = parse_args({"cavity", "--nx", "128", "--ny", "64", "--method", "picard", "--tol", "1e-9"});
    EXPECT_EQ(c.command, Command::Cavity);
    EXPECT_EQ(c.nx, 128);
    EXPECT_EQ(c.ny, 64);
    EXPECT_EQ(c.method, NonlinearMethod::Picard);
    EXPECT_DOUBLE_EQ(c.tol, 1e-9);
    EXPECT_EQ(c.effective_vorticity(), VorticitySpace::CG1);
    EXPECT_DOUBLE_EQ(c.effective_nu0(), 0.002);
}

TEST(Cli, EmptyArgumentsGiveDefaults)
{
    const RunConfig c = parse_args({});
    EXPECT_EQ(c, RunConfig{});
    EXPECT_EQ(c.selection().velocity, VelocityElement::TaylorHood);
    EXPECT_EQ(c.selection().vorticity, VorticitySpace::DG1);
    EXPECT_DOUBLE_EQ(c.effective_nu0(), 0.1);
    const NonlinearSettings s = c.solver_settings();
    EXPECT_EQ(s.method, NonlinearMethod::Newton);
    EXPECT_DOUBLE_EQ(s.tol, 1e-8);
    EXPECT_EQ(s.max_iters, 25);
}

TEST(Cli, Kappa1OutOfRangeNamesKey)
{
    EXPECT_EQ(validation_key({"convergence", "--kappa1", "0.08"}), "kappa1");
    EXPECT_EQ(validation_key({"convergence", "--kappa1", "0.06"}), "<none>");
    EXPECT_EQ(validation_key({"convergence", "--kappa1", "0"}), "kappa1");
}

TEST(Cli, RangeChecksNameKeys)
{
    EXPECT_EQ(validation_key({"--levels", "1"}), "levels");
    EXPECT_EQ(validation_key({"--levels", "11"}), "levels");
    EXPECT_EQ(validation_key({"cavity", "--nx", "4"}), "nx");
    EXPECT_EQ(validation_key({"--nu0", "-1"}), "nu0");
    EXPECT_EQ(validation_key({"--nu1", "0.01"}), "nu1");
    EXPECT_EQ(validation_key({"--perm", "0"}), "perm");
    EXPECT_EQ(validation_key({"--kappa2", "0"}), "kappa2");
    EXPECT_EQ(validation_key({"--tol", "0"}), "tol");
    EXPECT_EQ(validation_key({"--max-iters", "0"}), "max-iters");
    EXPECT_EQ(validation_key({"--threads", "0"}), "threads");
    EXPECT_EQ(validation_key({"--r", "2"}), "r");
    EXPECT_EQ(validation_key({"--delta", "0"}), "delta");
}

TEST(Cli, TypeMismatchAndUnknownValues)
{
    EXPECT_EQ(validation_key({"--levels", "five"}), "levels");
    EXPECT_EQ(validation_key({"--tol", "1e-8x"}), "tol");
    EXPECT_EQ(validation_key({"--family", "raviart"}), "family");
    EXPECT_EQ(validation_key({"--bogus", "1"}), "arguments");
}

TEST(Cli, HelpIsReported)
{
    try {
        parse_args({"--help"});
        FAIL() << "expected HelpRequested";
    } catch (const HelpRequested& h) {
        EXPECT_NE(std::string(h.what()).find("--kappa1"), std::string::npos);
    }
}

TEST(Config, RoundTrip)
{
    RunConfig c;
    c.command = Command::Cavity;
    c.family = VelocityElement::BernardiRaugel;
    c.vorticity = VorticitySpace::DG0;
    c.levels = 4;
    c.nx = 96;
    c.ny = 48;
    c.nu0 = 0.003;
    c.kappa1 = 0.0015;
    c.kappa2 = 0.25;
    c.perm = 0.2;
    c.method = NonlinearMethod::Picard;
    c.tol = 3.5e-9;
    c.max_iters = 40;
    c.picard_warmup = 3;
    c.threads = 2;
    c.out = "results/run one";
    c.c_r = 1.5;
    c.r = 6.0;
    c.delta = 0.1 + 0.2;
    EXPECT_EQ(parse_config_text(serialize_config(c)), c);
    EXPECT_EQ(parse_config_text(serialize_config(RunConfig{})), RunConfig{});
}

TEST(Config, CommentsBlankLinesAndUnderscores)
{
    const RunConfig c = parse_config_text("# study\n\ncommand = cavity\nmax_iters = 7\n  nx=16  \n");
    EXPECT_EQ(c.command, Command::Cavity);
    EXPECT_EQ(c.max_iters, 7);
    EXPECT_EQ(c.nx, 16);
}

TEST(Config, MalformedText)
{
    EXPECT_THROW(parse_config_text("levels\n"), ValidationError);
    try {
        parse_config_text("colour = red\n");
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.key(), "colour");
    }
}

TEST(Config, FileWithFlagOverrides)
{
    const fs::path dir = scratch_dir("config");
    const fs::path file = dir / "run.cfg";
    std::ofstream(file) << "command = convergence\nfamily = mini\nlevels = 3\ntol = 1e-6\n";
    const RunConfig c = parse_args({"--config", file.string(), "--levels", "4"});
    EXPECT_EQ(c.family, VelocityElement::Mini);
    EXPECT_EQ(c.levels, 4);
    EXPECT_DOUBLE_EQ(c.tol, 1e-6);
    EXPECT_THROW(load_config_file(dir / "missing.cfg"), IoError);
}

TEST(Config, PairingWarning)
{
    RunConfig c;
    c.family = VelocityElement::BernardiRaugel;
    c.vorticity = VorticitySpace::DG1;
    EXPECT_TRUE(pairing_warning(c).has_value());
    c.vorticity = VorticitySpace::CG1;
    EXPECT_FALSE(pairing_warning(c).has_value());
    c.vorticity = VorticitySpace::DG0;
    EXPECT_FALSE(pairing_warning(c).has_value());
    c.family = VelocityElement::TaylorHood;
    EXPECT_TRUE(pairing_warning(c).has_value());
    c.vorticity = VorticitySpace::DG1;
    EXPECT_FALSE(pairing_warning(c).has_value());
}

TEST(Config, CaseAndCavityFollowSettings)
{
    RunConfig c;
    c.nu0 = 0.2;
    c.nu1 = 2.0;
    c.kappa2 = 0.3;
    const ManufacturedCase mc = config_case(c);
    EXPECT_DOUBLE_EQ(mc.nu0, 0.2);
    EXPECT_DOUBLE_EQ(mc.nu1, 2.0);
    EXPECT_DOUBLE_EQ(mc.kappa2, 0.3);
    c.command = Command::Cavity;
    c.nx = 32;
    c.picard_warmup = 2;
    const CavityParameters p = config_cavity(c);
    EXPECT_EQ(p.nx, 32);
    EXPECT_EQ(p.picard_warmup, 2);
    EXPECT_DOUBLE_EQ(p.nu0, 0.2);
}

TEST(Output, ScientificFormat)
{
    EXPECT_EQ(format_scientific(0.249), "2.49e-1");
    EXPECT_EQ(format_scientific(1234.0), "1.23e3");
    EXPECT_EQ(format_scientific(1.0), "1.00e0");
    EXPECT_EQ(format_real(1.0), "1.0");
    EXPECT_EQ(format_real(0.5), "0.5");
}

TEST(Output, CsvReferenceRow)
{
    const std::vector<std::string> l = lines_of(convergence_csv(reference_report()));
    ASSERT_EQ(l.size(), 3u);
    EXPECT_EQ(l[0], "dof,h,e_u,r_u,e_w,r_w,e_p,r_p");
    EXPECT_EQ(l[1], "84,7.07e-1,7.41e-1,,4.89e-1,,1.36e-1,");
    EXPECT_EQ(l[2], "284,3.54e-1,2.49e-1,1.772,1.41e-1,1.948,4.64e-2,2.326");
}

TEST(Output, CsvPartialMarker)
{
    ConvergenceReport r = reference_report();
    r.failed_level = 1;
    const std::vector<std::string> l = lines_of(convergence_csv(r));
    ASSERT_EQ(l.size(), 4u);
    EXPECT_EQ(l[3], "# partial: level 1 non-converged");
}

TEST(Output, CsvFromRunIsDeterministic)
{
    const ManufacturedCase c = example1_case_2d();
    const std::string a = convergence_csv(run_convergence({}, 2, c));
    const std::string b = convergence_csv(run_convergence({}, 2, c));
    EXPECT_EQ(a, b);
    const auto l = lines_of(a);
    ASSERT_EQ(l.size(), 3u);
    EXPECT_EQ(l[1].substr(0, 3), "84,");
    EXPECT_EQ(l[2].substr(0, 4), "284,");
    EXPECT_EQ(std::count(l[2].begin(), l[2].end(), ','), 7);
}

TEST(Output, WriteCsvFileAndFailure)
{
    const fs::path dir = scratch_dir("csv");
    write_csv(reference_report(), dir / "c.csv");
    std::ifstream is(dir / "c.csv", std::ios::binary);
    const std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    EXPECT_EQ(text, convergence_csv(reference_report()));
    EXPECT_EQ(text.find('\r'), std::string::npos);
    EXPECT_THROW(write_csv(reference_report(), dir / "no_such_dir" / "c.csv"), IoError);
}

TEST(Output, VtkConstantFields)
{
    const auto mesh = std::make_shared<const Mesh>(build_structured(1, 1));
    const SpaceTriple s = build_spaces(mesh, {});
    const DiscreteField p = interpolate(s.pressure, [](const Point&) { return 1.0; });
    const DiscreteField u = interpolate_vector(s.velocity, [](const Point&) { return Vec2(1.0, 0.0); });
    const std::string vtk = vtk_string(*mesh, {{"pressure", p}, {"velocity", u}});
    const auto l = lines_of(vtk);

    const auto at = [&](const std::string& header) {
        return static_cast<std::size_t>(std::find(l.begin(), l.end(), header) - l.begin());
    };
    EXPECT_EQ(l[0], "# vtk DataFile Version 3.0");
    EXPECT_EQ(l[2], "ASCII");
    EXPECT_EQ(l[3], "DATASET UNSTRUCTURED_GRID");
    const std::size_t points = at("POINTS 4 double"), cells = at("CELLS 2 8"), types = at("CELL_TYPES 2"),
                      data = at("POINT_DATA 4"), scal = at("SCALARS pressure double 1"),
                      vec = at("VECTORS velocity double");
    ASSERT_LT(vec, l.size());
    EXPECT_LT(points, cells);
    EXPECT_LT(cells, types);
    EXPECT_LT(types, data);
    EXPECT_LT(data, scal);
    EXPECT_LT(scal, vec);
    EXPECT_EQ(l[types + 1], "5");
    EXPECT_EQ(l[scal + 1], "LOOKUP_TABLE default");
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(l[scal + 2 + i], "1.0");
        EXPECT_EQ(l[vec + 1 + i], "1.0 0.0 0.0");
    }
}

TEST(Output, VtkAveragesDiscontinuousFields)
{
    const auto mesh = std::make_shared<const Mesh>(build_structured(1, 1));
    const SpaceTriple s = build_spaces(mesh, {VelocityElement::TaylorHood, VorticitySpace::DG1});
    Eigen::VectorXd coef(s.vorticity->n_dofs());
    for (int c = 0; c < 2; ++c) {
        for (int d : s.vorticity->cell_dofs(c)) coef[d] = c == 0 ? 1.0 : 3.0;
    }
    const std::string vtk = vtk_string(*mesh, {{"omega", DiscreteField(s.vorticity, coef)}});
    const auto l = lines_of(vtk);
    const std::size_t h = static_cast<std::size_t>(std::find(l.begin(), l.end(), "SCALARS omega double 1") - l.begin());
    ASSERT_LT(h + 5, l.size());
    for (int v = 0; v < 4; ++v) {
        int in0 = 0, in1 = 0;
        for (int w : mesh->cell(0)) in0 += w == v;
        for (int w : mesh->cell(1)) in1 += w == v;
        const double expected = in0 && in1 ? 2.0 : (in0 ? 1.0 : 3.0);
        EXPECT_EQ(l[h + 2 + static_cast<std::size_t>(v)], format_real(expected)) << "vertex " << v;
    }
}

TEST(Output, VtkRejectsBadFields)
{
    const auto mesh = std::make_shared<const Mesh>(build_structured(1, 1));
    const auto other = std::make_shared<const Mesh>(build_structured(1, 1));
    const SpaceTriple s = build_spaces(other, {});
    EXPECT_THROW(vtk_string(*mesh, {{"p", DiscreteField(s.pressure)}}), UsageError);
    const SpaceTriple t = build_spaces(mesh, {});
    EXPECT_THROW(vtk_string(*mesh, {{"two words", DiscreteField(t.pressure)}}), InvalidArgument);
    EXPECT_THROW(write_vtk(*mesh, {}, fs::path("/proc/vvp_denied/x.vtk")), IoError);
}

TEST(Tool, ExitCodes)
{
    const fs::path dir = scratch_dir("tool");
    const std::string out = " --out " + dir.string();
    EXPECT_EQ(run_tool("--help"), 0);
    EXPECT_EQ(run_tool("convergence --kappa1 0.08" + out), 2);
    EXPECT_EQ(run_tool("convergence --levels 2" + out), 0);
    EXPECT_TRUE(fs::exists(dir / "convergence_taylor-hood_dg1.csv"));
    EXPECT_EQ(run_tool("convergence --levels 2 --max-iters 1 --tol 1e-14" + out), 3);
    std::ofstream(dir / "plain_file") << "x";
    EXPECT_EQ(run_tool("convergence --levels 2 --out " + (dir / "plain_file" / "sub").string()), 4);
    EXPECT_EQ(run_tool("diagnostics" + out), 0);
}
