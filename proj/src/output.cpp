#include "vvp/output.hpp"

#include "vvp/error.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <fstream>

namespace vvp {

std::string format_scientific(double value)
{
    if (!std::isfinite(value)) return fmt::format("{}", value);
    const std::string s = fmt::format("{:.2e}", value);
    const auto e = s.find('e');
    const int exponent = std::stoi(s.substr(e + 1));
    return s.substr(0, e) + "e" + std::to_string(exponent);
}

std::string format_real(double value)
{
    std::string s = fmt::format("{}", value);
    if (std::isfinite(value) && s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
}

std::string convergence_csv(const ConvergenceReport& report)
{
    std::string out = "dof,h,e_u,r_u,e_w,r_w,e_p,r_p\n";
    for (std::size_t i = 0; i < report.levels.size(); ++i) {
        const auto& l = report.levels[i];
        std::array<std::string, 3> r;
        if (i > 0 && i - 1 < report.rates.size()) {
            const auto& rate = report.rates[i - 1];
            r = {fmt::format("{:.3f}", rate.velocity), fmt::format("{:.3f}", rate.vorticity),
                 fmt::format("{:.3f}", rate.pressure)};
        }
        out += fmt::format("{},{},{},{},{},{},{},{}\n", l.dofs, format_scientific(l.h),
                           format_scientific(l.errors.velocity), r[0], format_scientific(l.errors.vorticity), r[1],
                           format_scientific(l.errors.pressure), r[2]);
    }
    if (report.failed_level) out += fmt::format("# partial: level {} non-converged\n", *report.failed_level);
    return out;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os << text;
    os.flush();
    if (!os) throw IoError("failed writing " + path.string());
}

}  // namespace

void write_csv(const ConvergenceReport& report, const std::filesystem::path& path)
{
    write_text(path, convergence_csv(report));
}

std::string vtk_string(const Mesh& mesh, const std::vector<NamedField>& fields)
{
    const int nv = static_cast<int>(mesh.n_vertices());
    const int nc = static_cast<int>(mesh.n_cells());
    for (const auto& f : fields) {
        if (f.field.space().mesh_ptr().get() != &mesh) {
            throw UsageError("write_vtk: field '" + f.name + "' lives on a different mesh");
        }
        if (f.name.empty() || f.name.find_first_of(" \t\n") != std::string::npos) {
            throw InvalidArgument("write_vtk: field names must be non-empty without whitespace");
        }
    }

    std::string out = "# vtk DataFile Version 3.0\nvvp solution\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    out += fmt::format("POINTS {} double\n", nv);
    for (int v = 0; v < nv; ++v) {
        const Point& p = mesh.vertex(v);
        out += fmt::format("{} {} 0.0\n", format_real(p.x()), format_real(p.y()));
    }
    out += fmt::format("CELLS {} {}\n", nc, 4 * nc);
    for (int c = 0; c < nc; ++c) {
        const auto t = mesh.cell(c);
        out += fmt::format("3 {} {} {}\n", t[0], t[1], t[2]);
    }
    out += fmt::format("CELL_TYPES {}\n", nc);
    for (int c = 0; c < nc; ++c) out += "5\n";
    if (fields.empty()) return out;

    const std::array<Point, 3> corners{Point(0.0, 0.0), Point(1.0, 0.0), Point(0.0, 1.0)};
    std::vector<int> incident(static_cast<std::size_t>(nv), 0);
    for (int c = 0; c < nc; ++c) {
        for (int v : mesh.cell(c)) ++incident[static_cast<std::size_t>(v)];
    }

    out += fmt::format("POINT_DATA {}\n", nv);
    for (const auto& f : fields) {
        const int comps = f.field.space().n_components();
        std::vector<Vec2> sum(static_cast<std::size_t>(nv), Vec2::Zero());
        for (int c = 0; c < nc; ++c) {
            const auto t = mesh.cell(c);
            for (int k = 0; k < 3; ++k) {
                sum[static_cast<std::size_t>(t[static_cast<std::size_t>(k)])] +=
                    eval_cell(f.field, c, corners[static_cast<std::size_t>(k)]).value;
            }
        }
        if (comps == 2) {
            out += fmt::format("VECTORS {} double\n", f.name);
        } else {
            out += fmt::format("SCALARS {} double 1\nLOOKUP_TABLE default\n", f.name);
        }
        for (int v = 0; v < nv; ++v) {
            const Vec2 a = sum[static_cast<std::size_t>(v)] / incident[static_cast<std::size_t>(v)];
            if (comps == 2) {
                out += fmt::format("{} {} 0.0\n", format_real(a.x()), format_real(a.y()));
            } else {
                out += format_real(a.x()) + "\n";
            }
        }
    }
    return out;
}

void write_vtk(const Mesh& mesh, const std::vector<NamedField>& fields, const std::filesystem::path& path)
{
    write_text(path, vtk_string(mesh, fields));
}

}  // namespace vvp
