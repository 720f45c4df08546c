#pragma once

#include "vvp/convergence.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace vvp {

/// Scientific notation with a two-decimal mantissa and unpadded exponent,
/// e.g. 0.249 -> "2.49e-1".
std::string format_scientific(double value);

/// Shortest round-trip decimal that always carries a decimal point or
/// exponent, e.g. 1 -> "1.0".
std::string format_real(double value);

/// Error table with header `dof,h,e_u,r_u,e_w,r_w,e_p,r_p`; the first row
/// leaves the rates empty. A partial report ends with a comment line naming
/// the first non-converged level.
std::string convergence_csv(const ConvergenceReport& report);
void write_csv(const ConvergenceReport& report, const std::filesystem::path& path);

struct NamedField {
    std::string name;
    DiscreteField field;
};

/// Legacy ASCII VTK unstructured grid. Vector fields are written as 3-component
/// point vectors, scalar fields as point scalars; values are sampled at the
/// vertices of each cell and averaged over the cells sharing a vertex.
std::string vtk_string(const Mesh& mesh, const std::vector<NamedField>& fields);
void write_vtk(const Mesh& mesh, const std::vector<NamedField>& fields, const std::filesystem::path& path);

}  // namespace vvp
