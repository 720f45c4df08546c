#pragma once

#include "vvp/coefficients.hpp"
#include "vvp/field.hpp"
#include "vvp/space.hpp"

#include <Eigen/Sparse>

#include <optional>
#include <utility>
#include <vector>

namespace vvp {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Individual contributions of the augmented forms; combine with |.
namespace term {
inline constexpr unsigned Mass = 1u << 0;             // (sigma u, v)
inline constexpr unsigned ViscousCoupling = 1u << 1;  // (nu omega, curl v) - (nu theta, curl u)
inline constexpr unsigned CurlAugment = 1u << 2;      // kappa1 (curl u - omega, curl v)
inline constexpr unsigned DivAugment = 1u << 3;       // kappa2 (div u, div v)
inline constexpr unsigned StrainGradNu = 1u << 4;     // -2 (eps(u) grad nu, v)
inline constexpr unsigned CrossGradNu = 1u << 5;      // (omega, grad nu x v)
inline constexpr unsigned VorticityMass = 1u << 6;    // (nu omega, theta)
inline constexpr unsigned Convection = 1u << 7;       // ((beta . grad) u, v)
inline constexpr unsigned Pressure = 1u << 8;         // -(p, div v) and -(q, div u)
inline constexpr unsigned Multiplier = 1u << 9;       // (p, 1) = mean
inline constexpr unsigned Load = 1u << 10;            // (f, v)
inline constexpr unsigned All = (1u << 11) - 1u;
}  // namespace term

struct AssemblyOptions {
    int quadrature_degree = 0;  // 0 selects default_quadrature_degree
    unsigned terms = term::All;
    double pressure_mean = 0.0;  // right-hand side of the multiplier row
    int threads = 1;
};

/// Offsets of the blocks [velocity | vorticity | pressure | multiplier].
struct BlockIndex {
    int velocity = 0;
    int vorticity = 0;
    int pressure = 0;
    int multiplier = 0;
    int size = 0;
};

BlockIndex block_index(const SpaceTriple& spaces);

struct AssembledSystem {
    SparseMatrix matrix;
    Eigen::VectorXd rhs;
    BlockIndex blocks;
    bool bc_applied = false;
};

/// Oseen system with advecting field beta (absent: beta = 0).
AssembledSystem assemble_oseen(const SpaceTriple& spaces, const ProblemCoefficients& coeffs,
                               const DiscreteField* beta, const AssemblyOptions& options = {});

struct NewtonSystem {
    AssembledSystem jacobian;  // rhs holds the residual
    Eigen::VectorXd residual;  // F - K(x) x, Dirichlet rows zeroed
};

/// Newton linearisation at `iterate` (a full coefficient vector over the
/// block layout). The jacobian adds ((w . grad) u_h, v) to the Oseen matrix
/// with beta = u_h.
NewtonSystem assemble_newton(const SpaceTriple& spaces, const ProblemCoefficients& coeffs,
                             const Eigen::VectorXd& iterate, const AssemblyOptions& options = {});

/// Residual F - K(x) x with Dirichlet rows zeroed.
Eigen::VectorXd nonlinear_residual(const SpaceTriple& spaces, const ProblemCoefficients& coeffs,
                                   const Eigen::VectorXd& iterate, const AssemblyOptions& options = {});

/// Symmetric elimination of the constrained velocity DOFs. The values are
/// those of the velocity space DOFs (the velocity block starts at 0).
void apply_dirichlet(AssembledSystem& system, const std::vector<std::pair<int, double>>& values);
void apply_dirichlet(AssembledSystem& system, const FunctionSpace& velocity, const BoundaryFunction& g);

/// Gram matrix of the X inner product over [velocity | vorticity]:
/// (u, v) + (curl u, curl v) + (div u, div v) + (omega, theta).
SparseMatrix assemble_gram_X(const SpaceTriple& spaces, int quadrature_degree = 0);

/// Splits a full solution vector into the three fields.
struct FieldTriple {
    DiscreteField velocity;
    DiscreteField vorticity;
    DiscreteField pressure;
    double multiplier = 0.0;
};

FieldTriple split_solution(const SpaceTriple& spaces, const Eigen::VectorXd& x);

/// Integral of the discrete pressure.
double pressure_integral(const DiscreteField& pressure);

}  // namespace vvp
