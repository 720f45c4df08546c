#include "vvp/manufactured.hpp"

#include "vvp/error.hpp"
#include "vvp/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace vvp {

Vec2 forcing_from_momentum(const ManufacturedCase& c, const Point& x)
{
    const Vec2 u = c.u(x);
    const Mat2 gu = c.grad_u(x);
    const Vec2 gw = c.grad_omega(x);
    const Vec2 gnu = c.grad_nu(x);
    const Mat2 eps = 0.5 * (gu + gu.transpose());
    const Vec2 curl_omega(gw.y(), -gw.x());
    return c.sigma(x) * u + c.nu(x) * curl_omega + gu * u - 2.0 * eps * gnu + c.grad_p(x);
}

ManufacturedCase example1_case_2d(double nu0, double nu1, double permeability)
{
    using std::cos;
    using std::sin;
    constexpr double pi = std::numbers::pi;

    ManufacturedCase c;
    c.name = "example1";
    c.domain = Rect{0.0, 0.0, 1.0, 1.0};
    c.u = [](const Point& x) {
        return Vec2(cos(pi * x.x()) * sin(pi * x.y()), -sin(pi * x.x()) * cos(pi * x.y()));
    };
    c.grad_u = [](const Point& x) {
        const double sx = sin(pi * x.x()), cx = cos(pi * x.x());
        const double sy = sin(pi * x.y()), cy = cos(pi * x.y());
        Mat2 g;
        g << -pi * sx * sy, pi * cx * cy,
             -pi * cx * cy, pi * sx * sy;
        return g;
    };
    c.p = [](const Point& x) { return sin(pi * x.x()) * sin(pi * x.y()); };
    c.grad_p = [](const Point& x) {
        return Vec2(pi * cos(pi * x.x()) * sin(pi * x.y()), pi * sin(pi * x.x()) * cos(pi * x.y()));
    };
    c.omega = [](const Point& x) { return -2.0 * pi * cos(pi * x.x()) * cos(pi * x.y()); };
    c.grad_omega = [](const Point& x) {
        return Vec2(2.0 * pi * pi * sin(pi * x.x()) * cos(pi * x.y()),
                    2.0 * pi * pi * cos(pi * x.x()) * sin(pi * x.y()));
    };
    c.nu = [nu0, nu1](const Point& x) {
        const double cxy = cos(pi * x.x() * x.y());
        return nu0 + (nu1 - nu0) * cxy * cxy;
    };
    c.grad_nu = [nu0, nu1](const Point& x) {
        const double t = pi * x.x() * x.y();
        return Vec2(-2.0 * pi * (nu1 - nu0) * cos(t) * sin(t) * Vec2(x.y(), x.x()));
    };
    c.sigma = [nu = c.nu, permeability](const Point& x) { return nu(x) / permeability; };
    c.nu0 = nu0;
    c.nu1 = nu1;
    c.sigma0 = nu0 / permeability;
    c.sigma1 = nu1 / permeability;
    c.kappa1 = 0.999 * kappa1_upper_bound(nu0);
    c.kappa2 = 0.5 * nu0;
    c.pressure_mean = 4.0 / (pi * pi);
    c.f = [c](const Point& x) { return forcing_from_momentum(c, x); };
    return c;
}

ProblemCoefficients case_coefficients(const ManufacturedCase& c)
{
    ProblemCoefficients k;
    k.nu = c.nu;
    k.grad_nu = c.grad_nu;
    k.sigma = c.sigma;
    k.f = c.f;
    k.kappa1 = c.kappa1;
    k.kappa2 = c.kappa2;
    k.nu0 = c.nu0;
    k.nu1 = c.nu1;
    k.sigma0 = c.sigma0;
    k.sigma1 = c.sigma1;
    return k;
}

BoundaryFunction case_boundary(const ManufacturedCase& c)
{
    return [u = c.u](const Point& x, BoundaryTag) { return u(x); };
}

ErrorNorms error_norms(const FieldTriple& fields, const ManufacturedCase& c, int degree)
{
    const FunctionSpace& vs = fields.velocity.space();
    const FunctionSpace& ws = fields.vorticity.space();
    const FunctionSpace& ps = fields.pressure.space();
    if (vs.mesh_ptr() != ws.mesh_ptr() || vs.mesh_ptr() != ps.mesh_ptr()) {
        throw UsageError("error_norms: fields live on different meshes");
    }
    if (degree <= 0) degree = 2 * vs.family().polynomial_degree() + 2 + 3;
    const QuadratureRule rule = quadrature(degree);
    const Mesh& mesh = vs.mesh();

    double eu = 0.0, ew = 0.0, ep = 0.0;
    CellBasis bv, bw, bp;
    for (int cell = 0; cell < static_cast<int>(mesh.n_cells()); ++cell) {
        vs.tabulate(cell, rule.points, bv);
        ws.tabulate(cell, rule.points, bw);
        ps.tabulate(cell, rule.points, bp);
        const double det = cell_geometry(mesh, cell).det;
        const auto dv = vs.cell_dofs(cell);
        const auto dw = ws.cell_dofs(cell);
        const auto dp = ps.cell_dofs(cell);
        for (int q = 0; q < static_cast<int>(rule.size()); ++q) {
            const double w = rule.weights[static_cast<std::size_t>(q)] * det;
            const Point x = map_to_physical(mesh, cell, rule.points[static_cast<std::size_t>(q)]);
            Vec2 uh = Vec2::Zero();
            double curl_h = 0.0, div_h = 0.0;
            for (int i = 0; i < bv.n_basis; ++i) {
                const double xi = fields.velocity.coefficients()[dv[static_cast<std::size_t>(i)]];
                uh.x() += xi * bv.value(q, i, 0);
                uh.y() += xi * bv.value(q, i, 1);
                curl_h += xi * bv.curl(q, i);
                div_h += xi * bv.div(q, i);
            }
            double wh = 0.0, ph = 0.0;
            for (int i = 0; i < bw.n_basis; ++i) wh += fields.vorticity.coefficients()[dw[static_cast<std::size_t>(i)]] * bw.value(q, i);
            for (int i = 0; i < bp.n_basis; ++i) ph += fields.pressure.coefficients()[dp[static_cast<std::size_t>(i)]] * bp.value(q, i);

            const Mat2 gu = c.grad_u(x);
            const double curl_e = gu(1, 0) - gu(0, 1);
            const double div_e = gu(0, 0) + gu(1, 1);
            eu += w * ((c.u(x) - uh).squaredNorm() + (curl_e - curl_h) * (curl_e - curl_h) +
                       (div_e - div_h) * (div_e - div_h));
            ew += w * (c.omega(x) - wh) * (c.omega(x) - wh);
            ep += w * (c.p(x) - ph) * (c.p(x) - ph);
        }
    }
    return {std::sqrt(eu), std::sqrt(ew), std::sqrt(ep)};
}

std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& hs)
{
    if (errors.size() != hs.size() || errors.size() < 2) {
        throw InvalidArgument("eoc: need at least two levels of matching errors and mesh sizes");
    }
    for (std::size_t i = 1; i < hs.size(); ++i) {
        if (!(hs[i] < hs[i - 1])) throw InvalidArgument("eoc: mesh sizes must strictly decrease");
    }
    std::vector<double> rates;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        if (errors[i] == 0.0 || errors[i + 1] == 0.0) {
            rates.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        rates.push_back(std::log(errors[i] / errors[i + 1]) / std::log(hs[i] / hs[i + 1]));
    }
    return rates;
}

namespace {

template <class Integrand>
double integrate_field(const DiscreteField& field, int degree, Integrand&& fn)
{
    const FunctionSpace& s = field.space();
    if (degree <= 0) degree = 2 * s.family().polynomial_degree() + 2;
    const QuadratureRule rule = quadrature(degree);
    CellBasis b;
    double sum = 0.0;
    for (int cell = 0; cell < static_cast<int>(s.mesh().n_cells()); ++cell) {
        s.tabulate(cell, rule.points, b);
        const double det = cell_geometry(s.mesh(), cell).det;
        const auto dofs = s.cell_dofs(cell);
        for (int q = 0; q < b.n_points; ++q) {
            sum += rule.weights[static_cast<std::size_t>(q)] * det * fn(b, q, dofs);
        }
    }
    return sum;
}

}  // namespace

double l2_norm(const DiscreteField& field, int degree)
{
    const auto& x = field.coefficients();
    return std::sqrt(integrate_field(field, degree, [&](const CellBasis& b, int q, std::span<const int> dofs) {
        double s = 0.0;
        for (int c = 0; c < b.components; ++c) {
            double v = 0.0;
            for (int i = 0; i < b.n_basis; ++i) v += x[dofs[static_cast<std::size_t>(i)]] * b.value(q, i, c);
            s += v * v;
        }
        return s;
    }));
}

double div_l2_norm(const DiscreteField& velocity, int degree)
{
    if (velocity.space().n_components() != 2) throw UsageError("div_l2_norm: field is scalar");
    const auto& x = velocity.coefficients();
    return std::sqrt(integrate_field(velocity, degree, [&](const CellBasis& b, int q, std::span<const int> dofs) {
        double v = 0.0;
        for (int i = 0; i < b.n_basis; ++i) v += x[dofs[static_cast<std::size_t>(i)]] * b.div(q, i);
        return v * v;
    }));
}

}  // namespace vvp
