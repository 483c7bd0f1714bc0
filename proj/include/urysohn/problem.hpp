#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "urysohn/grid.hpp"

namespace urysohn {

/// Kernel data of x(xi) = f(xi, x(xi)) + lambda * int [K1(xi,s,x(s)) + K2(xi,s,x(s)) u(s)] ds
/// together with the Lipschitz moduli gamma0, gamma1, gamma2.
///
/// Besides pointwise evaluation, every family exposes its kernels in row-scaled
/// separable form
///
///     K1(xi,s,x)_a     = A1_a(xi,s) * phi_a(x)
///     K2(xi,s,x)_{a,c} = A2_a(xi,s) * psi_{a,c}(x)
///
/// which lets the assembled Nystrom operator tabulate A1, A2 once per grid.
class KernelFamily {
public:
    virtual ~KernelFamily() = default;

    virtual std::string_view name() const = 0;
    virtual std::size_t state_dim() const = 0;
    virtual std::size_t control_dim() const = 0;
    /// Spatial dimension k of the domain the family is defined on.
    virtual std::size_t domain_dim() const = 0;
    virtual DomainSpec default_domain() const = 0;
    virtual const std::map<std::string, double>& params() const = 0;

    virtual void f(const Point& xi, std::span<const double> x, std::span<double> out) const = 0;
    virtual void k1(const Point& xi, const Point& s, std::span<const double> x,
                    std::span<double> out) const = 0;
    /// Row-major n x m.
    virtual void k2(const Point& xi, const Point& s, std::span<const double> x,
                    std::span<double> out) const = 0;

    virtual double gamma0(const Point& xi) const = 0;
    virtual double gamma1(const Point& xi, const Point& s) const = 0;
    virtual double gamma2(const Point& xi, const Point& s) const = 0;
    virtual bool continuous_k2_at_zero() const { return true; }

    virtual void k1_coeff(const Point& xi, const Point& s, std::span<double> out) const = 0;
    virtual void k1_feature(std::span<const double> x, std::span<double> out) const = 0;
    virtual void k2_coeff(const Point& xi, const Point& s, std::span<double> out) const = 0;
    virtual void k2_feature(std::span<const double> x, std::span<double> out) const = 0;
};

using FamilyPtr = std::shared_ptr<const KernelFamily>;

/// Registry lookup. Known names: "scalar-smooth", "linear-exact", "planar".
/// Parameters not given take the family defaults; unknown names throw ConfigError.
FamilyPtr make_family(std::string_view name, const std::map<std::string, double>& overrides = {});

/// Default parameter set of a registered family.
std::map<std::string, double> family_defaults(std::string_view name);

struct ProblemSpec {
    DomainSpec domain;
    std::size_t n = 1;
    std::size_t m = 1;
    double lambda = 0.0;
    double q = 2.0;
    double p = 2.0;
    double r = 1.0;
    FamilyPtr family;

    /// Validates and derives p from q.
    static ProblemSpec make(FamilyPtr family, double lambda, double q, double r,
                            std::optional<DomainSpec> domain = std::nullopt);
};

/// Defaults shipped with each family (lambda = 0.5, q = 2, r = 1).
ProblemSpec default_problem(std::string_view family);

double conjugate_exponent(double q);

/// Lipschitz and size data of the kernels, before they are combined.
struct KernelBounds {
    double kappa0 = 0.0;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double alpha0 = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
};

struct Constants {
    double kappa0 = 0.0;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double alpha0 = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double l_star = 0.0;
    double t_star = 0.0;
    std::optional<double> beta_star;
    std::optional<double> c_star;
    bool condition_2d_satisfied = false;
    double measure = 0.0;
    double p = 2.0;

    /// L*^(1/p): contraction factor of the Picard map.
    double contraction_factor() const;
};

/// Combines kernel bounds into L*, T*, beta*, c*.
Constants constants_from_bounds(const KernelBounds& b, double lambda, double p, double q, double r,
                                double measure);

/// Discrete suprema and nested quadrature of the kernel data on `grid`.
KernelBounds compute_kernel_bounds(const ProblemSpec& problem, const Grid& grid);
Constants compute_constants(const ProblemSpec& problem, const Grid& grid);

struct SmallGain {
    bool satisfied = false;
    double margin = 0.0;
};

SmallGain check_small_gain(const Constants& c);

}  // namespace urysohn
