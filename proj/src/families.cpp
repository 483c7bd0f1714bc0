#include <cmath>
#include <numbers>
#include <string>

#include "urysohn/errors.hpp"
#include "urysohn/problem.hpp"

namespace urysohn {
namespace {

using std::numbers::pi;

class FamilyBase : public KernelFamily {
public:
    FamilyBase(std::map<std::string, double> defaults, const std::map<std::string, double>& overrides,
               std::string_view name)
        : params_(std::move(defaults)) {
        for (const auto& [key, value] : overrides) {
            auto it = params_.find(key);
            if (it == params_.end())
                throw ConfigError("family '" + std::string(name) + "' has no parameter '" + key + "'");
            if (!std::isfinite(value)) throw ConfigError("parameter '" + key + "' must be finite");
            it->second = value;
        }
    }

    const std::map<std::string, double>& params() const override { return params_; }

protected:
    double param(const char* key) const { return params_.at(key); }

private:
    std::map<std::string, double> params_;
};

// n = m = 1 on an interval:
//   f  = a tanh(x) + forcing sin(pi xi)
//   K1 = c1 exp(-xi s) sin(x)
//   K2 = c2 cos(xi + s) (1 + d sin(x))
class ScalarSmooth final : public FamilyBase {
public:
    static std::map<std::string, double> defaults() {
        return {{"a", 0.2}, {"c1", 0.3}, {"c2", 0.1}, {"d", 0.4}, {"forcing", 1.0}};
    }

    explicit ScalarSmooth(const std::map<std::string, double>& overrides)
        : FamilyBase(defaults(), overrides, "scalar-smooth"),
          a_(param("a")), c1_(param("c1")), c2_(param("c2")), d_(param("d")),
          forcing_(param("forcing")) {}

    std::string_view name() const override { return "scalar-smooth"; }
    std::size_t state_dim() const override { return 1; }
    std::size_t control_dim() const override { return 1; }
    std::size_t domain_dim() const override { return 1; }
    DomainSpec default_domain() const override { return DomainSpec::interval(0.0, 1.0); }

    void f(const Point& xi, std::span<const double> x, std::span<double> out) const override {
        out[0] = a_ * std::tanh(x[0]) + forcing_ * std::sin(pi * xi[0]);
    }
    void k1(const Point& xi, const Point& s, std::span<const double> x,
            std::span<double> out) const override {
        out[0] = c1_ * std::exp(-xi[0] * s[0]) * std::sin(x[0]);
    }
    void k2(const Point& xi, const Point& s, std::span<const double> x,
            std::span<double> out) const override {
        out[0] = c2_ * std::cos(xi[0] + s[0]) * (1.0 + d_ * std::sin(x[0]));
    }

    double gamma0(const Point&) const override { return std::abs(a_); }
    double gamma1(const Point& xi, const Point& s) const override {
        return std::abs(c1_) * std::exp(-xi[0] * s[0]);
    }
    double gamma2(const Point&, const Point&) const override { return std::abs(c2_ * d_); }

    void k1_coeff(const Point& xi, const Point& s, std::span<double> out) const override {
        out[0] = c1_ * std::exp(-xi[0] * s[0]);
    }
    void k1_feature(std::span<const double> x, std::span<double> out) const override {
        out[0] = std::sin(x[0]);
    }
    void k2_coeff(const Point& xi, const Point& s, std::span<double> out) const override {
        out[0] = c2_ * std::cos(xi[0] + s[0]);
    }
    void k2_feature(std::span<const double> x, std::span<double> out) const override {
        out[0] = 1.0 + d_ * std::sin(x[0]);
    }

private:
    double a_, c1_, c2_, d_, forcing_;
};

// Linear in x, so the discretized equation is a dense linear system:
//   f  = a x + forcing sin(pi xi)
//   K1 = b0 exp(-xi s) x
//   K2 = c2 cos(xi + s)
class LinearExact final : public FamilyBase {
public:
    static std::map<std::string, double> defaults() {
        return {{"a", 0.2}, {"b0", 0.3}, {"c2", 0.1}, {"forcing", 1.0}};
    }

    explicit LinearExact(const std::map<std::string, double>& overrides)
        : FamilyBase(defaults(), overrides, "linear-exact"),
          a_(param("a")), b0_(param("b0")), c2_(param("c2")), forcing_(param("forcing")) {}

    std::string_view name() const override { return "linear-exact"; }
    std::size_t state_dim() const override { return 1; }
    std::size_t control_dim() const override { return 1; }
    std::size_t domain_dim() const override { return 1; }
    DomainSpec default_domain() const override { return DomainSpec::interval(0.0, 1.0); }

    void f(const Point& xi, std::span<const double> x, std::span<double> out) const override {
        out[0] = a_ * x[0] + forcing_ * std::sin(pi * xi[0]);
    }
    void k1(const Point& xi, const Point& s, std::span<const double> x,
            std::span<double> out) const override {
        out[0] = b0_ * std::exp(-xi[0] * s[0]) * x[0];
    }
    void k2(const Point& xi, const Point& s, std::span<const double>,
            std::span<double> out) const override {
        out[0] = c2_ * std::cos(xi[0] + s[0]);
    }

    double gamma0(const Point&) const override { return std::abs(a_); }
    double gamma1(const Point& xi, const Point& s) const override {
        return std::abs(b0_) * std::exp(-xi[0] * s[0]);
    }
    double gamma2(const Point&, const Point&) const override { return 0.0; }

    void k1_coeff(const Point& xi, const Point& s, std::span<double> out) const override {
        out[0] = b0_ * std::exp(-xi[0] * s[0]);
    }
    void k1_feature(std::span<const double> x, std::span<double> out) const override {
        out[0] = x[0];
    }
    void k2_coeff(const Point& xi, const Point& s, std::span<double> out) const override {
        out[0] = c2_ * std::cos(xi[0] + s[0]);
    }
    void k2_feature(std::span<const double>, std::span<double> out) const override { out[0] = 1.0; }

private:
    double a_, b0_, c2_, forcing_;
};

// k = 2, n = 2, m = 1 on a rectangle:
//   f  = (a tanh(x2) + forcing sin(pi xi1), a tanh(x1) + forcing sin(pi xi2))
//   K1 = c1 exp(-xi.s) (sin x1, sin x2)
//   K2 = c2 (cos(xi1 + s1)(1 + d sin x1), cos(xi2 + s2)(1 + d sin x2))^T
class Planar final : public FamilyBase {
public:
    static std::map<std::string, double> defaults() {
        return {{"a", 0.2}, {"c1", 0.3}, {"c2", 0.1}, {"d", 0.4}, {"forcing", 1.0}};
    }

    explicit Planar(const std::map<std::string, double>& overrides)
        : FamilyBase(defaults(), overrides, "planar"),
          a_(param("a")), c1_(param("c1")), c2_(param("c2")), d_(param("d")),
          forcing_(param("forcing")) {}

    std::string_view name() const override { return "planar"; }
    std::size_t state_dim() const override { return 2; }
    std::size_t control_dim() const override { return 1; }
    std::size_t domain_dim() const override { return 2; }
    DomainSpec default_domain() const override { return DomainSpec::rectangle(0.0, 1.0, 0.0, 1.0); }

    void f(const Point& xi, std::span<const double> x, std::span<double> out) const override {
        out[0] = a_ * std::tanh(x[1]) + forcing_ * std::sin(pi * xi[0]);
        out[1] = a_ * std::tanh(x[0]) + forcing_ * std::sin(pi * xi[1]);
    }
    void k1(const Point& xi, const Point& s, std::span<const double> x,
            std::span<double> out) const override {
        const double g = c1_ * std::exp(-(xi[0] * s[0] + xi[1] * s[1]));
        out[0] = g * std::sin(x[0]);
        out[1] = g * std::sin(x[1]);
    }
    void k2(const Point& xi, const Point& s, std::span<const double> x,
            std::span<double> out) const override {
        out[0] = c2_ * std::cos(xi[0] + s[0]) * (1.0 + d_ * std::sin(x[0]));
        out[1] = c2_ * std::cos(xi[1] + s[1]) * (1.0 + d_ * std::sin(x[1]));
    }

    double gamma0(const Point&) const override { return std::abs(a_); }
    double gamma1(const Point& xi, const Point& s) const override {
        return std::abs(c1_) * std::exp(-(xi[0] * s[0] + xi[1] * s[1]));
    }
    double gamma2(const Point&, const Point&) const override { return std::abs(c2_ * d_); }

    void k1_coeff(const Point& xi, const Point& s, std::span<double> out) const override {
        const double g = c1_ * std::exp(-(xi[0] * s[0] + xi[1] * s[1]));
        out[0] = g;
        out[1] = g;
    }
    void k1_feature(std::span<const double> x, std::span<double> out) const override {
        out[0] = std::sin(x[0]);
        out[1] = std::sin(x[1]);
    }
    void k2_coeff(const Point& xi, const Point& s, std::span<double> out) const override {
        out[0] = c2_ * std::cos(xi[0] + s[0]);
        out[1] = c2_ * std::cos(xi[1] + s[1]);
    }
    void k2_feature(std::span<const double> x, std::span<double> out) const override {
        out[0] = 1.0 + d_ * std::sin(x[0]);
        out[1] = 1.0 + d_ * std::sin(x[1]);
    }

private:
    double a_, c1_, c2_, d_, forcing_;
};

}  // namespace

FamilyPtr make_family(std::string_view name, const std::map<std::string, double>& overrides) {
    if (name == "scalar-smooth") return std::make_shared<ScalarSmooth>(overrides);
    if (name == "linear-exact") return std::make_shared<LinearExact>(overrides);
    if (name == "planar") return std::make_shared<Planar>(overrides);
    throw ConfigError("unknown kernel family '" + std::string(name) + "'");
}

std::map<std::string, double> family_defaults(std::string_view name) {
    return make_family(name)->params();
}

}  // namespace urysohn
