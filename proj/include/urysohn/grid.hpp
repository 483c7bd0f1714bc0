#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace urysohn {

enum class DomainKind { interval, rectangle };

/// Axis-aligned compact domain: an interval (k = 1) or a rectangle (k = 2).
struct DomainSpec {
    DomainKind kind = DomainKind::interval;
    std::array<double, 2> lower{0.0, 0.0};
    std::array<double, 2> upper{1.0, 1.0};

    static DomainSpec interval(double lo, double hi);
    static DomainSpec rectangle(double x_lo, double x_hi, double y_lo, double y_hi);

    std::size_t dimension() const { return kind == DomainKind::interval ? 1 : 2; }
    double measure() const;
    void validate() const;
};

using Point = std::array<double, 2>;

/// Composite midpoint quadrature over a DomainSpec.
///
/// Rectangle nodes are stored x-major: node (i, j) sits at index i * cells + j.
class Grid {
public:
    Grid(DomainSpec domain, std::size_t cells_per_axis);

    const DomainSpec& domain() const { return domain_; }
    std::size_t cells_per_axis() const { return cells_; }
    std::size_t size() const { return weights_.size(); }
    std::size_t dimension() const { return domain_.dimension(); }

    const Point& node(std::size_t i) const { return nodes_[i]; }
    std::span<const Point> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }
    double weight(std::size_t i) const { return weights_[i]; }

    /// Analytic Lebesgue measure of the domain.
    double total_measure() const { return domain_.measure(); }
    double min_weight() const { return min_weight_; }

private:
    DomainSpec domain_;
    std::size_t cells_;
    std::vector<Point> nodes_;
    std::vector<double> weights_;
    double min_weight_ = 0.0;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr build_grid(const DomainSpec& domain, std::size_t cells_per_axis);

/// R^d-valued function sampled at the grid nodes, stored node-major.
class GridFunction {
public:
    GridFunction(GridPtr grid, std::size_t dim);
    GridFunction(GridPtr grid, std::size_t dim, std::vector<double> values);

    const GridPtr& grid() const { return grid_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return grid_->size(); }

    std::span<const double> at(std::size_t node) const {
        return {values_.data() + node * dim_, dim_};
    }
    std::span<double> at(std::size_t node) { return {values_.data() + node * dim_, dim_}; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    GridFunction& operator+=(const GridFunction& other);
    GridFunction& operator-=(const GridFunction& other);
    GridFunction& operator*=(double c);

    bool same_layout(const GridFunction& other) const;
    bool all_finite() const;

    friend bool operator==(const GridFunction& a, const GridFunction& b) {
        return a.grid_ == b.grid_ && a.dim_ == b.dim_ && a.values_ == b.values_;
    }

private:
    GridPtr grid_;
    std::size_t dim_;
    std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double c, GridFunction a);

/// Euclidean norm of a node vector.
double euclidean(std::span<const double> v);

/// (sum_i w_i |v_i|^p)^(1/p), summed in ascending node order.
double lp_norm(const GridFunction& fn, double exponent);

/// sum_i w_i v_i in ascending node order.
std::vector<double> integrate_vector(const GridFunction& fn);

/// Union of whole grid cells standing in for a measurable subset of the domain.
class SubsetMask {
public:
    SubsetMask(GridPtr grid, std::vector<bool> included);

    const GridPtr& grid() const { return grid_; }
    bool contains(std::size_t node) const { return included_[node]; }
    const std::vector<bool>& included() const { return included_; }
    std::size_t count() const;
    double measure() const { return measure_; }

private:
    GridPtr grid_;
    std::vector<bool> included_;
    double measure_ = 0.0;
};

struct PrefixStrategy {};
struct RandomStrategy {
    std::uint64_t seed = 0;
};
/// Greedy on w_i * |weight_fn_i|^exponent, largest first (ties broken by node index).
struct WorstForStrategy {
    const GridFunction* weight_fn = nullptr;
    double exponent = 2.0;
};

/// Greedily includes nodes in strategy order until the next one would exceed `target`.
SubsetMask subset_by_measure(const GridPtr& grid, double target, const PrefixStrategy&);
SubsetMask subset_by_measure(const GridPtr& grid, double target, const RandomStrategy& s);
SubsetMask subset_by_measure(const GridPtr& grid, double target, const WorstForStrategy& s);

}  // namespace urysohn
