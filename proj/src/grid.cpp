#include "urysohn/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "urysohn/errors.hpp"
#include "urysohn/seed.hpp"

namespace urysohn {

DomainSpec DomainSpec::interval(double lo, double hi) {
    DomainSpec d;
    d.kind = DomainKind::interval;
    d.lower = {lo, 0.0};
    d.upper = {hi, 0.0};
    d.validate();
    return d;
}

DomainSpec DomainSpec::rectangle(double x_lo, double x_hi, double y_lo, double y_hi) {
    DomainSpec d;
    d.kind = DomainKind::rectangle;
    d.lower = {x_lo, y_lo};
    d.upper = {x_hi, y_hi};
    d.validate();
    return d;
}

double DomainSpec::measure() const {
    double m = 1.0;
    for (std::size_t a = 0; a < dimension(); ++a) m *= upper[a] - lower[a];
    return m;
}

void DomainSpec::validate() const {
    for (std::size_t a = 0; a < dimension(); ++a) {
        if (!std::isfinite(lower[a]) || !std::isfinite(upper[a]))
            throw PreconditionError("domain bounds must be finite");
        if (!(lower[a] < upper[a]))
            throw PreconditionError("domain axis " + std::to_string(a) + ": lower must be < upper");
    }
}

namespace {

struct AxisRule {
    std::vector<double> nodes;
    double weight;
};

AxisRule midpoint_axis(double lo, double hi, std::size_t cells) {
    AxisRule rule;
    rule.weight = (hi - lo) / static_cast<double>(cells);
    rule.nodes.resize(cells);
    for (std::size_t c = 0; c < cells; ++c)
        rule.nodes[c] = lo + (static_cast<double>(c) + 0.5) * rule.weight;
    return rule;
}

}  // namespace

Grid::Grid(DomainSpec domain, std::size_t cells_per_axis)
    : domain_(domain), cells_(cells_per_axis) {
    domain_.validate();
    if (cells_per_axis < 1) throw PreconditionError("cells_per_axis must be >= 1");

    const AxisRule ax = midpoint_axis(domain_.lower[0], domain_.upper[0], cells_);
    if (domain_.kind == DomainKind::interval) {
        nodes_.reserve(cells_);
        for (double x : ax.nodes) nodes_.push_back({x, 0.0});
        weights_.assign(cells_, ax.weight);
    } else {
        const AxisRule ay = midpoint_axis(domain_.lower[1], domain_.upper[1], cells_);
        nodes_.reserve(cells_ * cells_);
        for (double x : ax.nodes)
            for (double y : ay.nodes) nodes_.push_back({x, y});
        weights_.assign(cells_ * cells_, ax.weight * ay.weight);
    }
    min_weight_ = *std::min_element(weights_.begin(), weights_.end());
}

GridPtr build_grid(const DomainSpec& domain, std::size_t cells_per_axis) {
    return std::make_shared<const Grid>(domain, cells_per_axis);
}

GridFunction::GridFunction(GridPtr grid, std::size_t dim)
    : grid_(std::move(grid)), dim_(dim), values_(grid_->size() * dim, 0.0) {
    if (dim == 0) throw PreconditionError("GridFunction dimension must be positive");
}

GridFunction::GridFunction(GridPtr grid, std::size_t dim, std::vector<double> values)
    : grid_(std::move(grid)), dim_(dim), values_(std::move(values)) {
    if (dim == 0) throw PreconditionError("GridFunction dimension must be positive");
    if (values_.size() != grid_->size() * dim_)
        throw PreconditionError("GridFunction: value count does not match node count");
    if (!all_finite()) throw PreconditionError("GridFunction: non-finite entry");
}

bool GridFunction::same_layout(const GridFunction& other) const {
    return grid_ == other.grid_ && dim_ == other.dim_;
}

bool GridFunction::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
    if (!same_layout(other)) throw PreconditionError("GridFunction layout mismatch");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
    if (!same_layout(other)) throw PreconditionError("GridFunction layout mismatch");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    return *this;
}

GridFunction& GridFunction::operator*=(double c) {
    for (double& v : values_) v *= c;
    return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double c, GridFunction a) { return a *= c; }

double euclidean(std::span<const double> v) {
    if (v.size() == 1) return std::abs(v[0]);
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

double lp_norm(const GridFunction& fn, double exponent) {
    if (!(exponent > 1.0) || !std::isfinite(exponent))
        throw PreconditionError("lp_norm: exponent must be finite and > 1");
    const auto w = fn.grid()->weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < fn.size(); ++i) {
        const double e = euclidean(fn.at(i));
        if (e != 0.0) sum += w[i] * std::pow(e, exponent);
    }
    return std::pow(sum, 1.0 / exponent);
}

std::vector<double> integrate_vector(const GridFunction& fn) {
    std::vector<double> out(fn.dim(), 0.0);
    const auto w = fn.grid()->weights();
    for (std::size_t i = 0; i < fn.size(); ++i) {
        const auto v = fn.at(i);
        for (std::size_t a = 0; a < fn.dim(); ++a) out[a] += w[i] * v[a];
    }
    return out;
}

SubsetMask::SubsetMask(GridPtr grid, std::vector<bool> included)
    : grid_(std::move(grid)), included_(std::move(included)) {
    if (included_.size() != grid_->size())
        throw PreconditionError("SubsetMask: flag count does not match node count");
    for (std::size_t i = 0; i < included_.size(); ++i)
        if (included_[i]) measure_ += grid_->weight(i);
}

std::size_t SubsetMask::count() const {
    return static_cast<std::size_t>(std::count(included_.begin(), included_.end(), true));
}

namespace {

SubsetMask greedy_mask(const GridPtr& grid, double target, std::span<const std::size_t> order) {
    if (!(target >= 0.0) || !std::isfinite(target))
        throw PreconditionError("subset_by_measure: target must be finite and >= 0");
    // A target equal to the domain measure selects everything even if the
    // rounded weight sum lands one ulp above it.
    const bool everything = target >= grid->total_measure();
    std::vector<bool> included(grid->size(), false);
    double measure = 0.0;
    for (std::size_t i : order) {
        const double next = measure + grid->weight(i);
        if (!everything && next > target) break;
        included[i] = true;
        measure = next;
    }
    return SubsetMask(grid, std::move(included));
}

std::vector<std::size_t> identity_order(std::size_t n) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    return order;
}

}  // namespace

SubsetMask subset_by_measure(const GridPtr& grid, double target, const PrefixStrategy&) {
    const auto order = identity_order(grid->size());
    return greedy_mask(grid, target, order);
}

SubsetMask subset_by_measure(const GridPtr& grid, double target, const RandomStrategy& s) {
    auto order = identity_order(grid->size());
    Rng rng(s.seed);
    // Fisher-Yates with our own index draw; std::shuffle is not portable across libraries.
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    return greedy_mask(grid, target, order);
}

SubsetMask subset_by_measure(const GridPtr& grid, double target, const WorstForStrategy& s) {
    if (s.weight_fn == nullptr || s.weight_fn->grid() != grid)
        throw PreconditionError("worst_for: weight function must live on the same grid");
    std::vector<double> mass(grid->size());
    for (std::size_t i = 0; i < grid->size(); ++i)
        mass[i] = grid->weight(i) * std::pow(euclidean(s.weight_fn->at(i)), s.exponent);
    auto order = identity_order(grid->size());
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return mass[a] > mass[b]; });
    return greedy_mask(grid, target, order);
}

}  // namespace urysohn
