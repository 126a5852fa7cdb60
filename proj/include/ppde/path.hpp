#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ppde/time_grid.hpp"

namespace ppde {

class Path;

// Non-owning view of a path clamped at a node: reads beyond cap return the
// value at cap. Coefficients and functionals receive these, which enforces
// non-anticipativity by construction.
class PathSlice {
public:
    PathSlice(const TimeGrid* grid, const double* data, std::size_t dim, std::size_t cap)
        : grid_(grid), data_(data), dim_(dim), cap_(cap) {}

    const TimeGrid& grid() const { return *grid_; }
    std::size_t dim() const { return dim_; }
    std::size_t cap() const { return cap_; }

    double at(std::size_t node, std::size_t c) const {
        if (node > cap_) node = cap_;
        return data_[node * dim_ + c];
    }
    std::span<const double> node(std::size_t i) const {
        if (i > cap_) i = cap_;
        return {data_ + i * dim_, dim_};
    }
    std::span<const double> current() const { return {data_ + cap_ * dim_, dim_}; }
    double current(std::size_t c) const { return data_[cap_ * dim_ + c]; }

    double running_max(std::size_t c) const;       // signed max over nodes 0..cap
    double running_max_abs_norm() const;           // max euclidean norm over nodes 0..cap
    double running_integral(std::size_t c) const;  // left Riemann sum over [t0, t_cap]

private:
    const TimeGrid* grid_;
    const double* data_;
    std::size_t dim_, cap_;
};

// Grid-sampled path anchored at zero at its first node.
class Path {
public:
    Path(TimeGrid grid, std::size_t dim);  // zero path
    static Path from_values(TimeGrid grid, std::size_t dim, std::vector<double> values);

    const TimeGrid& grid() const { return grid_; }
    std::size_t dim() const { return dim_; }
    std::size_t nodes() const { return grid_.nodes(); }

    double at(std::size_t node, std::size_t c) const { return values_[node * dim_ + c]; }
    double& at(std::size_t node, std::size_t c) { return values_[node * dim_ + c]; }
    std::span<const double> node(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
    std::span<double> node(std::size_t i) { return {values_.data() + i * dim_, dim_}; }
    const std::vector<double>& values() const { return values_; }

    PathSlice slice(std::size_t cap) const { return PathSlice(&grid_, values_.data(), dim_, cap); }
    PathSlice slice_at(double t) const { return slice(grid_.index_of(t)); }
    PathSlice full() const { return slice(grid_.last()); }

private:
    Path() : grid_(0.0, 0.0, 0) {}
    TimeGrid grid_;
    std::size_t dim_ = 0;
    std::vector<double> values_;
};

struct PathPoint {
    double s;
    Path path;
    PathPoint(double s_, Path p);  // validates s on grid
};

// Stopped path: agrees with input up to s, constant afterwards.
Path clamp(const Path& p, double s);

// max over nodes of the euclidean norm.
double uniform_norm(const Path& p);

// |s - s'| + uniform_norm(clamp(w,s) - clamp(w',s')).
double lambda_distance(const PathPoint& a, const PathPoint& b);

// Concatenation at s: w before s, w_s + suffix from s on. suffix lives on
// [s, horizon] with matching spacing and starts at zero.
Path concat(const Path& w, const Path& suffix, double s);

// Shifted evaluation: u(w (x)_s suffix).
double eval_shifted(const std::function<double(const PathSlice&)>& u, const Path& w, const Path& suffix,
                    double s);

// First node strictly after t where |path_s - path_t| >= eps, capped at
// min(t + eps, horizon) (cap rounded down to a node) when capped, at the
// horizon otherwise.
double hitting_time(const Path& p, double t, double eps, bool capped);

// Adds eps to coordinate c of every node at or after t (vertical bump).
Path vertical_bump(const Path& p, double t, std::size_t c, double eps);

// Conditioning prefix on [grid.t0, t] extended to the full grid with a
// frozen tail; prefix may already live on the full grid.
Path extend_to_grid(const Path& prefix, const TimeGrid& full);

}  // namespace ppde
