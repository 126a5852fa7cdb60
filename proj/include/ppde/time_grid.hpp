#pragma once

#include <cstddef>

namespace ppde {

// Uniform grid t0 = s_0 < s_1 < ... < s_m = horizon. Times are matched to
// nodes with an absolute tolerance of dt/2, i.e. nearest-node rounding; a
// degenerate single-node grid (steps == 0, horizon == t0) represents an
// empty conditioning prefix.
class TimeGrid {
public:
    TimeGrid(double t0, double horizon, std::size_t steps);

    double t0() const { return t0_; }
    double horizon() const { return horizon_; }
    std::size_t steps() const { return steps_; }
    std::size_t nodes() const { return steps_ + 1; }
    std::size_t last() const { return steps_; }

    double dt() const;  // rejects degenerate grids
    double node(std::size_t i) const;
    std::size_t index_of(double t) const;  // nearest node within dt/2, rejects out of range
    bool is_node(double t) const;

    TimeGrid refined(std::size_t factor) const;
    // Nodes [from, to] as a new grid (to >= from).
    TimeGrid subgrid(std::size_t from, std::size_t to) const;

    bool operator==(const TimeGrid& o) const {
        return t0_ == o.t0_ && horizon_ == o.horizon_ && steps_ == o.steps_;
    }

private:
    double t0_, horizon_;
    std::size_t steps_;
};

}  // namespace ppde
