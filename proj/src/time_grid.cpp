#include "ppde/time_grid.hpp"

#include <cmath>
#include <string>

#include "ppde/common.hpp"

namespace ppde {

TimeGrid::TimeGrid(double t0, double horizon, std::size_t steps) : t0_(t0), horizon_(horizon), steps_(steps) {
    if (!std::isfinite(t0) || !std::isfinite(horizon)) throw InvalidInput("TimeGrid: non-finite endpoints");
    if (steps == 0) {
        if (horizon != t0) throw InvalidInput("TimeGrid: zero steps requires horizon == t0");
        return;
    }
    if (horizon <= t0) throw InvalidInput("TimeGrid: horizon must exceed t0");
}

double TimeGrid::dt() const {
    if (steps_ == 0) throw InvalidInput("TimeGrid: dt undefined on a single-node grid");
    return (horizon_ - t0_) / static_cast<double>(steps_);
}

double TimeGrid::node(std::size_t i) const {
    if (i > steps_) throw InvalidInput("TimeGrid: node index out of range");
    if (i == steps_) return horizon_;  // right endpoint is exact
    return t0_ + (horizon_ - t0_) * (static_cast<double>(i) / static_cast<double>(steps_));
}

std::size_t TimeGrid::index_of(double t) const {
    if (steps_ == 0) {
        if (t == t0_) return 0;
        throw InvalidInput("TimeGrid: time off single-node grid");
    }
    const double step = dt();
    const double rel = (t - t0_) / step;
    const double rounded = std::nearbyint(rel);
    if (rounded < 0.0 || rounded > static_cast<double>(steps_) || std::fabs(rel - rounded) > 0.5 + 1e-9)
        throw InvalidInput("TimeGrid: time " + std::to_string(t) + " outside grid range");
    // Tolerance dt/2 means every in-range time matches its nearest node.
    return static_cast<std::size_t>(rounded);
}

bool TimeGrid::is_node(double t) const {
    if (steps_ == 0) return t == t0_;
    const double step = dt();
    const double rel = (t - t0_) / step;
    const double rounded = std::nearbyint(rel);
    if (rounded < 0.0 || rounded > static_cast<double>(steps_)) return false;
    return std::fabs(t - node(static_cast<std::size_t>(rounded))) <= step * 1e-9 + 1e-12;
}

TimeGrid TimeGrid::refined(std::size_t factor) const {
    if (factor == 0) throw InvalidInput("TimeGrid: refinement factor must be positive");
    return TimeGrid(t0_, horizon_, steps_ * factor);
}

TimeGrid TimeGrid::subgrid(std::size_t from, std::size_t to) const {
    if (from > to || to > steps_) throw InvalidInput("TimeGrid: bad subgrid range");
    return TimeGrid(node(from), node(to), to - from);
}

}  // namespace ppde
