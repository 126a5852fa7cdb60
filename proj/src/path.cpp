#include "ppde/path.hpp"

#include <cmath>
#include <cstring>

#include "ppde/common.hpp"

namespace ppde {

double PathSlice::running_max(std::size_t c) const {
    double m = data_[c];
    for (std::size_t i = 1; i <= cap_; ++i) m = std::max(m, data_[i * dim_ + c]);
    return m;
}

double PathSlice::running_max_abs_norm() const {
    double m = 0.0;
    for (std::size_t i = 0; i <= cap_; ++i) {
        double s2 = 0.0;
        for (std::size_t c = 0; c < dim_; ++c) s2 += sqr(data_[i * dim_ + c]);
        m = std::max(m, s2);
    }
    return std::sqrt(m);
}

double PathSlice::running_integral(std::size_t c) const {
    if (cap_ == 0) return 0.0;
    const double dt = grid_->dt();
    double acc = 0.0;
    for (std::size_t i = 0; i < cap_; ++i) acc += data_[i * dim_ + c];
    return acc * dt;
}

Path::Path(TimeGrid grid, std::size_t dim) : grid_(grid), dim_(dim), values_(grid.nodes() * dim, 0.0) {
    if (dim == 0) throw InvalidInput("Path: dimension must be positive");
}

Path Path::from_values(TimeGrid grid, std::size_t dim, std::vector<double> values) {
    if (dim == 0) throw InvalidInput("Path: dimension must be positive");
    if (values.size() != grid.nodes() * dim) throw InvalidInput("Path: value count does not match grid");
    for (std::size_t c = 0; c < dim; ++c)
        if (values[c] != 0.0) throw InvalidInput("Path: paths start at the origin");
    Path p;
    p.grid_ = grid;
    p.dim_ = dim;
    p.values_ = std::move(values);
    return p;
}

PathPoint::PathPoint(double s_, Path p) : s(s_), path(std::move(p)) {
    path.grid().index_of(s);  // rejects times outside the grid
}

Path clamp(const Path& p, double s) {
    const std::size_t cut = p.grid().index_of(s);
    Path out = p;
    for (std::size_t i = cut + 1; i < p.nodes(); ++i)
        for (std::size_t c = 0; c < p.dim(); ++c) out.at(i, c) = p.at(cut, c);
    return out;
}

double uniform_norm(const Path& p) {
    double m = 0.0;
    for (std::size_t i = 0; i < p.nodes(); ++i) {
        double s2 = 0.0;
        for (std::size_t c = 0; c < p.dim(); ++c) s2 += sqr(p.at(i, c));
        m = std::max(m, s2);
    }
    return std::sqrt(m);
}

double lambda_distance(const PathPoint& a, const PathPoint& b) {
    if (a.path.dim() != b.path.dim()) throw InvalidInput("lambda_distance: dimension mismatch");
    if (!(a.path.grid() == b.path.grid())) throw InvalidInput("lambda_distance: paths must share a grid");
    const Path ca = clamp(a.path, a.s);
    const Path cb = clamp(b.path, b.s);
    double m = 0.0;
    for (std::size_t i = 0; i < ca.nodes(); ++i) {
        double s2 = 0.0;
        for (std::size_t c = 0; c < ca.dim(); ++c) s2 += sqr(ca.at(i, c) - cb.at(i, c));
        m = std::max(m, s2);
    }
    return std::fabs(a.s - b.s) + std::sqrt(m);
}

Path concat(const Path& w, const Path& suffix, double s) {
    if (w.dim() != suffix.dim()) throw InvalidInput("concat: dimension mismatch");
    const std::size_t join = w.grid().index_of(s);
    const TimeGrid& sg = suffix.grid();
    if (std::fabs(sg.t0() - w.grid().node(join)) > 1e-9 || std::fabs(sg.horizon() - w.grid().horizon()) > 1e-9 ||
        sg.steps() != w.grid().last() - join)
        throw InvalidInput("concat: suffix grid does not align at the junction");
    Path out = w;
    for (std::size_t i = join; i < w.nodes(); ++i)
        for (std::size_t c = 0; c < w.dim(); ++c) out.at(i, c) = w.at(join, c) + suffix.at(i - join, c);
    return out;
}

double eval_shifted(const std::function<double(const PathSlice&)>& u, const Path& w, const Path& suffix,
                    double s) {
    return u(concat(w, suffix, s).full());
}

double hitting_time(const Path& p, double t, double eps, bool capped) {
    if (eps <= 0.0) throw InvalidInput("hitting_time: radius must be positive");
    const TimeGrid& g = p.grid();
    const std::size_t it = g.index_of(t);
    std::size_t cap_idx = g.last();
    if (capped) {
        const double cap_time = std::min(t + eps, g.horizon());
        const double rel = (cap_time - g.t0()) / g.dt();
        const auto down = static_cast<std::size_t>(std::floor(rel + 1e-9));
        cap_idx = std::min(down, g.last());
    }
    for (std::size_t i = it + 1; i <= cap_idx; ++i) {
        double s2 = 0.0;
        for (std::size_t c = 0; c < p.dim(); ++c) s2 += sqr(p.at(i, c) - p.at(it, c));
        if (std::sqrt(s2) >= eps) return g.node(i);
    }
    return g.node(cap_idx);
}

Path vertical_bump(const Path& p, double t, std::size_t c, double eps) {
    // Bumped paths may leave the zero-anchored canonical space (a bump at
    // the first node does); they are evaluation inputs only.
    const std::size_t it = p.grid().index_of(t);
    Path out = p;
    for (std::size_t i = it; i < p.nodes(); ++i) out.at(i, c) += eps;
    return out;
}

Path extend_to_grid(const Path& prefix, const TimeGrid& full) {
    const TimeGrid& pg = prefix.grid();
    if (pg == full) return prefix;
    if (std::fabs(pg.t0() - full.t0()) > 1e-12) throw InvalidInput("extend_to_grid: start times differ");
    if (pg.steps() > 0 && std::fabs(pg.dt() - full.dt()) > 1e-9 * full.dt())
        throw InvalidInput("extend_to_grid: node spacing differs from the solver grid");
    const std::size_t pn = pg.last();
    if (pn > full.last() || std::fabs(pg.horizon() - full.node(pn)) > 1e-9)
        throw InvalidInput("extend_to_grid: prefix does not align with the solver grid");
    Path out(full, prefix.dim());
    for (std::size_t i = 0; i <= pn; ++i)
        for (std::size_t c = 0; c < prefix.dim(); ++c) out.at(i, c) = prefix.at(i, c);
    for (std::size_t i = pn + 1; i < full.nodes(); ++i)
        for (std::size_t c = 0; c < prefix.dim(); ++c) out.at(i, c) = prefix.at(pn, c);
    return out;
}

}  // namespace ppde
