#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppde {

// Error taxonomy: rejected inputs, exceeded cost budgets, and numerical
// failures (NaN propagation, singular systems in strict mode) are kept
// apart so the CLI can map them to distinct exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

// Global worker count for parallel_for (1 = serial). All parallel sections
// write disjoint slots and all reductions are sequential, so results are
// bit-identical for any setting.
std::size_t thread_count();
void set_thread_count(std::size_t n);

// Static contiguous partition of [0, n) over the active workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& chunk);

// Small dense row-major matrix used for coefficient outputs and jets.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    double* data() { return a.data(); }
    const double* data() const { return a.data(); }
};

inline double sqr(double x) { return x * x; }

std::string format_double(double x);  // shortest round-trip, used by reports

}  // namespace ppde
