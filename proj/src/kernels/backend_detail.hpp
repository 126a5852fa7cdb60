#pragma once

#include <cstddef>

#include "ppde/kernels/kernels.hpp"

// Internal backend entry points. The scalar set is the reference; the avx2
// set must match it bit-exactly for philox/gaussians/max_abs (asserted by
// tests/test_kernels.cpp).

namespace ppde::kernels::detail {

void philox_batch_scalar(const Counter* ctrs, std::size_t n, Key key, Block* out);
void gaussians_scalar(const Counter* ctrs, std::size_t n, Key key, double* out);
double max_abs_scalar(const double* v, std::size_t n);
double dot_scalar(const double* a, const double* b, std::size_t n);
double sum_scalar(const double* v, std::size_t n);

bool cpu_has_avx2();
void philox_batch_avx2(const Counter* ctrs, std::size_t n, Key key, Block* out);
void gaussians_avx2(const Counter* ctrs, std::size_t n, Key key, double* out);
double max_abs_avx2(const double* v, std::size_t n);
double dot_avx2(const double* a, const double* b, std::size_t n);
double sum_avx2(const double* v, std::size_t n);

}  // namespace ppde::kernels::detail
