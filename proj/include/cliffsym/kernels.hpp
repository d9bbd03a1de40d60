#pragma once

#include <cstddef>

namespace cliffsym::kernels {

// Dense geometric product on R_{0,n}: out = a*b, arrays of length 2^n.
// All variants perform the same floating point operations in the same
// order, so their results are bit-identical.
void gp_scalar(int n, const double* a, const double* b, double* out);
void gp_avx2(int n, const double* a, const double* b, double* out);

bool avx2_available();

enum class Backend { Scalar, Avx2 };
Backend active_backend();
// Forces a backend (Avx2 falls back to Scalar when unsupported). For tests and benchmarks.
void set_backend(Backend b);
const char* backend_name(Backend b);

void gp(int n, const double* a, const double* b, double* out);

// sign_table(n)[m * 2^n + j] = sign of e_{j^m} e_m, as +-1.0
const double* sign_table(int n);

}  // namespace cliffsym::kernels
