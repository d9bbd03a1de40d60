#include "cliffsym/kernels.hpp"

#include "cliffsym/multivector.hpp"

#include <array>
#include <atomic>
#include <mutex>
#include <vector>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define CLIFFSYM_X86 1
#endif

namespace cliffsym::kernels {

namespace {

std::array<std::vector<double>, kMaxDim + 1> g_tables;
std::once_flag g_tables_once;

void build_tables() {
    for (int n = 0; n <= kMaxDim; ++n) {
        const unsigned N = 1u << n;
        auto& t = g_tables[n];
        t.resize(std::size_t{N} * N);
        for (unsigned m = 0; m < N; ++m)
            for (unsigned j = 0; j < N; ++j) t[std::size_t{m} * N + j] = blade_sign(j ^ m, m);
    }
}

Backend detect() { return avx2_available() ? Backend::Avx2 : Backend::Scalar; }

std::atomic<Backend> g_backend{detect()};

}  // namespace

const double* sign_table(int n) {
    std::call_once(g_tables_once, build_tables);
    return g_tables[n].data();
}

void gp_scalar(int n, const double* a, const double* b, double* out) {
    const unsigned N = 1u << n;
    const double* sg = sign_table(n);
    for (unsigned j = 0; j < N; ++j) out[j] = 0.0;
    for (unsigned m = 0; m < N; ++m) {
        const double bm = b[m];
        if (bm == 0.0) continue;
        const double* s = sg + std::size_t{m} * N;
        for (unsigned j = 0; j < N; ++j) out[j] += (a[j ^ m] * bm) * s[j];
    }
}

#ifdef CLIFFSYM_X86

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

__attribute__((target("avx2"))) void gp_avx2(int n, const double* a, const double* b, double* out) {
    if (n < 2) {
        gp_scalar(n, a, b, out);
        return;
    }
    const unsigned N = 1u << n;
    const unsigned blocks = N >> 2;
    const double* sg = sign_table(n);
    for (unsigned J = 0; J < blocks; ++J) _mm256_storeu_pd(out + 4 * J, _mm256_setzero_pd());
    for (unsigned m = 0; m < N; ++m) {
        const double bm = b[m];
        if (bm == 0.0) continue;
        const __m256d vb = _mm256_set1_pd(bm);
        const double* s = sg + std::size_t{m} * N;
        const unsigned hi = m >> 2;
        const unsigned lo = m & 3u;
        for (unsigned J = 0; J < blocks; ++J) {
            __m256d va = _mm256_loadu_pd(a + 4 * (J ^ hi));
            switch (lo) {
                case 1: va = _mm256_permute_pd(va, 0x5); break;
                case 2: va = _mm256_permute4x64_pd(va, 0x4E); break;
                case 3: va = _mm256_permute4x64_pd(va, 0x1B); break;
                default: break;
            }
            const __m256d t = _mm256_mul_pd(_mm256_mul_pd(va, vb), _mm256_loadu_pd(s + 4 * J));
            _mm256_storeu_pd(out + 4 * J, _mm256_add_pd(_mm256_loadu_pd(out + 4 * J), t));
        }
    }
}

#else

bool avx2_available() { return false; }

void gp_avx2(int n, const double* a, const double* b, double* out) { gp_scalar(n, a, b, out); }

#endif

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (b == Backend::Avx2 && !avx2_available()) b = Backend::Scalar;
    g_backend.store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

void gp(int n, const double* a, const double* b, double* out) {
    if (active_backend() == Backend::Avx2)
        gp_avx2(n, a, b, out);
    else
        gp_scalar(n, a, b, out);
}

}  // namespace cliffsym::kernels
