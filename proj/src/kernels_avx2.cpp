// Compiled with -mavx2 -mfma. Only reached after the dispatcher has confirmed
// CPU support.

#include <immintrin.h>

#include "weinstein/kernels.hpp"

namespace weinstein::kernels {
namespace {

// [w0, w1] -> [w0, w0, w1, w1]
inline __m256d dup_pair(const double* w) {
  const __m128d w2 = _mm_loadu_pd(w);
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(w2), 0b01010000);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double abs2_sum_avx2(const double* w, const cplx* f, std::size_t n) {
  const double* fp = reinterpret_cast<const double*>(f);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(fp + 2 * i);
    const __m256d b = _mm256_loadu_pd(fp + 2 * i + 4);
    acc0 = _mm256_fmadd_pd(_mm256_mul_pd(a, a), dup_pair(w + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_mul_pd(b, b), dup_pair(w + i + 2), acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double re = f[i].real(), im = f[i].imag();
    acc += w[i] * (re * re + im * im);
  }
  return acc;
}

cplx inner_avx2(const double* w, const cplx* f, const cplx* g, std::size_t n) {
  const double* fp = reinterpret_cast<const double*>(f);
  const double* gp = reinterpret_cast<const double*>(g);
  __m256d acc_re = _mm256_setzero_pd();  // lanes: fr*gr, fi*gi
  __m256d acc_im = _mm256_setzero_pd();  // lanes: fr*gi, fi*gr
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d a = _mm256_loadu_pd(fp + 2 * i);
    const __m256d b = _mm256_loadu_pd(gp + 2 * i);
    const __m256d ws = dup_pair(w + i);
    const __m256d bs = _mm256_permute_pd(b, 0b0101);
    acc_re = _mm256_fmadd_pd(_mm256_mul_pd(a, b), ws, acc_re);
    acc_im = _mm256_fmadd_pd(_mm256_mul_pd(a, bs), ws, acc_im);
  }
  alignas(32) double r[4];
  alignas(32) double m[4];
  _mm256_store_pd(r, acc_re);
  _mm256_store_pd(m, acc_im);
  double re = (r[0] + r[1]) + (r[2] + r[3]);
  double im = (m[1] - m[0]) + (m[3] - m[2]);
  for (; i < n; ++i) {
    const double fr = f[i].real(), fi = f[i].imag();
    const double gr = g[i].real(), gi = g[i].imag();
    re += w[i] * (fr * gr + fi * gi);
    im += w[i] * (fi * gr - fr * gi);
  }
  return {re, im};
}

double sum_avx2(const double* w, const double* v, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(v + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i + 4), _mm256_loadu_pd(v + i + 4), acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += w[i] * v[i];
  return acc;
}

void mul_real_avx2(cplx* f, const double* m, std::size_t n) {
  double* fp = reinterpret_cast<double*>(f);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d a = _mm256_loadu_pd(fp + 2 * i);
    _mm256_storeu_pd(fp + 2 * i, _mm256_mul_pd(a, dup_pair(m + i)));
  }
  for (; i < n; ++i) f[i] = cplx(f[i].real() * m[i], f[i].imag() * m[i]);
}

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0b1111);
  const __m256d a_sw = _mm256_permute_pd(a, 0b0101);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

void mul_complex_avx2(cplx* f, const cplx* g, std::size_t n) {
  double* fp = reinterpret_cast<double*>(f);
  const double* gp = reinterpret_cast<const double*>(g);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d a = _mm256_loadu_pd(fp + 2 * i);
    const __m256d b = _mm256_loadu_pd(gp + 2 * i);
    _mm256_storeu_pd(fp + 2 * i, cmul(a, b));
  }
  for (; i < n; ++i) {
    const double ar = f[i].real(), ai = f[i].imag();
    const double br = g[i].real(), bi = g[i].imag();
    f[i] = cplx(ar * br - ai * bi, ai * br + ar * bi);
  }
}

void scale_avx2(cplx* f, cplx s, std::size_t n) {
  double* fp = reinterpret_cast<double*>(f);
  const __m256d b = _mm256_setr_pd(s.real(), s.imag(), s.real(), s.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(fp + 2 * i, cmul(_mm256_loadu_pd(fp + 2 * i), b));
  }
  for (; i < n; ++i) {
    const double ar = f[i].real(), ai = f[i].imag();
    f[i] = cplx(ar * s.real() - ai * s.imag(), ai * s.real() + ar * s.imag());
  }
}

void matvec_avx2(const double* mdup, std::size_t n_out, std::size_t n_in, const cplx* in, cplx* out,
                 std::size_t rows) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double* x = reinterpret_cast<const double*>(in + r * n_in);
    cplx* y = out + r * n_out;
    for (std::size_t k = 0; k < n_out; ++k) {
      const double* m = mdup + 2 * k * n_in;
      __m256d acc0 = _mm256_setzero_pd();
      __m256d acc1 = _mm256_setzero_pd();
      std::size_t l = 0;
      for (; l + 4 <= n_in; l += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(m + 2 * l), _mm256_loadu_pd(x + 2 * l), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(m + 2 * l + 4), _mm256_loadu_pd(x + 2 * l + 4), acc1);
      }
      alignas(32) double a[4];
      _mm256_store_pd(a, _mm256_add_pd(acc0, acc1));
      double re = a[0] + a[2];
      double im = a[1] + a[3];
      for (; l < n_in; ++l) {
        re += m[2 * l] * x[2 * l];
        im += m[2 * l] * x[2 * l + 1];
      }
      y[k] = cplx(re, im);
    }
  }
}

constexpr KernelTable kAvx2{abs2_sum_avx2,    inner_avx2, sum_avx2,   mul_real_avx2,
                            mul_complex_avx2, scale_avx2, matvec_avx2};

}  // namespace

const KernelTable* avx2_table_impl() noexcept { return &kAvx2; }

}  // namespace weinstein::kernels
