#include "weinstein/kernels.hpp"

namespace weinstein::kernels {
namespace {

double abs2_sum_scalar(const double* w, const cplx* f, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = f[i].real();
    const double im = f[i].imag();
    acc += w[i] * (re * re + im * im);
  }
  return acc;
}

cplx inner_scalar(const double* w, const cplx* f, const cplx* g, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double fr = f[i].real(), fi = f[i].imag();
    const double gr = g[i].real(), gi = g[i].imag();
    re += w[i] * (fr * gr + fi * gi);
    im += w[i] * (fi * gr - fr * gi);
  }
  return {re, im};
}

double sum_scalar(const double* w, const double* v, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * v[i];
  return acc;
}

void mul_real_scalar(cplx* f, const double* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) f[i] = cplx(f[i].real() * m[i], f[i].imag() * m[i]);
}

// Written out by hand: std::complex operator* carries the Annex G NaN recovery.
void mul_complex_scalar(cplx* f, const cplx* g, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = f[i].real(), ai = f[i].imag();
    const double br = g[i].real(), bi = g[i].imag();
    f[i] = cplx(ar * br - ai * bi, ai * br + ar * bi);
  }
}

void scale_scalar(cplx* f, cplx s, std::size_t n) {
  const double br = s.real(), bi = s.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = f[i].real(), ai = f[i].imag();
    f[i] = cplx(ar * br - ai * bi, ai * br + ar * bi);
  }
}

void matvec_scalar(const double* mdup, std::size_t n_out, std::size_t n_in, const cplx* in, cplx* out,
                   std::size_t rows) {
  for (std::size_t r = 0; r < rows; ++r) {
    const cplx* x = in + r * n_in;
    cplx* y = out + r * n_out;
    for (std::size_t k = 0; k < n_out; ++k) {
      const double* m = mdup + 2 * k * n_in;
      double re = 0.0;
      double im = 0.0;
      for (std::size_t l = 0; l < n_in; ++l) {
        re += m[2 * l] * x[l].real();
        im += m[2 * l] * x[l].imag();
      }
      y[k] = cplx(re, im);
    }
  }
}

constexpr KernelTable kScalar{abs2_sum_scalar, inner_scalar,       sum_scalar,   mul_real_scalar,
                              mul_complex_scalar, scale_scalar, matvec_scalar};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace weinstein::kernels
