#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference version and,
// on x86-64, an AVX2/FMA version; the active backend is picked once at start-up
// from CPUID and can be overridden (tests compare the two).

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace weinstein::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

std::string to_string(Backend b);

struct KernelTable {
  /// sum_i w[i] |f[i]|^2
  double (*weighted_abs2_sum)(const double* w, const cplx* f, std::size_t n);
  /// sum_i w[i] f[i] conj(g[i])
  cplx (*weighted_inner)(const double* w, const cplx* f, const cplx* g, std::size_t n);
  /// sum_i w[i] v[i]
  double (*weighted_sum)(const double* w, const double* v, std::size_t n);
  /// f[i] *= m[i]
  void (*mul_real)(cplx* f, const double* m, std::size_t n);
  /// f[i] *= g[i]
  void (*mul_complex)(cplx* f, const cplx* g, std::size_t n);
  /// f[i] *= s
  void (*scale)(cplx* f, cplx s, std::size_t n);
  /// out[r, k] = sum_l M[k, l] in[r, l] for r < rows. `mdup` is M with each
  /// entry stored twice (row stride 2 * n_in), so a complex lane pair can be
  /// multiplied without shuffles.
  void (*real_matvec_rows)(const double* mdup, std::size_t n_out, std::size_t n_in, const cplx* in,
                           cplx* out, std::size_t rows);
};

const KernelTable& scalar_table() noexcept;
/// Null when the AVX2 variant was not compiled in.
const KernelTable* avx2_table() noexcept;

bool backend_available(Backend b) noexcept;
/// Best backend supported by both the build and the running CPU.
Backend detect_backend() noexcept;
Backend active_backend() noexcept;
/// Throws std::invalid_argument if the backend is unavailable.
void set_backend(Backend b);
const KernelTable& active() noexcept;

/// RAII override of the active backend (tests).
class ScopedBackend {
 public:
  explicit ScopedBackend(Backend b) : previous_(active_backend()) { set_backend(b); }
  ~ScopedBackend() { set_backend(previous_); }
  ScopedBackend(const ScopedBackend&) = delete;
  ScopedBackend& operator=(const ScopedBackend&) = delete;

 private:
  Backend previous_;
};

// Reductions below split the input into fixed blocks and combine the block
// partials pairwise, so the summation order depends only on n.

double weighted_abs2_sum(std::span<const double> w, std::span<const cplx> f);
cplx weighted_inner(std::span<const double> w, std::span<const cplx> f, std::span<const cplx> g);
double weighted_sum(std::span<const double> w, std::span<const double> v);
void mul_real(std::span<cplx> f, std::span<const double> m);
void mul_complex(std::span<cplx> f, std::span<const cplx> g);
void scale(std::span<cplx> f, cplx s);

/// Pairwise sum of an array of partials.
double pairwise_sum(std::span<const double> v);

/// Dense real matrix (n_out x n_in) in the duplicated layout used by
/// real_matvec_rows.
class DupMatrix {
 public:
  DupMatrix() = default;
  DupMatrix(std::size_t n_out, std::size_t n_in, std::span<const double> row_major);

  std::size_t rows() const noexcept { return n_out_; }
  std::size_t cols() const noexcept { return n_in_; }
  double operator()(std::size_t k, std::size_t l) const noexcept { return dup_[2 * (k * n_in_ + l)]; }
  const double* data() const noexcept { return dup_.data(); }

  /// Applies the matrix to each of `rows` contiguous complex vectors.
  void apply_rows(const cplx* in, cplx* out, std::size_t rows) const;

 private:
  std::size_t n_out_ = 0;
  std::size_t n_in_ = 0;
  std::vector<double> dup_;
};

}  // namespace weinstein::kernels
