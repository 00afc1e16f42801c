#include <algorithm>
#include <atomic>
#include <stdexcept>

#include "weinstein/kernels.hpp"

namespace weinstein::kernels {

#if defined(WEINSTEIN_HAS_AVX2)
const KernelTable* avx2_table_impl() noexcept;
#endif

namespace {

constexpr std::size_t kBlock = 1024;

bool cpu_has_avx2() noexcept {
#if defined(WEINSTEIN_HAS_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{detect_backend()};
  return slot;
}

template <class Fn>
double blocked_sum(std::size_t n, Fn&& block) {
  if (n <= kBlock) return block(0, n);
  std::vector<double> partial;
  partial.reserve(n / kBlock + 1);
  for (std::size_t i = 0; i < n; i += kBlock) partial.push_back(block(i, std::min(kBlock, n - i)));
  return pairwise_sum(partial);
}

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernel operands differ in length");
}

}  // namespace

std::string to_string(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

const KernelTable* avx2_table() noexcept {
#if defined(WEINSTEIN_HAS_AVX2)
  return avx2_table_impl();
#else
  return nullptr;
#endif
}

bool backend_available(Backend b) noexcept {
  if (b == Backend::scalar) return true;
  return avx2_table() != nullptr && cpu_has_avx2();
}

Backend detect_backend() noexcept {
  return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

Backend active_backend() noexcept { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_available(b)) throw std::invalid_argument("kernel backend unavailable: " + to_string(b));
  backend_slot().store(b, std::memory_order_relaxed);
}

const KernelTable& active() noexcept {
  if (active_backend() == Backend::avx2) return *avx2_table();
  return scalar_table();
}

double pairwise_sum(std::span<const double> v) {
  if (v.empty()) return 0.0;
  if (v.size() == 1) return v[0];
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double weighted_abs2_sum(std::span<const double> w, std::span<const cplx> f) {
  require_same_size(w.size(), f.size());
  const auto& t = active();
  return blocked_sum(f.size(), [&](std::size_t i, std::size_t n) {
    return t.weighted_abs2_sum(w.data() + i, f.data() + i, n);
  });
}

cplx weighted_inner(std::span<const double> w, std::span<const cplx> f, std::span<const cplx> g) {
  require_same_size(w.size(), f.size());
  require_same_size(f.size(), g.size());
  const auto& t = active();
  const std::size_t n = f.size();
  if (n <= kBlock) return t.weighted_inner(w.data(), f.data(), g.data(), n);
  std::vector<double> re;
  std::vector<double> im;
  for (std::size_t i = 0; i < n; i += kBlock) {
    const cplx s = t.weighted_inner(w.data() + i, f.data() + i, g.data() + i, std::min(kBlock, n - i));
    re.push_back(s.real());
    im.push_back(s.imag());
  }
  return {pairwise_sum(re), pairwise_sum(im)};
}

double weighted_sum(std::span<const double> w, std::span<const double> v) {
  require_same_size(w.size(), v.size());
  const auto& t = active();
  return blocked_sum(v.size(), [&](std::size_t i, std::size_t n) {
    return t.weighted_sum(w.data() + i, v.data() + i, n);
  });
}

void mul_real(std::span<cplx> f, std::span<const double> m) {
  require_same_size(f.size(), m.size());
  active().mul_real(f.data(), m.data(), f.size());
}

void mul_complex(std::span<cplx> f, std::span<const cplx> g) {
  require_same_size(f.size(), g.size());
  active().mul_complex(f.data(), g.data(), f.size());
}

void scale(std::span<cplx> f, cplx s) { active().scale(f.data(), s, f.size()); }

DupMatrix::DupMatrix(std::size_t n_out, std::size_t n_in, std::span<const double> row_major)
    : n_out_(n_out), n_in_(n_in), dup_(2 * n_out * n_in) {
  require_same_size(row_major.size(), n_out * n_in);
  for (std::size_t i = 0; i < row_major.size(); ++i) {
    dup_[2 * i] = row_major[i];
    dup_[2 * i + 1] = row_major[i];
  }
}

void DupMatrix::apply_rows(const cplx* in, cplx* out, std::size_t rows) const {
  active().real_matvec_rows(dup_.data(), n_out_, n_in_, in, out, rows);
}

}  // namespace weinstein::kernels
