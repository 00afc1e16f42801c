#include "weinstein/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "weinstein/error.hpp"

namespace weinstein {

std::string to_string(TransformMethod m) {
  return m == TransformMethod::fast_separable ? "fast_separable" : "direct_quadrature";
}

GridPtr frequency_grid(const GridPtr& spatial) {
  if (!spatial) throw DomainError("frequency_grid needs a grid");
  std::vector<Axis> axes;
  for (const auto& a : spatial->euclid_axes()) {
    const double n = static_cast<double>(a.size());
    axes.push_back(Axis::euclidean(std::numbers::pi * n / (2.0 * a.max()), a.size()));
  }
  return std::make_shared<const Grid>(spatial->params(), std::move(axes), spatial->radial_axis());
}

namespace {

// Radial transform matrix from `from` to `to`: j_a(to_k from_l) * radial weight_l * scale.
kernels::DupMatrix radial_matrix(const BesselEvaluator& be, const Axis& to, const Axis& from,
                                 std::span<const double> from_weights, double scale) {
  std::vector<double> m(to.size() * from.size());
  for (std::size_t k = 0; k < to.size(); ++k) {
    for (std::size_t l = 0; l < from.size(); ++l) m[k * from.size() + l] = be(to[k] * from[l]) * from_weights[l] * scale;
  }
  return kernels::DupMatrix(to.size(), from.size(), m);
}

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// e^{i pi m / q} for an integer numerator already reduced mod 2q
cplx unit_phase(long m, long q) {
  const double t = std::numbers::pi * static_cast<double>(m) / static_cast<double>(q);
  return {std::cos(t), std::sin(t)};
}

long mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

// Centered multi-dimensional DFT over the Euclidean axes:
//   G_k = sum_j f_j exp(-2 pi i (j - c)(k - c) / N),  c = (N - 1)/2,
// realized as pre-phase, FFTW, post-phase with exact integer phase reduction.
struct TransformPlan::Fft {
  fftw_plan plan = nullptr;
  std::vector<cplx> pre;   // per Euclidean multi-index
  std::vector<cplx> post;  // per Euclidean multi-index
  std::size_t rows = 0;
  std::size_t row_len = 0;

  Fft(const Grid& g) : rows(g.euclid_size()), row_len(g.radial_size()) {
    const std::size_t d = g.euclid_axes().size();
    std::vector<std::vector<cplx>> pre_axis(d), post_axis(d);
    std::vector<int> dims(d);
    for (std::size_t a = 0; a < d; ++a) {
      const long n = static_cast<long>(g.euclid_axis(a).size());
      dims[a] = static_cast<int>(n);
      pre_axis[a].resize(n);
      post_axis[a].resize(n);
      for (long j = 0; j < n; ++j) {
        // exp(2 pi i c j / N) = exp(i pi (N-1) j / N)
        pre_axis[a][j] = unit_phase(mod((n - 1) * j, 2 * n), n);
        // exp(2 pi i c (k - c) / N) = exp(i pi (N-1)(2k-N+1) / (2N))
        post_axis[a][j] = unit_phase(mod((n - 1) * (2 * j - n + 1), 4 * n), 2 * n);
      }
    }
    pre.assign(rows, 1.0);
    post.assign(rows, 1.0);
    for (std::size_t e = 0; e < rows; ++e) {
      std::size_t rest = e;
      for (std::size_t a = d; a-- > 0;) {
        const std::size_t n = g.euclid_axis(a).size();
        const std::size_t j = rest % n;
        rest /= n;
        pre[e] *= pre_axis[a][j];
        post[e] *= post_axis[a][j];
      }
    }
    std::vector<cplx> scratch(rows * row_len);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_many_dft(static_cast<int>(d), dims.data(), static_cast<int>(row_len), buf, nullptr,
                              static_cast<int>(row_len), 1, buf, nullptr, static_cast<int>(row_len), 1, FFTW_FORWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw NumericGuardError("FFTW could not create a plan");
  }

  ~Fft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  void execute(std::vector<cplx>& data) const {
    for (std::size_t e = 0; e < rows; ++e) kernels::scale(std::span(data).subspan(e * row_len, row_len), pre[e]);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
    for (std::size_t e = 0; e < rows; ++e) kernels::scale(std::span(data).subspan(e * row_len, row_len), post[e]);
  }
};

TransformPlan::TransformPlan(GridPtr grid_in, Normalization n, TransformMethod method)
    : grid_in_(std::move(grid_in)),
      grid_out_(frequency_grid(grid_in_)),
      normalization_(n),
      method_(method),
      w_in_(measure_weights(grid_in_, n)),
      w_out_(measure_weights(grid_out_, n)),
      bessel_(grid_in_->params().alpha()) {
  const double c = w_in_.normalization_constant();
  forward_radial_ = radial_matrix(bessel_, grid_out_->radial_axis(), grid_in_->radial_axis(), w_in_.radial_weights(),
                                  w_in_.euclid_cell() / c);
  backward_radial_ = radial_matrix(bessel_, grid_in_->radial_axis(), grid_out_->radial_axis(),
                                   w_out_.radial_weights(), w_out_.euclid_cell() / c);
  fft_ = std::make_unique<Fft>(*grid_in_);
}

TransformPlan::~TransformPlan() = default;

std::vector<cplx> TransformPlan::apply(const Field& f, const kernels::DupMatrix& radial) const {
  std::vector<cplx> out(f.size());
  radial.apply_rows(f.values().data(), out.data(), fft_->rows);
  fft_->execute(out);
  return out;
}

Field TransformPlan::apply_direct(const Field& f, bool from_output) const {
  return from_output ? direct_quadrature(w_out_, grid_in_, f) : direct_quadrature(w_in_, grid_out_, f);
}

Field TransformPlan::forward(const Field& f) const {
  require_same_grid(f.grid(), *grid_in_, "forward transform");
  if (method_ == TransformMethod::direct_quadrature) return apply_direct(f, false);
  return Field(grid_out_, apply(f, forward_radial_));
}

Field TransformPlan::forward_from_output(const Field& F) const {
  require_same_grid(F.grid(), *grid_out_, "inverse transform");
  if (method_ == TransformMethod::direct_quadrature) return apply_direct(F, true);
  return Field(grid_in_, apply(F, backward_radial_));
}

Field TransformPlan::inverse(const Field& F) const { return reflect(forward_from_output(F)); }

Field forward(const TransformPlan& plan, const Field& f) { return plan.forward(f); }
Field inverse(const TransformPlan& plan, const Field& F) { return plan.inverse(F); }

Field reflect(const Field& f) {
  const Grid& g = f.grid();
  std::vector<cplx> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[g.reflect_index(i)] = f[i];
  return Field(f.grid_ptr(), std::move(v));
}

Field direct_quadrature(const WeightField& w_in, const GridPtr& grid_out, const Field& f, std::size_t limit) {
  const Grid& gi = w_in.grid();
  require_same_grid(f.grid(), gi, "direct_quadrature");
  if (!grid_out) throw DomainError("direct_quadrature needs an output grid");
  const Grid& go = *grid_out;
  if (!(gi.params() == go.params())) throw GridMismatch("direct_quadrature: grids carry different parameters");
  if (gi.size() > limit / std::max<std::size_t>(go.size(), 1)) {
    throw NumericGuardError("direct quadrature size guard exceeded: " + std::to_string(gi.size()) + " x " +
                            std::to_string(go.size()) + " pairs");
  }
  const std::size_t d = gi.euclid_axes().size();
  const BesselEvaluator be(gi.params().alpha());

  const std::size_t nri = gi.radial_size(), nro = go.radial_size();
  std::vector<double> jtab(nro * nri);
  for (std::size_t k = 0; k < nro; ++k) {
    for (std::size_t l = 0; l < nri; ++l) jtab[k * nri + l] = be(go.radial_axis()[k] * gi.radial_axis()[l]);
  }
  std::vector<cplx> g(f.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = w_in[i] * f[i];

  const std::size_t ei = gi.euclid_size(), eo = go.euclid_size();
  std::vector<double> xi(d + 1), xo(d + 1);
  std::vector<cplx> phase(ei);
  std::vector<cplx> out(go.size());
  for (std::size_t a = 0; a < eo; ++a) {
    go.point(a * nro, xo);
    for (std::size_t b = 0; b < ei; ++b) {
      gi.point(b * nri, xi);
      double t = 0.0;
      for (std::size_t q = 0; q < d; ++q) t += xo[q] * xi[q];
      phase[b] = std::polar(1.0, -t);
    }
    for (std::size_t k = 0; k < nro; ++k) {
      const double* row = jtab.data() + k * nri;
      cplx acc = 0.0;
      for (std::size_t b = 0; b < ei; ++b) {
        const cplx* gb = g.data() + b * nri;
        cplx s = 0.0;
        for (std::size_t l = 0; l < nri; ++l) s += row[l] * gb[l];
        acc += phase[b] * s;
      }
      out[a * nro + k] = acc;
    }
  }
  return Field(grid_out, std::move(out));
}

}  // namespace weinstein
