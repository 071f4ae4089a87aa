#include "rmt/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rmt {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void check_positive_scale(double s, const char* where) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::invalid_argument(std::string(where) + ": s must be finite and > 0");
  }
}

void check_size(int N, const char* where) {
  if (N < 1) {
    throw std::invalid_argument(std::string(where) + ": N must be >= 1");
  }
}

}  // namespace

std::string_view to_string(Ensemble e) {
  switch (e) {
    case Ensemble::gue:
      return "gue";
    case Ensemble::hse:
      return "hse";
  }
  return "unknown";
}

Ensemble ensemble_from_string(std::string_view name) {
  if (name == "gue") {
    return Ensemble::gue;
  }
  if (name == "hse") {
    return Ensemble::hse;
  }
  throw std::invalid_argument("unknown ensemble '" + std::string(name) + "' (expected gue or hse)");
}

RngStream RngStream::substream(std::uint64_t k) const {
  return {seed, mix64(stream_id * kGoldenGamma + mix64(k + 0x632be59bd9b4e019ULL))};
}

RandomEngine::RandomEngine(const RngStream& stream)
    : key_(mix64(mix64(stream.seed) ^ (stream.stream_id + kGoldenGamma))) {}

std::uint64_t RandomEngine::next_u64() { return mix64(key_ + (++counter_) * kGoldenGamma); }

double RandomEngine::uniform() {
  // 53 random bits mapped to (0, 1].
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double RandomEngine::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

HermitianMatrix::HermitianMatrix(int n) : n_(n) {
  check_size(n, "HermitianMatrix");
  diag_.assign(static_cast<std::size_t>(n), 0.0);
  upper_.assign(static_cast<std::size_t>(n) * (n - 1) / 2, Complex(0.0, 0.0));
}

std::size_t HermitianMatrix::packed_index(int i, int j) const {
  if (i < 0 || j >= n_ || i >= j) {
    throw std::out_of_range("HermitianMatrix: upper index requires 0 <= i < j < n");
  }
  // Rows 0..i-1 hold (n-1) + (n-2) + ... + (n-i) entries.
  const std::size_t row_start = static_cast<std::size_t>(i) * (2 * n_ - i - 1) / 2;
  return row_start + static_cast<std::size_t>(j - i - 1);
}

Complex HermitianMatrix::at(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) {
    throw std::out_of_range("HermitianMatrix: index out of range");
  }
  if (i == j) {
    return {diag_[i], 0.0};
  }
  return i < j ? upper_[packed_index(i, j)] : std::conj(upper_[packed_index(j, i)]);
}

double HermitianMatrix::trace() const {
  double t = 0.0;
  for (double d : diag_) {
    t += d;
  }
  return t;
}

double HermitianMatrix::hs_norm_sq() const {
  double diag = 0.0;
  for (double d : diag_) {
    diag += d * d;
  }
  double off = 0.0;
  for (const Complex& z : upper_) {
    off += std::norm(z);
  }
  return diag + 2.0 * off;
}

void HermitianMatrix::scale(double factor) {
  for (double& d : diag_) {
    d *= factor;
  }
  for (Complex& z : upper_) {
    z *= factor;
  }
}

linalg::DenseMatrix<Complex> HermitianMatrix::to_dense() const {
  linalg::DenseMatrix<Complex> a(n_);
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < n_; ++i) {
      a(i, j) = at(i, j);
    }
  }
  return a;
}

HermitianMatrix HermitianMatrix::from_dense(const linalg::DenseMatrix<Complex>& a, double tolerance) {
  const int n = a.size();
  HermitianMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (std::abs(a(i, i).imag()) > tolerance) {
      throw std::invalid_argument("HermitianMatrix::from_dense: diagonal must be real");
    }
    m.diag_[i] = a(i, i).real();
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tolerance) {
        throw std::invalid_argument("HermitianMatrix::from_dense: matrix is not Hermitian");
      }
      m.set_upper(i, j, a(i, j));
    }
  }
  return m;
}

HermitianMatrix gue_sample(int N, double s, RandomEngine& rng) {
  check_size(N, "gue_sample");
  check_positive_scale(s, "gue_sample");
  HermitianMatrix m(N);
  const double sd_diag = std::sqrt(s);
  const double sd_off = std::sqrt(0.5 * s);
  for (int i = 0; i < N; ++i) {
    m.set_diagonal(i, sd_diag * rng.normal());
  }
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      const double re = sd_off * rng.normal();
      const double im = sd_off * rng.normal();
      m.set_upper(i, j, {re, im});
    }
  }
  return m;
}

HermitianMatrix gue_sample(int N, double s, const RngStream& stream) {
  RandomEngine rng(stream);
  return gue_sample(N, s, rng);
}

HermitianMatrix hse_sample(int N, double s, RandomEngine& rng) {
  check_size(N, "hse_sample");
  check_positive_scale(s, "hse_sample");
  HermitianMatrix m = gue_sample(N, 1.0, rng);
  const double norm_sq = m.hs_norm_sq();
  if (!(norm_sq > 1e-300)) {
    throw std::runtime_error("hse_sample: degenerate GUE draw with vanishing HS norm");
  }
  m.scale(std::sqrt(s) * N / std::sqrt(norm_sq));
  return m;
}

HermitianMatrix hse_sample(int N, double s, const RngStream& stream) {
  RandomEngine rng(stream);
  return hse_sample(N, s, rng);
}

HermitianMatrix sample(Ensemble ensemble, int N, double s, RandomEngine& rng) {
  return ensemble == Ensemble::gue ? gue_sample(N, s, rng) : hse_sample(N, s, rng);
}

Spectrum eigenvalues(const HermitianMatrix& m) {
  Spectrum spectrum{linalg::hermitian_eigenvalues(m.to_dense())};
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double v : spectrum.values) {
    sum += v;
    sum_sq += v * v;
  }
  const double norm_sq = m.hs_norm_sq();
  const double scale = std::max(1.0, norm_sq);
  // The trace is compared against sqrt(n tr A^2), its natural magnitude bound.
  const double trace_scale = std::max(1.0, std::sqrt(m.size() * norm_sq));
  if (!std::isfinite(sum_sq) || std::abs(sum - m.trace()) > 1e-9 * trace_scale ||
      std::abs(sum_sq - norm_sq) > 1e-9 * scale) {
    throw std::runtime_error("eigenvalues: trace or HS-norm invariant violated");
  }
  return spectrum;
}

void HistogramGrid::validate() const {
  if (bins < 1) {
    throw std::invalid_argument("HistogramGrid: bins must be >= 1");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
    throw std::invalid_argument("HistogramGrid: need finite lo < hi");
  }
}

int HistogramGrid::bin_of(double x) const {
  if (!(x >= lo) || x > hi) {
    return -1;
  }
  const int b = static_cast<int>(std::floor((x - lo) / width()));
  return std::clamp(b, 0, bins - 1);
}

CorrelationEstimate CorrelationEstimate::density(Ensemble ensemble, int N, double s,
                                                 HistogramGrid grid) {
  check_size(N, "CorrelationEstimate::density");
  check_positive_scale(s, "CorrelationEstimate::density");
  grid.validate();
  CorrelationEstimate e;
  e.order_ = 1;
  e.ensemble_ = ensemble;
  e.N_ = N;
  e.s_ = s;
  e.grid_ = grid;
  e.counts_.assign(static_cast<std::size_t>(grid.bins), 0);
  return e;
}

CorrelationEstimate CorrelationEstimate::pair(Ensemble ensemble, int N, double s, double u,
                                              double window, HistogramGrid grid) {
  check_size(N, "CorrelationEstimate::pair");
  check_positive_scale(s, "CorrelationEstimate::pair");
  grid.validate();
  const double w = wigner_density(u);
  if (!(w > 0.0)) {
    throw std::domain_error("CorrelationEstimate::pair: u must lie in the bulk (-2, 2)");
  }
  if (!(window > 0.0) || !std::isfinite(window)) {
    throw std::invalid_argument("CorrelationEstimate::pair: window must be > 0");
  }
  if (grid.lo < -window || grid.hi > window) {
    throw std::invalid_argument("CorrelationEstimate::pair: tau grid must lie inside [-A, A]");
  }
  CorrelationEstimate e;
  e.order_ = 2;
  e.ensemble_ = ensemble;
  e.N_ = N;
  e.s_ = s;
  e.bulk_point_ = u;
  e.window_ = window;
  e.local_density_ = N * w;
  e.grid_ = grid;
  e.counts_.assign(static_cast<std::size_t>(grid.bins), 0);
  return e;
}

double CorrelationEstimate::normalization(int bin) const {
  if (samples_ == 0) {
    return 0.0;
  }
  const double samples = static_cast<double>(samples_);
  if (order_ == 1) {
    return 1.0 / (samples * N_ * grid_.width());
  }
  // int_a^b (2A - 2|tau|) dtau, split at 0 when the bin straddles it.
  auto primitive = [&](double t) { return 2.0 * window_ * t - t * std::abs(t); };
  const double a = grid_.edge(bin);
  const double b = grid_.edge(bin + 1);
  const double measure = primitive(b) - primitive(a);
  return measure > 0.0 ? 1.0 / (samples * measure) : 0.0;
}

double CorrelationEstimate::interpolate(double x) const {
  if (!(x >= grid_.lo) || x > grid_.hi) {
    return 0.0;
  }
  const double pos = (x - grid_.lo) / grid_.width() - 0.5;
  if (pos <= 0.0) {
    return value(0);
  }
  if (pos >= grid_.bins - 1) {
    return value(grid_.bins - 1);
  }
  const int b = static_cast<int>(std::floor(pos));
  const double frac = pos - b;
  return (1.0 - frac) * value(b) + frac * value(b + 1);
}

double CorrelationEstimate::step_value(double x) const {
  if (!(x >= grid_.lo) || x > grid_.hi) {
    return 0.0;
  }
  const double pos = (x - grid_.lo) / grid_.width();
  const int b = std::clamp(static_cast<int>(std::floor(pos)), 0, grid_.bins - 1);
  if (b > 0 && pos == b) {
    return 0.5 * (value(b - 1) + value(b));
  }
  return value(b);
}

double CorrelationEstimate::total_mass() const {
  double mass = 0.0;
  for (int b = 0; b < grid_.bins; ++b) {
    mass += value(b) * grid_.width();
  }
  return mass;
}

void CorrelationEstimate::tally(std::span<const double> eigenvalues) {
  if (static_cast<int>(eigenvalues.size()) != N_) {
    throw std::invalid_argument("CorrelationEstimate::tally: expected N eigenvalues");
  }
  if (order_ == 1) {
    tally_density(eigenvalues);
  } else {
    tally_pairs(eigenvalues);
  }
  ++samples_;
}

void CorrelationEstimate::tally_density(std::span<const double> eigenvalues) {
  const double unit = 1.0 / std::sqrt(s_ * N_);
  for (double lambda : eigenvalues) {
    const int b = grid_.bin_of(lambda * unit);
    if (b < 0) {
      ++outside_;
    } else {
      ++counts_[b];
    }
  }
}

void CorrelationEstimate::tally_pairs(std::span<const double> eigenvalues) {
  const double unit = 1.0 / std::sqrt(s_ * N_);
  const double u = *bulk_point_;
  std::vector<double> xi;
  for (double lambda : eigenvalues) {
    const double t = (lambda * unit - u) * local_density_;
    if (std::abs(t) <= window_) {
      xi.push_back(t);
    }
  }
  for (std::size_t i = 0; i < xi.size(); ++i) {
    for (std::size_t j = 0; j < xi.size(); ++j) {
      if (i == j) {
        continue;
      }
      const double tau = xi[j] - xi[i];
      if (std::abs(xi[i]) > window_ - std::abs(tau)) {
        continue;
      }
      const int b = grid_.bin_of(tau);
      if (b < 0) {
        ++outside_;
      } else {
        ++counts_[b];
      }
    }
  }
}

bool CorrelationEstimate::same_layout(const CorrelationEstimate& other) const {
  return order_ == other.order_ && ensemble_ == other.ensemble_ && N_ == other.N_ &&
         s_ == other.s_ && bulk_point_ == other.bulk_point_ && window_ == other.window_ &&
         grid_ == other.grid_;
}

CorrelationEstimate merge_estimates(const CorrelationEstimate& a, const CorrelationEstimate& b) {
  if (!a.same_layout(b)) {
    throw std::invalid_argument("merge_estimates: estimates have different metadata");
  }
  CorrelationEstimate out = a;
  for (std::size_t i = 0; i < out.counts_.size(); ++i) {
    out.counts_[i] += b.counts_[i];
  }
  out.samples_ += b.samples_;
  out.outside_ += b.outside_;
  return out;
}

namespace {

CorrelationEstimate run_range(CorrelationEstimate estimate, SampleRange range, const RngStream& rng) {
  for (std::uint64_t k = 0; k < range.count; ++k) {
    RandomEngine engine(rng.substream(range.first + k));
    const HermitianMatrix m = sample(estimate.ensemble(), estimate.N(), estimate.s(), engine);
    estimate.tally(eigenvalues(m).values);
  }
  return estimate;
}

}  // namespace

CorrelationEstimate estimate_density(Ensemble ensemble, int N, double s, SampleRange range,
                                     const HistogramGrid& grid, const RngStream& rng) {
  return run_range(CorrelationEstimate::density(ensemble, N, s, grid), range, rng);
}

CorrelationEstimate estimate_density(Ensemble ensemble, int N, double s, std::uint64_t samples,
                                     const HistogramGrid& grid, const RngStream& rng) {
  if (samples < 1) {
    throw std::invalid_argument("estimate_density: samples must be >= 1");
  }
  return estimate_density(ensemble, N, s, SampleRange{0, samples}, grid, rng);
}

CorrelationEstimate estimate_pair_correlation(Ensemble ensemble, int N, double s, double u,
                                              double window, int bins, SampleRange range,
                                              const RngStream& rng) {
  const HistogramGrid grid{-window, window, bins};
  return run_range(CorrelationEstimate::pair(ensemble, N, s, u, window, grid), range, rng);
}

CorrelationEstimate estimate_pair_correlation(Ensemble ensemble, int N, double s, double u,
                                              double window, int bins, std::uint64_t samples,
                                              const RngStream& rng) {
  if (samples < 1) {
    throw std::invalid_argument("estimate_pair_correlation: samples must be >= 1");
  }
  return estimate_pair_correlation(ensemble, N, s, u, window, bins, SampleRange{0, samples}, rng);
}

}  // namespace rmt
