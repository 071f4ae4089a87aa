#pragma once

// Seedable GUE / HSE samplers, the Hermitian eigensolve, and Monte-Carlo
// estimators of one-point densities and bulk pair correlations.
//
// Reproducibility: sample k of a run driven by RngStream r draws from
// r.substream(k) only, so any partition of the sample index range across
// workers produces the same integer counts.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rmt/geometry.hpp"
#include "rmt/linalg.hpp"

namespace rmt {

enum class Ensemble { gue, hse };

std::string_view to_string(Ensemble e);
Ensemble ensemble_from_string(std::string_view name);

/// (seed, stream_id) identifies a bit-exact variate sequence.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  /// Deterministic child stream for sample index k.
  RngStream substream(std::uint64_t k) const;
  bool operator==(const RngStream&) const = default;
};

/// Counter-based generator: output i is a SplitMix64 finalizer applied to
/// key + i * golden_gamma, with the key derived from (seed, stream_id).
class RandomEngine {
public:
  explicit RandomEngine(const RngStream& stream);

  std::uint64_t next_u64();
  /// Uniform on (0, 1].
  double uniform();
  /// Standard normal via Box-Muller; both variates of a pair are used.
  double normal();

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::optional<double> spare_;
};

/// Hermitian matrix stored as a real diagonal plus the packed strict upper
/// triangle (row-major: (0,1), (0,2), ..., (1,2), ...).
class HermitianMatrix {
public:
  explicit HermitianMatrix(int n);

  int size() const { return n_; }
  Complex at(int i, int j) const;
  void set_diagonal(int i, double value) { diag_[i] = value; }
  /// Sets entry (i, j), i < j; (j, i) is its conjugate.
  void set_upper(int i, int j, Complex value) { upper_[packed_index(i, j)] = value; }
  double trace() const;
  /// sum_ij |a_ij|^2 = tr A^2.
  double hs_norm_sq() const;
  void scale(double factor);

  linalg::DenseMatrix<Complex> to_dense() const;
  /// Throws std::invalid_argument if `a` is not Hermitian within `tolerance`.
  static HermitianMatrix from_dense(const linalg::DenseMatrix<Complex>& a, double tolerance = 1e-12);

private:
  std::size_t packed_index(int i, int j) const;

  int n_;
  std::vector<double> diag_;
  std::vector<Complex> upper_;
};

struct Spectrum {
  std::vector<double> values;  // nondecreasing
};

/// Density proportional to exp(-tr A^2 / (2s)): diagonal N(0, s), off-diagonal
/// real and imaginary parts N(0, s/2).
HermitianMatrix gue_sample(int N, double s, RandomEngine& rng);
HermitianMatrix gue_sample(int N, double s, const RngStream& stream);

/// Uniform on the sphere tr Y^2 = s N^2, as sqrt(s) N X / sqrt(tr X^2).
HermitianMatrix hse_sample(int N, double s, RandomEngine& rng);
HermitianMatrix hse_sample(int N, double s, const RngStream& stream);

HermitianMatrix sample(Ensemble ensemble, int N, double s, RandomEngine& rng);

/// Sorted eigenvalues. Throws std::runtime_error if the solver fails or the
/// trace / HS-norm invariants are violated beyond 1e-9 relative.
Spectrum eigenvalues(const HermitianMatrix& m);

struct HistogramGrid {
  double lo = 0.0;
  double hi = 1.0;
  int bins = 1;

  void validate() const;
  double width() const { return (hi - lo) / bins; }
  double center(int bin) const { return lo + (bin + 0.5) * width(); }
  double edge(int bin) const { return lo + bin * width(); }
  /// Bin index, or -1 outside [lo, hi). x == hi falls in the last bin.
  int bin_of(double x) const;
  bool operator==(const HistogramGrid&) const = default;
};

/// Binned Monte-Carlo estimate of a one-point density (order 1) or a
/// bulk-rescaled pair correlation (order 2).
///
/// Normalization (value(b) = counts[b] * normalization(b)):
///   order 1: 1 / (samples N h)  -> targets N^-1 R_{1,N}, a probability density;
///   order 2: 1 / (samples int_bin (2A - 2|tau|) dtau) -> targets the window
///            average of (N w(u))^-2 R_{2,N}(u + t/(N w), u + (t + tau)/(N w)),
///            whose bulk limit is 1 - sinc^2(tau).
/// Eigenvalues are first normalized to lambda / sqrt(sN) so the spectrum
/// fills [-2, 2] for every s.
class CorrelationEstimate {
public:
  static CorrelationEstimate density(Ensemble ensemble, int N, double s, HistogramGrid grid);
  static CorrelationEstimate pair(Ensemble ensemble, int N, double s, double u, double window,
                                  HistogramGrid grid);

  int order() const { return order_; }
  Ensemble ensemble() const { return ensemble_; }
  int N() const { return N_; }
  double s() const { return s_; }
  std::optional<double> bulk_point() const { return bulk_point_; }
  double window() const { return window_; }
  const HistogramGrid& grid() const { return grid_; }
  std::span<const std::uint64_t> counts() const { return counts_; }
  std::uint64_t samples() const { return samples_; }
  /// Eigenvalues (order 1) or admissible pairs (order 2) outside the grid.
  std::uint64_t outside() const { return outside_; }

  double normalization(int bin) const;
  double value(int bin) const { return static_cast<double>(counts_[bin]) * normalization(bin); }
  /// Linear interpolation between bin centres, constant in the outer half
  /// bins, 0 outside the grid.
  double interpolate(double x) const;
  /// Piecewise-constant reading: value of the bin containing x (mean of the
  /// two neighbours at an interior edge), 0 outside the grid. Integrals of
  /// this function reproduce the bin masses exactly.
  double step_value(double x) const;
  /// sum_b value(b) h; equals 1 - outside / (samples N) for order 1.
  double total_mass() const;

  /// Adds one matrix sample given its eigenvalues (any order).
  void tally(std::span<const double> eigenvalues);

  bool same_layout(const CorrelationEstimate& other) const;
  bool operator==(const CorrelationEstimate&) const = default;

  friend CorrelationEstimate merge_estimates(const CorrelationEstimate& a,
                                             const CorrelationEstimate& b);

private:
  CorrelationEstimate() = default;
  void tally_density(std::span<const double> eigenvalues);
  void tally_pairs(std::span<const double> eigenvalues);

  int order_ = 1;
  Ensemble ensemble_ = Ensemble::gue;
  int N_ = 1;
  double s_ = 1.0;
  std::optional<double> bulk_point_;
  double window_ = 0.0;
  double local_density_ = 0.0;
  HistogramGrid grid_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t samples_ = 0;
  std::uint64_t outside_ = 0;
};

/// Adds counts and sample tallies. Throws std::invalid_argument on layout mismatch.
CorrelationEstimate merge_estimates(const CorrelationEstimate& a, const CorrelationEstimate& b);

/// Half-open range [first, first + count) of sample indices.
struct SampleRange {
  std::uint64_t first = 0;
  std::uint64_t count = 0;
};

/// Histogram of all eigenvalues of `range.count` samples.
CorrelationEstimate estimate_density(Ensemble ensemble, int N, double s, SampleRange range,
                                     const HistogramGrid& grid, const RngStream& rng);

CorrelationEstimate estimate_density(Ensemble ensemble, int N, double s, std::uint64_t samples,
                                     const HistogramGrid& grid, const RngStream& rng);

/// Window-averaged, edge-corrected histogram of rescaled eigenvalue
/// differences around the bulk point u; tau in [-window, window].
CorrelationEstimate estimate_pair_correlation(Ensemble ensemble, int N, double s, double u,
                                              double window, int bins, SampleRange range,
                                              const RngStream& rng);
CorrelationEstimate estimate_pair_correlation(Ensemble ensemble, int N, double s, double u,
                                              double window, int bins, std::uint64_t samples,
                                              const RngStream& rng);

}  // namespace rmt
