#include "rmt/correlations.hpp"
#include "rmt/harness.hpp"
#include "rmt/hermite.hpp"
#include "rmt/kernels.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rmt::harness {

namespace {

// Fixed parameters of the experiments, alongside the defaults table below.
constexpr double kBulkZ = 0.3;
constexpr Complex kExteriorZ[] = {{2.5, 0.0}, {1.0, 1.5}};
constexpr double kRatioLo = 0.2;
constexpr double kRatioHi = 0.9;
constexpr double kGammaMassTolerance = 1e-8;
constexpr std::uint64_t kMaxSamples = 1'000'000'000'000ULL;

struct IdentityTolerances {
  double cd_sum = 1e-10;
  double scaling = 1e-12;
  double reflection = 1e-12;
  double d_scale = 1e-12;
  double h_round_trip = 1e-10;
  double continuation = 1e-10;
  double char_modulus = 1e-12;
  double total_mass = 1e-4;
  double integral_repr = 1e-6;
};

std::vector<double> uniform_grid(double lo, double hi, double step) {
  std::vector<double> out;
  const int count = static_cast<int>(std::lround((hi - lo) / step));
  for (int k = 0; k <= count; ++k) {
    out.push_back(lo + k * step);
  }
  return out;
}

ResultRow make_row(std::string kind, std::string label, double x1, std::optional<double> x2,
                   double value, double reference, std::optional<double> std_error,
                   std::optional<double> threshold) {
  ResultRow r;
  r.kind = std::move(kind);
  r.label = std::move(label);
  r.x1 = x1;
  r.x2 = x2;
  r.value = value;
  r.reference = reference;
  r.abs_error = std::abs(value - reference);
  r.std_error = std_error;
  r.threshold = threshold;
  r.pass = !threshold || r.abs_error <= *threshold;
  return r;
}

std::string tag(Ensemble e, int N) { return std::string(to_string(e)) + " N=" + std::to_string(N); }

std::vector<Ensemble> ensembles_of(const ExperimentConfig& c) {
  if (c.ensemble) {
    return {*c.ensemble};
  }
  return {Ensemble::gue, Ensemble::hse};
}

RngStream stream_for(const ExperimentConfig& c, Ensemble e, int N) {
  const std::uint64_t id = (static_cast<std::uint64_t>(c.experiment) << 40) |
                           (static_cast<std::uint64_t>(e) << 32) | static_cast<std::uint64_t>(N);
  return {c.seed, id};
}

/// Splits [0, samples) into at most kBatches contiguous ranges and runs them
/// on the pool. The result depends only on `samples`, never on `workers`.
std::vector<CorrelationEstimate> run_batches(int workers, std::uint64_t samples,
                                             const std::function<CorrelationEstimate(SampleRange)>& f) {
  const int batches = static_cast<int>(std::min<std::uint64_t>(kBatches, samples));
  std::vector<std::optional<CorrelationEstimate>> slots(static_cast<std::size_t>(batches));
  parallel_for(workers, batches, [&](int b) {
    const std::uint64_t lo = samples * b / batches;
    const std::uint64_t hi = samples * (b + 1) / batches;
    slots[b] = f(SampleRange{lo, hi - lo});
  });
  std::vector<CorrelationEstimate> out;
  out.reserve(slots.size());
  for (auto& slot : slots) {
    out.push_back(std::move(*slot));
  }
  return out;
}

CorrelationEstimate merge_all(const std::vector<CorrelationEstimate>& parts) {
  CorrelationEstimate total = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    total = merge_estimates(total, parts[i]);
  }
  return total;
}

/// Batch-means standard error of a statistic evaluated on each batch.
std::optional<double> batch_std_error(const std::vector<double>& values) {
  const std::size_t b = values.size();
  if (b < 2) {
    return std::nullopt;
  }
  double mean = 0.0;
  for (double v : values) {
    mean += v;
  }
  mean /= static_cast<double>(b);
  double ss = 0.0;
  for (double v : values) {
    ss += (v - mean) * (v - mean);
  }
  return std::sqrt(ss / static_cast<double>(b - 1) / static_cast<double>(b));
}

template <typename F>
std::optional<double> batch_std_error(const std::vector<CorrelationEstimate>& batches, F&& statistic) {
  std::vector<double> values;
  values.reserve(batches.size());
  for (const auto& e : batches) {
    values.push_back(statistic(e));
  }
  return batch_std_error(values);
}

struct Context {
  const ExperimentConfig& config;
  double tolerance;
  ToleranceKind kind;
  std::vector<double> points;
  std::vector<ResultRow>& rows;

  std::optional<double> threshold(std::optional<double> std_error) const {
    if (kind == ToleranceKind::absolute) {
      return tolerance;
    }
    return std_error ? std::optional<double>(tolerance * *std_error) : std::optional<double>(0.0);
  }

  double scale_for(int N) const {
    if (config.s) {
      return *config.s;
    }
    const auto d = defaults_for(config.experiment, config.n);
    return d.s ? *d.s : 1.0 / N;
  }
};

// Antiderivative of the Wigner density.
double wigner_cdf_kernel(double x) {
  const double c = std::clamp(x, -2.0, 2.0);
  return c * std::sqrt(4.0 - c * c) / (4.0 * std::numbers::pi) + std::asin(c / 2.0) / std::numbers::pi;
}

void run_semicircle(Context& ctx) {
  const auto& c = ctx.config;
  const HistogramGrid grid{-2.0, 2.0, c.bins};
  for (Ensemble e : ensembles_of(c)) {
    for (int N : c.N) {
      const double s = ctx.scale_for(N);
      const RngStream stream = stream_for(c, e, N);
      const auto batches = run_batches(c.workers, c.samples, [&](SampleRange r) {
        return estimate_density(e, N, s, r, grid, stream);
      });
      const CorrelationEstimate total = merge_all(batches);
      double l1 = 0.0;
      for (int b = 0; b < grid.bins; ++b) {
        const double h = grid.width();
        const double target = (wigner_cdf_kernel(grid.edge(b + 1)) - wigner_cdf_kernel(grid.edge(b))) / h;
        const double value = total.value(b);
        const auto se = batch_std_error(batches, [&](const CorrelationEstimate& x) { return x.value(b); });
        ctx.rows.push_back(make_row("point", tag(e, N), grid.center(b), std::nullopt, value, target, se,
                                    std::nullopt));
        l1 += std::abs(value - target) * h;
      }
      ctx.rows.push_back(make_row("check", "l1 " + tag(e, N), 0.0, std::nullopt, l1, 0.0, std::nullopt,
                                  ctx.threshold(std::nullopt)));
    }
  }
}

void run_sine_exact(Context& ctx) {
  const auto& c = ctx.config;
  const std::vector<double> ts = uniform_grid(-c.window, c.window, 2.0 * c.window / c.bins);
  std::vector<double> errors;
  for (std::size_t k = 0; k < c.N.size(); ++k) {
    const int N = c.N[k];
    const BulkRescaling rescale(c.u, N);
    const double density = rescale.local_density();
    double max_error = 0.0;
    for (double t1 : ts) {
      for (double t2 : ts) {
        double value = 0.0;
        double reference = 0.0;
        if (c.n == 1) {
          value = rescaled_kernel(rescale, t1, t2);
          reference = sine_kernel(t1, t2);
        } else {
          const CorrelationQuery q{{rescale.point(t1), rescale.point(t2)}, N, Complex(1.0 / N, 0.0)};
          value = gue_correlation(q).real() / (density * density);
          const double pair[] = {t1, t2};
          reference = sine_det(pair);
        }
        ResultRow row = make_row("point", "N=" + std::to_string(N), t1, t2, value, reference,
                                 std::nullopt, std::nullopt);
        max_error = std::max(max_error, row.abs_error);
        ctx.rows.push_back(std::move(row));
      }
    }
    errors.push_back(max_error);
    const bool last = k + 1 == c.N.size();
    ctx.rows.push_back(make_row("check", "max_error N=" + std::to_string(N), c.u, std::nullopt,
                                max_error, 0.0, std::nullopt,
                                last ? ctx.threshold(std::nullopt) : std::nullopt));
  }
  for (std::size_t k = 1; k < errors.size(); ++k) {
    ResultRow row = make_row("check",
                             "decrease N=" + std::to_string(c.N[k - 1]) + "->" + std::to_string(c.N[k]),
                             c.u, std::nullopt, errors[k], errors[k - 1], std::nullopt, errors[k - 1]);
    row.abs_error = errors[k];
    row.pass = errors[k] < errors[k - 1];
    ctx.rows.push_back(std::move(row));
  }
}

/// Weighted bin average of 1 - sinc^2 with the edge-correction weight 2A - 2|tau|.
double pair_target(double a, double b, double window) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  auto weight = [&](double t) { return 2.0 * window - 2.0 * std::abs(t); };
  auto weighted = [&](double t) {
    const double k = sine_kernel(0.0, t);
    return weight(t) * (1.0 - k * k);
  };
  auto integrate = [&](auto&& f) {
    if (a < 0.0 && b > 0.0) {
      return Rule::integrate(f, a, 0.0) + Rule::integrate(f, 0.0, b);
    }
    return Rule::integrate(f, a, b);
  };
  return integrate(weighted) / integrate(weight);
}

void run_sine_mc(Context& ctx) {
  const auto& c = ctx.config;
  for (Ensemble e : ensembles_of(c)) {
    for (int N : c.N) {
      const double s = ctx.scale_for(N);
      const RngStream stream = stream_for(c, e, N);
      const auto batches = run_batches(c.workers, c.samples, [&](SampleRange r) {
        return estimate_pair_correlation(e, N, s, c.u, c.window, c.bins, r, stream);
      });
      const CorrelationEstimate total = merge_all(batches);
      const HistogramGrid& grid = total.grid();
      double max_dev = 0.0;
      for (int b = 0; b < grid.bins; ++b) {
        const double target = pair_target(grid.edge(b), grid.edge(b + 1), c.window);
        const auto se = batch_std_error(batches, [&](const CorrelationEstimate& x) { return x.value(b); });
        ResultRow row = make_row("point", tag(e, N), grid.center(b), c.u, total.value(b), target, se,
                                 ctx.threshold(se));
        max_dev = std::max(max_dev, row.abs_error);
        ctx.rows.push_back(std::move(row));
      }
      ctx.rows.push_back(make_row("check", "max_deviation " + tag(e, N), c.u, std::nullopt, max_dev,
                                  0.0, std::nullopt,
                                  ctx.kind == ToleranceKind::absolute ? ctx.threshold(std::nullopt)
                                                                      : std::nullopt));
    }
  }
}

/// One-point HSE estimate at unit scale on the a-priori support of
/// lambda / sqrt(sN), which is [-sqrt N, sqrt N].
std::vector<CorrelationEstimate> hse_reference_batches(const ExperimentConfig& c, int N) {
  const double edge = std::sqrt(static_cast<double>(N));
  const HistogramGrid grid{-edge, edge, c.bins};
  const RngStream stream = stream_for(c, Ensemble::hse, N);
  return run_batches(c.workers, c.samples, [&](SampleRange r) {
    return estimate_density(Ensemble::hse, N, 1.0, r, grid, stream);
  });
}

void run_disintegration(Context& ctx) {
  const auto& c = ctx.config;
  for (int N : c.N) {
    const double s = ctx.scale_for(N);
    const auto batches = hse_reference_batches(c, N);
    const CorrelationEstimate total = merge_all(batches);
    for (double x : ctx.points) {
      const double pt[] = {x};
      const double value = disintegration_rhs(pt, N, s, total);
      const double exact = gue_correlation(CorrelationQuery{{x}, N, Complex(s, 0.0)}).real();
      const auto se = batch_std_error(
          batches, [&](const CorrelationEstimate& e) { return disintegration_rhs(pt, N, s, e); });
      ctx.rows.push_back(make_row("point", "N=" + std::to_string(N), x, s, value, exact, se,
                                  ctx.threshold(se)));
    }
    const auto [lo, hi] = chi_support(N * N, s);
    const ChiSquareSpec chi{N * N, Complex(s, 0.0)};
    const double mass = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double u) { return chi_density(chi, u).real(); }, lo, hi, 15, 1e-14);
    ctx.rows.push_back(make_row("check", "gamma_mass N=" + std::to_string(N), s, std::nullopt, mass,
                                1.0, std::nullopt, kGammaMassTolerance));
  }
}

void run_fourier_identity(Context& ctx) {
  const auto& c = ctx.config;
  for (int N : c.N) {
    const auto batches = hse_reference_batches(c, N);
    const CorrelationEstimate total = merge_all(batches);
    for (double x : ctx.points) {
      const double pt[] = {x};
      for (double p : c.p) {
        const Complex value = q_transform(p, pt, N, total);
        const Complex exact = fourier_rhs(p, pt, N);
        std::vector<Complex> per_batch;
        for (const auto& e : batches) {
          per_batch.push_back(q_transform(p, pt, N, e));
        }
        auto component_se = [&](bool imag) {
          std::vector<double> v;
          for (const Complex& z : per_batch) {
            v.push_back(imag ? z.imag() : z.real());
          }
          return batch_std_error(v);
        };
        const auto se_re = component_se(false);
        ctx.rows.push_back(make_row("point", "re N=" + std::to_string(N), x, p, value.real(),
                                    exact.real(), se_re, ctx.threshold(se_re)));
        if (p != 0.0) {
          const auto se_im = component_se(true);
          ctx.rows.push_back(make_row("point", "im N=" + std::to_string(N), x, p, value.imag(),
                                      exact.imag(), se_im, ctx.threshold(se_im)));
        }
      }
    }
  }
}

void run_pr_asymptotics(Context& ctx) {
  const auto& c = ctx.config;
  std::vector<double> bulk_errors;
  for (int N : c.N) {
    const double asym = pr_bulk_asymptotic(Complex(kBulkZ, 0.0), N).real();
    const double direct =
        phi_scaled(Complex(std::sqrt(2.0 * N) * kBulkZ, 0.0), N, Complex(0.5, 0.0)).upper_value().real();
    ctx.rows.push_back(make_row("point", "bulk N=" + std::to_string(N), kBulkZ, 0.0, asym, direct,
                                std::nullopt, std::nullopt));
    const double rel = std::abs(asym - direct) / std::abs(direct);
    bulk_errors.push_back(rel);
    ctx.rows.push_back(make_row("check", "bulk_relative_error N=" + std::to_string(N), kBulkZ,
                                std::nullopt, rel, 0.0, std::nullopt, std::nullopt));

    for (const Complex& z : kExteriorZ) {
      const double asym_log = pr_exterior_asymptotic(z, N).log_magnitude;
      const double direct_log = p_pair(z * std::sqrt(static_cast<double>(N)), N).upper_log().log_magnitude;
      ctx.rows.push_back(make_row("point", "exterior N=" + std::to_string(N), z.real(), z.imag(),
                                  asym_log, direct_log, std::nullopt,
                                  ctx.tolerance * std::abs(direct_log)));
    }
  }
  if (bulk_errors.size() >= 2) {
    const std::size_t k = bulk_errors.size() - 1;
    const double ratio = bulk_errors[k] / bulk_errors[k - 1];
    ResultRow row = make_row("check",
                             "bulk_ratio N=" + std::to_string(c.N[k - 1]) + "->" + std::to_string(c.N[k]),
                             kRatioLo, kRatioHi, ratio, 0.0, std::nullopt, kRatioHi);
    row.pass = ratio >= kRatioLo && ratio <= kRatioHi;
    ctx.rows.push_back(std::move(row));
  }
}

/// sum_{k<N} |phi~_k(x, s)|^2, the Cauchy-Schwarz scale of K~_N(x, .).
double hermite_norm_sq(Complex x, int N, Complex s) {
  double total = 0.0;
  for (int k = 1; k <= N; ++k) {
    total += std::norm(phi_scaled(x, k, s).lower_value());
  }
  return total;
}

void run_identities(Context& ctx) {
  const auto& c = ctx.config;
  IdentityTolerances tol;
  if (c.tolerance) {
    tol = {*c.tolerance, *c.tolerance, *c.tolerance, *c.tolerance, *c.tolerance,
           *c.tolerance, *c.tolerance, *c.tolerance, *c.tolerance};
  }
  RandomEngine rng(RngStream{c.seed, 0x1d});
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };
  // Identity rows are reported in units of `scale`, so abs_error is the
  // relative error and the threshold is the suite tolerance itself.
  auto relative_row = [&](std::string label, double x1, std::optional<double> x2, Complex value,
                          Complex reference, double scale, double tolerance) {
    ResultRow row = make_row("point", std::move(label), x1, x2, value.real() / scale,
                             reference.real() / scale, std::nullopt, tolerance);
    row.abs_error = std::abs(value - reference) / scale;
    row.pass = row.abs_error <= tolerance;
    ctx.rows.push_back(std::move(row));
  };

  // Christoffel-Darboux form against the direct sum; reflection and swap symmetry.
  for (int N : {1, 2, 3, 5, 10, 20, 50}) {
    const Complex scales[] = {{1.0, 0.0}, {1.0 / N, 0.0}, {0.5, 0.0}, {1.0 / N, 0.5 / N}, {2.0, -1.0}};
    for (const Complex& s : scales) {
      const double reach = 2.5 * std::sqrt(std::abs(s) * N) + 1.0;
      for (int k = 0; k < 6; ++k) {
        Complex x(uniform(-reach, reach), k >= 4 ? uniform(-1.0, 1.0) : 0.0);
        Complex y(uniform(-reach, reach), k >= 4 ? uniform(-1.0, 1.0) : 0.0);
        if (k == 3) {
          y = x;
        } else if (std::abs(x - y) < 0.05) {
          y += 0.1;
        }
        const double scale = std::sqrt(hermite_norm_sq(x, N, s) * hermite_norm_sq(y, N, s));
        const std::string suffix = " N=" + std::to_string(N);
        const Complex cd = kernel_cd({x, y, N, s});
        relative_row("cd_sum" + suffix, x.real(), y.real(), cd, kernel_sum({x, y, N, s}), scale, tol.cd_sum);
        relative_row("reflection" + suffix, x.real(), y.real(), kernel_cd({-x, -y, N, s}), cd, scale,
                     tol.reflection);
        relative_row("swap" + suffix, x.real(), y.real(), kernel_cd({y, x, N, s}), cd, scale,
                     tol.reflection);
        const Complex inv_root = principal_pow(s, -0.5);
        const Complex unit = kernel_cd({x * inv_root, y * inv_root, N, Complex(1.0, 0.0)});
        relative_row("scaling" + suffix, x.real(), y.real(), cd, inv_root * unit, scale, tol.scaling);
      }
    }
  }

  // d(H) modulus, hyperbola and cone identities; h_bound inverse.
  for (double H : uniform_grid(-10.0, 10.0, 0.25)) {
    const Complex d = d_scale(H);
    relative_row("d_modulus", H, std::nullopt, std::pow(std::abs(d), 4), 1.0 + H * H, 1.0 + H * H,
                 tol.d_scale);
    relative_row("d_hyperbola", H, std::nullopt, d.real() * d.real() - d.imag() * d.imag(), 1.0, 1.0,
                 tol.d_scale);
    double margin = std::numeric_limits<double>::infinity();
    for (double u : {-1.9, -0.7, 0.4, 1.3, 3.0}) {
      const Complex z = u * d;
      margin = std::min(margin, (std::abs(z.real()) - std::abs(z.imag())) / std::abs(z));
    }
    ResultRow row = make_row("point", "d_cone", H, std::nullopt, margin, 0.0, std::nullopt, tol.d_scale);
    row.abs_error = std::max(0.0, -margin);
    row.pass = row.abs_error <= *row.threshold;
    ctx.rows.push_back(std::move(row));
  }
  for (double b : {0.0, 0.1, 0.3, 1.0, 2.5, 10.0}) {
    relative_row("h_round_trip", b, std::nullopt, std::abs(d_scale(h_bound(b)).imag()), b,
                 std::max(1.0, b), tol.h_round_trip);
  }

  // Continuation in H against direct evaluation at complex scale.
  for (int N : {1, 2, 5, 10, 20}) {
    for (int n = 1; n <= std::min(3, N); ++n) {
      for (double H : {-5.0, -1.3, 0.0, 0.4, 2.0, 5.0}) {
        std::vector<double> pts;
        for (int i = 0; i < n; ++i) {
          pts.push_back(uniform(-1.8, 1.8));
        }
        const Complex s = 1.0 / (Complex(1.0, H) * static_cast<double>(N));
        const Complex direct =
            gue_correlation(CorrelationQuery{pts, N, s});
        const Complex pulled = gue_correlation_complex_H(pts, N, H);
        double scale = 1.0;
        for (double x : pts) {
          scale *= hermite_norm_sq(Complex(x, 0.0), N, s);
        }
        relative_row("continuation N=" + std::to_string(N) + " n=" + std::to_string(n), pts[0], H,
                     pulled, direct, scale, tol.continuation);
      }
    }
  }

  // Modulus of the characteristic function along p = N H / sqrt 2.
  for (int N : {1, 2, 3, 5, 10}) {
    for (double H : {-2.0, -0.5, 0.1, 1.0, 3.0}) {
      const double expected = std::pow(1.0 + H * H, -0.25 * N * N);
      const double p = N * H / std::numbers::sqrt2;
      relative_row("char_modulus N=" + std::to_string(N), H, std::nullopt, std::abs(char_fn(N, p)),
                   expected, expected, tol.char_modulus);
    }
  }

  // Total mass of the one-point function at s = 1/N.
  for (int N = 1; N <= 10; ++N) {
    const Complex s(1.0 / N, 0.0);
    const double mass = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double x) { return kernel_diag(Complex(x, 0.0), N, s).real(); }, -8.0, 8.0, 15, 1e-13);
    relative_row("total_mass N=" + std::to_string(N), 0.0, std::nullopt, mass, N, N, tol.total_mass);
  }

  // Integral representation against the Christoffel-Darboux form.
  for (int k = 0; k < 20; ++k) {
    const int N = 1 + k % 10;
    const double x = uniform(-4.0, 4.0);
    const double y = uniform(-4.0, 4.0);
    const double cd = kernel_cd({x, y, N, Complex(1.0, 0.0)}).real();
    relative_row("integral_repr N=" + std::to_string(N), x, y, kernel_integral_repr(x, y, N), cd,
                 std::max(1.0, std::abs(cd)), tol.integral_repr);
  }
}

}  // namespace

Defaults defaults_for(Experiment e, int n) {
  switch (e) {
    case Experiment::semicircle:
      return {{200}, 20000, std::nullopt, {}, 24, 0.05, ToleranceKind::absolute};
    case Experiment::sine_exact:
      return {{100, 400}, 20000, std::nullopt, {}, 24, n == 1 ? 0.05 : 0.1, ToleranceKind::absolute};
    case Experiment::sine_mc:
      return {{200}, 20000, std::nullopt, {}, 24, 0.1, ToleranceKind::absolute};
    case Experiment::disintegration:
      return {{2}, 100000, 0.5, uniform_grid(-3.0, 3.0, 0.5), 800, 3.0, ToleranceKind::sigma};
    case Experiment::fourier_identity:
      return {{2}, 100000, std::nullopt, {0.0}, 800, 3.0, ToleranceKind::sigma};
    case Experiment::pr_asymptotics:
      return {{100, 200, 400}, 20000, std::nullopt, {}, 24, 1e-3, ToleranceKind::absolute};
    case Experiment::identities:
      return {{50}, 20000, std::nullopt, {}, 24, 1e-10, ToleranceKind::absolute};
  }
  throw std::invalid_argument("defaults_for: unknown experiment");
}

ResultRecord run(const ExperimentConfig& config) {
  config.validate();
  if (config.samples > kMaxSamples) {
    throw std::invalid_argument("config: samples must be <= 1e12");
  }
  const auto start = std::chrono::steady_clock::now();
  const Defaults defaults = defaults_for(config.experiment, config.n);

  ResultRecord record;
  record.config = config;
  record.tolerance = config.tolerance.value_or(defaults.tolerance);
  record.tolerance_kind = defaults.kind;
  Context ctx{config, record.tolerance, defaults.kind,
              config.points.empty() ? defaults.points : config.points, record.rows};

  try {
    switch (config.experiment) {
      case Experiment::semicircle:
        run_semicircle(ctx);
        break;
      case Experiment::sine_exact:
        run_sine_exact(ctx);
        break;
      case Experiment::sine_mc:
        run_sine_mc(ctx);
        break;
      case Experiment::disintegration:
        run_disintegration(ctx);
        break;
      case Experiment::fourier_identity:
        run_fourier_identity(ctx);
        break;
      case Experiment::pr_asymptotics:
        run_pr_asymptotics(ctx);
        break;
      case Experiment::identities:
        run_identities(ctx);
        break;
    }
  } catch (const std::exception& ex) {
    throw std::runtime_error(std::string(to_string(config.experiment)) + ": " + ex.what());
  }

  // max_error summarizes thresholded point rows, or thresholded checks when
  // an experiment judges no individual points.
  const bool judged_points = std::any_of(record.rows.begin(), record.rows.end(), [](const ResultRow& r) {
    return r.kind == "point" && r.threshold;
  });
  for (const ResultRow& row : record.rows) {
    if (!row.threshold) {
      continue;
    }
    record.passed = record.passed && row.pass;
    if ((row.kind == "point") == judged_points) {
      record.max_error = std::max(record.max_error, row.abs_error);
    }
  }
  record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!config.output_path.empty()) {
    emit(record, config.format, config.output_path);
  }
  return record;
}

}  // namespace rmt::harness
