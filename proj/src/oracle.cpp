#include "catshield/oracle.hpp"

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace catshield::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

// Running compensated sum; keeps grid totals independent of loop order
// rearrangements the optimizer might apply.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double value) {
    const double y = value - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Legendre nodes and weights on [-1, 1], Newton iteration from Chebyshev
// initial guesses. n stays small enough (<= a few thousand) that the O(n^2)
// recurrence cost is irrelevant next to the integrand evaluations.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double deriv = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      deriv = n * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / deriv;
      z -= step;
      if (std::abs(step) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * deriv * deriv);
  }
  return {std::move(x), std::move(w)};
}

struct AxisRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

AxisRule axis_rule(double lo, double hi, const QuadratureSpec& spec) {
  const int n = spec.points_per_axis;
  AxisRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (spec.scheme == Scheme::GaussLegendre) {
    auto [t, w] = gauss_legendre(n);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (int i = 0; i < n; ++i) {
      rule.nodes[i] = mid + half * t[i];
      rule.weights[i] = half * w[i];
    }
  } else {
    const double h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
      rule.nodes[i] = lo + h * i;
      rule.weights[i] = (i == 0 || i == n - 1) ? 0.5 * h : h;
    }
  }
  return rule;
}

std::complex<double> square(std::complex<double> z) { return z * z; }

}  // namespace

void check_spec(const QuadratureSpec& spec) {
  if (!std::isfinite(spec.truncation_radius) || !(spec.truncation_radius > 0.0))
    throw std::invalid_argument("truncation radius must be positive");
  if (spec.points_per_axis < 64)
    throw std::invalid_argument("quadrature needs at least 64 points per axis");
}

QuadratureSpec default_spec(const CatState& state, const ChannelParams& ch) {
  const double center =
      std::max(std::abs(state.x0 * ch.f_x), std::abs(state.p0 * ch.f_p));
  const double spread = std::sqrt(std::max(ch.v_x(), ch.v_p()));
  return {center + 8.0 * spread, 256, Scheme::GaussLegendre};
}

std::complex<double> WignerBlocks::sum(Parity parity) const {
  if (parity == Parity::Even)
    return 0.5 * (lobe_pos + cross + cross_conj + lobe_neg) / norm_even;
  return 0.5 * (lobe_pos - cross - cross_conj + lobe_neg) / norm_odd;
}

WignerBlocks blocks_ideal(const CatState& state, PhasePoint pt) {
  check_state(state);
  const std::complex<double> i(0.0, 1.0);
  const double mag = state.magnitude_sq();
  WignerBlocks b;
  b.lobe_pos = std::exp(-square(pt.x - state.x0) - square(pt.p - state.p0)) / kPi;
  b.lobe_neg = std::exp(-square(pt.x + state.x0) - square(pt.p + state.p0)) / kPi;
  b.cross = std::exp(-square(pt.x - i * state.p0) - square(pt.p + i * state.x0)) *
            std::exp(-mag) / kPi;
  b.cross_conj = std::conj(b.cross);
  b.norm_even = 1.0 + std::exp(-mag);
  b.norm_odd = 1.0 - std::exp(-mag);
  return b;
}

WignerBlocks blocks_transformed(const CatState& state, const ChannelParams& ch,
                                PhasePoint pt) {
  check_state(state);
  check_channel(ch);
  const std::complex<double> i(0.0, 1.0);
  const double vx = ch.v_x();
  const double vp = ch.v_p();
  const double scale = 1.0 / (kPi * std::sqrt(vx * vp));
  const double mag = state.magnitude_sq();
  WignerBlocks b;
  b.lobe_pos = scale * std::exp(-square(pt.x - ch.f_x * state.x0) / vx -
                                square(pt.p - ch.f_p * state.p0) / vp);
  b.lobe_neg = scale * std::exp(-square(pt.x + ch.f_x * state.x0) / vx -
                                square(pt.p + ch.f_p * state.p0) / vp);
  b.cross = scale *
            std::exp(-square(pt.x - i * ch.f_x * state.p0) / vx -
                     square(pt.p + i * ch.f_p * state.x0) / vp) *
            std::exp(-mag);
  b.cross_conj = std::conj(b.cross);
  b.norm_even = 1.0 + std::exp(-mag);
  b.norm_odd = 1.0 - std::exp(-mag);
  return b;
}

double kernel_density(const ChannelParams& ch, PhasePoint source,
                      PhasePoint out) {
  check_channel(ch);
  if (!(ch.sigma_x > 0.0) || !(ch.sigma_p > 0.0))
    throw std::invalid_argument(
        "kernel density is singular for noiseless axes");
  const double dx = out.x - ch.f_x * source.x;
  const double dp = out.p - ch.f_p * source.p;
  return std::exp(-dx * dx / ch.sigma_x - dp * dp / ch.sigma_p) /
         (kPi * std::sqrt(ch.sigma_x * ch.sigma_p));
}

namespace {

// Source-plane integration window for one axis. A noiseless axis collapses
// the kernel Gaussian to a point mass at out/f with Jacobian 1/f.
struct AxisPlan {
  bool collapsed = false;
  double point = 0.0;
  double jacobian = 1.0;
  AxisRule rule;
};

AxisPlan plan_axis(double displacement, double f, double sigma, double out,
                   const QuadratureSpec& spec) {
  AxisPlan plan;
  if (sigma == 0.0) {
    plan.collapsed = true;
    plan.point = out / f;
    plan.jacobian = 1.0 / f;
    return plan;
  }
  // state support: unit-variance lobes at +-displacement; kernel support:
  // Gaussian of std sqrt(sigma/2)/f around out/f
  const double state_halfwidth = std::abs(displacement) + 9.0;
  const double kernel_center = out / f;
  const double kernel_halfwidth = 9.0 * std::sqrt(sigma) / f;
  double lo = std::max(-state_halfwidth, kernel_center - kernel_halfwidth);
  double hi = std::min(state_halfwidth, kernel_center + kernel_halfwidth);
  if (!(lo < hi)) {
    // disjoint supports, the integral is numerically zero
    lo = kernel_center - kernel_halfwidth;
    hi = kernel_center + kernel_halfwidth;
  }
  plan.rule = axis_rule(lo, hi, spec);
  return plan;
}

double wigner_numeric_impl(const CatState& state, const ChannelParams& ch,
                           PhasePoint pt, const QuadratureSpec& spec) {
  const AxisPlan px = plan_axis(state.x0, ch.f_x, ch.sigma_x, pt.x, spec);
  const AxisPlan pp = plan_axis(state.p0, ch.f_p, ch.sigma_p, pt.p, spec);

  const auto gauss_x = [&](double sx) {
    const double d = pt.x - ch.f_x * sx;
    return std::exp(-d * d / ch.sigma_x) / std::sqrt(kPi * ch.sigma_x);
  };
  const auto gauss_p = [&](double sp) {
    const double d = pt.p - ch.f_p * sp;
    return std::exp(-d * d / ch.sigma_p) / std::sqrt(kPi * ch.sigma_p);
  };
  const auto w_source = [&](double sx, double sp) {
    return blocks_ideal(state, {sx, sp}).sum(state.parity).real();
  };

  if (px.collapsed && pp.collapsed)
    return w_source(px.point, pp.point) * px.jacobian * pp.jacobian;

  KahanSum total;
  if (px.collapsed) {
    for (std::size_t j = 0; j < pp.rule.nodes.size(); ++j)
      total.add(pp.rule.weights[j] * w_source(px.point, pp.rule.nodes[j]) *
                gauss_p(pp.rule.nodes[j]));
    return total.sum * px.jacobian;
  }
  if (pp.collapsed) {
    for (std::size_t i = 0; i < px.rule.nodes.size(); ++i)
      total.add(px.rule.weights[i] * w_source(px.rule.nodes[i], pp.point) *
                gauss_x(px.rule.nodes[i]));
    return total.sum * pp.jacobian;
  }
  for (std::size_t i = 0; i < px.rule.nodes.size(); ++i) {
    const double kx = px.rule.weights[i] * gauss_x(px.rule.nodes[i]);
    KahanSum row;
    for (std::size_t j = 0; j < pp.rule.nodes.size(); ++j)
      row.add(pp.rule.weights[j] * w_source(px.rule.nodes[i], pp.rule.nodes[j]) *
              gauss_p(pp.rule.nodes[j]));
    total.add(kx * row.sum);
  }
  return total.sum;
}

}  // namespace

double wigner_numeric(const CatState& state, const ChannelParams& ch,
                      PhasePoint pt, const QuadratureSpec& spec) {
  check_state(state);
  check_channel(ch);
  check_spec(spec);
  return wigner_numeric_impl(state, ch, pt, spec);
}

QuadratureResult wigner_numeric_checked(const CatState& state,
                                        const ChannelParams& ch, PhasePoint pt,
                                        const QuadratureSpec& spec,
                                        double tol) {
  check_state(state);
  check_channel(ch);
  check_spec(spec);
  const double coarse = wigner_numeric_impl(state, ch, pt, spec);
  QuadratureSpec fine = spec;
  fine.points_per_axis *= 2;
  const double value = wigner_numeric_impl(state, ch, pt, fine);
  const double err = std::abs(value - coarse);
  return {value, err, err <= tol};
}

double integrate_phase_space(const std::function<double(double, double)>& f,
                             const QuadratureSpec& spec) {
  check_spec(spec);
  const double r = spec.truncation_radius;
  const AxisRule rule = axis_rule(-r, r, spec);
  KahanSum total;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    KahanSum row;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j)
      row.add(rule.weights[j] * f(rule.nodes[i], rule.nodes[j]));
    total.add(rule.weights[i] * row.sum);
  }
  return total.sum;
}

QuadratureResult integrate_phase_space_checked(
    const std::function<double(double, double)>& f, const QuadratureSpec& spec,
    double tol) {
  const double coarse = integrate_phase_space(f, spec);
  QuadratureSpec fine = spec;
  fine.points_per_axis *= 2;
  const double value = integrate_phase_space(f, fine);
  const double err = std::abs(value - coarse);
  return {value, err, err <= tol};
}

double purity_numeric(const CatState& state, const ChannelParams& ch,
                      const QuadratureSpec& spec) {
  check_state(state);
  check_channel(ch);
  const auto w2 = [&](double x, double p) {
    const double w = blocks_transformed(state, ch, {x, p}).sum(state.parity).real();
    return w * w;
  };
  return 2.0 * kPi * integrate_phase_space(w2, spec);
}

double overlap_numeric(double x0, double p0, const ChannelParams& ch,
                       const QuadratureSpec& spec) {
  const CatState probe{x0, p0, Parity::Odd};
  check_state(probe);
  check_channel(ch);
  const auto product = [&](double x, double p) {
    const WignerBlocks b = blocks_transformed(probe, ch, {x, p});
    return b.sum(Parity::Even).real() * b.sum(Parity::Odd).real();
  };
  return 2.0 * kPi * integrate_phase_space(product, spec);
}

double distance_numeric(double x0, double p0, const ChannelParams& ch,
                        const QuadratureSpec& spec) {
  const CatState probe{x0, p0, Parity::Odd};
  check_state(probe);
  check_channel(ch);
  const auto diff2 = [&](double x, double p) {
    const WignerBlocks b = blocks_transformed(probe, ch, {x, p});
    const double d = b.sum(Parity::Even).real() - b.sum(Parity::Odd).real();
    return d * d;
  };
  return 2.0 * kPi * integrate_phase_space(diff2, spec);
}

}  // namespace catshield::oracle
