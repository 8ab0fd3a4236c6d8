#pragma once

#include <complex>
#include <functional>

#include "catshield/core.hpp"

// Numerical-quadrature reference implementations. Everything here evaluates
// the defining integrals from scratch, through the complex coherent-state
// blocks, and never calls the closed forms in core or distance; agreement
// between the two routes is what the tests certify.

namespace catshield::oracle {

enum class Scheme { GaussLegendre, Trapezoid };

struct QuadratureSpec {
  double truncation_radius = 12.0;
  int points_per_axis = 256;
  Scheme scheme = Scheme::GaussLegendre;
};

// radius > 0, points_per_axis >= 64
void check_spec(const QuadratureSpec& spec);

// Truncation covering the displaced lobes plus eight standard deviations of
// the widest output Gaussian.
QuadratureSpec default_spec(const CatState& state, const ChannelParams& ch);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // |value - value at doubled points|
  bool converged = false;
};

// The four coherent-state blocks of a cat Wigner function, kept complex so
// realness of their sum stays checkable. cross and cross_conj are the two
// interference blocks; sum() applies the parity signs and normalization.
struct WignerBlocks {
  std::complex<double> lobe_pos;
  std::complex<double> lobe_neg;
  std::complex<double> cross;
  std::complex<double> cross_conj;
  double norm_even = 1.0;
  double norm_odd = 1.0;

  std::complex<double> sum(Parity parity) const;
};

WignerBlocks blocks_ideal(const CatState& state, PhasePoint pt);
WignerBlocks blocks_transformed(const CatState& state,
                                const ChannelParams& ch, PhasePoint pt);

// Gaussian kernel density K(X, P, x', p') mapping source to output plane.
double kernel_density(const ChannelParams& ch, PhasePoint source,
                      PhasePoint out);

// Output-plane Wigner value by integrating the ideal blocks against the
// kernel over the source plane. Axes with sigma = 0 collapse to the exact
// point evaluation at x'/f.
double wigner_numeric(const CatState& state, const ChannelParams& ch,
                      PhasePoint pt, const QuadratureSpec& spec);
QuadratureResult wigner_numeric_checked(const CatState& state,
                                        const ChannelParams& ch,
                                        PhasePoint pt,
                                        const QuadratureSpec& spec,
                                        double tol = 1e-9);

// Plain 2-D quadrature of f over the square [-R, R]^2.
double integrate_phase_space(const std::function<double(double, double)>& f,
                             const QuadratureSpec& spec);
QuadratureResult integrate_phase_space_checked(
    const std::function<double(double, double)>& f,
    const QuadratureSpec& spec, double tol = 1e-9);

// Defining integrals of the distance module, via the blocks route.
double purity_numeric(const CatState& state, const ChannelParams& ch,
                      const QuadratureSpec& spec);
double overlap_numeric(double x0, double p0, const ChannelParams& ch,
                       const QuadratureSpec& spec);
double distance_numeric(double x0, double p0, const ChannelParams& ch,
                        const QuadratureSpec& spec);

}  // namespace catshield::oracle
