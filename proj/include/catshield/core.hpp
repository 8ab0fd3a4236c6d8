#pragma once

#include <stdexcept>

// Phase-space conventions used everywhere in this library:
//   - quadratures obey [x, p] = i, so the vacuum Wigner function is
//     exp(-x^2 - p^2) / pi and the vacuum variance is 0.5 per quadrature;
//   - a cat state is the parity-definite superposition of coherent states
//     |+xi> and |-xi> with sqrt(2) xi = x0 + i p0;
//   - squeezing rates are in nats, positive rate shrinks x and stretches p;
//   - rates quoted in dB refer to the variance ratio, db = 10 log10 e^{2r}.

namespace catshield {

enum class Parity { Even, Odd };

struct CatState {
  double x0 = 0.0;
  double p0 = 0.0;
  Parity parity = Parity::Odd;

  // 2|xi|^2, the separation scale between the two lobes
  double magnitude_sq() const { return x0 * x0 + p0 * p0; }
};

// Separable Gaussian kernel acting on Wigner functions: each axis is scaled
// by a gain f and convolved with Gaussian noise of variance sigma/2, so a
// point mass at x0 ends up as a Gaussian of variance sigma_x/2 at f_x*x0.
// v_x and v_p are the total output variances (times two) of a vacuum input.
struct ChannelParams {
  double f_x = 1.0;
  double f_p = 1.0;
  double sigma_x = 0.0;
  double sigma_p = 0.0;

  double v_x() const { return sigma_x + f_x * f_x; }
  double v_p() const { return sigma_p + f_p * f_p; }
};

struct PhasePoint {
  double x = 0.0;
  double p = 0.0;
};

inline ChannelParams identity_channel() { return {1.0, 1.0, 0.0, 0.0}; }

// Throw std::invalid_argument on out-of-domain fields. The odd cat state is
// undefined at zero amplitude; gains must be positive, noises non-negative.
void check_state(const CatState& state);
void check_channel(const ChannelParams& ch);

double db_to_nats(double db);
double nats_to_db(double nats);

// Wigner function of the ideal cat state. Exact, quadrature-free; safe for
// large amplitudes (every exponent is non-positive).
double wigner_ideal(const CatState& state, PhasePoint pt);

// Wigner function after the channel: two displaced Gaussian lobes plus a
// damped interference fringe. Reduces to wigner_ideal for the identity.
double wigner_transformed(const CatState& state, const ChannelParams& ch,
                          PhasePoint pt);

}  // namespace catshield
