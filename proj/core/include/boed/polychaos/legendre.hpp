#ifndef BOED_POLYCHAOS_LEGENDRE_HPP
#define BOED_POLYCHAOS_LEGENDRE_HPP

#include <span>

namespace boed::polychaos {

/// Arguments this far outside [-1, 1] are clamped; anything further is rejected.
inline constexpr double kLegendreClampTolerance = 1e-12;

/// Unnormalized Legendre polynomial psi_n(xi) with psi_n(1) = 1, via the
/// three-term recurrence.
double legendre_value(int n, double xi);

/// d psi_n / d xi from the differentiated three-term recurrence. Finite at
/// xi = +-1, unlike the closed form that divides by (1 - xi^2).
double legendre_derivative(int n, double xi);

/// Fills values[k] = psi_k(xi) and derivatives[k] = psi_k'(xi) for
/// k = 0..max_degree. Both spans must hold max_degree + 1 entries.
/// No clamping or range check; callers map xi into [-1, 1] first.
void legendre_table(int max_degree, double xi, std::span<double> values,
                    std::span<double> derivatives);

/// E[psi_n^2] under the uniform density on [-1, 1].
inline double legendre_norm_squared(int n) { return 1.0 / (2.0 * n + 1.0); }

}  // namespace boed::polychaos

#endif  // BOED_POLYCHAOS_LEGENDRE_HPP
