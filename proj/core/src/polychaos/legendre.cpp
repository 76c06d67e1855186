#include "boed/polychaos/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace boed::polychaos {

namespace {

double checked_argument(int n, double xi) {
  if (n < 0) {
    throw std::invalid_argument("legendre: negative degree " + std::to_string(n));
  }
  if (!std::isfinite(xi) || std::abs(xi) > 1.0 + kLegendreClampTolerance) {
    throw std::domain_error("legendre: argument outside [-1, 1]: " + std::to_string(xi));
  }
  return std::clamp(xi, -1.0, 1.0);
}

}  // namespace

double legendre_value(int n, double xi) {
  xi = checked_argument(n, xi);
  if (n == 0) return 1.0;
  double prev = 1.0;
  double curr = xi;
  for (int k = 2; k <= n; ++k) {
    const double next = (2.0 * k - 1.0) / k * xi * curr - (k - 1.0) / k * prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

double legendre_derivative(int n, double xi) {
  xi = checked_argument(n, xi);
  if (n == 0) return 0.0;
  // psi_{k-1}, psi'_{k-1} and psi'_{k-2} carried along the recurrence.
  double value_prev = 1.0;  // psi_0
  double value_curr = xi;   // psi_1
  double deriv_prev = 0.0;  // psi_0'
  double deriv_curr = 1.0;  // psi_1'
  for (int k = 2; k <= n; ++k) {
    const double a = (2.0 * k - 1.0) / k;
    const double b = (k - 1.0) / k;
    const double deriv_next = a * value_curr + a * xi * deriv_curr - b * deriv_prev;
    const double value_next = a * xi * value_curr - b * value_prev;
    value_prev = value_curr;
    value_curr = value_next;
    deriv_prev = deriv_curr;
    deriv_curr = deriv_next;
  }
  return deriv_curr;
}

void legendre_table(int max_degree, double xi, std::span<double> values,
                    std::span<double> derivatives) {
  values[0] = 1.0;
  derivatives[0] = 0.0;
  if (max_degree == 0) return;
  values[1] = xi;
  derivatives[1] = 1.0;
  for (int k = 2; k <= max_degree; ++k) {
    const double a = (2.0 * k - 1.0) / k;
    const double b = (k - 1.0) / k;
    values[k] = a * xi * values[k - 1] - b * values[k - 2];
    derivatives[k] = a * values[k - 1] + a * xi * derivatives[k - 1] - b * derivatives[k - 2];
  }
}

}  // namespace boed::polychaos
