#include "oracles.hpp"

#include "boed/polychaos/quadrature.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <set>
#include <vector>

using namespace boed::polychaos;

namespace {

double monomial_integral(const QuadratureRule& rule, const std::vector<int>& e) {
  return rule.integrate([&](const Eigen::VectorXd& x) {
    double p = 1.0;
    for (std::size_t l = 0; l < e.size(); ++l) p *= std::pow(x[static_cast<Eigen::Index>(l)], e[l]);
    return p;
  });
}

double exact_moment(const std::vector<int>& e) {
  double p = 1.0;
  for (int k : e) p *= oracle::uniform_moment(k);
  return p;
}

}  // namespace

TEST_CASE("Clenshaw-Curtis 1-D rules") {
  const auto r0 = clenshaw_curtis_1d(0);
  REQUIRE(r0.size() == 1);
  CHECK(r0.nodes(0, 0) == 0.0);
  CHECK(r0.weights[0] == doctest::Approx(1.0));

  const auto r1 = clenshaw_curtis_1d(1);
  REQUIRE(r1.size() == 3);
  CHECK(r1.nodes(0, 0) == doctest::Approx(-1.0));
  CHECK(r1.nodes(1, 0) == 0.0);
  CHECK(r1.nodes(2, 0) == doctest::Approx(1.0));
  CHECK(r1.weights[0] == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(r1.weights[1] == doctest::Approx(4.0 / 6).epsilon(1e-14));
  CHECK(r1.weights[2] == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(monomial_integral(r1, {2}) == doctest::Approx(1.0 / 3).epsilon(1e-14));

  for (int level = 0; level <= 8; ++level) {
    const auto r = clenshaw_curtis_1d(level);
    CHECK(r.size() == clenshaw_curtis_size(level));
    CHECK(r.size() == (level == 0 ? 1u : (1u << level) + 1));
    CHECK(std::abs(r.weights.sum() - 1.0) <= 1e-12);
    // n nodes with n odd integrate degree n exactly
    const int exact_degree = static_cast<int>(r.size()) - (r.size() % 2 ? 0 : 1);
    for (int k = 0; k <= exact_degree; ++k) {
      CHECK(std::abs(monomial_integral(r, {k}) - oracle::uniform_moment(k)) <= 1e-13);
    }
    for (Eigen::Index q = 0; q < r.weights.size(); ++q) CHECK(r.weights[q] > 0.0);
  }
  CHECK_THROWS(clenshaw_curtis_1d(-1));
}

TEST_CASE("Clenshaw-Curtis rules are nested bitwise") {
  for (int level = 1; level <= 6; ++level) {
    const auto coarse = clenshaw_curtis_1d(level - 1);
    const auto fine = clenshaw_curtis_1d(level);
    std::set<double> fine_nodes(fine.nodes.data(), fine.nodes.data() + fine.nodes.size());
    for (Eigen::Index q = 0; q < coarse.nodes.rows(); ++q) CHECK(fine_nodes.count(coarse.nodes(q, 0)) == 1);
  }
}

TEST_CASE("tensor rules") {
  const std::array<int, 2> zero{0, 0};
  const auto r00 = tensor_quadrature(zero);
  REQUIRE(r00.size() == 1);
  CHECK(r00.nodes(0, 0) == 0.0);
  CHECK(r00.nodes(0, 1) == 0.0);
  CHECK(r00.weights[0] == doctest::Approx(1.0));

  const std::array<int, 2> one{1, 1};
  const auto r11 = tensor_quadrature(one);
  CHECK(r11.size() == 9);
  CHECK(std::abs(r11.weights.sum() - 1.0) <= 1e-12);
  CHECK(monomial_integral(r11, {2, 2}) == doctest::Approx(1.0 / 9).epsilon(1e-14));

  // anisotropic levels: exactness per dimension
  const std::array<int, 3> mixed{1, 2, 3};
  const auto r = tensor_quadrature(mixed);
  CHECK(r.size() == 3 * 5 * 9);
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 5; ++b) {
      for (int c = 0; c <= 9; ++c) {
        CHECK(std::abs(monomial_integral(r, {a, b, c}) - exact_moment({a, b, c})) <= 1e-13);
      }
    }
  }
}

TEST_CASE("tensor rules respect the point budget") {
  const std::vector<int> big(4, 10);  // 1025^4 points
  CHECK_THROWS_AS(tensor_quadrature(big), std::length_error);
  const std::array<int, 2> small{2, 2};
  CHECK_THROWS_AS(tensor_quadrature(small, 20), std::length_error);
  CHECK_NOTHROW(tensor_quadrature(small, 25));
}

TEST_CASE("Smolyak rules") {
  for (int dim = 1; dim <= 4; ++dim) {
    const auto r = smolyak_quadrature(dim, 0);
    REQUIRE(r.size() == 1);
    CHECK(r.nodes.row(0).isZero());
    CHECK(r.weights[0] == doctest::Approx(1.0));
  }
  const auto cross = smolyak_quadrature(2, 1);
  CHECK(cross.size() == 5);
  for (int level = 1; level <= 4; ++level) {
    const auto r = smolyak_quadrature(2, level);
    CHECK(std::abs(r.weights.sum() - 1.0) <= 1e-12);
    CHECK(r.integrate([](const Eigen::VectorXd& x) { return x[0] * x[0] + x[1] * x[1]; }) ==
          doctest::Approx(2.0 / 3).epsilon(1e-13));
  }
  // distinct nodes after merging
  const auto r = smolyak_quadrature(3, 3);
  std::set<std::vector<double>> nodes;
  for (Eigen::Index q = 0; q < r.nodes.rows(); ++q) {
    nodes.insert({r.nodes(q, 0), r.nodes(q, 1), r.nodes(q, 2)});
  }
  CHECK(nodes.size() == r.size());
  CHECK_THROWS_AS(smolyak_quadrature(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(smolyak_quadrature(4, 8, 1000), std::length_error);
}

TEST_CASE("Smolyak integrates total-degree monomials like the tensor rule") {
  for (int dim : {2, 3}) {
    for (int level = 1; level <= 4; ++level) {
      const auto sparse = smolyak_quadrature(dim, level);
      const std::vector<int> levels(static_cast<std::size_t>(dim), level);
      const auto full = tensor_quadrature(levels);
      const int max_degree = 2 * level - 1;
      std::vector<int> e(static_cast<std::size_t>(dim), 0);
      // enumerate every exponent vector with total degree <= max_degree
      std::function<void(std::size_t, int)> visit = [&](std::size_t l, int left) {
        if (l == e.size()) {
          const double s = monomial_integral(sparse, e);
          CHECK(std::abs(s - monomial_integral(full, e)) <= 1e-12);
          CHECK(std::abs(s - exact_moment(e)) <= 1e-12);
          return;
        }
        for (int k = 0; k <= left; ++k) {
          e[l] = k;
          visit(l + 1, left - k);
        }
        e[l] = 0;
      };
      visit(0, max_degree);
    }
  }
}

TEST_CASE("Smolyak uses far fewer points than the tensor rule in 4-D") {
  const auto sparse = smolyak_quadrature(4, 4);
  CHECK(sparse.size() < 2000);
  CHECK(sparse.size() > 100);
}
