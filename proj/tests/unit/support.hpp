#pragma once

#include <complex>
#include <random>

#include "nlqm/algebra.hpp"

namespace nlqm::gen {

inline StateVector random_state(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  StateVector v(dim);
  for (int k = 0; k < dim; ++k) v(k) = Complex{n(rng), n(rng)};
  return v.normalized();
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex{n(rng), n(rng)};
  return 0.5 * (m + m.adjoint());
}

inline ComplexMatrix random_unitary(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex{n(rng), n(rng)};
  Eigen::HouseholderQR<ComplexMatrix> qr(m);
  return qr.householderQ();
}

inline Complex random_complex(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * 3.141592653589793 * u(rng));
}

}  // namespace nlqm::gen
