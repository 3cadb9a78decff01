#pragma once

#include <cstddef>
#include <vector>

#include "stokes_outflow/core.hpp"

namespace stokes_outflow {

/// Complex band matrix with kl sub- and ku super-diagonals, stored with kl
/// extra rows so that LU with partial pivoting can factor in place.
class BandedMatrix {
public:
  BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku);

  std::size_t size() const { return n_; }
  std::size_t lower() const { return kl_; }
  std::size_t upper() const { return ku_; }

  /// Entry (i, j); must lie inside the declared band.
  cplx& operator()(std::size_t i, std::size_t j);
  cplx operator()(std::size_t i, std::size_t j) const;
  bool in_band(std::size_t i, std::size_t j) const;

  /// y = A x using the unfactored band.
  CVec multiply(const CVec& x) const;

private:
  friend class BandedLU;
  std::size_t n_, kl_, ku_, ld_;
  CVec ab_;
  cplx& raw(std::size_t i, std::size_t j) { return ab_[(kl_ + ku_ + i - j) + j * ld_]; }
};

/// LU factorization with partial pivoting of a BandedMatrix.
class BandedLU {
public:
  /// Throws SingularDiscreteSystem when a pivot vanishes.
  explicit BandedLU(BandedMatrix a);

  void solve_in_place(CVec& b) const;
  CVec solve(CVec b) const {
    solve_in_place(b);
    return b;
  }

private:
  BandedMatrix lu_;
  std::vector<std::size_t> piv_;
};

}  // namespace stokes_outflow
