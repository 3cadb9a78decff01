#include "stokes_outflow/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stokes_outflow {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), ld_(2 * kl + ku + 1), ab_(ld_ * n, 0.0) {}

bool BandedMatrix::in_band(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) return false;
  return (i <= j + kl_) && (j <= i + ku_);
}

cplx& BandedMatrix::operator()(std::size_t i, std::size_t j) {
  if (!in_band(i, j))
    throw Error(ErrorKind::InvalidArgument,
                "band entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside band");
  return raw(i, j);
}

cplx BandedMatrix::operator()(std::size_t i, std::size_t j) const {
  if (!in_band(i, j)) return 0.0;
  return ab_[(kl_ + ku_ + i - j) + j * ld_];
}

CVec BandedMatrix::multiply(const CVec& x) const {
  CVec y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > kl_ ? i - kl_ : 0;
    const std::size_t j1 = std::min(n_ - 1, i + ku_);
    for (std::size_t j = j0; j <= j1; ++j) y[i] += (*this)(i, j) * x[j];
  }
  return y;
}

BandedLU::BandedLU(BandedMatrix a) : lu_(std::move(a)), piv_(lu_.n_) {
  const std::size_t n = lu_.n_, kl = lu_.kl_, ku = lu_.ku_;
  const std::size_t kw = kl + ku;  // upper bandwidth after pivoting
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t last = std::min(n - 1, j + kl);
    std::size_t p = j;
    double best = std::abs(lu_.raw(j, j));
    for (std::size_t i = j + 1; i <= last; ++i) {
      const double m = std::abs(lu_.raw(i, j));
      if (m > best) {
        best = m;
        p = i;
      }
    }
    if (!(best > 0.0) || !std::isfinite(best))
      throw Error(ErrorKind::SingularDiscreteSystem, "zero pivot in column " + std::to_string(j));
    piv_[j] = p;
    const std::size_t cend = std::min(n - 1, j + kw);
    if (p != j)
      for (std::size_t k = j; k <= cend; ++k) std::swap(lu_.raw(j, k), lu_.raw(p, k));
    const cplx d = lu_.raw(j, j);
    for (std::size_t i = j + 1; i <= last; ++i) {
      cplx& l = lu_.raw(i, j);
      if (l == 0.0) continue;
      l /= d;
      for (std::size_t k = j + 1; k <= cend; ++k) lu_.raw(i, k) -= l * lu_.raw(j, k);
    }
  }
}

void BandedLU::solve_in_place(CVec& b) const {
  const std::size_t n = lu_.n_, kl = lu_.kl_, kw = lu_.kl_ + lu_.ku_;
  if (b.size() != n) throw Error(ErrorKind::InvalidArgument, "BandedLU: right-hand side size mismatch");
  auto at = [&](std::size_t i, std::size_t j) { return lu_.ab_[(kw + i - j) + j * lu_.ld_]; };
  for (std::size_t j = 0; j < n; ++j) {
    if (piv_[j] != j) std::swap(b[j], b[piv_[j]]);
    const std::size_t last = std::min(n - 1, j + kl);
    for (std::size_t i = j + 1; i <= last; ++i) b[i] -= at(i, j) * b[j];
  }
  for (std::size_t j = n; j-- > 0;) {
    b[j] /= at(j, j);
    const std::size_t first = j > kw ? j - kw : 0;
    for (std::size_t i = first; i < j; ++i) b[i] -= at(i, j) * b[j];
  }
}

}  // namespace stokes_outflow
