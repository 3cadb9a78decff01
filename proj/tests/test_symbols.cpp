#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stokes_outflow/symbols.hpp"
#include "support.hpp"

using namespace stokes_outflow;
using namespace stokes_outflow::test;

namespace {

/// Direct evaluation of lambda_eps (beta + beta_v beta_w i zeta^T B^{-1} i zeta)^{-1}
/// through the explicit inverse; accurate for moderate moduli only.
cplx fdo_pi_naive(const ModelParams& p, const Mode& m) {
  const double sr = std::sqrt(p.reynolds);
  const double z = m.zeta_abs;
  const cplx bv = p.alpha * sr * m.lambda_eps + p.reynolds * p.sigma * z;
  const cplx bw = p.alpha * sr * m.lambda_eps + p.reynolds * p.sigma * m.omega;
  const cplx beta = m.lambda_eps + bv * z;
  CVec izeta(m.zeta.size());
  for (std::size_t k = 0; k < izeta.size(); ++k) izeta[k] = cplx(0.0, m.zeta[k]);
  const CVec binv = b_inverse_apply(p, m, izeta);
  cplx q = 0.0;
  for (std::size_t k = 0; k < izeta.size(); ++k) q += izeta[k] * binv[k];
  return m.lambda_eps / (beta + bv * bw * q);
}

}  // namespace

TEST_CASE("property: TDO components") {
  Rng rng(21);
  for (int i = 0; i < 3000; ++i) {
    const ModelParams p = random_params(rng);
    const Mode m = make_mode(p, sector_lambda(rng, -6.0, 6.0), random_xi(rng, 1 + i % 2, -6.0, 6.0));
    const TdoComponents c = tdo_components(p, m);
    REQUIRE(rel(c.m1 + c.m2 + c.m3, 1.0) < 1e-12);
    REQUIRE(rel(c.M, (c.m1 + c.m2 + c.m3 * c.mu) * m.omega * (m.omega + m.zeta_abs)) < 1e-12);
    REQUIRE(rel(c.M, tdo_compact_symbol(p, m)) < 1e-12);
  }
}

TEST_CASE("property: Sigma + Pi = 1 for NDO and FDO") {
  Rng rng(22);
  for (int i = 0; i < 3000; ++i) {
    const ModelParams p = random_params(rng);
    const Mode m = make_mode(p, sector_lambda(rng, -6.0, 6.0), random_xi(rng, 1 + i % 2, -6.0, 6.0));
    const SigmaPi n = ndo_symbols(p, m);
    const SigmaPi f = fdo_symbols(p, m);
    REQUIRE(std::isfinite(std::abs(f.pi_sym)));
    REQUIRE(std::abs(n.sigma_sym + n.pi_sym - 1.0) < 1e-12 * std::max(1.0, std::abs(n.sigma_sym)));
    REQUIRE(std::abs(f.sigma_sym + f.pi_sym - 1.0) < 1e-12 * std::max(1.0, std::abs(f.sigma_sym)));
  }
}

TEST_CASE("property: FDO two routes agree") {
  Rng rng(23);
  for (int i = 0; i < 3000; ++i) {
    const ModelParams p = random_params(rng);
    const Mode m = make_mode(p, sector_lambda(rng, -2.0, 2.0), random_xi(rng, 1 + i % 2, -1.0, 1.0));
    const cplx pi = fdo_symbols(p, m).pi_sym;
    REQUIRE(rel(pi, fdo_pi_via_inverse(p, m)) < 1e-10);
    REQUIRE(rel(pi, fdo_pi_naive(p, m)) < 1e-10);
  }
}

TEST_CASE("FDO inverse route stays accurate when |zeta|^2 dominates") {
  const ModelParams p = make_params(0.3, 5.0, 0.7, 0.2);
  for (double xi : {1e3, 1e4, 1e5, 1e6}) {
    const Mode m = make_mode(p, cplx(1e-4, 2e-4), {xi});
    CHECK(rel(fdo_symbols(p, m).pi_sym, fdo_pi_via_inverse(p, m)) < 1e-10);
  }
}

TEST_CASE("symbols at the zero mode") {
  const ModelParams p = make_params(0.5, 2.0, 1.0, 0.3);
  const Mode m = make_mode(p, cplx(1.0, 1.0), {0.0});
  const SigmaPi f = fdo_symbols(p, m);
  CHECK(std::abs(f.sigma_sym) < 1e-15);
  CHECK(std::abs(f.pi_sym - 1.0) < 1e-15);
  const SigmaPi n = ndo_symbols(p, m);
  CHECK(std::abs(n.sigma_sym) < 1e-15);
  CHECK(std::abs(n.pi_sym - 1.0) < 1e-15);
}

TEST_CASE("property: B and its inverse") {
  Rng rng(24);
  for (int i = 0; i < 1000; ++i) {
    const ModelParams p = random_params(rng);
    const Mode m = make_mode(p, sector_lambda(rng, -3.0, 3.0), random_xi(rng, 2, -3.0, 3.0));
    const CVec v = {random_cplx(rng), random_cplx(rng)};
    const CVec back = b_apply(p, m, b_inverse_apply(p, m, v));
    for (std::size_t k = 0; k < v.size(); ++k) REQUIRE(std::abs(back[k] - v[k]) < 1e-12 * (std::abs(v[0]) + std::abs(v[1])));
  }
  const ModelParams p = make_params(1.0, 1.0, 0.0, 1.0);
  const Mode m = make_mode(p, 0.0, {1.0, 2.0});
  CHECK(error_kind_of([&] { b_inverse_apply(p, m, {1.0}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("parabolic dynamic-boundary symbol") {
  CHECK(std::abs(dbc_parabolic_symbol(1.0, 1.0, 1.0, 1.0, 0.0, 0.0) - 0.5) < 1e-15);
  Rng rng(25);
  for (int i = 0; i < 200; ++i) {
    const double le = log_uniform(rng, -3.0, 3.0);
    const double ab = log_uniform(rng, -1.0, 1.0);
    const cplx s = dbc_parabolic_symbol(ab, log_uniform(rng, -1.0, 1.0), log_uniform(rng, -1.0, 1.0), 0.0, le,
                                        log_uniform(rng, -2.0, 2.0));
    REQUIRE(s.imag() == 0.0);
    REQUIRE(s.real() > 0.0);
    REQUIRE(s.real() < 1.0 / (ab * le));
  }
  // Decay like 1/(beta |xi|).
  const double beta = 2.0;
  for (double xi : {1e3, 1e4})
    CHECK(std::abs(dbc_parabolic_symbol(1.0, beta, 1.0, 1.0, 0.0, xi) * beta * xi - 1.0) < 2e-3);
  CHECK(error_kind_of([] { dbc_parabolic_symbol(0.0, 1.0, 1.0, 1.0, 0.0, 1.0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("alpha limit probe") {
  const ModelParams p = make_params(1.0, 2.0, 0.5, 0.2);
  const Mode m = make_mode(p, cplx(1.0, 0.5), {1.5});
  const auto pts = alpha_limit_probe(p, m, {1e-2, 1e-3, 1e-4, 0.0});
  REQUIRE(pts.size() == 4);
  CHECK(std::abs(pts[0].symbols.sigma_sym) > std::abs(pts[1].symbols.sigma_sym));
  CHECK(std::abs(pts[1].symbols.sigma_sym) > std::abs(pts[2].symbols.sigma_sym));
  const double r1 = std::abs(pts[1].symbols.sigma_sym) / 1e-3;
  const double r2 = std::abs(pts[2].symbols.sigma_sym) / 1e-4;
  CHECK(std::abs(r1 - r2) / r2 < 0.05);
  CHECK(std::abs(pts[3].symbols.sigma_sym) == 0.0);
  CHECK(std::abs(pts[3].symbols.pi_sym - 1.0) == 0.0);

  const Mode m0 = make_mode(p, cplx(1.0, 0.5), {0.0});
  for (const auto& pt : alpha_limit_probe(p, m0, {1.0, 0.1}, LimitVariant::FDO)) {
    CHECK(std::abs(pt.symbols.sigma_sym) == 0.0);
    CHECK(std::abs(pt.symbols.pi_sym - 1.0) < 1e-15);
  }
  CHECK(error_kind_of([&] { alpha_limit_probe(p, m, {1e-3, 1e-2}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("sector_verify argument certificate and determinism") {
  const ModelParams p = make_params(1.0, 1.0, 0.5, 0.1);
  const SymbolReport a = sector_verify(p, kPi / 4.0, 2000, 7);
  const SymbolReport b = sector_verify(p, kPi / 4.0, 2000, 7);
  CHECK(a.violations == 0);
  CHECK(a.identity_failures == 0);
  CHECK(symbol_report_csv(a) == symbol_report_csv(b));
  CHECK(symbol_report_csv(a).rfind("symbol_name,theta,n_samples,sup_abs,inf_abs_recip,arg_min,arg_max,violations\n", 0) == 0);
  for (const auto& s : a.symbols) CHECK(std::isfinite(s.sup_abs));
  const SymbolReport ndo = sector_verify(p, kPi / 4.0, 100, 7, SymbolSelector::Ndo);
  CHECK(ndo.find("m1") == nullptr);
  CHECK(error_kind_of([&] { sector_verify(p, 2.0, 10, 1); }) == ErrorKind::InvalidArgument);
  CHECK(parse_symbol_selector("FDO") == SymbolSelector::Fdo);
}
