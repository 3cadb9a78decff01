#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "stokes_outflow/core.hpp"

namespace stokes_outflow {

/// Uniform grid on [0, y_max] in the normal direction.
struct YGrid {
  std::size_t n_points = 0;
  double y_max = 0.0;
  double spacing = 0.0;

  double at(std::size_t j) const { return spacing * double(j); }
};

YGrid make_ygrid(std::size_t n_points, double y_max);

/// Grid whose extent covers `decay_lengths` e-folds of the slower of the two
/// decay scales Re(sqrt(Re) omega) and sqrt(Re)|zeta|.
YGrid resolving_ygrid(const ModelParams& params, const Mode& mode, std::size_t n_points,
                      double decay_lengths = 20.0);

struct TimeGrid {
  double dt = 0.0;
  std::size_t n_steps = 0;

  double horizon() const { return dt * double(n_steps); }
};

TimeGrid make_timegrid(double horizon, std::size_t n_steps);

/// Grid samples of one mode of (v, w, p); pressure is reported at the nodes.
struct DiscreteProfile {
  RVec y;
  std::vector<CVec> v;
  CVec w;
  CVec p;
};

/// Finite-difference solve of the ODE boundary value problem for one mode.
/// Velocity lives on the nodes and pressure on the half nodes; interior rows
/// are centered second-order differences, boundary traces use one-sided
/// second-order stencils, and v = w = 0 is imposed at y_max.
DiscreteProfile fd_mode_bvp(const ModelParams& params, const Mode& mode, BoundaryCondition bc,
                            const ModeData& data, const YGrid& ygrid);

/// Relative discrete L2 distance between two profiles on the same grid,
/// taken over all components.
double relative_l2(const DiscreteProfile& a, const DiscreteProfile& b);

/// Fixed Talbot contour s(theta) = r theta (cot theta + i), r = 2 M / (5 t),
/// trapezoidal rule over theta in (-pi, pi) with M = n_nodes.
cplx talbot_invert(const std::function<cplx(cplx)>& symbol_fn, double t, std::size_t n_nodes = 32);

struct TimeSeries {
  RVec t;
  std::vector<DiscreteProfile> frames;
};

/// Implicit Euler time stepping of the shifted evolution problem for one
/// tangential wave vector, from zero initial data. The divergence row is
/// enforced at every time level, so pressure is an algebraic unknown of the
/// same banded system; dynamic boundary rows use the same implicit weighting.
/// h_of_t(t) gives the boundary datum at time t. Frames are kept every
/// `record_every` steps and always at the final step.
TimeSeries step_ibvp(const ModelParams& params, const RVec& xi, BoundaryCondition bc,
                     const std::function<ModeData(double)>& h_of_t, const YGrid& ygrid, const TimeGrid& timegrid,
                     std::size_t record_every = 1);

/// CSV with columns t, y, field_name, re, im.
std::string time_series_csv(const TimeSeries& series);

}  // namespace stokes_outflow
