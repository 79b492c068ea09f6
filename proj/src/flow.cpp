#include "bracketflow/flow.hpp"

#include "bracketflow/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace bflow {

namespace odeint = boost::numeric::odeint;
using State = std::vector<double>;

std::string to_string(FlowVariant v) {
  switch (v) {
    case FlowVariant::Raw: return "raw";
    case FlowVariant::Gauged: return "gauged";
    case FlowVariant::ScalStarNormalized: return "scalstar-normalized";
    case FlowVariant::ScalNormalized: return "scal-normalized";
    case FlowVariant::NormalizedUngauged: return "normalized-ungauged";
  }
  return "?";
}

FlowVariant parse_variant(const std::string& s) {
  for (auto v : {FlowVariant::Raw, FlowVariant::Gauged, FlowVariant::ScalStarNormalized, FlowVariant::ScalNormalized,
                 FlowVariant::NormalizedUngauged}) {
    if (s == to_string(v)) return v;
  }
  throw UnknownName("unknown flow variant '" + s + "'");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::ReachedTEnd: return "ReachedTEnd";
    case Termination::Converged: return "Converged";
    case Termination::Diverged: return "Diverged";
    case Termination::StepFailure: return "StepFailure";
  }
  return "?";
}

namespace {

bool needs_label(FlowVariant v) {
  return v == FlowVariant::Gauged || v == FlowVariant::ScalStarNormalized || v == FlowVariant::ScalNormalized;
}

bool normalized(FlowVariant v) {
  return v == FlowVariant::ScalStarNormalized || v == FlowVariant::ScalNormalized ||
         v == FlowVariant::NormalizedUngauged;
}

BracketTensor from_state(int n, const State& x) {
  BracketTensor mu(n);
  std::copy(x.begin(), x.end(), mu.data().begin());
  return mu;
}

}  // namespace

Endomorphism flow_generator(FlowVariant v, const CurvaturePack& p, const BetaDecomposition* dec) {
  const auto n = p.Ric.rows();
  switch (v) {
    case FlowVariant::Raw:
      return p.Ric;
    case FlowVariant::Gauged:
      if (!dec) throw GaugeMismatch("gauged flow needs a stratum label");
      return project_qbeta(p.RicStar, *dec);
    case FlowVariant::ScalStarNormalized:
    case FlowVariant::ScalNormalized:
      if (!dec) throw GaugeMismatch("normalized gauged flow needs a stratum label");
      return project_qbeta(p.RicStar, *dec) + p.RicStar.squaredNorm() * Endomorphism::Identity(n, n);
    case FlowVariant::NormalizedUngauged:
      return p.Ric + p.RicStar.squaredNorm() * Endomorphism::Identity(n, n);
  }
  return p.Ric;
}

BracketTensor flow_field(FlowVariant v, const BracketTensor& mu, const BetaDecomposition* dec) {
  const CurvaturePack p = curvature_pack_unchecked(mu);
  BracketTensor out = pi_action(flow_generator(v, p, dec), mu);
  out *= -1.0;
  return out;
}

Monitors compute_monitors(double t, const BracketTensor& mu, const CurvaturePack& p, const Endomorphism* beta) {
  Monitors m;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  m.typeIII = t * p.normSq;
  m.ricBound = t * p.Ric.norm();
  m.jacobiRes = jacobi_residual(mu);
  if (beta) {
    const double rb = gl_dot(p.RicStar, *beta);
    const double rr = p.RicStar.squaredNorm();
    const double a = std::abs(p.scalStar);
    m.lyapunovIntegrand = rr + p.scalStar * rb;
    m.csEstimate = rb - a * beta->squaredNorm();
    m.f = a > 0.0 ? rr / (a * a) - rb / a : nan;
  } else {
    m.lyapunovIntegrand = m.csEstimate = m.f = nan;
  }
  return m;
}

FlowTrajectory integrate(const BracketTensor& mu0, const FlowSpec& spec) {
  require_lie(mu0, "integrate");
  const int n = mu0.dim();
  if (!(spec.tEnd > 0.0) || !(spec.recordEvery > 0.0) || !(spec.relTol > 0.0) || !(spec.absTol > 0.0)) {
    throw OutOfRange("tEnd, recordEvery and tolerances must be positive");
  }
  std::optional<BetaDecomposition> dec;
  if (spec.label) {
    if (spec.label->beta.rows() != n) throw DimensionMismatch("label dimension differs from the bracket");
    dec = beta_decomposition(*spec.label);
  }
  if (needs_label(spec.variant)) {
    if (!dec) throw GaugeMismatch(to_string(spec.variant) + " flow needs a stratum label");
    const GaugeCheck g = check_gauged(mu0, *dec);
    if (!g.inVgeq0) {
      throw GaugeMismatch("initial bracket has a negative pi(beta+) component of norm " +
                          std::to_string(g.negComponentNorm));
    }
  }
  const FlowVariant field = spec.variant == FlowVariant::ScalNormalized ? FlowVariant::ScalStarNormalized : spec.variant;
  const BetaDecomposition* decp = dec ? &*dec : nullptr;
  const Endomorphism* beta = spec.label ? &spec.label->beta : nullptr;

  FlowTrajectory traj;
  traj.variant = spec.variant;
  traj.label = spec.label;

  BracketTensor mu = mu0;
  if (normalized(field)) {
    const double ss = curvature_pack_unchecked(mu).scalStar;
    if (!(ss < 0.0)) throw OutOfRange("normalized flows need scal* < 0, got " + std::to_string(ss));
    mu *= 1.0 / std::sqrt(-ss);
  }
  const double cap = 1e12 * std::max(mu.norm(), 1e-300);

  auto record = [&](double t, const BracketTensor& b) {
    FlowSample s;
    s.t = t;
    s.mu = b;
    s.pack = curvature_pack_unchecked(b);
    s.mon = compute_monitors(t, b, s.pack, beta);
    s.mon.fieldNorm = flow_field(field, b, decp).norm();
    traj.samples.push_back(std::move(s));
  };

  auto system = [&](const State& x, State& dxdt, double /*t*/) {
    const BracketTensor b = from_state(n, x);
    const BracketTensor d = flow_field(field, b, decp);
    std::copy(d.data().begin(), d.data().end(), dxdt.begin());
  };

  auto stepper = odeint::make_controlled(spec.absTol, spec.relTol, odeint::runge_kutta_dopri5<State>());
  State x(mu.data().begin(), mu.data().end());
  double t = 0.0;
  double dt = std::min(1e-3, spec.recordEvery);
  long nextRecord = 1;
  record(0.0, mu);

  auto converged = [&]() {
    if (static_cast<int>(traj.samples.size()) < kConvWindow) return false;
    for (auto it = traj.samples.end() - kConvWindow; it != traj.samples.end(); ++it) {
      const double nm = std::sqrt(it->pack.normSq);
      if (it->mon.fieldNorm > kConvTol * (1.0 + nm * nm * nm)) return false;
    }
    return true;
  };

  while (t < spec.tEnd) {
    if (traj.steps >= spec.maxSteps) {
      traj.terminationReason = Termination::StepFailure;
      traj.message = "step budget exhausted";
      break;
    }
    const double tRec = std::min(spec.tEnd, static_cast<double>(nextRecord) * spec.recordEvery);
    dt = std::min(dt, tRec - t);
    const auto r = stepper.try_step(system, x, t, dt);
    if (r == odeint::fail) {
      if (dt < 1e-14 * std::max(1.0, t)) {
        traj.terminationReason = Termination::StepFailure;
        traj.message = "step size underflow at t = " + std::to_string(t);
        break;
      }
      continue;
    }
    ++traj.steps;
    mu = from_state(n, x);
    bool touched = false;
    if (normalized(field)) {
      const double ss = curvature_pack_unchecked(mu).scalStar;
      if (!(ss < 0.0)) {
        traj.terminationReason = Termination::Diverged;
        traj.message = "scal* left the negative half-line";
        break;
      }
      traj.maxDrift = std::max(traj.maxDrift, std::abs(ss + 1.0));
      if (std::abs(ss + 1.0) > 0.5 * kDriftTol) {
        mu *= 1.0 / std::sqrt(-ss);
        ++traj.renormalizations;
        touched = true;
      }
    }
    const double nm = mu.norm();
    if (!std::isfinite(nm) || nm > cap) {
      traj.terminationReason = Termination::Diverged;
      traj.message = "bracket norm exceeded the blow-up cap";
      break;
    }
    if (jacobi_residual(mu) > 1e-6 * (1.0 + nm * nm)) {
      traj.terminationReason = Termination::StepFailure;
      traj.message = "Jacobi identity drifted at t = " + std::to_string(t);
      break;
    }
    if (touched) {
      std::copy(mu.data().begin(), mu.data().end(), x.begin());
      stepper.reset();
    }
    // the stepper may have shrunk dt only to hit the record time
    if (t >= tRec - 1e-12 * std::max(1.0, tRec)) {
      t = tRec;
      record(t, mu);
      ++nextRecord;
      if (spec.stopOnConvergence && converged()) {
        traj.terminationReason = Termination::Converged;
        break;
      }
    }
  }

  if (spec.variant == FlowVariant::ScalNormalized) {
    for (auto& s : traj.samples) {
      const double sc = s.pack.scal;
      if (!(sc < 0.0)) continue;
      s.mu *= 1.0 / std::sqrt(-sc);
      s.pack = curvature_pack_unchecked(s.mu);
      const double jr = s.mon.jacobiRes;
      s.mon = compute_monitors(s.t, s.mu, s.pack, beta);
      s.mon.jacobiRes = jr / (-sc);
      s.mon.fieldNorm = flow_field(field, s.mu, decp).norm();
    }
  }
  return traj;
}

namespace {

BracketTensor hermite(const FlowTrajectory& traj, double t, const BetaDecomposition* dec) {
  const auto& s = traj.samples;
  if (s.empty()) throw OutOfRange("empty trajectory");
  if (t < s.front().t - 1e-12 || t > s.back().t + 1e-12) throw OutOfRange("time outside the trajectory");
  auto it = std::lower_bound(s.begin(), s.end(), t, [](const FlowSample& a, double v) { return a.t < v; });
  if (it == s.end()) return s.back().mu;
  if (std::abs(it->t - t) <= 1e-12 * std::max(1.0, t)) return it->mu;
  if (it == s.begin()) return it->mu;
  const FlowSample& a = *(it - 1);
  const FlowSample& b = *it;
  const FlowVariant field =
      traj.variant == FlowVariant::ScalNormalized ? FlowVariant::ScalStarNormalized : traj.variant;
  const double h = b.t - a.t;
  const double u = (t - a.t) / h;
  const BracketTensor da = flow_field(field, a.mu, dec);
  const BracketTensor db = flow_field(field, b.mu, dec);
  const double h00 = 2 * u * u * u - 3 * u * u + 1, h10 = u * u * u - 2 * u * u + u;
  const double h01 = -2 * u * u * u + 3 * u * u, h11 = u * u * u - u * u;
  return h00 * a.mu + (h10 * h) * da + h01 * b.mu + (h11 * h) * db;
}

}  // namespace

BracketTensor interpolate(const FlowTrajectory& traj, double t) {
  std::optional<BetaDecomposition> dec;
  if (traj.label) dec = beta_decomposition(*traj.label);
  return hermite(traj, t, dec ? &*dec : nullptr);
}

GaugePath recover_gauge(const FlowTrajectory& traj, const Endomorphism& h0) {
  if (traj.variant == FlowVariant::ScalNormalized) {
    throw OutOfRange("gauge recovery runs on the unrescaled scal*-normalized trajectory");
  }
  const auto& s = traj.samples;
  if (s.empty()) throw OutOfRange("empty trajectory");
  const int n = s.front().mu.dim();
  if (h0.rows() != n || h0.cols() != n) throw DimensionMismatch("h0 has the wrong shape");
  std::optional<BetaDecomposition> dec;
  if (traj.label) dec = beta_decomposition(*traj.label);
  const BetaDecomposition* decp = dec ? &*dec : nullptr;

  for (std::size_t k = 1; k < s.size(); ++k) {
    const double jump = (s[k].mu - s[k - 1].mu).norm();
    if (jump > 0.5 * s[k - 1].mu.norm()) {
      throw InterpolationGap("samples at t = " + std::to_string(s[k - 1].t) + " and " + std::to_string(s[k].t) +
                             " are too far apart");
    }
  }

  GaugePath path;
  State x(static_cast<std::size_t>(n) * n);
  Eigen::Map<Endomorphism>(x.data(), n, n) = h0;
  auto push = [&](double t) {
    const Endomorphism h = Eigen::Map<const Endomorphism>(x.data(), n, n);
    path.t.push_back(t);
    path.h.push_back(h);
    path.det.push_back(h.determinant());
    path.norm.push_back(h.norm());
  };
  push(s.front().t);

  // Integrate the bracket alongside h on each sample interval, restarting the
  // bracket from the recorded sample, so no interpolation error enters h.
  const std::size_t nv = s.front().mu.size();
  const std::size_t nh = static_cast<std::size_t>(n) * n;
  auto system = [&](const State& y, State& dydt, double) {
    BracketTensor mu(n);
    std::copy(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(nv), mu.data().begin());
    const Endomorphism b = flow_generator(traj.variant, curvature_pack_unchecked(mu), decp);
    const BracketTensor dmu = pi_action(b, mu);
    for (std::size_t i = 0; i < nv; ++i) dydt[i] = -dmu.data()[i];
    const Endomorphism h = Eigen::Map<const Endomorphism>(y.data() + nv, n, n);
    Eigen::Map<Endomorphism>(dydt.data() + nv, n, n) = -b * h;
  };
  auto stepper = odeint::make_controlled(1e-12, 1e-10, odeint::runge_kutta_dopri5<State>());
  State y(nv + nh);
  for (std::size_t k = 1; k < s.size(); ++k) {
    std::copy(s[k - 1].mu.data().begin(), s[k - 1].mu.data().end(), y.begin());
    std::copy(x.begin(), x.end(), y.begin() + static_cast<std::ptrdiff_t>(nv));
    odeint::integrate_adaptive(stepper, system, y, s[k - 1].t, s[k].t, (s[k].t - s[k - 1].t) / 4.0);
    std::copy(y.begin() + static_cast<std::ptrdiff_t>(nv), y.end(), x.begin());
    push(s[k].t);
  }
  return path;
}

double gauge_increment(const GaugePath& path, double t1, double t2) {
  auto find = [&](double t) {
    auto it = std::lower_bound(path.t.begin(), path.t.end(), t - 1e-9 * std::max(1.0, t));
    if (it == path.t.end() || std::abs(*it - t) > 1e-6 * std::max(1.0, t)) {
      throw OutOfRange("no gauge sample at t = " + std::to_string(t));
    }
    return static_cast<std::size_t>(it - path.t.begin());
  };
  const Endomorphism& h1 = path.h[find(t1)];
  const Endomorphism& h2 = path.h[find(t2)];
  const auto n = h1.rows();
  return (h2 * h1.inverse() - Endomorphism::Identity(n, n)).norm();
}

double blowdown_check(const FlowTrajectory& traj, double s) {
  if (traj.variant != FlowVariant::Raw) throw OutOfRange("blow-down needs a raw trajectory");
  if (!(s >= 1.0)) throw OutOfRange("blow-down factor must be >= 1");
  if (traj.samples.empty() || s > traj.samples.back().t + 1e-12) throw OutOfRange("trajectory does not reach t = s");
  const BracketTensor mus = interpolate(traj, s);
  if (s == 1.0) return std::abs(interpolate(traj, 1.0).norm() - mus.norm());
  FlowSpec spec;
  spec.variant = FlowVariant::Raw;
  spec.tEnd = 1.0;
  spec.recordEvery = 1.0 / 64.0;
  spec.relTol = 1e-11;
  spec.absTol = 1e-14;
  spec.stopOnConvergence = false;
  const FlowTrajectory re = integrate(std::sqrt(s) * traj.samples.front().mu, spec);
  if (re.samples.back().t < 1.0 - 1e-12) throw OutOfRange("rescaled flow stopped early");
  return std::abs(re.samples.back().mu.norm() - std::sqrt(s) * mus.norm());
}

SolitonConvergence detect_soliton_convergence(const FlowTrajectory& traj, double cauchyTol) {
  SolitonConvergence out;
  const auto& s = traj.samples;
  if (s.empty()) return out;
  out.limit = s.back().mu;
  const std::size_t w = std::min<std::size_t>(kConvWindow, s.size());
  double fmax = 0.0;
  for (std::size_t k = s.size() - w; k < s.size(); ++k) {
    const double f = s[k].mon.f;
    fmax = std::isnan(f) ? std::numeric_limits<double>::infinity() : std::max(fmax, f);
  }
  out.fTail = fmax;
  out.cauchy = (s.back().mu - s[s.size() - w].mu).norm();
  out.converged = w == static_cast<std::size_t>(kConvWindow) && fmax <= kFTol && out.cauchy <= cauchyTol;
  return out;
}

}  // namespace bflow
