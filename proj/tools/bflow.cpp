// Command-line front end for the bracket-flow library.
#include "bracketflow/catalog.hpp"
#include "bracketflow/curvature.hpp"
#include "bracketflow/errors.hpp"
#include "bracketflow/experiments.hpp"
#include "bracketflow/flow.hpp"
#include "bracketflow/io.hpp"
#include "bracketflow/lie_structure.hpp"
#include "bracketflow/linearization.hpp"
#include "bracketflow/soliton.hpp"
#include "bracketflow/spectral_type.hpp"
#include "bracketflow/stratification.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

using namespace bflow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNonConvergence = 3;

// A bracket source is either a JSON file or a catalog name with optional
// parameters, e.g. "s3,lambda?lambda=0.5" or "heisenberg?dim=5".
CatalogEntry resolve(const std::string& src) {
  if (std::filesystem::is_regular_file(src)) {
    CatalogEntry e;
    e.name = src;
    e.bracket = read_bracket_file(src);
    e.dim = e.bracket.dim();
    return e;
  }
  const auto q = src.find('?');
  std::map<std::string, double> params;
  if (q != std::string::npos) {
    std::stringstream ss(src.substr(q + 1));
    std::string kv;
    while (std::getline(ss, kv, '&')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ParseError("parameter '" + kv + "' needs key=value");
      try {
        params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
      } catch (const std::exception&) {
        throw ParseError("parameter '" + kv + "' is not numeric");
      }
    }
  }
  return catalog(src.substr(0, q), params);
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

json flat_curvature(const CurvaturePack& p) {
  json j = to_json(p);
  j.erase("M");
  return j;
}

int cmd_classify(const std::string& src) {
  const CatalogEntry e = resolve(src);
  const BracketTensor& mu = e.bracket;
  json out;
  out["name"] = e.name;
  out["jacobiResidual"] = jacobi_residual(mu);
  require_lie(mu, "classify");
  out["derivedSeries"] = derived_series(mu);
  out["lowerCentralSeries"] = lower_central_series(mu);
  out["curvature"] = flat_curvature(curvature_pack(mu));
  if (!is_solvable(mu)) {
    out["solvable"] = false;
    emit(out);
    return kExitValidation;
  }
  out["solvable"] = true;
  out["nilradicalDim"] = nilradical(mu).basis.cols();
  out["type"] = to_json(classify_type(mu));
  out["flat"] = is_flat_bracket(mu);
  emit(out);
  return kExitOk;
}

int cmd_stratum(const std::string& src) {
  const CatalogEntry e = resolve(src);
  try {
    const StratumLabel l = stratum_label(e.bracket);
    json out = to_json(l);
    out["name"] = e.name;
    emit(out);
    return kExitOk;
  } catch (const MaxStepsExceeded& ex) {
    emit({{"name", e.name},
          {"error", ex.kind()},
          {"residual", ex.partial().residual},
          {"steps", ex.partial().steps},
          {"partialBracket", bracket_to_json(ex.partial().critical)}});
    return kExitNonConvergence;
  }
}

struct FlowArgs {
  std::string src, variant = "raw", out, snapshots;
  double tEnd = 10.0, relTol = 1e-9, absTol = 1e-12, recordEvery = 0.1, gaugeSpread = 0.0;
  std::uint64_t seed = 1;
  bool noStop = false;
};

int cmd_flow(const FlowArgs& a) {
  const CatalogEntry e = resolve(a.src);
  FlowSpec spec;
  spec.variant = parse_variant(a.variant);
  spec.tEnd = a.tEnd;
  spec.relTol = a.relTol;
  spec.absTol = a.absTol;
  spec.recordEvery = a.recordEvery;
  spec.stopOnConvergence = !a.noStop;

  BracketTensor mu = e.bracket;
  const bool gauged = spec.variant == FlowVariant::Gauged || spec.variant == FlowVariant::ScalStarNormalized ||
                      spec.variant == FlowVariant::ScalNormalized;
  std::mt19937_64 gen(a.seed);
  if (gauged) {
    const StratumLabel l = stratum_label(mu);
    spec.label = l;
    mu = act(l.frame, mu);
    if (a.gaugeSpread > 0.0) mu = act(random_qbeta(beta_decomposition(l), gen, a.gaugeSpread), mu);
  } else if (a.gaugeSpread > 0.0) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Endomorphism h;
    do {
      h = Endomorphism::Identity(mu.dim(), mu.dim());
      for (Eigen::Index i = 0; i < h.size(); ++i) h.data()[i] += a.gaugeSpread * normal(gen);
    } while (h.determinant() <= 0.1);
    mu = act(h, mu);
  }
  const FlowTrajectory traj = integrate(mu, spec);
  if (!a.out.empty()) {
    std::ofstream os(a.out);
    if (!os) throw ParseError("cannot write " + a.out);
    write_trajectory_csv(os, traj);
  }
  if (!a.snapshots.empty()) {
    std::ofstream os(a.snapshots);
    if (!os) throw ParseError("cannot write " + a.snapshots);
    write_snapshots_jsonl(os, traj);
  }
  const FlowSample& last = traj.samples.back();
  json out = {{"name", e.name},
              {"variant", to_string(traj.variant)},
              {"termination", to_string(traj.terminationReason)},
              {"message", traj.message},
              {"steps", traj.steps},
              {"renormalizations", traj.renormalizations},
              {"samples", traj.samples.size()},
              {"tFinal", last.t},
              {"normFinal", std::sqrt(last.pack.normSq)},
              {"scalFinal", last.pack.scal},
              {"scalStarFinal", last.pack.scalStar},
              {"finalBracket", bracket_to_json(last.mu)}};
  if (spec.label) {
    const SolitonConvergence sc = detect_soliton_convergence(traj);
    out["solitonConvergence"] = {{"converged", sc.converged}, {"fTail", sc.fTail}, {"cauchy", sc.cauchy}};
  }
  emit(out);
  const bool failed =
      traj.terminationReason == Termination::Diverged || traj.terminationReason == Termination::StepFailure;
  return failed ? kExitNonConvergence : kExitOk;
}

int cmd_soliton(const std::string& src) {
  const CatalogEntry e = resolve(src);
  const SolitonCertificate cert = soliton_residual(e.bracket);
  json out = to_json(cert);
  out["name"] = e.name;
  if (cert.kind != SolitonKind::NotSoliton) {
    const NormalizedSoliton ns = normalize_soliton(e.bracket, cert);
    out["normalizedBracket"] = bracket_to_json(ns.bracket);
    out["beta"] = to_json(ns.beta);
    out["betaPlus"] = to_json(ns.betaPlus);
    out["identities"] = {{"derivationResidual", ns.derivationResidual},
                         {"minEigenvalue", ns.minEigenvalue},
                         {"imageMismatch", ns.imageMismatch}};
  }
  emit(out);
  return kExitOk;
}

int cmd_linearize(const std::string& src) {
  const CatalogEntry e = resolve(src);
  const SolitonCertificate cert = soliton_residual(e.bracket);
  const NormalizedSoliton ns = normalize_soliton(e.bracket, cert);
  const StratumLabel l = soliton_label(ns);
  const LinearizationReport r = L_operator(l.criticalBracket, beta_decomposition(l));
  json out = to_json(r);
  out["name"] = e.name;
  out["beta"] = to_json(Vector(l.beta.diagonal()));
  emit(out);
  return kExitOk;
}

int cmd_compare(const std::string& a, const std::string& b, double tol) {
  const OrbitFingerprint fa = fingerprint(resolve(a).bracket);
  const OrbitFingerprint fb = fingerprint(resolve(b).bracket);
  const double d = fingerprint_distance(fa, fb);
  const bool same = same_orbit_On(fa, fb, tol);
  emit({{"a", to_json(fa)},
        {"b", to_json(fb)},
        {"distance", std::isfinite(d) ? json(d) : json("inf")},
        {"tolerance", tol},
        {"verdict", same ? "consistent with a common O(n)-orbit" : "different O(n)-orbits"}});
  return kExitOk;
}

int cmd_uniqueness(const std::string& src, const UniquenessOptions& opts) {
  const UniquenessReport rep = run_uniqueness_experiment(resolve(src), opts);
  json runs = json::array();
  for (const auto& r : rep.runs) {
    runs.push_back({{"seed", r.seed},
                    {"h0", to_json(r.h0)},
                    {"termination", to_string(r.termination)},
                    {"tFinal", r.tFinal},
                    {"converged", r.convergence.converged},
                    {"fTail", r.convergence.fTail},
                    {"cauchy", r.convergence.cauchy},
                    {"ricSpread", r.ricSpread},
                    {"certificate", to_json(r.certificate)},
                    {"fingerprint", to_json(r.fingerprint)}});
  }
  const double d = rep.maxPairwiseDistance;
  emit({{"group", rep.group},
        {"beta", to_json(Vector(rep.label.beta.diagonal()))},
        {"runs", runs},
        {"maxPairwiseDistance", std::isfinite(d) ? json(d) : json("inf")},
        {"failingSeeds", rep.failingSeeds}});
  return rep.failingSeeds.empty() ? kExitOk : kExitNonConvergence;
}

int cmd_collapse(const std::string& src, double tEnd, double spread, std::uint64_t seed) {
  const CatalogEntry e = resolve(src);
  CollapseOptions opts;
  opts.tEnd = tEnd;
  if (spread > 0.0) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    do {
      opts.h0 = Endomorphism::Identity(e.dim, e.dim);
      for (Eigen::Index i = 0; i < opts.h0.size(); ++i) opts.h0.data()[i] += spread * normal(gen);
    } while (opts.h0.determinant() <= 0.1);
  }
  const CollapseReport r = run_collapse_experiment(e, opts);
  emit({{"group", r.group},
        {"tEnd", r.tEnd},
        {"typeIII", {r.typeIIIMin, r.typeIIIMax}},
        {"ricBoundMin", r.ricBoundMin},
        {"ricBoundFinal", r.ricBoundFinal},
        {"termination", to_string(r.termination)},
        {"verdict", r.verdict}});
  return r.termination == Termination::ReachedTEnd ? kExitOk : kExitNonConvergence;
}

int cmd_catalog(const std::string& name, double lambda, int dim, const std::string& out) {
  if (name.empty()) {
    emit(catalog_names());
    return kExitOk;
  }
  std::map<std::string, double> params;
  if (!std::isnan(lambda)) params["lambda"] = lambda;
  if (dim > 0) params["dim"] = dim;
  const CatalogEntry e = catalog(name, params);
  if (!out.empty()) write_bracket_file(out, e.bracket);
  json j = {{"name", e.name}, {"bracket", bracket_to_json(e.bracket)}};
  if (e.expectedType) j["expectedType"] = *e.expectedType;
  if (e.expectedFlat) j["expectedFlat"] = *e.expectedFlat;
  if (e.expectedSoliton) j["expectedSoliton"] = *e.expectedSoliton;
  emit(j);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bracket flow of left-invariant metrics on solvable Lie groups"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "seed of the deterministic generator")->capture_default_str();

  std::string src;
  auto* classify = app.add_subcommand("classify", "type, curvature and structure of a bracket");
  classify->add_option("bracket", src, "JSON file or catalog name")->required();
  auto* stratum = app.add_subcommand("stratum", "stratum label via the moment-map energy gradient flow");
  stratum->add_option("bracket", src, "JSON file or catalog name")->required();

  FlowArgs fa;
  auto* flow = app.add_subcommand("flow", "integrate a bracket flow");
  flow->add_option("bracket", fa.src, "JSON file or catalog name")->required();
  flow->add_option("--variant", fa.variant,
                   "raw | gauged | scalstar-normalized | scal-normalized | normalized-ungauged")
      ->capture_default_str();
  flow->add_option("--t-end", fa.tEnd)->capture_default_str();
  flow->add_option("--rel-tol", fa.relTol)->capture_default_str();
  flow->add_option("--abs-tol", fa.absTol)->capture_default_str();
  flow->add_option("--record-every", fa.recordEvery)->capture_default_str();
  flow->add_option("--out", fa.out, "trajectory CSV");
  flow->add_option("--snapshots", fa.snapshots, "bracket snapshots as JSON lines");
  flow->add_option("--gauge-spread", fa.gaugeSpread, "random initial gauge of this size (0: none)")
      ->capture_default_str();
  flow->add_flag("--no-stop", fa.noStop, "keep integrating after convergence");

  auto* sol = app.add_subcommand("soliton-check", "fit Ric = c Id + D and check the normalized identities");
  sol->add_option("bracket", src, "JSON file or catalog name")->required();
  auto* lin = app.add_subcommand("linearize", "spectrum of the linearized normalized flow at a soliton");
  lin->add_option("bracket", src, "JSON file or catalog name")->required();

  std::string a, b;
  double fpTol = 1e-6;
  auto* cmp = app.add_subcommand("compare", "O(n)-invariant fingerprints of two brackets");
  cmp->add_option("a", a)->required();
  cmp->add_option("b", b)->required();
  cmp->add_option("--tol", fpTol)->capture_default_str();

  UniquenessOptions uo;
  auto* uni = app.add_subcommand("uniqueness", "normalized flows from random Q_beta gauges");
  uni->add_option("bracket", src, "catalog name or JSON file")->required();
  uni->add_option("--seeds", uo.seeds)->capture_default_str();
  uni->add_option("--t-end", uo.tEnd)->capture_default_str();

  double ctEnd = 200.0, cspread = 0.0;
  auto* col = app.add_subcommand("collapse", "type-III and collapse monitors along the raw flow");
  col->add_option("bracket", src, "catalog name or JSON file")->required();
  col->add_option("--t-end", ctEnd)->capture_default_str();
  col->add_option("--gauge-spread", cspread, "random initial gauge of this size (0: none)")->capture_default_str();

  std::string cname, cout;
  double lambda = std::nan("");
  int cdim = 0;
  auto* cat = app.add_subcommand("catalog", "list or print catalog brackets");
  cat->add_option("name", cname);
  cat->add_option("--lambda", lambda);
  cat->add_option("--dim", cdim);
  cat->add_option("--out", cout, "write the bracket JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*classify) return cmd_classify(src);
    if (*stratum) return cmd_stratum(src);
    if (*flow) {
      fa.seed = seed;
      return cmd_flow(fa);
    }
    if (*sol) return cmd_soliton(src);
    if (*lin) return cmd_linearize(src);
    if (*cmp) return cmd_compare(a, b, fpTol);
    if (*uni) {
      uo.seed = seed;
      return cmd_uniqueness(src, uo);
    }
    if (*col) return cmd_collapse(src, ctEnd, cspread, seed);
    if (*cat) return cmd_catalog(cname, lambda, cdim, cout);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return e.error_class() == ErrorClass::NonConvergence ? kExitNonConvergence : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
