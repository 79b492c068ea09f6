#include "bracketflow/io.hpp"

#include "bracketflow/errors.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace bflow {

BracketTensor bracket_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
      throw ParseError("bracket JSON needs 'dim' and 'entries'");
    }
    const int n = j.at("dim").get<int>();
    BracketTensor mu(n);
    for (const auto& e : j.at("entries")) {
      const int i = e.at("i").get<int>() - 1;
      const int jj = e.at("j").get<int>() - 1;
      const int k = e.at("k").get<int>() - 1;
      const double v = e.at("v").get<double>();
      if (i < 0 || jj < 0 || k < 0 || i >= n || jj >= n || k >= n) {
        throw DimensionMismatch("entry index out of range 1.." + std::to_string(n));
      }
      if (i == jj) {
        if (v != 0.0) throw ParseError("entry with i = j must vanish");
        continue;
      }
      if (!std::isfinite(v)) throw ParseError("non-finite coefficient");
      mu.add(i, jj, k, v);
    }
    return mu;
  } catch (const json::exception& ex) {
    throw ParseError(ex.what());
  }
}

json bracket_to_json(const BracketTensor& mu) {
  json entries = json::array();
  const int n = mu.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double v = mu(i, j, k);
        if (v != 0.0) entries.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"v", v}});
      }
  return {{"dim", n}, {"entries", entries}};
}

BracketTensor read_bracket_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw ParseError(path + ": " + ex.what());
  }
  return bracket_from_json(j);
}

void write_bracket_file(const std::string& path, const BracketTensor& mu) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << bracket_to_json(mu).dump(2) << '\n';
}

json to_json(const Endomorphism& a) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.push_back(a(i, j));
    rows.push_back(r);
  }
  return rows;
}

json to_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json to_json(const CurvaturePack& p) {
  return {{"M", to_json(p.M)},           {"K", to_json(p.K)},
          {"H", to_json(p.H)},           {"Ric", to_json(p.Ric)},
          {"RicStar", to_json(p.RicStar)}, {"scal", p.scal},
          {"scalStar", p.scalStar},      {"normSq", p.normSq}};
}

json to_json(const TypeReport& r) {
  json j = {{"kind", to_string(r.kind)}, {"sigma_a", r.sigma_a}, {"rank", r.rank}};
  j["witness"] = r.witness.size() ? to_json(r.witness) : json::array();
  if (r.kind == TypeKind::ImaginaryType) j["confidence"] = "sampled";
  return j;
}

json to_json(const StratumLabel& l) {
  auto mults = [](const std::vector<Multiplicity>& v) {
    json a = json::array();
    for (const auto& [r, m] : v) a.push_back({{"value", r}, {"multiplicity", m}});
    return a;
  };
  return {{"beta", to_json(Vector(l.beta.diagonal()))},
          {"betaNormSq", l.beta.squaredNorm()},
          {"betaPlus", to_json(Vector(l.betaPlus.diagonal()))},
          {"residual", l.residual},
          {"adEigenvalues", mults(l.adEigs)},
          {"piEigenvalues", mults(l.piEigs)},
          {"labelTol", kLabelTol},
          {"criticalBracket", bracket_to_json(l.criticalBracket)}};
}

json to_json(const SolitonCertificate& c) {
  return {{"c", c.c},
          {"D", to_json(c.D)},
          {"residual", c.residual},
          {"kind", to_string(c.kind)},
          {"normalized", c.normalized},
          {"tolerance", c.solTol}};
}

json to_json(const OrbitFingerprint& f) {
  return {{"ricEigenvalues", to_json(f.ricEigs)},
          {"ricStarEigenvalues", to_json(f.ricStarEigs)},
          {"momentEigenvalues", to_json(f.momentEigs)},
          {"scal", f.scal},
          {"scalStar", f.scalStar},
          {"norm", f.norm},
          {"nilradicalDim", f.nilradicalDim},
          {"derivedSeries", f.derivedSeries}};
}

json to_json(const LinearizationReport& r) {
  return {{"tangentDim", r.tangentDim},
          {"eigenvalues", r.eigenvalues},
          {"maxImag", r.maxImag},
          {"maxNonzeroEigenvalue", r.maxNonzeroEigenvalue},
          {"kernelDim", r.kernelDim},
          {"kBetaOrbitDim", r.kBetaOrbitDim},
          {"kernelMatchesKBetaOrbit", r.kernelMatchesKBetaOrbit},
          {"P_spectrum", r.P_spectrum},
          {"pSymmetry", r.pSymmetry},
          {"pKernelDim", r.pKernelDim},
          {"derPlusKDim", r.derPlusKDim},
          {"pKernelResidual", r.pKernelResidual},
          {"commutatorNorm", r.commutatorNorm},
          {"pDiscrepancy", r.pDiscrepancy},
          {"fdDiscrepancy", r.fdDiscrepancy},
          {"rankDeficiencyWarning", r.rankDeficiencyWarning},
          {"killingCondition", r.killingCondition}};
}

void write_trajectory_csv(std::ostream& os, const FlowTrajectory& traj) {
  os << "t,||mu||,scal,scalstar,f,lyap,cs,typeIII,ricBound,jacobiRes\n";
  std::ostringstream line;
  line << std::setprecision(17);
  for (const auto& s : traj.samples) {
    line.str("");
    line << s.t << ',' << std::sqrt(s.pack.normSq) << ',' << s.pack.scal << ',' << s.pack.scalStar << ',' << s.mon.f
         << ',' << s.mon.lyapunovIntegrand << ',' << s.mon.csEstimate << ',' << s.mon.typeIII << ',' << s.mon.ricBound
         << ',' << s.mon.jacobiRes << '\n';
    os << line.str();
  }
}

void write_snapshots_jsonl(std::ostream& os, const FlowTrajectory& traj) {
  for (const auto& s : traj.samples) {
    json j = {{"t", s.t}, {"bracket", bracket_to_json(s.mu)}};
    os << j.dump() << '\n';
  }
}

}  // namespace bflow
