#pragma once

#include "bracketflow/bracket.hpp"
#include "bracketflow/curvature.hpp"
#include "bracketflow/flow.hpp"
#include "bracketflow/linearization.hpp"
#include "bracketflow/soliton.hpp"
#include "bracketflow/spectral_type.hpp"
#include "bracketflow/stratification.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>

namespace bflow {

using json = nlohmann::json;

/// {"dim": n, "entries": [{"i":1,"j":2,"k":3,"v":1.0}, ...]}, 1-based, i < j.
/// Entries with i > j are folded in with a sign; repeated pairs are summed.
/// Throws ParseError, DimensionMismatch.
BracketTensor bracket_from_json(const json& j);
/// Writes entries with |v| > 1e-14 only.
json bracket_to_json(const BracketTensor& mu);

BracketTensor read_bracket_file(const std::string& path);
void write_bracket_file(const std::string& path, const BracketTensor& mu);

json to_json(const Endomorphism& a);
json to_json(const Vector& v);
json to_json(const CurvaturePack& p);
json to_json(const TypeReport& r);
json to_json(const StratumLabel& l);
json to_json(const SolitonCertificate& c);
json to_json(const OrbitFingerprint& f);
json to_json(const LinearizationReport& r);

/// One row per sample: t, ||mu||, scal, scalstar, f, lyap, cs, typeIII, ricBound, jacobiRes.
void write_trajectory_csv(std::ostream& os, const FlowTrajectory& traj);
/// One JSON object per line: {"t": ..., "bracket": {...}}.
void write_snapshots_jsonl(std::ostream& os, const FlowTrajectory& traj);

}  // namespace bflow
