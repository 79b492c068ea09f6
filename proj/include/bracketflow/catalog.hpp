#pragma once

#include "bracketflow/bracket.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bflow {

struct CatalogEntry {
  std::string name;
  int dim = 0;
  BracketTensor bracket;
  std::optional<std::string> expectedType;   // to_string(TypeKind)
  std::optional<bool> expectedFlat;
  std::optional<std::string> expectedSoliton;  // "Einstein", "NontrivialSoliton", "NotSoliton"
};

/// Almost-abelian bracket on R x R^m with mu(e1, x) = A x for x in span(e2..), A given in
/// that basis (column j is the image of e_{j+2}).
BracketTensor almost_abelian(const Eigen::MatrixXd& a);

/// Named brackets: h3, s3, s3,lambda (lambda in [-1,1]), s3',lambda (lambda > 0), e2,
/// heisenberg (dim = 2k+1 >= 3), abelian (dim >= 1). Parameters: "lambda", "dim".
/// Throws UnknownName, ParamOutOfRange.
CatalogEntry catalog(const std::string& name, const std::map<std::string, double>& params = {});

/// Names understood by catalog().
std::vector<std::string> catalog_names();

}  // namespace bflow
