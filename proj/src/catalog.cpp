#include "bracketflow/catalog.hpp"

#include "bracketflow/errors.hpp"

#include <cmath>

namespace bflow {

BracketTensor almost_abelian(const Eigen::MatrixXd& a) {
  const int m = static_cast<int>(a.rows());
  BracketTensor mu(m + 1);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k)
      if (a(k, j) != 0.0) mu.set(0, j + 1, k + 1, a(k, j));
  return mu;
}

namespace {

double param(const std::map<std::string, double>& p, const std::string& key, const std::string& name) {
  auto it = p.find(key);
  if (it == p.end()) throw ParamOutOfRange(name + " needs parameter '" + key + "'");
  return it->second;
}

}  // namespace

CatalogEntry catalog(const std::string& name, const std::map<std::string, double>& params) {
  CatalogEntry e;
  e.name = name;
  if (name == "h3") {
    e.bracket = BracketTensor(3);
    e.bracket.set(0, 1, 2, 1.0);
    e.expectedType = "Nilpotent";
    e.expectedFlat = false;
    e.expectedSoliton = "NontrivialSoliton";
  } else if (name == "s3") {
    Eigen::Matrix2d a;
    a << 1, 0, 1, 1;
    e.bracket = almost_abelian(a);
    e.expectedType = "RealType";
    e.expectedFlat = false;
    e.expectedSoliton = "NotSoliton";
  } else if (name == "s3,lambda") {
    const double l = param(params, "lambda", name);
    if (!(l >= -1.0 && l <= 1.0)) throw ParamOutOfRange("s3,lambda needs -1 <= lambda <= 1");
    e.bracket = almost_abelian(Eigen::Vector2d(1.0, l).asDiagonal().toDenseMatrix());
    e.expectedType = "RealType";
    e.expectedFlat = false;
    if (l == 1.0) e.expectedSoliton = "Einstein";
  } else if (name == "s3',lambda") {
    const double l = param(params, "lambda", name);
    if (!(l > 0.0)) throw ParamOutOfRange("s3',lambda needs lambda > 0");
    Eigen::Matrix2d a;
    a << l, 1, -1, l;
    e.bracket = almost_abelian(a);
    e.expectedType = "RealType";
    e.expectedFlat = false;
    e.expectedSoliton = "Einstein";
  } else if (name == "e2") {
    Eigen::Matrix2d a;
    a << 0, 1, -1, 0;
    e.bracket = almost_abelian(a);
    e.expectedType = "ImaginaryType";
    e.expectedFlat = true;
  } else if (name == "heisenberg") {
    const double d = params.count("dim") ? params.at("dim") : 3.0;
    const int n = static_cast<int>(d);
    if (n != d || n < 3 || n % 2 == 0 || n > kMaxDim) throw ParamOutOfRange("heisenberg needs odd dim in [3, 15]");
    e.bracket = BracketTensor(n);
    const int k = (n - 1) / 2;
    for (int i = 0; i < k; ++i) e.bracket.set(i, k + i, n - 1, 1.0);
    e.expectedType = "Nilpotent";
    e.expectedFlat = false;
    e.expectedSoliton = "NontrivialSoliton";
  } else if (name == "abelian") {
    const double d = params.count("dim") ? params.at("dim") : 3.0;
    const int n = static_cast<int>(d);
    if (n != d || n < 1 || n > kMaxDim) throw ParamOutOfRange("abelian needs dim in [1, 16]");
    e.bracket = BracketTensor(n);
    e.expectedType = "Abelian";
    e.expectedFlat = true;
  } else {
    throw UnknownName("no catalog entry named '" + name + "'");
  }
  e.dim = e.bracket.dim();
  return e;
}

std::vector<std::string> catalog_names() {
  return {"h3", "s3", "s3,lambda", "s3',lambda", "e2", "heisenberg", "abelian"};
}

}  // namespace bflow
