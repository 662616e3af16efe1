#include "popdyn/model.hpp"

#include <cmath>
#include <stdexcept>

namespace popdyn {

void ModelExponents::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("ModelExponents: mu must be positive");
  }
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw std::invalid_argument("ModelExponents: nu must be positive");
  }
}

const char* family_name(Family family) {
  switch (family) {
    case Family::Homogeneous:
      return "homogeneous";
    case Family::Symmetric:
      return "f1";
    case Family::Asymmetric:
      return "f2";
  }
  return "?";
}

Family parse_family(const std::string& token) {
  if (token == "hom" || token == "homogeneous") return Family::Homogeneous;
  if (token == "f1" || token == "sym" || token == "symmetric")
    return Family::Symmetric;
  if (token == "f2" || token == "asym" || token == "asymmetric")
    return Family::Asymmetric;
  throw std::invalid_argument("unknown family '" + token +
                              "' (expected hom, f1 or f2)");
}

}  // namespace popdyn
