#pragma once

// Reference values used by the selftest command and the acceptance
// binary, plus the two-qubit family they were computed on.

#include <array>
#include <cmath>
#include <utility>

#include "renyi/hermitian.hpp"

namespace renyi::reference {

/// rho = |phi><phi| with phi = sqrt(e)|00> + sqrt(1-e)|11>, sigma = I (x) (e|0><0| + (1-e)|1><1|).
inline std::pair<HermitianOperator, HermitianOperator> entangled_family(double e) {
  CVector phi = CVector::Zero(4);
  phi(0) = std::sqrt(e);
  phi(3) = std::sqrt(1.0 - e);
  RVector d(4);
  d << e, 1.0 - e, e, 1.0 - e;
  return {HermitianOperator::outer(phi), HermitianOperator::diagonal(d)};
}

struct FamilyRow {
  double eps;
  double d_geometric;
  double d_sandwiched;
  double d_sharp;
};

/// alpha = 3/2 rows of the entangled family.
inline constexpr std::array<FamilyRow, 5> kFamilyAlpha15 = {{
    {0.000010000000000, 1.0, 0.001979612414616, 0.064948649461560},
    {0.000965195713735, 1.0, 0.039306255352663, 0.327500956788360},
    {0.012223047153898, 1.0, 0.190081968858065, 0.670575651286053},
    {0.093160276581255, 1.0, 0.576168429788131, 0.949099672925276},
    {0.199526231496888, 1.0, 0.801956430936513, 0.993528519561780},
}};

/// eps = 1e-3 values at alpha = 2 and alpha = 4.
inline constexpr double kFamilyEps = 1e-3;
inline constexpr double kSharpAlpha2 = 0.362156516791363;
inline constexpr double kSharpAlpha4 = 0.523876798561143;
inline constexpr double kSandwichedAlpha2 = 0.088431901576697;
inline constexpr double kSandwichedAlpha4 = 0.314429915374535;

struct CapacityRowRef {
  double gamma;
  double value;
};

/// min over alpha in {1.1, ..., 2.0} of the V_Theta bound for amplitude damping.
inline constexpr std::array<CapacityRowRef, 7> kAmplitudeDampingCapacity = {{
    {0.0, 0.999999999818654},
    {0.1, 0.892500444843272},
    {0.3, 0.720122479705461},
    {0.5, 0.548461571846658},
    {0.7, 0.359366802001355},
    {0.9, 0.134475360686317},
    {1.0, 0.0},
}};

/// (1/3) D#_2(N^3 || M^3) at gamma = 0.5 with M the alpha = 2 minimizer.
inline constexpr double kThreeCopyGamma05 = 0.533858545349676;

}  // namespace renyi::reference
