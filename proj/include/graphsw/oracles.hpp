#pragma once

#include <cstdint>
#include <vector>

#include "graphsw/ensembles.hpp"
#include "graphsw/local_weak.hpp"

namespace graphsw {
namespace oracles {

/// Thrown when an exact enumeration would exceed its hard-coded cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact |G^(n)_d| by backtracking; n <= 10.
long long enumerateWithDegrees(const std::vector<int>& d);

enum class AsymptoticCase { linear, quadratic };

struct AsymptoticsResult {
    double limit;
    std::vector<std::pair<long long, double>> finiteN;  // (n, value)
};

/// Stirling multinomial asymptotics. Linear case: a_n ~ a*n, parts b_i*n,
/// limit a*H({b_i/a}) of (1/n) log multinomial. Quadratic case: a_n ~ C(n,2),
/// limit sum s(2 b_i) of the n log n shifted quantity.
AsymptoticsResult multinomialAsymptotics(AsymptoticCase which, double a,
                                         const std::vector<double>& b,
                                         const std::vector<long long>& evalNs);

struct IdentityCheck {
    double lhs, rhs, diff;
};

/// H(X1, X - X1) = H(X) + E[X] H(eps) - E[log C(X, X1)] for X ~ r thinned by
/// independent Bernoulli(eps) marks.
IdentityCheck thinningIdentity(const std::vector<double>& r, double epsilon);

/// Limit of (log |G^(n)_a| - (b_n/2) log n)/n for degree sequences with class
/// fractions converging to r: equals -s(d) - E[log Y!], d = E[Y].
double cmCountAsymptote(const std::vector<double>& r);

/// Exhaustive count of marked graphs with exact counts (mVec, uVec) whose
/// empirical depth-h neighborhood law lies within eps TV of `target`.
/// Alphabets are taken from `ms`; n <= 8.
double bcDefinitionOracle(const MarkSpaces& ms, const NeighborhoodDist& target, double eps, int n,
                          const std::vector<long long>& mVec, const std::vector<long long>& uVec);

/// log A1 = log multinomial(n; u) + log multinomial(C(n,2); m).
double typicalBoundA1(const ErModel& model, int n, const std::vector<long long>& mVec,
                      const std::vector<long long>& uVec);

/// log A2: product of per-first-domain-class multinomials bounding the number
/// of second marginals compatible with fixed first-domain counts.
double condBoundA2Er(const ErModel& model, int n, const std::vector<long long>& mVec,
                     const std::vector<long long>& uVec);

struct CondBoundCm {
    double finiteBound;  // four-term upper bound at the given n
    double limitForm;    // conditional BC entropy Sigma(mu2 | mu1)
};

/// Upper bound on max log |S^(n)_2| for the configuration model, plus its
/// limit form, which must match the conditional BC entropy.
CondBoundCm condBoundCm(const CmModel& model, int n);

}  // namespace oracles
}  // namespace graphsw
