#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "graphsw/ensembles.hpp"

namespace graphsw {

/// s(x) = x/2 - (x/2) log x, with s(0) = 0.
double sFunc(double x);

/// Shannon entropy in nats of a probability distribution.
double shannon(std::span<const double> dist);

/// log of N! / (a_1! ... a_k! (N - sum a_i)!), exact via log-gamma.
double logMultinomial(long long n, std::span<const long long> parts);

double logBinomial(long long n, long long k);

/// Joint law of (X, X_i) where X ~ r and X_i counts the edges whose i-th
/// mark coordinate is informative, plus the derived scalars used by the
/// entropy formulas.
struct ThinningStats {
    int delta;
    double beta1, beta2;
    std::vector<std::vector<double>> jointX1;  // P(X = k, X_1 = l)
    std::vector<std::vector<double>> jointX2;
    std::vector<double> lawX, lawX1, lawX2;
    double meanX, meanX1, meanX2;
    double entX, entX1, entX2;
    double meanLogFactX, meanLogFactX1, meanLogFactX2;
};

ThinningStats thinningStats(const CmModel& model);

/// BC entropies and expected root degrees of one ensemble's limit.
struct BcSummary {
    double sigma12, sigma1, sigma2;
    double sigma2given1, sigma1given2;
    double d12, d1, d2;
    std::string ensemble;
};

BcSummary bcEntropyEr(const ErModel& model);
BcSummary bcEntropyCm(const CmModel& model);

/// Exact Shannon entropy of the finite-n ER ensemble, in closed form.
double exactShannonEr(const ErModel& model, int n);

struct RateTuple {
    double alpha1, r1, alpha2, r2;
};

/// Lexicographic order on (alpha, R) pairs.
bool lexSucc(std::pair<double, double> a, std::pair<double, double> b);
bool lexSucceq(std::pair<double, double> a, std::pair<double, double> b);

struct ConstraintCheck {
    std::string name;
    double alphaThreshold, rThreshold;
    double alphaValue, rValue;
    bool satisfied;
};

struct RateRegionResult {
    bool contained;
    std::array<ConstraintCheck, 3> constraints;
};

RateRegionResult rateRegionContains(const BcSummary& bc, const RateTuple& t);

}  // namespace graphsw
