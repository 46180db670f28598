#include "graphsw/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "graphsw/entropy.hpp"

namespace graphsw {
namespace oracles {

namespace {

long long countFrom(std::vector<int>& resid, int i) {
    const int n = static_cast<int>(resid.size());
    while (i < n && resid[i] == 0) ++i;
    if (i == n) return 0 <= i ? 1 : 0;
    // Vertex i must satisfy all its residual degree with neighbors j > i.
    std::vector<int> cand;
    for (int j = i + 1; j < n; ++j)
        if (resid[j] > 0) cand.push_back(j);
    const int need = resid[i];
    if (need > static_cast<int>(cand.size())) return 0;
    long long total = 0;
    std::vector<int> pick(need);
    auto rec = [&](auto&& self, int from, int depth) -> void {
        if (depth == need) {
            resid[i] = 0;
            for (int j : pick) --resid[j];
            total += countFrom(resid, i + 1);
            for (int j : pick) ++resid[j];
            resid[i] = need;
            return;
        }
        for (int c = from; c <= static_cast<int>(cand.size()) - (need - depth); ++c) {
            pick[depth] = cand[c];
            self(self, c + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return total;
}

double entropyOfMatrix(const std::vector<std::vector<double>>& joint) {
    double h = 0;
    for (const auto& row : joint)
        for (double p : row)
            if (p > 0) h -= p * std::log(p);
    return h;
}

double entropyOfVec(const std::vector<double>& v) {
    double h = 0;
    for (double p : v)
        if (p > 0) h -= p * std::log(p);
    return h;
}

}  // namespace

long long enumerateWithDegrees(const std::vector<int>& d) {
    if (d.size() > 10) throw ResourceError("enumerateWithDegrees: n > 10");
    long long sum = 0;
    for (int k : d) {
        if (k < 0 || k >= static_cast<int>(d.size()))
            throw std::invalid_argument("enumerateWithDegrees: degree out of range");
        sum += k;
    }
    if (sum % 2 != 0) return 0;
    std::vector<int> resid = d;
    return countFrom(resid, 0);
}

AsymptoticsResult multinomialAsymptotics(AsymptoticCase which, double a,
                                         const std::vector<double>& b,
                                         const std::vector<long long>& evalNs) {
    for (double bi : b)
        if (bi < 0) throw std::invalid_argument("multinomialAsymptotics: negative part rate");
    double bSum = 0;
    for (double bi : b) bSum += bi;

    AsymptoticsResult res;
    if (which == AsymptoticCase::linear) {
        if (!(a > 0)) throw std::invalid_argument("multinomialAsymptotics: need a > 0");
        if (bSum > a + 1e-12)
            throw std::invalid_argument("multinomialAsymptotics: parts exceed total rate");
        double rem = std::max(0.0, a - bSum);
        double limit = a * std::log(a);
        for (double bi : b)
            if (bi > 0) limit -= bi * std::log(bi);
        if (rem > 0) limit -= rem * std::log(rem);
        res.limit = limit;
        for (long long n : evalNs) {
            long long an = std::llround(a * n);
            std::vector<long long> parts;
            for (double bi : b) parts.push_back(std::llround(bi * n));
            res.finiteN.emplace_back(n, logMultinomial(an, parts) / n);
        }
    } else {
        double limit = 0;
        for (double bi : b) limit += sFunc(2 * bi);
        res.limit = limit;
        for (long long n : evalNs) {
            long long an = n * (n - 1) / 2;
            std::vector<long long> parts;
            long long partSum = 0;
            for (double bi : b) {
                parts.push_back(std::llround(bi * n));
                partSum += parts.back();
            }
            double val =
                (logMultinomial(an, parts) - partSum * std::log(static_cast<double>(n))) / n;
            res.finiteN.emplace_back(n, val);
        }
    }
    return res;
}

IdentityCheck thinningIdentity(const std::vector<double>& r, double epsilon) {
    if (epsilon < 0 || epsilon > 1)
        throw std::invalid_argument("thinningIdentity: epsilon outside [0,1]");
    double sum = 0;
    for (double p : r) {
        if (p < 0) throw std::invalid_argument("thinningIdentity: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1) > 1e-9)
        throw std::invalid_argument("thinningIdentity: distribution does not sum to 1");

    const int delta = static_cast<int>(r.size()) - 1;
    double lhs = 0;                      // H(X1, X - X1)
    double hX = 0, meanX = 0, eLogC = 0; // ingredients of the right-hand side
    for (int k = 0; k <= delta; ++k) {
        if (r[k] <= 0) continue;
        hX -= r[k] * std::log(r[k]);
        meanX += k * r[k];
        for (int l = 0; l <= k; ++l) {
            double logC = logBinomial(k, l);
            double pl = epsilon == 0   ? (l == 0 ? 1.0 : 0.0)
                        : epsilon == 1 ? (l == k ? 1.0 : 0.0)
                                       : std::exp(logC + l * std::log(epsilon) +
                                                  (k - l) * std::log(1 - epsilon));
            double joint = r[k] * pl;
            if (joint > 0) {
                lhs -= joint * std::log(joint);
                eLogC += joint * logC;
            }
        }
    }
    double hEps = 0;
    if (epsilon > 0 && epsilon < 1)
        hEps = -epsilon * std::log(epsilon) - (1 - epsilon) * std::log(1 - epsilon);
    IdentityCheck chk;
    chk.lhs = lhs;
    chk.rhs = hX + meanX * hEps - eLogC;
    chk.diff = chk.lhs - chk.rhs;
    return chk;
}

double cmCountAsymptote(const std::vector<double>& r) {
    double mean = 0, eLogFact = 0;
    for (int k = 0; k < static_cast<int>(r.size()); ++k) {
        if (r[k] < 0) throw std::invalid_argument("cmCountAsymptote: negative probability");
        mean += k * r[k];
        eLogFact += r[k] * std::lgamma(static_cast<double>(k) + 1);
    }
    if (!(mean > 0)) throw std::invalid_argument("cmCountAsymptote: zero-mean degree law");
    return -sFunc(mean) - eLogFact;
}

double bcDefinitionOracle(const MarkSpaces& ms, const NeighborhoodDist& target, double eps, int n,
                          const std::vector<long long>& mVec, const std::vector<long long>& uVec) {
    if (n > 8) throw ResourceError("bcDefinitionOracle: n > 8");
    if (static_cast<int>(mVec.size()) != ms.jointEdgeCount() ||
        static_cast<int>(uVec.size()) != ms.jointVertexCount())
        throw std::invalid_argument("bcDefinitionOracle: count vector size mismatch");

    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);

    long long count = 0;
    std::vector<long long> mLeft = mVec, uLeft = uVec;
    long long edgesLeft = 0, vertsLeft = 0;
    for (long long c : mVec) edgesLeft += c;
    for (long long c : uVec) vertsLeft += c;
    if (vertsLeft != n) throw std::invalid_argument("bcDefinitionOracle: vertex counts must sum to n");
    if (edgesLeft > static_cast<long long>(pairs.size()))
        throw std::invalid_argument("bcDefinitionOracle: edge counts exceed vertex pairs");

    JointGraph g;
    g.n = n;
    g.vertexMarks.assign(n, 0);

    auto assignVerts = [&](auto&& self, int v) -> void {
        if (v == n) {
            NeighborhoodDist emp = empiricalU(ms, g, target.depth);
            if (distTV(emp, target) <= eps + 1e-12) ++count;
            return;
        }
        for (int t = 0; t < ms.jointVertexCount(); ++t) {
            if (uLeft[t] == 0) continue;
            --uLeft[t];
            g.vertexMarks[v] = t;
            self(self, v + 1);
            ++uLeft[t];
        }
    };
    auto assignEdges = [&](auto&& self, int idx, long long remaining) -> void {
        long long slots = static_cast<long long>(pairs.size()) - idx;
        if (remaining > slots) return;
        if (idx == static_cast<int>(pairs.size())) {
            assignVerts(assignVerts, 0);
            return;
        }
        self(self, idx + 1, remaining);  // pair carries no edge
        for (int x = 0; x < ms.jointEdgeCount(); ++x) {
            if (mLeft[x] == 0) continue;
            --mLeft[x];
            g.edges.push_back({pairs[idx].first, pairs[idx].second, x});
            self(self, idx + 1, remaining - 1);
            g.edges.pop_back();
            ++mLeft[x];
        }
    };
    assignEdges(assignEdges, 0, edgesLeft);
    if (count == 0) return -std::numeric_limits<double>::infinity();
    return std::log(static_cast<double>(count));
}

double typicalBoundA1(const ErModel& model, int n, const std::vector<long long>& mVec,
                      const std::vector<long long>& uVec) {
    const auto& ms = model.marks();
    if (static_cast<int>(mVec.size()) != ms.jointEdgeCount() ||
        static_cast<int>(uVec.size()) != ms.jointVertexCount())
        throw std::invalid_argument("typicalBoundA1: count vector size mismatch");
    long long uSum = 0;
    for (long long c : uVec) uSum += c;
    if (uSum != n) throw std::invalid_argument("typicalBoundA1: vertex counts must sum to n");
    long long pairsN = static_cast<long long>(n) * (n - 1) / 2;
    return logMultinomial(n, uVec) + logMultinomial(pairsN, mVec);
}

double condBoundA2Er(const ErModel& model, int n, const std::vector<long long>& mVec,
                     const std::vector<long long>& uVec) {
    const auto& ms = model.marks();
    if (static_cast<int>(mVec.size()) != ms.jointEdgeCount() ||
        static_cast<int>(uVec.size()) != ms.jointVertexCount())
        throw std::invalid_argument("condBoundA2Er: count vector size mismatch");

    double logA2 = 0;
    long long firstDomainEdges = 0;
    // Per-first-class multinomials over second coordinates.
    for (int x1 = 0; x1 < ms.xi1Size(); ++x1) {
        std::vector<long long> parts;
        long long total = 0;
        for (int x = 0; x < ms.jointEdgeCount(); ++x)
            if (ms.edgeCoord(x, 1) == x1) {
                parts.push_back(mVec[x]);
                total += mVec[x];
            }
        firstDomainEdges += total;
        logA2 += logMultinomial(total, parts);
    }
    // Pairs with no first-domain edge receive the (blank, x2) marks.
    std::vector<long long> blankParts;
    for (int x = 0; x < ms.jointEdgeCount(); ++x)
        if (ms.edgeCoord(x, 1) == JointEdgeMark::kBlank) blankParts.push_back(mVec[x]);
    long long pairsN = static_cast<long long>(n) * (n - 1) / 2;
    if (firstDomainEdges > pairsN)
        throw std::invalid_argument("condBoundA2Er: edge counts exceed vertex pairs");
    logA2 += logMultinomial(pairsN - firstDomainEdges, blankParts);
    // Vertex-mark completions.
    for (int t1 = 0; t1 < ms.theta1Size(); ++t1) {
        std::vector<long long> parts;
        long long total = 0;
        for (int t2 = 0; t2 < ms.theta2Size(); ++t2) {
            parts.push_back(uVec[ms.jointVertexIndex(t1, t2)]);
            total += parts.back();
        }
        logA2 += logMultinomial(total, parts);
    }
    return logA2;
}

CondBoundCm condBoundCm(const CmModel& model, int n) {
    const auto& ms = model.marks();
    ThinningStats st = thinningStats(model);
    const int delta = model.delta();
    double d12 = model.meanDegree();
    double d1 = st.beta1 * d12;
    if (!(d12 - d1 > 0))
        throw std::invalid_argument("condBoundCm: expected residual degree d12 - d1 must be positive");

    // Joint law of (X1, X - X1) and its derived quantities.
    std::vector<std::vector<double>> res(delta + 1, std::vector<double>(delta + 1, 0.0));
    for (int k = 0; k <= delta; ++k)
        for (int l = 0; l <= k; ++l) res[l][k - l] += st.jointX1[k][l];
    double hJoint = entropyOfMatrix(res);
    double hResGivenX1 = hJoint - st.entX1;
    double eLogResFact = 0;
    for (int l = 0; l <= delta; ++l)
        for (int j = 0; j + l <= delta; ++j)
            eLogResFact += res[l][j] * std::lgamma(static_cast<double>(j) + 1);

    // Mark-law conditionals.
    std::vector<double> gamma1((std::size_t)ms.xi1Size() + 1, 0.0);
    for (int x = 0; x < ms.jointEdgeCount(); ++x) {
        int x1 = ms.edgeCoord(x, 1);
        gamma1[x1 == JointEdgeMark::kBlank ? ms.xi1Size() : x1] += model.gamma()[x];
    }
    double hGamma2Given1 = entropyOfVec(model.gamma()) - entropyOfVec(gamma1);
    std::vector<double> q1(ms.theta1Size());
    for (int t = 0; t < ms.theta1Size(); ++t) q1[t] = model.qMarginal(1, t);
    double hQ2Given1 = shannon(model.q()) - entropyOfVec(q1);

    CondBoundCm out;
    out.limitForm = -sFunc(d12 - d1) + hResGivenX1 - eLogResFact + (d12 / 2) * hGamma2Given1 +
                    hQ2Given1;

    // Finite-n bound: residual-degree-sequence count, graph count (asymptote
    // substituted at the typical sequence), edge-mark and vertex-mark
    // multinomials at rounded typical counts, with the n^(2/3) slack factors.
    double slack = std::pow(static_cast<double>(n), 2.0 / 3.0);
    double term1 = static_cast<double>((delta + 1) * (delta + 1)) *
                   std::log(2 * (delta + 1) * slack);
    for (int l = 0; l <= delta; ++l) {
        std::vector<long long> parts;
        long long total = 0;
        for (int j = 0; j + l <= delta; ++j) {
            parts.push_back(std::llround(n * res[l][j]));
            total += parts.back();
        }
        term1 += logMultinomial(total, parts);
    }
    double term2 = n * ((d12 - d1) / 2) * std::log(static_cast<double>(n)) +
                   n * (-sFunc(d12 - d1) - eLogResFact);
    double mTotal = n * d12 / 2;
    double term3 = 0;
    long long firstDomainEdges = 0;
    for (int x1 = 0; x1 < ms.xi1Size(); ++x1) {
        std::vector<long long> parts;
        long long total = 0;
        for (int x = 0; x < ms.jointEdgeCount(); ++x)
            if (ms.edgeCoord(x, 1) == x1) {
                parts.push_back(std::llround(mTotal * model.gamma()[x]));
                total += parts.back();
            }
        firstDomainEdges += total;
        term3 += logMultinomial(total, parts);
    }
    std::vector<long long> blankParts;
    long long blankSum = 0;
    for (int x = 0; x < ms.jointEdgeCount(); ++x)
        if (ms.edgeCoord(x, 1) == JointEdgeMark::kBlank) {
            blankParts.push_back(std::llround(mTotal * model.gamma()[x]));
            blankSum += blankParts.back();
        }
    // Independent rounding can leave fewer free slots than blank-marked edges;
    // widening the total only loosens the upper bound.
    term3 += logMultinomial(std::max(std::llround(mTotal) - firstDomainEdges, blankSum),
                            blankParts);
    double term4 = 0;
    for (int t1 = 0; t1 < ms.theta1Size(); ++t1) {
        std::vector<long long> parts;
        long long total = 0;
        for (int t2 = 0; t2 < ms.theta2Size(); ++t2) {
            parts.push_back(std::llround(n * model.q()[ms.jointVertexIndex(t1, t2)]));
            total += parts.back();
        }
        term4 += logMultinomial(total, parts);
    }
    out.finiteBound = term1 + term2 + term3 + term4;
    return out;
}

}  // namespace oracles
}  // namespace graphsw
