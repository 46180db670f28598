#include "graphsw/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "graphsw/entropy.hpp"
#include "graphsw/oracles.hpp"

namespace graphsw {

namespace {

constexpr double kDistTol = 1e-12;
constexpr long long kPairingRetryCap = 1'000'000;

void checkDistribution(const std::vector<double>& dist, size_t expectedSize, const char* name) {
    if (dist.size() != expectedSize)
        throw std::invalid_argument(std::string(name) + ": wrong length");
    double sum = 0;
    for (double v : dist) {
        if (v < 0) throw std::invalid_argument(std::string(name) + ": negative entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kDistTol)
        throw std::invalid_argument(std::string(name) + ": does not sum to 1");
}

// Marginal-support positivity on a joint-edge-alphabet vector: every real
// mark symbol must receive positive mass through some joint mark. Placeholder
// coordinates are exempt so that fully informative models (every edge shared)
// remain expressible.
void checkCoordinatePositivity(const MarkSpaces& ms, const std::vector<double>& w,
                               const char* name) {
    for (int side = 1; side <= 2; ++side) {
        int size = side == 1 ? ms.xi1Size() : ms.xi2Size();
        for (int coord = 0; coord < size; ++coord) {
            double sum = 0;
            for (int x = 0; x < ms.jointEdgeCount(); ++x)
                if (ms.edgeCoord(x, side) == coord) sum += w[x];
            if (!(sum > 0))
                throw std::invalid_argument(std::string(name) +
                                            ": coordinate sums must be strictly positive");
        }
    }
}

}  // namespace

ErModel::ErModel(MarkSpaces marks, std::vector<double> p, std::vector<double> q)
    : marks_(std::move(marks)), p_(std::move(p)), q_(std::move(q)) {
    if (p_.size() != static_cast<size_t>(marks_.jointEdgeCount()))
        throw std::invalid_argument("p: wrong length");
    for (double v : p_)
        if (v < 0) throw std::invalid_argument("p: negative entry");
    checkDistribution(q_, marks_.jointVertexCount(), "q");
    checkCoordinatePositivity(marks_, p_, "p");
    pTotal_ = std::accumulate(p_.begin(), p_.end(), 0.0);
    if (!(pTotal_ > 0)) throw std::invalid_argument("p: total intensity must be positive");
}

double ErModel::pMarginal(int side, int coord) const {
    double sum = 0;
    for (int x = 0; x < marks_.jointEdgeCount(); ++x)
        if (marks_.edgeCoord(x, side) == coord) sum += p_[x];
    return sum;
}

double ErModel::qMarginal(int side, int coord) const {
    double sum = 0;
    for (int t = 0; t < marks_.jointVertexCount(); ++t)
        if (marks_.vertexCoord(t, side) == coord) sum += q_[t];
    return sum;
}

CmModel::CmModel(MarkSpaces marks, int delta, std::vector<double> r, std::vector<double> gamma,
                 std::vector<double> q, double slackK)
    : marks_(std::move(marks)), delta_(delta), r_(std::move(r)), gamma_(std::move(gamma)),
      q_(std::move(q)), slackK_(slackK) {
    if (delta_ <= 0) throw std::invalid_argument("delta must be positive");
    checkDistribution(r_, delta_ + 1, "r");
    if (r_[0] >= 1.0 - kDistTol) throw std::invalid_argument("r: r_0 < 1 required");
    checkDistribution(gamma_, marks_.jointEdgeCount(), "gamma");
    checkDistribution(q_, marks_.jointVertexCount(), "q");
    checkCoordinatePositivity(marks_, gamma_, "gamma");
    if (!(slackK_ > 0)) throw std::invalid_argument("K must be positive");
}

double CmModel::gammaMarginal(int side, int coord) const {
    double sum = 0;
    for (int x = 0; x < marks_.jointEdgeCount(); ++x)
        if (marks_.edgeCoord(x, side) == coord) sum += gamma_[x];
    return sum;
}

double CmModel::qMarginal(int side, int coord) const {
    double sum = 0;
    for (int t = 0; t < marks_.jointVertexCount(); ++t)
        if (marks_.vertexCoord(t, side) == coord) sum += q_[t];
    return sum;
}

double CmModel::meanDegree() const {
    double mean = 0;
    for (int k = 0; k <= delta_; ++k) mean += k * r_[k];
    return mean;
}

JointGraph sampleEr(const ErModel& model, int n, uint64_t seed) {
    if (n <= model.pTotal())
        throw std::invalid_argument("sampleEr: need n > sum of edge intensities");
    RngStream root(seed);
    RngStream edgeRng = root.split("er-edges");
    RngStream markRng = root.split("er-vmarks");

    JointGraph g;
    g.n = n;
    const double pEdge = model.pTotal() / n;
    const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
    // Geometric skips between present edges; O(#edges) instead of O(n^2).
    const double logKeep = std::log1p(-pEdge);
    long long t = -1;
    while (true) {
        double u = edgeRng.uniform();
        if (u <= 0) u = std::numeric_limits<double>::min();
        t += 1 + static_cast<long long>(std::floor(std::log(u) / logKeep));
        if (t >= pairs) break;
        // pair index -> (i, j), lexicographic over i < j
        long long rem = t;
        int i = 0;
        while (rem >= n - 1 - i) {
            rem -= n - 1 - i;
            ++i;
        }
        int j = i + 1 + static_cast<int>(rem);
        int mark = edgeRng.categorical(model.p());
        g.edges.push_back({i, j, mark});
    }
    g.vertexMarks.resize(n);
    for (int v = 0; v < n; ++v) g.vertexMarks[v] = markRng.categorical(model.q());
    return g;
}

DegreeSeq buildDegreeSequence(const CmModel& model, int n) {
    const int delta = model.delta();
    const auto& r = model.r();
    std::vector<long long> c(delta + 1);
    long long total = 0;
    for (int k = 0; k <= delta; ++k) {
        c[k] = std::llround(n * r[k]);
        total += c[k];
    }
    // Fix the total, adjusting the class with the largest rounding error in
    // the helpful direction (ties to the smallest k).
    while (total != n) {
        int best = -1;
        double bestErr = -std::numeric_limits<double>::infinity();
        for (int k = 0; k <= delta; ++k) {
            double err = c[k] - n * r[k];
            if (total > n) {
                if (c[k] > 0 && err > bestErr) {
                    best = k;
                    bestErr = err;
                }
            } else {
                if (-err > bestErr) {
                    best = k;
                    bestErr = -err;
                }
            }
        }
        c[best] += total > n ? -1 : 1;
        total += total > n ? -1 : 1;
    }
    // Fix parity: move one vertex between adjacent classes with an r-positive
    // target, changing the degree sum by one.
    long long degSum = 0;
    for (int k = 0; k <= delta; ++k) degSum += static_cast<long long>(k) * c[k];
    if (degSum % 2 != 0) {
        bool fixed = false;
        for (int k = 0; k <= delta && !fixed; ++k) {
            if (c[k] == 0) continue;
            if (k + 1 <= delta && r[k + 1] > 0) {
                --c[k];
                ++c[k + 1];
                fixed = true;
            } else if (k - 1 >= 0 && r[k - 1] > 0) {
                --c[k];
                ++c[k - 1];
                fixed = true;
            }
        }
        if (!fixed) throw std::logic_error("buildDegreeSequence: parity repair failed");
    }
    double slack = 0;
    for (int k = 0; k <= delta; ++k) slack += std::abs(c[k] - n * r[k]);
    if (slack > model.slackK() * std::sqrt(static_cast<double>(n)))
        throw std::invalid_argument("buildDegreeSequence: n too small for the slack budget K");

    DegreeSeq out;
    out.d.reserve(n);
    for (int k = delta; k >= 0; --k) out.d.insert(out.d.end(), c[k], k);
    return out;
}

bool isGraphic(std::vector<int> d) {
    std::sort(d.begin(), d.end(), std::greater<>());
    long long sum = std::accumulate(d.begin(), d.end(), 0LL);
    if (sum % 2 != 0) return false;
    const int n = static_cast<int>(d.size());
    std::vector<long long> prefix(n + 1, 0);
    for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + d[i];
    for (int k = 1; k <= n; ++k) {
        long long rhs = static_cast<long long>(k) * (k - 1);
        for (int i = k; i < n; ++i) rhs += std::min<long long>(d[i], k);
        if (prefix[k] > rhs) return false;
    }
    return true;
}

std::vector<Edge> sampleSimpleWithDegrees(const DegreeSeq& d, RngStream rng) {
    if (!isGraphic(d.d)) throw std::invalid_argument("sampleSimpleWithDegrees: non-graphic sequence");
    const int n = static_cast<int>(d.d.size());

    // Uniformly permute the degree sequence; every simple graph in the target
    // class then has equal probability after pairing + rejection.
    std::vector<int> degrees = d.d;
    RngStream permRng = rng.split("degree-perm");
    permRng.shuffle(degrees);

    std::vector<int> halfEdges;
    for (int v = 0; v < n; ++v) halfEdges.insert(halfEdges.end(), degrees[v], v);

    RngStream pairRng = rng.split("pairing");
    for (long long attempt = 0; attempt < kPairingRetryCap; ++attempt) {
        std::vector<int> stubs = halfEdges;
        pairRng.shuffle(stubs);
        std::vector<Edge> edges;
        std::vector<std::pair<int, int>> seen;
        bool ok = true;
        for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v) {
                ok = false;
                break;
            }
            if (u > v) std::swap(u, v);
            seen.emplace_back(u, v);
            edges.push_back({u, v, 0});
        }
        if (ok) {
            std::sort(seen.begin(), seen.end());
            ok = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
        }
        if (ok) {
            std::sort(edges.begin(), edges.end());
            return edges;
        }
    }
    throw std::runtime_error("sampleSimpleWithDegrees: retry cap exceeded");
}

JointGraph sampleCm(const CmModel& model, int n, uint64_t seed) {
    DegreeSeq d = buildDegreeSequence(model, n);
    RngStream root(seed);
    std::vector<Edge> edges = sampleSimpleWithDegrees(d, root.split("cm-structure"));

    RngStream edgeMarkRng = root.split("cm-emarks");
    RngStream vertMarkRng = root.split("cm-vmarks");
    JointGraph g;
    g.n = n;
    g.edges = std::move(edges);
    for (auto& e : g.edges) e.mark = edgeMarkRng.categorical(model.gamma());
    g.vertexMarks.resize(n);
    for (int v = 0; v < n; ++v) g.vertexMarks[v] = vertMarkRng.categorical(model.q());
    return g;
}

double logProbEr(const ErModel& model, const JointGraph& j) {
    const int n = j.n;
    if (n <= model.pTotal())
        throw std::invalid_argument("logProbEr: need n > sum of edge intensities");
    CountVectors cv = countVectors(model.marks(), j);
    const double inf = std::numeric_limits<double>::infinity();
    double logp = 0;
    long long edgeTotal = 0;
    for (size_t x = 0; x < cv.edgeCounts.size(); ++x) {
        long long m = cv.edgeCounts[x];
        edgeTotal += m;
        if (m == 0) continue;
        if (model.p()[x] <= 0) return -inf;
        logp += m * std::log(model.p()[x] / n);
    }
    const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
    logp += (pairs - edgeTotal) * std::log1p(-model.pTotal() / n);
    for (size_t t = 0; t < cv.vertexCounts.size(); ++t) {
        long long u = cv.vertexCounts[t];
        if (u == 0) continue;
        if (model.q()[t] <= 0) return -inf;
        logp += u * std::log(model.q()[t]);
    }
    return logp;
}

CmLogProb logProbCm(const CmModel& model, const JointGraph& j, CmProbMode mode) {
    const int n = j.n;
    DegreeSeq target = buildDegreeSequence(model, n);
    CountVectors cv = countVectors(model.marks(), j);

    std::vector<long long> cGraph = degreeClassCounts(cv.degreeSeq);
    std::vector<long long> cTarget = degreeClassCounts(target.d);
    cGraph.resize(model.delta() + 1, 0);
    cTarget.resize(model.delta() + 1, 0);
    if (cGraph != cTarget)
        throw std::invalid_argument("logProbCm: degree class counts do not match the model");

    // Count of degree sequences in the class; all have equal |G^(n)_d|.
    std::vector<long long> parts(cTarget.begin(), cTarget.end() - 1);
    double logSeqCount = logMultinomial(n, parts);

    double logGraphCount;
    if (mode == CmProbMode::exact) {
        if (n > 10) throw oracles::ResourceError("logProbCm: exact mode requires n <= 10");
        logGraphCount = std::log(static_cast<double>(oracles::enumerateWithDegrees(target.d)));
    } else {
        // Degree-sequence count asymptote with the empirical class fractions.
        std::vector<double> law(model.delta() + 1);
        for (int k = 0; k <= model.delta(); ++k) law[k] = static_cast<double>(cTarget[k]) / n;
        long long degSum = 0;
        for (int k : target.d) degSum += k;
        logGraphCount = (degSum / 2.0) * std::log(static_cast<double>(n)) +
                        n * oracles::cmCountAsymptote(law);
    }

    const double inf = std::numeric_limits<double>::infinity();
    double logp = -(logSeqCount + logGraphCount);
    for (size_t x = 0; x < cv.edgeCounts.size(); ++x) {
        if (cv.edgeCounts[x] == 0) continue;
        if (model.gamma()[x] <= 0) return {-inf, mode};
        logp += cv.edgeCounts[x] * std::log(model.gamma()[x]);
    }
    for (size_t t = 0; t < cv.vertexCounts.size(); ++t) {
        if (cv.vertexCounts[t] == 0) continue;
        if (model.q()[t] <= 0) return {-inf, mode};
        logp += cv.vertexCounts[t] * std::log(model.q()[t]);
    }
    return {logp, mode};
}

}  // namespace graphsw
