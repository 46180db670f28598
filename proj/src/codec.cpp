#include "graphsw/codec.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "graphsw/oracles.hpp"
#include "graphsw/rng.hpp"

namespace graphsw {

namespace {

constexpr double kMaterializeLimit = 62 * 0.6931471805599453;  // 62 ln 2

uint64_t sideKey(uint64_t seed, int side) {
    return splitmix64(seed + static_cast<uint64_t>(side) * 0x9e3779b97f4a7c15ULL);
}

}  // namespace

double CodeParams::logL(int side) const {
    double alpha = side == 1 ? rates.alpha1 : rates.alpha2;
    double r = side == 1 ? rates.r1 : rates.r2;
    return alpha * n * std::log(static_cast<double>(n)) + r * n;
}

Binner::Binner(CodeParams params) : params_(params) {
    for (int side = 1; side <= 2; ++side) {
        double logL = params_.logL(side);
        if (logL < 0) throw std::invalid_argument("Binner: log code size must be nonnegative");
        logL_[side - 1] = logL;
        l_[side - 1] = logL <= kMaterializeLimit
                           ? std::max<uint64_t>(1, static_cast<uint64_t>(std::floor(std::exp(logL))))
                           : 0;
    }
}

bool Binner::materialized(int side) const { return l_[side - 1] != 0; }

uint64_t Binner::bin(int side, uint64_t serialHash) const {
    if (!materialized(side)) throw std::logic_error("Binner::bin: lazy mode has no bin indices");
    return splitmix64(sideKey(params_.seed, side) ^ serialHash) % l_[side - 1];
}

bool Binner::sameBin(int side, uint64_t hashA, uint64_t hashB) const {
    if (hashA == hashB) return true;
    if (materialized(side)) return bin(side, hashA) == bin(side, hashB);
    // Pairwise collision with probability 1/L, deterministic per unordered pair.
    uint64_t lo = std::min(hashA, hashB), hi = std::max(hashA, hashB);
    uint64_t u = splitmix64(splitmix64(sideKey(params_.seed, side) ^ lo) + hi);
    long double p = std::exp(static_cast<long double>(-logL_[side - 1]));
    return static_cast<long double>(u) / 18446744073709551616.0L < p;
}

EncodeResult encode(const MarkSpaces& ms, const JointGraph& j, const Binner& binner) {
    EncodeResult res;
    res.hash1 = fnv1a64(serializeGraph(ms, marginal(ms, j, 1)));
    res.hash2 = fnv1a64(serializeGraph(ms, marginal(ms, j, 2)));
    if (binner.materialized(1)) res.bin1 = binner.bin(1, res.hash1);
    if (binner.materialized(2)) res.bin2 = binner.bin(2, res.hash2);
    return res;
}

TypicalDiagnostics typicalEr(const JointGraph& j, const ErModel& model) {
    const auto& ms = model.marks();
    CountVectors cv = countVectors(ms, j);
    double slack = std::pow(static_cast<double>(j.n), 2.0 / 3.0);

    double edgeDev = 0;
    for (int x = 0; x < ms.jointEdgeCount(); ++x)
        edgeDev += std::abs(cv.edgeCounts[x] - j.n * model.p()[x] / 2);
    double vertDev = 0;
    for (int t = 0; t < ms.jointVertexCount(); ++t)
        vertDev += std::abs(cv.vertexCounts[t] - j.n * model.q()[t]);

    TypicalDiagnostics diag;
    diag.conditions.push_back({"edge-counts", edgeDev <= slack});
    diag.conditions.push_back({"vertex-counts", vertDev <= slack});
    for (const auto& c : diag.conditions) diag.typical = diag.typical && c.satisfied;
    return diag;
}

TypicalDiagnostics typicalCm(const JointGraph& j, const CmModel& model) {
    const auto& ms = model.marks();
    CountVectors cv = countVectors(ms, j);
    double slack = std::pow(static_cast<double>(j.n), 2.0 / 3.0);
    const int delta = model.delta();

    DegreeSeq ref = buildDegreeSequence(model, j.n);
    auto refClasses = degreeClassCounts(ref.d);
    auto classes = degreeClassCounts(cv.degreeSeq);
    refClasses.resize(delta + 1, 0);
    classes.resize(std::max(classes.size(), refClasses.size()), 0);
    bool degreesMatch = classes.size() == refClasses.size() &&
                        std::equal(classes.begin(), classes.end(), refClasses.begin());

    long long mN = 0;
    for (int d : ref.d) mN += d;
    mN /= 2;
    long long mSum = 0;
    double markDev = 0;
    for (int x = 0; x < ms.jointEdgeCount(); ++x) {
        mSum += cv.edgeCounts[x];
        markDev += std::abs(cv.edgeCounts[x] - mN * model.gamma()[x]);
    }
    double vertDev = 0;
    for (int t = 0; t < ms.jointVertexCount(); ++t)
        vertDev += std::abs(cv.vertexCounts[t] - j.n * model.q()[t]);

    // Joint (degree, marginal-degree) class counts against the (X, X_i) law.
    ThinningStats st = thinningStats(model);
    auto jointCondition = [&](int side) {
        std::vector<int> sideDeg(j.n, 0);
        for (const auto& e : j.edges)
            if (ms.edgeCoord(e.mark, side) != JointEdgeMark::kBlank) {
                ++sideDeg[e.u];
                ++sideDeg[e.v];
            }
        auto ckl = jointDegreeClassCounts(cv.degreeSeq, sideDeg);
        const auto& law = side == 1 ? st.jointX1 : st.jointX2;
        for (int k = 0; k <= delta; ++k)
            for (int l = 0; l <= k; ++l) {
                long long c = 0;
                if (k < static_cast<int>(ckl.size()) && l < static_cast<int>(ckl[k].size()))
                    c = ckl[k][l];
                if (std::abs(c - j.n * law[k][l]) > slack) return false;
            }
        return true;
    };

    TypicalDiagnostics diag;
    diag.conditions.push_back({"degree-classes", degreesMatch});
    diag.conditions.push_back({"edge-marks", mSum == mN && markDev <= slack});
    diag.conditions.push_back({"vertex-marks", vertDev <= slack});
    diag.conditions.push_back({"joint-classes-1", jointCondition(1)});
    diag.conditions.push_back({"joint-classes-2", jointCondition(2)});
    for (const auto& c : diag.conditions) diag.typical = diag.typical && c.satisfied;
    return diag;
}

namespace {

void checkEnumerationScale(const MarkSpaces& ms, int n) {
    if (n > 7 || ms.jointEdgeCount() > 3 || ms.jointVertexCount() > 2)
        throw oracles::ResourceError(
            "enumerateTypical: exhaustive enumeration limited to n <= 7 with tiny joint alphabets");
}

/// Enumerates all simple jointly marked graphs respecting per-mark count caps,
/// a per-vertex degree cap, and a total edge-count window, then keeps those
/// passing `accept`.
template <typename Accept>
TypicalSet enumerateGraphs(const MarkSpaces& ms, int n, const std::vector<long long>& edgeCap,
                           long long totalMin, long long totalMax, int degreeCap,
                           const std::vector<long long>& vertexCap, Accept accept) {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);

    TypicalSet out;
    JointGraph g;
    g.n = n;
    g.vertexMarks.assign(n, 0);
    std::vector<long long> mUsed(ms.jointEdgeCount(), 0), uUsed(ms.jointVertexCount(), 0);
    std::vector<int> deg(n, 0);
    long long total = 0;

    auto keep = [&]() {
        if (!accept(g)) return;
        out.graphs.push_back(g);
        out.serial1.push_back(serializeGraph(ms, marginal(ms, g, 1)));
        out.serial2.push_back(serializeGraph(ms, marginal(ms, g, 2)));
        out.hash1.push_back(fnv1a64(out.serial1.back()));
        out.hash2.push_back(fnv1a64(out.serial2.back()));
    };
    auto vertsRec = [&](auto&& self, int v) -> void {
        if (v == n) {
            keep();
            return;
        }
        for (int t = 0; t < ms.jointVertexCount(); ++t) {
            if (uUsed[t] >= vertexCap[t]) continue;
            ++uUsed[t];
            g.vertexMarks[v] = t;
            self(self, v + 1);
            --uUsed[t];
        }
    };
    auto edgesRec = [&](auto&& self, int idx) -> void {
        long long slots = static_cast<long long>(pairs.size()) - idx;
        if (total + slots < totalMin) return;
        if (idx == static_cast<int>(pairs.size())) {
            vertsRec(vertsRec, 0);
            return;
        }
        auto [u, v] = pairs[idx];
        self(self, idx + 1);  // no edge on this pair
        if (total < totalMax && deg[u] < degreeCap && deg[v] < degreeCap) {
            ++deg[u];
            ++deg[v];
            ++total;
            for (int x = 0; x < ms.jointEdgeCount(); ++x) {
                if (mUsed[x] >= edgeCap[x]) continue;
                ++mUsed[x];
                g.edges.push_back({u, v, x});
                self(self, idx + 1);
                g.edges.pop_back();
                --mUsed[x];
            }
            --deg[u];
            --deg[v];
            --total;
        }
    };
    edgesRec(edgesRec, 0);
    return out;
}

std::vector<long long> vertexCaps(const MarkSpaces& ms, int n, const std::vector<double>& q,
                                  double slack) {
    std::vector<long long> cap(ms.jointVertexCount());
    for (int t = 0; t < ms.jointVertexCount(); ++t)
        cap[t] = static_cast<long long>(std::floor(n * q[t] + slack));
    return cap;
}

}  // namespace

TypicalSet enumerateTypical(const ErModel& model, int n) {
    const auto& ms = model.marks();
    checkEnumerationScale(ms, n);
    double slack = std::pow(static_cast<double>(n), 2.0 / 3.0);
    std::vector<long long> edgeCap(ms.jointEdgeCount());
    for (int x = 0; x < ms.jointEdgeCount(); ++x)
        edgeCap[x] = static_cast<long long>(std::floor(n * model.p()[x] / 2 + slack));
    long long totalMax = static_cast<long long>(std::floor(n * model.pTotal() / 2 + slack));
    return enumerateGraphs(ms, n, edgeCap, 0, totalMax, n - 1,
                           vertexCaps(ms, n, model.q(), slack),
                           [&](const JointGraph& g) { return typicalEr(g, model).typical; });
}

TypicalSet enumerateTypical(const CmModel& model, int n) {
    const auto& ms = model.marks();
    checkEnumerationScale(ms, n);
    double slack = std::pow(static_cast<double>(n), 2.0 / 3.0);
    DegreeSeq ref = buildDegreeSequence(model, n);
    long long mN = 0;
    for (int d : ref.d) mN += d;
    mN /= 2;
    std::vector<long long> edgeCap(ms.jointEdgeCount());
    for (int x = 0; x < ms.jointEdgeCount(); ++x)
        edgeCap[x] = static_cast<long long>(std::floor(mN * model.gamma()[x] + slack));
    return enumerateGraphs(ms, n, edgeCap, mN, mN, model.delta(),
                           vertexCaps(ms, n, model.q(), slack),
                           [&](const JointGraph& g) { return typicalCm(g, model).typical; });
}

DecodeResult decodeExhaustive(const EncodeResult& bins, const Binner& binner,
                              const TypicalSet& typical) {
    DecodeResult res;
    for (size_t i = 0; i < typical.graphs.size(); ++i) {
        if (!binner.sameBin(1, typical.hash1[i], bins.hash1)) continue;
        if (!binner.sameBin(2, typical.hash2[i], bins.hash2)) continue;
        ++res.survivors;
        if (!res.graph) res.graph = typical.graphs[i];
    }
    if (res.survivors == 1)
        res.status = DecodeStatus::ok;
    else if (res.survivors > 1) {
        res.status = DecodeStatus::ambiguous;
        res.graph.reset();
    }
    return res;
}

WilsonInterval wilson(long long successes, long long trials, double z) {
    WilsonInterval iv;
    if (trials == 0) return iv;
    double p = static_cast<double>(successes) / trials;
    double z2n = z * z / trials;
    double denom = 1 + z2n;
    double center = (p + z2n / 2) / denom;
    double half = z * std::sqrt(p * (1 - p) / trials + z2n / (4.0 * trials)) / denom;
    iv.lo = std::max(0.0, center - half);
    iv.hi = std::min(1.0, center + half);
    return iv;
}

namespace {

template <typename Model, typename Sampler, typename Typical>
SimReport simulateImpl(const Model& model, const CodeParams& params, int trials, uint64_t seed,
                       int jobs, Sampler sampleSource, Typical isTypical) {
    const auto& ms = model.marks();
    TypicalSet typical = enumerateTypical(model, params.n);
    RngStream sourceRoot(seed);
    RngStream binRoot(params.seed);

    SimReport rep;
    rep.trials = trials;
    rep.trialLog.resize(trials);

    auto runTrial = [&](int t) {
        SimTrial trial;
        trial.seed = sourceRoot.split("source", t).seed();
        JointGraph g = sampleSource(model, params.n, trial.seed);
        trial.typical = isTypical(g, model).typical;

        CodeParams trialParams = params;
        trialParams.seed = binRoot.split("binning", t).seed();
        Binner binner(trialParams);
        if (!trial.typical) {
            trial.event = "e1";
        } else {
            EncodeResult enc = encode(ms, g, binner);
            std::string s1 = serializeGraph(ms, marginal(ms, g, 1));
            std::string s2 = serializeGraph(ms, marginal(ms, g, 2));
            bool e2 = false, e3 = false;
            int survivors = 0;
            for (size_t i = 0; i < typical.graphs.size(); ++i) {
                if (!binner.sameBin(1, typical.hash1[i], enc.hash1)) continue;
                if (!binner.sameBin(2, typical.hash2[i], enc.hash2)) continue;
                ++survivors;
                bool same1 = typical.serial1[i] == s1;
                bool same2 = typical.serial2[i] == s2;
                if (same1 && same2) continue;  // the source itself
                if (!same1 && !same2)
                    e2 = true;
                else if (same1)
                    e3 = true;
                // same2 && !same1 is event e4, the residual case below
            }
            trial.decoded = survivors == 1;
            if (!trial.decoded) trial.event = e2 ? "e2" : e3 ? "e3" : "e4";
        }
        rep.trialLog[t] = std::move(trial);
    };

    if (jobs <= 1) {
        for (int t = 0; t < trials; ++t) runTrial(t);
    } else {
        std::vector<std::thread> workers;
        std::atomic<int> next{0};
        for (int w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) runTrial(t);
            });
        for (auto& th : workers) th.join();
    }

    for (const SimTrial& trial : rep.trialLog) {
        if (trial.event.empty()) continue;
        ++rep.pe.count;
        if (trial.event == "e1") ++rep.e1.count;
        if (trial.event == "e2") ++rep.e2.count;
        if (trial.event == "e3") ++rep.e3.count;
        if (trial.event == "e4") ++rep.e4.count;
    }
    for (EventRate* ev : {&rep.pe, &rep.e1, &rep.e2, &rep.e3, &rep.e4}) {
        ev->rate = trials > 0 ? static_cast<double>(ev->count) / trials : 0;
        ev->interval = wilson(ev->count, trials);
    }
    return rep;
}

}  // namespace

SimReport simulate(const ErModel& model, const CodeParams& params, int trials, uint64_t seed,
                   int jobs) {
    return simulateImpl(
        model, params, trials, seed, jobs,
        [](const ErModel& m, int n, uint64_t s) { return sampleEr(m, n, s); },
        [](const JointGraph& g, const ErModel& m) { return typicalEr(g, m); });
}

SimReport simulate(const CmModel& model, const CodeParams& params, int trials, uint64_t seed,
                   int jobs) {
    return simulateImpl(
        model, params, trials, seed, jobs,
        [](const CmModel& m, int n, uint64_t s) { return sampleCm(m, n, s); },
        [](const JointGraph& g, const CmModel& m) { return typicalCm(g, m); });
}

}  // namespace graphsw
