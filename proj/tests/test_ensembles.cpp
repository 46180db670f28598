#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>

#include "graphsw/ensembles.hpp"
#include "graphsw/entropy.hpp"
#include "graphsw/oracles.hpp"

using namespace graphsw;

namespace {

MarkSpaces minimalMarks() { return MarkSpaces({"a"}, {"b"}, {"s"}, {"t"}); }

ErModel simpleEr(std::vector<double> p) {
    return ErModel(minimalMarks(), std::move(p), {1.0});
}

CmModel simpleCm(int delta, std::vector<double> r, std::vector<double> gamma, double k = 1.0) {
    return CmModel(minimalMarks(), delta, std::move(r), std::move(gamma), {1.0}, k);
}

// All joint graphs on n vertices over the minimal mark spaces (single theta).
std::vector<JointGraph> allJointGraphs(const MarkSpaces& ms, int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
    int options = ms.jointEdgeCount() + 1;  // marks plus "no edge"
    long long total = 1;
    for (size_t i = 0; i < pairs.size(); ++i) total *= options;
    std::vector<JointGraph> out;
    for (long long code = 0; code < total; ++code) {
        JointGraph g;
        g.n = n;
        g.vertexMarks.assign(n, 0);
        long long c = code;
        for (auto [u, v] : pairs) {
            int choice = static_cast<int>(c % options);
            c /= options;
            if (choice > 0) g.edges.push_back({u, v, choice - 1});
        }
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace

TEST_CASE("model validation") {
    MarkSpaces ms = minimalMarks();
    CHECK_THROWS_AS(ErModel(ms, {0.0, 0.0, 0.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(ErModel(ms, {0.5, -0.1, 0.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(ErModel(ms, {0.5, 0.3}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(ErModel(ms, {0.5, 0.3, 0.2}, {0.5}), std::invalid_argument);
    // Zero mass on one side's real mark symbol.
    CHECK_THROWS_AS(ErModel(ms, {0.0, 0.0, 0.5}, {1.0}), std::invalid_argument);

    CHECK_THROWS_AS(CmModel(ms, 2, {1.0, 0.0, 0.0}, {0.5, 0.3, 0.2}, {1.0}, 1.0),
                    std::invalid_argument);  // r0 = 1
    CHECK_THROWS_AS(CmModel(ms, 2, {0.0, 0.0, 1.0}, {0.5, 0.3, 0.2}, {1.0}, 0.0),
                    std::invalid_argument);  // K = 0
    CHECK_THROWS_AS(CmModel(ms, 2, {0.0, 0.0, 1.0}, {0.6, 0.3, 0.2}, {1.0}, 1.0),
                    std::invalid_argument);  // gamma not a distribution

    ErModel er = simpleEr({0.5, 0.3, 0.4});
    CHECK(er.pTotal() == doctest::Approx(1.2));
    CHECK(er.pMarginal(1, 0) == doctest::Approx(0.8));
    CHECK(er.pMarginal(2, 0) == doctest::Approx(0.9));
    CHECK(er.pMarginal(1, JointEdgeMark::kBlank) == doctest::Approx(0.4));
}

TEST_CASE("sampleEr mean edge count and pair frequency") {
    // pTotal = 1, so the mean number of edges is C(n,2)/n = (n-1)/2.
    ErModel model = simpleEr({0.5, 0.25, 0.25});
    const int n = 200;
    const int reps = 100;
    double sum = 0;
    for (int s = 0; s < reps; ++s) sum += static_cast<double>(sampleEr(model, n, s).edges.size());
    double mean = sum / reps;
    double expected = (n - 1) / 2.0;
    // Var of the edge count is about C(n,2) p(1-p) ~ expected; 3 sigma of the mean.
    double sigma = std::sqrt(expected / reps);
    CHECK(std::abs(mean - expected) < 3 * sigma + 1e-9);

    SUBCASE("fixed pair appears with probability pTotal/n") {
        const int nSmall = 10;
        const int trials = 20000;
        int hits = 0;
        for (int s = 0; s < trials; ++s) {
            JointGraph g = sampleEr(model, nSmall, 1000 + s);
            for (const Edge& e : g.edges)
                if (e.u == 0 && e.v == 1) ++hits;
        }
        double freq = static_cast<double>(hits) / trials;
        CHECK(freq == doctest::Approx(1.0 / nSmall).epsilon(0.15));
    }
    SUBCASE("deterministic in the seed") {
        CHECK(sampleEr(model, 50, 123) == sampleEr(model, 50, 123));
        CHECK(sampleEr(model, 50, 123) != sampleEr(model, 50, 124));
    }
    SUBCASE("n must exceed the total intensity") {
        CHECK_THROWS_AS(sampleEr(model, 1, 0), std::invalid_argument);
    }
}

TEST_CASE("buildDegreeSequence") {
    SUBCASE("point mass at 2") {
        CmModel m = simpleCm(2, {0.0, 0.0, 1.0}, {0.5, 0.3, 0.2});
        DegreeSeq d = buildDegreeSequence(m, 6);
        CHECK(d.d == std::vector<int>{2, 2, 2, 2, 2, 2});
    }
    SUBCASE("half on 1 and 2, odd n") {
        CmModel m = simpleCm(2, {0.0, 0.5, 0.5}, {0.5, 0.3, 0.2});
        DegreeSeq d = buildDegreeSequence(m, 5);
        // Even total forces c1 = 2, c2 = 3; sorted descending.
        CHECK(d.d == std::vector<int>{2, 2, 2, 1, 1});
    }
    SUBCASE("class counts stay within the slack budget") {
        CmModel m = simpleCm(3, {0.1, 0.3, 0.4, 0.2}, {0.5, 0.3, 0.2}, 2.0);
        for (int n : {30, 100, 500}) {
            DegreeSeq d = buildDegreeSequence(m, n);
            CHECK(static_cast<int>(d.d.size()) == n);
            long long degSum = std::accumulate(d.d.begin(), d.d.end(), 0LL);
            CHECK(degSum % 2 == 0);
            auto c = degreeClassCounts(d.d);
            c.resize(4, 0);
            double slack = 0;
            for (int k = 0; k <= 3; ++k) slack += std::abs(c[k] - n * m.r()[k]);
            CHECK(slack <= m.slackK() * std::sqrt(static_cast<double>(n)));
        }
    }
}

TEST_CASE("isGraphic") {
    CHECK(isGraphic({2, 2, 2}));
    CHECK(isGraphic({3, 3, 3, 3}));
    CHECK(isGraphic({1, 1, 1, 1}));
    CHECK(isGraphic({}));
    CHECK_FALSE(isGraphic({1, 1, 1}));      // odd sum
    CHECK_FALSE(isGraphic({3, 1}));         // degree exceeds n-1
    CHECK_FALSE(isGraphic({3, 3, 1, 1}));   // fails Erdos-Gallai at k=2
}

TEST_CASE("sampleSimpleWithDegrees") {
    SUBCASE("single edge") {
        std::vector<Edge> e = sampleSimpleWithDegrees(DegreeSeq{{1, 1}}, RngStream(0));
        REQUIRE(e.size() == 1);
        CHECK(e[0].u == 0);
        CHECK(e[0].v == 1);
    }
    SUBCASE("triangle") {
        std::vector<Edge> e = sampleSimpleWithDegrees(DegreeSeq{{2, 2, 2}}, RngStream(1));
        CHECK(e.size() == 3);
    }
    SUBCASE("perfect matchings on four vertices are uniform") {
        // d = (1,1,1,1) admits exactly three graphs; each should come up 1/3.
        const int trials = 30000;
        std::map<std::vector<std::pair<int, int>>, int> hist;
        for (int s = 0; s < trials; ++s) {
            std::vector<Edge> e =
                sampleSimpleWithDegrees(DegreeSeq{{1, 1, 1, 1}}, RngStream(s));
            std::vector<std::pair<int, int>> key;
            for (const Edge& ed : e) key.push_back({ed.u, ed.v});
            std::sort(key.begin(), key.end());
            ++hist[key];
        }
        REQUIRE(hist.size() == 3);
        for (const auto& [key, count] : hist)
            CHECK(static_cast<double>(count) / trials == doctest::Approx(1.0 / 3).epsilon(0.06));
    }
}

TEST_CASE("sampleCm") {
    SUBCASE("2-regular on three vertices is the triangle") {
        CmModel m = simpleCm(2, {0.0, 0.0, 1.0}, {0.5, 0.3, 0.2});
        JointGraph g = sampleCm(m, 3, 5);
        CHECK(g.edges.size() == 3);
        CountVectors cv = countVectors(m.marks(), g);
        CHECK(cv.degreeSeq == std::vector<int>{2, 2, 2});
    }
    SUBCASE("edge marks are i.i.d. gamma") {
        CmModel m = simpleCm(2, {0.0, 0.0, 1.0}, {0.5, 0.25, 0.25});
        const int trials = 4000;
        long long markHits[3] = {0, 0, 0};
        long long edgeTotal = 0;
        for (int s = 0; s < trials; ++s) {
            JointGraph g = sampleCm(m, 6, s);
            for (const Edge& e : g.edges) ++markHits[e.mark];
            edgeTotal += static_cast<long long>(g.edges.size());
        }
        for (int x = 0; x < 3; ++x)
            CHECK(static_cast<double>(markHits[x]) / edgeTotal ==
                  doctest::Approx(m.gamma()[x]).epsilon(0.1));
    }
    SUBCASE("vertex marks follow q") {
        MarkSpaces ms({"a"}, {"b"}, {"s", "u"}, {"t"});
        CmModel m(ms, 2, {0.0, 0.0, 1.0}, {0.5, 0.3, 0.2}, {0.3, 0.7}, 1.0);
        const int trials = 4000;
        long long hits = 0;
        for (int s = 0; s < trials; ++s) {
            JointGraph g = sampleCm(m, 6, s);
            for (int t : g.vertexMarks)
                if (t == 0) ++hits;
        }
        CHECK(static_cast<double>(hits) / (6.0 * trials) == doctest::Approx(0.3).epsilon(0.1));
    }
    SUBCASE("deterministic in the seed") {
        CmModel m = simpleCm(3, {0.0, 0.5, 0.3, 0.2}, {0.5, 0.3, 0.2});
        CHECK(sampleCm(m, 20, 9) == sampleCm(m, 20, 9));
    }
}

TEST_CASE("logProbEr") {
    MarkSpaces ms = minimalMarks();
    SUBCASE("single possible edge at n=2") {
        // One joint mark with p = 1: the graph with that edge has probability
        // p/n = 1/2.
        ErModel m(ms, {1.0, 0.0, 0.0}, {1.0});
        JointGraph withEdge{2, {{0, 1, 0}}, {0, 0}};
        CHECK(logProbEr(m, withEdge) == doctest::Approx(std::log(0.5)));
        JointGraph without{2, {}, {0, 0}};
        CHECK(logProbEr(m, without) == doctest::Approx(std::log(0.5)));
    }
    SUBCASE("zero-parameter mark gives -inf") {
        ErModel m(ms, {1.0, 0.0, 0.0}, {1.0});
        JointGraph g{2, {{0, 1, 1}}, {0, 0}};
        CHECK(logProbEr(m, g) == -std::numeric_limits<double>::infinity());
    }
    SUBCASE("normalization at n = 2 and n = 3") {
        ErModel m = simpleEr({0.5, 0.3, 0.4});
        for (int n : {2, 3}) {
            double total = 0;
            for (const JointGraph& g : allJointGraphs(ms, n))
                total += std::exp(logProbEr(m, g));
            CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("logProbCm") {
    MarkSpaces ms = minimalMarks();
    SUBCASE("triangle with deterministic marks has probability 1") {
        CmModel m(ms, 2, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {1.0}, 1.0);
        JointGraph tri{3, {{0, 1, 0}, {0, 2, 0}, {1, 2, 0}}, {0, 0, 0}};
        CmLogProb lp = logProbCm(m, tri, CmProbMode::exact);
        CHECK(lp.value == doctest::Approx(0.0));
    }
    SUBCASE("triangle with spread marks") {
        CmModel m = simpleCm(2, {0.0, 0.0, 1.0}, {0.5, 0.25, 0.25});
        JointGraph tri{3, {{0, 1, 0}, {0, 2, 1}, {1, 2, 2}}, {0, 0, 0}};
        CmLogProb lp = logProbCm(m, tri, CmProbMode::exact);
        CHECK(lp.value == doctest::Approx(std::log(0.5 * 0.25 * 0.25)));
    }
    SUBCASE("wrong degree classes are rejected") {
        CmModel m = simpleCm(2, {0.0, 0.0, 1.0}, {0.5, 0.25, 0.25});
        JointGraph path{3, {{0, 1, 0}, {1, 2, 0}}, {0, 0, 0}};
        CHECK_THROWS_AS(logProbCm(m, path, CmProbMode::exact), std::invalid_argument);
    }
    SUBCASE("zero-parameter mark gives -inf") {
        CmModel m(ms, 2, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {1.0}, 1.0);
        JointGraph tri{3, {{0, 1, 0}, {0, 2, 0}, {1, 2, 1}}, {0, 0, 0}};
        CHECK(logProbCm(m, tri, CmProbMode::exact).value ==
              -std::numeric_limits<double>::infinity());
    }
    SUBCASE("marking normalization given the support graph") {
        // For the fixed triangle, marked probabilities over all mark choices
        // must sum to the probability of the unmarked triangle (which is 1).
        CmModel m = simpleCm(2, {0.0, 0.0, 1.0}, {0.5, 0.3, 0.2});
        double total = 0;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c) {
                    JointGraph tri{3, {{0, 1, a}, {0, 2, b}, {1, 2, c}}, {0, 0, 0}};
                    total += std::exp(logProbCm(m, tri, CmProbMode::exact).value);
                }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("asymptotic mode tracks exact mode at n = 10") {
        CmModel m = simpleCm(2, {0.0, 0.0, 1.0}, {0.5, 0.3, 0.2});
        JointGraph g = sampleCm(m, 10, 3);
        double exact = logProbCm(m, g, CmProbMode::exact).value;
        double asym = logProbCm(m, g, CmProbMode::asymptotic).value;
        CHECK(std::abs(exact - asym) / std::abs(exact) < 0.15);
    }
}
