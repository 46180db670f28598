#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "graphsw/entropy.hpp"

using namespace graphsw;

namespace {

MarkSpaces minimalMarks() { return MarkSpaces({"a"}, {"b"}, {"s"}, {"t"}); }

}  // namespace

TEST_CASE("sFunc") {
    CHECK(sFunc(0.0) == 0.0);
    CHECK(sFunc(1.0) == doctest::Approx(0.5));
    CHECK(sFunc(std::exp(1.0)) == doctest::Approx(0.0));
    CHECK(sFunc(2.0) == doctest::Approx(1.0 - std::log(2.0)));
    CHECK_THROWS_AS(sFunc(-1.0), std::invalid_argument);
}

TEST_CASE("shannon") {
    std::vector<double> uniform4(4, 0.25);
    CHECK(shannon(uniform4) == doctest::Approx(std::log(4.0)));
    std::vector<double> point{1.0, 0.0};
    CHECK(shannon(point) == doctest::Approx(0.0));
    std::vector<double> half{0.5, 0.5};
    CHECK(shannon(half) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("log multinomials") {
    std::vector<long long> parts{2, 2};
    CHECK(logMultinomial(4, parts) == doctest::Approx(std::log(6.0)));
    std::vector<long long> partial{1};
    // 5! / (1! 4!) = 5: the remainder is implicit.
    CHECK(logMultinomial(5, partial) == doctest::Approx(std::log(5.0)));
    CHECK(logBinomial(5, 2) == doctest::Approx(std::log(10.0)));
    CHECK(logBinomial(5, 0) == doctest::Approx(0.0));
    std::vector<long long> overfull{3, 3};
    CHECK_THROWS_AS(logMultinomial(4, overfull), std::invalid_argument);
}

TEST_CASE("thinningStats") {
    MarkSpaces ms = minimalMarks();
    SUBCASE("X = 2, balanced marks: X_i ~ Binomial(2, 3/4)") {
        CmModel m(ms, 2, {0.0, 0.0, 1.0}, {0.5, 0.25, 0.25}, {1.0}, 1.0);
        ThinningStats ts = thinningStats(m);
        CHECK(ts.beta1 == doctest::Approx(0.75));  // a:b + a:_
        CHECK(ts.beta2 == doctest::Approx(0.75));
        CHECK(ts.lawX1[0] == doctest::Approx(0.0625));
        CHECK(ts.lawX1[1] == doctest::Approx(0.375));
        CHECK(ts.lawX1[2] == doctest::Approx(0.5625));
        CHECK(ts.meanX == doctest::Approx(2.0));
        CHECK(ts.meanX1 == doctest::Approx(ts.beta1 * ts.meanX));
        CHECK(ts.jointX1[2][1] == doctest::Approx(0.375));
    }
    SUBCASE("joint law is consistent with the marginals") {
        CmModel m(ms, 3, {0.1, 0.2, 0.4, 0.3}, {0.4, 0.35, 0.25}, {1.0}, 1.0);
        ThinningStats ts = thinningStats(m);
        for (int k = 0; k <= 3; ++k) {
            double rowSum = 0;
            for (int l = 0; l <= k; ++l) rowSum += ts.jointX1[k][l];
            CHECK(rowSum == doctest::Approx(ts.lawX[k]));
        }
        double mean1 = 0;
        for (size_t l = 0; l < ts.lawX1.size(); ++l) mean1 += l * ts.lawX1[l];
        CHECK(mean1 == doctest::Approx(ts.beta1 * ts.meanX));
        CHECK(ts.entX == doctest::Approx(shannon(m.r())));
    }
}

TEST_CASE("bcEntropyEr") {
    MarkSpaces ms = minimalMarks();
    SUBCASE("single joint mark with intensity 1") {
        ErModel m(ms, {1.0, 0.0, 0.0}, {1.0});
        BcSummary bc = bcEntropyEr(m);
        CHECK(bc.sigma12 == doctest::Approx(0.5));  // H(Q) + s(1)
        CHECK(bc.sigma1 == doctest::Approx(0.5));
        CHECK(bc.sigma2 == doctest::Approx(0.5));
        CHECK(bc.sigma2given1 == doctest::Approx(0.0));
        CHECK(bc.d12 == doctest::Approx(1.0));
        CHECK(bc.d1 == doctest::Approx(1.0));
        CHECK(bc.d2 == doctest::Approx(1.0));
        CHECK(bc.ensemble == "er");
    }
    SUBCASE("general model: closed form and subtraction identities") {
        MarkSpaces ms2({"a"}, {"b"}, {"s", "u"}, {"t"});
        ErModel m(ms2, {0.5, 0.3, 0.4}, {0.25, 0.75});
        BcSummary bc = bcEntropyEr(m);
        double hq = shannon(m.q());
        CHECK(bc.sigma12 == doctest::Approx(hq + sFunc(0.5) + sFunc(0.3) + sFunc(0.4)));
        CHECK(bc.sigma1 == doctest::Approx(hq + sFunc(0.8)));
        // Theta2 is a singleton, so the side-2 vertex-mark entropy is zero.
        CHECK(bc.sigma2 == doctest::Approx(sFunc(0.9)));
        CHECK(bc.sigma2given1 == doctest::Approx(bc.sigma12 - bc.sigma1));
        CHECK(bc.sigma1given2 == doctest::Approx(bc.sigma12 - bc.sigma2));
        CHECK(bc.d12 == doctest::Approx(1.2));
        CHECK(bc.d1 == doctest::Approx(0.8));
        CHECK(bc.d2 == doctest::Approx(0.9));
    }
}

TEST_CASE("bcEntropyCm") {
    MarkSpaces ms = minimalMarks();
    SUBCASE("2-regular with a single joint mark") {
        CmModel m(ms, 2, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {1.0}, 1.0);
        BcSummary bc = bcEntropyCm(m);
        // -s(2) + H(X) - E[log X!] + H(Q) + (d/2) H(Gamma) = -(1-ln2) - ln2.
        CHECK(bc.sigma12 == doctest::Approx(-1.0));
        CHECK(bc.d12 == doctest::Approx(2.0));
        CHECK(bc.d1 == doctest::Approx(2.0));
        CHECK(bc.sigma2given1 == doctest::Approx(bc.sigma12 - bc.sigma1));
        CHECK(bc.ensemble == "cm");
    }
    SUBCASE("general model identities") {
        CmModel m(ms, 3, {0.1, 0.2, 0.4, 0.3}, {0.4, 0.35, 0.25}, {1.0}, 1.0);
        BcSummary bc = bcEntropyCm(m);
        ThinningStats ts = thinningStats(m);
        CHECK(bc.d12 == doctest::Approx(m.meanDegree()));
        CHECK(bc.d1 == doctest::Approx(ts.beta1 * m.meanDegree()));
        CHECK(bc.d2 == doctest::Approx(ts.beta2 * m.meanDegree()));
        // Closed form for the joint entropy.
        double expected = -sFunc(bc.d12) + ts.entX - ts.meanLogFactX + shannon(m.q()) +
                          (bc.d12 / 2) * shannon(m.gamma());
        CHECK(bc.sigma12 == doctest::Approx(expected));
        CHECK(bc.sigma2given1 == doctest::Approx(bc.sigma12 - bc.sigma1));
        CHECK(bc.sigma1given2 == doctest::Approx(bc.sigma12 - bc.sigma2));
    }
}

TEST_CASE("exactShannonEr") {
    MarkSpaces ms = minimalMarks();
    SUBCASE("n = 2 with a single unit-intensity mark is one fair bit") {
        ErModel m(ms, {1.0, 0.0, 0.0}, {1.0});
        CHECK(exactShannonEr(m, 2) == doctest::Approx(std::log(2.0)));
    }
    SUBCASE("normalized entropy approaches the limit") {
        ErModel m(ms, {1.0, 0.0, 0.0}, {1.0});
        BcSummary bc = bcEntropyEr(m);
        double prev = 1e100;
        for (int n : {10, 100, 1000, 10000}) {
            double normalized =
                (exactShannonEr(m, n) - (bc.d12 / 2) * n * std::log(static_cast<double>(n))) / n;
            double err = std::abs(normalized - bc.sigma12);
            CHECK(err < prev);
            prev = err;
        }
        CHECK(prev < 1e-2);
    }
}

TEST_CASE("lexicographic order") {
    CHECK(lexSucc({1.0, 0.0}, {0.0, 5.0}));
    CHECK(lexSucc({1.0, 2.0}, {1.0, 1.0}));
    CHECK_FALSE(lexSucc({1.0, 1.0}, {1.0, 1.0}));
    CHECK_FALSE(lexSucc({0.0, 5.0}, {1.0, 0.0}));
    CHECK(lexSucceq({1.0, 1.0}, {1.0, 1.0}));
    CHECK(lexSucceq({2.0, -3.0}, {1.0, 10.0}));
    CHECK_FALSE(lexSucceq({1.0, 0.9}, {1.0, 1.0}));
}

TEST_CASE("rate region") {
    MarkSpaces ms = minimalMarks();
    ErModel m(ms, {1.0, 0.0, 0.0}, {1.0});
    BcSummary bc = bcEntropyEr(m);  // thresholds (0,0), (0,0), (0.5,0.5)

    SUBCASE("interior point") {
        CHECK(rateRegionContains(bc, {0.3, 0.0, 0.3, 0.0}).contained);
    }
    SUBCASE("sum boundary holds with equality") {
        CHECK(rateRegionContains(bc, {0.25, 0.25, 0.25, 0.25}).contained);
    }
    SUBCASE("sum rate just below the boundary fails") {
        RateRegionResult r = rateRegionContains(bc, {0.25, 0.24, 0.25, 0.25});
        CHECK_FALSE(r.contained);
        CHECK(r.constraints[0].satisfied);
        CHECK(r.constraints[1].satisfied);
        CHECK_FALSE(r.constraints[2].satisfied);
    }
    SUBCASE("alpha excess beats any rate deficit lexicographically") {
        CHECK(rateRegionContains(bc, {0.3, -50.0, 0.21, -50.0}).contained);
    }
    SUBCASE("per-encoder constraint") {
        RateRegionResult r = rateRegionContains(bc, {-0.1, 0.0, 0.7, 0.7});
        CHECK_FALSE(r.contained);
        CHECK_FALSE(r.constraints[0].satisfied);
        CHECK(r.constraints[1].satisfied);
    }
    SUBCASE("thresholds expose the conditional entropies") {
        MarkSpaces ms2({"a"}, {"b"}, {"s", "u"}, {"t"});
        ErModel m2(ms2, {0.5, 0.3, 0.4}, {0.25, 0.75});
        BcSummary bc2 = bcEntropyEr(m2);
        RateRegionResult r = rateRegionContains(bc2, {1.0, 1.0, 1.0, 1.0});
        CHECK(r.constraints[0].alphaThreshold == doctest::Approx((bc2.d12 - bc2.d2) / 2));
        CHECK(r.constraints[0].rThreshold == doctest::Approx(bc2.sigma1given2));
        CHECK(r.constraints[1].alphaThreshold == doctest::Approx((bc2.d12 - bc2.d1) / 2));
        CHECK(r.constraints[1].rThreshold == doctest::Approx(bc2.sigma2given1));
        CHECK(r.constraints[2].alphaThreshold == doctest::Approx(bc2.d12 / 2));
        CHECK(r.constraints[2].rThreshold == doctest::Approx(bc2.sigma12));
    }
}
