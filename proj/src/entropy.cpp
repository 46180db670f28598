#include "graphsw/entropy.hpp"

#include <cmath>
#include <numeric>

#include "graphsw/local_weak.hpp"

namespace graphsw {

double sFunc(double x) {
    if (x < 0) throw std::invalid_argument("sFunc: negative argument");
    if (x == 0) return 0;
    return x / 2 - (x / 2) * std::log(x);
}

double shannon(std::span<const double> dist) {
    double sum = 0, h = 0;
    for (double p : dist) {
        if (p < 0) throw std::invalid_argument("shannon: negative probability");
        sum += p;
        if (p > 0) h -= p * std::log(p);
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("shannon: distribution does not sum to 1");
    return h;
}

double logMultinomial(long long n, std::span<const long long> parts) {
    long long used = 0;
    for (long long a : parts) {
        if (a < 0) throw std::invalid_argument("logMultinomial: negative part");
        used += a;
    }
    if (used > n) throw std::invalid_argument("logMultinomial: parts exceed total");
    double val = std::lgamma(static_cast<double>(n) + 1);
    for (long long a : parts) val -= std::lgamma(static_cast<double>(a) + 1);
    val -= std::lgamma(static_cast<double>(n - used) + 1);
    return val;
}

double logBinomial(long long n, long long k) {
    return logMultinomial(n, std::array<long long, 1>{k});
}

namespace {

double entropyOf(const std::vector<double>& dist) {
    double h = 0;
    for (double p : dist)
        if (p > 0) h -= p * std::log(p);
    return h;
}

}  // namespace

ThinningStats thinningStats(const CmModel& model) {
    ThinningStats st;
    st.delta = model.delta();
    const auto& ms = model.marks();
    st.beta1 = 0;
    st.beta2 = 0;
    for (int x = 0; x < ms.jointEdgeCount(); ++x) {
        if (ms.edgeCoord(x, 1) != JointEdgeMark::kBlank) st.beta1 += model.gamma()[x];
        if (ms.edgeCoord(x, 2) != JointEdgeMark::kBlank) st.beta2 += model.gamma()[x];
    }

    const int delta = st.delta;
    auto binomLaw = [&](double beta) {
        std::vector<std::vector<double>> joint(delta + 1, std::vector<double>(delta + 1, 0.0));
        for (int k = 0; k <= delta; ++k)
            for (int l = 0; l <= k; ++l)
                joint[k][l] = model.r()[k] * std::exp(logBinomial(k, l)) * std::pow(beta, l) *
                              std::pow(1 - beta, k - l);
        return joint;
    };
    st.jointX1 = binomLaw(st.beta1);
    st.jointX2 = binomLaw(st.beta2);

    st.lawX = model.r();
    st.lawX1.assign(delta + 1, 0.0);
    st.lawX2.assign(delta + 1, 0.0);
    for (int k = 0; k <= delta; ++k)
        for (int l = 0; l <= k; ++l) {
            st.lawX1[l] += st.jointX1[k][l];
            st.lawX2[l] += st.jointX2[k][l];
        }

    auto scalars = [&](const std::vector<double>& law, double& mean, double& ent,
                       double& meanLogFact) {
        mean = ent = meanLogFact = 0;
        for (int k = 0; k < static_cast<int>(law.size()); ++k) {
            mean += k * law[k];
            if (law[k] > 0) ent -= law[k] * std::log(law[k]);
            meanLogFact += law[k] * std::lgamma(static_cast<double>(k) + 1);
        }
    };
    scalars(st.lawX, st.meanX, st.entX, st.meanLogFactX);
    scalars(st.lawX1, st.meanX1, st.entX1, st.meanLogFactX1);
    scalars(st.lawX2, st.meanX2, st.entX2, st.meanLogFactX2);
    return st;
}

BcSummary bcEntropyEr(const ErModel& model) {
    const auto& ms = model.marks();
    BcSummary bc;
    bc.ensemble = "er";
    LimitDegrees deg = limitDegree(model);
    bc.d12 = deg.d12;
    bc.d1 = deg.d1;
    bc.d2 = deg.d2;

    bc.sigma12 = shannon(model.q());
    for (double px : model.p()) bc.sigma12 += sFunc(px);

    auto marginalSigma = [&](int side) {
        int thetaSize = side == 1 ? ms.theta1Size() : ms.theta2Size();
        int xiSize = side == 1 ? ms.xi1Size() : ms.xi2Size();
        std::vector<double> qi(thetaSize);
        for (int t = 0; t < thetaSize; ++t) qi[t] = model.qMarginal(side, t);
        double sigma = shannon(qi);
        for (int x = 0; x < xiSize; ++x) sigma += sFunc(model.pMarginal(side, x));
        return sigma;
    };
    bc.sigma1 = marginalSigma(1);
    bc.sigma2 = marginalSigma(2);
    bc.sigma2given1 = bc.sigma12 - bc.sigma1;
    bc.sigma1given2 = bc.sigma12 - bc.sigma2;
    return bc;
}

BcSummary bcEntropyCm(const CmModel& model) {
    const auto& ms = model.marks();
    ThinningStats st = thinningStats(model);
    BcSummary bc;
    bc.ensemble = "cm";
    LimitDegrees deg = limitDegree(model);
    bc.d12 = deg.d12;
    bc.d1 = deg.d1;
    bc.d2 = deg.d2;
    if (!(bc.d1 > 0) || !(bc.d2 > 0))
        throw std::invalid_argument("bcEntropyCm: marginal expected degree must be positive");

    bc.sigma12 = -sFunc(bc.d12) + st.entX - st.meanLogFactX + shannon(model.q()) +
                 (bc.d12 / 2) * entropyOf(model.gamma());

    auto marginalSigma = [&](int side) {
        int thetaSize = side == 1 ? ms.theta1Size() : ms.theta2Size();
        int xiSize = side == 1 ? ms.xi1Size() : ms.xi2Size();
        double beta = side == 1 ? st.beta1 : st.beta2;
        double d = side == 1 ? bc.d1 : bc.d2;
        std::vector<double> qi(thetaSize);
        for (int t = 0; t < thetaSize; ++t) qi[t] = model.qMarginal(side, t);
        // H(Gamma_i | Gamma_i != placeholder), from the renormalized law.
        std::vector<double> cond(xiSize);
        for (int x = 0; x < xiSize; ++x) cond[x] = model.gammaMarginal(side, x) / beta;
        double entXi = side == 1 ? st.entX1 : st.entX2;
        double mlfXi = side == 1 ? st.meanLogFactX1 : st.meanLogFactX2;
        return -sFunc(d) + entXi - mlfXi + entropyOf(qi) + (d / 2) * entropyOf(cond);
    };
    bc.sigma1 = marginalSigma(1);
    bc.sigma2 = marginalSigma(2);
    bc.sigma2given1 = bc.sigma12 - bc.sigma1;
    bc.sigma1given2 = bc.sigma12 - bc.sigma2;
    return bc;
}

double exactShannonEr(const ErModel& model, int n) {
    if (n <= model.pTotal())
        throw std::invalid_argument("exactShannonEr: need n > sum of edge intensities");
    // Per-pair edge distribution {p_x/n} plus absence mass, evaluated stably.
    double hEdge = 0;
    for (double px : model.p()) {
        if (px > 0) hEdge -= (px / n) * (std::log(px) - std::log(static_cast<double>(n)));
    }
    double s = model.pTotal() / n;
    hEdge -= (1 - s) * std::log1p(-s);
    const double pairs = static_cast<double>(n) * (n - 1) / 2;
    return pairs * hEdge + n * shannon(model.q());
}

bool lexSucc(std::pair<double, double> a, std::pair<double, double> b) {
    return a.first > b.first || (a.first == b.first && a.second > b.second);
}

bool lexSucceq(std::pair<double, double> a, std::pair<double, double> b) {
    return lexSucc(a, b) || a == b;
}

RateRegionResult rateRegionContains(const BcSummary& bc, const RateTuple& t) {
    RateRegionResult res;
    auto check = [](const char* name, double alpha, double r, double alphaThr,
                    double rThr) {
        ConstraintCheck c;
        c.name = name;
        c.alphaValue = alpha;
        c.rValue = r;
        c.alphaThreshold = alphaThr;
        c.rThreshold = rThr;
        c.satisfied = lexSucceq({alpha, r}, {alphaThr, rThr});
        return c;
    };
    res.constraints[0] =
        check("encoder1", t.alpha1, t.r1, (bc.d12 - bc.d2) / 2, bc.sigma1given2);
    res.constraints[1] =
        check("encoder2", t.alpha2, t.r2, (bc.d12 - bc.d1) / 2, bc.sigma2given1);
    res.constraints[2] =
        check("sum", t.alpha1 + t.alpha2, t.r1 + t.r2, bc.d12 / 2, bc.sigma12);
    res.contained = res.constraints[0].satisfied && res.constraints[1].satisfied &&
                    res.constraints[2].satisfied;
    return res;
}

}  // namespace graphsw
