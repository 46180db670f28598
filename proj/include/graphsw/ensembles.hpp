#pragma once

#include <vector>

#include "graphsw/graph.hpp"
#include "graphsw/marks.hpp"
#include "graphsw/rng.hpp"

namespace graphsw {

/// Marked sparse Erdos-Renyi ensemble: edge (i,j) carries mark x with
/// probability p_x/n, vertex marks are i.i.d. q over Theta_{1,2}.
class ErModel {
  public:
    ErModel(MarkSpaces marks, std::vector<double> p, std::vector<double> q);

    const MarkSpaces& marks() const { return marks_; }
    const std::vector<double>& p() const { return p_; }
    const std::vector<double>& q() const { return q_; }

    double pTotal() const { return pTotal_; }
    /// Coordinate sum p_{x_i}; pass JointEdgeMark::kBlank for the placeholder.
    double pMarginal(int side, int coord) const;
    double qMarginal(int side, int coord) const;

  private:
    MarkSpaces marks_;
    std::vector<double> p_, q_;
    double pTotal_ = 0;
};

/// Marked configuration model: uniform simple graph over the degree-class
/// matched set, then i.i.d. gamma edge marks and q vertex marks.
class CmModel {
  public:
    CmModel(MarkSpaces marks, int delta, std::vector<double> r, std::vector<double> gamma,
            std::vector<double> q, double slackK);

    const MarkSpaces& marks() const { return marks_; }
    int delta() const { return delta_; }
    const std::vector<double>& r() const { return r_; }
    const std::vector<double>& gamma() const { return gamma_; }
    const std::vector<double>& q() const { return q_; }
    double slackK() const { return slackK_; }

    double gammaMarginal(int side, int coord) const;
    double qMarginal(int side, int coord) const;
    double meanDegree() const;  // E[X] under r

  private:
    MarkSpaces marks_;
    int delta_;
    std::vector<double> r_, gamma_, q_;
    double slackK_;
};

struct DegreeSeq {
    std::vector<int> d;
};

JointGraph sampleEr(const ErModel& model, int n, uint64_t seed);

/// Deterministic degree sequence with class counts near n*r_k: round, repair
/// the total, then fix parity by moving one vertex to an r-positive adjacent
/// class. Result is sorted descending.
DegreeSeq buildDegreeSequence(const CmModel& model, int n);

bool isGraphic(std::vector<int> d);

/// Uniform simple unmarked graph with the given degree sequence class counts:
/// uniformly permute d, pair half-edges, reject on loops or multi-edges.
std::vector<Edge> sampleSimpleWithDegrees(const DegreeSeq& d, RngStream rng);

JointGraph sampleCm(const CmModel& model, int n, uint64_t seed);

/// Exact log-probability under the ER ensemble; -inf when a used mark has a
/// zero parameter.
double logProbEr(const ErModel& model, const JointGraph& j);

enum class CmProbMode { exact, asymptotic };

struct CmLogProb {
    double value;
    CmProbMode mode;
};

/// Exact mode enumerates |G^(n)_d| (n <= 10); asymptotic mode substitutes the
/// degree-sequence count asymptote for the enumeration term.
CmLogProb logProbCm(const CmModel& model, const JointGraph& j, CmProbMode mode);

}  // namespace graphsw
