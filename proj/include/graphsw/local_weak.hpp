#pragma once

#include <map>
#include <string>
#include <vector>

#include "graphsw/ensembles.hpp"
#include "graphsw/graph.hpp"

namespace graphsw {

/// Connected rooted marked graph; root is vertex 0, marks are token strings so
/// both joint and single-domain graphs share one representation.
struct RootedGraph {
    std::vector<std::string> vertexTokens;
    std::vector<std::tuple<int, int, std::string>> edges;  // u < v
};

/// Canonical encoding of a depth-<=h rooted marked graph isomorphism class.
/// Two rooted graphs map to the same encoding iff they are isomorphic by a
/// root-preserving, adjacency- and mark-preserving bijection.
struct RootedClass {
    std::string enc;
    int depth = 0;

    friend bool operator==(const RootedClass&, const RootedClass&) = default;
    friend auto operator<=>(const RootedClass&, const RootedClass&) = default;
};

/// Trees use a recursive minimal encoding; cyclic neighborhoods fall back to
/// minimization over invariant-respecting labelings (at most 12 vertices).
RootedClass canonicalize(const RootedGraph& g, int depth);
RootedGraph decodeClass(const RootedClass& c);

enum class DistProvenance { empirical, limitSampled, exact };

struct NeighborhoodDist {
    std::map<std::string, double> probs;  // keyed by RootedClass encoding
    int depth = 0;
    DistProvenance provenance = DistProvenance::exact;
};

RootedClass neighborhood(const MarkSpaces& ms, const JointGraph& g, int v, int h);
RootedClass neighborhood(const MarkSpaces& ms, const DomainGraph& g, int v, int h);

/// Exact law of neighborhood(g, v, h) under a uniformly random vertex v,
/// computed by a full sweep.
NeighborhoodDist empiricalU(const MarkSpaces& ms, const JointGraph& g, int h);
NeighborhoodDist empiricalU(const MarkSpaces& ms, const DomainGraph& g, int h);

/// r'_k = (k+1) r_{k+1} / E[X].
std::vector<double> sizeBiased(const std::vector<double>& r);

/// Depth-h truncation of the marked Poisson Galton-Watson limit of the ER
/// ensemble.
RootedClass sampleGwEr(const ErModel& model, int h, RngStream rng);
/// Same for a single-domain marginal tree with per-mark Poisson intensities.
RootedClass sampleGwErMarginal(const ErModel& model, int side, int h, RngStream rng);

/// Depth-h truncation of the configuration-model Galton-Watson limit.
RootedClass sampleGwCm(const CmModel& model, int h, RngStream rng);

/// Projects a jointly marked class to one domain: project marks, drop edges
/// blank on that side, keep the root component, re-truncate, re-canonicalize.
RootedClass marginalClass(const RootedClass& c, int side);

/// Total variation distance between two same-depth class distributions.
double distTV(const NeighborhoodDist& d1, const NeighborhoodDist& d2);

struct LimitDegrees {
    double d12, d1, d2;
};

LimitDegrees limitDegree(const ErModel& model);
LimitDegrees limitDegree(const CmModel& model);

}  // namespace graphsw
