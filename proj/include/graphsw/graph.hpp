#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphsw/marks.hpp"

namespace graphsw {

/// Undirected edge between vertices u < v (0-based) carrying a dense mark index.
struct Edge {
    int u = 0;
    int v = 0;
    int mark = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple marked graph in one domain. Edge marks index into Xi_i,
/// vertex marks into Theta_i. Edges are kept sorted by (u, v).
struct DomainGraph {
    int n = 0;
    int domain = 1;
    std::vector<Edge> edges;
    std::vector<int> vertexMarks;

    friend bool operator==(const DomainGraph&, const DomainGraph&) = default;
};

/// Simple jointly marked graph; edge marks index into Xi_{1,2},
/// vertex marks into Theta_{1,2}.
struct JointGraph {
    int n = 0;
    std::vector<Edge> edges;
    std::vector<int> vertexMarks;

    friend bool operator==(const JointGraph&, const JointGraph&) = default;
};

/// Edge/vertex mark tallies plus the per-vertex degree sequence.
struct CountVectors {
    std::vector<long long> edgeCounts;
    std::vector<long long> vertexCounts;
    std::vector<int> degreeSeq;
};

/// Sorts edges canonically and checks simplicity and mark ranges.
void normalizeAndValidate(const MarkSpaces& ms, JointGraph& g);
void normalizeAndValidate(const MarkSpaces& ms, DomainGraph& g);

JointGraph superpose(const MarkSpaces& ms, const DomainGraph& g1, const DomainGraph& g2);
DomainGraph marginal(const MarkSpaces& ms, const JointGraph& j, int side);

CountVectors countVectors(const MarkSpaces& ms, const JointGraph& j);
CountVectors countVectors(const MarkSpaces& ms, const DomainGraph& g);

/// Projects joint-alphabet counts onto one side.
/// Edge counts come back indexed by Xi_i plus the placeholder in the last slot;
/// vertex counts by Theta_i. The degree sequence is passed through.
CountVectors projectCounts(const MarkSpaces& ms, const CountVectors& cv, int side);

/// c_k tallies of a degree sequence, dense over 0..max(d).
std::vector<long long> degreeClassCounts(const std::vector<int>& d);
/// c_{k,l} joint tallies of two equal-length degree sequences.
std::vector<std::vector<long long>> jointDegreeClassCounts(const std::vector<int>& d,
                                                           const std::vector<int>& dPrime);

std::string serializeGraph(const MarkSpaces& ms, const JointGraph& j);
std::string serializeGraph(const MarkSpaces& ms, const DomainGraph& g);
JointGraph parseJointGraph(const MarkSpaces& ms, const std::string& text);
DomainGraph parseDomainGraph(const MarkSpaces& ms, int domain, const std::string& text);

/// Adjacency lists with per-neighbor mark, shared by BFS-style consumers.
std::vector<std::vector<std::pair<int, int>>> adjacencyList(int n, const std::vector<Edge>& edges);

}  // namespace graphsw
