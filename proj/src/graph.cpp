#include "graphsw/graph.hpp"

#include <algorithm>
#include <sstream>

namespace graphsw {

namespace {

void checkSimple(int n, std::vector<Edge>& edges, int markCount) {
    for (auto& e : edges) {
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u == e.v) throw std::invalid_argument("self-loop");
        if (e.u < 0 || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
        if (e.mark < 0 || e.mark >= markCount) throw std::invalid_argument("edge mark out of range");
    }
    std::sort(edges.begin(), edges.end());
    for (size_t i = 1; i < edges.size(); ++i)
        if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
            throw std::invalid_argument("parallel edge");
}

void checkVertexMarks(int n, const std::vector<int>& marks, int markCount) {
    if (static_cast<int>(marks.size()) != n)
        throw std::invalid_argument("vertex mark list length mismatch");
    for (int m : marks)
        if (m < 0 || m >= markCount) throw std::invalid_argument("vertex mark out of range");
}

std::vector<std::string> splitWs(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

struct ParsedBody {
    int n = 0;
    std::vector<std::tuple<int, int, std::string>> edges;  // 0-based endpoints, mark token
    std::vector<std::string> vertexTokens;
};

[[noreturn]] void parseFail(int lineNo, const std::string& msg) {
    throw std::runtime_error("parse error at line " + std::to_string(lineNo) + ": " + msg);
}

ParsedBody parseBody(const std::string& text) {
    ParsedBody body;
    std::istringstream is(text);
    std::string line;
    int lineNo = 0;
    bool haveHeader = false;
    std::vector<bool> markSeen;
    while (std::getline(is, line)) {
        ++lineNo;
        auto toks = splitWs(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (toks[0] == "g") {
            if (haveHeader) parseFail(lineNo, "duplicate header");
            if (toks.size() != 2) parseFail(lineNo, "header must be 'g <n>'");
            body.n = std::stoi(toks[1]);
            if (body.n < 0) parseFail(lineNo, "negative vertex count");
            body.vertexTokens.assign(body.n, "");
            markSeen.assign(body.n, false);
            haveHeader = true;
        } else if (toks[0] == "v") {
            if (!haveHeader) parseFail(lineNo, "vertex line before header");
            if (toks.size() != 3) parseFail(lineNo, "vertex line must be 'v <id> <mark>'");
            int id = std::stoi(toks[1]);
            if (id < 1 || id > body.n) parseFail(lineNo, "vertex id out of range");
            if (markSeen[id - 1]) parseFail(lineNo, "duplicate vertex line");
            markSeen[id - 1] = true;
            body.vertexTokens[id - 1] = toks[2];
        } else if (toks[0] == "e") {
            if (!haveHeader) parseFail(lineNo, "edge line before header");
            if (toks.size() != 4) parseFail(lineNo, "edge line must be 'e <i> <j> <mark>'");
            int u = std::stoi(toks[1]), v = std::stoi(toks[2]);
            if (u < 1 || u > body.n || v < 1 || v > body.n)
                parseFail(lineNo, "edge endpoint out of range");
            if (u == v) parseFail(lineNo, "self-loop");
            body.edges.emplace_back(u - 1, v - 1, toks[3]);
        } else {
            parseFail(lineNo, "unknown record '" + toks[0] + "'");
        }
    }
    if (!haveHeader) throw std::runtime_error("parse error: missing 'g <n>' header");
    for (int i = 0; i < body.n; ++i)
        if (!markSeen[i])
            throw std::runtime_error("parse error: missing vertex line for vertex " +
                                     std::to_string(i + 1));
    return body;
}

}  // namespace

void normalizeAndValidate(const MarkSpaces& ms, JointGraph& g) {
    checkSimple(g.n, g.edges, ms.jointEdgeCount());
    checkVertexMarks(g.n, g.vertexMarks, ms.jointVertexCount());
}

void normalizeAndValidate(const MarkSpaces& ms, DomainGraph& g) {
    if (g.domain != 1 && g.domain != 2) throw std::invalid_argument("domain must be 1 or 2");
    checkSimple(g.n, g.edges, static_cast<int>(ms.xi(g.domain).size()));
    checkVertexMarks(g.n, g.vertexMarks, static_cast<int>(ms.theta(g.domain).size()));
}

JointGraph superpose(const MarkSpaces& ms, const DomainGraph& g1, const DomainGraph& g2) {
    if (g1.n != g2.n) throw std::invalid_argument("superpose: vertex count mismatch");
    if (g1.domain != 1 || g2.domain != 2)
        throw std::invalid_argument("superpose: arguments must be in domains 1 and 2");
    JointGraph j;
    j.n = g1.n;
    j.vertexMarks.resize(j.n);
    for (int v = 0; v < j.n; ++v)
        j.vertexMarks[v] = ms.jointVertexIndex(g1.vertexMarks[v], g2.vertexMarks[v]);

    // Both edge lists are sorted; merge them.
    size_t i = 0, k = 0;
    while (i < g1.edges.size() || k < g2.edges.size()) {
        bool take1 = k == g2.edges.size() ||
                     (i < g1.edges.size() &&
                      std::pair{g1.edges[i].u, g1.edges[i].v} <= std::pair{g2.edges[k].u, g2.edges[k].v});
        bool take2 = i == g1.edges.size() ||
                     (k < g2.edges.size() &&
                      std::pair{g2.edges[k].u, g2.edges[k].v} <= std::pair{g1.edges[i].u, g1.edges[i].v});
        JointEdgeMark m{JointEdgeMark::kBlank, JointEdgeMark::kBlank};
        int u = 0, v = 0;
        if (take1) {
            u = g1.edges[i].u;
            v = g1.edges[i].v;
            m.x1 = g1.edges[i].mark;
            ++i;
        }
        if (take2) {
            u = g2.edges[k].u;
            v = g2.edges[k].v;
            m.x2 = g2.edges[k].mark;
            ++k;
        }
        j.edges.push_back({u, v, ms.jointEdgeIndex(m)});
    }
    return j;
}

DomainGraph marginal(const MarkSpaces& ms, const JointGraph& j, int side) {
    if (side != 1 && side != 2) throw std::invalid_argument("marginal: side must be 1 or 2");
    DomainGraph g;
    g.n = j.n;
    g.domain = side;
    g.vertexMarks.resize(j.n);
    for (int v = 0; v < j.n; ++v) g.vertexMarks[v] = ms.vertexCoord(j.vertexMarks[v], side);
    for (const auto& e : j.edges) {
        int coord = ms.edgeCoord(e.mark, side);
        if (coord != JointEdgeMark::kBlank) g.edges.push_back({e.u, e.v, coord});
    }
    return g;
}

namespace {

template <typename G>
CountVectors countImpl(const G& g, int edgeAlphabet, int vertexAlphabet) {
    CountVectors cv;
    cv.edgeCounts.assign(edgeAlphabet, 0);
    cv.vertexCounts.assign(vertexAlphabet, 0);
    cv.degreeSeq.assign(g.n, 0);
    for (const auto& e : g.edges) {
        ++cv.edgeCounts[e.mark];
        ++cv.degreeSeq[e.u];
        ++cv.degreeSeq[e.v];
    }
    for (int m : g.vertexMarks) ++cv.vertexCounts[m];
    return cv;
}

}  // namespace

CountVectors countVectors(const MarkSpaces& ms, const JointGraph& j) {
    return countImpl(j, ms.jointEdgeCount(), ms.jointVertexCount());
}

CountVectors countVectors(const MarkSpaces& ms, const DomainGraph& g) {
    return countImpl(g, static_cast<int>(ms.xi(g.domain).size()),
                     static_cast<int>(ms.theta(g.domain).size()));
}

CountVectors projectCounts(const MarkSpaces& ms, const CountVectors& cv, int side) {
    if (side != 1 && side != 2) throw std::invalid_argument("projectCounts: side must be 1 or 2");
    if (static_cast<int>(cv.edgeCounts.size()) != ms.jointEdgeCount() ||
        static_cast<int>(cv.vertexCounts.size()) != ms.jointVertexCount())
        throw std::invalid_argument("projectCounts: counts not indexed by the joint alphabets");
    int xiSize = side == 1 ? ms.xi1Size() : ms.xi2Size();
    int thetaSize = side == 1 ? ms.theta1Size() : ms.theta2Size();
    CountVectors out;
    out.edgeCounts.assign(xiSize + 1, 0);  // last slot: placeholder mark
    out.vertexCounts.assign(thetaSize, 0);
    for (int x = 0; x < ms.jointEdgeCount(); ++x) {
        int coord = ms.edgeCoord(x, side);
        out.edgeCounts[coord == JointEdgeMark::kBlank ? xiSize : coord] += cv.edgeCounts[x];
    }
    for (int t = 0; t < ms.jointVertexCount(); ++t)
        out.vertexCounts[ms.vertexCoord(t, side)] += cv.vertexCounts[t];
    out.degreeSeq = cv.degreeSeq;
    return out;
}

std::vector<long long> degreeClassCounts(const std::vector<int>& d) {
    int maxDeg = 0;
    for (int k : d) maxDeg = std::max(maxDeg, k);
    std::vector<long long> c(maxDeg + 1, 0);
    for (int k : d) ++c[k];
    return c;
}

std::vector<std::vector<long long>> jointDegreeClassCounts(const std::vector<int>& d,
                                                           const std::vector<int>& dPrime) {
    if (d.size() != dPrime.size())
        throw std::invalid_argument("jointDegreeClassCounts: length mismatch");
    int maxD = 0, maxP = 0;
    for (int k : d) maxD = std::max(maxD, k);
    for (int k : dPrime) maxP = std::max(maxP, k);
    std::vector<std::vector<long long>> c(maxD + 1, std::vector<long long>(maxP + 1, 0));
    for (size_t i = 0; i < d.size(); ++i) ++c[d[i]][dPrime[i]];
    return c;
}

namespace {

template <typename G, typename EdgeTok, typename VertTok>
std::string serializeImpl(const G& g, EdgeTok edgeTok, VertTok vertTok) {
    std::ostringstream os;
    os << "g " << g.n << "\n";
    for (int v = 0; v < g.n; ++v)
        os << "v " << (v + 1) << " " << vertTok(g.vertexMarks[v]) << "\n";
    for (const auto& e : g.edges)
        os << "e " << (e.u + 1) << " " << (e.v + 1) << " " << edgeTok(e.mark) << "\n";
    return os.str();
}

}  // namespace

std::string serializeGraph(const MarkSpaces& ms, const JointGraph& j) {
    return serializeImpl(
        j, [&](int m) { return ms.edgeToken(m); }, [&](int m) { return ms.vertexToken(m); });
}

std::string serializeGraph(const MarkSpaces& ms, const DomainGraph& g) {
    return serializeImpl(
        g, [&](int m) { return ms.domainEdgeToken(g.domain, m); },
        [&](int m) { return ms.domainVertexToken(g.domain, m); });
}

JointGraph parseJointGraph(const MarkSpaces& ms, const std::string& text) {
    ParsedBody body = parseBody(text);
    JointGraph j;
    j.n = body.n;
    j.vertexMarks.reserve(body.n);
    try {
        for (const auto& tok : body.vertexTokens)
            j.vertexMarks.push_back(ms.parseJointVertexToken(tok));
        for (const auto& [u, v, tok] : body.edges)
            j.edges.push_back({u, v, ms.parseJointEdgeToken(tok)});
        normalizeAndValidate(ms, j);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("parse error: ") + e.what());
    }
    return j;
}

DomainGraph parseDomainGraph(const MarkSpaces& ms, int domain, const std::string& text) {
    ParsedBody body = parseBody(text);
    DomainGraph g;
    g.n = body.n;
    g.domain = domain;
    g.vertexMarks.reserve(body.n);
    try {
        for (const auto& tok : body.vertexTokens)
            g.vertexMarks.push_back(ms.parseDomainVertexToken(domain, tok));
        for (const auto& [u, v, tok] : body.edges)
            g.edges.push_back({u, v, ms.parseDomainEdgeToken(domain, tok)});
        normalizeAndValidate(ms, g);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("parse error: ") + e.what());
    }
    return g;
}

std::vector<std::vector<std::pair<int, int>>> adjacencyList(int n, const std::vector<Edge>& edges) {
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (const auto& e : edges) {
        adj[e.u].emplace_back(e.v, e.mark);
        adj[e.v].emplace_back(e.u, e.mark);
    }
    return adj;
}

}  // namespace graphsw
