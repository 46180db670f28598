#include "graphsw/local_weak.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "graphsw/oracles.hpp"

namespace graphsw {

namespace {

constexpr int kCyclicVertexCap = 12;
constexpr long long kLabelingCap = 5'000'000;

std::vector<std::vector<std::pair<int, std::string>>> tokenAdjacency(const RootedGraph& g) {
    std::vector<std::vector<std::pair<int, std::string>>> adj(g.vertexTokens.size());
    for (const auto& [u, v, tok] : g.edges) {
        adj[u].emplace_back(v, tok);
        adj[v].emplace_back(u, tok);
    }
    return adj;
}

std::string ahuEncode(const std::vector<std::vector<std::pair<int, std::string>>>& adj,
                      const std::vector<std::string>& vtok, int v, int parent) {
    std::vector<std::string> parts;
    for (const auto& [w, etok] : adj[v]) {
        if (w == parent) continue;
        parts.push_back("[" + etok + "]" + ahuEncode(adj, vtok, w, v));
    }
    std::sort(parts.begin(), parts.end());
    std::string out = "(" + vtok[v];
    for (const auto& p : parts) out += p;
    out += ")";
    return out;
}

// Isomorphism-invariant signature of a vertex, used to restrict the labeling
// search for cyclic neighborhoods.
std::string vertexSignature(const RootedGraph& g,
                            const std::vector<std::vector<std::pair<int, std::string>>>& adj,
                            const std::vector<int>& dist, int v) {
    std::vector<std::string> incident;
    for (const auto& [w, etok] : adj[v]) incident.push_back(etok);
    std::sort(incident.begin(), incident.end());
    std::string sig = std::to_string(dist[v]) + "|" + g.vertexTokens[v] + "|" +
                      std::to_string(adj[v].size()) + "|";
    for (const auto& t : incident) sig += t + ",";
    return sig;
}

std::vector<int> bfsDistances(const std::vector<std::vector<std::pair<int, std::string>>>& adj,
                              int root) {
    std::vector<int> dist(adj.size(), -1);
    std::queue<int> q;
    dist[root] = 0;
    q.push(root);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (const auto& [w, tok] : adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    return dist;
}

std::string graphEncodeLabeled(const RootedGraph& g, const std::vector<int>& label) {
    // label[v] = position of v; root must be position 0.
    const int k = static_cast<int>(g.vertexTokens.size());
    std::vector<std::string> vtok(k);
    for (int v = 0; v < k; ++v) vtok[label[v]] = g.vertexTokens[v];
    std::vector<std::tuple<int, int, std::string>> edges;
    for (const auto& [u, v, tok] : g.edges) {
        int a = label[u], b = label[v];
        if (a > b) std::swap(a, b);
        edges.emplace_back(a, b, tok);
    }
    std::sort(edges.begin(), edges.end());
    std::ostringstream os;
    os << "G;" << k << ";";
    for (int v = 0; v < k; ++v) os << vtok[v] << (v + 1 < k ? "," : "");
    os << ";";
    for (size_t i = 0; i < edges.size(); ++i) {
        const auto& [a, b, tok] = edges[i];
        os << a << "-" << b << "[" << tok << "]";
        if (i + 1 < edges.size()) os << ",";
    }
    return os.str();
}

std::string graphEncodeCanonical(const RootedGraph& g) {
    const int k = static_cast<int>(g.vertexTokens.size());
    if (k > kCyclicVertexCap)
        throw oracles::ResourceError("canonicalize: cyclic neighborhood exceeds vertex cap");
    auto adj = tokenAdjacency(g);
    auto dist = bfsDistances(adj, 0);

    // Group non-root vertices by invariant signature; only within-group
    // relabelings can realize an isomorphism.
    std::vector<std::pair<std::string, int>> sigs;
    for (int v = 1; v < k; ++v) sigs.emplace_back(vertexSignature(g, adj, dist, v), v);
    std::sort(sigs.begin(), sigs.end());
    std::vector<std::vector<int>> groups;
    for (int i = 0; i < static_cast<int>(sigs.size()); ++i) {
        if (i == 0 || sigs[i].first != sigs[i - 1].first) groups.emplace_back();
        groups.back().push_back(sigs[i].second);
    }
    long long labelings = 1;
    for (const auto& grp : groups) {
        for (size_t i = 2; i <= grp.size(); ++i) labelings *= static_cast<long long>(i);
        if (labelings > kLabelingCap)
            throw oracles::ResourceError("canonicalize: labeling search too large");
    }

    // Positions: root -> 0, then groups in signature order.
    std::vector<int> basePos;
    basePos.reserve(k - 1);
    int next = 1;
    std::vector<std::pair<int, int>> groupRange;  // position range per group
    for (const auto& grp : groups) {
        groupRange.emplace_back(next, next + static_cast<int>(grp.size()));
        next += static_cast<int>(grp.size());
    }

    std::string best;
    std::vector<int> label(k);
    label[0] = 0;
    std::vector<std::vector<int>> perms(groups.size());
    for (size_t gi = 0; gi < groups.size(); ++gi) {
        perms[gi].resize(groups[gi].size());
        std::iota(perms[gi].begin(), perms[gi].end(), 0);
    }
    // Odometer over the per-group permutations.
    while (true) {
        for (size_t gi = 0; gi < groups.size(); ++gi)
            for (size_t j = 0; j < groups[gi].size(); ++j)
                label[groups[gi][j]] = groupRange[gi].first + perms[gi][j];
        std::string enc = graphEncodeLabeled(g, label);
        if (best.empty() || enc < best) best = std::move(enc);

        size_t gi = 0;
        while (gi < groups.size() && !std::next_permutation(perms[gi].begin(), perms[gi].end()))
            ++gi;
        if (gi == groups.size()) break;
        for (size_t r = 0; r < gi; ++r) std::iota(perms[r].begin(), perms[r].end(), 0);
    }
    return best;
}

RootedGraph decodeTree(const std::string& enc) {
    RootedGraph g;
    size_t pos = 0;
    // Grammar: node := '(' vtok child* ')' ; child := '[' etok ']' node
    auto parseNode = [&](auto&& self, int parent, const std::string& etok) -> void {
        if (enc[pos] != '(') throw std::runtime_error("bad tree encoding");
        ++pos;
        std::string vtok;
        while (pos < enc.size() && enc[pos] != '(' && enc[pos] != ')' && enc[pos] != '[')
            vtok += enc[pos++];
        int id = static_cast<int>(g.vertexTokens.size());
        g.vertexTokens.push_back(vtok);
        if (parent >= 0) g.edges.emplace_back(parent, id, etok);
        while (pos < enc.size() && enc[pos] == '[') {
            ++pos;
            std::string childTok;
            while (pos < enc.size() && enc[pos] != ']') childTok += enc[pos++];
            ++pos;  // ']'
            self(self, id, childTok);
        }
        if (pos >= enc.size() || enc[pos] != ')') throw std::runtime_error("bad tree encoding");
        ++pos;
    };
    parseNode(parseNode, -1, "");
    return g;
}

RootedGraph decodeGraphForm(const std::string& enc) {
    RootedGraph g;
    std::istringstream is(enc);
    std::string part;
    std::getline(is, part, ';');  // "G"
    std::getline(is, part, ';');
    int k = std::stoi(part);
    std::getline(is, part, ';');
    {
        std::istringstream vs(part);
        std::string tok;
        while (std::getline(vs, tok, ',')) g.vertexTokens.push_back(tok);
    }
    if (static_cast<int>(g.vertexTokens.size()) != k)
        throw std::runtime_error("bad graph encoding: vertex count mismatch");
    std::getline(is, part);
    std::istringstream es(part);
    std::string rec;
    while (std::getline(es, rec, ',')) {
        if (rec.empty()) continue;
        auto dash = rec.find('-');
        auto lb = rec.find('[');
        auto rb = rec.find(']');
        if (dash == std::string::npos || lb == std::string::npos || rb == std::string::npos)
            throw std::runtime_error("bad graph encoding: edge record");
        int u = std::stoi(rec.substr(0, dash));
        int v = std::stoi(rec.substr(dash + 1, lb - dash - 1));
        g.edges.emplace_back(u, v, rec.substr(lb + 1, rb - lb - 1));
    }
    return g;
}

template <typename MarkToToken, typename VertToToken>
RootedClass neighborhoodImpl(int n, const std::vector<Edge>& edges,
                             const std::vector<int>& vertexMarks, int v, int h,
                             MarkToToken edgeTok, VertToToken vertTok) {
    if (v < 1 || v > n) throw std::invalid_argument("neighborhood: vertex out of range");
    auto adj = adjacencyList(n, edges);
    std::vector<int> dist(n, -1);
    std::vector<int> order;
    std::queue<int> q;
    dist[v - 1] = 0;
    q.push(v - 1);
    order.push_back(v - 1);
    while (!q.empty()) {
        int w = q.front();
        q.pop();
        if (dist[w] == h) continue;
        for (const auto& [x, mark] : adj[w])
            if (dist[x] < 0) {
                dist[x] = dist[w] + 1;
                order.push_back(x);
                q.push(x);
            }
    }
    std::vector<int> local(n, -1);
    RootedGraph rg;
    for (size_t i = 0; i < order.size(); ++i) {
        local[order[i]] = static_cast<int>(i);
        rg.vertexTokens.push_back(vertTok(vertexMarks[order[i]]));
    }
    for (const auto& e : edges)
        if (local[e.u] >= 0 && local[e.v] >= 0) {
            int a = local[e.u], b = local[e.v];
            if (a > b) std::swap(a, b);
            rg.edges.emplace_back(a, b, edgeTok(e.mark));
        }
    return canonicalize(rg, h);
}

template <typename G, typename MarkToToken, typename VertToToken>
NeighborhoodDist empiricalUImpl(const G& g, int h, MarkToToken edgeTok, VertToToken vertTok) {
    if (g.n < 1) throw std::invalid_argument("empiricalU: empty graph");
    NeighborhoodDist dist;
    dist.depth = h;
    dist.provenance = DistProvenance::empirical;
    for (int v = 1; v <= g.n; ++v) {
        RootedClass c = neighborhoodImpl(g.n, g.edges, g.vertexMarks, v, h, edgeTok, vertTok);
        dist.probs[c.enc] += 1.0 / g.n;
    }
    return dist;
}

}  // namespace

RootedClass canonicalize(const RootedGraph& g, int depth) {
    if (g.vertexTokens.empty()) throw std::invalid_argument("canonicalize: empty graph");
    RootedClass c;
    c.depth = depth;
    if (g.edges.size() + 1 == g.vertexTokens.size()) {
        auto adj = tokenAdjacency(g);
        c.enc = ahuEncode(adj, g.vertexTokens, 0, -1);
    } else {
        c.enc = graphEncodeCanonical(g);
    }
    return c;
}

RootedGraph decodeClass(const RootedClass& c) {
    if (c.enc.empty()) throw std::invalid_argument("decodeClass: empty encoding");
    if (c.enc[0] == '(') return decodeTree(c.enc);
    if (c.enc[0] == 'G') return decodeGraphForm(c.enc);
    throw std::invalid_argument("decodeClass: unrecognized encoding");
}

RootedClass neighborhood(const MarkSpaces& ms, const JointGraph& g, int v, int h) {
    return neighborhoodImpl(
        g.n, g.edges, g.vertexMarks, v, h, [&](int m) { return ms.edgeToken(m); },
        [&](int m) { return ms.vertexToken(m); });
}

RootedClass neighborhood(const MarkSpaces& ms, const DomainGraph& g, int v, int h) {
    return neighborhoodImpl(
        g.n, g.edges, g.vertexMarks, v, h,
        [&](int m) { return ms.domainEdgeToken(g.domain, m); },
        [&](int m) { return ms.domainVertexToken(g.domain, m); });
}

NeighborhoodDist empiricalU(const MarkSpaces& ms, const JointGraph& g, int h) {
    return empiricalUImpl(
        g, h, [&](int m) { return ms.edgeToken(m); }, [&](int m) { return ms.vertexToken(m); });
}

NeighborhoodDist empiricalU(const MarkSpaces& ms, const DomainGraph& g, int h) {
    return empiricalUImpl(
        g, h, [&](int m) { return ms.domainEdgeToken(g.domain, m); },
        [&](int m) { return ms.domainVertexToken(g.domain, m); });
}

std::vector<double> sizeBiased(const std::vector<double>& r) {
    double mean = 0;
    for (size_t k = 0; k < r.size(); ++k) mean += k * r[k];
    if (!(mean > 0)) throw std::invalid_argument("sizeBiased: zero mean");
    std::vector<double> out(r.size() - 1);
    for (size_t k = 0; k + 1 < r.size(); ++k) out[k] = (k + 1) * r[k + 1] / mean;
    return out;
}

namespace {

// Generic Galton-Watson truncation: offspring are (edge token, count) draws.
template <typename RootDraw, typename ChildDraw, typename VertDraw>
RootedGraph gwTree(int h, RngStream& rng, RootDraw rootOffspring, ChildDraw childOffspring,
                   VertDraw vertexToken) {
    RootedGraph g;
    g.vertexTokens.push_back(vertexToken(rng));
    std::queue<std::pair<int, int>> frontier;  // (vertex, depth)
    frontier.emplace(0, 0);
    while (!frontier.empty()) {
        auto [v, depth] = frontier.front();
        frontier.pop();
        if (depth == h) continue;
        auto children = v == 0 ? rootOffspring(rng) : childOffspring(rng);
        for (const auto& [etok, count] : children)
            for (int i = 0; i < count; ++i) {
                int id = static_cast<int>(g.vertexTokens.size());
                g.vertexTokens.push_back(vertexToken(rng));
                g.edges.emplace_back(v, id, etok);
                frontier.emplace(id, depth + 1);
            }
    }
    return g;
}

}  // namespace

RootedClass sampleGwEr(const ErModel& model, int h, RngStream rng) {
    const auto& ms = model.marks();
    auto offspring = [&](RngStream& r) {
        std::vector<std::pair<std::string, int>> out;
        for (int x = 0; x < ms.jointEdgeCount(); ++x) {
            if (model.p()[x] <= 0) continue;
            int d = r.poisson(model.p()[x]);
            if (d > 0) out.emplace_back(ms.edgeToken(x), d);
        }
        return out;
    };
    auto vertTok = [&](RngStream& r) { return ms.vertexToken(r.categorical(model.q())); };
    RootedGraph g = gwTree(h, rng, offspring, offspring, vertTok);
    return canonicalize(g, h);
}

RootedClass sampleGwErMarginal(const ErModel& model, int side, int h, RngStream rng) {
    const auto& ms = model.marks();
    int xiSize = side == 1 ? ms.xi1Size() : ms.xi2Size();
    int thetaSize = side == 1 ? ms.theta1Size() : ms.theta2Size();
    std::vector<double> qi(thetaSize);
    for (int t = 0; t < thetaSize; ++t) qi[t] = model.qMarginal(side, t);
    auto offspring = [&, xiSize](RngStream& r) {
        std::vector<std::pair<std::string, int>> out;
        for (int x = 0; x < xiSize; ++x) {
            double px = model.pMarginal(side, x);
            if (px <= 0) continue;
            int d = r.poisson(px);
            if (d > 0) out.emplace_back(ms.domainEdgeToken(side, x), d);
        }
        return out;
    };
    auto vertTok = [&](RngStream& r) { return ms.domainVertexToken(side, r.categorical(qi)); };
    RootedGraph g = gwTree(h, rng, offspring, offspring, vertTok);
    return canonicalize(g, h);
}

RootedClass sampleGwCm(const CmModel& model, int h, RngStream rng) {
    const auto& ms = model.marks();
    std::vector<double> biased = sizeBiased(model.r());
    auto drawCounts = [&](RngStream& r, const std::vector<double>& law) {
        int total = r.categorical(law);
        std::vector<std::pair<std::string, int>> out;
        for (int i = 0; i < total; ++i)
            out.emplace_back(ms.edgeToken(r.categorical(model.gamma())), 1);
        return out;
    };
    auto rootOffspring = [&](RngStream& r) { return drawCounts(r, model.r()); };
    auto childOffspring = [&](RngStream& r) { return drawCounts(r, biased); };
    auto vertTok = [&](RngStream& r) { return ms.vertexToken(r.categorical(model.q())); };
    RootedGraph g = gwTree(h, rng, rootOffspring, childOffspring, vertTok);
    return canonicalize(g, h);
}

RootedClass marginalClass(const RootedClass& c, int side) {
    RootedGraph g = decodeClass(c);
    auto project = [side](const std::string& tok) -> std::string {
        auto colon = tok.find(':');
        if (colon == std::string::npos) return tok;  // already single-domain
        return side == 1 ? tok.substr(0, colon) : tok.substr(colon + 1);
    };
    RootedGraph proj;
    proj.vertexTokens.resize(g.vertexTokens.size());
    for (size_t v = 0; v < g.vertexTokens.size(); ++v)
        proj.vertexTokens[v] = project(g.vertexTokens[v]);
    std::vector<std::tuple<int, int, std::string>> kept;
    for (const auto& [u, v, tok] : g.edges) {
        std::string p = project(tok);
        if (p != "_") kept.emplace_back(u, v, p);
    }
    // Root component, re-truncated to the class depth.
    std::vector<std::vector<std::pair<int, std::string>>> adj(proj.vertexTokens.size());
    for (const auto& [u, v, tok] : kept) {
        adj[u].emplace_back(v, tok);
        adj[v].emplace_back(u, tok);
    }
    std::vector<int> dist(proj.vertexTokens.size(), -1);
    std::vector<int> order;
    std::queue<int> q;
    dist[0] = 0;
    q.push(0);
    order.push_back(0);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (dist[v] == c.depth) continue;
        for (const auto& [w, tok] : adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                order.push_back(w);
                q.push(w);
            }
    }
    std::vector<int> local(proj.vertexTokens.size(), -1);
    RootedGraph out;
    for (size_t i = 0; i < order.size(); ++i) {
        local[order[i]] = static_cast<int>(i);
        out.vertexTokens.push_back(proj.vertexTokens[order[i]]);
    }
    for (const auto& [u, v, tok] : kept)
        if (local[u] >= 0 && local[v] >= 0) {
            int a = local[u], b = local[v];
            if (a > b) std::swap(a, b);
            out.edges.emplace_back(a, b, tok);
        }
    return canonicalize(out, c.depth);
}

double distTV(const NeighborhoodDist& d1, const NeighborhoodDist& d2) {
    if (d1.depth != d2.depth) throw std::invalid_argument("distTV: depth mismatch");
    std::set<std::string> support;
    for (const auto& [k, p] : d1.probs) support.insert(k);
    for (const auto& [k, p] : d2.probs) support.insert(k);
    double tv = 0;
    for (const auto& k : support) {
        auto i1 = d1.probs.find(k);
        auto i2 = d2.probs.find(k);
        double p1 = i1 == d1.probs.end() ? 0.0 : i1->second;
        double p2 = i2 == d2.probs.end() ? 0.0 : i2->second;
        tv += std::abs(p1 - p2);
    }
    return tv / 2;
}

LimitDegrees limitDegree(const ErModel& model) {
    LimitDegrees deg;
    deg.d12 = model.pTotal();
    deg.d1 = deg.d2 = 0;
    for (int x = 0; x < model.marks().xi1Size(); ++x) deg.d1 += model.pMarginal(1, x);
    for (int x = 0; x < model.marks().xi2Size(); ++x) deg.d2 += model.pMarginal(2, x);
    return deg;
}

LimitDegrees limitDegree(const CmModel& model) {
    const auto& ms = model.marks();
    double beta1 = 0, beta2 = 0;
    for (int x = 0; x < ms.jointEdgeCount(); ++x) {
        if (ms.edgeCoord(x, 1) != JointEdgeMark::kBlank) beta1 += model.gamma()[x];
        if (ms.edgeCoord(x, 2) != JointEdgeMark::kBlank) beta2 += model.gamma()[x];
    }
    LimitDegrees deg;
    deg.d12 = model.meanDegree();
    deg.d1 = beta1 * deg.d12;
    deg.d2 = beta2 * deg.d12;
    return deg;
}

}  // namespace graphsw
