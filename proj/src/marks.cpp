#include "graphsw/marks.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace graphsw {

namespace {

void validateAlphabet(const std::vector<std::string>& alphabet, const char* name) {
    if (alphabet.empty())
        throw std::invalid_argument(std::string(name) + ": alphabet must be nonempty");
    std::set<std::string> seen;
    for (const auto& tok : alphabet) {
        if (tok.empty() || tok == "_")
            throw std::invalid_argument(std::string(name) + ": invalid mark symbol '" + tok + "'");
        // Mark symbols appear verbatim inside file formats and canonical
        // encodings, so keep them to a safe character set.
        for (char c : tok)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '.' && c != '+')
                throw std::invalid_argument(std::string(name) + ": mark symbol '" + tok +
                                            "' contains a reserved character");
        if (!seen.insert(tok).second)
            throw std::invalid_argument(std::string(name) + ": duplicate mark symbol '" + tok + "'");
    }
}

}  // namespace

MarkSpaces::MarkSpaces(std::vector<std::string> xi1, std::vector<std::string> xi2,
                       std::vector<std::string> theta1, std::vector<std::string> theta2)
    : xi1_(std::move(xi1)), xi2_(std::move(xi2)), theta1_(std::move(theta1)),
      theta2_(std::move(theta2)) {
    validateAlphabet(xi1_, "xi1");
    validateAlphabet(xi2_, "xi2");
    validateAlphabet(theta1_, "theta1");
    validateAlphabet(theta2_, "theta2");
}

int MarkSpaces::jointEdgeIndex(JointEdgeMark m) const {
    if (m.x1 == JointEdgeMark::kBlank && m.x2 == JointEdgeMark::kBlank)
        throw std::invalid_argument("joint edge mark cannot be blank on both sides");
    int i1 = m.x1 == JointEdgeMark::kBlank ? xi1Size() : m.x1;
    int i2 = m.x2 == JointEdgeMark::kBlank ? xi2Size() : m.x2;
    if (i1 < 0 || i1 > xi1Size() || i2 < 0 || i2 > xi2Size())
        throw std::invalid_argument("joint edge mark coordinate out of range");
    return i1 * (xi2Size() + 1) + i2;
}

JointEdgeMark MarkSpaces::jointEdgeMark(int index) const {
    if (index < 0 || index >= jointEdgeCount())
        throw std::invalid_argument("joint edge mark index out of range");
    int i1 = index / (xi2Size() + 1);
    int i2 = index % (xi2Size() + 1);
    return {i1 == xi1Size() ? JointEdgeMark::kBlank : i1,
            i2 == xi2Size() ? JointEdgeMark::kBlank : i2};
}

std::string MarkSpaces::edgeToken(int jointIndex) const {
    JointEdgeMark m = jointEdgeMark(jointIndex);
    std::string a = m.x1 == JointEdgeMark::kBlank ? "_" : xi1_[m.x1];
    std::string b = m.x2 == JointEdgeMark::kBlank ? "_" : xi2_[m.x2];
    return a + ":" + b;
}

std::string MarkSpaces::vertexToken(int jointIndex) const {
    return theta1_[vertexCoord(jointIndex, 1)] + ":" + theta2_[vertexCoord(jointIndex, 2)];
}

int MarkSpaces::lookup(const std::vector<std::string>& alphabet, const std::string& tok,
                       bool allowBlank) const {
    if (tok == "_") {
        if (allowBlank) return JointEdgeMark::kBlank;
        throw std::invalid_argument("placeholder mark not allowed here");
    }
    auto it = std::find(alphabet.begin(), alphabet.end(), tok);
    if (it == alphabet.end())
        throw std::invalid_argument("unknown mark symbol '" + tok + "'");
    return static_cast<int>(it - alphabet.begin());
}

int MarkSpaces::parseJointEdgeToken(const std::string& tok) const {
    auto colon = tok.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("joint edge mark '" + tok + "' must be of the form x1:x2");
    int x1 = lookup(xi1_, tok.substr(0, colon), true);
    int x2 = lookup(xi2_, tok.substr(colon + 1), true);
    return jointEdgeIndex({x1, x2});
}

int MarkSpaces::parseJointVertexToken(const std::string& tok) const {
    auto colon = tok.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("joint vertex mark '" + tok + "' must be of the form t1:t2");
    int t1 = lookup(theta1_, tok.substr(0, colon), false);
    int t2 = lookup(theta2_, tok.substr(colon + 1), false);
    return jointVertexIndex(t1, t2);
}

int MarkSpaces::parseDomainEdgeToken(int domain, const std::string& tok) const {
    return lookup(xi(domain), tok, false);
}

int MarkSpaces::parseDomainVertexToken(int domain, const std::string& tok) const {
    return lookup(theta(domain), tok, false);
}

}  // namespace graphsw
