#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphsw {

/// Joint edge mark: coordinate indices into Xi1 / Xi2, with kBlank standing
/// for the placeholder mark of that side. Both coordinates blank is invalid.
struct JointEdgeMark {
    int x1 = 0;
    int x2 = 0;
    static constexpr int kBlank = -1;

    friend bool operator==(const JointEdgeMark&, const JointEdgeMark&) = default;
};

/// The four mark alphabets and the derived joint alphabets.
///
/// Mark symbols are short strings; the token "_" is reserved for the
/// placeholder marks and may not appear in any alphabet.
class MarkSpaces {
  public:
    MarkSpaces(std::vector<std::string> xi1, std::vector<std::string> xi2,
               std::vector<std::string> theta1, std::vector<std::string> theta2);

    const std::vector<std::string>& xi(int domain) const { return domain == 1 ? xi1_ : xi2_; }
    const std::vector<std::string>& theta(int domain) const { return domain == 1 ? theta1_ : theta2_; }

    int xi1Size() const { return static_cast<int>(xi1_.size()); }
    int xi2Size() const { return static_cast<int>(xi2_.size()); }
    int theta1Size() const { return static_cast<int>(theta1_.size()); }
    int theta2Size() const { return static_cast<int>(theta2_.size()); }

    /// |Xi_{1,2}| = (|Xi1|+1)(|Xi2|+1) - 1
    int jointEdgeCount() const { return (xi1Size() + 1) * (xi2Size() + 1) - 1; }
    /// |Theta_{1,2}| = |Theta1| * |Theta2|
    int jointVertexCount() const { return theta1Size() * theta2Size(); }

    /// Dense index of a joint edge mark in [0, jointEdgeCount()).
    int jointEdgeIndex(JointEdgeMark m) const;
    JointEdgeMark jointEdgeMark(int index) const;

    int jointVertexIndex(int t1, int t2) const { return t1 * theta2Size() + t2; }
    int vertexCoord(int jointIndex, int side) const {
        return side == 1 ? jointIndex / theta2Size() : jointIndex % theta2Size();
    }
    /// Coordinate of a joint edge mark; kBlank when that side is the placeholder.
    int edgeCoord(int jointIndex, int side) const {
        JointEdgeMark m = jointEdgeMark(jointIndex);
        return side == 1 ? m.x1 : m.x2;
    }

    std::string edgeToken(int jointIndex) const;
    std::string vertexToken(int jointIndex) const;
    std::string domainEdgeToken(int domain, int mark) const { return xi(domain)[mark]; }
    std::string domainVertexToken(int domain, int mark) const { return theta(domain)[mark]; }

    int parseJointEdgeToken(const std::string& tok) const;
    int parseJointVertexToken(const std::string& tok) const;
    int parseDomainEdgeToken(int domain, const std::string& tok) const;
    int parseDomainVertexToken(int domain, const std::string& tok) const;

  private:
    int lookup(const std::vector<std::string>& alphabet, const std::string& tok,
               bool allowBlank) const;

    std::vector<std::string> xi1_, xi2_, theta1_, theta2_;
};

}  // namespace graphsw
