#include "graphsw/config.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace graphsw {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> splitList(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(trim(tok));
    return out;
}

double parseNumber(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for '" + key + "': " + value);
    }
}

}  // namespace

ParsedModel parseModelConfig(const std::string& text) {
    std::map<std::string, std::string> scalars;
    std::map<std::string, double> p, q, gamma, r;
    std::istringstream is(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(is, line)) {
        ++lineNo;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineNo) +
                                        ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.rfind("p.", 0) == 0)
            p[key.substr(2)] = parseNumber(key, value);
        else if (key.rfind("q.", 0) == 0)
            q[key.substr(2)] = parseNumber(key, value);
        else if (key.rfind("gamma.", 0) == 0)
            gamma[key.substr(6)] = parseNumber(key, value);
        else if (key.rfind("r.", 0) == 0)
            r[key.substr(2)] = parseNumber(key, value);
        else if (key == "model" || key == "xi1" || key == "xi2" || key == "theta1" ||
                 key == "theta2" || key == "delta" || key == "K") {
            if (!scalars.emplace(key, value).second)
                throw std::invalid_argument("config: duplicate key '" + key + "'");
        } else
            throw std::invalid_argument("config line " + std::to_string(lineNo) +
                                        ": unknown key '" + key + "'");
    }

    auto require = [&](const std::string& key) {
        auto it = scalars.find(key);
        if (it == scalars.end())
            throw std::invalid_argument("config: missing required key '" + key + "'");
        return it->second;
    };

    MarkSpaces ms(splitList(require("xi1")), splitList(require("xi2")),
                  splitList(require("theta1")), splitList(require("theta2")));

    auto denseEdge = [&](const std::map<std::string, double>& src, const char* what) {
        std::vector<double> out(ms.jointEdgeCount(), 0.0);
        for (const auto& [tok, val] : src) {
            try {
                out[ms.parseJointEdgeToken(tok)] = val;
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument(std::string("config: ") + what + "." + tok + ": " +
                                            e.what());
            }
        }
        return out;
    };
    std::vector<double> qDense(ms.jointVertexCount(), 0.0);
    for (const auto& [tok, val] : q) {
        try {
            qDense[ms.parseJointVertexToken(tok)] = val;
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config: q." + tok + ": " + e.what());
        }
    }

    ParsedModel out;
    out.kind = require("model");
    if (out.kind == "er") {
        out.er.emplace(std::move(ms), denseEdge(p, "p"), std::move(qDense));
    } else if (out.kind == "cm") {
        int delta = static_cast<int>(parseNumber("delta", require("delta")));
        std::vector<double> rDense(delta + 1, 0.0);
        for (const auto& [kStr, val] : r) {
            int k = -1;
            try {
                k = std::stoi(kStr);
            } catch (const std::exception&) {
            }
            if (k < 0 || k > delta)
                throw std::invalid_argument("config: r." + kStr + ": degree outside 0..delta");
            rDense[k] = val;
        }
        double slackK = scalars.count("K") ? parseNumber("K", scalars["K"]) : 1.0;
        out.cm.emplace(std::move(ms), delta, std::move(rDense), denseEdge(gamma, "gamma"),
                       std::move(qDense), slackK);
    } else {
        throw std::invalid_argument("config: model must be 'er' or 'cm'");
    }
    return out;
}

ParsedModel loadModelConfig(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseModelConfig(buf.str());
}

}  // namespace graphsw
