// Command-line front end: sampling, entropy summaries, rate-region queries,
// codec simulation, local-weak diagnostics, and the verification suite.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphsw/codec.hpp"
#include "graphsw/config.hpp"
#include "graphsw/entropy.hpp"
#include "graphsw/local_weak.hpp"
#include "graphsw/oracles.hpp"

using nlohmann::json;
using namespace graphsw;

namespace {

int logLevel() {
    const char* env = std::getenv("GRAPHSW_LOG");
    if (!env) return 1;  // warn
    std::string v = env;
    if (v == "debug") return 3;
    if (v == "info") return 2;
    if (v == "error") return 0;
    return 1;
}

void logMsg(int level, const std::string& msg) {
    static int threshold = logLevel();
    if (level <= threshold) std::cerr << "graphsw: " << msg << "\n";
}

void emit(const std::string& text, const std::string& outPath) {
    if (outPath.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(outPath);
    if (!out) throw std::invalid_argument("cannot open output file '" + outPath + "'");
    out << text;
}

RateTuple parseTuple(const std::string& s) {
    RateTuple t;
    char c1, c2, c3;
    std::istringstream is(s);
    if (!(is >> t.alpha1 >> c1 >> t.r1 >> c2 >> t.alpha2 >> c3 >> t.r2) || c1 != ',' ||
        c2 != ',' || c3 != ',' || !(is >> std::ws).eof())
        throw CLI::ValidationError("--tuple", "expected a1,R1,a2,R2");
    return t;
}

json bcJson(const BcSummary& bc) {
    return {{"ensemble", bc.ensemble}, {"sigma12", bc.sigma12},   {"sigma1", bc.sigma1},
            {"sigma2", bc.sigma2},     {"sigma2given1", bc.sigma2given1},
            {"sigma1given2", bc.sigma1given2}, {"d12", bc.d12},   {"d1", bc.d1},
            {"d2", bc.d2}};
}

BcSummary bcOf(const ParsedModel& pm) {
    return pm.er ? bcEntropyEr(*pm.er) : bcEntropyCm(*pm.cm);
}

JointGraph sampleOf(const ParsedModel& pm, int n, uint64_t seed) {
    return pm.er ? sampleEr(*pm.er, n, seed) : sampleCm(*pm.cm, n, seed);
}

/// "n=100:10000:log" -> decade steps; "n=100:500:lin" -> 5 evenly spaced.
std::vector<int> parseSweep(const std::string& s) {
    auto eq = s.find('=');
    if (eq == std::string::npos || s.substr(0, eq) != "n")
        throw CLI::ValidationError("--sweep", "expected n=<lo>:<hi>:log|lin");
    std::istringstream is(s.substr(eq + 1));
    long lo, hi;
    char c1, c2;
    std::string mode;
    if (!(is >> lo >> c1 >> hi >> c2) || c1 != ':' || c2 != ':' || !(is >> mode) ||
        lo < 1 || hi < lo)
        throw CLI::ValidationError("--sweep", "expected n=<lo>:<hi>:log|lin");
    std::vector<int> ns;
    if (mode == "log") {
        for (long n = lo; n <= hi; n *= 10) ns.push_back(static_cast<int>(n));
    } else if (mode == "lin") {
        const int steps = 5;
        for (int i = 0; i < steps; ++i)
            ns.push_back(static_cast<int>(lo + (hi - lo) * static_cast<long>(i) / (steps - 1)));
    } else {
        throw CLI::ValidationError("--sweep", "mode must be log or lin");
    }
    return ns;
}

NeighborhoodDist sampledLimit(const ParsedModel& pm, int depth, int trials, uint64_t seed) {
    NeighborhoodDist dist;
    dist.depth = depth;
    dist.provenance = DistProvenance::limitSampled;
    RngStream root(seed);
    for (int t = 0; t < trials; ++t) {
        RootedClass c = pm.er ? sampleGwEr(*pm.er, depth, root.split("gw", t))
                              : sampleGwCm(*pm.cm, depth, root.split("gw", t));
        dist.probs[c.enc] += 1.0 / trials;
    }
    return dist;
}

double lwcTv(const ParsedModel& pm, int n, int depth, int trials, uint64_t seed) {
    JointGraph g = sampleOf(pm, n, seed);
    NeighborhoodDist emp = empiricalU(pm.marks(), g, depth);
    NeighborhoodDist limit = sampledLimit(pm, depth, trials, splitmix64(seed) + 1);
    return distTV(emp, limit);
}

json runVerifySuite() {
    json checks = json::array();
    auto add = [&](const std::string& name, bool pass) {
        checks.push_back({{"name", name}, {"pass", pass}});
        logMsg(2, "verify " + name + ": " + (pass ? "pass" : "FAIL"));
    };

    add("degree-enumeration",
        oracles::enumerateWithDegrees({1, 1, 1, 1}) == 3 &&
            oracles::enumerateWithDegrees({2, 2, 2}) == 1 &&
            oracles::enumerateWithDegrees({1, 1, 1, 1, 1, 1}) == 15 &&
            oracles::enumerateWithDegrees({0, 0, 0, 0}) == 1);

    {
        auto res = oracles::multinomialAsymptotics(oracles::AsymptoticCase::linear, 1.0,
                                                   {0.5, 0.5}, {1000});
        add("multinomial-linear", std::abs(res.limit - std::log(2.0)) < 1e-12 &&
                                      std::abs(res.finiteN[0].second - std::log(2.0)) < 0.01);
        auto res2 = oracles::multinomialAsymptotics(oracles::AsymptoticCase::quadratic, 0.0,
                                                    {0.5}, {1000});
        add("multinomial-quadratic", std::abs(res2.limit - 0.5) < 1e-12 &&
                                         std::abs(res2.finiteN[0].second - 0.5) < 0.01);
    }
    {
        RngStream rng(7);
        bool ok = true;
        for (int i = 0; i < 100 && ok; ++i) {
            int delta = 1 + static_cast<int>(rng.uniformInt(6));
            std::vector<double> r(delta + 1);
            double sum = 0;
            for (double& v : r) sum += (v = rng.uniform() + 1e-3);
            for (double& v : r) v /= sum;
            auto chk = oracles::thinningIdentity(r, rng.uniform());
            ok = std::abs(chk.diff) < 1e-9;
        }
        add("thinning-identity", ok);
    }
    {
        std::vector<double> deltaTwo{0, 0, 1};
        bool ok = std::abs(oracles::cmCountAsymptote(deltaTwo) + 1.0) < 1e-12;
        double prev = -1e30;
        for (int n : {6, 8, 10}) {
            std::vector<int> d(n, 2);
            double v = (std::log(static_cast<double>(oracles::enumerateWithDegrees(d))) -
                        n * std::log(static_cast<double>(n))) /
                       n;
            ok = ok && v > prev;
            prev = v;
        }
        add("cm-count-asymptote", ok && std::abs(prev - (-1.0)) < 0.35);
    }
    {
        MarkSpaces ms({"a"}, {"b"}, {"s"}, {"t"});
        std::vector<long long> m(ms.jointEdgeCount(), 0);
        m[ms.jointEdgeIndex({0, 0})] = 2;
        std::vector<long long> u(ms.jointVertexCount(), 0);
        u[0] = 4;
        NeighborhoodDist target;
        target.depth = 1;
        target.probs["(s:t)"] = 1.0;
        double logCount = oracles::bcDefinitionOracle(ms, target, 1.0, 4, m, u);
        double expected = logMultinomial(6, std::vector<long long>{2});
        add("bc-definition-ball", std::abs(logCount - expected) < 1e-9);
    }
    {
        MarkSpaces ms({"a"}, {"b"}, {"s"}, {"t"});
        std::vector<double> gamma(ms.jointEdgeCount(), 0.0);
        gamma[ms.jointEdgeIndex({0, JointEdgeMark::kBlank})] = 0.4;
        gamma[ms.jointEdgeIndex({JointEdgeMark::kBlank, 0})] = 0.35;
        gamma[ms.jointEdgeIndex({0, 0})] = 0.25;
        CmModel cm(ms, 3, {0.1, 0.3, 0.4, 0.2}, gamma, {1.0}, 1.0);
        auto bound = oracles::condBoundCm(cm, 100);
        add("cond-bound-cm-limit",
            std::abs(bound.limitForm - bcEntropyCm(cm).sigma2given1) < 1e-9);
    }
    return checks;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed compression of marked random graphs"};
    app.require_subcommand(1);

    std::string configPath, outPath, tupleStr, sweepStr, format = "json", suite = "all";
    uint64_t seed = 0;
    int n = 100, depth = 1, trials = 1000, jobs = 1;

    auto addCommon = [&](CLI::App* cmd, bool needsConfig) {
        if (needsConfig) cmd->add_option("--config", configPath, "model config file")->required();
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_option("--out", outPath, "output file (default stdout)");
        cmd->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--jobs", jobs, "worker threads for Monte Carlo trials")
            ->check(CLI::PositiveNumber);
    };

    auto* cmdSample = app.add_subcommand("sample", "draw one graph from the model");
    addCommon(cmdSample, true);
    cmdSample->add_option("--n", n, "number of vertices")->check(CLI::PositiveNumber);

    auto* cmdEntropy = app.add_subcommand("entropy", "BC entropy summary of the model");
    addCommon(cmdEntropy, true);

    auto* cmdRegion = app.add_subcommand("rate-region", "test a rate tuple for achievability");
    addCommon(cmdRegion, true);
    cmdRegion->add_option("--tuple", tupleStr, "a1,R1,a2,R2")->required();

    auto* cmdCodec = app.add_subcommand("codec-sim", "Monte Carlo random-binning simulation");
    addCommon(cmdCodec, true);
    cmdCodec->add_option("--n", n, "number of vertices")->check(CLI::PositiveNumber);
    cmdCodec->add_option("--trials", trials, "trial count")->check(CLI::PositiveNumber);
    cmdCodec->add_option("--tuple", tupleStr, "a1,R1,a2,R2")->required();

    auto* cmdLwc = app.add_subcommand("lwc-dist", "TV distance to the sampled local weak limit");
    addCommon(cmdLwc, true);
    cmdLwc->add_option("--n", n, "number of vertices")->check(CLI::PositiveNumber);
    cmdLwc->add_option("--depth", depth, "neighborhood depth")->check(CLI::NonNegativeNumber);
    cmdLwc->add_option("--trials", trials, "limit samples")->check(CLI::PositiveNumber);
    cmdLwc->add_option("--sweep", sweepStr, "n=<lo>:<hi>:log|lin (emits CSV rows)");

    auto* cmdVerify = app.add_subcommand("verify", "run the oracle verification suite");
    addCommon(cmdVerify, false);
    cmdVerify->add_option("--suite", suite, "suite name (all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*cmdSample) {
            ParsedModel pm = loadModelConfig(configPath);
            JointGraph g = sampleOf(pm, n, seed);
            json out = {{"model", pm.kind},
                        {"n", n},
                        {"seed", seed},
                        {"graph", serializeGraph(pm.marks(), g)}};
            emit(out.dump(2) + "\n", outPath);
        } else if (*cmdEntropy) {
            ParsedModel pm = loadModelConfig(configPath);
            emit(bcJson(bcOf(pm)).dump(2) + "\n", outPath);
        } else if (*cmdRegion) {
            ParsedModel pm = loadModelConfig(configPath);
            RateRegionResult res = rateRegionContains(bcOf(pm), parseTuple(tupleStr));
            json constraints = json::array();
            for (const auto& c : res.constraints)
                constraints.push_back({{"name", c.name},
                                       {"satisfied", c.satisfied},
                                       {"alpha", c.alphaValue},
                                       {"r", c.rValue},
                                       {"alphaThreshold", c.alphaThreshold},
                                       {"rThreshold", c.rThreshold}});
            json out = {{"contained", res.contained}, {"constraints", constraints}};
            emit(out.dump(2) + "\n", outPath);
        } else if (*cmdCodec) {
            ParsedModel pm = loadModelConfig(configPath);
            CodeParams params;
            params.n = n;
            params.rates = parseTuple(tupleStr);
            params.seed = seed;
            logMsg(2, "running " + std::to_string(trials) + " codec trials");
            SimReport rep = pm.er ? simulate(*pm.er, params, trials, seed, jobs)
                                  : simulate(*pm.cm, params, trials, seed, jobs);
            std::ostringstream lines;
            for (const auto& t : rep.trialLog) {
                json rec = {{"seed", t.seed},
                            {"typical", t.typical},
                            {"decoded", t.decoded},
                            {"event", t.event}};
                lines << rec.dump() << "\n";
            }
            auto rate = [](const EventRate& ev) {
                return json{{"count", ev.count},
                            {"rate", ev.rate},
                            {"wilsonLo", ev.interval.lo},
                            {"wilsonHi", ev.interval.hi}};
            };
            json summary = {{"summary", true},         {"trials", rep.trials},
                            {"pe", rate(rep.pe)},      {"e1", rate(rep.e1)},
                            {"e2", rate(rep.e2)},      {"e3", rate(rep.e3)},
                            {"e4", rate(rep.e4)}};
            lines << summary.dump() << "\n";
            emit(lines.str(), outPath);
        } else if (*cmdLwc) {
            ParsedModel pm = loadModelConfig(configPath);
            if (!sweepStr.empty()) {
                std::ostringstream csv;
                csv << "n,depth,tv\n";
                for (int nv : parseSweep(sweepStr))
                    csv << nv << "," << depth << "," << lwcTv(pm, nv, depth, trials, seed) << "\n";
                emit(csv.str(), outPath);
            } else {
                double tv = lwcTv(pm, n, depth, trials, seed);
                json out = {{"n", n}, {"depth", depth}, {"trials", trials}, {"tv", tv}};
                emit(out.dump(2) + "\n", outPath);
            }
        } else if (*cmdVerify) {
            if (suite != "all") throw std::invalid_argument("unknown suite '" + suite + "'");
            json checks = runVerifySuite();
            bool allPass = true;
            for (const auto& c : checks) allPass = allPass && c.at("pass").get<bool>();
            json out = {{"suite", suite}, {"pass", allPass}, {"checks", checks}};
            emit(out.dump(2) + "\n", outPath);
            return allPass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        logMsg(0, e.what());
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
