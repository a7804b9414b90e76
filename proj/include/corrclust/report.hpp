#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace corrclust {

// One solver run, ready for persistence. Re-running with the same instance
// descriptor, params and seed reproduces cost2 bit-exactly; costs are carried
// as doubled integers with a decimal rendering alongside.
struct RunReport {
    int schema_version = 1;
    std::string algorithm;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::int64_t cost2 = 0;
    std::size_t num_clusters = 0;
    double runtime_ms = 0.0;
    std::string instance;

    double cost() const { return static_cast<double>(cost2) / 2.0; }

    nlohmann::json to_json() const {
        return nlohmann::json{{"schema_version", schema_version},
                              {"algorithm", algorithm},
                              {"params", params},
                              {"seed", seed},
                              {"cost2", cost2},
                              {"cost", cost()},
                              {"num_clusters", num_clusters},
                              {"runtime_ms", runtime_ms},
                              {"instance", instance}};
    }

    static RunReport from_json(const nlohmann::json& j) {
        RunReport r;
        r.schema_version = j.at("schema_version").get<int>();
        r.algorithm = j.at("algorithm").get<std::string>();
        r.params = j.at("params");
        r.seed = j.at("seed").get<std::uint64_t>();
        r.cost2 = j.at("cost2").get<std::int64_t>();
        r.num_clusters = j.at("num_clusters").get<std::size_t>();
        r.runtime_ms = j.at("runtime_ms").get<double>();
        r.instance = j.at("instance").get<std::string>();
        return r;
    }

    friend bool operator==(const RunReport& a, const RunReport& b) {
        return a.schema_version == b.schema_version && a.algorithm == b.algorithm &&
               a.params == b.params && a.seed == b.seed && a.cost2 == b.cost2 &&
               a.num_clusters == b.num_clusters && a.runtime_ms == b.runtime_ms &&
               a.instance == b.instance;
    }
};

}  // namespace corrclust
