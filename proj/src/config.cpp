#include "supnorm/config.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace supnorm {

namespace {

Quat quat_from_strings(const std::array<const char*, 4>& s) {
    Quat q;
    for (int k = 0; k < 4; ++k) q.c[k] = parse_rational(s[k]);
    return q;
}

void validate(const Config& cfg) {
    for (long long p : cfg.primes)
        if (std::find(cfg.ramified.begin(), cfg.ramified.end(), p) != cfg.ramified.end())
            throw std::invalid_argument("config prime " + std::to_string(p) +
                                        " lies in the declared ramified set");
}

}  // namespace

Config default_config() {
    Config cfg;
    cfg.algebra.a = parse_rational("-2");
    cfg.algebra.b = parse_rational("5");
    cfg.basis.e[0] = quat_from_strings({"1", "0", "0", "0"});
    cfg.basis.e[1] = quat_from_strings({"0", "1", "0", "0"});
    cfg.basis.e[2] = quat_from_strings({"0", "0", "1", "0"});
    cfg.basis.e[3] = quat_from_strings({"0", "0", "0", "1"});
    cfg.ramified = {2, 5};
    cfg.primes = {3, 7, 11};
    cfg.note =
        "Quaternion algebra (-2,5) over Q: division (Hilbert symbols at 2 and 5 are -1), "
        "split at infinity; standard basis order Z<1,i,j,ij> (valid order, not necessarily "
        "maximal).";
    validate(cfg);
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;

    Config cfg;
    cfg.algebra.a = parse_rational(j.at("algebra").at("a").get<std::string>());
    cfg.algebra.b = parse_rational(j.at("algebra").at("b").get<std::string>());
    const auto& basis = j.at("basis");
    for (int k = 0; k < 4; ++k)
        for (int c = 0; c < 4; ++c)
            cfg.basis.e[k].c[c] = parse_rational(basis.at(k).at(c).get<std::string>());
    cfg.ramified = j.value("ramified", std::vector<long long>{});
    cfg.primes = j.value("primes", std::vector<long long>{});
    if (j.contains("planner")) cfg.planner_C = j["planner"].value("C", 1.0);
    if (j.contains("sweep")) {
        cfg.sweep_grid_step = j["sweep"].value("grid_step", 1e-3);
        cfg.sweep_lengths = j["sweep"].value("lengths", std::vector<int>{8, 64, 512});
    }
    cfg.note = j.value("note", std::string{});
    validate(cfg);
    return cfg;
}

std::string config_to_json(const Config& cfg) {
    nlohmann::json j;
    j["algebra"]["a"] = to_string(cfg.algebra.a);
    j["algebra"]["b"] = to_string(cfg.algebra.b);
    auto basis = nlohmann::json::array();
    for (int k = 0; k < 4; ++k) {
        auto row = nlohmann::json::array();
        for (int c = 0; c < 4; ++c) row.push_back(to_string(cfg.basis.e[k].c[c]));
        basis.push_back(row);
    }
    j["basis"] = basis;
    j["ramified"] = cfg.ramified;
    j["primes"] = cfg.primes;
    j["planner"]["C"] = cfg.planner_C;
    j["sweep"]["grid_step"] = cfg.sweep_grid_step;
    j["sweep"]["lengths"] = cfg.sweep_lengths;
    j["note"] = cfg.note;
    return j.dump(2);
}

Order make_order(const Config& cfg) { return Order(cfg.algebra, cfg.basis); }

}  // namespace supnorm
