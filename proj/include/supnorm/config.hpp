#pragma once

#include <string>
#include <vector>

#include "supnorm/quaternion.hpp"

namespace supnorm {

struct Config {
    AlgebraSpec algebra;
    OrderBasis basis;
    std::vector<long long> ramified;  // declared ramified primes of the algebra
    std::vector<long long> primes;    // default Hecke prime set; must avoid `ramified`
    double planner_C = 1.0;
    double sweep_grid_step = 1e-3;
    std::vector<int> sweep_lengths{8, 64, 512};
    std::string note;
};

// Shipped default: B = (-2,5), a rational division algebra ramified exactly at {2,5}
// and split at infinity, with the standard basis order Z<1,i,j,ij>.  Default Hecke
// primes are split primes of B.
Config default_config();

// Reads a JSON config; rationals are "num/den" strings, basis a 4x4 rational matrix
// in standard-basis coordinates.  Throws std::invalid_argument on a config whose
// declared Hecke primes meet the declared ramified set.
Config load_config(const std::string& path);

std::string config_to_json(const Config& cfg);

Order make_order(const Config& cfg);

}  // namespace supnorm
