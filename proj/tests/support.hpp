#pragma once

#include <cmath>
#include <random>

#include "tpr/presets.hpp"
#include "tpr/state.hpp"

namespace testing_support {

using tpr::EosPair;
using tpr::Primitive;

class Rng {
public:
    explicit Rng(unsigned long seed) : gen_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

private:
    std::mt19937_64 gen_;
};

inline Primitive random_state(Rng& rng) {
    return {rng.uniform(0.05, 0.95), rng.log_uniform(0.1, 10.0), rng.log_uniform(0.1, 10.0),
            rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
}

inline EosPair random_ideal_pair(Rng& rng) {
    EosPair e;
    e.phase1 = tpr::Eos{rng.log_uniform(0.5, 2.0), rng.uniform(1.1, 3.0), 1.0, 0.0};
    e.phase2 = tpr::Eos{rng.log_uniform(0.5, 2.0), rng.uniform(1.1, 3.0), 1.0, 0.0};
    return e;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace testing_support
