#pragma once

// Seeded synthetic trade streams on a regular tick grid.
//
// Random source: std::mt19937_64 (fully specified by the C++ standard, so the raw 64-bit stream is
// identical across conforming implementations). Uniforms take the top 53 bits: u = (x >> 11) * 2^-53.
// Standard normals come from the Box-Muller cosine branch, one normal per two uniforms:
//   z = sqrt(-2 ln(1 - u1)) * cos(2 pi u2).
// Tick i (i = 0..count-1):
//   z_i, e_i ~ N(0,1) independent
//   p_i = p_{i-1} * exp(s z_i)  (p_{-1} = p0; random-walk model only, constant model keeps p0)
//   U_i = u0 * exp(g (rho z_i + sqrt(1 - rho^2) e_i))
//   C_i = p_i * U_i,  t_i = start + i * spacing

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "tickmoments/core_model.hpp"
#include "tickmoments/errors.hpp"

namespace tickmoments {

enum class PriceModel { constant, random_walk };

struct GenConfig {
    std::uint64_t seed = 1;
    std::size_t count = 1000;
    Timestamp start = 0;
    Duration tick_spacing = 1'000'000;  // 1 ms
    PriceModel price_model = PriceModel::random_walk;
    double p0 = 100.0;
    double price_log_step = 1e-3;  // s
    double u0 = 1.0;
    double volume_log_std = 0.5;   // g
    double rho = 0.0;
};

inline void validate(const GenConfig& cfg) {
    if (cfg.count < 1) throw ParameterError("synthetic tick count must be >= 1");
    if (cfg.tick_spacing <= 0) throw ParameterError("tick spacing must be positive");
    if (!(cfg.p0 > 0.0) || !(cfg.u0 > 0.0)) throw ParameterError("p0 and u0 must be positive");
    if (!(cfg.price_log_step >= 0.0) || !(cfg.volume_log_std >= 0.0))
        throw ParameterError("log step and log std must be non-negative");
    if (!(cfg.rho >= -1.0 && cfg.rho <= 1.0)) throw ParameterError("rho must lie in [-1, 1]");
}

class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

inline std::vector<Trade> generate(const GenConfig& cfg) {
    validate(cfg);
    NormalSource rng(cfg.seed);
    const double walk = cfg.price_model == PriceModel::random_walk ? cfg.price_log_step : 0.0;
    const double idio = std::sqrt(std::max(0.0, 1.0 - cfg.rho * cfg.rho));
    std::vector<Trade> out;
    out.reserve(cfg.count);
    double price = cfg.p0;
    for (std::size_t i = 0; i < cfg.count; ++i) {
        const double z = rng.normal();
        const double e = rng.normal();
        if (walk > 0.0) price *= std::exp(walk * z);
        const double volume = cfg.u0 * std::exp(cfg.volume_log_std * (cfg.rho * z + idio * e));
        const Timestamp t = cfg.start + static_cast<Timestamp>(i) * cfg.tick_spacing;
        out.push_back(make_trade(t, price, volume));
    }
    return out;
}

}  // namespace tickmoments
