#pragma once

// Gaussian parametric VaR from (mean, variance) pairs, contrasting frequency-based and
// market-based moment inputs. VaR is reported as the alpha-quantile of the level (price or
// gross return) itself, not as a positive loss amount.

#include <array>
#include <cmath>

#include "tickmoments/errors.hpp"
#include "tickmoments/moments.hpp"
#include "tickmoments/returns.hpp"

namespace tickmoments {

namespace detail {

template <std::size_t N>
constexpr double horner(const std::array<double, N>& c, double x) noexcept {
    double r = c[N - 1];
    for (std::size_t i = N - 1; i-- > 0;) r = r * x + c[i];
    return r;
}

}  // namespace detail

/// Standard normal quantile, Wichura's algorithm AS 241 (PPND16). Relative accuracy about 1e-16.
inline double standard_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("probability must lie strictly in (0, 1)");
    static constexpr std::array<double, 8> a{
        3.3871328727963666080e0, 1.3314166789178437745e+2, 1.9715909503065514427e+3,
        1.3731693765509461125e+4, 4.5921953931549871457e+4, 6.7265770927008700853e+4,
        3.3430575583588128105e+4, 2.5090809287301226727e+3};
    static constexpr std::array<double, 8> b{
        1.0, 4.2313330701600911252e+1, 6.8718700749205790830e+2, 5.3941960214247511077e+3,
        2.1213794301586595867e+4, 3.9307895800092710610e+4, 2.8729085735721942674e+4,
        5.2264952788528545610e+3};
    static constexpr std::array<double, 8> c{
        1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
        3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static constexpr std::array<double, 8> d{
        1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
        1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
        1.05075007164441684324e-9};
    static constexpr std::array<double, 8> e{
        6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
        2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static constexpr std::array<double, 8> f{
        1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
        7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
        2.04426310338993978564e-15};

    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * detail::horner(a, r) / detail::horner(b, r);
    }
    double r = std::sqrt(-std::log(q < 0.0 ? p : 1.0 - p));
    double x = 0.0;
    if (r <= 5.0) {
        r -= 1.6;
        x = detail::horner(c, r) / detail::horner(d, r);
    } else {
        r -= 5.0;
        x = detail::horner(e, r) / detail::horner(f, r);
    }
    return q < 0.0 ? -x : x;
}

/// alpha-quantile of N(mean, vol2): mean + z_alpha sqrt(vol2).
inline double gaussian_var(double mean, double vol2, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("VaR confidence alpha must lie in (0, 1)");
    if (!(vol2 >= 0.0)) throw ParameterError("variance must be non-negative");
    return mean + standard_normal_quantile(alpha) * std::sqrt(vol2);
}

struct VarReport {
    double confidence = 0.0;
    double var_frequency = 0.0;
    double var_market = 0.0;
    double divergence = 0.0;  // var_market - var_frequency
};

inline VarReport make_var_report(double freq_mean, double freq_var, double market_mean,
                                 double market_var, double alpha) {
    VarReport r;
    r.confidence = alpha;
    r.var_frequency = gaussian_var(freq_mean, freq_var, alpha);
    r.var_market = gaussian_var(market_mean, market_var, alpha);
    r.divergence = r.var_market - r.var_frequency;
    return r;
}

/// Price VaR: frequency (E[p], Var[p]) against market-based (a1, sigma2).
inline VarReport compare_var(const PriceStats& ps, double alpha) {
    if (ps.count == 0 || ps.degenerate)
        throw UndefinedStatistic("VaR needs an interval with at least two trades");
    return make_var_report(ps.freq_mean, ps.freq_variance(), ps.a1, ps.sigma2, alpha);
}

/// Return VaR: frequency (E[r], Var[r]) against market-based (h1, v2).
inline VarReport compare_var(const ReturnStats& rs, double alpha) {
    if (rs.count == 0 || rs.degenerate)
        throw UndefinedStatistic("VaR needs at least two return observations");
    return make_var_report(rs.freq_mean, rs.freq_variance(), rs.h1, rs.v2, alpha);
}

}  // namespace tickmoments
