#ifndef KUMMER_POISSON_BETA_HPP
#define KUMMER_POISSON_BETA_HPP

#include <cmath>
#include <cstdint>
#include <string>

#include "kummer/double_double.hpp"
#include "kummer/error.hpp"
#include "kummer/log_gamma.hpp"
#include "kummer/series_engine.hpp"

namespace kummer {

/// Poisson-Beta: x | p ~ Poisson(γ p), p ~ Beta(α, β).
struct PbParams {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  std::int64_t x = 0;
};

inline void validate(const PbParams& p) {
  const bool ok = std::isfinite(p.alpha) && std::isfinite(p.beta) && std::isfinite(p.gamma) &&
                  p.alpha > 0.0 && p.beta > 0.0 && p.gamma > 0.0 && p.x >= 0;
  if (!ok) {
    throw ChfError(ErrorCode::InvalidParams, "Poisson-Beta needs alpha, beta, gamma > 0 and x >= 0");
  }
}

/// The CHF arguments of the density: a = β, b = α + β + x, z = γ.
inline ChfParams pb_chf_params(const PbParams& p) noexcept {
  return {p.beta, p.alpha + p.beta + static_cast<double>(p.x), p.gamma};
}

/// ln f(x) = ln(γˣe^{−γ}/x!) + ln[α⁽ˣ⁾/(α+β)⁽ˣ⁾] + ln M(β, α+β+x, γ), all on
/// the log scale.
inline double pb_log_density(const PbParams& p, double eps,
                             TaylorVariant variant = TaylorVariant::T2_5,
                             const EvalOptions& options = {}) {
  validate(p);
  const double x = static_cast<double>(p.x);
  const double log_poisson = log_poisson_pmf(x, p.gamma);
  // ln[Γ(α+x)Γ(α+β) / (Γ(α)Γ(α+β+x))]
  const double log_rising_ratio =
      log_gamma_diff(p.alpha, p.beta) - log_gamma_diff(p.alpha + x, p.beta);
  const EvalResult m = evaluate(pb_chf_params(p), eps, variant, options);
  if (m.log_value.sign <= 0) {
    throw ChfError(ErrorCode::NoConvergence, "non-positive CHF value in the density");
  }
  return log_poisson + log_rising_ratio + m.log_value.log_mag;
}

/// Σₓ f(x), summed until x is past the Poisson bulk (x > γ + 10√γ) and the
/// summand drops below eps times the running total.
inline double pb_normalization(double alpha, double beta, double gamma, double eps) {
  validate(PbParams{alpha, beta, gamma, 0});
  const double bulk_end = gamma + 10.0 * std::sqrt(gamma);
  const auto max_x = static_cast<std::int64_t>(10.0 * bulk_end) + 1000;
  CompensatedSum total;
  for (std::int64_t x = 0;; ++x) {
    if (x > max_x) {
      throw ChfError(ErrorCode::NoConvergence, "normalization tail did not vanish");
    }
    const double f = std::exp(pb_log_density(PbParams{alpha, beta, gamma, x}, eps));
    total.add(f);
    if (static_cast<double>(x) > bulk_end && f < eps * total.value()) break;
  }
  return total.value();
}

}  // namespace kummer

#endif  // KUMMER_POISSON_BETA_HPP
