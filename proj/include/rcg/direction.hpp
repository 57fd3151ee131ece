#ifndef RCG_DIRECTION_HPP
#define RCG_DIRECTION_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "rcg/sphere.hpp"

namespace rcg {

enum class BetaVariant { fr, prp, hs, dy, hybrid_hs_dy, hybrid_fr_prp, hz, modified_hz };

/// Direction-update rule with its parameters. mu enters the HZ family
/// (mu > 1/4 required, 2.0 recovers the Euclidean HZ method), zeta the
/// modified-HZ floor.
struct BetaRule {
  BetaVariant variant = BetaVariant::hz;
  double mu = 2.0;
  double zeta = 0.01;

  void validate() const {
    if (!(mu > 0.25)) throw std::invalid_argument("BetaRule: mu must be > 1/4");
    if (!(zeta > 0.0)) throw std::invalid_argument("BetaRule: zeta must be > 0");
  }
};

inline const char* beta_rule_name(BetaVariant v) {
  switch (v) {
    case BetaVariant::fr: return "fr";
    case BetaVariant::prp: return "prp";
    case BetaVariant::hs: return "hs";
    case BetaVariant::dy: return "dy";
    case BetaVariant::hybrid_hs_dy: return "hsdy";
    case BetaVariant::hybrid_fr_prp: return "frprp";
    case BetaVariant::hz: return "hz";
    case BetaVariant::modified_hz: return "mhz";
  }
  return "?";
}

inline BetaVariant parse_beta_variant(const std::string& name) {
  if (name == "fr") return BetaVariant::fr;
  if (name == "prp") return BetaVariant::prp;
  if (name == "hs") return BetaVariant::hs;
  if (name == "dy") return BetaVariant::dy;
  if (name == "hsdy") return BetaVariant::hybrid_hs_dy;
  if (name == "frprp") return BetaVariant::hybrid_fr_prp;
  if (name == "hz") return BetaVariant::hz;
  if (name == "mhz") return BetaVariant::modified_hz;
  throw std::invalid_argument("unknown direction rule '" + name +
                              "' (expected fr, prp, hs, dy, hsdy, frprp, hz, mhz)");
}

/// Quantities the beta formulas consume, all expressed at the new iterate:
/// the new gradient, the transported previous gradient and direction, and the
/// scalars of the previous iterate that the Gauss lemma preserves.
struct DirectionContext {
  TangentVector g_new;       // g_{k+1}
  TangentVector t_g_old;     // T_{alpha eta}(g_k)
  TangentVector t_eta_old;   // T_{alpha eta}(eta_k)
  double g_old_norm_sq;      // |g_k|^2
  double g_old_dot_eta_old;  // <g_k, eta_k>
  double eta_old_norm;       // |eta_k|
};

namespace detail {
// Degenerate when the denominator cannot carry the numerator's scale.
inline std::optional<double> guarded_div(double num, double den) {
  if (std::abs(den) < 1e-300 * (1.0 + std::abs(num))) return std::nullopt;
  const double r = num / den;
  if (!std::isfinite(r)) return std::nullopt;
  return r;
}
}  // namespace detail

/// Computes beta for the chosen rule. Returns nullopt when the rule's
/// denominator is degenerate, signalling the caller to restart with beta = 0.
inline std::optional<double> compute_beta(const BetaRule& rule, const DirectionContext& ctx) {
  rule.validate();
  if (!(ctx.g_old_norm_sq > 0.0)) throw std::invalid_argument("compute_beta: g_old_norm_sq must be > 0");
  check_same_base(ctx.g_new, ctx.t_g_old);
  check_same_base(ctx.g_new, ctx.t_eta_old);

  const TangentVector y = ctx.g_new - ctx.t_g_old;
  const double g_new_sq = inner(ctx.g_new, ctx.g_new);
  const double g_new_dot_y = inner(ctx.g_new, y);
  const double y_dot_t_eta = inner(y, ctx.t_eta_old);
  const double g_new_dot_t_eta = inner(ctx.g_new, ctx.t_eta_old);
  const double y_sq = inner(y, y);

  auto fr = [&] { return detail::guarded_div(g_new_sq, ctx.g_old_norm_sq); };
  auto prp = [&] { return detail::guarded_div(g_new_dot_y, ctx.g_old_norm_sq); };
  auto hs = [&] { return detail::guarded_div(g_new_dot_y, y_dot_t_eta); };
  auto dy = [&] { return detail::guarded_div(g_new_sq, g_new_dot_t_eta - ctx.g_old_dot_eta_old); };
  auto hz = [&]() -> std::optional<double> {
    const auto b_hs = hs();
    const auto correction = detail::guarded_div(rule.mu * y_sq * g_new_dot_t_eta, y_dot_t_eta * y_dot_t_eta);
    if (!b_hs || !correction) return std::nullopt;
    return *b_hs - *correction;
  };

  switch (rule.variant) {
    case BetaVariant::fr:
      return fr();
    case BetaVariant::prp:
      return prp();
    case BetaVariant::hs:
      return hs();
    case BetaVariant::dy:
      return dy();
    case BetaVariant::hybrid_hs_dy: {
      const auto a = hs();
      const auto b = dy();
      if (!a || !b) return std::nullopt;
      return std::max(0.0, std::min(*a, *b));
    }
    case BetaVariant::hybrid_fr_prp: {
      const auto a = fr();
      const auto b = prp();
      if (!a || !b) return std::nullopt;
      return std::max(0.0, std::min(*a, *b));
    }
    case BetaVariant::hz:
      return hz();
    case BetaVariant::modified_hz: {
      const auto b_hz = hz();
      if (!b_hz) return std::nullopt;
      // Floor zeta_{k+1} = -1 / (|eta_k| min{zeta, |g_{k+1}|}); a vanishing
      // denominator pushes the floor to -inf, leaving beta^HZ unchanged.
      const double d = ctx.eta_old_norm * std::min(rule.zeta, std::sqrt(g_new_sq));
      if (!(d > 0.0)) return *b_hz;
      return std::max(*b_hz, -1.0 / d);
    }
  }
  throw std::logic_error("compute_beta: unknown variant");
}

/// eta_{k+1} = -g_{k+1} + beta * T(eta_k).
inline TangentVector next_direction(const TangentVector& g_new, double beta,
                                    const TangentVector& t_eta_old) {
  check_same_base(g_new, t_eta_old);
  Vec d = scaled(g_new.coords(), -1.0);
  axpy(d, beta, t_eta_old.coords());
  return TangentVector(g_new.base(), std::move(d));
}

}  // namespace rcg

#endif
