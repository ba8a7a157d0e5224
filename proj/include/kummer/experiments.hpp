#ifndef KUMMER_EXPERIMENTS_HPP
#define KUMMER_EXPERIMENTS_HPP

// Tables behind the figures: precision against edge index, ε_min grids, term
// counts of the windowed and plain sums, and summed-term ranges on the
// Poisson-Beta density.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kummer/chf_core.hpp"
#include "kummer/error.hpp"
#include "kummer/poisson_beta.hpp"
#include "kummer/reference_oracle.hpp"
#include "kummer/roi_solver.hpp"
#include "kummer/series_engine.hpp"

namespace kummer {

enum class FigureId { F1 = 1, F2, F3, F4, F5, F6, F7, F8 };

inline constexpr const char* kSkip = "SKIP";
inline constexpr const char* kFailed = "FAILED";

using Cell = std::variant<double, std::int64_t, std::string>;
using Row = std::vector<Cell>;

struct FigureTable {
  FigureId id = FigureId::F1;
  std::vector<std::string> columns;
  std::vector<Row> rows;
  std::vector<std::pair<std::string, std::string>> metadata;
};

inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0.0 ? "-inf" : "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15e", v);
  return buf;
}

inline std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

inline void write_csv(const FigureTable& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const Row& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_cell(r[i]);
    out << '\n';
  }
}

/// `count` points from start to stop, inclusive, linear or geometric.
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  bool log_spaced = false;

  std::vector<double> values() const {
    std::vector<double> v;
    if (count <= 0) return v;
    if (count == 1) return {start};
    for (int i = 0; i < count; ++i) {
      const double t = static_cast<double>(i) / (count - 1);
      v.push_back(log_spaced ? start * std::pow(stop / start, t) : start + (stop - start) * t);
    }
    v.back() = stop;
    return v;
  }
};

namespace detail {

inline std::string join(const std::vector<double>& xs) {
  std::string s;
  for (double x : xs) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    if (!s.empty()) s += ' ';
    s += buf;
  }
  return s;
}

inline Cell log10_cell(double natural_log) {
  return natural_log / std::numbers::ln10;
}

}  // namespace detail

inline std::vector<double> default_a_values(double z) { return {0.5, 2.0, 10.0, z, 5.0 * z}; }
inline std::vector<double> default_b_values(double z) { return {0.5, 5.0, 0.5 * z, 0.9 * z}; }
inline std::vector<double> negative_b_values() { return {-0.5, -5.5, -20.5}; }

inline FigureTable precision_figure(double z, const std::vector<double>& a_values,
                                    const std::vector<double>& b_values, TermIndex k_max) {
  FigureTable t;
  t.columns = {"a", "b", "direction", "edge_index", "k", "log10_exact",
               "log10_t1_5", "log10_t2", "log10_t2_5", "log10_t3"};
  t.metadata = {{"z", detail::join({z})},
                {"a_values", detail::join(a_values)},
                {"b_values", detail::join(b_values)},
                {"k_max", std::to_string(k_max)}};
  constexpr TaylorVariant variants[] = {TaylorVariant::T1_5, TaylorVariant::T2,
                                        TaylorVariant::T2_5, TaylorVariant::T3};
  for (double a : a_values) {
    for (double b : b_values) {
      const ChfParams p{a, b, z};
      std::optional<ModeResult> mode;
      try {
        mode = solve_mode(p);
      } catch (const ChfError&) {
      }
      if (!mode) {
        Row r{a, b, std::string(kSkip)};
        r.resize(t.columns.size(), std::string(kSkip));
        t.rows.push_back(std::move(r));
        continue;
      }
      std::optional<TaylorCoeffs> coeffs;
      try {
        coeffs = taylor_coefficients(p, *mode);
      } catch (const ChfError&) {
      }
      for (Direction dir : {Direction::Upper, Direction::Lower}) {
        const PrecisionCurve curve = precision_curve(p, k_max, dir);
        for (const CurvePoint& pt : curve.points) {
          Row r{a, b, std::string(to_string(dir)), std::int64_t{pt.edge_index},
                std::int64_t{std::abs(pt.edge_index - mode->n_mode)},
                detail::log10_cell(pt.log_ratio)};
          const double k = std::abs(static_cast<double>(pt.edge_index) - mode->root_real);
          for (TaylorVariant v : variants) {
            if (!coeffs) {
              r.emplace_back(std::string(kSkip));
              continue;
            }
            const double g = predicted_log_precision(*coeffs, k, v, dir);
            r.push_back(std::isfinite(g) ? detail::log10_cell(g) : Cell{std::string(kSkip)});
          }
          t.rows.push_back(std::move(r));
        }
      }
    }
  }
  return t;
}

inline FigureTable precision_figure(FigureId id) {
  const double z = (id == FigureId::F1 || id == FigureId::F7) ? 50.0 : 100.0;
  const bool appendix = id == FigureId::F7 || id == FigureId::F8;
  FigureTable t = precision_figure(z, default_a_values(z),
                                   appendix ? negative_b_values() : default_b_values(z),
                                   static_cast<TermIndex>(3.0 * z));
  t.id = id;
  return t;
}

/// log₁₀ ε_min of the T2.5 polynomial per direction, and the binding (larger)
/// one. "-inf" means every precision is reachable.
inline FigureTable epsmin_grid(double z, const GridSpec& a_range, const GridSpec& b_range) {
  FigureTable t;
  t.columns = {"a", "b", "n_star", "log10_eps_min_upper", "log10_eps_min_lower", "log10_eps_min"};
  const std::vector<double> as = a_range.values();
  const std::vector<double> bs = b_range.values();
  t.metadata = {{"z", detail::join({z})},
                {"a_values", detail::join(as)},
                {"b_values", detail::join(bs)},
                {"variant", "t2.5"}};
  for (double a : as) {
    for (double b : bs) {
      const ChfParams p{a, b, z};
      try {
        validate(p);
        const ModeResult mode = solve_mode(p);
        const TaylorCoeffs c = taylor_coefficients(p, mode);
        const double up = epsilon_min(c, Direction::Upper, TaylorVariant::T2_5);
        const double lo = epsilon_min(c, Direction::Lower, TaylorVariant::T2_5);
        t.rows.push_back({a, b, mode.root_real, detail::log10_cell(up), detail::log10_cell(lo),
                          detail::log10_cell(std::max(up, lo))});
      } catch (const ChfError&) {
        t.rows.push_back({a, b, std::string(kSkip), std::string(kSkip), std::string(kSkip),
                          std::string(kSkip)});
      }
    }
  }
  return t;
}

inline FigureTable epsmin_grid(FigureId id) {
  const double z = id == FigureId::F3 ? 50.0 : 100.0;
  FigureTable t = epsmin_grid(z, {0.5, 5.0 * z, 20, true}, {0.5, 2.0 * z, 20, true});
  t.id = id;
  return t;
}

/// Terms the plain sum needs: from m₀ until a term past the maximum falls
/// below ε times the largest one. Counted on the log scale, so it never
/// overflows.
inline TermIndex increment_check_term_count(const ChfParams& p, double eps) {
  validate(p);
  const TermIndex tail = monotone_tail_start(p);
  const double log_eps = std::log(eps);
  CompensatedSum log_m;
  double log_max = 0.0;
  for (TermIndex n = 0; n < detail::kOracleMaxSteps; ++n) {
    const double w = term_ratio(p, n);
    if (w == 0.0) return n + 1;
    log_m += std::log(std::abs(w));
    log_max = std::max(log_max, log_m.value());
    if (n + 1 >= tail && log_m.value() - log_max < log_eps) return n + 2;
  }
  throw ChfError(ErrorCode::NoConvergence, "term count did not settle");
}

inline FigureTable term_count_comparison(const std::vector<double>& z_values, double a, double b,
                                         const std::vector<double>& eps_values) {
  FigureTable t;
  t.columns = {"z", "eps", "roi_variant", "roi_terms", "ic_terms", "reduction", "ic_double_overflow"};
  t.metadata = {{"a", detail::join({a})},
                {"b", detail::join({b})},
                {"z_values", detail::join(z_values)},
                {"eps_values", detail::join(eps_values)}};
  for (double z : z_values) {
    for (double eps : eps_values) {
      const ChfParams p{a, b, z};
      Row r{z, eps};
      std::optional<RoiBounds> bounds;
      try {
        bounds = detail::auto_roi_bounds(p, eps, TaylorVariant::T2_5);
      } catch (const ChfError&) {
      }
      TermIndex ic = 0;
      try {
        ic = increment_check_term_count(p, eps);
      } catch (const ChfError&) {
      }
      if (bounds) {
        r.emplace_back(std::string(to_string(bounds->variant)));
        r.emplace_back(std::int64_t{bounds->term_count()});
      } else {
        r.emplace_back(std::string(kSkip));
        r.emplace_back(std::string(kSkip));
      }
      if (ic > 0) {
        r.emplace_back(std::int64_t{ic});
      } else {
        r.emplace_back(std::string(kFailed));
      }
      if (bounds && ic > 0 && bounds->term_count() > 0) {
        r.emplace_back(static_cast<double>(ic) / static_cast<double>(bounds->term_count()));
      } else {
        r.emplace_back(std::string(kSkip));
      }
      std::int64_t overflow = 0;
      try {
        increment_check(p, eps);
      } catch (const ChfError& e) {
        overflow = e.code() == ErrorCode::Overflow ? 1 : 0;
      }
      r.emplace_back(overflow);
      t.rows.push_back(std::move(r));
    }
  }
  return t;
}

inline FigureTable term_count_comparison() {
  FigureTable t = term_count_comparison(
      {60, 100, 200, 500, 1000, 2000, 5000, 10000, 20000}, 2.0, 3.0, {1e-6, 1e-12, 1e-18});
  t.id = FigureId::F5;
  return t;
}

struct PbGrid {
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> gamma;
  std::int64_t x = 0;
};

inline PbGrid default_pb_grid() {
  return {{0.5, 1.0, 5.0},
          {0.5, 1.0, 5.0},
          {10, 20, 50, 100, 200, 300, 500, 700, 1000, 1500, 2000, 5000, 1e4, 2e4, 5e4, 1e5, 2e5},
          0};
}

/// log₁₀(max/min) over the summed terms of the density's CHF, for the plain
/// sum (FAILED when it leaves the double range) and for the T2.5 window.
inline FigureTable term_range_ratio(const PbGrid& grid, double eps) {
  FigureTable t;
  t.columns = {"alpha", "beta", "gamma", "ic_log10_range", "roi_log10_range", "roi_terms"};
  t.metadata = {{"alpha", detail::join(grid.alpha)},
                {"beta", detail::join(grid.beta)},
                {"gamma", detail::join(grid.gamma)},
                {"x", std::to_string(grid.x)},
                {"eps", detail::join({eps})}};
  for (double alpha : grid.alpha) {
    for (double beta : grid.beta) {
      for (double gamma : grid.gamma) {
        const PbParams pb{alpha, beta, gamma, grid.x};
        validate(pb);
        const ChfParams p = pb_chf_params(pb);
        Row r{alpha, beta, gamma};
        try {
          r.push_back(detail::log10_cell(increment_check(p, eps).term_range_log));
        } catch (const ChfError&) {
          r.emplace_back(std::string(kFailed));
        }
        try {
          RoiBounds b;
          try {
            b = roi_bounds(p, eps, TaylorVariant::T2_5);
          } catch (const PrecisionBelowMinimumError&) {
            b = roi_bounds(p, eps, TaylorVariant::T1_5);
          }
          const EvalResult res = sum_region(p, b);
          r.push_back(detail::log10_cell(res.term_range_log));
          r.emplace_back(std::int64_t{res.terms_summed});
        } catch (const ChfError&) {
          r.emplace_back(std::string(kSkip));
          r.emplace_back(std::string(kSkip));
        }
        t.rows.push_back(std::move(r));
      }
    }
  }
  return t;
}

inline FigureTable term_range_ratio() {
  FigureTable t = term_range_ratio(default_pb_grid(), 1e-12);
  t.id = FigureId::F6;
  return t;
}

/// Default table for any figure.
inline FigureTable figure(FigureId id) {
  switch (id) {
    case FigureId::F1:
    case FigureId::F2:
    case FigureId::F7:
    case FigureId::F8: return precision_figure(id);
    case FigureId::F3:
    case FigureId::F4: return epsmin_grid(id);
    case FigureId::F5: return term_count_comparison();
    case FigureId::F6: return term_range_ratio();
  }
  throw ChfError(ErrorCode::InvalidParams, "unknown figure");
}

}  // namespace kummer

#endif  // KUMMER_EXPERIMENTS_HPP
