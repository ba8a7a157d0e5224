#ifndef KUMMER_CLI_HPP
#define KUMMER_CLI_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kummer/error.hpp"
#include "kummer/experiments.hpp"
#include "kummer/poisson_beta.hpp"
#include "kummer/roi_solver.hpp"
#include "kummer/series_engine.hpp"

namespace kummer::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

namespace detail {

inline std::string real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0.0 ? "-inf" : "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline TaylorVariant variant_or_throw(const std::string& text) {
  if (auto v = parse_variant(text)) return *v;
  throw CLI::ValidationError("--variant", "expected t1.5, t2, t2.5 or t3, got '" + text + "'");
}

inline std::optional<FigureId> parse_figure(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (text.size() == 4 && text.rfind("fig", 0) == 0 && text[3] >= '1' && text[3] <= '8') {
    return static_cast<FigureId>(text[3] - '0');
  }
  return std::nullopt;
}

struct EvalArgs {
  double a = 0.0, b = 0.0, z = 0.0, eps = 1e-12;
  std::string variant = "t2.5";
  std::string method = "auto";
  bool log = false;
};

struct RoiArgs {
  double a = 0.0, b = 0.0, z = 0.0, eps = 1e-12;
  std::string variant = "t2.5";
};

struct PbArgs {
  double alpha = 0.0, beta = 0.0, gamma = 0.0, eps = 1e-12;
  std::int64_t x = 0;
};

struct BenchArgs {
  std::string figure;
  std::string out;
  std::vector<double> z, a, b, eps, alpha, beta, gamma;
  std::vector<double> a_range, b_range;
  TermIndex k_max = 0;
  std::int64_t x = 0;
};

inline int do_eval(const EvalArgs& args, std::ostream& out) {
  EvalOptions opt;
  if (args.method == "roi") opt.force_method = Method::Roi;
  if (args.method == "ic") opt.force_method = Method::IncrementCheck;
  const EvalResult r =
      evaluate({args.a, args.b, args.z}, args.eps, variant_or_throw(args.variant), opt);
  if (args.log) {
    out << "sign=" << r.log_value.sign << '\n' << "log_mag=" << real(r.log_value.log_mag) << '\n';
  } else {
    out << "value=" << real(r.value) << '\n';
  }
  out << "method=" << to_string(r.method) << '\n'
      << "kummer=" << (r.kummer_applied ? 1 : 0) << '\n'
      << "terms=" << r.terms_summed << '\n';
  if (r.bounds) {
    out << "n_lower=" << r.bounds->n_lower << '\n'
        << "n_upper=" << r.bounds->n_upper << '\n'
        << "variant=" << to_string(r.bounds->variant) << '\n';
  }
  return kExitOk;
}

inline int do_roi(const RoiArgs& args, std::ostream& out) {
  const ChfParams p{args.a, args.b, args.z};
  const TaylorVariant v = variant_or_throw(args.variant);
  const RoiBounds r = roi_bounds(p, args.eps, v);
  const TaylorCoeffs c = taylor_coefficients(p, r.mode);
  const double log_eps_min =
      std::max(epsilon_min(c, Direction::Upper, v), epsilon_min(c, Direction::Lower, v));
  out << "n_star=" << real(r.mode.root_real) << '\n'
      << "n_mode=" << r.mode.n_mode << '\n'
      << "n_lower=" << r.n_lower << '\n'
      << "n_upper=" << r.n_upper << '\n'
      << "k_lower=" << real(r.k_lower) << '\n'
      << "k_upper=" << real(r.k_upper) << '\n'
      << "log10_eps_min=" << real(log_eps_min / std::numbers::ln10) << '\n';
  return kExitOk;
}

inline int do_pb(const PbArgs& args, std::ostream& out) {
  const double ld = pb_log_density({args.alpha, args.beta, args.gamma, args.x}, args.eps);
  out << "log_density=" << real(ld) << '\n' << "density=" << real(std::exp(ld)) << '\n';
  return kExitOk;
}

inline GridSpec grid_from(const std::vector<double>& v, GridSpec fallback) {
  if (v.empty()) return fallback;
  if (v.size() != 3 || v[2] < 1.0) {
    throw CLI::ValidationError("range", "expected START STOP COUNT");
  }
  return {v[0], v[1], static_cast<int>(v[2]), v[0] > 0.0 && v[1] > 0.0};
}

inline FigureTable build_figure(FigureId id, const BenchArgs& args) {
  switch (id) {
    case FigureId::F1:
    case FigureId::F2:
    case FigureId::F7:
    case FigureId::F8: {
      const bool appendix = id == FigureId::F7 || id == FigureId::F8;
      const double z = !args.z.empty() ? args.z.front()
                       : (id == FigureId::F1 || id == FigureId::F7) ? 50.0 : 100.0;
      const auto a = args.a.empty() ? default_a_values(z) : args.a;
      const auto b = !args.b.empty() ? args.b : appendix ? negative_b_values() : default_b_values(z);
      const TermIndex k_max = args.k_max > 0 ? args.k_max : static_cast<TermIndex>(3.0 * z);
      FigureTable t = precision_figure(z, a, b, k_max);
      t.id = id;
      return t;
    }
    case FigureId::F3:
    case FigureId::F4: {
      const double z = !args.z.empty() ? args.z.front() : id == FigureId::F3 ? 50.0 : 100.0;
      FigureTable t = epsmin_grid(z, grid_from(args.a_range, {0.5, 5.0 * z, 20, true}),
                                  grid_from(args.b_range, {0.5, 2.0 * z, 20, true}));
      t.id = id;
      return t;
    }
    case FigureId::F5: {
      const std::vector<double> z =
          args.z.empty() ? std::vector<double>{60, 100, 200, 500, 1000, 2000, 5000, 10000, 20000}
                         : args.z;
      const std::vector<double> eps =
          args.eps.empty() ? std::vector<double>{1e-6, 1e-12, 1e-18} : args.eps;
      FigureTable t = term_count_comparison(z, args.a.empty() ? 2.0 : args.a.front(),
                                            args.b.empty() ? 3.0 : args.b.front(), eps);
      t.id = id;
      return t;
    }
    case FigureId::F6: {
      PbGrid g = default_pb_grid();
      if (!args.alpha.empty()) g.alpha = args.alpha;
      if (!args.beta.empty()) g.beta = args.beta;
      if (!args.gamma.empty()) g.gamma = args.gamma;
      g.x = args.x;
      FigureTable t = term_range_ratio(g, args.eps.empty() ? 1e-12 : args.eps.front());
      t.id = id;
      return t;
    }
  }
  throw CLI::ValidationError("figure", "unknown figure");
}

inline int do_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  const auto id = parse_figure(args.figure);
  if (!id) throw CLI::ValidationError("figure", "expected fig1..fig8, got '" + args.figure + "'");
  const FigureTable t = build_figure(*id, args);
  for (const auto& [key, value] : t.metadata) err << "# " << key << '=' << value << '\n';
  if (args.out.empty()) {
    write_csv(t, out);
    return kExitOk;
  }
  std::ofstream file(args.out);
  if (!file) {
    err << "error: cannot open " << args.out << " for writing\n";
    return kExitUsage;
  }
  write_csv(t, file);
  return file ? kExitOk : kExitUsage;
}

}  // namespace detail

/// Runs one invocation; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kummer confluent hypergeometric function M(a, b, z)", "kummer"};
  app.require_subcommand(1, 1);

  detail::EvalArgs ev;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate M(a, b, z)");
  eval->add_option("--a", ev.a, "Parameter a")->required();
  eval->add_option("--b", ev.b, "Parameter b")->required();
  eval->add_option("--z", ev.z, "Argument z")->required();
  eval->add_option("--eps", ev.eps, "Relative precision")->capture_default_str();
  eval->add_option("--variant", ev.variant, "Taylor variant: t1.5, t2, t2.5, t3")->capture_default_str();
  eval->add_option("--method", ev.method, "auto, roi or ic")
      ->check(CLI::IsMember({"auto", "roi", "ic"}))
      ->capture_default_str();
  eval->add_flag("--log", ev.log, "Print sign and log-magnitude");

  detail::RoiArgs ro;
  CLI::App* roi = app.add_subcommand("roi", "Region-of-interest diagnostics");
  roi->add_option("--a", ro.a, "Parameter a")->required();
  roi->add_option("--b", ro.b, "Parameter b")->required();
  roi->add_option("--z", ro.z, "Argument z")->required();
  roi->add_option("--eps", ro.eps, "Relative precision")->capture_default_str();
  roi->add_option("--variant", ro.variant, "Taylor variant")->capture_default_str();

  detail::PbArgs pa;
  CLI::App* pb = app.add_subcommand("pb", "Poisson-Beta density");
  pb->add_option("--alpha", pa.alpha, "Shape alpha")->required();
  pb->add_option("--beta", pa.beta, "Shape beta")->required();
  pb->add_option("--gamma", pa.gamma, "Scale gamma")->required();
  pb->add_option("--x", pa.x, "Count x")->required();
  pb->add_option("--eps", pa.eps, "Relative precision")->capture_default_str();

  detail::BenchArgs be;
  CLI::App* bench = app.add_subcommand("bench", "Write the CSV table behind a figure");
  bench->add_option("figure", be.figure, "fig1 .. fig8")->required();
  bench->add_option("--out", be.out, "Output file (default: standard output)");
  bench->add_option("--z", be.z, "z value(s)");
  bench->add_option("--a", be.a, "a value(s)");
  bench->add_option("--b", be.b, "b value(s)");
  bench->add_option("--eps", be.eps, "Precision value(s)");
  bench->add_option("--k-max", be.k_max, "Largest edge offset (fig1, fig2, fig7, fig8)");
  bench->add_option("--a-range", be.a_range, "START STOP COUNT (fig3, fig4)")->expected(3);
  bench->add_option("--b-range", be.b_range, "START STOP COUNT (fig3, fig4)")->expected(3);
  bench->add_option("--alpha", be.alpha, "alpha value(s) (fig6)");
  bench->add_option("--beta", be.beta, "beta value(s) (fig6)");
  bench->add_option("--gamma", be.gamma, "gamma value(s) (fig6)");
  bench->add_option("--x", be.x, "Count x (fig6)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (eval->parsed()) return detail::do_eval(ev, out);
    if (roi->parsed()) return detail::do_roi(ro, out);
    if (pb->parsed()) return detail::do_pb(pa, out);
    return detail::do_bench(be, out, err);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const ChfError& e) {
    err << "error: " << e.what() << '\n';
    const bool usage = e.code() == ErrorCode::InvalidParams || e.code() == ErrorCode::EpsilonOutOfRange;
    return usage ? kExitUsage : kExitNumeric;
  }
}

}  // namespace kummer::cli

#endif  // KUMMER_CLI_HPP
