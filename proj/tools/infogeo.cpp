// infogeo - command line front end: norms, charts, transports, covariant
// derivatives, geodesic trajectories, and the verification campaign.
//
// Exit codes: 0 success / all properties pass, 1 check or property failure,
// 2 malformed input or config.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "infogeo/infogeo.hpp"

namespace {

using infogeo::Vec;

int log_verbosity() {
  const char* env = std::getenv("INFOGEO_LOG");
  if (env == nullptr || *env == '\0') return 0;
  const std::string s(env);
  if (s == "0" || s == "off") return 0;
  if (s == "2" || s == "debug") return 2;
  return 1;
}

void log_line(int level, const std::string& msg) {
  if (log_verbosity() >= level) std::cerr << "[infogeo] " << msg << "\n";
}

std::string vec_json(const Vec& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += infogeo::format17(v[i]);
  }
  return out + "]";
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw infogeo::InputError("cannot open output file: " + output_path);
  out << text;
}

struct NormOpts {
  std::string input, output, which = "both";
  int phi = 1;
};

int run_norm(const NormOpts& o) {
  const infogeo::ProblemFile pf = infogeo::ProblemFile::parse_csv(o.input);
  const infogeo::Density p = pf.density("p");
  const Vec& f = pf.require("u");
  const infogeo::YoungFunction phi =
      infogeo::YoungFunction::from_id(static_cast<infogeo::YoungId>(o.phi - 1));

  std::ostringstream out;
  if (o.which == "luxemburg" || o.which == "both") {
    out << "luxemburg " << infogeo::format17(infogeo::luxemburg_norm(phi, p, f))
        << "\n";
  }
  if (o.which == "orlicz" || o.which == "both") {
    out << "orlicz " << infogeo::format17(infogeo::orlicz_norm(phi, p, f))
        << "\n";
  }
  emit(out.str(), o.output);
  return 0;
}

struct ChartOpts {
  std::string input, output;
};

int run_chart(const ChartOpts& o) {
  const infogeo::ProblemFile pf = infogeo::ProblemFile::parse_csv(o.input);
  const infogeo::Density p = pf.density("p");
  const bool has_u = pf.u.has_value();
  const bool has_q = pf.q.has_value();
  if (has_u == has_q) {
    throw infogeo::InputError(
        "chart needs exactly one of column 'u' (forward) or 'q' (inverse)");
  }

  std::ostringstream out;
  if (has_u) {
    const infogeo::TangentVector u = pf.tangent(p, "u");
    const double nrm = infogeo::chart_ball_norm(p, u.vals());
    const infogeo::Density q = infogeo::chart_forward(p, u);
    out << "{\"direction\": \"forward\", \"q\": " << vec_json(q.vals())
        << ", \"partition\": "
        << infogeo::format17(infogeo::partition_function(p, u))
        << ", \"ball_norm\": " << infogeo::format17(nrm) << "}\n";
  } else {
    const infogeo::Density q = pf.density("q");
    const infogeo::ChartInverse inv = infogeo::chart_inverse(p, q);
    out << "{\"direction\": \"inverse\", \"u\": " << vec_json(inv.u.vals())
        << ", \"ball_norm\": " << infogeo::format17(inv.ball_norm)
        << ", \"in_ball\": " << (inv.in_ball ? "true" : "false") << "}\n";
  }
  emit(out.str(), o.output);
  return 0;
}

struct MetricOpts {
  std::string input, output;
};

int run_metric(const MetricOpts& o) {
  const infogeo::ProblemFile pf = infogeo::ProblemFile::parse_csv(o.input);
  const infogeo::Density p = pf.density("p");
  const infogeo::TangentVector u = pf.tangent(p, "u");
  const infogeo::TangentVector v = pf.tangent(p, "v");
  emit("fisher " + infogeo::format17(infogeo::fisher(p, u, v)) + "\n",
       o.output);
  return 0;
}

struct TransportOpts {
  std::string input, output, kind;
  double tol = 1e-10;
};

int run_transport(const TransportOpts& o) {
  const infogeo::ProblemFile pf = infogeo::ProblemFile::parse_csv(o.input);
  const infogeo::Density p = pf.density("p");
  const infogeo::Density q = pf.density("q");
  const infogeo::TangentVector u = pf.tangent(p, "u");
  const infogeo::TangentVector moved = o.kind == "exp"
                                           ? infogeo::transport_exp(p, q, u)
                                           : infogeo::transport_mix(p, q, u);
  const double check = std::abs(infogeo::expectation(q, moved.vals()));
  std::ostringstream out;
  out << "{\"kind\": \"" << o.kind << "\", \"vector\": "
      << vec_json(moved.vals())
      << ", \"centering_check\": " << infogeo::format17(check) << "}\n";
  emit(out.str(), o.output);
  if (check > o.tol) {
    std::cerr << "centering check " << check << " exceeds tolerance " << o.tol
              << "\n";
    return 1;
  }
  return 0;
}

struct CovderivOpts {
  std::string input, output, kind = "exp";
  std::optional<double> alpha;
};

int run_covderiv(const CovderivOpts& o) {
  const infogeo::ProblemFile pf = infogeo::ProblemFile::parse_csv(o.input);
  const infogeo::Density p = pf.density("p");
  const infogeo::TangentVector dir = pf.tangent(p, "u");
  const infogeo::Curve curve = infogeo::Curve::exp_segment(p, dir);

  // With a 'v' column the field is the exponentially parallel carrier of v;
  // without it the curve's own tangent field is differentiated, which makes
  // the exp output the geodesic residual vector.
  infogeo::DerivResult result = [&] {
    if (pf.v.has_value()) {
      const infogeo::VectorField s = infogeo::VectorField::exp_parallel(
          pf.require("v"));
      if (o.alpha) return infogeo::nabla_alpha(infogeo::AlphaParam(*o.alpha),
                                               s, curve, 0.0);
      return o.kind == "exp" ? infogeo::nabla_exp(s, curve, 0.0)
                             : infogeo::nabla_mix(s, curve, 0.0);
    }
    const infogeo::CurveField tf = infogeo::tangent_field(curve);
    if (o.alpha) return infogeo::nabla_alpha(infogeo::AlphaParam(*o.alpha),
                                             tf, curve, 0.0);
    return o.kind == "exp" ? infogeo::nabla_exp(tf, curve, 0.0)
                           : infogeo::nabla_mix(tf, curve, 0.0);
  }();

  std::ostringstream out;
  out << "{\"kind\": \""
      << (o.alpha ? "alpha " + infogeo::format17(*o.alpha) : o.kind)
      << "\", \"vector\": " << vec_json(result.vec.vals())
      << ", \"centering_defect\": "
      << infogeo::format17(result.centering_defect) << "}\n";
  emit(out.str(), o.output);
  return 0;
}

struct GeodesicOpts {
  std::string input, output, kind;
  int steps = 101;
};

int run_geodesic(const GeodesicOpts& o) {
  if (o.steps < 2) throw infogeo::InputError("--steps must be >= 2");
  const infogeo::ProblemFile pf = infogeo::ProblemFile::parse_csv(o.input);

  infogeo::Curve curve = [&] {
    if (o.kind == "exp") {
      const infogeo::Density p = pf.density("p");
      return infogeo::Curve::exp_segment(p, pf.tangent(p, "u"));
    }
    return infogeo::Curve::mix_segment(pf.density("q1"), pf.density("q2"));
  }();
  const infogeo::ConnectionKind conn = o.kind == "exp"
                                           ? infogeo::ConnectionKind::Exp
                                           : infogeo::ConnectionKind::Mix;

  std::ostringstream out;
  out << "t";
  const std::size_t n = curve.at(0.0).atom_count();
  for (std::size_t i = 1; i <= n; ++i) out << ",gamma_" << i;
  out << ",residual\n";
  for (int j = 0; j < o.steps; ++j) {
    const double t = static_cast<double>(j) / (o.steps - 1);
    const infogeo::Density g = curve.at(t);
    out << infogeo::format17(t);
    for (std::size_t i = 0; i < n; ++i) {
      out << "," << infogeo::format17(g[i]);
    }
    out << "," << infogeo::format17(infogeo::geodesic_residual_at(curve, conn, t))
        << "\n";
  }
  emit(out.str(), o.output);
  return 0;
}

struct VerifyOpts {
  std::string input, output;
  std::optional<std::uint64_t> seed;
  std::optional<long> trials;
  std::optional<double> tol;
};

int run_verify(const VerifyOpts& o) {
  infogeo::VerifyConfig cfg;
  if (!o.input.empty()) cfg = infogeo::load_verify_config(o.input);
  if (o.seed) cfg.seed = *o.seed;
  if (o.trials) {
    if (*o.trials < 0) throw infogeo::InputError("--trials must be >= 0");
    cfg.trials_override = *o.trials;
  }
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw infogeo::InputError("--tol must be > 0");
    cfg.tol_override = *o.tol;
  }

  log_line(1, "running verification campaign, seed " + std::to_string(cfg.seed));
  const infogeo::VerificationReport report = infogeo::run_verification(cfg);
  for (const infogeo::PropertyRecord& rec : report.properties) {
    log_line(1, (rec.pass ? "pass " : "FAIL ") + rec.name + " (max_error " +
                    infogeo::format17(rec.max_error) + ", tolerance " +
                    infogeo::format17(rec.tolerance) + ")");
  }
  if (report.no_trials) log_line(1, "no trials requested, vacuous pass");

  emit(infogeo::report_to_json(report), o.output);
  return report.overall_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"information geometry computations on finite atomic measure "
               "spaces"};
  app.require_subcommand(1);

  NormOpts norm_opts;
  auto* norm = app.add_subcommand("norm", "Luxemburg/Orlicz norms of column u");
  norm->add_option("--input", norm_opts.input, "problem CSV")->required();
  norm->add_option("--phi", norm_opts.phi, "Young function (1,2,3)")
      ->check(CLI::Range(1, 3));
  norm->add_option("--which", norm_opts.which, "which norm")
      ->check(CLI::IsMember({"luxemburg", "orlicz", "both"}));
  norm->add_option("--output", norm_opts.output, "write result here");

  ChartOpts chart_opts;
  auto* chart = app.add_subcommand(
      "chart", "chart map (column u: forward, column q: inverse)");
  chart->add_option("--input", chart_opts.input, "problem CSV")->required();
  chart->add_option("--output", chart_opts.output, "write result here");

  MetricOpts metric_opts;
  auto* metric =
      app.add_subcommand("metric", "Fisher pairing of columns u and v at p");
  metric->add_option("--input", metric_opts.input, "problem CSV")->required();
  metric->add_option("--output", metric_opts.output, "write result here");

  TransportOpts transport_opts;
  auto* transport =
      app.add_subcommand("transport", "parallel transport of u from p to q");
  transport->add_option("--input", transport_opts.input, "problem CSV")
      ->required();
  transport->add_option("--kind", transport_opts.kind, "exp or mix")
      ->required()
      ->check(CLI::IsMember({"exp", "mix"}));
  transport->add_option("--tol", transport_opts.tol,
                        "centering check tolerance");
  transport->add_option("--output", transport_opts.output, "write result here");

  CovderivOpts covderiv_opts;
  auto* covderiv = app.add_subcommand(
      "covderiv",
      "covariant derivative along the exponential segment through p with "
      "direction u");
  covderiv->add_option("--input", covderiv_opts.input, "problem CSV")
      ->required();
  covderiv->add_option("--kind", covderiv_opts.kind, "exp or mix")
      ->check(CLI::IsMember({"exp", "mix"}));
  covderiv->add_option("--alpha", covderiv_opts.alpha,
                       "use the alpha-connection instead");
  covderiv->add_option("--output", covderiv_opts.output, "write result here");

  GeodesicOpts geodesic_opts;
  auto* geodesic = app.add_subcommand(
      "geodesic", "emit a geodesic trajectory as CSV (t, atoms..., residual)");
  geodesic->add_option("--input", geodesic_opts.input, "problem CSV")
      ->required();
  geodesic->add_option("--kind", geodesic_opts.kind,
                       "exp (needs p,u) or mix (needs q1,q2)")
      ->required()
      ->check(CLI::IsMember({"exp", "mix"}));
  geodesic->add_option("--steps", geodesic_opts.steps, "sample count (>= 2)");
  geodesic->add_option("--output", geodesic_opts.output, "write CSV here");

  VerifyOpts verify_opts;
  auto* verify =
      app.add_subcommand("verify", "run the full verification campaign");
  verify->add_option("--input", verify_opts.input, "JSON config sidecar");
  verify->add_option("--seed", verify_opts.seed, "global seed");
  verify->add_option("--trials", verify_opts.trials,
                     "override every per-property trial count");
  verify->add_option("--tol", verify_opts.tol,
                     "override every per-property tolerance");
  verify->add_option("--output", verify_opts.output, "write JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (norm->parsed()) return run_norm(norm_opts);
    if (chart->parsed()) return run_chart(chart_opts);
    if (metric->parsed()) return run_metric(metric_opts);
    if (transport->parsed()) return run_transport(transport_opts);
    if (covderiv->parsed()) return run_covderiv(covderiv_opts);
    if (geodesic->parsed()) return run_geodesic(geodesic_opts);
    if (verify->parsed()) return run_verify(verify_opts);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const infogeo::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const infogeo::ChartDomainError& e) {
    std::cerr << "chart domain: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  }
}
