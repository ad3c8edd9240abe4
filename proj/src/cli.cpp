#include "rosenblatt/cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rosenblatt/charfn.h"
#include "rosenblatt/dist.h"
#include "rosenblatt/errors.h"
#include "rosenblatt/fbm.h"
#include "rosenblatt/io.h"
#include "rosenblatt/lrdmix.h"
#include "rosenblatt/mc.h"
#include "rosenblatt/spectrum.h"

namespace rosenblatt {

namespace {

using io::fmt17;

CLI::Validator open_interval(double lo, double hi) {
  return CLI::Validator(
      [lo, hi](std::string& in) -> std::string {
        double v = 0.0;
        if (!CLI::detail::lexical_cast(in, v) || !(v > lo && v < hi)) {
          std::ostringstream msg;
          msg << "value " << in << " not in (" << lo << ", " << hi << ")";
          return msg.str();
        }
        return {};
      },
      "OPEN(" + std::to_string(lo) + "," + std::to_string(hi) + ")");
}

struct SpectrumFlags {
  double a = 0.25;
  std::optional<std::size_t> m;
  double eps = 1e-4;
  std::string formula = "standard";

  void attach(CLI::App* cmd) {
    cmd->add_option("--a", a, "shape parameter a")->required()->check(CLI::Range(0.0, 0.5));
    cmd->add_option("--m", m, "number of eigenvalues (overrides --eps)");
    cmd->add_option("--eps", eps, "truncation accuracy used to choose M");
    cmd->add_option("--formula", formula, "eigenvalue formula")
        ->check(CLI::IsMember({"standard", "swapped"}));
  }

  Spectrum build() const {
    const EigenFormula f =
        formula == "standard" ? EigenFormula::standard : EigenFormula::swapped;
    if (m) {
      return build_spectrum(a, *m, f);
    }
    return build_spectrum(a, choose_M(a, eps), f);
  }
};

struct QuadFlags {
  QuadOptions quad;

  void attach(CLI::App* cmd) {
    cmd->add_option("--zmax", quad.zmax, "initial Fourier cut-off");
    cmd->add_option("--tol", quad.tol, "absolute quadrature tolerance");
  }
};

struct GridFlags {
  double lo = -3.0;
  double hi = 3.0;
  double step = 0.05;

  std::vector<double> points(const char* name) const {
    if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
      throw DomainError(std::string("--") + name + "min/--" + name + "max/--step: need " +
                        name + "min <= " + name + "max and step > 0");
    }
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    if (count > 50'000'000) {
      throw DomainError("--step: grid too fine");
    }
    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i) {
      xs[i] = lo + step * static_cast<double>(i);
    }
    return xs;
  }
};

// Routes output to --out when given, else to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback, bool binary) {
    if (!path.empty()) {
      file_.open(path, binary ? std::ios::binary | std::ios::out : std::ios::out);
      if (!file_) {
        throw DomainError("--out: cannot open '" + path + "' for writing");
      }
      stream_ = &file_;
    } else {
      stream_ = &fallback;
    }
  }

  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

double finite_or_throw(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw NumericalError(std::string(what) + " is not finite", v);
  }
  return v;
}

void write_values(std::ostream& out, const std::string& format, std::span<const double> v,
                  const char* header) {
  if (format == "bin") {
    io::write_f64le(out, v);
    return;
  }
  out << header << '\n';
  io::write_lines(out, v);
}

std::string replace_extension(const std::string& path, const std::string& ext) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
    return path.substr(0, dot) + ext;
  }
  return path + ext;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rosenblatt distribution toolkit"};
  app.require_subcommand(1);
  app.fallthrough(false);

  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 0;
  unsigned threads = 1;

  auto add_out = [&](CLI::App* cmd, std::vector<std::string> formats) {
    cmd->add_option("--out", out_path, "output file (default: stdout)");
    cmd->add_option("--format", format, "output format")->check(CLI::IsMember(formats));
  };
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "random seed")->required();
    cmd->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));
  };

  // eigs
  SpectrumFlags eig_flags;
  auto* eigs = app.add_subcommand("eigs", "approximate eigenvalues and sigma_eps^2");
  eig_flags.attach(eigs);
  add_out(eigs, {"csv", "json"});

  // charfn
  SpectrumFlags cf_flags;
  GridFlags zgrid{0.0, 10.0, 0.05};
  auto* charfn = app.add_subcommand("charfn", "characteristic function on a z grid");
  cf_flags.attach(charfn);
  charfn->add_option("--zmin", zgrid.lo);
  charfn->add_option("--zmax", zgrid.hi);
  charfn->add_option("--step", zgrid.step);
  add_out(charfn, {"csv"});

  // density / cdf
  SpectrumFlags dens_flags;
  QuadFlags dens_quad;
  GridFlags xgrid;
  auto* density_cmd = app.add_subcommand("density", "density table by Fourier inversion");
  auto* cdf_cmd = app.add_subcommand("cdf", "density table by Fourier inversion");
  for (auto* cmd : {density_cmd, cdf_cmd}) {
    dens_flags.attach(cmd);
    dens_quad.attach(cmd);
    cmd->add_option("--xmin", xgrid.lo);
    cmd->add_option("--xmax", xgrid.hi);
    cmd->add_option("--step", xgrid.step);
    add_out(cmd, {"csv"});
  }

  // quantile
  SpectrumFlags q_flags;
  QuadFlags q_quad;
  std::vector<double> probs;
  auto* quantile_cmd = app.add_subcommand("quantile", "quantiles by CDF inversion");
  q_flags.attach(quantile_cmd);
  q_quad.attach(quantile_cmd);
  quantile_cmd->add_option("--p", probs, "probability levels")->required();
  add_out(quantile_cmd, {"csv"});

  // sample
  SpectrumFlags s_flags;
  std::size_t count = 0;
  auto* sample_cmd = app.add_subcommand("sample", "draws from the truncated series");
  s_flags.attach(sample_cmd);
  sample_cmd->add_option("--count", count, "number of draws")->required()->check(CLI::PositiveNumber);
  add_seed(sample_cmd);
  add_out(sample_cmd, {"csv", "bin"});

  // simulate-lrd
  std::string corr = "power";
  double lrd_a = 0.25;
  std::size_t lrd_n = 0;
  auto* lrd_cmd = app.add_subcommand("simulate-lrd", "long-memory Gaussian sequence");
  lrd_cmd->add_option("--corr", corr)->check(CLI::IsMember({"power", "ml"}));
  lrd_cmd->add_option("--a", lrd_a)->required()->check(open_interval(0.0, 1.0));
  lrd_cmd->add_option("--n", lrd_n)->required()->check(CLI::PositiveNumber);
  add_seed(lrd_cmd);
  add_out(lrd_cmd, {"csv", "bin"});

  // simulate-fbm
  double hurst = 0.75;
  std::size_t fbm_n = 0;
  auto* fbm_cmd = app.add_subcommand("simulate-fbm", "fractional Brownian motion on [0,1]");
  fbm_cmd->add_option("--hurst", hurst)->required()->check(open_interval(0.0, 1.0));
  fbm_cmd->add_option("--n", fbm_n)->required()->check(CLI::Range(std::size_t{2}, SIZE_MAX));
  add_seed(fbm_cmd);
  add_out(fbm_cmd, {"csv", "bin"});

  // mc run
  auto* mc_cmd = app.add_subcommand("mc", "Monte-Carlo experiments");
  mc_cmd->require_subcommand(1);
  auto* mc_run = mc_cmd->add_subcommand("run", "replicate one normalised functional");
  std::string functional = "mean";
  FunctionalSpec fs;
  std::size_t reps = 0;
  double mc_eps = 1e-4;
  std::string mc_corr = "power";
  mc_run->add_option("--functional", functional)
      ->check(CLI::IsMember({"mean", "corr", "sojourn", "quadvar"}));
  mc_run->add_option("--a", fs.a)->required()->check(open_interval(0.0, 0.5));
  mc_run->add_option("--n", fs.n)->required()->check(CLI::PositiveNumber);
  mc_run->add_option("--reps", reps)->required()->check(CLI::Range(std::size_t{2}, SIZE_MAX));
  mc_run->add_option("--lag", fs.lag);
  mc_run->add_option("--level", fs.level);
  mc_run->add_option("--corr", mc_corr)->check(CLI::IsMember({"power", "ml"}));
  mc_run->add_option("--eps", mc_eps, "truncation accuracy of the reference distribution");
  add_seed(mc_run);
  mc_run->add_option("--out", out_path, "JSON summary path; the CSV goes next to it");

  // corr-audit
  std::string audit_corr = "power";
  double audit_a = 0.25;
  double tmin = 0.1;
  double tmax = 1e4;
  std::size_t points = 200;
  std::string scheme = "gaps";
  auto* audit_cmd = app.add_subcommand("corr-audit", "mixture vs target correlation");
  audit_cmd->add_option("--corr", audit_corr)->check(CLI::IsMember({"power", "ml"}));
  audit_cmd->add_option("--a", audit_a)->required()->check(open_interval(0.0, 1.0));
  audit_cmd->add_option("--tmin", tmin);
  audit_cmd->add_option("--tmax", tmax);
  audit_cmd->add_option("--points", points);
  audit_cmd->add_option("--weights", scheme)->check(CLI::IsMember({"gaps", "integrals"}));
  add_out(audit_cmd, {"csv", "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (eigs->parsed()) {
      const Spectrum spec = eig_flags.build();
      Sink sink(out_path, out, false);
      *sink << (format == "json" ? spectrum_to_json(spec) : spectrum_to_csv(spec));
    } else if (charfn->parsed()) {
      const Spectrum spec = cf_flags.build();
      const auto zs = zgrid.points("z");
      std::ostringstream body;
      body << "z,re,im\n";
      for (double z : zs) {
        const auto phi = charfn_eps(spec, z);
        body << fmt17(z) << ',' << fmt17(phi.real()) << ',' << fmt17(phi.imag()) << '\n';
      }
      Sink sink(out_path, out, false);
      *sink << body.str();
    } else if (density_cmd->parsed() || cdf_cmd->parsed()) {
      const Spectrum spec = dens_flags.build();
      const auto xs = xgrid.points("x");
      const DensityTable table = density_table(spec, xs, dens_quad.quad);
      Sink sink(out_path, out, false);
      *sink << density_table_csv(table);
    } else if (quantile_cmd->parsed()) {
      const Distribution dist(q_flags.build(), q_quad.quad);
      std::ostringstream body;
      body << "p,x\n";
      for (double p : probs) {
        body << fmt17(p) << ',' << fmt17(dist.quantile(p)) << '\n';
      }
      Sink sink(out_path, out, false);
      *sink << body.str();
    } else if (sample_cmd->parsed()) {
      const auto draws = sample(s_flags.build(), seed, count, threads);
      Sink sink(out_path, out, format == "bin");
      write_values(*sink, format, draws, "x");
    } else if (lrd_cmd->parsed()) {
      const ExpMixture mix = build_mixture(lrd_a, parse_corr_kind(corr));
      const auto xs = simulate_lrd(mix, lrd_n, seed, threads);
      Sink sink(out_path, out, format == "bin");
      write_values(*sink, format, xs, "x");
    } else if (fbm_cmd->parsed()) {
      const auto xs = simulate_fbm(hurst, fbm_n, seed);
      Sink sink(out_path, out, format == "bin");
      if (format == "bin") {
        io::write_f64le(*sink, xs);
      } else {
        *sink << "t,x\n";
        for (std::size_t j = 0; j < xs.size(); ++j) {
          *sink << fmt17(static_cast<double>(j) / static_cast<double>(fbm_n)) << ','
                << fmt17(xs[j]) << '\n';
        }
      }
    } else if (mc_run->parsed()) {
      fs.kind = parse_functional_kind(functional);
      fs.corr_kind = parse_corr_kind(mc_corr);
      McOptions opts;
      opts.threads = threads;
      const EmpiricalDensity ed = run_monte_carlo(fs, reps, seed, opts);
      const Distribution dist(build_spectrum(fs.a, choose_M(fs.a, mc_eps)));
      const double ks = ks_distance(ed.values, dist);

      nlohmann::ordered_json params;
      params["functional"] = functional;
      params["a"] = fs.a;
      params["n"] = fs.n;
      params["reps"] = reps;
      params["seed"] = seed;
      if (fs.kind == FunctionalKind::correlation) {
        params["lag"] = fs.lag;
      }
      if (fs.kind == FunctionalKind::sojourn) {
        params["level"] = fs.level;
      }
      if (fs.kind != FunctionalKind::quadvar) {
        params["corr"] = mc_corr;
      }
      params["M"] = dist.spectrum().M();
      nlohmann::ordered_json j;
      j["params"] = params;
      j["mean"] = finite_or_throw(ed.mean, "mean");
      j["sd"] = finite_or_throw(ed.sd, "sd");
      j["skewness"] = finite_or_throw(ed.skewness, "skewness");
      j["ks"] = finite_or_throw(ks, "ks");
      {
        Sink sink(out_path, out, false);
        *sink << j.dump() << '\n';
      }
      if (!out_path.empty()) {
        const std::string csv_path = replace_extension(out_path, ".csv");
        Sink sink(csv_path, out, false);
        *sink << "x,kde,rosenblatt_pdf\n";
        for (std::size_t i = 0; i < ed.kde_xs.size(); ++i) {
          *sink << fmt17(ed.kde_xs[i]) << ',' << fmt17(ed.kde_vals[i]) << ','
                << fmt17(dist.pdf(ed.kde_xs[i])) << '\n';
        }
      }
    } else if (audit_cmd->parsed()) {
      const ExpMixture mix =
          build_mixture(audit_a, parse_corr_kind(audit_corr),
                        scheme == "gaps" ? WeightScheme::quantile_gaps
                                         : WeightScheme::interval_integrals);
      const auto grid = log_grid(tmin, tmax, points);
      const ApproxReport rep = approx_error_report(mix, grid);
      Sink sink(out_path, out, false);
      if (format == "json") {
        nlohmann::ordered_json j;
        j["corr"] = audit_corr;
        j["a"] = audit_a;
        j["M"] = mix.M();
        j["weights"] = mix.weights;
        j["rates"] = mix.rates;
        j["max_rel_err"] = finite_or_throw(rep.max_rel_err, "max_rel_err");
        *sink << j.dump() << '\n';
      } else {
        *sink << "t,target,approx,rel_err\n";
        for (const auto& p : rep.points) {
          *sink << fmt17(p.t) << ',' << fmt17(p.target) << ',' << fmt17(p.approx) << ','
                << fmt17(p.rel_err) << '\n';
        }
        *sink << "# max_rel_err=" << fmt17(rep.max_rel_err) << '\n';
      }
    }
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace rosenblatt
