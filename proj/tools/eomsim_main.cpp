#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eomsim/eomsim.hpp"

namespace {

struct OutputOptions {
  std::string format = "csv";
  std::string out_path;
  bool no_timestamp = false;
};

void emit(const eomsim::Dataset& data, const OutputOptions& opts) {
  eomsim::WriteOptions w;
  w.include_timestamp = !opts.no_timestamp;
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!opts.out_path.empty()) {
    file.open(opts.out_path);
    if (!file)
      throw eomsim::InvalidParameterError("cannot open output file '" +
                                          opts.out_path + "'");
    os = &file;
  }
  if (opts.format == "json")
    eomsim::write_json(*os, data, w);
  else
    eomsim::write_csv(*os, data, w);
}

eomsim::Direction parse_direction(const std::string& name) {
  return name == "wo" ? eomsim::Direction::MicrowaveToOptical
                      : eomsim::Direction::OpticalToMicrowave;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "eomsim - dynamics and conversion rates of a driven three-mode "
      "microwave/optical transducer"};
  app.require_subcommand(1);
  app.set_version_flag("--version",
                       std::string(eomsim::kToolName) + " " + eomsim::kVersion);

  OutputOptions out;
  std::uint64_t seed = 12345;
  app.add_option("--format", out.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out.out_path, "write to this file instead of stdout");
  app.add_flag("--no-header-timestamp", out.no_timestamp,
               "omit the generation timestamp from headers");
  app.add_option("--seed", seed, "seed for randomized self-checks");

  int exit_code = 0;

  // propagate: coefficient evolution over a time grid
  double p_k = 0.5, p_gw = 1.0, p_tmax = -1.0, p_tol = 1e-10;
  int p_points = 201;
  std::string p_method = "closed";
  auto* propagate = app.add_subcommand(
      "propagate", "evolve the nine propagator coefficients over time");
  propagate->fallthrough();
  propagate->add_option("-k,--ratio", p_k, "coupling ratio G_o/G_w")
      ->required();
  propagate->add_option("--gw", p_gw, "microwave coupling scale")->capture_default_str();
  propagate->add_option("--tmax", p_tmax,
                        "end time (default: two dark periods)");
  propagate->add_option("--points", p_points, "grid size")->capture_default_str()
      ->check(CLI::PositiveNumber);
  propagate->add_option("--method", p_method, "closed or ode")->capture_default_str()
      ->check(CLI::IsMember({"closed", "ode"}));
  propagate->add_option("--tol", p_tol,
                        "relative tolerance for the ode method")->capture_default_str();
  propagate->callback([&] {
    const auto cfg = eomsim::CouplingConfig::from_ratio(p_k, p_gw);
    const double tmax =
        p_tmax > 0.0 ? p_tmax : 2.0 * M_PI / cfg.frequency();
    eomsim::ToleranceSpec tol;
    tol.relative = p_tol;
    tol.absolute = p_tol * 1e-2;
    emit(eomsim::propagation_figure(cfg, {0.0, tmax, p_points}, p_method, tol),
         out);
  });

  // dark-times: when the mechanics decouples
  double d_k = 0.5, d_gw = 1.0;
  int d_count = 3;
  auto* dark = app.add_subcommand(
      "dark-times", "list times at which the mechanics decouples");
  dark->fallthrough();
  dark->add_option("-k,--ratio", d_k, "coupling ratio G_o/G_w")->required();
  dark->add_option("--gw", d_gw, "microwave coupling scale")->capture_default_str();
  dark->add_option("--count", d_count, "how many dark times")->capture_default_str()
      ->check(CLI::PositiveNumber);
  dark->callback([&] {
    emit(eomsim::dark_times_figure(
             eomsim::CouplingConfig::from_ratio(d_k, d_gw), d_count),
         out);
  });

  // cqc: conditional rate for a bare coherent input
  double c_k = 0.5;
  auto* cqc = app.add_subcommand(
      "cqc", "conditional conversion rate for a coherent input");
  cqc->fallthrough();
  cqc->add_option("-k,--ratio", c_k, "coupling ratio G_o/G_w")->required();
  cqc->callback([&] {
    eomsim::Dataset d;
    d.title = "conditional conversion rate";
    d.columns = {"coupling_ratio", "rate"};
    d.add_row({c_k, eomsim::cqc_rate(c_k)});
    emit(d, out);
  });

  // eaqc: entanglement-assisted rate
  double e_k = 0.5, e_theta = M_PI / 4.0, e_phase = 0.0, e_amp = 1.0;
  std::string e_dir = "ow", e_method = "closed";
  int e_cutoff = 14;
  bool e_max = false;
  auto* eaqc = app.add_subcommand(
      "eaqc", "conversion rate for an entangled coherent input");
  eaqc->fallthrough();
  eaqc->add_option("-k,--ratio", e_k, "coupling ratio G_o/G_w")->required();
  eaqc->add_option("--theta", e_theta, "branch mixing angle")->capture_default_str();
  eaqc->add_option("--phase", e_phase, "coherent amplitude phase")->capture_default_str();
  eaqc->add_option("--amplitude", e_amp, "coherent amplitude magnitude")->capture_default_str();
  eaqc->add_option("--direction", e_dir, "ow or wo")->capture_default_str()
      ->check(CLI::IsMember({"ow", "wo"}));
  eaqc->add_option("--method", e_method,
                   "closed form or full state-vector oracle")->capture_default_str()
      ->check(CLI::IsMember({"closed", "oracle"}));
  eaqc->add_option("--cutoff", e_cutoff,
                   "per-mode basis cutoff for the oracle method")->capture_default_str();
  eaqc->add_flag("--max-entangled", e_max,
                 "use the maximally entangled closed form");
  eaqc->callback([&] {
    eomsim::Dataset d;
    d.title = "entanglement-assisted conversion rate";
    if (e_max) {
      d.columns = {"coupling_ratio", "phase", "rate"};
      d.add_row({e_k, e_phase, eomsim::eaqc_max_entangled(e_k, e_phase)});
    } else {
      const double rate =
          e_method == "oracle"
              ? eomsim::oracle_rate(e_k, e_theta, e_phase, e_amp,
                                    parse_direction(e_dir), e_cutoff)
                    .rate
              : eomsim::eaqc_rate(e_k, e_theta, e_phase, e_amp,
                                  parse_direction(e_dir));
      d.parameters = {{"method", e_method}};
      if (e_method == "oracle")
        d.parameters.emplace_back("cutoff",
                                  static_cast<std::int64_t>(e_cutoff));
      d.columns = {"coupling_ratio", "theta",     "phase",
                   "amplitude",      "direction", "rate"};
      d.add_row({e_k, e_theta, e_phase, e_amp, e_dir, rate});
    }
    emit(d, out);
  });

  // eaf: how entanglement affects the rate
  double f_k = 0.5, f_phase = M_PI / 2.0;
  auto* eaf_cmd = app.add_subcommand(
      "eaf", "ratio of the coherent rate to the maximally entangled rate");
  eaf_cmd->fallthrough();
  eaf_cmd->add_option("-k,--ratio", f_k, "coupling ratio G_o/G_w")->required();
  eaf_cmd->add_option("--phase", f_phase, "coherent amplitude phase")->capture_default_str();
  eaf_cmd->callback([&] {
    const eomsim::EafReport r = eomsim::eaf(f_k, f_phase);
    eomsim::Dataset d;
    d.title = "entanglement-affecting factor";
    d.parameters = {{"critical_coupling", eomsim::critical_coupling()}};
    d.columns = {"coupling_ratio", "phase", "factor", "regime"};
    d.add_row({r.coupling_ratio, r.phase, r.factor,
               std::string(eomsim::regime_name(r.regime))});
    emit(d, out);
  });

  // concurrence: entanglement of the two-channel input state
  double s_theta = M_PI / 4.0;
  double s_ar = 1.0, s_ai = 0.0, s_br = 1.0, s_bi = 0.0;
  auto* conc = app.add_subcommand(
      "concurrence", "normalization, concurrence and field means of the "
                     "entangled coherent input");
  conc->fallthrough();
  conc->add_option("--theta", s_theta, "branch mixing angle")->capture_default_str();
  conc->add_option("--alpha-re", s_ar, "optical amplitude, real part")->capture_default_str();
  conc->add_option("--alpha-im", s_ai, "optical amplitude, imaginary part")
      ->capture_default_str();
  conc->add_option("--beta-re", s_br, "microwave amplitude, real part")
      ->capture_default_str();
  conc->add_option("--beta-im", s_bi, "microwave amplitude, imaginary part")
      ->capture_default_str();
  conc->callback([&] {
    const eomsim::EntangledCoherentState s{
        s_theta, {s_ar, s_ai}, {s_br, s_bi}};
    const eomsim::FieldMeans m = eomsim::field_means(s);
    eomsim::Dataset d;
    d.title = "entangled coherent input state";
    d.columns = {"theta",         "alpha_re",      "alpha_im",
                 "beta_re",       "beta_im",       "normalization",
                 "concurrence",   "optical_mean_re", "optical_mean_im",
                 "microwave_mean_re", "microwave_mean_im"};
    d.add_row({s_theta, s_ar, s_ai, s_br, s_bi, eomsim::normalization(s),
               eomsim::concurrence(s), m.optical.real(), m.optical.imag(),
               m.microwave.real(), m.microwave.imag()});
    emit(d, out);
  });

  // figure: canonical sweep datasets
  std::string fig_name;
  int fig_points = 0;
  double fig_start = std::numeric_limits<double>::quiet_NaN();
  double fig_stop = std::numeric_limits<double>::quiet_NaN();
  auto* figure = app.add_subcommand("figure", "canonical sweep datasets");
  figure->fallthrough();
  figure->add_option("name", fig_name, "cqc, eaqc-phase or eaf")
      ->required()
      ->check(CLI::IsMember({"cqc", "eaqc-phase", "eaf"}));
  figure->add_option("--points", fig_points, "override the grid size")
      ->check(CLI::PositiveNumber);
  figure->add_option("--start", fig_start,
                     "override the start of the swept axis");
  figure->add_option("--stop", fig_stop, "override the end of the swept axis");
  figure->callback([&] {
    const auto grid_for = [&](double start, double stop, int points) {
      eomsim::GridSpec grid{start, stop, points};
      if (!std::isnan(fig_start)) grid.start = fig_start;
      if (!std::isnan(fig_stop)) grid.stop = fig_stop;
      if (fig_points > 0) grid.count = fig_points;
      return grid;
    };
    if (fig_name == "cqc") {
      emit(eomsim::cqc_figure(grid_for(0.0, 0.95, 200)), out);
    } else if (fig_name == "eaqc-phase") {
      emit(eomsim::entangled_phase_figure({0.1, 0.2, 0.6, 0.9},
                                          grid_for(0.0, 2.0 * M_PI, 241)),
           out);
    } else {
      emit(eomsim::eaf_figure(grid_for(0.01, 0.95, 189)), out);
    }
  });

  // verify: run the built-in cross-checks
  std::string v_level = "quick";
  double v_tol = 1e-8;
  auto* verify = app.add_subcommand("verify", "run the built-in cross-checks");
  verify->fallthrough();
  verify->add_option("--level", v_level, "quick or full")->capture_default_str()
      ->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--tol", v_tol,
                     "threshold for the ode agreement check")->capture_default_str();
  verify->callback([&] {
    eomsim::VerifyOptions options;
    options.level = v_level == "full" ? eomsim::VerifyLevel::Full
                                      : eomsim::VerifyLevel::Quick;
    options.seed = seed;
    options.ode_comparison_tol = v_tol;
    const eomsim::VerifyReport report = eomsim::run_verify(options);
    emit(eomsim::to_dataset(report), out);
    if (!report.all_passed()) exit_code = 2;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const eomsim::ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const eomsim::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}
