#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "commands.hpp"
#include "extremal/verify/errors.hpp"

using namespace extremal::tools;

int main(int argc, char** argv) {
  CLI::App app{"Upper bounds for packing and independence problems with exact certificates"};
  app.require_subcommand(1);

  KissingConfig kc;
  auto* kissing = app.add_subcommand("kissing", "Kissing number bounds on the sphere");
  kissing->add_option("--dim", kc.dim, "Dimension n")->required()->check(CLI::Range(3, 64));
  kissing->add_option("--degree", kc.degree, "Truncation degree d")->required()->check(CLI::Range(2, 20));
  kissing->add_option("--method", kc.method)->check(CLI::IsMember({"lp", "three-point"}));
  kissing->add_flag("--certify", kc.certify, "Run the exact certification pipeline");
  kissing->add_option("--out", kc.out, "Directory for JSON artifacts");
  kissing->add_option("--grid", kc.grid, "LP grid size (default max(200, 4d))")->check(CLI::NonNegativeNumber);
  kissing->add_option("--margin", kc.margin, "Starting constraint margin (default per problem)")->check(CLI::NonNegativeNumber);
  kissing->add_option("--retries", kc.retries, "Margin doublings after a failed rounding")->check(CLI::Range(0, 10));
  kissing->add_option("--budget", kc.budget, "Branch-and-bound box budget")->check(CLI::PositiveNumber);
  kissing->add_option("--uv-points", kc.uv_points, "Three-point (u, v) grid per axis")->check(CLI::Range(4, 200));
  kissing->add_option("--t-points", kc.t_points, "Three-point t samples per (u, v)")->check(CLI::Range(2, 100));
  kissing->add_option("--rounds", kc.rounds, "Exchange refinement rounds")->check(CLI::Range(0, 20));

  AvoidConfig ac;
  auto* avoid = app.add_subcommand("avoid", "Measurable independence bounds");
  avoid->add_option("--space", ac.space)->check(CLI::IsMember({"sphere", "plane"}));
  avoid->add_option("--dim", ac.dim)->required()->check(CLI::Range(2, 64));
  avoid->add_option("--degree", ac.degree, "Truncation degree (sphere)")->check(CLI::Range(2, 40));
  avoid->add_option("--horizon", ac.horizon, "Search horizon for the Bessel minimum (plane)")->check(CLI::Range(20.0, 1000.0));
  avoid->add_option("--out", ac.out, "Directory for JSON artifacts");

  GraphConfig gc;
  auto* graph = app.add_subcommand("graph", "Bounds for the independence number of a finite graph");
  graph->add_option("--file", gc.file, "Edge list: p edge V E / e u v")->required()->check(CLI::ExistingFile);
  graph->add_option("--method", gc.method)->check(CLI::IsMember({"theta", "theta-prime", "lasserre", "certificate"}));
  graph->add_option("--step", gc.step, "Lasserre step t")->check(CLI::Range(1, 20));
  graph->add_option("--out", gc.out, "Directory for JSON artifacts");

  ReproduceConfig rc;
  auto* reproduce = app.add_subcommand("reproduce", "Run the gated table and write CSV");
  reproduce->add_option("--table", rc.table)->required()->check(CLI::IsMember({"kissing", "avoid"}));
  reproduce->add_option("--jobs", rc.jobs, "Worker threads (default core count)")->check(CLI::NonNegativeNumber);
  reproduce->add_flag("--timing", rc.timing, "Fill the wall_time column (output no longer byte-stable)");
  reproduce->add_option("--out", rc.out, "CSV path (default stdout)");
  reproduce->add_option("--seed", rc.seed, "Reserved; the algorithms are deterministic");

  std::string certificate;
  auto* verify = app.add_subcommand("verify", "Re-verify a certificate file with exact arithmetic");
  verify->add_option("certificate", certificate)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParseError;
  }
  if (avoid->parsed() && ac.space == "sphere" && ac.degree == 0) {
    std::cerr << "avoid --space sphere needs --degree\n";
    return kParseError;
  }

  try {
    if (kissing->parsed()) return cmd_kissing(kc);
    if (avoid->parsed()) return cmd_avoid(ac);
    if (graph->parsed()) return cmd_graph(gc);
    if (reproduce->parsed()) return cmd_reproduce(rc);
    return cmd_verify(certificate);
  } catch (const extremal::verify::CertificationError& e) {
    std::cerr << "certification failed: " << e.what() << '\n';
    return kCertificationError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kParseError;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolverError;
  }
}
