#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "extremal/finite/graph.hpp"
#include "extremal/finite/lasserre.hpp"
#include "extremal/finite/theta.hpp"
#include "extremal/sphere/certify.hpp"
#include "extremal/verify/errors.hpp"
#include "output.hpp"

namespace extremal::tools {

int cmd_kissing(const KissingConfig& c) {
  const bool lp = c.method == "lp";
  const std::string stem = "kissing-" + c.method + "-n" + std::to_string(c.dim) + "-d" + std::to_string(c.degree);
  sphere::ThreePointOptions tp;
  tp.uv_points = c.uv_points;
  tp.t_points = c.t_points;
  tp.refinement_rounds = c.rounds;

  sphere::BoundResult raw;
  if (lp) {
    sphere::LpOptions o;
    o.grid_size = c.grid > 0 ? c.grid : std::max(200, 4 * c.degree);
    raw = sphere::kissing_lp(c.dim, c.degree, o);
  } else {
    raw = sphere::kissing_three_point(c.dim, c.degree, tp);
  }
  if (!c.out.empty()) write_file(c.out, stem + ".bound.json", to_json(raw).dump(1));

  std::string certified = "none";
  int code = kOk;
  if (c.certify) {
    sphere::CertifyOptions o;
    o.margin = c.margin;
    o.retries = c.retries;
    o.box_budget = c.budget;
    const auto run = lp ? sphere::certify_kissing_lp(c.dim, c.degree, o) : sphere::certify_kissing_three_point(c.dim, c.degree, o, tp);
    if (!c.out.empty()) write_file(c.out, stem + ".tightened.json", to_json(run.result).dump(1));
    if (run.certificate) {
      certified = verify::certified_integer(*run.certificate);
      if (!c.out.empty()) write_file(c.out, stem + ".cert.json", verify::to_json(*run.certificate));
    } else {
      std::cerr << "certification failed after " << run.attempts << " attempts: " << run.failure << '\n';
      code = kCertificationError;
    }
  }
  std::cout << "n=" << c.dim << " d=" << c.degree << " bound=" << format_double(raw.value) << " certified=" << certified << '\n';
  return code;
}

int cmd_avoid(const AvoidConfig& c) {
  if (c.space == "sphere") {
    const auto r = sphere::avoid_orthogonal(c.dim, c.degree);
    const auto cert = sphere::certify_avoid_orthogonal(r);
    if (!c.out.empty()) {
      const std::string stem = "avoid-sphere-n" + std::to_string(c.dim) + "-d" + std::to_string(c.degree);
      write_file(c.out, stem + ".bound.json", to_json(r).dump(1));
      write_file(c.out, stem + ".cert.json", verify::to_json(cert));
    }
    std::cout << "n=" << c.dim << " d=" << c.degree << " bound=" << to_string(*r.exact_value) << " (" << format_double(r.value, 12)
              << ")\n";
    return kOk;
  }
  const auto r = sphere::avoid_distance_plane(c.dim, c.horizon);
  if (!c.out.empty()) write_file(c.out, "avoid-plane-n" + std::to_string(c.dim) + ".bound.json", to_json(r).dump(1));
  std::cout << "n=" << c.dim << " bound=" << format_double(r.value) << " minimizer=" << format_double(r.minimizer)
            << " omega_min=" << format_double(r.omega_min) << '\n';
  return kOk;
}

int cmd_graph(const GraphConfig& c) {
  std::ifstream in(c.file);
  if (!in) throw std::invalid_argument("cannot open " + c.file);
  finite::Graph g;
  try {
    g = finite::read_dimacs(in);
  } catch (const finite::GraphParseError& e) {
    std::cerr << c.file << ": " << e.what() << '\n';
    return kParseError;
  }
  nlohmann::json j = {{"file", c.file}, {"method", c.method}, {"vertices", g.vertex_count()}, {"edges", g.edges().size()}};
  std::string stem = "graph-" + std::filesystem::path(c.file).stem().string() + "-" + c.method;
  std::ostringstream line;
  line << "vertices=" << g.vertex_count() << " edges=" << g.edges().size() << " method=" << c.method;
  if (c.method == "theta" || c.method == "theta-prime") {
    const double v = finite::theta_finite(g, c.method == "theta" ? finite::ThetaVariant::Plain : finite::ThetaVariant::Prime);
    j["value"] = v;
    line << " bound=" << format_double(v);
  } else if (c.method == "lasserre") {
    const auto r = finite::lasserre_solve(g, c.step);
    j["step"] = c.step;
    j["value"] = r.value;
    j["gap"] = r.gap;
    stem += "-t" + std::to_string(c.step);
    line << " step=" << c.step << " bound=" << format_double(r.value);
  } else {
    const auto dc = finite::lasserre_dual_certificate(g, c.step);
    finite::check_dual_certificate(g, dc);
    const auto cert = finite::to_certificate(g, dc);
    verify::verify_certificate(verify::certificate_from_json(verify::to_json(cert)));
    j["step"] = c.step;
    j["value"] = dc.bound.get_d();
    j["numeric_value"] = dc.numeric_value;
    stem += "-t" + std::to_string(c.step);
    if (!c.out.empty()) write_file(c.out, stem + ".cert.json", verify::to_json(cert));
    line << " step=" << c.step << " bound=" << format_double(dc.bound.get_d()) << " certified=" << verify::certified_integer(cert);
  }
  if (!c.out.empty()) write_file(c.out, stem + ".bound.json", j.dump(1));
  std::cout << line.str() << '\n';
  return kOk;
}

int cmd_verify(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot open " << path << '\n';
    return kParseError;
  }
  std::stringstream text;
  text << in.rdbuf();
  verify::Certificate c;
  try {
    c = verify::certificate_from_json(text.str());
  } catch (const verify::CertificationError& e) {
    std::cerr << path << ": " << e.what() << '\n';
    return kParseError;
  }
  const auto checked = verify::verify_certificate(c);
  std::cout << "verified problem=" << checked.problem << " n=" << checked.n << " d=" << checked.d
            << " certified_bound=" << to_string(checked.certified_bound);
  if (checked.problem != "avoid-orthogonal-sphere") std::cout << " certified=" << verify::certified_integer(checked);
  std::cout << '\n';
  return kOk;
}

}  // namespace extremal::tools
