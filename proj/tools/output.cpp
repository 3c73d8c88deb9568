#include "output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace extremal::tools {

nlohmann::json to_json(const sphere::BoundResult& r) {
  nlohmann::json j;
  j["problem"] = sphere::to_string(r.problem);
  j["n"] = r.n;
  j["d"] = r.d ? nlohmann::json(*r.d) : nlohmann::json();
  j["value"] = r.value;
  j["margin"] = r.margin;
  j["grid"] = r.grid_description;
  j["grid_points"] = r.grid;
  if (!r.coefficients.empty()) j["coefficients"] = r.coefficients;
  if (!r.matrices.empty()) {
    auto& ms = j["matrices"] = nlohmann::json::array();
    for (const auto& m : r.matrices) {
      nlohmann::json rows = nlohmann::json::array();
      for (int i = 0; i < m.rows(); ++i) {
        std::vector<double> row(m.cols());
        for (int c = 0; c < m.cols(); ++c) row[c] = m(i, c);
        rows.push_back(row);
      }
      ms.push_back(rows);
    }
  }
  auto rationals = [](const std::vector<Rational>& v) {
    std::vector<std::string> out;
    for (const auto& q : v) out.push_back(to_string(q));
    return out;
  };
  if (r.exact_value) j["exact_value"] = to_string(*r.exact_value);
  if (!r.exact_coefficients.empty()) j["exact_coefficients"] = rationals(r.exact_coefficients);
  if (!r.exact_dual.empty()) j["exact_dual"] = rationals(r.exact_dual);
  if (r.problem == sphere::Problem::AvoidDistancePlane) {
    j["minimizer"] = r.minimizer;
    j["omega_min"] = r.omega_min;
  }
  j["solver"] = {{"status", std::string(conic::to_string(r.solver.status))},
                 {"iterations", r.solver.iterations},
                 {"gap", r.solver.gap},
                 {"solves", r.solver.solves}};
  return j;
}

std::string write_file(const std::string& dir, const std::string& name, const std::string& text) {
  std::filesystem::create_directories(dir);
  const auto path = (std::filesystem::path(dir) / name).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  return path;
}

std::string format_double(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    const auto& f = fields[i];
    if (f.find_first_of(",\"\n\r") == std::string::npos) {
      line += f;
      continue;
    }
    line += '"';
    for (char c : f) {
      if (c == '"') line += '"';
      line += c;
    }
    line += '"';
  }
  return line + '\n';
}

}  // namespace extremal::tools
