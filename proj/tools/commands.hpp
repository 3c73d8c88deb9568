#pragma once

#include <string>

namespace extremal::tools {

enum ExitCode { kOk = 0, kParseError = 1, kSolverError = 2, kCertificationError = 3, kReproduceFailed = 4 };

struct KissingConfig {
  int dim = 0;
  int degree = 0;
  std::string method = "lp";
  bool certify = false;
  std::string out;
  int grid = 0;  // 0 means max(200, 4d)
  double margin = 0.0;
  int retries = 4;
  long long budget = 2'000'000;
  int uv_points = 40;
  int t_points = 15;
  int rounds = 3;
};

struct AvoidConfig {
  std::string space = "sphere";
  int dim = 0;
  int degree = 0;
  double horizon = 50.0;
  std::string out;
};

struct GraphConfig {
  std::string file;
  std::string method = "theta";
  int step = 1;
  std::string out;
};

struct ReproduceConfig {
  std::string table;
  int jobs = 0;  // 0 means hardware concurrency
  bool timing = false;
  std::string out;
  unsigned long long seed = 0;  // unused; kept for interface stability
};

int cmd_kissing(const KissingConfig& config);
int cmd_avoid(const AvoidConfig& config);
int cmd_graph(const GraphConfig& config);
int cmd_reproduce(const ReproduceConfig& config);
int cmd_verify(const std::string& path);

}  // namespace extremal::tools
