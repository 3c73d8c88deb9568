#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <thread>

#include "commands.hpp"
#include "extremal/sphere/certify.hpp"
#include "extremal/verify/certify.hpp"
#include "output.hpp"

namespace extremal::tools {

namespace {

struct Outcome {
  std::string raw;
  std::string certified;
  bool pass = false;
};

struct Row {
  std::string problem;
  int n = 0;
  std::optional<int> d;
  std::string reference;
  std::function<Outcome()> run;
};

std::string certified_or_empty(const sphere::CertifiedRun& run) {
  return run.certificate ? verify::certified_integer(*run.certificate) : std::string();
}

Row lp_gate(int n, int d, int grid, long reference, double tolerance) {
  return {"kissing-lp", n, d, std::to_string(reference), [=] {
            const double raw = sphere::kissing_lp(n, d, grid).value;
            const auto run = sphere::certify_kissing_lp(n, d);
            const std::string cert = certified_or_empty(run);
            return Outcome{format_double(raw), cert, std::abs(raw - reference) <= tolerance && cert == std::to_string(reference)};
          }};
}

Row three_point_gate(int n, int d, int reference) {
  return {"kissing-three-point", n, d, std::to_string(reference), [=] {
            const auto run = sphere::certify_kissing_three_point(n, d);
            const std::string cert = certified_or_empty(run);
            return Outcome{format_double(run.result.value), cert, run.result.value < reference + 1 && cert == std::to_string(reference)};
          }};
}

std::vector<Row> kissing_rows() {
  std::vector<Row> rows{lp_gate(8, 6, 200, 240, 1e-4), lp_gate(24, 10, 400, 196560, 1e-2), three_point_gate(3, 6, 12),
                        three_point_gate(4, 8, 24)};
  for (int n = 3; n <= 8; ++n) {
    const int floor = sphere::kissing_lower_bound(n);
    rows.push_back({"kissing-lp-floor", n, 10, std::to_string(floor), [=] {
                      const double raw = sphere::kissing_lp(n, 10, 200).value;
                      const auto run = sphere::certify_kissing_lp(n, 10);
                      const bool certified = run.certificate && run.certificate->certified_bound >= floor;
                      return Outcome{format_double(raw), certified_or_empty(run), raw >= floor && certified};
                    }});
  }
  for (int n = 3; n <= 8; ++n) {
    const int floor = sphere::kissing_lower_bound(n);
    rows.push_back({"kissing-three-point-floor", n, 10, std::to_string(floor), [=] {
                      sphere::ThreePointOptions o;
                      o.margin = sphere::default_margin(sphere::Problem::KissingThreePoint, n, 10);
                      const double value = sphere::kissing_three_point(n, 10, o).value;
                      return Outcome{format_double(value), "", value >= floor};
                    }});
  }
  return rows;
}

std::vector<Row> avoid_rows() {
  std::vector<Row> rows;
  for (int n = 2; n <= 8; ++n)
    rows.push_back({"avoid-sphere", n, 10, "1/" + std::to_string(n), [=] {
                      const auto r = sphere::avoid_orthogonal(n, 10);
                      const auto cert = verify::verify_certificate(sphere::certify_avoid_orthogonal(r));
                      const Rational expected(1, n);
                      return Outcome{format_double(r.value), to_string(cert.certified_bound),
                                     *r.exact_value == expected && cert.certified_bound == expected};
                    }});
  // J_0 at the first zero of J_1.
  double a = 3.0, b = 4.5;
  for (int i = 0; i < 100; ++i) {
    const double m = 0.5 * (a + b);
    (std::cyl_bessel_j(1.0, a) < 0) == (std::cyl_bessel_j(1.0, m) < 0) ? a = m : b = m;
  }
  const double omega = std::cyl_bessel_j(0.0, 0.5 * (a + b));
  const double closed_form = -omega / (1 - omega);
  rows.push_back({"avoid-plane", 2, std::nullopt, format_double(closed_form), [=] {
                    const double v = sphere::avoid_distance_plane(2).value;
                    return Outcome{format_double(v), "", std::abs(v - closed_form) <= 1e-9 && v >= 0.2470};
                  }});
  return rows;
}

}  // namespace

int cmd_reproduce(const ReproduceConfig& c) {
  const std::vector<Row> rows = c.table == "kissing" ? kissing_rows() : avoid_rows();
  std::vector<Outcome> outcomes(rows.size());
  std::vector<double> seconds(rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < rows.size();) {
      const auto start = std::chrono::steady_clock::now();
      try {
        outcomes[i] = rows[i].run();
      } catch (const std::exception& e) {
        std::cerr << rows[i].problem << " n=" << rows[i].n << ": " << e.what() << '\n';
        outcomes[i] = {};
      }
      seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const unsigned jobs = c.jobs > 0 ? static_cast<unsigned>(c.jobs) : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < std::min<std::size_t>(jobs, rows.size()); ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::string csv = csv_row({"problem", "n", "d", "raw_bound", "certified_bound", "reference_value", "status", "wall_time"});
  bool all_pass = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const auto& o = outcomes[i];
    all_pass = all_pass && o.pass;
    csv += csv_row({r.problem, std::to_string(r.n), r.d ? std::to_string(*r.d) : "", o.raw, o.certified, r.reference,
                    o.pass ? "pass" : "fail", c.timing ? format_double(seconds[i], 3) : ""});
  }
  if (c.out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(c.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + c.out);
    out << csv;
  }
  return all_pass ? kOk : kReproduceFailed;
}

}  // namespace extremal::tools
