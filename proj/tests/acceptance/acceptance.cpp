#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "extremal/finite/graph.hpp"
#include "extremal/finite/lasserre.hpp"
#include "extremal/finite/theta.hpp"
#include "extremal/orthopoly/gegenbauer.hpp"
#include "extremal/orthopoly/three_point.hpp"
#include "extremal/sphere/bounds.hpp"
#include "extremal/sphere/certify.hpp"
#include "extremal/verify/certify.hpp"
#include "extremal/verify/errors.hpp"
#include "../support/bqc_oracle.hpp"
#include "../support/corpus.hpp"
#include "../support/mutation.hpp"

using namespace extremal;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

// Writes the certificate to disk, reads it back and re-verifies it.
bool reverify_from_file(const verify::Certificate& c, const std::filesystem::path& path) {
  {
    std::ofstream out(path, std::ios::binary);
    out << verify::to_json(c);
  }
  std::ifstream in(path, std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();
  try {
    return verify::verify_certificate(verify::certificate_from_json(text.str())) == c;
  } catch (const verify::CertificationError&) {
    return false;
  }
}

void kissing_lp_gate(Verdict& v, int n, int d, int grid, long expected, double tolerance, double seconds_limit) {
  const Stopwatch clock;
  const double raw = sphere::kissing_lp(n, d, grid).value;
  const auto run = sphere::certify_kissing_lp(n, d);
  const double seconds = clock.seconds();
  const std::string cert = run.certificate ? verify::certified_integer(*run.certificate) : "none";
  v.detail << "n=" << n << " d=" << d << " raw=" << fixed(raw) << " certified=" << cert << " time=" << fixed(seconds, 2) << "s";
  v.require(cert == std::to_string(expected), "certified integer " + std::to_string(expected));
  v.require(std::abs(raw - expected) <= tolerance, "|raw - " + std::to_string(expected) + "| <= tolerance");
  v.require(seconds <= seconds_limit, "runtime");
  if (run.certificate) v.require(verify::verify_certificate(*run.certificate) == *run.certificate, "re-verification");
}

void three_point_gate(Verdict& v, int n, int expected) {
  const Stopwatch clock;
  bool certified = false;
  for (int d : {6, 8, 10, 12}) {
    const auto run = sphere::certify_kissing_three_point(n, d);
    const std::string cert = run.certificate ? verify::certified_integer(*run.certificate) : "none";
    const double raw = sphere::kissing_three_point(n, d).value;
    v.detail << "d=" << d << " raw=" << fixed(raw) << " tightened=" << fixed(run.result.value) << " certified=" << cert << "; ";
    if (cert == std::to_string(expected) && raw < expected + 1) {
      certified = verify::verify_certificate(*run.certificate) == *run.certificate;
      break;
    }
  }
  v.require(certified, "certified integer " + std::to_string(expected) + " for some d <= 12");

  // d = 4 is reported only.
  v.detail << "d=4 three-point=" << fixed(sphere::kissing_three_point(n, 4).value) << " lp=" << fixed(sphere::kissing_lp(n, 4, 200).value)
           << "; ";
  double previous = 1e300;
  for (int d : {6, 8, 10}) {
    const double value = sphere::kissing_three_point(n, d).value;
    const double lp = sphere::kissing_lp(n, d, 200).value;
    v.require(value >= sphere::kissing_lower_bound(n), "three-point value >= lower bound at d=" + std::to_string(d));
    v.require(value <= lp + 1e-4, "three-point <= LP + 1e-4 at d=" + std::to_string(d));
    v.require(value <= previous + 1e-4, "monotone in d at d=" + std::to_string(d));
    previous = value;
  }
  const double seconds = clock.seconds();
  v.detail << "time=" << fixed(seconds, 1) << "s";
  v.require(seconds <= 1800, "runtime");
}

void criterion_1(Verdict& v) { kissing_lp_gate(v, 8, 6, 200, 240, 1e-4, 10); }
void criterion_2(Verdict& v) { kissing_lp_gate(v, 24, 10, 400, 196560, 1e-2, 60); }
void criterion_3(Verdict& v) { three_point_gate(v, 3, 12); }
void criterion_4(Verdict& v) { three_point_gate(v, 4, 24); }

void criterion_5(Verdict& v) {
  for (int n = 3; n <= 8; ++n) {
    const int floor = sphere::kissing_lower_bound(n);
    const double lp = sphere::kissing_lp(n, 10, 200).value;
    sphere::ThreePointOptions o;
    o.margin = sphere::default_margin(sphere::Problem::KissingThreePoint, n, 10);
    const double tp = sphere::kissing_three_point(n, 10, o).value;
    v.detail << "n=" << n << " lp=" << fixed(lp, 3) << " 3pt=" << fixed(tp, 3) << " floor=" << floor << "; ";
    v.require(lp >= floor, "LP >= floor at n=" + std::to_string(n));
    v.require(tp >= floor, "three-point >= floor at n=" + std::to_string(n));
  }
}

void criterion_6(Verdict& v) {
  double slowest = 0.0;
  int instances = 0;
  for (int n = 2; n <= 8; ++n)
    for (int d = 2; d <= 12; ++d) {
      const Stopwatch clock;
      const auto r = sphere::avoid_orthogonal(n, d);
      slowest = std::max(slowest, clock.seconds());
      ++instances;
      v.require(r.exact_value && *r.exact_value == Rational(1, n), "1/n at n=" + std::to_string(n) + " d=" + std::to_string(d));
    }
  v.require(*sphere::avoid_orthogonal(2, 4).exact_value == Rational(1, 2), "n=2 equals 0.5");
  v.detail << instances << " instances exactly 1/n, slowest " << fixed(slowest, 4) << "s";
  v.require(slowest <= 1.0, "runtime per instance");
}

void criterion_7(Verdict& v) {
  // J_0 at the first zero of J_1, by bisection on the library Bessel function.
  double a = 3.0, b = 4.5;
  for (int i = 0; i < 100; ++i) {
    const double m = 0.5 * (a + b);
    ((std::cyl_bessel_j(1.0, a) < 0) == (std::cyl_bessel_j(1.0, m) < 0) ? a : b) = m;
  }
  const double omega = std::cyl_bessel_j(0.0, 0.5 * (a + b));
  const double closed_form = -omega / (1 - omega);
  const double value = sphere::avoid_distance_plane(2).value;
  v.detail << "value=" << fixed(value, 8) << " closed form=" << fixed(closed_form, 8);
  v.require(std::abs(value - closed_form) <= 1e-9, "closed form");
  v.require(value >= 0.287119 && value <= 0.287120, "value in [0.287119, 0.287120]");
  v.require(0.22936 <= 0.2470 && 0.2470 <= value, "0.22936 <= 0.2470 <= value");
}

void criterion_8(Verdict& v) {
  const Stopwatch clock;
  int graphs = 0, exact_checked = 0;
  double worst_chain = 0.0, worst_step_one = 0.0, worst_monotone = -1e300, worst_exact = 0.0;
  for (const auto& [name, g] : support::finite_corpus()) {
    ++graphs;
    const int alpha = finite::alpha_bruteforce(g);
    const double theta = finite::theta_finite(g, finite::ThetaVariant::Plain);
    const double prime = finite::theta_finite(g, finite::ThetaVariant::Prime);
    worst_chain = std::max({worst_chain, prime - theta, alpha - prime});
    v.require(theta >= prime - 1e-7 && prime >= alpha - 1e-7, "theta >= theta' >= alpha on " + name);
    double previous = finite::lasserre_bound(g, 1);
    worst_step_one = std::max(worst_step_one, std::abs(previous - prime));
    v.require(std::abs(previous - prime) <= 1e-6, "las_1 = theta' on " + name);
    for (int t = 2; t <= alpha; ++t) {
      if (finite::enumerate_independent_sets(g, t).size() > 2000) break;
      const double value = finite::lasserre_bound(g, t);
      worst_monotone = std::max(worst_monotone, value - previous);
      v.require(value <= previous + 1e-7, "las_{t+1} <= las_t on " + name);
      previous = value;
      if (t == alpha) {
        ++exact_checked;
        worst_exact = std::max(worst_exact, std::abs(value - alpha));
        v.require(std::abs(value - alpha) <= 1e-5, "las_alpha = alpha on " + name);
      }
    }
    if (alpha == 1) {
      ++exact_checked;
      worst_exact = std::max(worst_exact, std::abs(previous - 1));
      v.require(std::abs(previous - 1) <= 1e-5, "las_1 = 1 on " + name);
    }
  }
  const double seconds = clock.seconds();
  v.detail << graphs << " graphs, " << exact_checked << " at step alpha; worst chain excess " << worst_chain << ", |las_1 - theta'| "
           << worst_step_one << ", step increase " << worst_monotone << ", |las_alpha - alpha| " << worst_exact << ", time "
           << fixed(seconds, 1) << "s";
  v.require(seconds <= 1200, "runtime");
}

void criterion_9(Verdict& v) {
  const auto dir = std::filesystem::temp_directory_path() / "extremal-acceptance";
  std::filesystem::create_directories(dir);
  int emitted = 0, reverified = 0;
  std::size_t mutations = 0, rejected = 0;
  auto check = [&](const verify::Certificate& c, const std::string& name) {
    ++emitted;
    if (reverify_from_file(c, dir / (name + ".json")))
      ++reverified;
    else
      v.require(false, "re-verification of " + name);
    for (const auto& m : support::digit_mutations(verify::to_json(c))) {
      ++mutations;
      if (support::mutation_rejected(m))
        ++rejected;
      else
        v.require(false, "mutation accepted in " + name);
    }
  };
  for (int n = 3; n <= 8; ++n) {
    const auto run = sphere::certify_kissing_lp(n, 10);
    if (!run.certificate) {
      v.require(false, "kissing LP certificate for n=" + std::to_string(n));
      continue;
    }
    check(*run.certificate, "kissing-lp-n" + std::to_string(n));
  }
  for (const auto& [name, g] : support::finite_corpus()) check(finite::to_certificate(g, finite::lasserre_dual_certificate(g, 1)), name);
  v.detail << reverified << "/" << emitted << " certificates re-verified from file; " << rejected << "/" << mutations
           << " single-digit mutations rejected";
}

void criterion_10(Verdict& v) {
  std::mt19937_64 rng(20261015);
  int agree = 0, inside = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = support::random_bqc_instance(rng, trial % 2);
    const bool exact = support::bqc_member_exact(m);
    inside += exact;
    const auto r = finite::bqc_separate(support::to_double(m));
    bool ok = std::holds_alternative<finite::BqcInside>(r) == exact;
    if (const auto* cut = std::get_if<finite::BqcViolated>(&r))
      ok = ok && finite::bqc_min_generator_value(cut->h) >= 0 && (cut->h.array() * support::to_double(m).array()).sum() < 0;
    agree += ok;
  }
  v.require(agree == 200, "bqc_separate agrees with extreme-ray enumeration");
  int graphs = 0, alpha_agree = 0;
  for (const auto& [name, g] : support::alpha_corpus()) {
    if (g.vertex_count() > 16) continue;
    ++graphs;
    alpha_agree += finite::alpha_bruteforce(g) == support::alpha_by_subsets(g);
  }
  v.require(alpha_agree == graphs, "alpha_bruteforce agrees with subset enumeration");
  v.detail << "bqc " << agree << "/200 (" << inside << " members); alpha " << alpha_agree << "/" << graphs << " graphs";
}

Rational relative_moment(int n, int j) {
  if (j % 2) return 0;
  Rational m = 1;
  for (int i = 0; i < j; i += 2) m *= Rational(i + 1, n + i);
  return m;
}

void criterion_11(Verdict& v) {
  const Stopwatch clock;
  int pairs = 0;
  for (int n = 2; n <= 10; ++n) {
    const auto p = orthopoly::gegenbauer_family(n, 14);
    for (int k = 0; k <= 14; ++k) {
      v.require(p[k](1) == 1, "normalization");
      v.require(p[k].reflected() == (k % 2 ? Rational(-1) * p[k] : p[k]), "parity");
      for (int l = 0; l < k; ++l) {
        const orthopoly::Polynomial prod = p[k] * p[l];
        Rational inner = 0;
        for (int j = 0; j <= prod.degree(); ++j) inner += prod.coefficient(j) * relative_moment(n, j);
        v.require(inner == 0, "orthogonality");
        ++pairs;
      }
    }
  }
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  double min_eigen = 1e300;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 6, m = 4 + trial % 9;
    Eigen::MatrixXd pts(m, n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) pts(i, j) = gauss(rng);
      pts.row(i).normalize();
    }
    const Eigen::MatrixXd inner = pts * pts.transpose();
    for (int k = 0; k <= 8; ++k) {
      Eigen::MatrixXd gram(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) gram(i, j) = orthopoly::gegenbauer_values(n, k, std::clamp(inner(i, j), -1.0, 1.0))[k];
      min_eigen = std::min(min_eigen, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram).eigenvalues().minCoeff());
    }
  }
  v.require(min_eigen >= -1e-9, "Schoenberg Gram matrices PSD");
  const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  int entries = 0;
  for (int n : {3, 4, 5})
    for (int k = 0; k <= 4; ++k) {
      const auto s = orthopoly::s_matrix(n, k, 4);
      for (int i = 0; i < s.size(); ++i)
        for (int j = 0; j < s.size(); ++j) {
          ++entries;
          for (const auto& perm : perms) v.require(s.exact(i, j).permuted(perm) == s.exact(i, j), "S_k permutation invariance");
        }
    }
  const double seconds = clock.seconds();
  v.detail << pairs << " orthogonal pairs, min Gram eigenvalue " << min_eigen << ", " << entries << " S_k entries invariant, time "
           << fixed(seconds, 1) << "s";
  v.require(seconds <= 120, "runtime");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
      {"kissing LP dim 8", criterion_1},
      {"kissing LP dim 24", criterion_2},
      {"three-point dim 3", criterion_3},
      {"three-point dim 4", criterion_4},
      {"validity floor d=10", criterion_5},
      {"orthogonality-avoiding sphere 1/n", criterion_6},
      {"one-avoiding plane", criterion_7},
      {"finite hierarchy", criterion_8},
      {"certificate soundness", criterion_9},
      {"oracle equivalence", criterion_10},
      {"orthopoly properties", criterion_11},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Verdict v;
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " [exception: " << e.what() << "]";
    }
    failures += !v.pass;
    std::printf("%s %2d %s: %s\n", v.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), v.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
