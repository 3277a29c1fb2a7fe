// Acceptance suite: one PASS/FAIL line per criterion.
//
// usage: acceptance [--cli PATH] [--workdir DIR] [--expected-failures 1,4,...]
// Exit status is 0 when the set of failing criteria equals the expected set.

#include "cmxprony/catalog.hpp"
#include "cmxprony/cmx_engine.hpp"
#include "cmxprony/exact_refs.hpp"
#include "cmxprony/prony.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

using namespace cmx;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string fmt(double v, int digits = 6) { return format_number(v, digits); }

const MomentSequence& quadratic_moments() {
  static const MomentSequence mu = moments(harmonic_oscillator(), quadratic_trial(), 13, "ho", "quadratic");
  return mu;
}

// 1. connected moments against the rounded published list
void connected_moment_list(Outcome& out) {
  const auto start = Clock::now();
  const auto I = connected_moments(moments(harmonic_oscillator(), quadratic_trial(), 7));
  const double elapsed = seconds_since(start);
  const double published[] = {5.13, 0.665, 2.12, 11.2, 40.0, 216, 979};
  for (int k = 1; k <= 7; ++k) {
    const double value = to_double(I.at(k));
    const double err = rel(value, published[k - 1]);
    out.detail << " I_" << k << "=" << fmt(value) << (err <= 0.01 ? "" : " (" + fmt(100 * err, 3) + "% off)");
    out.require(err <= 0.01, "I_" + std::to_string(k) + " within 1% of " + fmt(published[k - 1]));
  }
  out.detail << " time=" << fmt(elapsed, 3) << "s";
  out.require(elapsed < 1.0, "runtime < 1 s");
}

// 2. CMX parameters and negative-root counts
void cmx_parameters(Outcome& out) {
  const auto start = Clock::now();
  const auto I = connected_moments(quadratic_moments());
  const auto n3 = cmx_from_connected(I, 3);
  const double A[] = {-0.0170, 0.147, 0.000617};
  const double b[] = {-3.87, 4.04, 9.29};
  double worst = 0;
  for (int n = 0; n < 3; ++n) {
    worst = std::max({worst, rel(n3.amplitudes[n].real(), A[n]), rel(n3.exponents[n].real(), b[n])});
    out.require(std::abs(n3.amplitudes[n].imag()) < 1e-12 && std::abs(n3.exponents[n].imag()) < 1e-12, "real N=3 roots");
  }
  out.detail << " N=3 worst rel dev=" << fmt(worst, 3);
  out.require(worst <= 0.02, "N=3 A, b within 2%");
  const std::map<int, std::size_t> negatives{{2, 1}, {3, 1}, {4, 2}, {5, 2}};
  for (const auto& [N, expected] : negatives) {
    const auto c = cmx_from_connected(I, N);
    const auto count = c.diagnostics.negative_real_roots.size();
    out.detail << " N=" << N << ":" << count << " neg," << to_string(c.diagnostics.limit_behavior);
    out.require(count == expected, "negative root count at N=" + std::to_string(N));
    if (N >= 4) out.require(c.diagnostics.limit_behavior == LimitBehavior::DivergesPlus, "diverges_plus at N=" + std::to_string(N));
  }
  const double elapsed = seconds_since(start);
  out.detail << " time=" << fmt(elapsed, 3) << "s";
  out.require(elapsed < 1.0, "runtime < 1 s");
}

// 3. ground-energy column
void ground_energy_column(Outcome& out) {
  const auto start = Clock::now();
  const auto I = connected_moments(quadratic_moments());
  const double expected[] = {4.932, 5.015, 5.002};
  for (int N = 1; N <= 3; ++N) {
    const double a0 = cmx_from_connected(I, N).ground_energy;
    out.detail << " A0(" << N << ")=" << fmt(a0, 7);
    out.require(std::abs(a0 - expected[N - 1]) <= 0.002, "A0 at N=" + std::to_string(N));
  }
  const double elapsed = seconds_since(start);
  out.detail << " time=" << fmt(elapsed, 3) << "s";
  out.require(elapsed < 1.0, "runtime < 1 s");
}

// 4. closed form vs moment engine
void exact_cross_check(Outcome& out) {
  const double closed = exact_E_ho(0.0);
  const double i1 = to_double(connected_moments(quadratic_moments()).at(1));
  const double fraction = 8376800.0 / 1632000.0;
  out.detail << " E(0)=" << fmt(closed, 12) << " I_1=" << fmt(i1, 12) << " E(10)-1=" << fmt(exact_E_ho(10.0) - 1, 3);
  out.require(rel(closed, fraction) <= 1e-12, "E(0) equals 8376800/1632000");
  out.require(rel(closed, i1) <= 1e-9, "E(0) vs I_1");
  out.require(std::abs(exact_E_ho(10.0) - 1.0) <= 1e-9, "E(10) -> 1");
}

// 5. correlation convergence for the oscillator Gaussian trial
void correlation_convergence(Outcome& out) {
  const auto mu = moments(harmonic_oscillator(), gaussian_trial(), 9);
  double previous = INFINITY;
  for (int N = 2; N <= 5; ++N) {
    const auto z = zn_from_moments(mu, N);
    double worst = 0;
    for (int i = 0; i <= 2000; ++i) {
      const double tau = std::numbers::pi / 2 * i / 2000;
      worst = std::max(worst, std::abs(correlation_squared(z, tau) - exact_C2_ho(tau)));
    }
    out.detail << " N=" << N << ":" << fmt(worst, 4);
    out.require(worst < previous, "monotone decrease at N=" + std::to_string(N));
    out.require(std::abs(correlation_squared(z, 0.0) - 1.0) <= 1e-10, "C(0)=1 at N=" + std::to_string(N));
    if (N == 5) out.require(worst < 0.02, "max deviation < 0.02 at N=5");
    previous = worst;
  }
}

// 6. overlap estimates
void overlap_estimates(Outcome& out) {
  const double ho = zn_from_moments(moments(harmonic_oscillator(), gaussian_trial(), 9), 5).amplitudes[0];
  const double quartic = zn_from_moments(moments(quartic_oscillator(), gaussian_trial(), 9), 5).amplitudes[0];
  const double target = 2 * std::sqrt(2.0) / 3;
  out.detail << " HO A_0=" << fmt(ho, 9) << " (2sqrt2/3=" << fmt(target, 9) << ") quartic A_0=" << fmt(quartic, 7);
  out.require(std::abs(ho - target) <= 1e-4, "HO overlap within 1e-4");
  out.require(std::abs(quartic - 0.981) <= 0.002, "quartic overlap 0.981 +- 0.002");
}

// 7. two Prony routes on randomized instances
void prony_equivalence(Outcome& out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> order_draw(1, 5);
  std::uniform_int_distribution<int> b_draw(100, 1000);    // b = k/200 in [0.5, 5]
  std::uniform_int_distribution<int> a_draw(-400, 400);    // A = k/200 in [−2, 2]
  std::uniform_int_distribution<int> s_draw(-1, 0);
  const SolveOptions options{.precision = Precision::extended(50)};
  const auto start = Clock::now();
  double worst_agreement = 0, worst_residual = 0, worst_recovery = 0;
  int failures = 0;
  for (int instance = 0; instance < 1000; ++instance) {
    const int N = order_draw(rng);
    const int s = s_draw(rng);
    std::set<int> picked;
    while (static_cast<int>(picked.size()) < N) picked.insert(b_draw(rng));
    std::vector<Rational> b, A;
    for (int k : picked) b.emplace_back(k, 200);
    for (int n = 0; n < N; ++n) {
      int a = 0;
      while (a == 0) a = a_draw(rng);
      A.emplace_back(a, 200);
    }
    std::vector<Rational> F;
    for (int k = 1; k <= 2 * N; ++k) {
      Rational sum = 0;
      for (int n = 0; n < N; ++n) {
        Rational p = 1;
        for (int e = 0; e < k + s; ++e) p *= b[static_cast<std::size_t>(n)];
        sum += A[static_cast<std::size_t>(n)] * p;
      }
      F.push_back(sum);
    }
    try {
      const auto problem = PronyProblem::from_rationals(F, s);
      const auto linear = solve_linear_prony(problem, options);
      const auto secular = solve_secular(problem, options);
      worst_residual = std::max({worst_residual, linear.residual, secular.residual});
      for (int n = 0; n < N; ++n) {
        worst_agreement = std::max(worst_agreement, std::abs(linear.exponents[n] - secular.exponents[n]) / std::abs(secular.exponents[n]));
        worst_recovery = std::max({worst_recovery, rel(secular.exponents[n].real(), to_double(b[static_cast<std::size_t>(n)])),
                                   rel(secular.amplitudes[n].real(), to_double(A[static_cast<std::size_t>(n)]))});
      }
    } catch (const Error& e) {
      if (++failures == 1) out.detail << " first error: " << e.what();
    }
  }
  const double elapsed = seconds_since(start);
  out.detail << " agreement=" << fmt(worst_agreement, 3) << " residual=" << fmt(worst_residual, 3)
             << " recovery=" << fmt(worst_recovery, 3) << " errors=" << failures << " time=" << fmt(elapsed, 3) << "s";
  out.require(failures == 0, "all instances solved");
  out.require(worst_agreement <= 1e-8, "routes agree within 1e-8");
  out.require(worst_residual <= 1e-8, "residuals <= 1e-8");
  out.require(worst_recovery <= 1e-8, "inputs recovered within 1e-8");
  out.require(elapsed < 10.0, "runtime < 10 s");
}

// 8. Z_N fit vs Rayleigh-Ritz in the Krylov space
void ritz_identity(Outcome& out) {
  double worst_w = 0, worst_a = 0;
  int compared = 0, refused = 0;
  for (const auto& entry : catalog()) {
    const auto mu = moments(entry.hamiltonian, entry.trial, 9, entry.name);
    for (int N = 1; N <= 5; ++N) {
      std::optional<ZnApproximant> z;
      std::optional<RitzResult> ritz;
      std::string z_error, ritz_error;
      try { z = zn_from_moments(mu, N); } catch (const Error& e) { z_error = e.what(); }
      try { ritz = rrk_oracle(mu, N); } catch (const Error& e) { ritz_error = e.what(); }
      if (!z && !ritz) {
        ++refused;  // Krylov space smaller than N: both routes are singular
        continue;
      }
      if (!z || !ritz) {
        out.require(false, entry.name + " N=" + std::to_string(N) + " only one route succeeded: " + z_error + ritz_error);
        continue;
      }
      ++compared;
      for (int j = 0; j < N; ++j) {
        worst_w = std::max(worst_w, std::abs(z->exponents[j] - ritz->values[j]) / std::max(1.0, std::abs(ritz->values[j])));
        worst_a = std::max(worst_a, std::abs(z->amplitudes[j] - ritz->overlaps[j]));
      }
    }
  }
  out.detail << " compared=" << compared << " both-singular=" << refused << " max dW=" << fmt(worst_w, 3)
             << " max dA=" << fmt(worst_a, 3);
  out.require(worst_w <= 1e-8, "W within 1e-8");
  out.require(worst_a <= 1e-8, "A within 1e-8");
}

// 9. Maclaurin coefficients of every built ansatz reproduce their inputs
void series_matching(Outcome& out) {
  double worst = 0;
  int built = 0;
  auto check = [&](std::complex<double> got, double expected) {
    worst = std::max(worst, std::abs(got - expected) / std::max(std::abs(expected), 1e-300));
  };
  for (const auto& entry : catalog()) {
    const auto mu = moments(entry.hamiltonian, entry.trial, 11, entry.name);
    const auto I = connected_moments(mu);
    for (int N = 1; N <= 5; ++N) {
      try {
        const auto z = zn_from_moments(mu, N);
        const auto c = maclaurin_coefficients(z, 2 * N);
        double factorial = 1;
        for (int j = 0; j < 2 * N; ++j) {
          if (j > 0) factorial *= j;
          check(c[static_cast<std::size_t>(j)], (j % 2 ? -1 : 1) * to_double(mu.mu[static_cast<std::size_t>(j)]) / factorial);
        }
        ++built;
      } catch (const DegenerateProblem&) {
      }
      try {
        const auto e = cmx_from_connected(I, N);
        const auto c = maclaurin_coefficients(e, 2 * N + 1);
        double factorial = 1;
        for (int j = 0; j <= 2 * N; ++j) {
          if (j > 0) factorial *= j;
          check(c[static_cast<std::size_t>(j)], (j % 2 ? -1 : 1) * to_double(I.at(j + 1)) / factorial);
        }
        ++built;
      } catch (const DegenerateProblem&) {
      }
    }
  }
  out.detail << " ansatze=" << built << " worst rel=" << fmt(worst, 3);
  out.require(built > 0, "at least one ansatz");
  out.require(worst <= 1e-9, "coefficients within 1e-9");
}

// 10. positive connected moments do not imply positive roots
void positivity_counterexample(Outcome& out) {
  const auto I = connected_moments(quadratic_moments());
  bool positive = true;
  for (int k = 1; k <= 7; ++k) positive = positive && I.at(k) > 0;
  const auto n3 = cmx_from_connected(I, 3);
  out.detail << " I_1..I_7>0:" << (positive ? "yes" : "no") << " N=3 negative roots=" << n3.diagnostics.negative_real_roots.size();
  out.require(positive, "I_1..I_7 > 0");
  out.require(!n3.diagnostics.negative_real_roots.empty(), "negative root at N=3");

  const auto gauss = connected_moments(moments(harmonic_oscillator(), gaussian_trial(), 5));
  for (int N = 1; N <= 2; ++N) {
    const auto d = cmx_from_connected(gauss, N).diagnostics;
    out.detail << " gauss N=" << N << ":" << (d.all_real && d.all_positive ? "real positive" : "not real positive");
    out.require(d.all_real && d.all_positive, "gauss roots real positive at N=" + std::to_string(N));
  }
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::runtime_error("missing column " + name);
    return static_cast<std::size_t>(it - header.begin());
  }
};

Csv read_csv(const std::filesystem::path& path) {
  Csv csv;
  std::ifstream in(path);
  std::string line;
  auto split = [](const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string cell; std::getline(ss, cell, ',');) parts.push_back(cell);
    return parts;
  };
  if (std::getline(in, line)) csv.header = split(line);
  while (std::getline(in, line)) {
    std::vector<double> row;
    for (const auto& cell : split(line)) row.push_back(std::strtod(cell.c_str(), nullptr));
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

// 11. figure data from single CLI invocations
void figure_emission(Outcome& out, const std::string& cli, const std::filesystem::path& workdir) {
  if (cli.empty()) {
    out.require(false, "CLI path not given");
    return;
  }
  std::filesystem::create_directories(workdir);
  struct Figure {
    std::string name, command, model, column_prefix;
    bool property_check;
  };
  const std::vector<Figure> figures{{"fig1", "zfit", "ho-quadratic", "UN_", false},
                                    {"fig2", "cmx", "ho-quadratic", "EN_", false},
                                    {"fig3", "correlation", "ho-gauss", "C2_", false},
                                    {"fig4", "correlation", "quartic-gauss", "C2_", true},
                                    {"fig5", "correlation", "coupled-2d", "C2_", true}};
  for (const auto& fig : figures) {
    const auto path = workdir / (fig.name + ".csv");
    const std::string command = "\"" + cli + "\" " + fig.command + " --model " + fig.model + " --N 2..5 --out \"" +
                                path.string() + "\" 2>/dev/null";
    const auto start = Clock::now();
    const int status = std::system(command.c_str());
    const double elapsed = seconds_since(start);
    out.detail << " " << fig.name << ":" << fmt(elapsed, 3) << "s";
    out.require(status == 0, fig.name + " exit status");
    out.require(elapsed < 60.0, fig.name + " runtime < 60 s");
    const Csv csv = read_csv(path);
    out.require(csv.rows.size() > 1, fig.name + " has rows");
    if (!fig.property_check || csv.rows.empty()) continue;
    double previous = INFINITY;
    const std::size_t oracle = csv.column("oracle");
    for (int N = 2; N <= 5; ++N) {
      const std::size_t col = csv.column(fig.column_prefix + std::to_string(N));
      double worst = 0;
      for (const auto& row : csv.rows) worst = std::max(worst, std::abs(row[col] - row[oracle]));
      out.require(std::abs(csv.rows.front()[col] - 1.0) <= 1e-10, fig.name + " tau=0 normalization");
      out.require(worst < previous, fig.name + " deviation decreases at N=" + std::to_string(N));
      out.detail << (N == 2 ? " dev=" : "/") << fmt(worst, 3);
      previous = worst;
    }
  }
}

std::set<int> parse_list(const std::string& text) {
  std::set<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  std::filesystem::path workdir = std::filesystem::temp_directory_path() / "cmxprony_acceptance";
  std::set<int> expected_failures;
  std::uint64_t seed = 20240601;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--cli") cli = argv[i + 1];
    else if (flag == "--workdir") workdir = argv[i + 1];
    else if (flag == "--expected-failures") expected_failures = parse_list(argv[i + 1]);
    else if (flag == "--seed") seed = std::stoull(argv[i + 1]);
  }

  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"connected moments I_1..I_7 within 1%", connected_moment_list},
      {"CMX N=3 parameters and negative-root counts", cmx_parameters},
      {"ground-energy column A0(N=1,2,3)", ground_energy_column},
      {"closed-form E(t) vs moment engine", exact_cross_check},
      {"correlation convergence N=2..5", correlation_convergence},
      {"overlap estimates from Z_5", overlap_estimates},
      {"two-route Prony equivalence (1000 instances)", [&](Outcome& o) { prony_equivalence(o, seed); }},
      {"Z_N fit equals Krylov Rayleigh-Ritz", ritz_identity},
      {"series matching of every ansatz", series_matching},
      {"positive moments with a negative root", positivity_counterexample},
      {"figure data emission", [&](Outcome& o) { figure_emission(o, cli, workdir); }}};

  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    Outcome outcome;
    try {
      criteria[i].second(outcome);
    } catch (const std::exception& e) {
      outcome.require(false, std::string("exception: ") + e.what());
    }
    if (!outcome.pass) failed.insert(id);
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << criteria[i].first << " |"
              << outcome.detail.str() << (!outcome.pass && expected_failures.count(id) ? " (expected failure)" : "")
              << std::endl;
  }
  std::cout << criteria.size() - failed.size() << "/" << criteria.size() << " criteria passed" << std::endl;
  for (int id : expected_failures)
    if (!failed.count(id)) std::cout << "criterion " << id << " was expected to fail but passed" << std::endl;
  return failed == expected_failures ? 0 : 1;
}
