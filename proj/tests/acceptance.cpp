/*
   Copyright 2026 The ffmoments Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Acceptance run: one line per criterion, exit status 1 if any is red.
// Pass criterion numbers as arguments to run a subset.

#include <boost/multiprecision/cpp_int.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "ffmoments/harness.hpp"

using namespace ffm;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int prec = 3) {
  std::ostringstream os;
  os << std::setprecision(prec) << v;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string summarize(const SuiteReport& r) {
  std::string s = r.suite + " q=" + std::to_string(r.q) + ":";
  for (const auto& c : r.checks) {
    s += " [" + c.name + " ";
    s += c.tolerance > 0 ? "max " + fmt(c.max_deviation) : std::to_string(c.checks - c.failures) + "/" + std::to_string(c.checks);
    s += "]";
  }
  return s;
}

// Exact moments at q = 5, g = 1..4, k = 1..3, shared by criteria 10-12.
const std::map<int, std::vector<MomentResult>>& brute_moments() {
  static const auto table = [] {
    std::map<int, std::vector<MomentResult>> t;
    MomentOptions opt;
    opt.ignore_budget = true;
    for (int g = 1; g <= 4; ++g) t[g] = moments(5, g, {1, 2, 3}, Method::PointCount, opt);
    return t;
  }();
  return table;
}

Outcome ensemble_counts() {
  const auto t0 = std::chrono::steady_clock::now();
  int ok = 0, total = 0;
  for (std::uint32_t q : {5u, 13u}) {
    const FieldParams F(q);
    for (int n = 1; n <= 6; ++n) {
      const BigInt qn = boost::multiprecision::pow(BigInt(q), n);
      const BigInt expected = n == 1 ? BigInt(q) : qn - qn / q;
      const BigInt counted = enumerate_H(F, n).count();
      ++total;
      ok += counted == expected && ensemble_size(q, n) == expected;
    }
  }
  const double s = seconds_since(t0);
  return {ok == total && s < 60, std::to_string(ok) + "/" + std::to_string(total) + " exact, " + fmt(s) + " s (< 60)"};
}

Outcome suite_outcome(const SuiteReport& r, double time_limit = 0) {
  const bool timely = time_limit <= 0 || r.seconds < time_limit;
  std::string d = summarize(r);
  if (time_limit > 0) d += " " + fmt(r.seconds) + " s (< " + fmt(time_limit) + ")";
  return {r.passed() && timely, d};
}

Outcome artin_and_rh() {
  const auto box = desk_box(5);
  const auto a = verify_artin(5, box), r = verify_rh(5, box);
  return {a.passed() && r.passed(), summarize(a) + "; " + summarize(r)};
}

Outcome euler_battery() {
  const auto a = verify_euler(5), b = verify_euler(13);
  return {a.passed() && b.passed(), summarize(a) + "; " + summarize(b)};
}

Outcome p_matches_r() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (std::uint64_t q : {5u, 13u, 17u}) {
    const auto c = b_constants(q);
    const auto p = p_polynomials(c);
    const auto r = r_conjecture_poly(c);
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) worst = std::max(worst, detail::rel_diff(p.P.coeffs[i], r.coeffs[i]));
  }
  const double s = seconds_since(t0);
  return {worst < 1e-8 && s < 60, "max rel |P_i - R_i| " + fmt(worst) + " (< 1e-8), " + fmt(s) + " s"};
}

Outcome third_moment_constants_match() {
  double worst = 0;
  for (std::uint64_t q : {5u, 13u}) {
    const auto c = third_moment_constants(q);
    worst = std::max({worst, detail::rel_diff(c.B3, c.H_zeta4), detail::rel_diff(c.H_zeta4, c.A3),
                      detail::rel_diff(c.B3, c.A3)});
  }
  using boost::multiprecision::cpp_rational;
  const cpp_rational den = cpp_rational(2048) * 720;
  const bool exact = cpp_rational(729) / den - cpp_rational(217) / den == cpp_rational(1, 2880);
  return {worst < 1e-10 && exact,
          "B3 = H zeta(2)^4 = A3 max rel " + fmt(worst) + " (< 1e-10); 729/(2^11 6!) - 217/(2^11 6!) = 1/2880 " +
              (exact ? "exact" : "WRONG")};
}

Outcome second_moment_convergence() {
  const auto p = p_polynomials(b_constants(5));
  std::vector<double> dev;
  std::string d = "deviation";
  for (int g = 1; g <= 4; ++g) {
    const double m = brute_moments().at(g)[1].value_float;
    dev.push_back(scaled_deviation(m, static_cast<double>(second_moment_prediction(p, 5, g)), 5, g));
    d += " g" + std::to_string(g) + "=" + fmt(dev.back());
  }
  bool ok = true;
  for (int i = 1; i < 4; ++i) ok &= dev[i] < dev[i - 1];
  d += "; ratios";
  for (int i = 2; i < 4; ++i) {
    const double r = dev[i] / dev[i - 1];
    ok &= r < 0.6;
    d += " " + fmt(r);
  }
  return {ok, d + " (strictly decreasing, ratio < 0.6 for g >= 2)"};
}

Outcome first_moment_convergence() {
  const auto c = first_moment_constants(5);
  std::vector<double> dev;
  std::string d = "deviation";
  for (int g = 1; g <= 4; ++g) {
    const double m = brute_moments().at(g)[0].value_float;
    dev.push_back(scaled_deviation(m, static_cast<double>(first_moment_prediction(c, g)), 5, g));
    d += " g" + std::to_string(g) + "=" + fmt(dev.back());
  }
  bool ok = true;
  for (int i = 1; i < 4; ++i) ok &= dev[i] < dev[i - 1];
  return {ok, d + " (strictly decreasing)"};
}

Outcome third_moment_diagnostic() {
  const auto c = third_moment_constants(5);
  const ThirdMomentSecondary full(5);
  std::vector<double> gap;
  std::string d = "|ratio-1|";
  std::string diag = "; with the full secondary residue (diagnostic only) ratio";
  for (int g = 2; g <= 4; ++g) {
    const Real m = brute_moments().at(g)[2].value_exact.value();
    const Real ratio = m / third_moment_prediction(c, g);
    gap.push_back(std::abs(static_cast<double>(ratio) - 1));
    d += " g" + std::to_string(g) + "=" + fmt(gap.back());
    diag += " g" + std::to_string(g) + "=" + fmt(static_cast<double>(m / (main_term_k3(5, g) + full(g))), 6);
  }
  const bool decreasing = gap[1] < gap[0] && gap[2] < gap[1];
  const bool close = gap[2] < 0.5;
  d += std::string(" (decreasing: ") + (decreasing ? "yes" : "NO") + ", < 0.5 at g=4: " + (close ? "yes" : "NO") + ")";
  return {decreasing && close, d + diag};
}

Outcome determinism() {
  bool ok = true;
  std::vector<QuadValue> ref;
  for (unsigned parts : {1u, 4u, 16u}) {
    MomentOptions opt;
    opt.partitions = parts;
    opt.threads = parts == 1 ? 1 : 4;
    const auto rs = moments(5, 3, {1, 2, 3}, Method::PointCount, opt);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      ok &= rs[i].partition_count == parts;
      if (parts == 1)
        ref.push_back(rs[i].value_exact);
      else
        ok &= rs[i].value_exact == ref[i];
    }
  }
  const auto root = std::filesystem::temp_directory_path() / ("ffm-accept-" + std::to_string(::getpid()));
  std::filesystem::remove_all(root);
  const ResultCache cache(root);
  int round_trips = 0;
  for (int g = 1; g <= 4; ++g)
    for (const auto& r : brute_moments().at(g)) {
      const auto rec = make_record(r, 0.0);
      cache.store(rec);
      const auto back = cache.load(rec.key());
      const bool same = back && back->exact == rec.exact && to_json(*back).dump() == to_json(rec).dump();
      ok &= same;
      round_trips += same;
    }
  std::filesystem::remove_all(root);
  return {ok, "partitions 1/4/16 bit-identical for k=1..3 at q=5 g=3; cache round-trips " + std::to_string(round_trips) +
                  "/12 exact"};
}

Outcome functional_equations() {
  const auto a = verify_funceq(5), b = verify_genid(5, desk_box(5));
  return {a.passed() && b.passed(), summarize(a) + "; " + summarize(b)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"ensemble counts", ensemble_counts},
      {"Gauss sums: closed form vs brute force", [] { return suite_outcome(verify_gauss(5, desk_box(5)), 300); }},
      {"Poisson summation", [] { return suite_outcome(verify_poisson(5, desk_box(5))); }},
      {"character sum over H (first point)", [] { return suite_outcome(verify_firstpoint(5, desk_box(5))); }},
      {"L-polynomial oracles, symmetry, RH", artin_and_rh},
      {"approximate functional equation, exact", [] { return suite_outcome(verify_fe(5, desk_box(5))); }},
      {"Euler product identities", euler_battery},
      {"second-moment polynomial P = R", p_matches_r},
      {"third-moment constants", third_moment_constants_match},
      {"second-moment convergence", second_moment_convergence},
      {"first-moment convergence", first_moment_convergence},
      {"third-moment ratio (soft)", third_moment_diagnostic},
      {"determinism and cache round-trip", determinism},
      {"functional equations and generating identities", functional_equations},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int passed = 0, run = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    ++run;
    passed += o.pass;
    std::printf("[%s] C%02d %s | %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", passed, run);
  return passed == run ? 0 : 1;
}
