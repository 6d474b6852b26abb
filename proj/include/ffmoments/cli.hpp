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

#ifndef FFMOMENTS_CLI_HPP
#define FFMOMENTS_CLI_HPP

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "harness.hpp"

namespace ffm::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Accepts primes q = 1 (mod 4) in the supported range.
inline std::string validate_q(const std::string& text) {
  std::uint64_t q = 0;
  try {
    std::size_t pos = 0;
    q = std::stoull(text, &pos);
    if (pos != text.size()) return "q must be an integer, got '" + text + "'";
  } catch (const std::exception&) {
    return "q must be an integer, got '" + text + "'";
  }
  if (q % 4 != 1) return "q must be ≡ 1 (mod 4)";
  if (!is_prime(q)) return "q must be prime";
  if (q >= kMaxModulus) return "q must be below " + std::to_string(kMaxModulus);
  return {};
}

struct Flags {
  std::uint32_t q = 5;
  std::vector<std::uint32_t> qs{5};
  int g = 0;
  std::vector<int> gs;
  int k = 0;
  std::vector<int> ks{1, 2, 3};
  std::string method = "pointcount";
  std::string suite;
  unsigned threads = 0;
  int max_degree = 0;
  double budget = MomentOptions{}.budget;
  std::string cache_dir;
  std::string out;
  bool compute = false;

  MomentOptions moment_options() const {
    MomentOptions m;
    m.threads = threads;
    m.budget = budget;
    return m;
  }
  EulerOptions euler_options() const {
    EulerOptions e;
    e.max_degree = max_degree;
    return e;
  }
};

namespace detail {

inline std::string cert_text(const Certificate& c) {
  std::ostringstream os;
  os << (c.passed ? "ok  " : "FAIL") << " degree " << c.degree << " change " << std::setprecision(2) << c.change
     << " tail " << c.tail;
  return os.str();
}

inline void print_poly(std::ostream& os, const PredictionPolynomial& p) {
  os << "  " << std::left << std::setw(3) << p.tag << std::right;
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) os << "  x^" << i << ": " << to_string(p.coeffs[i], 16);
  os << '\n';
}

/// Prints "name  value  status" and records failures.
class Table {
 public:
  explicit Table(std::ostream& os) : os_(os) {}
  void value(const std::string& name, const Real& v) { os_ << "  " << std::left << std::setw(28) << name << std::right << to_string(v, 20) << '\n'; }
  void check(const std::string& name, double deviation, double tol) {
    const bool ok = deviation < tol;
    failed_ |= !ok;
    os_ << "  " << std::left << std::setw(44) << name << std::right << (ok ? "PASS" : "FAIL") << "  dev "
        << std::setprecision(3) << deviation << " tol " << tol << std::setprecision(6) << '\n';
  }
  void exact(const std::string& name, bool ok) {
    failed_ |= !ok;
    os_ << "  " << std::left << std::setw(44) << name << std::right << (ok ? "PASS" : "FAIL") << "  exact\n";
  }
  void certificates(const std::vector<NamedCertificate>& certs) {
    for (const auto& nc : certs) {
      failed_ |= !nc.cert.passed;
      os_ << "    " << std::left << std::setw(26) << nc.name << std::right << cert_text(nc.cert) << '\n';
    }
  }
  void failure(const std::string& entry, const std::string& what) {
    failed_ = true;
    os_ << "  " << entry << ": FAILED (" << what << ")\n";
  }
  bool failed() const { return failed_; }

 private:
  std::ostream& os_;
  bool failed_ = false;
};

inline void predict_first(const Flags& f, Table& t, std::ostream& os) {
  os << "first moment\n";
  const auto c = first_moment_constants(f.q, f.euler_options());
  t.value("prod over P at s=1", c.P_at_1);
  t.value("(4/log q) P'/P(1)", c.dlog);
  t.check("log-derivative: prime sum vs jet", ffm::detail::rel_diff(c.dlog, c.dlog_jet), 1e-9);
  if (f.g > 0) t.value("prediction at g=" + std::to_string(f.g), first_moment_prediction(c, f.g));
  t.certificates(c.certificates);
}

inline void predict_second(const Flags& f, Table& t, std::ostream& os) {
  os << "second moment\n";
  const auto c = b_constants(f.q, f.euler_options());
  for (int i = 1; i <= 9; ++i) t.value("b" + std::to_string(i), c.b[i]);
  t.value("A(0,0)", c.A00);
  t.value("A1 = A2", c.A1);
  t.value("A12", c.A12);
  t.value("A111 = A222", c.A111);
  t.value("A112 = A122", c.A112);
  const auto p = p_polynomials(c);
  const auto r = r_conjecture_poly(c);
  print_poly(os, p.P1);
  print_poly(os, p.P2);
  print_poly(os, p.P);
  print_poly(os, r);
  t.check("[x^3]P = A(0,0)/24", ffm::detail::rel_diff(p.P.coeffs[3], c.A00_jet / Real(24)), 1e-8);
  double worst = 0;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) worst = std::max(worst, ffm::detail::rel_diff(p.P.coeffs[i], r.coeffs[i]));
  t.check("P = R coefficientwise", worst, 1e-8);
  if (f.g > 0) t.value("prediction at g=" + std::to_string(f.g), second_moment_prediction(p, f.q, f.g));
  t.certificates(c.certificates);
}

inline void predict_third(const Flags& f, Table& t, std::ostream& os) {
  os << "third moment\n";
  const auto c = third_moment_constants(f.q, f.euler_options());
  t.value("B3(1/q)", c.B3);
  t.value("H(1,1/q) zeta(2)^4", c.H_zeta4);
  t.value("A3", c.A3);
  t.check("B3(1/q) = H zeta(2)^4", ffm::detail::rel_diff(c.B3, c.H_zeta4), 1e-10);
  t.check("H zeta(2)^4 = A3", ffm::detail::rel_diff(c.H_zeta4, c.A3), 1e-10);
  // 729/(2^11 6!) - 217/(2^11 6!) = 1/2880 in integers
  t.exact("leading x^6 coefficients sum to 1/2880", (729 - 217) * 2880 == 2048 * 720);
  if (f.g > 0) {
    t.value("main term at g=" + std::to_string(f.g), main_term_k3(f.q, f.g, 6, f.euler_options()));
    t.value("leading secondary", leading_secondary_k3(c, f.g));
    t.value("prediction", third_moment_prediction(c, f.g, f.euler_options()));
  }
  t.certificates(c.certificates);
}

}  // namespace detail

inline int cmd_moment(const Flags& f, std::ostream& out, std::ostream& err) {
  const ResultCache cache(ResultCache::resolve_root(f.cache_dir));
  const CacheKey key{f.q, f.g, f.k, parse_method(f.method)};
  auto rec = cache.load(key);
  if (!rec) {
    Predictor predict(f.q, f.euler_options());
    try {
      rec = cache.store(compute_records(f.q, f.g, {f.k}, key.method, f.moment_options(), predict).front());
    } catch (const BudgetExceeded& e) {
      err << e.what() << "\nraise --budget, lower --g, or switch --method\n";
      return kUsage;
    }
  }
  if (f.out == "csv")
    write_csv(out, {report_row(*rec)});
  else
    out << to_json(*rec).dump(2) << '\n';
  return kOk;
}

inline int cmd_predict(const Flags& f, std::ostream& out, std::ostream&) {
  out << "q = " << f.q << ", truncation "
      << (f.max_degree > 0 ? "fixed at degree " + std::to_string(f.max_degree) : std::string("adaptive")) << '\n';
  detail::Table t(out);
  auto entry = [&](int k, const char* name, auto&& body) {
    if (f.k != 0 && f.k != k) return;
    try {
      body(f, t, out);
    } catch (const CertificateFailure& e) {
      t.failure(name, e.what());
    }
  };
  entry(1, "first moment", detail::predict_first);
  entry(2, "second moment", detail::predict_second);
  entry(3, "third moment", detail::predict_third);
  return t.failed() ? kCheckFailed : kOk;
}

inline int cmd_verify(const Flags& f, std::ostream& out, std::ostream&) {
  std::vector<std::string> names;
  if (f.suite == "all")
    names = suite_names();
  else
    names = {f.suite};
  bool ok = true;
  Json reports = Json::array();
  for (const auto& name : names) {
    const auto r = run_suite(name, f.q, f.euler_options());
    ok &= r.passed();
    if (f.out == "json") {
      Json checks = Json::array();
      for (const auto& c : r.checks)
        checks.push_back(Json{{"name", c.name},
                              {"passed", c.passed()},
                              {"checks", c.checks},
                              {"failures", c.failures},
                              {"max_deviation", c.max_deviation},
                              {"tolerance", c.tolerance}});
      reports.push_back(Json{{"suite", r.suite}, {"q", r.q}, {"passed", r.passed()}, {"checks", checks}});
    } else {
      print_suite(out, r);
    }
  }
  if (f.out == "json") out << reports.dump(2) << '\n';
  return ok ? kOk : kCheckFailed;
}

inline int cmd_report(const Flags& f, std::ostream& out, std::ostream& err) {
  Grid grid{f.qs, f.gs, f.ks, parse_method(f.method)};
  const ResultCache cache(ResultCache::resolve_root(f.cache_dir));
  std::vector<ReportRow> rows;
  try {
    rows = build_report(grid, cache, f.compute, f.moment_options(), f.euler_options());
  } catch (const MissingRecords& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << e.what() << "\nraise --budget or shrink the grid\n";
    return kUsage;
  }
  if (f.out == "json")
    out << rows_json(rows).dump(2) << '\n';
  else
    write_csv(out, rows);
  return kOk;
}

/// Parses argv and dispatches; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Moments of quadratic Dirichlet L-functions over F_q[x]: brute force and predictions"};
  app.require_subcommand(1);
  Flags f;
  const auto q_check = CLI::Validator(validate_q, "PRIME = 1 mod 4", "q");
  const auto methods = CLI::IsMember({"pointcount", "charsum", "afe"});

  auto* moment = app.add_subcommand("moment", "exact moment over H_{2g+1} with its prediction");
  moment->add_option("--q", f.q, "field size")->required()->check(q_check);
  moment->add_option("--g", f.g, "genus")->required()->check(CLI::Range(1, 64));
  moment->add_option("--k", f.k, "power of L(1/2)")->required()->check(CLI::Range(1, 3));
  moment->add_option("--method", f.method, "pointcount, charsum or afe")->check(methods)->capture_default_str();
  moment->add_option("--out", f.out, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* predict = app.add_subcommand("predict", "prediction polynomials and Euler-product constants");
  predict->add_option("--q", f.q, "field size")->required()->check(q_check);
  predict->add_option("--k", f.k, "only this moment (1, 2 or 3)")->check(CLI::Range(1, 3));
  predict->add_option("--g", f.g, "also print predictions at this genus")->check(CLI::Range(1, 64));

  auto* verify = app.add_subcommand("verify", "exhaustive identity checks");
  verify->add_option("--q", f.q, "field size")->check(q_check)->capture_default_str();
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("--suite", f.suite, "suite name or all")->required()->check(CLI::IsMember(suites));
  verify->add_option("--out", f.out, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* report = app.add_subcommand("report", "comparison table over a (q, g, k) grid");
  report->add_option("--q", f.qs, "field sizes")->delimiter(',')->check(q_check)->capture_default_str();
  report->add_option("--g", f.gs, "genera")->delimiter(',')->check(CLI::Range(1, 64));
  report->add_option("--k", f.ks, "powers")->delimiter(',')->check(CLI::Range(1, 3))->capture_default_str();
  report->add_option("--method", f.method, "pointcount, charsum or afe")->check(methods)->capture_default_str();
  report->add_option("--out", f.out, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  report->add_flag("--compute", f.compute, "compute records missing from the cache");

  for (auto* sub : {moment, report}) {
    sub->add_option("--threads", f.threads, "worker threads (0: all cores)");
    sub->add_option("--budget", f.budget, "refuse runs above this many field operations")->capture_default_str();
    sub->add_option("--cache-dir", f.cache_dir, "cache root (default $FFMOMENTS_CACHE or ./cache)");
  }
  for (auto* sub : {moment, predict, verify, report})
    sub->add_option("--max-degree", f.max_degree, "fixed Euler truncation degree (0: adaptive)")
        ->check(CLI::Range(0, 4000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (f.max_degree != 0 && f.max_degree < 4) {
    err << "--max-degree must be 0 or at least 4\n";
    return kUsage;
  }

  try {
    if (*moment) return cmd_moment(f, out, err);
    if (*predict) return cmd_predict(f, out, err);
    if (*verify) return cmd_verify(f, out, err);
    return cmd_report(f, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
}

}  // namespace ffm::cli

#endif  // FFMOMENTS_CLI_HPP
