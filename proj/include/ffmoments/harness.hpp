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

#ifndef FFMOMENTS_HARNESS_HPP
#define FFMOMENTS_HARNESS_HPP

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "asymptotics.hpp"
#include "moments.hpp"

namespace ffm {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kCodeVersion = "0.1.0";

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Records and their cache

struct CacheKey {
  std::uint32_t q = 0;
  int g = 0;
  int k = 0;
  Method method = Method::PointCount;
  int schema_version = kSchemaVersion;

  /// q{q}/g{g}/k{k}-{method}.json
  std::filesystem::path relative_path() const {
    return std::filesystem::path("q" + std::to_string(q)) / ("g" + std::to_string(g)) /
           ("k" + std::to_string(k) + "-" + method_name(method) + ".json");
  }
  std::string to_string() const {
    return "q=" + std::to_string(q) + " g=" + std::to_string(g) + " k=" + std::to_string(k) + " method=" +
           method_name(method);
  }
  friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

struct ExperimentRecord {
  int schema_version = kSchemaVersion;
  std::uint32_t q = 0;
  int g = 0;
  int k = 0;
  Method method = Method::PointCount;
  std::uint64_t count = 0;
  QuadValue exact;
  double value_float = 0;
  double prediction = 0;
  double deviation = 0;  ///< |value_float - prediction| / q^{2g+1}
  std::int64_t runtime_ms = 0;
  std::string created;  ///< UTC, ISO 8601
  std::string code_version = kCodeVersion;

  CacheKey key() const { return {q, g, k, method, schema_version}; }
  double ratio() const { return value_float / prediction; }
};

inline double scaled_deviation(double value, double prediction, std::uint32_t q, int g) {
  return std::abs(value - prediction) / std::pow(static_cast<double>(q), 2 * g + 1);
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline ExperimentRecord make_record(const MomentResult& r, double prediction) {
  ExperimentRecord rec;
  rec.q = r.q;
  rec.g = r.g;
  rec.k = r.k;
  rec.method = r.method;
  rec.count = r.ensemble_count;
  rec.exact = r.value_exact;
  rec.value_float = r.value_float;
  rec.prediction = prediction;
  rec.deviation = scaled_deviation(r.value_float, prediction, r.q, r.g);
  rec.runtime_ms = r.runtime_ms;
  rec.created = utc_timestamp();
  return rec;
}

/// Schema fields in fixed order; timestamps and the code version sit in a
/// separate "provenance" object.
inline Json to_json(const ExperimentRecord& r) {
  Json j;
  j["schema_version"] = r.schema_version;
  j["q"] = r.q;
  j["g"] = r.g;
  j["k"] = r.k;
  j["method"] = method_name(r.method);
  j["count"] = r.count;
  j["exact"] = Json{{"a", r.exact.a().str()}, {"b", r.exact.b().str()}, {"e", r.exact.e()}};
  j["float"] = r.value_float;
  j["prediction"] = r.prediction;
  j["deviation"] = r.deviation;
  j["runtime_ms"] = r.runtime_ms;
  j["provenance"] = Json{{"created", r.created}, {"code_version", r.code_version}};
  return j;
}

namespace detail {
inline BigInt parse_decimal(const std::string& s) {
  const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
  if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
    throw Error("record: malformed integer string '" + s + "'");
  return BigInt(s);
}
}  // namespace detail

inline ExperimentRecord record_from_json(const Json& j) {
  try {
    ExperimentRecord r;
    r.schema_version = j.at("schema_version").get<int>();
    r.q = j.at("q").get<std::uint32_t>();
    r.g = j.at("g").get<int>();
    r.k = j.at("k").get<int>();
    r.method = parse_method(j.at("method").get<std::string>());
    r.count = j.at("count").get<std::uint64_t>();
    const auto& ex = j.at("exact");
    r.exact = QuadValue(r.q, detail::parse_decimal(ex.at("a").get<std::string>()),
                        detail::parse_decimal(ex.at("b").get<std::string>()), ex.at("e").get<std::uint32_t>());
    r.value_float = j.at("float").get<double>();
    r.prediction = j.at("prediction").get<double>();
    r.deviation = j.at("deviation").get<double>();
    r.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
    if (j.contains("provenance")) {
      r.created = j["provenance"].value("created", "");
      r.code_version = j["provenance"].value("code_version", "");
    }
    return r;
  } catch (const Json::exception& e) {
    throw Error(std::string("record: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(std::string("record: ") + e.what());
  }
}

/// File-per-record store under a root directory. Writes go to a temporary
/// file in the target directory and are renamed into place; an existing
/// record is never replaced.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path root) : root_(std::move(root)) {}

  /// --cache-dir, then $FFMOMENTS_CACHE, then ./cache.
  static std::filesystem::path resolve_root(const std::string& flag = {}) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("FFMOMENTS_CACHE"); env && *env) return env;
    return "cache";
  }

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path path_for(const CacheKey& key) const { return root_ / key.relative_path(); }

  /// nullopt when absent or written under another schema version.
  std::optional<ExperimentRecord> load(const CacheKey& key) const {
    const auto path = path_for(key);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    Json j;
    try {
      in >> j;
    } catch (const Json::exception& e) {
      throw Error("cache: unreadable record " + path.string() + ": " + e.what());
    }
    if (j.value("schema_version", -1) != key.schema_version) return std::nullopt;
    auto rec = record_from_json(j);
    if (rec.key() != key) throw Error("cache: record at " + path.string() + " belongs to " + rec.key().to_string());
    return rec;
  }

  /// Returns the record now on disk (the earlier one if it already existed).
  ExperimentRecord store(const ExperimentRecord& rec) const {
    if (auto existing = load(rec.key())) return *existing;
    const auto path = path_for(rec.key());
    std::filesystem::create_directories(path.parent_path());
    static std::atomic<unsigned> serial{0};
    auto tmp = path;
    tmp += ".tmp-" + std::to_string(::getpid()) + "-" + std::to_string(serial.fetch_add(1));
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << to_json(rec).dump(2) << '\n';
      out.flush();
      if (!out) throw Error("cache: cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
    return rec;
  }

 private:
  std::filesystem::path root_;
};

// ---------------------------------------------------------------------------
// Predictions

/// Predicted moment values for one q; the Euler constants are built on first
/// use and reused across genera.
class Predictor {
 public:
  explicit Predictor(std::uint32_t q, EulerOptions opt = {}) : q_(q), opt_(opt) { FieldParams(q).require_one_mod_four(); }

  std::uint32_t q() const { return q_; }

  /// k = 1: first moment; k = 2: second moment; k = 3: main term plus the
  /// leading secondary term.
  Real exact(int g, int k) {
    if (g < 1) throw std::invalid_argument("prediction: g must be >= 1");
    switch (k) {
      case 1:
        if (!first_) first_ = first_moment_constants(q_, opt_);
        return first_moment_prediction(*first_, g);
      case 2:
        if (!second_) second_ = p_polynomials(b_constants(q_, opt_));
        return second_moment_prediction(*second_, q_, g);
      case 3:
        if (!third_) third_ = third_moment_constants(q_, opt_);
        return third_moment_prediction(*third_, g, opt_);
      default:
        throw std::invalid_argument("prediction: k must be 1, 2 or 3");
    }
  }
  double operator()(int g, int k) { return static_cast<double>(exact(g, k)); }

 private:
  std::uint32_t q_;
  EulerOptions opt_;
  std::optional<FirstMomentConstants> first_;
  std::optional<PPolynomials> second_;
  std::optional<ThirdMomentConstants> third_;
};

/// Runs one pass over H_{2g+1} for all ks and attaches predictions.
inline std::vector<ExperimentRecord> compute_records(std::uint32_t q, int g, const std::vector<int>& ks, Method method,
                                                     const MomentOptions& mopts, Predictor& predict) {
  std::vector<ExperimentRecord> out;
  for (const auto& r : moments(q, g, ks, method, mopts)) out.push_back(make_record(r, predict(g, r.k)));
  return out;
}

// ---------------------------------------------------------------------------
// Comparison reports

struct ReportRow {
  std::uint32_t q = 0;
  int g = 0;
  int k = 0;
  double moment_float = 0;
  double prediction = 0;
  double deviation = 0;
  double ratio = 0;
};

inline constexpr const char* kReportHeader = "q,g,k,moment_float,prediction,deviation,ratio";

inline ReportRow report_row(const ExperimentRecord& r) {
  return {r.q, r.g, r.k, r.value_float, r.prediction, r.deviation, r.ratio()};
}

inline void write_csv(std::ostream& os, const std::vector<ReportRow>& rows) {
  os << kReportHeader << '\n';
  std::ostringstream line;
  line << std::setprecision(17);
  for (const auto& r : rows) {
    line.str({});
    line << r.q << ',' << r.g << ',' << r.k << ',' << r.moment_float << ',' << r.prediction << ',' << r.deviation
         << ',' << r.ratio;
    os << line.str() << '\n';
  }
}

inline Json rows_json(const std::vector<ReportRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows)
    arr.push_back(Json{{"q", r.q},
                       {"g", r.g},
                       {"k", r.k},
                       {"moment_float", r.moment_float},
                       {"prediction", r.prediction},
                       {"deviation", r.deviation},
                       {"ratio", r.ratio}});
  return arr;
}

class MissingRecords : public Error {
 public:
  explicit MissingRecords(std::vector<CacheKey> keys) : Error(describe(keys)), keys_(std::move(keys)) {}
  const std::vector<CacheKey>& keys() const { return keys_; }

 private:
  static std::string describe(const std::vector<CacheKey>& keys) {
    std::string s = std::to_string(keys.size()) + " record(s) not in cache (rerun with --compute):";
    for (const auto& k : keys) s += "\n  " + k.to_string();
    return s;
  }
  std::vector<CacheKey> keys_;
};

struct Grid {
  std::vector<std::uint32_t> qs;
  std::vector<int> gs;
  std::vector<int> ks;
  Method method = Method::PointCount;
};

/// Rows ordered by (q, g, k). Cached records are used as they are; with
/// compute set, missing (q, g) cells are computed in one pass and stored.
inline std::vector<ReportRow> build_report(const Grid& grid, const ResultCache& cache, bool compute,
                                           const MomentOptions& mopts = {}, const EulerOptions& eopts = {}) {
  std::vector<CacheKey> missing;
  std::vector<ReportRow> rows;
  for (std::uint32_t q : grid.qs) {
    std::optional<Predictor> predict;
    for (int g : grid.gs) {
      std::vector<std::optional<ExperimentRecord>> cell;
      std::vector<int> todo;
      for (int k : grid.ks) {
        cell.push_back(cache.load({q, g, k, grid.method}));
        if (!cell.back()) todo.push_back(k);
      }
      if (!todo.empty()) {
        if (!compute) {
          for (int k : todo) missing.push_back({q, g, k, grid.method});
          continue;
        }
        if (!predict) predict.emplace(q, eopts);
        for (const auto& rec : compute_records(q, g, todo, grid.method, mopts, *predict)) {
          const auto stored = cache.store(rec);
          for (std::size_t i = 0; i < grid.ks.size(); ++i)
            if (grid.ks[i] == stored.k) cell[i] = stored;
        }
      }
      for (const auto& rec : cell) rows.push_back(report_row(*rec));
    }
  }
  if (!missing.empty()) throw MissingRecords(std::move(missing));
  return rows;
}

// ---------------------------------------------------------------------------
// Verification suites

struct CheckResult {
  std::string name;
  double tolerance = 0;  ///< 0 for exact comparisons
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  double max_deviation = 0;

  void observe(double deviation) {
    ++checks;
    if (std::isnan(deviation) || deviation > max_deviation) max_deviation = deviation;
    if (!(deviation < tolerance)) ++failures;
  }
  void observe_exact(bool equal) {
    ++checks;
    if (!equal) ++failures;
  }
  bool passed() const { return checks > 0 && failures == 0; }
};

struct SuiteReport {
  std::string suite;
  std::uint32_t q = 0;
  std::vector<CheckResult> checks;
  double seconds = 0;
  bool passed() const {
    if (checks.empty()) return false;
    for (const auto& c : checks)
      if (!c.passed()) return false;
    return true;
  }
};

inline void print_suite(std::ostream& os, const SuiteReport& r) {
  os << "suite " << r.suite << " q=" << r.q << " (" << std::fixed << std::setprecision(1) << r.seconds << " s)\n"
     << std::defaultfloat;
  for (const auto& c : r.checks) {
    os << "  " << (c.passed() ? "PASS " : "FAIL ") << std::left << std::setw(40) << c.name << std::right;
    if (c.tolerance > 0)
      os << " max=" << std::setprecision(3) << c.max_deviation << " tol=" << c.tolerance;
    else
      os << " equal " << (c.checks - c.failures);
    os << " / " << c.checks << std::setprecision(6) << '\n';
  }
}

/// Box sizes for the exhaustive suites. For q = 5 these are the reference
/// boxes; larger q get boxes of comparable cost.
struct DeskBox {
  int gauss_f_degree = 4;
  int gauss_V_degree = 4;
  int poisson_f_degree = 4;
  int poisson_m = 4;
  std::vector<int> ensemble_degrees{3, 5};
  int firstpoint_f_degree = 3;
  std::vector<int> firstpoint_genera{1, 2};
  int random_degree = 7;
  int random_samples = 1000;
  int rh_samples = 200;
  int genid_V_degree = 3;
  int genid_order = 4;
  std::vector<double> genid_points{0.7, 1.3};
};

inline DeskBox desk_box(std::uint32_t q) {
  DeskBox b;
  if (q == 5) return b;
  auto fits = [q](int d, double limit) { return std::pow(static_cast<double>(q), d) <= limit; };
  int d = 1;
  while (fits(d + 1, 625)) ++d;
  b.gauss_f_degree = b.gauss_V_degree = b.poisson_f_degree = d;
  b.ensemble_degrees = {3};
  if (fits(5, 5000)) b.ensemble_degrees.push_back(5);
  b.firstpoint_f_degree = std::min(d, 2);
  b.firstpoint_genera = {1};
  b.random_degree = 5;
  b.random_samples = 200;
  b.genid_V_degree = std::min(d, 2);
  b.genid_order = std::min(d, 2);
  return b;
}

namespace detail {

/// All polynomials of degree <= d (including zero), by coefficient index.
inline std::vector<FqPoly> all_polys_upto(const FieldParams& F, int d) {
  const std::uint64_t n = ipow(F.q(), static_cast<unsigned>(d + 1));
  std::vector<FqPoly> out;
  out.reserve(n);
  std::vector<Residue> c(d + 1);
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    std::uint64_t t = idx;
    for (auto& x : c) {
      x = static_cast<Residue>(t % F.q());
      t /= F.q();
    }
    out.emplace_back(F, c);
  }
  return out;
}

/// Uniform sample of square-free monic polynomials of degree n.
inline std::vector<FqPoly> sample_H(const FieldParams& F, int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, ipow(F.q(), static_cast<unsigned>(n)) - 1);
  std::vector<FqPoly> out;
  while (static_cast<int>(out.size()) < count) {
    FqPoly D = monic_from_index(F, n, pick(rng));
    if (is_squarefree(D)) out.push_back(std::move(D));
  }
  return out;
}

inline double rel_diff(const Real& a, const Real& b) {
  const Real s = abs(b) > 0 ? abs(b) : Real(1);
  return static_cast<double>(abs(a - b) / s);
}

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

}  // namespace detail

inline constexpr std::uint64_t kSampleSeed = 0x5eed0f11ULL;

/// Closed-form Gauss sums against bucketed brute force.
inline SuiteReport verify_gauss(std::uint32_t q, const DeskBox& box) {
  detail::Stopwatch sw;
  FieldParams F(q);
  F.require_one_mod_four();
  CheckResult value{"closed form = brute force (relative)", 1e-6};
  CheckResult imag{"imaginary part", 1e-6};
  const auto Vs = detail::all_polys_upto(F, box.gauss_V_degree);
  for (int d = 1; d <= box.gauss_f_degree; ++d)
    for (const auto& f : enumerate_monic(F, d)) {
      GaussSumTable G(f);
      const auto fac = factor(f);
      for (const auto& V : Vs) {
        const Complex brute = G(V), closed = gauss_sum_closed(V, f, fac);
        value.observe(std::abs(brute - closed) / std::max(1.0, std::abs(closed)));
        imag.observe(std::max(std::abs(brute.imag()), std::abs(closed.imag())));
      }
    }
  return {"gauss", q, {value, imag}, sw.seconds()};
}

inline SuiteReport verify_poisson(std::uint32_t q, const DeskBox& box) {
  detail::Stopwatch sw;
  FieldParams F(q);
  F.require_one_mod_four();
  CheckResult even{"even deg f: direct = dual side", 1e-6}, odd{"odd deg f: direct = dual side", 1e-6};
  for (int d = 1; d <= box.poisson_f_degree; ++d)
    for (const auto& f : enumerate_monic(F, d))
      for (int m = 0; m <= box.poisson_m; ++m) {
        const auto [lhs, rhs] = poisson_sides(f, m);
        (d % 2 == 0 ? even : odd).observe(std::abs(lhs - rhs));
      }
  return {"poisson", q, {even, odd}, sw.seconds()};
}

/// The finite character-sum expansion of L(1/2)^k against the L-polynomial.
inline SuiteReport verify_fe(std::uint32_t q, const DeskBox& box) {
  detail::Stopwatch sw;
  FieldParams F(q);
  F.require_one_mod_four();
  CheckResult k2{"afe(D,2) = L(1/2)^2", 0}, k3{"afe(D,3) = L(1/2)^3", 0};
  for (int n : box.ensemble_degrees) {
    const int g = (n - 1) / 2;
    const MonicSieve sieve(F, 3 * g);
    const auto d2 = sieve.divisor_counts(2), d3 = sieve.divisor_counts(3);
    const PointCounter pc(F, g);
    enumerate_H(F, n).for_each([&](const FqPoly& D) {
      const QuadValue L = l_value_half(l_coeffs_pointcount(D, pc));
      k2.observe_exact(afe_value(D, 2, sieve, d2) == L.pow(2));
      k3.observe_exact(afe_value(D, 3, sieve, d3) == L.pow(3));
    });
  }
  return {"fe", q, {k2, k3}, sw.seconds()};
}

inline SuiteReport verify_firstpoint(std::uint32_t q, const DeskBox& box) {
  detail::Stopwatch sw;
  FieldParams F(q);
  F.require_one_mod_four();
  CheckResult eq{"sum over H of chi_f = divisor expansion", 0};
  for (int g : box.firstpoint_genera)
    for (int d = 0; d <= box.firstpoint_f_degree; ++d)
      for (const auto& f : enumerate_monic(F, d)) {
        const auto [lhs, rhs] = charsum_over_H(f, g);
        eq.observe_exact(lhs == rhs);
      }
  return {"firstpoint", q, {eq}, sw.seconds()};
}

/// Character sums and point counts give the same L-polynomial.
inline SuiteReport verify_artin(std::uint32_t q, const DeskBox& box) {
  detail::Stopwatch sw;
  FieldParams F(q);
  F.require_one_mod_four();
  CheckResult agree{"charsum = pointcount", 0}, sym{"c_{2g-n} = q^{g-n} c_n", 0};
  auto run = [&](int n, const std::vector<FqPoly>& Ds) {
    const int g = (n - 1) / 2;
    const MonicSieve sieve(F, 2 * g + 2);
    const PointCounter pc(F, g);
    for (const auto& D : Ds) {
      const auto a = l_coeffs_charsum(D, sieve), b = l_coeffs_pointcount(D, pc);
      agree.observe_exact(a == b);
      sym.observe_exact(a.satisfies_functional_equation() && b.satisfies_functional_equation());
    }
  };
  for (int n : box.ensemble_degrees) run(n, enumerate_H(F, n).collect());
  run(box.random_degree, detail::sample_H(F, box.random_degree, box.random_samples, kSampleSeed));
  return {"artin", q, {agree, sym}, sw.seconds()};
}

inline SuiteReport verify_rh(std::uint32_t q, const DeskBox& box) {
  detail::Stopwatch sw;
  FieldParams F(q);
  F.require_one_mod_four();
  CheckResult rh{"| |root| sqrt q - 1 |", 1e-8};
  const int n = box.random_degree;
  const PointCounter pc(F, (n - 1) / 2);
  for (const auto& D : detail::sample_H(F, n, box.rh_samples, kSampleSeed + 1))
    rh.observe(check_rh_roots(l_coeffs_pointcount(D, pc)));
  return {"rh", q, {rh}, sw.seconds()};
}

/// Gauss-sum weighted f-sums against L(w, chi_V)^k times local factors.
inline SuiteReport verify_genid(std::uint32_t q, const DeskBox& box) {
  detail::Stopwatch sw;
  const GeneratingIdentityChecker chk(q, box.genid_order);
  FieldParams F(q);
  CheckResult k2{"k=2 series coefficients", 1e-6}, k3{"k=3 series coefficients", 1e-6};
  for (int d = 0; d <= box.genid_V_degree; ++d)
    for (const auto& V : enumerate_monic(F, d))
      for (double z : box.genid_points) {
        k2.observe(chk.deviation(V, 2, z));
        k3.observe(chk.deviation(V, 3, z));
      }
  return {"genid", q, {k2, k3}, sw.seconds()};
}

inline SuiteReport verify_funceq(std::uint32_t q, const EulerOptions& opt = {}) {
  detail::Stopwatch sw;
  FieldParams(q).require_one_mod_four();
  const auto& pts = default_sample_points();
  const auto r = functional_eq_suite(q, pts, opt);
  auto line = [&](const char* name, double v) {
    CheckResult c{name, 1e-9};
    c.observe(v);
    c.checks = pts.size();
    return c;
  };
  return {"funceq",
          q,
          {line("F(z) = F(1/z)", r.F_reflection), line("g(z) = g(1/z)", r.g_reflection),
           line("alpha reflection identity", r.alpha_identity), line("alpha prime-sum decomposition", r.alpha_decomposition),
           line("F local factor, two-variable form", r.F_local), line("H local factor, two-variable form", r.H_local)},
          sw.seconds()};
}

/// Identities among the Euler products and agreement of independent
/// derivative routes.
inline SuiteReport verify_euler(std::uint32_t q, const EulerOptions& opt = {}) {
  detail::Stopwatch sw;
  const BConstants c = b_constants(q, opt);
  const Real qr(q), m = Real(1) - Real(1) / qr;
  CheckResult zeta{"prod (1 - |P|^-2) = 1 - 1/q", 1e-12};
  zeta.observe(detail::rel_diff(
      euler_product(q, [](int, const Real& P) { return log1p(-Real(1) / (P * P)); }, opt).value, m));
  CheckResult dF{"F'(1) = 0", 1e-10};
  dF.observe(static_cast<double>(abs(c.F_jet[1])));
  CheckResult BA{"B(1/q)(1 - 1/q) = A(0,0)", 1e-10};
  BA.observe(detail::rel_diff(c.B[0] * m, c.A00_jet));
  BA.observe(detail::rel_diff(c.F_jet[0] * c.zeta2, c.A00_jet));
  CheckResult routes{"derivatives: prime sums vs jets", 1e-9};
  for (int k = 0; k < 4; ++k) routes.observe(detail::rel_diff(c.B[k], c.B_jet[k]));
  for (int k = 2; k < 4; ++k) routes.observe(detail::rel_diff(c.F[k], c.F_jet[k]));
  for (int k = 0; k < 3; ++k) routes.observe(detail::rel_diff(c.alpha[k], c.alpha_jet[k]));
  routes.observe(detail::rel_diff(c.A1, c.A1_jet));
  routes.observe(detail::rel_diff(c.A1, c.A2_jet));
  routes.observe(detail::rel_diff(c.A12, c.A12_jet));
  routes.observe(detail::rel_diff(c.A111, c.A111_jet));
  routes.observe(detail::rel_diff(c.A111, c.A222_jet));
  routes.observe(detail::rel_diff(c.A112, c.A112_jet));
  routes.observe(detail::rel_diff(c.A112, c.A122_jet));
  routes.observe(detail::rel_diff(c.prime_square_sum, c.prime_square_closed));
  const auto fm = first_moment_constants(q, opt);
  routes.observe(detail::rel_diff(fm.dlog, fm.dlog_jet));
  CheckResult certs{"truncation certificates", 0};
  for (const auto& nc : c.certificates) certs.observe_exact(nc.cert.passed);
  for (const auto& nc : fm.certificates) certs.observe_exact(nc.cert.passed);
  return {"euler", q, {zeta, dF, BA, routes, certs}, sw.seconds()};
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"gauss", "poisson", "fe",     "firstpoint", "artin",
                                              "rh",    "genid",   "funceq", "euler"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, std::uint32_t q, const EulerOptions& opt = {}) {
  const DeskBox box = desk_box(q);
  if (name == "gauss") return verify_gauss(q, box);
  if (name == "poisson") return verify_poisson(q, box);
  if (name == "fe") return verify_fe(q, box);
  if (name == "firstpoint") return verify_firstpoint(q, box);
  if (name == "artin") return verify_artin(q, box);
  if (name == "rh") return verify_rh(q, box);
  if (name == "genid") return verify_genid(q, box);
  if (name == "funceq") return verify_funceq(q, opt);
  if (name == "euler") return verify_euler(q, opt);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace ffm

#endif  // FFMOMENTS_HARNESS_HPP
