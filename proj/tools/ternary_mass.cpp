#include "tqf/forms.hpp"
#include "tqf/local_odd.hpp"
#include "tqf/local_two.hpp"
#include "tqf/mass_series.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

namespace fs = std::filesystem;
using namespace tqf;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kIo = 3 };

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  long max_det = 0;
  int workers = 0;
  std::string cache_path = "ternary_forms.jsonl";
  std::string format = "table";
};

// Exclusive lock held for the lifetime of the object.
class CacheLock {
 public:
  explicit CacheLock(const std::string& cache_path) {
    std::string path = cache_path + ".lock";
    fd_ = ::open(path.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ < 0) throw IoFailure("cannot open lock file " + path);
    if (::flock(fd_, LOCK_EX) != 0) throw IoFailure("cannot lock " + path);
  }
  ~CacheLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  CacheLock(const CacheLock&) = delete;
  CacheLock& operator=(const CacheLock&) = delete;

 private:
  int fd_ = -1;
};

std::string meta_path(const std::string& cache) { return cache + ".meta"; }

struct Cache {
  long max_det = 0;
  std::vector<FormRecord> records;
};

std::optional<Cache> load_cache(const std::string& path) {
  if (!fs::exists(path)) return std::nullopt;
  std::ifstream meta(meta_path(path));
  if (!meta) throw IoFailure(path + ": cache has no readable " + meta_path(path));
  Cache cache;
  try {
    auto j = nlohmann::json::parse(meta);
    cache.max_det = j.at("max_det").get<long>();
  } catch (const nlohmann::json::exception& e) {
    throw IoFailure(meta_path(path) + ": " + e.what());
  }
  std::ifstream in(path);
  if (!in) throw IoFailure(path + ": cannot open for reading");
  try {
    cache.records = read_jsonl(in);
  } catch (const FormIoError& e) {
    throw IoFailure(path + ": " + e.what());
  }
  for (std::size_t i = 0; i < cache.records.size(); ++i) {
    auto& r = cache.records[i];
    if (r.det_h > cache.max_det)
      throw IoFailure(path + ": line " + std::to_string(i + 1) + ": det_h exceeds the cached bound");
    if (!is_reduced(r.form)) throw IoFailure(path + ": line " + std::to_string(i + 1) + ": form is not reduced");
    if (i) {
      auto& p = cache.records[i - 1];
      if (std::pair(p.det_h, p.form) >= std::pair(r.det_h, r.form))
        throw IoFailure(path + ": line " + std::to_string(i + 1) + ": records out of order");
    }
  }
  return cache;
}

void store_cache(const std::string& path, const Cache& cache) {
  auto write_atomically = [](const std::string& target, auto&& body) {
    std::string tmp = target + ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw IoFailure(tmp + ": cannot open for writing");
      body(out);
      out.flush();
      if (!out) throw IoFailure(tmp + ": write failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw IoFailure(target + ": " + ec.message());
  };
  write_atomically(path, [&](std::ostream& out) { write_jsonl(out, cache.records); });
  write_atomically(meta_path(path), [&](std::ostream& out) { out << nlohmann::json{{"max_det", cache.max_det}}.dump() << '\n'; });
}

// Loads the cache and extends it up to cfg.max_det when needed.
Cache ensure_cache(const RunConfig& cfg, bool allow_build) {
  CacheLock lock(cfg.cache_path);
  auto cache = load_cache(cfg.cache_path);
  if (cache && cache->max_det >= cfg.max_det) return *cache;
  if (!allow_build) {
    if (!cache) throw IoFailure(cfg.cache_path + ": no cache and building is disabled");
    throw IoFailure(cfg.cache_path + ": cache covers det_H <= " + std::to_string(cache->max_det) +
                    " only and building is disabled");
  }
  Cache out = cache ? *cache : Cache{};
  EnumerationOptions opt;
  opt.min_det = out.max_det + 1;
  opt.workers = cfg.workers;
  auto fresh = build_records(cfg.max_det, opt);
  out.records.insert(out.records.end(), fresh.begin(), fresh.end());
  out.max_det = cfg.max_det;
  store_cache(cfg.cache_path, out);
  return out;
}

std::vector<FormRecord> records_up_to(const Cache& cache, long max_det) {
  std::vector<FormRecord> out;
  for (auto& r : cache.records)
    if (r.det_h <= max_det) out.push_back(r);
  return out;
}

int cmd_enumerate(const RunConfig& cfg) {
  Cache cache = ensure_cache(cfg, true);
  auto recs = records_up_to(cache, cfg.max_det);
  if (cfg.format == "json") {
    std::cout << nlohmann::ordered_json{{"cache", cfg.cache_path}, {"max_det", cfg.max_det}, {"records", recs.size()}}.dump()
              << '\n';
  } else {
    std::cout << recs.size() << " reduced classes with det_H <= " << cfg.max_det << " in " << cfg.cache_path << '\n';
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, bool no_build) {
  Cache cache = ensure_cache(cfg, !no_build);
  MassTable table = mass_table_from_records(records_up_to(cache, cfg.max_det), cfg.max_det);
  VerifyReport report = verify_bundle(build_mass_series(static_cast<std::size_t>(cfg.max_det)), table);
  if (cfg.format == "json")
    write_report_jsonl(std::cout, report);
  else
    write_report_table(std::cout, report);
  return report.all_pass() ? kOk : kMismatch;
}

int cmd_series(const std::string& which, std::size_t bound, const std::string& format) {
  DirichletSeries series(bound);
  std::optional<bool> agree;
  if (which == "A" || which == "B") {
    SeriesRoutes routes = which == "A" ? build_A_series(bound) : build_B_series(bound);
    agree = routes.agree();
    series = routes.local;
  } else {
    SeriesBundle b = build_mass_series(bound);
    series = which == "mass" ? b.D_mass : b.D_mass_star;
  }
  if (format == "json") {
    if (agree) std::cout << nlohmann::json{{"routes_agree", *agree}}.dump() << '\n';
    for (std::size_t n = 1; n <= bound; ++n)
      if (series[n] != 0) std::cout << nlohmann::ordered_json{{"n", n}, {"value", to_string(series[n])}}.dump() << '\n';
  } else {
    if (agree) std::cout << "# routes-agree=" << (*agree ? "true" : "false") << '\n';
    std::cout << dump(series);
  }
  return agree.value_or(true) ? kOk : kMismatch;
}

int local_odd_dump(std::uint64_t p, long v, int unit, const std::string& format) {
  if (unit != 1 && unit != -1) throw CLI::ValidationError("--unit", "odd primes take a unit character of +1 or -1");
  PadicSquareclass S{p, v, unit};
  auto contributions = odd_contributions(p, S);
  Rational A = A_star_odd(p, S), B = B_star_odd(p, S);
  Rational eA = A_star_odd_factor(p).expand(static_cast<int>(v))[v];
  Rational eB = B_star_odd_factor(p).expand(static_cast<int>(v))[v];
  if (format == "json") {
    for (auto& c : contributions)
      std::cout << nlohmann::ordered_json{{"a", c.genus.a},     {"b", c.genus.b},         {"u1", c.genus.u1},
                                          {"u2", c.genus.u2},   {"u3", c.genus.u3},       {"hasse", c.hasse},
                                          {"density", to_string(c.normalized_density)}}
                       .dump()
                << '\n';
    std::cout << nlohmann::ordered_json{{"A_star", to_string(A)}, {"A_expected", to_string(eA)},
                                        {"B_star", to_string(B)}, {"B_expected", to_string(eB)}}
                     .dump()
              << '\n';
  } else {
    std::cout << "a\tb\tu1\tu2\tu3\thasse\tdensity\n";
    for (auto& c : contributions)
      std::cout << c.genus.a << '\t' << c.genus.b << '\t' << c.genus.u1 << '\t' << c.genus.u2 << '\t' << c.genus.u3
                << '\t' << c.hasse << '\t' << to_string(c.normalized_density) << '\n';
    std::cout << "A* = " << to_string(A) << " (closed factor " << to_string(eA) << ")\n";
    std::cout << "B* = " << to_string(B) << " (closed factor " << to_string(eB) << ")\n";
  }
  return (A == eA && B == eB) ? kOk : kMismatch;
}

int local_two_dump(long v, int unit, const std::string& format) {
  if (unit % 2 == 0 || unit < 1 || unit > 7) throw CLI::ValidationError("--unit", "p = 2 takes a unit class 1, 3, 5 or 7");
  PadicSquareclass S{2, v, unit};
  auto genera = enumerate_two_adic_genera(static_cast<int>(v), unit);
  Rational generic = generic_density_two();
  Rational A = A_star_two(S), B = B_star_two(S);
  int eps = unit % 4 == 1 ? 1 : -1;
  Rational eA = A_star_two_factor().expand(static_cast<int>(v))[v];
  Rational eB = B_star_two_factor(eps).expand(static_cast<int>(v))[v];

  // c_2 tallies per partial symbol and scale vector, next to the counting-lemma prediction.
  std::map<std::string, std::pair<C2Distribution, std::optional<C2Distribution>>> tallies;
  for (auto& g : genera) {
    std::string key = g.partial.to_string() + " @";
    for (int k : g.scales) key += " " + std::to_string(k);
    auto& entry = tallies[key];
    (hasse_two(g) == 1 ? entry.first.count_plus : entry.first.count_minus)++;
    entry.second = counting_lemma_distribution(g.partial, g.scales, unit);
  }

  if (format == "json") {
    for (auto& g : genera)
      std::cout << nlohmann::ordered_json{{"genus", g.to_string()},
                                          {"hasse", hasse_two(g)},
                                          {"density", to_string(normalized_density_two(g) / generic)}}
                       .dump()
                << '\n';
    for (auto& [key, e] : tallies) {
      nlohmann::ordered_json j{{"partial", key}, {"c2_plus", e.first.count_plus}, {"c2_minus", e.first.count_minus}};
      if (e.second) j["lemma_plus"] = e.second->count_plus, j["lemma_minus"] = e.second->count_minus;
      std::cout << j.dump() << '\n';
    }
    std::cout << nlohmann::ordered_json{{"A_star", to_string(A)}, {"A_expected", to_string(eA)},
                                        {"B_star", to_string(B)}, {"B_expected", to_string(eB)}}
                     .dump()
              << '\n';
  } else {
    std::cout << "hasse\tdensity\tgenus\n";
    for (auto& g : genera)
      std::cout << hasse_two(g) << '\t' << to_string(normalized_density_two(g) / generic) << '\t' << g.to_string() << '\n';
    std::cout << "\npartial symbol\tc2(+,-)\tcounting lemmas\n";
    for (auto& [key, e] : tallies) {
      std::cout << key << "\t(" << e.first.count_plus << ',' << e.first.count_minus << ")\t";
      if (e.second)
        std::cout << '(' << e.second->count_plus << ',' << e.second->count_minus << ")\n";
      else
        std::cout << "n/a (fused compartment)\n";
    }
    std::cout << "A* = " << to_string(A) << " (closed factor " << to_string(eA) << ")\n";
    std::cout << "B* = " << to_string(B) << " (closed factor " << to_string(eB) << ")\n";
  }
  return (A == eA && B == eB) ? kOk : kMismatch;
}

int cmd_mass(long S, const std::string& format) {
  if (S < 2 || S % 2) throw CLI::ValidationError("--det", "S must be even and at least 2");
  SeriesBundle b = build_mass_series(static_cast<std::size_t>(S));
  MassEntry e = build_mass_table(S).at(S);
  Rational formula = divisor_formula(S);
  if (format == "json") {
    std::cout << nlohmann::ordered_json{{"S", S},
                                        {"classes", e.class_count},
                                        {"primitive_classes", e.primitive_class_count},
                                        {"total_mass", to_string(e.total_mass)},
                                        {"formula", to_string(formula)},
                                        {"primitive_total_mass", to_string(e.primitive_total_mass)},
                                        {"primitive_formula", to_string(b.D_mass_star[S])}}
                     .dump()
              << '\n';
  } else {
    std::cout << "S = " << S << ": " << e.class_count << " classes (" << e.primitive_class_count << " primitive)\n";
    std::cout << "TMass  = " << to_string(e.total_mass) << "  (divisor sum " << to_string(formula) << ")\n";
    std::cout << "TMass* = " << to_string(e.primitive_total_mass) << "  (series " << to_string(b.D_mass_star[S]) << ")\n";
  }
  return (e.total_mass == formula && e.primitive_total_mass == b.D_mass_star[S]) ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Masses of positive definite integer-valued ternary quadratic forms"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env = std::getenv("TERNARY_MASS_CACHE")) cfg.cache_path = env;

  auto even_det = CLI::Validator(
      [](std::string& s) -> std::string {
        long v = 0;
        if (!CLI::detail::lexical_cast(s, v) || v < 2 || v % 2) return "must be an even integer >= 2";
        return "";
      },
      "EVEN>=2");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"table", "json"}));
  };

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate reduced forms into the JSONL cache");
  enumerate->add_option("--max-det", cfg.max_det, "Largest Hessian determinant")->required()->check(even_det);
  enumerate->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
  enumerate->add_option("--cache", cfg.cache_path, "Cache file (TERNARY_MASS_CACHE)");
  add_common(enumerate);

  bool no_build = false;
  auto* verify = app.add_subcommand("verify", "Compare enumerated masses with the mass series");
  verify->add_option("--max-det", cfg.max_det, "Largest Hessian determinant")->required()->check(even_det);
  verify->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--cache", cfg.cache_path, "Cache file (TERNARY_MASS_CACHE)");
  verify->add_flag("--no-build", no_build, "Fail instead of enumerating when the cache is short");
  add_common(verify);

  std::string which;
  std::size_t bound = 0;
  auto* series = app.add_subcommand("series", "Dump Dirichlet series coefficients");
  series->add_option("--which", which, "Series name")->required()->check(CLI::IsMember({"mass", "primitive-mass", "A", "B"}));
  series->add_option("--bound", bound, "Largest index")->required()->check(CLI::PositiveNumber);
  add_common(series);

  std::uint64_t prime = 0;
  long valuation = 0;
  int unit = 1;
  auto* local = app.add_subcommand("local", "Local genera, densities and A*/B* at one prime");
  local->add_option("--prime", prime, "Prime")->required();
  local->add_option("--valuation", valuation, "Valuation of the Hessian determinant")->required()->check(CLI::NonNegativeNumber);
  local->add_option("--unit", unit, "Unit class: +1/-1 at odd p, 1/3/5/7 at p = 2")->required();
  add_common(local);

  long det = 0;
  auto* mass = app.add_subcommand("mass", "Total and primitive mass at one determinant");
  mass->add_option("--det", det, "Hessian determinant S")->required();
  add_common(mass);

  try {
    app.parse(argc, argv);
    if (*enumerate) return cmd_enumerate(cfg);
    if (*verify) return cmd_verify(cfg, no_build);
    if (*series) return cmd_series(which, bound, cfg.format);
    if (*local) {
      if (!is_prime(prime)) throw CLI::ValidationError("--prime", "must be prime");
      return prime == 2 ? local_two_dump(valuation, unit, cfg.format) : local_odd_dump(prime, valuation, unit, cfg.format);
    }
    if (*mass) return cmd_mass(det, cfg.format);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
