#include "tqf/mass_series.hpp"

#include "tqf/local_odd.hpp"
#include "tqf/local_two.hpp"

#include "json.hpp"

#include <iomanip>
#include <ostream>

namespace tqf {

int two_adic_twist(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("index must be positive");
  while (n % 2 == 0) n /= 2;
  return n % 4 == 1 ? 1 : -1;
}

SeriesRoutes build_A_series(std::size_t bound) {
  auto factor = EulerFactorFn::rational(
      [](std::uint64_t p) { return p == 2 ? A_star_two_factor() : A_star_odd_factor(p); });
  DirichletSeries closed = shift_2s(
      convolve(convolve(zeta_shift(1, 1, bound), zeta_shift(2, 3, bound)), invert(zeta_shift(3, 6, bound))));
  return {euler_product(factor, bound), closed};
}

SeriesRoutes build_B_series(std::size_t bound) {
  // The odd factors carry legendre(-1, p) on the linear term; the 2-adic factor
  // undoes their product through the twist.
  auto factor = EulerFactorFn::twisted([](std::uint64_t p, std::uint64_t n) {
    return p == 2 ? B_star_two_factor(two_adic_twist(n)) : B_star_odd_factor(p);
  });
  // (-1)^(1 + sigma_-) = -1 with sigma_- = 0
  DirichletSeries closed =
      shift_2s(convolve(convolve(zeta_shift(2, 2, bound), zeta_shift(1, 2, bound)), invert(zeta_shift(3, 6, bound))))
          .scaled(-1);
  return {twisted_coefficients(factor, bound), closed};
}

SeriesBundle build_mass_series(std::size_t bound) {
  SeriesBundle b;
  b.D_A = build_A_series(bound).local;
  b.D_B = build_B_series(bound).local;

  // Over Q the constant |Delta_F|^{3/2} zeta_F(2) ... of the general mass series
  // reduces to zeta(2) / (2 pi^2 2^{s+2}) = 1 / (48 2^s), so everything stays rational.
  b.D_M_star = DirichletSeries(bound);
  for (std::size_t n = 1; n <= bound; ++n) {
    Rational n2(static_cast<unsigned long>(n));
    n2 *= n2;
    b.D_M_star[n] = n2 * (b.D_A[n] + b.D_B[n]) / 192;
  }

  DirichletSeries plus = convolve(zeta_shift(1, -1, bound), zeta_shift(2, -1, bound));
  DirichletSeries minus = convolve(zeta_shift(2, -2, bound), zeta_shift(1, 0, bound));
  b.D_mass = shift_2s(plus - minus).scaled(make_rational(1, 48));
  b.D_mass_star = convolve(b.D_mass, invert(zeta_shift(3, 0, bound)));
  return b;
}

bool VerifyReport::all_pass() const {
  for (auto& r : rows)
    if (!r.pass) return false;
  return true;
}

std::vector<long> VerifyReport::failing_S() const {
  std::vector<long> out;
  for (auto& r : rows)
    if (!r.pass && (out.empty() || out.back() != r.S)) out.push_back(r.S);
  return out;
}

VerifyReport verify_bundle(const SeriesBundle& bundle, const MassTable& table) {
  long bound = std::min<long>(table.max_det, static_cast<long>(bundle.D_mass.bound()));
  VerifyReport report;
  for (long S = 2; S <= bound; S += 2) {
    const MassEntry& e = table.at(S);
    report.rows.push_back({S, false, e.total_mass, bundle.D_mass[S], e.total_mass == bundle.D_mass[S]});
    report.rows.push_back(
        {S, true, e.primitive_total_mass, bundle.D_mass_star[S], e.primitive_total_mass == bundle.D_mass_star[S]});
  }
  return report;
}

void write_report_table(std::ostream& out, const VerifyReport& report) {
  out << std::left << std::setw(8) << "S" << std::setw(11) << "kind" << std::setw(16) << "enumerated"
      << std::setw(16) << "formula"
      << "result\n";
  for (auto& r : report.rows)
    out << std::setw(8) << r.S << std::setw(11) << (r.primitive ? "primitive" : "total") << std::setw(16)
        << to_string(r.enumerated) << std::setw(16) << to_string(r.formula) << (r.pass ? "pass" : "FAIL") << '\n';
  auto failing = report.failing_S();
  out << (failing.empty() ? "all pass" : "mismatch at S =");
  for (long S : failing) out << ' ' << S;
  out << '\n';
}

void write_report_jsonl(std::ostream& out, const VerifyReport& report) {
  for (auto& r : report.rows) {
    nlohmann::ordered_json j;
    j["S"] = r.S;
    j["kind"] = r.primitive ? "primitive" : "total";
    j["enumerated"] = to_string(r.enumerated);
    j["formula"] = to_string(r.formula);
    j["pass"] = r.pass;
    out << j.dump() << '\n';
  }
}

}  // namespace tqf
