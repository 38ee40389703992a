#pragma once

#include "tqf/dirichlet.hpp"
#include "tqf/forms.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tqf {

// Both constructions of one global series.
struct SeriesRoutes {
  DirichletSeries local;   // Euler product of the local factors
  DirichletSeries closed;  // zeta products
  bool agree() const { return local == closed; }
};

// sum over n of A*(n) n^{-s} = zeta(s+1) zeta(2s+3) / (2^s zeta(3s+6))
SeriesRoutes build_A_series(std::size_t bound);
// sum over n of B*(n) n^{-s} = -zeta(2s+2) zeta(s+2) / (2^s zeta(3s+6)) for positive definite forms
SeriesRoutes build_B_series(std::size_t bound);

// (-1, odd part of n)_2, the sign the 2-adic B factor sees for global index n.
int two_adic_twist(std::uint64_t n);

// c * zeta(k); kept symbolic because it cancels against pi^2 over Q.
struct ZetaMultiple {
  Rational coefficient;
  int zeta_argument = 2;
};

struct SeriesBundle {
  DirichletSeries D_A{1};
  DirichletSeries D_B{1};
  DirichletSeries D_M_star{1};     // n^2 (A*(n) + B*(n)) / 192
  DirichletSeries D_mass{1};       // (1/(48 2^s)) [zeta(s-1) zeta(2s-1) - zeta(2s-2) zeta(s)]
  DirichletSeries D_mass_star{1};  // D_mass / zeta(3s)
  ZetaMultiple kappa3{2, 2};
};

SeriesBundle build_mass_series(std::size_t bound);

struct VerifyRow {
  long S = 0;
  bool primitive = false;
  Rational enumerated;
  Rational formula;
  bool pass = false;
};

struct VerifyReport {
  std::vector<VerifyRow> rows;
  bool all_pass() const;
  std::vector<long> failing_S() const;
};

// Compares the table against D_mass and D_mass_star at every even S up to the common bound.
VerifyReport verify_bundle(const SeriesBundle& bundle, const MassTable& table);

void write_report_table(std::ostream& out, const VerifyReport& report);
void write_report_jsonl(std::ostream& out, const VerifyReport& report);

}  // namespace tqf
