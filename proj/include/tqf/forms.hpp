#pragma once

#include "tqf/arith.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tqf {

// Q(x,y,z) = a x^2 + b y^2 + c z^2 + r yz + s xz + t xy
struct TernaryForm {
  long a = 0, b = 0, c = 0, r = 0, s = 0, t = 0;

  using Matrix = std::array<std::array<long, 3>, 3>;
  Matrix hessian() const;
  long value(long x, long y, long z) const;
  TernaryForm transformed(const Matrix& U) const;  // Q(U v)
  long content() const;                            // gcd of the coefficients
  std::string to_string() const;

  auto operator<=>(const TernaryForm&) const = default;
};

long hessian_det(const TernaryForm& f);
bool is_positive_definite(const TernaryForm& f);
// Eisenstein reduction; throws std::invalid_argument unless f is positive definite.
bool is_reduced(const TernaryForm& f);

struct EnumerationOptions {
  long min_det = 1;
  // Multiplies the a*b*c <= det_H / 4 bound; any value >= 1 gives the same output.
  long bound_factor = 1;
  int workers = 0;  // 0: OpenMP default
};

// Reduced positive definite forms with min_det <= det_H <= max_det, ordered by
// det_H and then by (a,b,c,r,s,t).
std::vector<TernaryForm> enumerate_reduced(long max_det, const EnumerationOptions& opt = {});
std::vector<TernaryForm> enumerate_reduced_serial(long max_det, const EnumerationOptions& opt = {});

// Vectors v with Q(v) == m.
std::vector<std::array<long, 3>> vectors_of_value(const TernaryForm& f, long m);
long automorphism_count(const TernaryForm& f);

// Diagonal entries of the Hessian matrix after rational congruence diagonalization.
std::vector<Rational> rational_diagonalization(const TernaryForm& f);
int hasse_invariant_global(const TernaryForm& f, Place v);

struct FormRecord {
  TernaryForm form;
  long det_h = 0;
  long aut = 0;
  bool primitive = true;

  bool operator==(const FormRecord&) const = default;
};

std::vector<FormRecord> build_records(long max_det, const EnumerationOptions& opt = {});
std::vector<FormRecord> build_records_serial(long max_det, const EnumerationOptions& opt = {});

struct MassEntry {
  long class_count = 0;
  long primitive_class_count = 0;
  Rational total_mass = 0;
  Rational primitive_total_mass = 0;

  bool operator==(const MassEntry&) const = default;
};

struct MassTable {
  long max_det = 0;
  std::map<long, MassEntry> by_det;  // every even S <= max_det

  const MassEntry& at(long S) const;
};

MassTable mass_table_from_records(const std::vector<FormRecord>& records, long max_det);
MassTable build_mass_table(long max_det, const EnumerationOptions& opt = {});

// (1/48) sum_{S/2 = a b^2} (a b - b^2); zero for odd S.
Rational divisor_formula(long S);

// JSON lines, one record per line.
void write_jsonl(std::ostream& out, const std::vector<FormRecord>& records);
// Throws FormIoError naming the offending line.
std::vector<FormRecord> read_jsonl(std::istream& in);

struct FormIoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tqf
