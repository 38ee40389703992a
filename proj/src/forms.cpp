#include "tqf/forms.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace tqf {

namespace {

long isqrt(long n) {
  if (n < 0) return -1;
  long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

long bilinear(const TernaryForm::Matrix& H, const std::array<long, 3>& u, const std::array<long, 3>& v) {
  long acc = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc += u[i] * H[i][j] * v[j];
  return acc;
}

int thread_count(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

// All reduced forms with leading pair (a, b) inside the search box.
void collect_for_pair(long a, long b, long max_det, const EnumerationOptions& opt, std::vector<TernaryForm>& out) {
  long box = opt.bound_factor * max_det;  // 4abc <= box
  for (long c = b; 4 * a * b * c <= box; ++c)
    for (long t = -a; t <= a; ++t)
      for (long s = -a; s <= a; ++s)
        for (long r = -b; r <= b; ++r) {
          bool all_pos = r > 0 && s > 0 && t > 0, all_nonpos = r <= 0 && s <= 0 && t <= 0;
          if (!all_pos && !all_nonpos) continue;
          TernaryForm f{a, b, c, r, s, t};
          long d = hessian_det(f);
          if (d < opt.min_det || d > max_det) continue;
          if (!is_positive_definite(f) || !is_reduced(f)) continue;
          out.push_back(f);
        }
}

std::vector<std::pair<long, long>> leading_pairs(long max_det, const EnumerationOptions& opt) {
  if (max_det < 2) throw std::invalid_argument("max_det must be at least 2");
  if (opt.bound_factor < 1) throw std::invalid_argument("bound_factor must be at least 1");
  long box = opt.bound_factor * max_det;
  std::vector<std::pair<long, long>> pairs;
  for (long a = 1; 4 * a * a * a <= box; ++a)
    for (long b = a; 4 * a * b * b <= box; ++b) pairs.emplace_back(a, b);
  return pairs;
}

void sort_forms(std::vector<TernaryForm>& forms) {
  std::sort(forms.begin(), forms.end(), [](const TernaryForm& x, const TernaryForm& y) {
    long dx = hessian_det(x), dy = hessian_det(y);
    return dx != dy ? dx < dy : x < y;
  });
}

}  // namespace

TernaryForm::Matrix TernaryForm::hessian() const {
  return {{{2 * a, t, s}, {t, 2 * b, r}, {s, r, 2 * c}}};
}

long TernaryForm::value(long x, long y, long z) const {
  return a * x * x + b * y * y + c * z * z + r * y * z + s * x * z + t * x * y;
}

TernaryForm TernaryForm::transformed(const Matrix& U) const {
  Matrix H = hessian(), HU{}, G{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) HU[i][j] += H[i][k] * U[k][j];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) G[i][j] += U[k][i] * HU[k][j];
  return {G[0][0] / 2, G[1][1] / 2, G[2][2] / 2, G[1][2], G[0][2], G[0][1]};
}

long TernaryForm::content() const {
  long g = 0;
  for (long x : {a, b, c, r, s, t}) g = std::gcd(g, x);
  return g;
}

std::string TernaryForm::to_string() const {
  std::ostringstream os;
  os << '(' << a << ',' << b << ',' << c << ',' << r << ',' << s << ',' << t << ')';
  return os.str();
}

long hessian_det(const TernaryForm& f) {
  return 8 * f.a * f.b * f.c + 2 * f.r * f.s * f.t - 2 * f.a * f.r * f.r - 2 * f.b * f.s * f.s - 2 * f.c * f.t * f.t;
}

bool is_positive_definite(const TernaryForm& f) {
  return f.a > 0 && 4 * f.a * f.b - f.t * f.t > 0 && hessian_det(f) > 0;
}

bool is_reduced(const TernaryForm& f) {
  if (!is_positive_definite(f)) throw std::invalid_argument("is_reduced needs a positive definite form");
  const long a = f.a, b = f.b, c = f.c, r = f.r, s = f.s, t = f.t;
  if (!((r > 0 && s > 0 && t > 0) || (r <= 0 && s <= 0 && t <= 0))) return false;
  if (!(a <= b && b <= c)) return false;
  if (!(b >= std::abs(r) && a >= std::abs(s) && a >= std::abs(t))) return false;
  if (a + b + r + s + t < 0) return false;
  // Boundary tie-breaking, one representative per class.
  if (a == t && s > 2 * r) return false;
  if (a == s && t > 2 * r) return false;
  if (b == r && t > 2 * s) return false;
  if (a == -t && s != 0) return false;
  if (a == -s && t != 0) return false;
  if (b == -r && t != 0) return false;
  if (a + b + r + s + t == 0 && 2 * a + 2 * s + t > 0) return false;
  if (a == b && std::abs(r) > std::abs(s)) return false;
  if (b == c && std::abs(s) > std::abs(t)) return false;
  return true;
}

std::vector<TernaryForm> enumerate_reduced_serial(long max_det, const EnumerationOptions& opt) {
  std::vector<TernaryForm> out;
  for (auto [a, b] : leading_pairs(max_det, opt)) collect_for_pair(a, b, max_det, opt, out);
  sort_forms(out);
  return out;
}

std::vector<TernaryForm> enumerate_reduced(long max_det, const EnumerationOptions& opt) {
  auto pairs = leading_pairs(max_det, opt);
  std::vector<std::vector<TernaryForm>> parts(pairs.size());
  const long n = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(opt.workers))
  for (long i = 0; i < n; ++i) collect_for_pair(pairs[i].first, pairs[i].second, max_det, opt, parts[i]);
  std::vector<TernaryForm> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  sort_forms(out);
  return out;
}

std::vector<std::array<long, 3>> vectors_of_value(const TernaryForm& f, long m) {
  if (!is_positive_definite(f)) throw std::invalid_argument("short vectors need a positive definite form");
  std::vector<std::array<long, 3>> out;
  if (m < 0) return out;
  auto H = f.hessian();
  long det = hessian_det(f);
  // x_i^2 <= 2m (H^{-1})_{ii} = 2m adj(H)_{ii} / det H
  long adj22 = H[0][0] * H[2][2] - H[0][2] * H[0][2];
  long adj33 = H[0][0] * H[1][1] - H[0][1] * H[0][1];
  long y_max = isqrt(2 * m * adj22 / det), z_max = isqrt(2 * m * adj33 / det);
  for (long y = -y_max; y <= y_max; ++y)
    for (long z = -z_max; z <= z_max; ++z) {
      // a x^2 + B x + C = 0
      long B = f.t * y + f.s * z;
      long C = f.b * y * y + f.c * z * z + f.r * y * z - m;
      long disc = B * B - 4 * f.a * C;
      long root = isqrt(disc);
      if (root < 0 || root * root != disc) continue;
      for (long num : {-B + root, -B - root}) {
        if (num % (2 * f.a)) continue;
        out.push_back({num / (2 * f.a), y, z});
        if (root == 0) break;
      }
    }
  return out;
}

long automorphism_count(const TernaryForm& f) {
  auto H = f.hessian();
  auto v1s = vectors_of_value(f, f.a), v2s = vectors_of_value(f, f.b), v3s = vectors_of_value(f, f.c);
  long count = 0;
  for (auto& v1 : v1s)
    for (auto& v2 : v2s) {
      if (bilinear(H, v1, v2) != H[0][1]) continue;
      for (auto& v3 : v3s)
        if (bilinear(H, v1, v3) == H[0][2] && bilinear(H, v2, v3) == H[1][2]) ++count;
    }
  return count;
}

std::vector<Rational> rational_diagonalization(const TernaryForm& f) {
  auto Hi = f.hessian();
  std::array<std::array<Rational, 3>, 3> M;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M[i][j] = Hi[i][j];
  auto add_to = [&](int i, int j) {  // e_i += e_j
    for (int k = 0; k < 3; ++k) M[i][k] += M[j][k];
    for (int k = 0; k < 3; ++k) M[k][i] += M[k][j];
  };
  auto swap_basis = [&](int i, int j) {
    std::swap(M[i], M[j]);
    for (int k = 0; k < 3; ++k) std::swap(M[k][i], M[k][j]);
  };
  std::vector<Rational> diag;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3 && M[i][i] == 0; ++j)
      if (M[j][j] != 0) swap_basis(i, j);
    // All remaining diagonal entries vanish; e_i + e_j has value 2 M[i][j].
    for (int j = i + 1; j < 3 && M[i][i] == 0; ++j)
      if (M[i][j] != 0) add_to(i, j);
    if (M[i][i] == 0) throw std::invalid_argument("degenerate form");
    for (int j = i + 1; j < 3; ++j) {
      Rational k = M[j][i] / M[i][i];
      for (int c = 0; c < 3; ++c) M[j][c] -= k * M[i][c];
      for (int rr = 0; rr < 3; ++rr) M[rr][j] -= k * M[rr][i];
    }
    diag.push_back(M[i][i]);
  }
  return diag;
}

int hasse_invariant_global(const TernaryForm& f, Place v) {
  auto d = rational_diagonalization(f);
  int c = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) c *= hilbert_symbol(d[i], d[j], v);
  return c;
}

namespace {

FormRecord record_of(const TernaryForm& f) {
  return {f, hessian_det(f), automorphism_count(f), f.content() == 1};
}

}  // namespace

std::vector<FormRecord> build_records_serial(long max_det, const EnumerationOptions& opt) {
  std::vector<FormRecord> out;
  for (auto& f : enumerate_reduced_serial(max_det, opt)) out.push_back(record_of(f));
  return out;
}

std::vector<FormRecord> build_records(long max_det, const EnumerationOptions& opt) {
  auto forms = enumerate_reduced(max_det, opt);
  std::vector<FormRecord> out(forms.size());
  const long n = static_cast<long>(forms.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(thread_count(opt.workers))
  for (long i = 0; i < n; ++i) out[i] = record_of(forms[i]);
  return out;
}

const MassEntry& MassTable::at(long S) const {
  auto it = by_det.find(S);
  if (it == by_det.end()) throw std::out_of_range("no mass table entry for S = " + std::to_string(S));
  return it->second;
}

MassTable mass_table_from_records(const std::vector<FormRecord>& records, long max_det) {
  if (max_det < 2 || max_det % 2) throw std::invalid_argument("max_det must be even and at least 2");
  MassTable table;
  table.max_det = max_det;
  for (long S = 2; S <= max_det; S += 2) table.by_det[S];
  for (auto& rec : records) {
    if (rec.det_h > max_det) continue;
    auto& e = table.by_det.at(rec.det_h);
    Rational w(1, rec.aut);
    ++e.class_count;
    e.total_mass += w;
    if (rec.primitive) {
      ++e.primitive_class_count;
      e.primitive_total_mass += w;
    }
  }
  return table;
}

MassTable build_mass_table(long max_det, const EnumerationOptions& opt) {
  return mass_table_from_records(build_records(max_det, opt), max_det);
}

Rational divisor_formula(long S) {
  if (S <= 0) throw std::invalid_argument("divisor_formula needs a positive S");
  if (S % 2) return 0;
  long half = S / 2;
  long sum = 0;
  for (long b = 1; b * b <= half; ++b) {
    if (half % (b * b)) continue;
    long a = half / (b * b);
    sum += a * b - b * b;
  }
  return make_rational(sum, 48);
}

}  // namespace tqf
