#include "tqf/local_two.hpp"

#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tqf {

namespace {

int mod8(long x) { return static_cast<int>(((x % 8) + 8) % 8); }

const char* separator_text(Separator s) {
  switch (s) {
    case Separator::Comma: return ",";
    case Separator::Semicolon: return ";";
    case Separator::DoubleColon: return "::";
  }
  return "?";
}

PartialGenusSymbol3 symbol(std::initializer_list<PartialBlock> blocks, std::initializer_list<Separator> seps) {
  return PartialGenusSymbol3{blocks, seps};
}

constexpr PartialBlock I1{1, JordanType::I}, I2{2, JordanType::I}, I3{3, JordanType::I};
constexpr PartialBlock II2{2, JordanType::II};
constexpr Separator C = Separator::Comma, S = Separator::Semicolon, D = Separator::DoubleColon;

// Units of a fixed diagonal representative of each realizable constituent.
std::vector<int> block_representative(const TwoAdicConstituent& c) {
  if (c.type == JordanType::II) return c.sign == 1 ? std::vector<int>{7, 1} : std::vector<int>{1, 3};
  int o = mod8(c.oddity);
  if (c.dim == 1) return {o};
  if (c.dim == 2) {
    if (c.sign == 1) {
      if (o == 2) return {1, 1};
      if (o == 6) return {7, 7};
      if (o == 0) return {1, 7};
    } else {
      if (o == 2) return {7, 3};
      if (o == 6) return {1, 5};
      if (o == 4) return {7, 5};
    }
  }
  if (c.dim == 3) {
    static const std::map<int, std::vector<int>> plus{{1, {1, 1, 7}}, {3, {1, 1, 1}}, {5, {7, 7, 7}}, {7, {1, 7, 7}}};
    static const std::map<int, std::vector<int>> minus{{1, {7, 7, 3}}, {3, {1, 7, 3}}, {5, {1, 1, 3}}, {7, {1, 1, 5}}};
    const auto& table = c.sign == 1 ? plus : minus;
    if (auto it = table.find(o); it != table.end()) return it->second;
  }
  throw std::invalid_argument("constituent has no representative");
}

std::vector<std::vector<std::size_t>> compartments(const std::vector<TwoAdicConstituent>& s) {
  std::vector<std::vector<std::size_t>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i].type != JordanType::I) {
      ++i;
      continue;
    }
    std::vector<std::size_t> comp;
    int next_scale = s[i].scale;
    while (i < s.size() && s[i].type == JordanType::I && s[i].scale == next_scale) {
      comp.push_back(i);
      ++i;
      ++next_scale;
    }
    out.push_back(comp);
  }
  return out;
}

std::vector<std::vector<std::size_t>> trains(const std::vector<TwoAdicConstituent>& s) {
  std::vector<std::vector<std::size_t>> out;
  if (s.empty()) return out;
  std::vector<std::size_t> current{0};
  for (std::size_t i = 1; i < s.size(); ++i) {
    int gap = s[i].scale - s[i - 1].scale;
    bool prev_even = s[i - 1].type == JordanType::II, cur_even = s[i].type == JordanType::II;
    if (gap > 2 || (gap == 2 && (prev_even || cur_even)) || (prev_even && cur_even)) {
      out.push_back(current);
      current = {i};
    } else {
      current.push_back(i);
    }
  }
  out.push_back(current);
  return out;
}

// Jordan shapes of primitive forms with ord_2 det_H = nu: the unimodular
// constituent is type II, or it is empty and the scale-1 constituent is type I.
void shapes_rec(int nu, int used_dim, int used_nu, std::vector<std::pair<PartialBlock, int>>& cur,
                std::vector<std::vector<std::pair<PartialBlock, int>>>& out) {
  if (used_dim == 3) {
    if (used_nu == nu) out.push_back(cur);
    return;
  }
  for (PartialBlock b : {I1, I2, I3, II2}) {
    if (used_dim + b.dim > 3) continue;
    int lo, hi;
    if (cur.empty()) {
      lo = hi = (b.type == JordanType::II) ? 0 : 1;
    } else {
      lo = cur.back().second + 1;
      hi = nu;
    }
    for (int k = lo; k <= hi && used_nu + k * b.dim <= nu; ++k) {
      cur.emplace_back(b, k);
      shapes_rec(nu, used_dim + b.dim, used_nu + k * b.dim, cur, out);
      cur.pop_back();
    }
  }
}

std::vector<TwoAdicConstituent> constituent_options(PartialBlock b, int scale) {
  std::vector<TwoAdicConstituent> out;
  for (int sign : {1, -1})
    for (int o = 0; o < 8; ++o) {
      TwoAdicConstituent c{scale, b.dim, b.type, sign, o};
      if (constituent_is_realizable(c)) out.push_back(c);
    }
  return out;
}

std::string canonical_key(int unit, const std::vector<TwoAdicConstituent>& s) {
  std::ostringstream os;
  os << unit;
  for (auto& c : s) os << '|' << c.scale << ',' << c.dim << ',' << (c.type == JordanType::I) << ',' << c.sign << ',' << c.oddity;
  return os.str();
}

bool fused_compartment(const PartialGenusSymbol3& P) {
  for (std::size_t i = 0; i < P.separators.size(); ++i)
    if (P.separators[i] == Separator::Comma && P.blocks[i].type == JordanType::I &&
        P.blocks[i + 1].type == JordanType::I)
      return true;
  return false;
}

// Diagonal factor M(species) of the Conway-Sloane mass.
Rational species_factor(int s) {
  if (s == 0) return 1;
  Rational r(1, 2);
  int a = s < 0 ? -s : s;
  if (a % 2 == 1) {
    for (int i = 2; i < a; i += 2) r /= 1 - pow2(-i);
    return r;
  }
  for (int i = 2; i < a; i += 2) r /= 1 - pow2(-i);
  int sg = s > 0 ? 1 : -1;
  return r / (1 - sg * pow2(-a / 2));
}

}  // namespace

std::string PartialGenusSymbol3::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += separator_text(separators[i - 1]);
    out += std::to_string(blocks[i].dim);
    if (blocks[i].type == JordanType::II) out += "̄";
  }
  return out + ")";
}

int PartialGenusSymbol3::num_trains() const {
  int n = 1;
  for (auto s : separators)
    if (s == Separator::DoubleColon) ++n;
  return n;
}

std::vector<int> PartialGenusSymbol3::train_of_block() const {
  std::vector<int> out{0};
  for (auto s : separators) out.push_back(out.back() + (s == Separator::DoubleColon ? 1 : 0));
  return out;
}

std::vector<PartialGenusSymbol3> partial_symbols() {
  return {
      symbol({I3}, {}),
      symbol({I2, I1}, {C}), symbol({I2, I1}, {S}), symbol({I2, I1}, {D}),
      symbol({II2, I1}, {C}), symbol({II2, I1}, {D}),
      symbol({I1, I2}, {C}), symbol({I1, I2}, {S}), symbol({I1, I2}, {D}),
      symbol({I1, II2}, {C}), symbol({I1, II2}, {D}),
      symbol({I1, I1, I1}, {C, C}), symbol({I1, I1, I1}, {C, S}), symbol({I1, I1, I1}, {S, C}),
      symbol({I1, I1, I1}, {S, S}), symbol({I1, I1, I1}, {C, D}), symbol({I1, I1, I1}, {D, C}),
      symbol({I1, I1, I1}, {D, S}), symbol({I1, I1, I1}, {S, D}), symbol({I1, I1, I1}, {D, D}),
  };
}

PartialGenusSymbol3 partial_symbol_of(const std::vector<PartialBlock>& blocks, const std::vector<int>& scales) {
  if (blocks.size() != scales.size() || blocks.empty()) throw std::invalid_argument("blocks and scales differ in length");
  PartialGenusSymbol3 P{blocks, {}};
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    int gap = scales[i] - scales[i - 1];
    if (gap <= 0) throw std::invalid_argument("scales must increase");
    bool both_odd = blocks[i].type == JordanType::I && blocks[i - 1].type == JordanType::I;
    if (gap == 1)
      P.separators.push_back(Separator::Comma);
    else if (gap == 2 && both_odd)
      P.separators.push_back(Separator::Semicolon);
    else
      P.separators.push_back(Separator::DoubleColon);
  }
  return P;
}

bool constituent_is_realizable(const TwoAdicConstituent& c) {
  if (c.sign != 1 && c.sign != -1) return false;
  if (c.oddity < 0 || c.oddity > 7) return false;
  if (c.type == JordanType::II) return c.dim == 2 && c.oddity == 0;
  switch (c.dim) {
    case 1: return (c.oddity % 2 == 1) && ((c.oddity == 1 || c.oddity == 7) == (c.sign == 1));
    case 2:
      if (c.oddity % 2) return false;
      return c.sign == 1 ? c.oddity != 4 : c.oddity != 0;
    case 3: return c.oddity % 2 == 1;
    default: return false;
  }
}

std::vector<TwoAdicConstituent> canonical_symbol(const std::vector<TwoAdicConstituent>& raw) {
  auto s = raw;
  auto comps = compartments(s);
  for (auto& comp : comps) {
    int total = 0;
    for (auto i : comp) {
      total += s[i].oddity;
      s[i].oddity = 0;
    }
    s[comp.front()].oddity = mod8(total);
  }
  for (auto& tr : trains(s)) {
    for (std::size_t k = tr.size() - 1; k >= 1; --k) {
      std::size_t t1 = tr[k];
      if (s[t1].sign != -1) continue;
      s[t1].sign = 1;
      s[t1 - 1].sign *= -1;
      for (auto& comp : comps) {
        bool touches = false;
        for (auto i : comp) touches = touches || i == t1 || i + 1 == t1;
        if (touches) s[comp.front()].oddity = mod8(s[comp.front()].oddity + 4);
      }
    }
  }
  return s;
}

int TwoAdicGenus::hessian_valuation() const {
  int v = 0;
  for (auto& c : canonical) v += c.scale * c.dim;
  return v;
}

int TwoAdicGenus::overall_sign() const {
  int s = 1;
  for (int t : train_signs) s *= t;
  return s;
}

std::string TwoAdicGenus::to_string() const {
  std::ostringstream os;
  os << partial.to_string() << " scales";
  for (int k : scales) os << ' ' << k;
  os << " symbol";
  for (auto& c : canonical) {
    os << " [2^" << c.scale << ' ' << (c.type == JordanType::I ? "I" : "II") << c.dim << ' '
       << (c.sign == 1 ? '+' : '-');
    if (c.type == JordanType::I) os << " odd " << c.oddity;
    os << ']';
  }
  os << " unit " << unit_det;
  return os.str();
}

TwoAdicGenus make_two_adic_genus(const std::vector<TwoAdicConstituent>& raw) {
  if (raw.empty()) throw std::invalid_argument("empty symbol");
  int dim = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!constituent_is_realizable(raw[i])) throw std::invalid_argument("constituent is not realizable");
    if (i && raw[i].scale <= raw[i - 1].scale) throw std::invalid_argument("constituent scales must increase");
    if (raw[i].scale < 0) throw std::invalid_argument("negative scale");
    dim += raw[i].dim;
  }
  if (dim != 3) throw std::invalid_argument("ternary symbol must have total dimension 3");

  TwoAdicGenus g;
  std::vector<PartialBlock> blocks;
  for (auto& c : raw) {
    blocks.push_back({c.dim, c.type});
    g.scales.push_back(c.scale);
    for (int u : block_representative(c)) {
      g.diagonal_units.push_back(u);
      g.diagonal_exponents.push_back(c.type == JordanType::II ? c.scale + 1 : c.scale);
    }
  }
  g.partial = partial_symbol_of(blocks, g.scales);
  g.canonical = canonical_symbol(raw);
  long det = 1;
  for (int u : g.diagonal_units) det *= u;
  g.unit_det = mod8(det);
  for (auto& tr : trains(g.canonical)) g.train_signs.push_back(g.canonical[tr.front()].sign);
  for (auto& comp : compartments(g.canonical)) g.compartment_oddities.push_back(g.canonical[comp.front()].oddity);
  return g;
}

std::vector<TwoAdicGenus> enumerate_two_adic_genera(int nu, int unit) {
  std::vector<TwoAdicGenus> out;
  if (nu < 0) return out;
  std::vector<std::vector<std::pair<PartialBlock, int>>> shapes;
  std::vector<std::pair<PartialBlock, int>> cur;
  shapes_rec(nu, 0, 0, cur, shapes);
  for (auto& shape : shapes) {
    std::vector<std::vector<TwoAdicConstituent>> options;
    for (auto& [b, k] : shape) options.push_back(constituent_options(b, k));
    std::map<std::string, bool> seen;
    std::vector<std::size_t> idx(options.size(), 0);
    while (true) {
      std::vector<TwoAdicConstituent> raw;
      for (std::size_t i = 0; i < options.size(); ++i) raw.push_back(options[i][idx[i]]);
      TwoAdicGenus g = make_two_adic_genus(raw);
      if (g.unit_det == mod8(unit)) {
        auto key = canonical_key(g.unit_det, g.canonical);
        if (!seen.count(key)) {
          seen[key] = true;
          out.push_back(std::move(g));
        }
      }
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == options[i].size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
  }
  return out;
}

int hasse_two(const std::vector<int>& units, const std::vector<int>& exponents) {
  if (units.size() != exponents.size()) throw std::invalid_argument("units and exponents differ in length");
  for (int u : units)
    if (u % 2 == 0) throw std::invalid_argument("hasse_two needs odd units");
  std::vector<Rational> d;
  for (std::size_t i = 0; i < units.size(); ++i) d.push_back(units[i] * pow2(exponents[i]));
  int c = 1;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) c *= hilbert_symbol(d[i], d[j], Place::at(2));
  return c;
}

int hasse_two_unit_part(const std::vector<int>& units) {
  int c = 1;
  for (std::size_t i = 0; i < units.size(); ++i)
    for (std::size_t j = i + 1; j < units.size(); ++j)
      c *= hilbert_symbol(Rational(units[i]), Rational(units[j]), Place::at(2));
  return c;
}

int hasse_two_valuation_adjustment(const std::vector<int>& units, const std::vector<int>& exponents) {
  // prod_{i<j} (2, u_j^{e_i} u_i^{e_j}) = prod_i (2, u_i)^{sum_{j != i} e_j}
  long total = std::accumulate(exponents.begin(), exponents.end(), 0L);
  int c = 1;
  for (std::size_t i = 0; i < units.size(); ++i)
    if ((total - exponents[i]) % 2 != 0) c *= kronecker_2(Integer(units[i]));
  return c;
}

int hasse_two(const TwoAdicGenus& g) { return hasse_two(g.diagonal_units, g.diagonal_exponents); }

C2Distribution c2_distribution(UnimodularShape shape, int unit_class_mod4) {
  if (unit_class_mod4 != 1 && unit_class_mod4 != -1) throw std::invalid_argument("unit class mod 4 must be +1 or -1");
  bool one = unit_class_mod4 == 1;
  switch (shape) {
    case UnimodularShape::I1_I1_I1: return one ? C2Distribution{1, 3} : C2Distribution{3, 1};
    case UnimodularShape::I2_I1: return one ? C2Distribution{1, 2} : C2Distribution{2, 1};
    case UnimodularShape::I3: return {1, 1};
    case UnimodularShape::II2_I1: return one ? C2Distribution{0, 1} : C2Distribution{1, 0};
  }
  throw std::invalid_argument("unknown unimodular shape");
}

C2Distribution apply_sign_decorations(const C2Distribution& dist, int overall_sign,
                                      bool valuation_adjustment_depends_on_all_trains, int num_trains,
                                      bool adjustment_depends_on_some_train_proper_subset) {
  if (num_trains < 1) throw std::invalid_argument("need at least one train");
  if (overall_sign != 1 && overall_sign != -1) throw std::invalid_argument("overall sign must be +1 or -1");
  if (valuation_adjustment_depends_on_all_trains && adjustment_depends_on_some_train_proper_subset)
    throw std::invalid_argument("adjustment cannot depend on all trains and on a proper subset");
  C2Distribution d = dist;
  if (overall_sign == -1 && valuation_adjustment_depends_on_all_trains) std::swap(d.count_plus, d.count_minus);
  long scale = 1L << (num_trains - 1);
  d.count_plus *= scale;
  d.count_minus *= scale;
  // Averaging happens over all sign decorations at once, so the scaled total is split.
  if (adjustment_depends_on_some_train_proper_subset) {
    long total = d.count_plus + d.count_minus;
    if (total % 2) throw std::logic_error("sign averaging met an odd total");
    d.count_plus = d.count_minus = total / 2;
  }
  return d;
}

SignDecorationInputs sign_decoration_inputs(const PartialGenusSymbol3& P, const std::vector<int>& scales) {
  if (scales.size() != P.blocks.size()) throw std::invalid_argument("one scale per block");
  SignDecorationInputs in;
  int n1 = 0, n2 = 0, n3 = 0, nII = 0;
  for (auto& b : P.blocks) {
    if (b.type == JordanType::II) ++nII;
    else if (b.dim == 1) ++n1;
    else if (b.dim == 2) ++n2;
    else ++n3;
  }
  if (n3 == 1) in.shape = UnimodularShape::I3;
  else if (nII == 1) in.shape = UnimodularShape::II2_I1;
  else if (n2 == 1) in.shape = UnimodularShape::I2_I1;
  else if (n1 == 3) in.shape = UnimodularShape::I1_I1_I1;
  else throw std::invalid_argument("not a ternary partial symbol");
  in.num_trains = P.num_trains();

  auto train = P.train_of_block();
  std::vector<int> exps, owner;
  for (std::size_t i = 0; i < P.blocks.size(); ++i)
    for (int k = 0; k < P.blocks[i].dim; ++k) {
      exps.push_back(P.blocks[i].type == JordanType::II ? scales[i] + 1 : scales[i]);
      owner.push_back(train[i]);
    }
  int total = std::accumulate(exps.begin(), exps.end(), 0);
  for (std::size_t i = 0; i < exps.size(); ++i)
    if ((total - exps[i]) % 2 != 0) {
      bool have = false;
      for (int t : in.dependent_trains) have = have || t == owner[i];
      if (!have) in.dependent_trains.push_back(owner[i]);
    }
  return in;
}

std::optional<C2Distribution> counting_lemma_distribution(const PartialGenusSymbol3& P, const std::vector<int>& scales,
                                                          int unit) {
  if (fused_compartment(P)) return std::nullopt;
  auto in = sign_decoration_inputs(P, scales);
  int u4 = (mod8(unit) % 4 == 1) ? 1 : -1;
  int deps = static_cast<int>(in.dependent_trains.size());
  return apply_sign_decorations(c2_distribution(in.shape, u4), kronecker_2(Integer(unit)), deps == in.num_trains,
                                in.num_trains, deps > 0 && deps < in.num_trains);
}

Rational conway_sloane_two_mass(const std::vector<TwoAdicConstituent>& sym) {
  if (sym.empty()) throw std::invalid_argument("empty symbol");
  int smax = sym.back().scale;
  std::vector<const TwoAdicConstituent*> at(smax + 1, nullptr);
  for (auto& c : sym) at[c.scale] = &c;
  auto odd = [&](int i) { return i >= 0 && i <= smax && at[i] && at[i]->type == JordanType::I; };

  std::vector<int> species;
  if (odd(0)) species.push_back(1);
  for (int i = 0; i <= smax; ++i) {
    const TwoAdicConstituent* c = at[i];
    int d = c ? c->dim : 0;
    bool even = !c || c->type == JordanType::II;
    int two_t = even ? d : 2 * ((d - 1) / 2);
    bool bound;
    if (smax == 0) bound = false;
    else if (i == 0) bound = odd(1);
    else if (i == smax) bound = odd(i - 1);
    else bound = odd(i - 1) || odd(i + 1);
    int octane = c ? mod8(c->oddity + (c->sign == -1 ? 4 : 0)) : 0;
    int sp;
    if (bound || octane == 2 || octane == 6) sp = two_t + 1;
    else if (octane == 0 || octane == 1 || octane == 7) sp = two_t;
    else sp = -two_t;
    species.push_back(sp);
  }
  if (odd(smax)) species.push_back(1);

  Rational diag = 1;
  for (int s : species) diag *= species_factor(s);
  long twice_cross = 0, n2 = 0, n11 = 0;
  for (std::size_t i = 0; i < sym.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) twice_cross += static_cast<long>(sym[i].scale - sym[j].scale) * sym[i].dim * sym[j].dim;
  for (auto& c : sym)
    if (c.type == JordanType::II) n2 += c.dim;
  for (int i = 0; i < smax; ++i)
    if (odd(i) && odd(i + 1)) ++n11;
  if (twice_cross % 2) throw std::logic_error("odd cross exponent");
  return diag * pow2(twice_cross / 2) * pow2(n11 - n2);
}

Rational normalized_density_two(const TwoAdicGenus& g) {
  long ord_det_gram = g.hessian_valuation() - 3;
  Rational beta_inv = 2 * pow2(-2 * ord_det_gram) * conway_sloane_two_mass(g.canonical);
  return Rational(3, 4) * beta_inv;
}

Rational generic_density_two() {
  static const Rational value = normalized_density_two(make_two_adic_genus(
      {TwoAdicConstituent{0, 2, JordanType::II, 1, 0}, TwoAdicConstituent{1, 1, JordanType::I, 1, 7}}));
  return value;
}

Rational A_star_two(const PadicSquareclass& S) {
  if (S.prime != 2) throw std::invalid_argument("A_star_two needs a squareclass at 2");
  Rational sum = 0;
  for (auto& g : enumerate_two_adic_genera(static_cast<int>(S.valuation), S.unit_class)) sum += normalized_density_two(g);
  return sum / generic_density_two();
}

Rational B_star_two(const PadicSquareclass& S) {
  if (S.prime != 2) throw std::invalid_argument("B_star_two needs a squareclass at 2");
  Rational sum = 0;
  for (auto& g : enumerate_two_adic_genera(static_cast<int>(S.valuation), S.unit_class))
    sum += hasse_two(g) * normalized_density_two(g);
  return sum / generic_density_two();
}

RationalFunction A_star_two_factor() {
  RationalFunction f;
  f.num = {0, 1, 0, 0, Rational(-1, 64)};
  f.den = poly_mul({1, Rational(-1, 2)}, {1, 0, Rational(-1, 8)});
  return f;
}

RationalFunction B_star_two_factor(int eps) {
  if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1");
  RationalFunction f;
  f.num = {0, -eps, Rational(-eps, 4), Rational(-eps, 16)};
  f.den = {1, 0, Rational(-1, 4)};
  return f;
}

}  // namespace tqf
