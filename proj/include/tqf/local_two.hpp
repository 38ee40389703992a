#pragma once

#include "tqf/arith.hpp"
#include "tqf/dirichlet.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tqf {

enum class JordanType { I, II };
enum class Separator { Comma, Semicolon, DoubleColon };

struct PartialBlock {
  int dim = 1;
  JordanType type = JordanType::I;
  bool operator==(const PartialBlock&) const = default;
};

struct PartialGenusSymbol3 {
  std::vector<PartialBlock> blocks;
  std::vector<Separator> separators;  // blocks.size() - 1 entries

  std::string to_string() const;  // e.g. "(1;1::1)", "(2b,1)" with b marking type II
  int num_trains() const;
  std::vector<int> train_of_block() const;
  bool operator==(const PartialGenusSymbol3&) const = default;
};

// The 20 symbols, in the classical listing order.
std::vector<PartialGenusSymbol3> partial_symbols();

// Separator between consecutive blocks at the given scale exponents.
PartialGenusSymbol3 partial_symbol_of(const std::vector<PartialBlock>& blocks, const std::vector<int>& scales);

// One Jordan constituent 2^scale * U of the Hessian lattice.
struct TwoAdicConstituent {
  int scale = 0;
  int dim = 1;
  JordanType type = JordanType::I;
  int sign = 1;
  int oddity = 0;  // mod 8; 0 for type II
  bool operator==(const TwoAdicConstituent&) const = default;
};

// Validity of a single constituent's (sign, oddity) pair.
bool constituent_is_realizable(const TwoAdicConstituent& c);

// Canonical form (oddity fusion and sign walking) of a raw constituent list.
std::vector<TwoAdicConstituent> canonical_symbol(const std::vector<TwoAdicConstituent>& raw);

struct TwoAdicGenus {
  PartialGenusSymbol3 partial;
  std::vector<int> scales;                     // per block, exponents for the Hessian lattice
  std::vector<TwoAdicConstituent> canonical;   // per block
  std::vector<int> train_signs;                // one per train
  std::vector<int> compartment_oddities;       // one per compartment
  int unit_det = 1;                            // normalized unit determinant mod 8
  // A diagonalization over Q_2 of the Hessian matrix: entries 2^exponents[i] * units[i].
  std::vector<int> diagonal_units;
  std::vector<int> diagonal_exponents;

  int hessian_valuation() const;
  int overall_sign() const;
  std::string to_string() const;
};

// Builds the genus of a raw decoration (each constituent realizable); the diagonal
// comes from fixed block representatives.
TwoAdicGenus make_two_adic_genus(const std::vector<TwoAdicConstituent>& raw);

// Every genus of primitive Z_2-valued ternary forms whose Hessian determinant has
// 2-adic valuation nu and unit part unit (mod 8).  Deterministic order.
std::vector<TwoAdicGenus> enumerate_two_adic_genera(int nu, int unit);

int hasse_two(const std::vector<int>& units, const std::vector<int>& exponents);
// c_{2,unit} and the valuation adjustment separately; their product is hasse_two.
int hasse_two_unit_part(const std::vector<int>& units);
int hasse_two_valuation_adjustment(const std::vector<int>& units, const std::vector<int>& exponents);
int hasse_two(const TwoAdicGenus& g);

enum class UnimodularShape { I3, I2_I1, I1_I1_I1, II2_I1 };

struct C2Distribution {
  long count_plus = 0;
  long count_minus = 0;
  bool operator==(const C2Distribution&) const = default;
};

C2Distribution c2_distribution(UnimodularShape shape, int unit_class_mod4);

C2Distribution apply_sign_decorations(const C2Distribution& dist, int overall_sign,
                                      bool valuation_adjustment_depends_on_all_trains, int num_trains,
                                      bool adjustment_depends_on_some_train_proper_subset);

// The counting-lemma prediction for a partial symbol at given scales and unit class,
// or nullopt when the averaging step meets an odd total.
struct SignDecorationInputs {
  UnimodularShape shape;
  int num_trains = 1;
  std::vector<int> dependent_trains;
};
SignDecorationInputs sign_decoration_inputs(const PartialGenusSymbol3& P, const std::vector<int>& scales);
std::optional<C2Distribution> counting_lemma_distribution(const PartialGenusSymbol3& P, const std::vector<int>& scales,
                                                          int unit);

// (1 - 2^{-2}) beta^{-1} from the Conway-Sloane 2-adic mass.
Rational normalized_density_two(const TwoAdicGenus& g);
Rational conway_sloane_two_mass(const std::vector<TwoAdicConstituent>& symbol);

// Generic normalized density at 2; A* and B* are measured in units of it.
Rational generic_density_two();

// S: squareclass of the Hessian determinant at 2.
Rational A_star_two(const PadicSquareclass& S);
Rational B_star_two(const PadicSquareclass& S);

RationalFunction A_star_two_factor();
// eps = (-1, S)_2 of the global index.
RationalFunction B_star_two_factor(int eps);

}  // namespace tqf
