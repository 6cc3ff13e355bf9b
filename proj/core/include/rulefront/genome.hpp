#pragma once

#include <bitset>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rulefront/indicators.hpp"
#include "rulefront/rng.hpp"

namespace rulefront {

// 52-bit strategy chromosome:
//
//   [buy structure : 17][buy active : 9][sell structure : 17][sell active : 9]
//
// where each structure block is 9 required-value bits followed by 8
// connector bits. Connector bits are carried for layout fidelity but are
// never varied: they are pinned to the fixed grouping (AND inside the
// momentum and reversal groups, OR between them), so the searchable part of
// the genome is the 36 decision bits: required + active per half.
class Genome {
 public:
  static constexpr std::size_t kBits = 52;
  static constexpr std::size_t kDecisionBits = 36;

  Genome() = default;

  // Builds a genome from its decision bits, in order: buy required (9),
  // buy active (9), sell required (9), sell active (9). Connectors are set
  // to the fixed pattern. Does not check the non-empty-active invariant.
  static Genome from_decision_bits(const std::bitset<kDecisionBits>& decisions);

  // Parses a 52-character '0'/'1' string in layout order. Connector bits in
  // the input are ignored and re-pinned. Throws InvalidGenome on bad length,
  // bad characters, or an empty active half.
  static Genome from_string(std::string_view text);

  std::string to_string() const;

  // The full bit pattern packed little-end-first; usable as a hash/map key.
  std::uint64_t key() const { return bits_.to_ullong(); }

  bool operator==(const Genome& other) const { return bits_ == other.bits_; }

  bool buy_required(std::size_t indicator) const { return bits_[indicator]; }
  bool buy_active(std::size_t indicator) const { return bits_[17 + indicator]; }
  bool sell_required(std::size_t indicator) const { return bits_[26 + indicator]; }
  bool sell_active(std::size_t indicator) const { return bits_[43 + indicator]; }

  void set_buy_required(std::size_t indicator, bool v) { bits_[indicator] = v; }
  void set_buy_active(std::size_t indicator, bool v) { bits_[17 + indicator] = v; }
  void set_sell_required(std::size_t indicator, bool v) { bits_[26 + indicator] = v; }
  void set_sell_active(std::size_t indicator, bool v) { bits_[43 + indicator] = v; }

  bool decision_bit(std::size_t d) const { return bits_[decision_bit_position(d)]; }
  void set_decision_bit(std::size_t d, bool v) { bits_[decision_bit_position(d)] = v; }

  // Maps a decision-bit index (0..35) to its position in the 52-bit layout.
  static std::size_t decision_bit_position(std::size_t d);

  bool buy_half_nonempty() const;
  bool sell_half_nonempty() const;
  bool valid() const { return buy_half_nonempty() && sell_half_nonempty(); }

  // Copy with required bits of inactive indicators cleared (connectors are
  // already pinned). encode() emits genomes in this form.
  Genome normalized() const;

  // Re-pins the connector bits. from_decision_bits/from_string already do.
  void pin_connectors();

 private:
  std::bitset<kBits> bits_;
};

struct RuleLiteral {
  IndicatorKind kind;
  bool required;
};

// One side of a strategy: a conjunction over the active momentum indicators
// OR a conjunction over the active reversal indicators. An empty clause is
// vacuously false; the genome invariant guarantees at least one literal per
// side overall.
struct RuleSide {
  std::vector<RuleLiteral> momentum;
  std::vector<RuleLiteral> reversal;

  bool empty() const { return momentum.empty() && reversal.empty(); }
};

struct StrategyRules {
  RuleSide buy;
  RuleSide sell;
};

enum class FinalSignal : int { sell = -1, hold = 0, buy = 1 };

inline int position_of(FinalSignal s) { return static_cast<int>(s); }

StrategyRules decode(const Genome& genome);

// Inverse of decode. The result has pinned connectors and zeroed inactive
// required bits, so encode(decode(g)) == g.normalized().
Genome encode(const StrategyRules& rules);

// Evaluates both sides against the signal row at day t and applies the
// buy/sell truth table. Masked indicator cells read as signal absent.
FinalSignal eval_day(const StrategyRules& rules, const SignalMatrix& signals, std::size_t t);

std::vector<FinalSignal> signal_series(const StrategyRules& rules, const SignalMatrix& signals);
std::vector<FinalSignal> signal_series(const Genome& genome, const SignalMatrix& signals);

// Renders one side as text, e.g.
//   IF SMA_buy = 1.0 AND MO_buy = 0.0 OR RSI_buy = 1.0
// side_suffix is "buy" or "sell".
std::string render_rule(const RuleSide& side, std::string_view side_suffix);

// Uniform random decision bits, re-drawn until both active halves are
// non-empty.
Genome random_genome(Rng& rng);

// Single-point crossover over the 36 decision bits; cut 0 reproduces the
// parents. Children are repaired before being returned.
std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, Rng& rng);

// With probability rate flips exactly one uniformly chosen decision bit,
// then repairs. Otherwise returns the genome unchanged.
Genome mutate(const Genome& genome, Rng& rng, double rate);

// If an active half is empty, activates one uniformly chosen indicator in
// that half.
void repair(Genome& genome, Rng& rng);

}  // namespace rulefront
