#include "rulefront/genome.hpp"

#include <array>

#include "rulefront/errors.hpp"

namespace rulefront {

namespace {

// Connector bits are AND (0) inside each indicator group and OR (1) at the
// single momentum/reversal boundary. Connector j sits between indicators j
// and j + 1.
constexpr std::array<bool, 8> kConnectorPattern = {false, false, false, true,
                                                   false, false, false, false};

constexpr std::size_t kBuyConnectorOffset = 9;
constexpr std::size_t kSellConnectorOffset = 35;

bool half_nonempty(const Genome& g, bool buy_side) {
  for (std::size_t k = 0; k < kIndicatorCount; ++k) {
    if (buy_side ? g.buy_active(k) : g.sell_active(k)) return true;
  }
  return false;
}

}  // namespace

std::size_t Genome::decision_bit_position(std::size_t d) {
  // Decision-bit order: buy required, buy active, sell required, sell active.
  if (d < 9) return d;
  if (d < 18) return 17 + (d - 9);
  if (d < 27) return 26 + (d - 18);
  return 43 + (d - 27);
}

Genome Genome::from_decision_bits(const std::bitset<kDecisionBits>& decisions) {
  Genome g;
  for (std::size_t d = 0; d < kDecisionBits; ++d) {
    g.bits_[decision_bit_position(d)] = decisions[d];
  }
  g.pin_connectors();
  return g;
}

Genome Genome::from_string(std::string_view text) {
  if (text.size() != kBits) {
    throw InvalidGenomeError("expected " + std::to_string(kBits) + " characters, got " +
                             std::to_string(text.size()));
  }
  Genome g;
  for (std::size_t i = 0; i < kBits; ++i) {
    if (text[i] == '1') {
      g.bits_[i] = true;
    } else if (text[i] != '0') {
      throw InvalidGenomeError("invalid character at position " + std::to_string(i));
    }
  }
  g.pin_connectors();
  if (!g.valid()) {
    throw InvalidGenomeError("each side must activate at least one indicator");
  }
  return g;
}

std::string Genome::to_string() const {
  std::string out(kBits, '0');
  for (std::size_t i = 0; i < kBits; ++i) {
    if (bits_[i]) out[i] = '1';
  }
  return out;
}

bool Genome::buy_half_nonempty() const { return half_nonempty(*this, true); }
bool Genome::sell_half_nonempty() const { return half_nonempty(*this, false); }

Genome Genome::normalized() const {
  Genome g = *this;
  for (std::size_t k = 0; k < kIndicatorCount; ++k) {
    if (!g.buy_active(k)) g.set_buy_required(k, false);
    if (!g.sell_active(k)) g.set_sell_required(k, false);
  }
  return g;
}

void Genome::pin_connectors() {
  for (std::size_t j = 0; j < kConnectorPattern.size(); ++j) {
    bits_[kBuyConnectorOffset + j] = kConnectorPattern[j];
    bits_[kSellConnectorOffset + j] = kConnectorPattern[j];
  }
}

namespace {

RuleSide decode_side(const Genome& g, bool buy_side) {
  RuleSide side;
  for (std::size_t k = 0; k < kIndicatorCount; ++k) {
    const bool active = buy_side ? g.buy_active(k) : g.sell_active(k);
    if (!active) continue;
    const bool required = buy_side ? g.buy_required(k) : g.sell_required(k);
    RuleLiteral lit{static_cast<IndicatorKind>(k), required};
    if (k < kMomentumGroupSize) {
      side.momentum.push_back(lit);
    } else {
      side.reversal.push_back(lit);
    }
  }
  return side;
}

// A literal asks whether the indicator's flag equals its required value;
// on masked days the flag reads false.
bool literal_holds(const RuleLiteral& lit, bool flag) { return flag == lit.required; }

bool clause_holds(const std::vector<RuleLiteral>& clause, const SignalMatrix& signals,
                  std::size_t t, bool buy_side) {
  if (clause.empty()) return false;
  for (const auto& lit : clause) {
    const bool flag = buy_side ? signals.buy(t, lit.kind) : signals.sell(t, lit.kind);
    if (!literal_holds(lit, flag)) return false;
  }
  return true;
}

bool side_holds(const RuleSide& side, const SignalMatrix& signals, std::size_t t,
                bool buy_side) {
  return clause_holds(side.momentum, signals, t, buy_side) ||
         clause_holds(side.reversal, signals, t, buy_side);
}

}  // namespace

StrategyRules decode(const Genome& genome) {
  return {decode_side(genome, true), decode_side(genome, false)};
}

Genome encode(const StrategyRules& rules) {
  Genome g;
  for (const auto* clause : {&rules.buy.momentum, &rules.buy.reversal}) {
    for (const auto& lit : *clause) {
      const auto k = static_cast<std::size_t>(lit.kind);
      g.set_buy_active(k, true);
      g.set_buy_required(k, lit.required);
    }
  }
  for (const auto* clause : {&rules.sell.momentum, &rules.sell.reversal}) {
    for (const auto& lit : *clause) {
      const auto k = static_cast<std::size_t>(lit.kind);
      g.set_sell_active(k, true);
      g.set_sell_required(k, lit.required);
    }
  }
  g.pin_connectors();
  return g;
}

FinalSignal eval_day(const StrategyRules& rules, const SignalMatrix& signals, std::size_t t) {
  const bool buy = side_holds(rules.buy, signals, t, true);
  const bool sell = side_holds(rules.sell, signals, t, false);
  if (buy && !sell) return FinalSignal::buy;
  if (sell && !buy) return FinalSignal::sell;
  return FinalSignal::hold;
}

std::vector<FinalSignal> signal_series(const StrategyRules& rules, const SignalMatrix& signals) {
  std::vector<FinalSignal> out(signals.days());
  for (std::size_t t = 0; t < signals.days(); ++t) {
    out[t] = eval_day(rules, signals, t);
  }
  return out;
}

std::vector<FinalSignal> signal_series(const Genome& genome, const SignalMatrix& signals) {
  return signal_series(decode(genome), signals);
}

std::string render_rule(const RuleSide& side, std::string_view side_suffix) {
  std::string out = "IF ";
  bool first = true;
  auto append_clause = [&](const std::vector<RuleLiteral>& clause) {
    if (clause.empty()) return;
    if (!first) out += " OR ";
    for (std::size_t i = 0; i < clause.size(); ++i) {
      if (i > 0) out += " AND ";
      out += indicator_short_name(clause[i].kind);
      out += '_';
      out += side_suffix;
      out += " = ";
      out += clause[i].required ? "1.0" : "0.0";
    }
    first = false;
  };
  append_clause(side.momentum);
  append_clause(side.reversal);
  return out;
}

Genome random_genome(Rng& rng) {
  while (true) {
    std::bitset<Genome::kDecisionBits> decisions;
    for (std::size_t d = 0; d < Genome::kDecisionBits; ++d) {
      decisions[d] = rng.coin_flip();
    }
    Genome g = Genome::from_decision_bits(decisions);
    if (g.valid()) return g;
  }
}

void repair(Genome& genome, Rng& rng) {
  if (!genome.buy_half_nonempty()) {
    genome.set_buy_active(rng.uniform_index(kIndicatorCount), true);
  }
  if (!genome.sell_half_nonempty()) {
    genome.set_sell_active(rng.uniform_index(kIndicatorCount), true);
  }
}

std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, Rng& rng) {
  const std::size_t cut = rng.uniform_index(Genome::kDecisionBits);
  Genome c1;
  Genome c2;
  for (std::size_t d = 0; d < Genome::kDecisionBits; ++d) {
    const bool from_a = d < cut;
    c1.set_decision_bit(d, from_a ? a.decision_bit(d) : b.decision_bit(d));
    c2.set_decision_bit(d, from_a ? b.decision_bit(d) : a.decision_bit(d));
  }
  c1.pin_connectors();
  c2.pin_connectors();
  repair(c1, rng);
  repair(c2, rng);
  return {c1, c2};
}

Genome mutate(const Genome& genome, Rng& rng, double rate) {
  if (!rng.bernoulli(rate)) return genome;
  Genome g = genome;
  const std::size_t d = rng.uniform_index(Genome::kDecisionBits);
  g.set_decision_bit(d, !g.decision_bit(d));
  repair(g, rng);
  return g;
}

}  // namespace rulefront
