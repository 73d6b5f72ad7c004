#pragma once

// Mutations of exceptional objects at the level of the Grothendieck group:
//   L_E F = F - chi(E, F) E,   R_E F = F - chi(F, E) E.

#include "kmut/errors.hpp"
#include "kmut/ktheory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kmut::mut {

using kt::KClass;

inline KClass left_mutate(const KClass& f, const KClass& e) {
  return f - kt::chi_pair(e, f) * e;
}

inline KClass right_mutate(const KClass& f, const KClass& e) {
  return f - kt::chi_pair(f, e) * e;
}

/// sign = +1 tensors with K, sign = -1 with K^{-1}.
inline KClass serre_twist(const KClass& f, int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("serre_twist: sign must be +1 or -1");
  const auto& k = f.space()->canonical();
  if (!k)
    throw std::invalid_argument("serre_twist: no canonical class configured on " + f.space()->name());
  return kt::tensor_line(f, sign > 0 ? *k : k->inverse());
}

enum class Direction { left, right, serre };

inline const char* to_string(Direction d) {
  switch (d) {
  case Direction::left:
    return "left";
  case Direction::right:
    return "right";
  case Direction::serre:
    return "serre";
  }
  return "?";
}

/// One instruction in a mutation sequence. `mutator` is unused for serre steps.
struct StepSpec {
  Direction direction = Direction::left;
  KClass mutator;
  int sign = -1;

  static StepSpec left(KClass e) { return {Direction::left, std::move(e), 0}; }
  static StepSpec right(KClass e) { return {Direction::right, std::move(e), 0}; }
  static StepSpec serre(int sign) { return {Direction::serre, KClass{}, sign}; }
};

/// An executed step. For mutations `chi` is the pairing computed at that
/// moment (chi(mutator, operand) for left, chi(operand, mutator) for right).
struct MutationStep {
  Direction direction = Direction::left;
  KClass mutator;
  int sign = 0;
  Integer chi = 0;
};

struct MutationTrace {
  KClass initial;
  std::vector<MutationStep> steps;
  KClass final;
};

inline KClass apply(const KClass& current, Direction dir, const KClass& mutator, int sign, Integer* chi_out) {
  switch (dir) {
  case Direction::left: {
    Integer c = kt::chi_pair(mutator, current);
    if (chi_out)
      *chi_out = c;
    return current - c * mutator;
  }
  case Direction::right: {
    Integer c = kt::chi_pair(current, mutator);
    if (chi_out)
      *chi_out = c;
    return current - c * mutator;
  }
  case Direction::serre:
    if (chi_out)
      *chi_out = 0;
    return serre_twist(current, sign);
  }
  return current;
}

inline MutationTrace run_sequence(const KClass& initial, const std::vector<StepSpec>& steps) {
  MutationTrace trace{initial, {}, initial};
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    MutationStep done{s.direction, s.mutator, s.sign, 0};
    try {
      if (s.direction != Direction::serre && !kt::same_space(s.mutator.space(), initial.space()))
        throw std::invalid_argument("mutator lives on a different space");
      trace.final = apply(trace.final, s.direction, s.mutator, s.sign, &done.chi);
    } catch (const math_error& e) {
      throw sequence_error(i, e.what());
    } catch (const std::invalid_argument& e) {
      throw sequence_error(i, e.what());
    }
    trace.steps.push_back(std::move(done));
  }
  return trace;
}

/// Re-executes a trace from its initial class.
inline KClass replay(const MutationTrace& trace) {
  KClass current = trace.initial;
  for (const auto& s : trace.steps)
    current = apply(current, s.direction, s.mutator, s.sign, nullptr);
  return current;
}

using IntMatrix = std::vector<std::vector<Integer>>;

inline IntMatrix gram_matrix(const std::vector<KClass>& objs) {
  IntMatrix m(objs.size(), std::vector<Integer>(objs.size()));
  for (std::size_t i = 0; i < objs.size(); ++i)
    for (std::size_t j = 0; j < objs.size(); ++j)
      m[i][j] = kt::chi_pair(objs[i], objs[j]);
  return m;
}

struct Offense {
  std::size_t row = 0; // 0-based
  std::size_t col = 0;
  Integer chi = 0;
};

/// Result of the chi-level test. Passing is a necessary condition for an
/// exceptional sequence, not a proof of one.
struct ExceptionalReport {
  bool pass = true;
  std::vector<Offense> offenses;
  IntMatrix gram;

  std::string verdict() const {
    return pass ? "pass (necessary condition)" : "fail (necessary condition violated)";
  }
};

inline ExceptionalReport check_exceptional_sequence(const std::vector<KClass>& objs) {
  ExceptionalReport r;
  r.gram = gram_matrix(objs);
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (r.gram[i][i] != 1)
      r.offenses.push_back({i, i, r.gram[i][i]});
    for (std::size_t j = i + 1; j < objs.size(); ++j)
      if (r.gram[j][i] != 0)
        r.offenses.push_back({j, i, r.gram[j][i]});
  }
  r.pass = r.offenses.empty();
  return r;
}

} // namespace kmut::mut
