#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toric/divisor.hpp"
#include "toric/fan.hpp"

namespace toric {

/// Extremal ray of the Mori cone, with the walls whose curves span it. All
/// walls of one ray share the same primitive relation.
struct ExtremalRay {
  LatticeVector relation;
  std::vector<std::size_t> walls;  // indices into MoriCone::walls
};

struct MoriCone {
  std::vector<Wall> walls;
  std::vector<ExtremalRay> rays;  // sorted by relation
};

MoriCone mori_cone(const Fan& f);

/// Ample model of D: the normal fan of P_D in the lattice of its affine span,
/// together with the ample divisor H on it whose section polytope is P_D
/// (after translating by `translation` and rewriting in lattice coordinates).
struct AmpleModel {
  ToricModel model;
  TorusDivisor ample;
  RationalPoint translation;
};

/// Throws InputError "not pseudo-effective" when P_D is empty.
AmpleModel ample_model(const Fan& f, const TorusDivisor& d);

enum class ContractionKind { divisorial, flip, fiber };
std::string to_string(ContractionKind k);

struct ContractionStep {
  ContractionKind kind = ContractionKind::fiber;
  LatticeVector relation;                 // over the source rays
  std::vector<std::size_t> j_plus, j_minus;
  ToricModel source;
  ToricModel target;                      // small contractions: non-simplicial
  TorusDivisor target_ample;              // ample divisor on the target
  std::optional<ToricModel> flipped;      // flips only
};

/// Contraction of an extremal ray; the target is the ample model of a nef
/// divisor vanishing exactly on the ray. Throws InputError when the relation is
/// not an extremal ray of the Mori cone.
ContractionStep contract(const Fan& f, const ExtremalRay& ray);

/// The other side of the circuit modification. Throws InputError for steps
/// that are not small.
ToricModel flip(const Fan& f, const ContractionStep& step);

enum class MMPOutcome { minimal_model, mori_fiber_space };
std::string to_string(MMPOutcome o);

struct Strategy {
  enum class Kind { deterministic_lex, seeded_random };
  Kind kind = Kind::deterministic_lex;
  std::uint64_t seed = 0;

  static Strategy parse(const std::string& name, std::uint64_t seed = 0);
  std::string name() const;
};

struct MMPTrace {
  ToricModel start;
  TorusDivisor divisor;
  std::vector<ContractionStep> steps;
  MMPOutcome outcome = MMPOutcome::minimal_model;
  ToricModel result;                      // minimal model or the MFS total space
  TorusDivisor result_divisor;            // pushforward of D
  std::optional<ToricModel> base;         // Mori fiber spaces only
  TorusDivisor base_ample;                // ample divisor on the base
};

inline constexpr std::size_t kMMPIterationCap = 10000;

/// Runs the D-MMP from a complete simplicial projective fan.
MMPTrace run_mmp(const Fan& z, const TorusDivisor& d, const Strategy& strategy = {},
                 std::size_t iteration_cap = kMMPIterationCap);

struct VerificationReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Re-checks every clause of the reached outcome independently of run_mmp.
VerificationReport verify_output(const MMPTrace& trace);

/// Walls of `x` whose curves are contracted by the morphism to `base`, detected
/// by pulling back the base's ample divisor.
std::vector<std::size_t> contracted_walls(const Fan& x, const ToricModel& base, const TorusDivisor& base_ample);

}  // namespace toric
