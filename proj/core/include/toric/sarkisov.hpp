#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toric/geography.hpp"

namespace toric {

/// How the ample model changes across a one-dimensional face O = C_f ∩ C_g.
struct WallCrossingKind {
  enum class Tag { divisorial, small_contraction, mori_fiber, flop };
  Tag tag = Tag::flop;
  ToricModel from, to;                 // from has the larger Picard number (either one for flops)
  ToricModel wall_model;               // ample model at the relative interior of O
  TorusDivisor divisor_on_from;        // f_* of the divisor at the interior point of O
  std::optional<FanMorphism> map;      // the contraction from -> to (absent for flops)
  std::optional<ContractionStep> flop; // flops only: the step from `from` to `to`
};

std::string to_string(WallCrossingKind::Tag t);

/// Classifies the crossing from chamber `f` (2-dimensional) into chamber `g`.
/// Throws InputError when O lies on the boundary of B or is not 1-dimensional.
WallCrossingKind classify_wall(const GeographySlice& slice, std::size_t f, std::size_t g);

enum class LinkType { I, II, III, IVm, IVs };
std::string to_string(LinkType t);

struct SarkisovLink {
  LinkType type = LinkType::IVm;
  int case_tag = 0;                    // 1..7 as in the vertex case analysis
  std::size_t vertex = 0;              // arrangement vertex D†
  TorusDivisor dagger;                 // D† on Z
  std::size_t k = 0;                   // 2-dimensional chambers around D†
  ToricModel x, y, s, t, r;
  std::optional<ToricModel> x_prime, y_prime;
  std::optional<FanMorphism> p, q;     // divisorial contractions X' -> X, Y' -> Y
  std::vector<ContractionStep> flops;  // horizontal arrow, each step D†-trivial
  std::size_t rho_x_r = 0, rho_y_r = 0;
  std::string note;                    // provenance for k = 1, 2
};

/// The link read off at an arc vertex; `toward_s`/`toward_t` are the boundary
/// edge strata on either side of it along the arc. Throws GenericityError when
/// the local picture contradicts the case table.
SarkisovLink link_at_vertex(const GeographySlice& slice, std::size_t vertex, std::size_t toward_s,
                            std::size_t toward_t);

struct SarkisovChain {
  ToricModel start_x, start_s, end_y, end_t;
  std::vector<SarkisovLink> links;
  std::optional<SarkisovSlice> slice;  // absent for identical endpoints
};

/// Factorizes the birational map between the two Mori fiber spaces into links.
SarkisovChain factorize(const Fan& z, const TorusDivisor& d, const MMPTrace& trace_f, const MMPTrace& trace_g,
                        const SliceOptions& options = {});

/// Independent re-check of a chain: connectivity, endpoints, case table and
/// D†-triviality of every flop.
VerificationReport verify_chain(const SarkisovChain& chain);

}  // namespace toric
