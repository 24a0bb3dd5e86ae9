#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "toric/divisor.hpp"
#include "toric/mmp.hpp"
#include "toric/polyhedron.hpp"

namespace toric {

struct GeographySlice;

/// Raised when a randomized "general" choice keeps failing its verification.
/// Carries the last slice tried, when there is one.
class GenericityError : public ToricError {
 public:
  GenericityError(const std::string& what, std::vector<std::string> certificates,
                  std::shared_ptr<const GeographySlice> slice = nullptr)
      : ToricError(what), certificates(std::move(certificates)), slice(std::move(slice)) {}
  std::vector<std::string> certificates;
  std::shared_ptr<const GeographySlice> slice;
};

/// A cell, edge or vertex of the arrangement inside E(B), with its ample model.
struct Stratum {
  int dim = 0;
  std::vector<std::size_t> vertices;  // indices into GeographySlice::points (ccw for cells)
  RationalPoint sample;
  std::size_t chamber = 0;
  std::vector<std::size_t> cells;     // edges: the adjacent 2-dimensional strata
};

/// All strata sharing one ample model g: A_g is their union, C_g its closure.
struct Chamber {
  ToricModel model;
  std::string key;
  int dim = 0;
  bool big = false;                   // model has full dimension
  std::vector<std::size_t> strata;
  std::vector<std::size_t> vertices;  // arrangement vertices of C_g
  std::vector<RationalPoint> closure; // ccw hull of C_g
  RationalPoint sample;               // a point of A_g
  Rational area;
  std::vector<std::size_t> neighbors; // chambers whose closures meet C_g
};

struct GeographySlice {
  Fan base;
  TorusDivisor origin, dir_s, dir_t;   // D(s,t) = origin + s dir_s + t dir_t
  Polyhedron region;                   // B in (s,t)
  std::vector<RationalPoint> region_polygon;
  std::vector<RationalPoint> effective;  // E(B), ccw (possibly a point or segment)
  std::vector<RationalPoint> points;     // arrangement vertices
  std::vector<Stratum> strata;           // the first points.size() strata are the vertices
  std::vector<Chamber> chambers;

  TorusDivisor divisor_at(const RationalPoint& st) const;
  /// Chamber whose model equals m, if any.
  std::optional<std::size_t> find_chamber(const ToricModel& m) const;
  /// Convex hull of the arrangement vertices shared by the two closures.
  std::vector<std::size_t> shared_vertices(std::size_t a, std::size_t b) const;
  int intersection_dim(std::size_t a, std::size_t b) const;
  bool in_region_interior(const RationalPoint& st) const;
  Rational effective_area() const;
};

/// Chamber decomposition of E(B) for the affine slice origin + s u + t w.
/// Per-stratum ample models are computed on `jobs` threads.
GeographySlice chamber_decomposition(const Fan& z, const TorusDivisor& origin, const TorusDivisor& dir_s,
                                     const TorusDivisor& dir_t, const Polyhedron& region, unsigned jobs = 1);

struct SliceReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Span and Picard-number checks over all 2-dimensional chambers, plus
/// resampling of every chamber's ample model at three further points.
SliceReport verify_span_picard(const GeographySlice& slice, std::uint64_t seed = 0);

/// Slice data tying the slice to two Mori fiber space outputs of the D-MMP.
struct SarkisovSlice {
  GeographySlice slice;
  TorusDivisor divisor;                // D_Z
  ToricModel x, y;                     // the two MFS total spaces (birational models of Z)
  ToricModel s, t;                     // their bases, as ample models of divisors on Z
  std::size_t attempts = 0;
  std::uint64_t seed = 0;
};

struct SliceOptions {
  std::uint64_t seed = 0;
  std::size_t retries = 8;
  long denominator = 64;  // perturbation scale 1/q
  unsigned jobs = 1;
};

/// Builds a 2-dimensional slice through the two MFS chambers and verifies the
/// five slice properties; throws GenericityError when retries run out.
SarkisovSlice build_slice(const Fan& z, const TorusDivisor& d, const MMPTrace& trace_f, const MMPTrace& trace_g,
                          const SliceOptions& options = {});

/// The checks build_slice performs, one message per failed property.
SliceReport verify_slice_properties(const SarkisovSlice& s);

struct BoundaryArc {
  std::vector<std::size_t> vertices;  // arrangement vertices from the S side to the T side
  std::vector<std::size_t> edges;     // boundary edge strata, one more than vertices
  std::vector<std::size_t> link_vertices;  // where the (2-chamber, edge model) pair changes
};

/// The part of the boundary of E(B) between the two MFS chambers that lies in
/// the non-big locus. Each end is the run of boundary edges in the base chamber
/// whose adjacent 2-dimensional chamber is the given total space (any, when
/// omitted). Throws GenericityError when neither
/// side qualifies.
BoundaryArc nonbig_boundary_arc(const GeographySlice& slice, std::size_t from_chamber, std::size_t to_chamber,
                                std::optional<std::size_t> from_total = std::nullopt,
                                std::optional<std::size_t> to_total = std::nullopt);

/// A deterministic box slice around -K with random integral directions; used
/// by the corpus checks and benchmarks.
GeographySlice corpus_slice(const Fan& z, std::uint64_t seed, unsigned jobs = 1);

}  // namespace toric
