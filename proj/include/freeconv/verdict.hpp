#pragma once

// Outcome of a finite-order necessary-condition test.

#include "freeconv/combinatorics.hpp"
#include "freeconv/series.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace freeconv {

enum class Outcome { Rejected, Inconclusive };

const char* outcome_name(Outcome o);

enum class HankelKind { Hamburger, Shifted };

/// A leading minor with negative determinant.
struct HankelFailure {
  HankelKind kind = HankelKind::Hamburger;
  std::size_t size = 0;
  Scalar determinant;
};

struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  std::string witness;
  std::size_t tested_order = 0;
  /// Every failing minor, Hamburger minors first then shifted, by size.
  std::vector<HankelFailure> failures;
  /// Grid point where a monotonicity check failed.
  std::optional<double> grid_point;
  /// Constructed candidate (S-transform and its moments), when a test builds one.
  std::optional<TruncatedSeries> candidate_s;
  std::optional<MomentSeq> candidate_moments;

  bool rejected() const { return outcome == Outcome::Rejected; }
};

}  // namespace freeconv
