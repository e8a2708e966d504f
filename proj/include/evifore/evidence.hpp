#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace evifore {

// Degeneracy guard on the Dempster normalization constant 1 - k. The binary
// fused belief applies it relative to max(|p_a|, |p_abar|).
inline constexpr double kConflictEpsilon = 1e-12;

// Similar confidence function of one consecutive pair over the binary frame
// {A, not-A}. Masses are not confined to [0, 1]: a falling pair yields
// m_a > 1 and a negative m_abar. Empty set and {A, not-A} carry no mass.
struct BinaryBpa {
  double m_a = 1.0;
  double m_abar = 0.0;

  friend bool operator==(const BinaryBpa&, const BinaryBpa&) = default;
};

// m_a = y_prev / y_next, m_abar = 1 - m_a. Both inputs must be finite and > 0.
BinaryBpa bpa_from_pair(double y_prev, double y_next);

// Mass function over the power set of a small labelled frame. Subsets are
// bitmasks over the label positions; masses()[0] is the empty set.
class GeneralBpa {
public:
  static constexpr std::size_t kMaxFrameSize = 10;

  using Subset = std::uint32_t;

  // Throws InvalidBpa when the frame is empty, too large, has duplicate
  // labels, m(empty) != 0 or the masses do not sum to 1 within 1e-9.
  GeneralBpa(std::vector<std::string> frame, std::vector<double> masses);

  // Convenience for sparse construction: {subset, mass} focal elements.
  static GeneralBpa from_focal(std::vector<std::string> frame,
                               std::span<const std::pair<Subset, double>> focal);

  const std::vector<std::string>& frame() const noexcept { return frame_; }
  std::span<const double> masses() const noexcept { return masses_; }
  double mass(Subset subset) const { return masses_.at(subset); }
  std::size_t power_set_size() const noexcept { return masses_.size(); }

  // Bitmask of the named labels; throws InvalidArgument on unknown labels.
  Subset subset_of(std::span<const std::string> labels) const;

private:
  std::vector<std::string> frame_;
  std::vector<double> masses_;
};

// Dempster's rule over any number of BPAs sharing one frame. The
// unnormalized conjunctive masses are accumulated exactly and normalized once
// by 1 - k. Throws MismatchedFrames or TotalConflict (|1 - k| <= 1e-12).
GeneralBpa combine_dempster(std::span<const GeneralBpa> bpas);

// Running Dempster combination of binary similar-confidence BPAs.
//
// Over the binary frame with m(empty) = m({A, not-A}) = 0, the only
// non-empty intersections of n focal sets are "all A" and "all not-A", so
// 1 - k = prod m_a + prod m_abar. Keeping the two products makes every new
// pair an O(1) update.
//
// The raw products are kept for inspection and for the common case. Log
// magnitudes ride alongside so the belief stays well defined after p_abar
// underflows (it floors to +0) or an extreme ratio overflows p_a.
struct FusionState {
  double p_a = 1.0;
  double p_abar = 1.0;
  std::uint64_t pairs = 0;

  double log_a = 0.0;      // sum of log|m_a|
  double log_abar = 0.0;   // sum of log|m_abar|; -inf once a zero mass was fused
  bool negative_abar = false;

  friend bool operator==(const FusionState&, const FusionState&) = default;
};

FusionState fuse_incremental(const FusionState& state, const BinaryBpa& bpa);

// The normalization constant 1 - k of the fused state.
double one_minus_conflict(const FusionState& state);

// Global belief on A: p_a / (p_a + p_abar). Requires pairs >= 1; throws
// SeriesTooShort for an empty state and TotalConflict when |1 - k| <= 1e-12.
double gbpa(const FusionState& state);

} // namespace evifore
