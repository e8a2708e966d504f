#include "evifore/evidence.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <set>
#include <utility>

#include "evifore/domain.hpp"
#include "evifore/error.hpp"

namespace evifore {

BinaryBpa bpa_from_pair(double y_prev, double y_next) {
  require_positive(y_prev);
  require_positive(y_next);
  const double m_a = y_prev / y_next;
  if (!std::isfinite(m_a) || m_a == 0.0) {
    throw Error(ErrorCode::NonPositiveValue, "ratio " + std::to_string(y_prev) + " / " + std::to_string(y_next) +
                                                 " is not representable");
  }
  return BinaryBpa{m_a, 1.0 - m_a};
}

GeneralBpa::GeneralBpa(std::vector<std::string> frame, std::vector<double> masses)
    : frame_(std::move(frame)), masses_(std::move(masses)) {
  if (frame_.empty() || frame_.size() > kMaxFrameSize) {
    throw Error(ErrorCode::InvalidBpa, "frame must hold 1.." + std::to_string(kMaxFrameSize) + " hypotheses");
  }
  if (std::set<std::string>(frame_.begin(), frame_.end()).size() != frame_.size()) {
    throw Error(ErrorCode::InvalidBpa, "frame labels must be distinct");
  }
  if (masses_.size() != (std::size_t{1} << frame_.size())) {
    throw Error(ErrorCode::InvalidBpa, "mass vector must cover the power set");
  }
  if (!std::all_of(masses_.begin(), masses_.end(), [](double m) { return std::isfinite(m); })) {
    throw Error(ErrorCode::InvalidBpa, "masses must be finite");
  }
  if (std::abs(masses_[0]) > kConflictEpsilon) {
    throw Error(ErrorCode::InvalidBpa, "empty set must carry no mass");
  }
  masses_[0] = 0.0;
  double total = 0.0;
  for (double m : masses_) total += m;
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidBpa, "masses must sum to 1, got " + std::to_string(total));
  }
}

GeneralBpa GeneralBpa::from_focal(std::vector<std::string> frame,
                                  std::span<const std::pair<Subset, double>> focal) {
  const std::size_t size = frame.size() <= kMaxFrameSize ? std::size_t{1} << frame.size() : 0;
  std::vector<double> masses(size, 0.0);
  for (const auto& [subset, mass] : focal) {
    if (subset >= size) throw Error(ErrorCode::InvalidBpa, "focal element outside the frame");
    masses[subset] += mass;
  }
  return GeneralBpa(std::move(frame), std::move(masses));
}

GeneralBpa::Subset GeneralBpa::subset_of(std::span<const std::string> labels) const {
  Subset subset = 0;
  for (const std::string& label : labels) {
    auto it = std::find(frame_.begin(), frame_.end(), label);
    if (it == frame_.end()) throw Error(ErrorCode::InvalidArgument, "unknown hypothesis '" + label + "'");
    subset |= Subset{1} << static_cast<unsigned>(it - frame_.begin());
  }
  return subset;
}

GeneralBpa combine_dempster(std::span<const GeneralBpa> bpas) {
  if (bpas.empty()) throw Error(ErrorCode::EmptyInput, "nothing to combine");
  const GeneralBpa& first = bpas.front();
  for (const GeneralBpa& b : bpas) {
    if (b.frame() != first.frame()) throw Error(ErrorCode::MismatchedFrames, "BPAs do not share one frame");
  }
  if (bpas.size() == 1) return first;

  // Conjunctive (unnormalized) combination is associative, so folding source
  // by source accumulates exactly the n-way intersection products.
  const std::size_t size = first.power_set_size();
  std::vector<double> joint(first.masses().begin(), first.masses().end());
  std::vector<double> next(size);
  for (const GeneralBpa& b : bpas.subspan(1)) {
    std::fill(next.begin(), next.end(), 0.0);
    const auto masses = b.masses();
    for (std::size_t x = 0; x < size; ++x) {
      if (joint[x] == 0.0) continue;
      for (std::size_t y = 0; y < size; ++y) {
        if (masses[y] == 0.0) continue;
        next[x & y] += joint[x] * masses[y];
      }
    }
    joint.swap(next);
  }

  // 1 - k as the sum over non-empty intersections.
  double one_minus_k = 0.0;
  for (std::size_t x = 1; x < size; ++x) one_minus_k += joint[x];
  if (!(std::abs(one_minus_k) > kConflictEpsilon)) {
    throw Error(ErrorCode::TotalConflict, "sources are in total conflict (1 - k = " + std::to_string(one_minus_k) + ")");
  }
  joint[0] = 0.0;
  for (std::size_t x = 1; x < size; ++x) joint[x] /= one_minus_k;
  return GeneralBpa(first.frame(), std::move(joint));
}

FusionState fuse_incremental(const FusionState& state, const BinaryBpa& bpa) {
  FusionState out = state;
  out.p_a = state.p_a * bpa.m_a;
  out.p_abar = state.p_abar * bpa.m_abar;
  // An underflowed (or exactly zero) product is +0, never -0.
  if (out.p_abar == 0.0) out.p_abar = 0.0;
  out.pairs = state.pairs + 1;
  out.log_a += std::log(std::abs(bpa.m_a));
  out.log_abar += std::log(std::abs(bpa.m_abar));
  if (bpa.m_abar < 0.0) out.negative_abar = !out.negative_abar;
  return out;
}

namespace {

// Raw products are trustworthy while p_a is a normal finite number and
// p_abar has not overflowed; otherwise fall back to the log magnitudes.
bool direct_regime(const FusionState& s) {
  return std::isfinite(s.p_a) && std::isfinite(s.p_abar) && std::abs(s.p_a) >= DBL_MIN;
}

// p_abar / p_a from the log accumulators.
double abar_to_a_ratio(const FusionState& s) {
  const double magnitude = std::exp(s.log_abar - s.log_a);
  return s.negative_abar ? -magnitude : magnitude;
}

} // namespace

double one_minus_conflict(const FusionState& state) {
  if (direct_regime(state)) return state.p_a + state.p_abar;
  return std::exp(state.log_a) * (1.0 + abar_to_a_ratio(state));
}

double gbpa(const FusionState& state) {
  if (state.pairs == 0) throw Error(ErrorCode::SeriesTooShort, "belief needs at least one fused pair");
  // Conflict means p_a and p_abar cancel, judged relative to their own
  // magnitude so that a tiny but unopposed p_a stays usable.
  if (direct_regime(state)) {
    const double norm = state.p_a + state.p_abar;
    const double scale = std::max(std::abs(state.p_a), std::abs(state.p_abar));
    if (!(std::abs(norm) > kConflictEpsilon * scale)) {
      throw Error(ErrorCode::TotalConflict, "1 - k vanished (" + std::to_string(norm) + ")");
    }
    return state.p_a / norm;
  }
  // An infinite ratio means p_abar dwarfs p_a: the belief is +-0, which
  // 1 / denom yields directly.
  const double ratio = abar_to_a_ratio(state);
  const double denom = 1.0 + ratio;
  const bool cancelled =
      std::isfinite(ratio) && !(std::abs(denom) > kConflictEpsilon * std::max(1.0, std::abs(ratio)));
  if (std::isnan(denom) || cancelled) {
    throw Error(ErrorCode::TotalConflict, "1 - k vanished");
  }
  return 1.0 / denom;
}

} // namespace evifore
