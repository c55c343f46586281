#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qdm {

enum class ModelKind { SingleDotDetector, DoubleDot, DoubleDotDetector, Reduced };

std::string_view to_string(ModelKind kind);

// Ordered pair of basis labels carrying a complex coherence rho_{first,second}.
struct CoherencePair {
  std::string first;
  std::string second;

  bool operator==(const CoherencePair&) const = default;
};

/// Basis of the real state vector.
///
/// Populations come first, in label order, followed by the real and
/// imaginary parts of each coherence (Re s, Im s). The four spaces are fixed
/// singletons, so references and pointers to them stay valid for the
/// lifetime of the program.
class StateSpace {
 public:
  static const StateSpace& single_dot_detector();  // a, b, a', b'
  static const StateSpace& double_dot();           // a, b, c; (b, c)
  static const StateSpace& double_dot_detector();  // a, b, c, a', b', c'; (b, c), (b', c')
  static const StateSpace& reduced();              // abar, bbar, cbar; (bbar, cbar)
  static const StateSpace& of(ModelKind kind);

  StateSpace(const StateSpace&) = delete;
  StateSpace& operator=(const StateSpace&) = delete;

  ModelKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<CoherencePair>& coherence_pairs() const noexcept { return pairs_; }
  std::size_t n_pop() const noexcept { return labels_.size(); }
  std::size_t dim_real() const noexcept { return labels_.size() + 2 * pairs_.size(); }

  std::optional<std::size_t> population_index(std::string_view label) const;
  // Index of Re s; Im s sits at the next index. The reversed pair (the
  // complex conjugate) resolves to the same slot.
  std::optional<std::size_t> coherence_index(const CoherencePair& pair) const;

  std::size_t require_population(std::string_view label) const;
  std::size_t require_coherence(const CoherencePair& pair) const;

  // Human-readable component name, e.g. "rho_aa", "Re rho_bc".
  std::string component_name(std::size_t index) const;

  bool operator==(const StateSpace& other) const noexcept { return kind_ == other.kind_; }

 private:
  StateSpace(ModelKind kind, std::vector<std::string> labels, std::vector<CoherencePair> pairs);

  ModelKind kind_;
  std::vector<std::string> labels_;
  std::vector<CoherencePair> pairs_;
};

}  // namespace qdm
