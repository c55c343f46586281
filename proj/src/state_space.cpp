#include "qdm/state_space.hpp"

#include <algorithm>
#include <utility>

#include "qdm/errors.hpp"

namespace qdm {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::SingleDotDetector: return "single_dot_detector";
    case ModelKind::DoubleDot: return "double_dot";
    case ModelKind::DoubleDotDetector: return "double_dot_detector";
    case ModelKind::Reduced: return "reduced";
  }
  return "unknown";
}

StateSpace::StateSpace(ModelKind kind, std::vector<std::string> labels,
                       std::vector<CoherencePair> pairs)
    : kind_(kind), labels_(std::move(labels)), pairs_(std::move(pairs)) {}

const StateSpace& StateSpace::single_dot_detector() {
  static const StateSpace space(ModelKind::SingleDotDetector, {"a", "b", "a'", "b'"}, {});
  return space;
}

const StateSpace& StateSpace::double_dot() {
  static const StateSpace space(ModelKind::DoubleDot, {"a", "b", "c"}, {{"b", "c"}});
  return space;
}

const StateSpace& StateSpace::double_dot_detector() {
  static const StateSpace space(ModelKind::DoubleDotDetector, {"a", "b", "c", "a'", "b'", "c'"},
                                {{"b", "c"}, {"b'", "c'"}});
  return space;
}

const StateSpace& StateSpace::reduced() {
  static const StateSpace space(ModelKind::Reduced, {"abar", "bbar", "cbar"}, {{"bbar", "cbar"}});
  return space;
}

const StateSpace& StateSpace::of(ModelKind kind) {
  switch (kind) {
    case ModelKind::SingleDotDetector: return single_dot_detector();
    case ModelKind::DoubleDot: return double_dot();
    case ModelKind::DoubleDotDetector: return double_dot_detector();
    case ModelKind::Reduced: return reduced();
  }
  throw SpecError("unknown model kind");
}

std::optional<std::size_t> StateSpace::population_index(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::optional<std::size_t> StateSpace::coherence_index(const CoherencePair& pair) const {
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    const auto& p = pairs_[k];
    if ((p.first == pair.first && p.second == pair.second) ||
        (p.first == pair.second && p.second == pair.first)) {
      return n_pop() + 2 * k;
    }
  }
  return std::nullopt;
}

std::size_t StateSpace::require_population(std::string_view label) const {
  if (auto i = population_index(label)) return *i;
  throw SpecError("state '" + std::string(label) + "' is not part of the " +
                  std::string(to_string(kind_)) + " state space");
}

std::size_t StateSpace::require_coherence(const CoherencePair& pair) const {
  if (auto i = coherence_index(pair)) return *i;
  throw SpecError("coherence (" + pair.first + ", " + pair.second + ") is not part of the " +
                  std::string(to_string(kind_)) + " state space");
}

std::string StateSpace::component_name(std::size_t index) const {
  if (index < n_pop()) return "rho_" + labels_[index] + labels_[index];
  std::size_t k = (index - n_pop()) / 2;
  if (k >= pairs_.size()) throw SpecError("component index out of range");
  const char* part = (index - n_pop()) % 2 == 0 ? "Re" : "Im";
  return std::string(part) + " rho_" + pairs_[k].first + pairs_[k].second;
}

}  // namespace qdm
