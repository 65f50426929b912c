#ifndef LIEFOCK_FOCK_HPP
#define LIEFOCK_FOCK_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace liefock {

enum class ModeKind { boson, fermion, spin };

std::string to_string(ModeKind kind);
ModeKind mode_kind_from_string(const std::string& name);

// One degree of freedom. `capacity` is the largest allowed occupation:
// the boson cutoff, 1 for a fermion, 2S for a spin (levels 0..2S, m = level - S).
struct ModeSpec {
  ModeKind kind = ModeKind::boson;
  int capacity = 1;

  static ModeSpec boson(int cutoff);
  static ModeSpec fermion();
  static ModeSpec spin(int two_s);

  int level_count() const { return capacity + 1; }
  // Spin length S (only meaningful for spin modes).
  double spin() const { return 0.5 * capacity; }

  friend bool operator==(const ModeSpec&, const ModeSpec&) = default;
};

using BasisState = std::vector<int>;

std::string format_state(std::span<const int> occupations);

struct BasisStateHash {
  std::size_t operator()(const BasisState& s) const noexcept;
};

// Immutable ordered enumeration of admissible occupation tuples.
//
// States are ordered lexicographically with mode 0 most significant, so the
// all-empty state comes first and, in a two-mode N=4 sector, |0,4> precedes |4,0>.
class FockBasis {
 public:
  FockBasis(std::vector<ModeSpec> modes, std::optional<int> constraint);

  std::size_t size() const { return states_.size(); }
  std::size_t mode_count() const { return modes_.size(); }
  const std::vector<ModeSpec>& modes() const { return modes_; }
  const ModeSpec& mode(std::size_t m) const { return modes_.at(m); }
  std::optional<int> constraint() const { return constraint_; }

  const BasisState& state_at(std::size_t i) const { return states_.at(i); }
  const std::vector<BasisState>& states() const { return states_; }

  // Throws StateLookupError naming the tuple when it is not in the basis.
  std::size_t index_of(const BasisState& state) const;
  std::optional<std::size_t> find(const BasisState& state) const;
  bool contains(const BasisState& state) const { return find(state).has_value(); }

  // Mode order used for Jordan-Wigner strings. Defaults to the mode list order.
  const std::vector<std::size_t>& fermion_order() const { return fermion_order_; }

  nlohmann::json to_json() const;
  static FockBasis from_json(const nlohmann::json& j);

 private:
  std::vector<ModeSpec> modes_;
  std::optional<int> constraint_;
  std::vector<BasisState> states_;
  std::unordered_map<BasisState, std::size_t, BasisStateHash> index_;
  std::vector<std::size_t> fermion_order_;
};

// Throws InvalidArgument on an empty mode list and InfeasibleSector when
// the constraint exceeds the summed capacities.
FockBasis enumerate_basis(std::vector<ModeSpec> modes, std::optional<int> constraint = std::nullopt);

std::size_t index_of(const FockBasis& basis, const BasisState& state);

inline constexpr int kBasisSchemaVersion = 1;

}  // namespace liefock

#endif  // LIEFOCK_FOCK_HPP
