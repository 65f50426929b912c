#include "liefock/fock.hpp"

#include <numeric>
#include <sstream>

#include <json.hpp>

#include "liefock/errors.hpp"

namespace liefock {

std::string to_string(ModeKind kind) {
  switch (kind) {
    case ModeKind::boson: return "boson";
    case ModeKind::fermion: return "fermion";
    case ModeKind::spin: return "spin";
  }
  return "unknown";
}

ModeKind mode_kind_from_string(const std::string& name) {
  if (name == "boson") return ModeKind::boson;
  if (name == "fermion") return ModeKind::fermion;
  if (name == "spin") return ModeKind::spin;
  throw InvalidArgument("unknown mode kind '" + name + "'");
}

ModeSpec ModeSpec::boson(int cutoff) {
  if (cutoff < 1) throw InvalidArgument("boson cutoff must be >= 1");
  return {ModeKind::boson, cutoff};
}

ModeSpec ModeSpec::fermion() { return {ModeKind::fermion, 1}; }

ModeSpec ModeSpec::spin(int two_s) {
  if (two_s < 1) throw InvalidArgument("spin needs 2S >= 1");
  return {ModeKind::spin, two_s};
}

std::string format_state(std::span<const int> occupations) {
  std::ostringstream os;
  os << '|';
  for (std::size_t i = 0; i < occupations.size(); ++i) {
    if (i) os << ',';
    os << occupations[i];
  }
  os << '>';
  return os.str();
}

std::size_t BasisStateHash::operator()(const BasisState& s) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int v : s) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

void validate_mode(const ModeSpec& m) {
  switch (m.kind) {
    case ModeKind::boson:
      if (m.capacity < 1) throw InvalidArgument("boson modes require an explicit cutoff >= 1");
      break;
    case ModeKind::fermion:
      if (m.capacity != 1) throw InvalidArgument("fermion capacity must be exactly 1");
      break;
    case ModeKind::spin:
      if (m.capacity < 1) throw InvalidArgument("spin level count 2S+1 must be >= 2");
      break;
  }
}

void enumerate_recursive(const std::vector<ModeSpec>& modes, std::size_t pos,
                         const std::vector<int>& suffix_capacity, std::optional<int> remaining,
                         BasisState& current, std::vector<BasisState>& out) {
  if (pos == modes.size()) {
    if (!remaining || *remaining == 0) out.push_back(current);
    return;
  }
  int lo = 0;
  int hi = modes[pos].capacity;
  if (remaining) {
    lo = std::max(0, *remaining - suffix_capacity[pos + 1]);
    hi = std::min(hi, *remaining);
  }
  for (int n = lo; n <= hi; ++n) {
    current[pos] = n;
    enumerate_recursive(modes, pos + 1, suffix_capacity,
                        remaining ? std::optional<int>(*remaining - n) : std::nullopt, current, out);
  }
}

}  // namespace

FockBasis::FockBasis(std::vector<ModeSpec> modes, std::optional<int> constraint)
    : modes_(std::move(modes)), constraint_(constraint) {
  if (modes_.empty()) throw InvalidArgument("enumerate_basis: mode list is empty");
  for (const auto& m : modes_) validate_mode(m);
  std::vector<int> suffix(modes_.size() + 1, 0);
  for (std::size_t i = modes_.size(); i-- > 0;) suffix[i] = suffix[i + 1] + modes_[i].capacity;
  if (constraint_) {
    if (*constraint_ < 0) throw InvalidArgument("enumerate_basis: constraint N must be >= 0");
    if (*constraint_ > suffix[0]) {
      throw InfeasibleSector("enumerate_basis: sector N=" + std::to_string(*constraint_) +
                             " exceeds total capacity " + std::to_string(suffix[0]));
    }
  }
  BasisState current(modes_.size(), 0);
  enumerate_recursive(modes_, 0, suffix, constraint_, current, states_);
  index_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);
  for (std::size_t m = 0; m < modes_.size(); ++m) {
    if (modes_[m].kind == ModeKind::fermion) fermion_order_.push_back(m);
  }
}

std::optional<std::size_t> FockBasis::find(const BasisState& state) const {
  auto it = index_.find(state);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FockBasis::index_of(const BasisState& state) const {
  auto it = index_.find(state);
  if (it == index_.end()) {
    throw StateLookupError("index_of: state " + format_state(state) + " is not in the basis");
  }
  return it->second;
}

nlohmann::json FockBasis::to_json() const {
  nlohmann::json modes = nlohmann::json::array();
  for (const auto& m : modes_) modes.push_back({{"kind", to_string(m.kind)}, {"capacity", m.capacity}});
  nlohmann::json j;
  j["version"] = kBasisSchemaVersion;
  j["modes"] = std::move(modes);
  j["constraint"] = constraint_ ? nlohmann::json(*constraint_) : nlohmann::json(nullptr);
  j["count"] = states_.size();
  return j;
}

FockBasis FockBasis::from_json(const nlohmann::json& j) {
  if (j.value("version", 0) != kBasisSchemaVersion) throw InvalidArgument("basis json: unsupported version");
  std::vector<ModeSpec> modes;
  for (const auto& m : j.at("modes")) {
    modes.push_back({mode_kind_from_string(m.at("kind").get<std::string>()), m.at("capacity").get<int>()});
  }
  std::optional<int> constraint;
  if (j.contains("constraint") && !j.at("constraint").is_null()) constraint = j.at("constraint").get<int>();
  FockBasis basis(std::move(modes), constraint);
  if (j.contains("count") && j.at("count").get<std::size_t>() != basis.size()) {
    throw InvalidArgument("basis json: count does not match re-derived state list");
  }
  return basis;
}

FockBasis enumerate_basis(std::vector<ModeSpec> modes, std::optional<int> constraint) {
  return FockBasis(std::move(modes), constraint);
}

std::size_t index_of(const FockBasis& basis, const BasisState& state) { return basis.index_of(state); }

}  // namespace liefock
