#ifndef LIEFOCK_PARAMS_HPP
#define LIEFOCK_PARAMS_HPP

#include <cmath>
#include <set>
#include <string>

#include "liefock/algebra.hpp"
#include "liefock/errors.hpp"

namespace liefock {

// Checked access to a named parameter map; unknown keys are rejected up front.
class ParamReader {
 public:
  ParamReader(std::string algebra, const Params& p, std::set<std::string> allowed)
      : algebra_(std::move(algebra)), p_(p) {
    for (const auto& [k, v] : p_) {
      if (!allowed.count(k)) throw InvalidArgument(algebra_ + ": unknown parameter '" + k + "'");
      if (!std::isfinite(v)) throw InvalidArgument(algebra_ + ": parameter '" + k + "' is not finite");
    }
  }

  double real(const std::string& key, double fallback) const {
    auto it = p_.find(key);
    return it == p_.end() ? fallback : it->second;
  }

  int integer(const std::string& key, int fallback, int min_value) const {
    const double v = real(key, fallback);
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9) throw InvalidArgument(algebra_ + ": parameter '" + key + "' must be an integer");
    if (r < min_value) {
      throw InvalidArgument(algebra_ + ": parameter '" + key + "' must be >= " + std::to_string(min_value));
    }
    return static_cast<int>(r);
  }

 private:
  std::string algebra_;
  const Params& p_;
};

}  // namespace liefock

#endif  // LIEFOCK_PARAMS_HPP
