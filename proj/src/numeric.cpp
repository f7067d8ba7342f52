#include "mfzeta/numeric.hpp"

#include <cstdio>

namespace mfzeta {

std::string ExtReal::to_string() const {
  if (!finite_) return "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

}  // namespace mfzeta
