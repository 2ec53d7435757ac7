#include "flicker/dynamics.hpp"

#include <cmath>

#include "flicker/error.hpp"

namespace flicker {

namespace {

void require(bool ok, const char* field, const char* rule) {
  if (!ok) throw ValidationError(field, rule);
}

}  // namespace

void validate(const EcoParams& p) {
  require(std::isfinite(p.r) && p.r > 0, "eco.r", "must be finite and > 0");
  require(std::isfinite(p.K) && p.K > 0, "eco.K", "must be finite and > 0");
  require(std::isfinite(p.h) && p.h > 0, "eco.h", "must be finite and > 0");
  require(std::isfinite(p.c) && p.c >= 0, "eco.c", "must be finite and >= 0");
}

void validate(const NoiseParams& np) {
  require(std::isfinite(np.T) && np.T >= 1, "noise.T", "must be finite and >= 1");
  require(std::isfinite(np.beta) && np.beta >= 0, "noise.beta", "must be finite and >= 0");
  require(std::isfinite(np.mu), "noise.mu", "must be finite");
}

void validate(const AdaptationParams& ap) {
  require(std::isfinite(ap.l) && ap.l >= 0 && ap.l <= 1, "adapt.l", "must lie in [0, 1]");
}

void validate(const SystemState& s) {
  require(std::isfinite(s.x) && s.x >= 0, "state.x", "must be finite and >= 0");
  require(std::isfinite(s.y) && s.y >= 0, "state.y", "must be finite and >= 0");
  require(std::isfinite(s.i), "state.i", "must be finite");
  require(s.t >= 0, "state.t", "must be >= 0");
}

}  // namespace flicker
