#include "spectra/bounds.hpp"

#include <cmath>

#include "spectra/energy.hpp"
#include "spectra/errors.hpp"

namespace spectra {

double BoundsParams::chang() const {
  return 2.0 * (delta / alpha) * (delta / alpha) * std::log2(1.0 / delta);
}
double BoundsParams::tmain() const { return tmain_lower_bound(delta, alpha, k, static_cast<std::size_t>(m)); }
double BoundsParams::bohr_energy() const {
  return std::pow(2.0, 14.0 * k) * delta / std::pow(alpha, 2.0 * k);
}
double BoundsParams::cube_energy() const { return 8.0 * delta / std::pow(alpha, 2.0 * k); }
double BoundsParams::cube_random_energy() const { return 16.0 * delta / std::pow(alpha, 4); }
double BoundsParams::bohr_spectrum() const { return delta / (64.0 * alpha * alpha); }
double BoundsParams::cube_spectrum() const { return delta / (8.0 * alpha * alpha); }
double BoundsParams::spectrum_size() const { return delta / (alpha * alpha); }
double BoundsParams::phi() { return (std::sqrt(73.0) - 5.0) / 2.0; }

std::vector<std::string> bound_names() {
  return {"chang",         "tmain",         "bohr_energy", "cube_energy", "cube_random_energy",
          "bohr_spectrum", "cube_spectrum", "spectrum_size", "phi"};
}

double evaluate_bound(const std::string& name, const std::map<std::string, double>& inputs) {
  const auto get = [&](const char* key, double fallback) {
    const auto it = inputs.find(key);
    return it == inputs.end() ? fallback : it->second;
  };
  if (name == "phi") return BoundsParams::phi();
  BoundsParams b;
  b.delta = get("delta", NAN);
  b.alpha = get("alpha", NAN);
  b.k = static_cast<int>(get("k", 2));
  b.m = get("m", 0);
  if (!(b.alpha > 0 && b.alpha <= b.delta && b.delta <= 1))
    throw PreconditionError("bound inputs need 0 < alpha <= delta <= 1");
  if (name == "chang") return b.chang();
  if (name == "tmain") return b.tmain();
  if (name == "bohr_energy") return b.bohr_energy();
  if (name == "cube_energy") return b.cube_energy();
  if (name == "cube_random_energy") return b.cube_random_energy();
  if (name == "bohr_spectrum") return b.bohr_spectrum();
  if (name == "cube_spectrum") return b.cube_spectrum();
  if (name == "spectrum_size") return b.spectrum_size();
  throw PreconditionError("unknown bound: " + name);
}

}  // namespace spectra
