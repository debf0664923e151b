#pragma once

// Headline constants and bound formulas. Logarithms are base 2.

#include <map>
#include <string>
#include <vector>

namespace spectra {

struct BoundsParams {
  double delta = 0;
  double alpha = 0;
  int k = 2;
  double m = 0;  // |B| for the T_k lower bound

  double chang() const;               // 2 (delta/alpha)^2 log(1/delta)
  double tmain() const;               // delta (alpha m / delta)^{2k} / 2^{4k}
  double bohr_energy() const;         // 2^{14k} delta / alpha^{2k}
  double cube_energy() const;         // 8 delta / alpha^{2k}
  double cube_random_energy() const;  // 16 delta / alpha^4
  double bohr_spectrum() const;       // delta / (64 alpha^2)
  double cube_spectrum() const;       // delta / (8 alpha^2)
  double spectrum_size() const;       // delta / alpha^2, from Parseval
  static double phi();                // (sqrt 73 - 5) / 2
};

// Names accepted by evaluate_bound.
std::vector<std::string> bound_names();

// Recomputes a named bound from its inputs; throws PreconditionError on an
// unknown name or invalid inputs.
double evaluate_bound(const std::string& name, const std::map<std::string, double>& inputs);

}  // namespace spectra
