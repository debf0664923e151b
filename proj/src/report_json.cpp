#include "spectra/report_json.hpp"

namespace spectra {

Json to_json(const GroupDescriptor& group) {
  Json j;
  j["group"] = group.kind_name();
  j["n_or_N"] = group.parameter();
  return j;
}

Json elements_json(const GroupSubset& set) {
  Json arr = Json::array();
  const GroupDescriptor& g = set.group();
  for (Element x : set.elements()) {
    if (g.is_cube()) arr.push_back(format_element(g, x));
    else arr.push_back(x);
  }
  return arr;
}

namespace {

Json element_list(const GroupDescriptor& g, const std::vector<Element>& xs) {
  return elements_json(GroupSubset(g, xs));
}

}  // namespace

Json to_json(const LargeSpectrum& s) {
  Json j = to_json(s.source.group());
  j["alpha"] = s.alpha;
  j["delta"] = s.delta;
  j["eta"] = s.eta;
  j["members"] = elements_json(s.members);
  j["magnitudes"] = s.magnitudes;
  j["boundary_marginals"] = element_list(s.source.group(), s.boundary_marginals);
  return j;
}

Json to_json(const EnergyReport& r) {
  Json j = to_json(r.base.group());
  j["base_size"] = r.base.size();
  j["k"] = r.k;
  j["t_k"] = r.t_k;
  j["method"] = to_string(r.method);
  j["integrality_residual"] = r.integrality_residual;
  return j;
}

Json to_json(const TmainVerdict& v) {
  Json j;
  j["delta"] = v.delta;
  j["alpha"] = v.alpha;
  j["k"] = v.k;
  j["base_size"] = v.base_size;
  j["t_k"] = v.t_k;
  j["lower_bound"] = v.bound;
  j["method"] = to_string(v.method);
  j["verdict"] = v.verdict;
  return j;
}

Json to_json(const DissociationCertificate& c) {
  Json j = to_json(c.set.group());
  j["set"] = elements_json(c.set);
  j["variant"] = to_string(c.variant);
  j["k"] = c.params.k;
  if (c.params.s) j["s"] = *c.params.s;
  else j["s"] = "inf";
  j["p"] = c.params.p;
  j["d"] = c.params.d;
  j["verdict"] = c.verdict;
  j["witness"] = c.witness;
  if (!c.partition.empty()) j["partition"] = c.partition;
  j["exhaustive"] = c.exhaustive;
  j["enumerated"] = c.enumerated;
  return j;
}

Json to_json(const RankDRepresentation& r) {
  Json j = to_json(r.base.group());
  j["target"] = r.target;
  j["base"] = elements_json(r.base);
  j["d"] = r.d;
  j["row_l1_bound"] = r.row_l1_bound;
  j["coeff_bound"] = r.coeff_bound;
  j["found"] = r.found;
  j["matrix"] = r.matrix;
  j["searched"] = r.searched;
  return j;
}

Json to_json(const ConstructionReport& r) {
  const GroupDescriptor& g = r.set.group();
  Json j;
  j["construction"] = r.construction;
  j.update(to_json(g));
  j["delta"] = r.delta;
  j["alpha"] = r.alpha;
  j["regime"] = to_string(r.regime);
  j["set_size"] = r.set.size();
  j["measured_density"] = r.set.density();
  if (r.target) j["target"] = elements_json(*r.target);
  j["spectrum"] = elements_json(r.spectrum);
  j["boundary_marginals"] = element_list(g, r.boundary_marginals);
  if (r.diagnostics) {
    Json d;
    d["sum"] = r.diagnostics->sum;
    d["min"] = r.diagnostics->min;
    d["max"] = r.diagnostics->max;
    Json keys = Json::array();
    for (const auto& [x, m] : r.diagnostics->key_coefficients)
      keys.push_back(Json{{"r", x}, {"abs", m}});
    d["key_coefficients"] = keys;
    j["diagnostics"] = d;
  }
  j["deviation"] = r.deviation;
  j["deviation_threshold"] = r.deviation_threshold;
  if (r.gamma) j["gamma"] = *r.gamma;
  j["retries"] = r.retries;
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"name", c.name},
                          {"measured", c.measured},
                          {"bound", c.bound},
                          {"relation", c.relation},
                          {"pass", c.pass},
                          {"asserted", c.asserted}});
  j["checks"] = checks;
  j["notes"] = r.notes;
  j["cross_check"] = Json{{"frequencies", r.cross_checked},
                          {"max_error", r.cross_check_error},
                          {"pass", r.cross_check_pass}};
  j["verdict"] = r.verdict;
  return j;
}

}  // namespace spectra
