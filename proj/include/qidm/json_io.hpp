#pragma once

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "qidm/lattice_qid.hpp"
#include "qidm/random_measure.hpp"
#include "qidm/stochastic_integral.hpp"

namespace qidm {

using Json = nlohmann::ordered_json;

template <class T>
Json scalar_to_json(const T& x);

template <>
inline Json scalar_to_json<Rational>(const Rational& x) {
  return format_scalar(x);
}
template <>
inline Json scalar_to_json<double>(const double& x) {
  if (!std::isfinite(x)) throw JsonSchemaError("cannot serialize non-finite value");
  return x;
}

// Weights arrive as decimal strings (parsed to rationals exactly) or as JSON
// numbers (doubles; dyadic, so still exact under the rational backend).
template <class T>
T scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar<T>(j.get<std::string>());
  if (j.is_number()) return scalar_from_double<T>(j.get<double>());
  throw JsonSchemaError("expected a number or numeric string, got " + j.dump());
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JsonSchemaError("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw JsonSchemaError("bad JSON in '" + path + "': " + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw JsonSchemaError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

inline const Json& require_field(const Json& j, const std::string& key) {
  if (!j.contains(key)) throw JsonSchemaError("missing field '" + key + "'");
  return j.at(key);
}

// ---- ground space ----------------------------------------------------------

inline Json space_to_json(const GroundSpace& space) {
  Json j;
  j["atoms"] = space.atoms();
  j["levels"] = space.levels();
  return j;
}

inline SpacePtr space_from_json(const Json& j) {
  std::vector<std::string> atoms =
      require_field(j, "atoms").get<std::vector<std::string>>();
  std::vector<std::vector<int>> levels =
      require_field(j, "levels").get<std::vector<std::vector<int>>>();
  return make_space(std::move(atoms), std::move(levels));
}

// ---- measures file: {"atoms", "levels", "measures": {name: {atom: w}}} -----

template <class T>
FiniteSignedMeasure<T> measure_from_json(const SpacePtr& space, const Json& j) {
  auto out = zero_measure<T>(space);
  if (!j.is_object()) throw JsonSchemaError("measure must be an object {atom: weight}");
  for (const auto& [name, w] : j.items())
    out.weights[static_cast<std::size_t>(space->atom_index(name))] = scalar_from_json<T>(w);
  return out;
}

template <class T>
Json measure_to_json(const FiniteSignedMeasure<T>& mu) {
  Json j = Json::object();
  for (std::size_t t = 0; t < mu.weights.size(); ++t)
    if (!is_zero(mu.weights[t]))
      j[mu.space->atom_name(static_cast<int>(t))] = scalar_to_json(mu.weights[t]);
  return j;
}

template <class T>
std::pair<SpacePtr, std::map<std::string, FiniteSignedMeasure<T>>> measures_file_from_json(
    const Json& j) {
  SpacePtr space = space_from_json(j);
  std::map<std::string, FiniteSignedMeasure<T>> measures;
  for (const auto& [name, body] : require_field(j, "measures").items())
    measures.emplace(name, measure_from_json<T>(space, body));
  return {space, std::move(measures)};
}

// ---- bimeasure: {"t_atoms", "t_levels", "x_atoms", "matrix"} ---------------

template <class T>
Bimeasure<T> bimeasure_from_json(const Json& j) {
  SpacePtr space = make_space(
      require_field(j, "t_atoms").get<std::vector<std::string>>(),
      require_field(j, "t_levels").get<std::vector<std::vector<int>>>());
  std::vector<std::string> x_atoms =
      require_field(j, "x_atoms").get<std::vector<std::string>>();
  const Json& matrix = require_field(j, "matrix");
  std::vector<std::vector<T>> entries;
  for (const auto& row : matrix) {
    std::vector<T> r;
    for (const auto& cell : row) r.push_back(scalar_from_json<T>(cell));
    entries.push_back(std::move(r));
  }
  return make_bimeasure<T>(std::move(space), std::move(x_atoms), std::move(entries));
}

template <class T>
Json bimeasure_to_json(const Bimeasure<T>& bm) {
  Json j;
  j["t_atoms"] = bm.t_space->atoms();
  j["t_levels"] = bm.t_space->levels();
  j["x_atoms"] = bm.x_atoms;
  Json matrix = Json::array();
  for (const auto& row : bm.entries) {
    Json r = Json::array();
    for (const auto& cell : row) r.push_back(scalar_to_json(cell));
    matrix.push_back(std::move(r));
  }
  j["matrix"] = std::move(matrix);
  return j;
}

// ---- lattice pmf: {"offsets", "probs"} -------------------------------------

inline LatticePmf pmf_from_json(const Json& j) {
  return make_lattice_pmf(require_field(j, "offsets").get<std::vector<long long>>(),
                          require_field(j, "probs").get<std::vector<double>>());
}

inline Json pmf_to_json(const LatticePmf& pmf) {
  Json j;
  j["offsets"] = pmf.offsets;
  j["probs"] = pmf.probs;
  return j;
}

// ---- model: {"space", "nu0", "nu1", "F": {atom: [[x, mass], ...]}} ---------

template <class T>
RandomMeasureModel<T> model_from_json(const Json& j) {
  SpacePtr space = space_from_json(require_field(j, "space"));
  auto nu0 = measure_from_json<T>(space, require_field(j, "nu0"));
  auto nu1 = measure_from_json<T>(space, require_field(j, "nu1"));

  std::vector<std::vector<std::pair<T, T>>> rows(space->size());
  std::vector<T> grid;
  const Json& f = require_field(j, "F");
  for (const auto& [name, atom_list] : f.items()) {
    const auto t = static_cast<std::size_t>(space->atom_index(name));
    for (const auto& pair : atom_list) {
      if (!pair.is_array() || pair.size() != 2)
        throw JsonSchemaError("F entries must be [x, mass] pairs");
      T x = scalar_from_json<T>(pair[0]);
      T mass = scalar_from_json<T>(pair[1]);
      rows[t].emplace_back(std::move(x), std::move(mass));
    }
  }
  for (const auto& row : rows)
    for (const auto& [x, mass] : row) grid.push_back(x);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<std::vector<T>> masses(space->size(), std::vector<T>(grid.size(), T(0)));
  for (std::size_t t = 0; t < rows.size(); ++t)
    for (const auto& [x, mass] : rows[t]) {
      const auto it = std::lower_bound(grid.begin(), grid.end(), x);
      masses[t][static_cast<std::size_t>(it - grid.begin())] += mass;
    }
  return make_model<T>(std::move(space), std::move(nu0), std::move(nu1), std::move(grid),
                       std::move(masses));
}

template <class T>
Json model_to_json(const RandomMeasureModel<T>& m) {
  Json j;
  j["space"] = space_to_json(*m.space);
  j["nu0"] = measure_to_json(m.nu0);
  j["nu1"] = measure_to_json(m.nu1);
  Json f = Json::object();
  for (std::size_t t = 0; t < m.space->size(); ++t) {
    Json list = Json::array();
    for (std::size_t g = 0; g < m.x_grid.size(); ++g)
      if (!is_zero(m.f_masses[t][g]))
        list.push_back(Json::array({scalar_to_json(m.x_grid[g]),
                                    scalar_to_json(m.f_masses[t][g])}));
    if (!list.empty()) f[m.space->atom_name(static_cast<int>(t))] = std::move(list);
  }
  j["F"] = std::move(f);
  return j;
}

// ---- step function: {"pieces": [{"value", "member": [atom names]}]} --------

template <class T>
StepFunction<T> step_from_json(const SpacePtr& space, const Json& j) {
  std::vector<std::pair<T, RingMember>> pieces;
  for (const auto& piece : require_field(j, "pieces")) {
    T value = scalar_from_json<T>(require_field(piece, "value"));
    std::vector<int> atoms;
    for (const auto& name : require_field(piece, "member"))
      atoms.push_back(space->atom_index(name.get<std::string>()));
    pieces.emplace_back(std::move(value), make_member(space, std::move(atoms)));
  }
  return make_step_function(std::move(pieces));
}

template <class T>
Json step_to_json(const StepFunction<T>& f) {
  Json pieces = Json::array();
  for (const auto& [value, member] : f.pieces) {
    Json piece;
    piece["value"] = scalar_to_json(value);
    Json names = Json::array();
    for (int t : member.atom_set) names.push_back(member.space->atom_name(t));
    piece["member"] = std::move(names);
    pieces.push_back(std::move(piece));
  }
  Json j;
  j["pieces"] = std::move(pieces);
  return j;
}

template <class T>
std::vector<StepFunction<T>> step_sequence_from_json(const SpacePtr& space, const Json& j) {
  std::vector<StepFunction<T>> out;
  for (const auto& item : require_field(j, "sequence"))
    out.push_back(step_from_json<T>(space, item));
  return out;
}

// ---- triplets and laws -----------------------------------------------------

template <class T>
Json quasi_levy_to_json(const QuasiLevyMeasure<T>& nu) {
  Json list = Json::array();
  for (const auto& [x, m] : nu.atoms)
    list.push_back(Json::array({scalar_to_json(x), scalar_to_json(m)}));
  return list;
}

template <class T>
QuasiLevyMeasure<T> quasi_levy_from_json(const Json& j) {
  std::vector<std::pair<T, T>> atoms;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw JsonSchemaError("levy entries must be [x, mass] pairs");
    atoms.emplace_back(scalar_from_json<T>(pair[0]), scalar_from_json<T>(pair[1]));
  }
  return make_quasi_levy(std::move(atoms));
}

template <class T>
Json triplet_to_json(const CharacteristicTriplet<T>& trip) {
  Json j;
  j["gamma"] = scalar_to_json(trip.gamma);
  j["a"] = scalar_to_json(trip.a);
  j["levy"] = quasi_levy_to_json(trip.levy);
  return j;
}

template <class T>
CharacteristicTriplet<T> triplet_from_json(const Json& j) {
  return make_triplet<T>(scalar_from_json<T>(require_field(j, "gamma")),
                         scalar_from_json<T>(require_field(j, "a")),
                         quasi_levy_from_json<T>(require_field(j, "levy")));
}

template <class T>
Json integral_law_to_json(const IntegralLaw<T>& law) {
  Json j;
  j["a_f"] = scalar_to_json(law.a_f);
  j["sigma2_f"] = scalar_to_json(law.sigma2_f);
  j["levy"] = quasi_levy_to_json(law.f_levy);
  j["levy_plus_raw"] = quasi_levy_to_json(law.f_plus_raw);
  j["levy_minus_raw"] = quasi_levy_to_json(law.f_minus_raw);
  Json d;
  d["u_integral"] = scalar_to_json(law.diagnostics.u_integral);
  d["sigma_integral"] = scalar_to_json(law.diagnostics.sigma_integral);
  d["v0_integral"] = scalar_to_json(law.diagnostics.v0_integral);
  d["pass"] = law.diagnostics.pass;
  j["diagnostics"] = std::move(d);
  return j;
}

template <class T>
Json certificate_to_json(const ValidationCertificate<T>& cert) {
  Json j;
  Json levels = Json::array();
  for (const auto& v : cert.per_level_nu) levels.push_back(scalar_to_json(v));
  j["per_level_nu"] = std::move(levels);
  j["xi_samples"] = cert.xi_samples;
  j["xi_all_hold"] = cert.xi_all_hold;
  j["xi_min_slack"] = scalar_to_json(cert.xi_min_slack);
  j["cf_min_modulus"] = cert.cf_min_modulus;
  j["cf_max_modulus"] = cert.cf_max_modulus;
  j["cf_argmin_member"] = cert.cf_argmin_member;
  j["cf_argmin_theta"] = cert.cf_argmin_theta;
  j["seed"] = cert.seed;
  j["note"] = cert.note;
  return j;
}

}  // namespace qidm
