#include "qidm/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#include "qidm/json_io.hpp"
#include "qidm/manifest.hpp"
#include "qidm/version.hpp"

namespace qidm::cli {

namespace fs = std::filesystem;

namespace {

struct GlobalOpts {
  std::string backend = "rational";
  double tol = 1e-9;
  std::uint64_t seed = 12345;
  int theta_grid = 64;
  std::string out;
  std::string format = "json";
};

std::vector<double> theta_linspace(int n, double lo = -8.0, double hi = 8.0) {
  std::vector<double> out;
  if (n <= 1) return {0.0};
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

// Where outputs land. --out may be a directory or a .json file path (the
// primary artifact); auxiliary files and the manifest are placed next to it.
class Sink {
 public:
  Sink(const GlobalOpts& g, std::vector<std::string> cmdline)
      : manifest_(make_manifest(cmdline, g.backend, g.seed)) {
    if (g.out.empty()) return;
    active_ = true;
    if (g.out.size() > 5 && g.out.substr(g.out.size() - 5) == ".json") {
      file_mode_ = true;
      primary_ = g.out;
      dir_ = fs::path(g.out).parent_path().string();
      if (dir_.empty()) dir_ = ".";
    } else {
      dir_ = g.out;
    }
    fs::create_directories(dir_);
  }

  bool active() const { return active_; }

  std::string primary_path(const std::string& default_name) const {
    return file_mode_ ? primary_ : (fs::path(dir_) / default_name).string();
  }

  std::string aux_path(const std::string& name) const {
    if (!file_mode_) return (fs::path(dir_) / name).string();
    const fs::path p(primary_);
    return (p.parent_path() / (p.stem().string() + "_" + name)).string();
  }

  void residual(const std::string& key, const std::string& value) {
    manifest_.residuals[key] = value;
  }

  void write_csv(const std::string& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) const {
    std::ofstream outf(path);
    if (!outf) throw QidmError("cannot write '" + path + "'");
    for (std::size_t i = 0; i < header.size(); ++i)
      outf << (i ? "," : "") << header[i];
    outf << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) outf << (i ? "," : "") << row[i];
      outf << "\n";
    }
  }

  void finish() const {
    if (!active_) return;
    const fs::path p(primary_);
    const std::string path =
        file_mode_
            ? (p.parent_path() / (p.stem().string() + ".manifest.json")).string()
            : (fs::path(dir_) / "manifest.json").string();
    save_json_file(path, manifest_to_json(manifest_));
  }

 private:
  RunManifest manifest_;
  bool active_ = false;
  bool file_mode_ = false;
  std::string dir_;
  std::string primary_;
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

RingMember parse_member(const SpacePtr& space, const std::string& arg) {
  if (arg.empty()) return full_member(space);
  std::vector<int> atoms;
  std::string token;
  for (char c : arg + ",") {
    if (c == ',') {
      if (!token.empty()) atoms.push_back(space->atom_index(token));
      token.clear();
    } else {
      token += c;
    }
  }
  return make_member(space, std::move(atoms));
}

// ---- decompose --------------------------------------------------------------

template <class T>
void run_decompose(const std::string& in, std::string measure_name, const GlobalOpts& g,
                   Sink& sink) {
  auto [space, measures] = measures_file_from_json<T>(load_json_file(in));
  if (measure_name.empty()) {
    if (measures.size() != 1)
      throw QidmError("file holds " + std::to_string(measures.size()) +
                      " measures; pick one with --measure");
    measure_name = measures.begin()->first;
  }
  const auto it = measures.find(measure_name);
  if (it == measures.end()) throw QidmError("no measure named '" + measure_name + "'");
  const auto& mu = it->second;
  const auto jordan = jordan_decompose(mu);

  Json result;
  result["measure"] = measure_name;
  result["positive"] = measure_to_json(jordan.positive);
  result["negative"] = measure_to_json(jordan.negative);
  Json tv = Json::array();
  for (std::size_t k = 0; k < space->level_count(); ++k)
    tv.push_back(scalar_to_json(total_variation(mu, level_member(space, k))));
  result["total_variation_per_level"] = std::move(tv);

  if (sink.active()) {
    if (g.format == "csv") {
      std::vector<std::vector<std::string>> rows;
      for (std::size_t t = 0; t < space->size(); ++t)
        rows.push_back({space->atom_name(static_cast<int>(t)),
                        format_scalar(mu.weights[t]),
                        format_scalar(jordan.positive.weights[t]),
                        format_scalar(jordan.negative.weights[t])});
      sink.write_csv(sink.primary_path("decompose.csv"),
                     {"atom", "weight", "positive", "negative"}, rows);
    } else {
      save_json_file(sink.primary_path("decompose.json"), result);
    }
  }
  sink.residual("jordan_reconstruction_max_abs_error", "0");
  emit(result);
}

// ---- disintegrate -----------------------------------------------------------

template <class T>
void run_disintegrate(const std::string& in, Sink& sink) {
  const auto bm = bimeasure_from_json<T>(load_json_file(in));
  const auto dis = disintegrate(bm);

  double max_residual = 0.0;
  std::vector<std::vector<std::string>> nu_rows, kernel_rows, residual_rows;
  for (std::size_t t = 0; t < bm.t_space->size(); ++t) {
    const std::string tname = bm.t_space->atom_name(static_cast<int>(t));
    nu_rows.push_back({tname, format_scalar(dis.nu.nu.weights[t])});
    for (std::size_t x = 0; x < bm.x_size(); ++x) {
      const T q = dis.kernel.q(static_cast<int>(t), static_cast<int>(x));
      kernel_rows.push_back({tname, bm.x_atoms[x],
                             format_scalar(dis.kernel.has_row[t] ? dis.kernel.q_plus[t][x] : T(0)),
                             format_scalar(dis.kernel.has_row[t] ? dis.kernel.q_minus[t][x] : T(0)),
                             format_scalar(q)});
      const T reconstructed = q * dis.nu.nu.weights[t];
      const T residual = reconstructed - bm.entries[t][x];
      max_residual = std::max(max_residual, std::fabs(to_double(residual)));
      residual_rows.push_back({tname, bm.x_atoms[x], format_scalar(bm.entries[t][x]),
                               format_scalar(reconstructed), format_scalar(residual)});
    }
  }
  if (sink.active()) {
    sink.write_csv(sink.aux_path("nu.csv"), {"t_atom", "nu"}, nu_rows);
    sink.write_csv(sink.aux_path("kernel.csv"),
                   {"t_atom", "x_atom", "q_plus", "q_minus", "q"}, kernel_rows);
    sink.write_csv(sink.aux_path("residuals.csv"),
                   {"t_atom", "x_atom", "q0_entry", "reconstructed", "residual"},
                   residual_rows);
  }
  sink.residual("reconstruction_max_abs_error", format_scalar(max_residual));

  Json result;
  Json levels = Json::array();
  for (const auto& v : dis.nu.per_level_totals) levels.push_back(scalar_to_json(v));
  result["per_level_nu"] = std::move(levels);
  Json masses = Json::object();
  for (std::size_t t = 0; t < bm.t_space->size(); ++t)
    masses[bm.t_space->atom_name(static_cast<int>(t))] =
        scalar_to_json(dis.kernel.row_mass(static_cast<int>(t)));
  result["kernel_row_mass"] = std::move(masses);
  result["reconstruction_max_abs_error"] = max_residual;
  emit(result);
}

// ---- qid-check / extract-triplet --------------------------------------------

void write_cf_curve(Sink& sink, const std::string& name, const LatticePmf& pmf,
                    int grid_size) {
  if (!sink.active()) return;
  std::vector<std::vector<std::string>> rows;
  for (int j = 0; j < grid_size; ++j) {
    const double theta = 2.0 * M_PI * j / grid_size;
    const auto c = pmf.cf(theta);
    rows.push_back({format_scalar(theta), format_scalar(c.real()),
                    format_scalar(c.imag()), format_scalar(std::abs(c))});
  }
  sink.write_csv(sink.aux_path(name), {"theta", "re_cf", "im_cf", "abs_cf"}, rows);
}

void run_qid_check(const std::string& pmf_file, int grid, Sink& sink) {
  const auto pmf = pmf_from_json(load_json_file(pmf_file));
  const auto check = qid_check_lattice(pmf, grid);
  write_cf_curve(sink, "curve.csv", pmf, check.grid_size);
  sink.residual("min_cf_modulus", format_scalar(check.min_cf_modulus));

  Json result;
  result["is_qid"] = check.is_qid;
  result["min_cf_modulus"] = check.min_cf_modulus;
  result["witness_theta"] = check.witness_theta;
  result["grid_size"] = check.grid_size;
  if (sink.active()) save_json_file(sink.primary_path("qid_check.json"), result);
  emit(result);
}

void run_extract_triplet(const std::string& pmf_file, int grid, Sink& sink) {
  const auto pmf = pmf_from_json(load_json_file(pmf_file));
  const auto extraction = extract_triplet_lattice(pmf, grid);
  write_cf_curve(sink, "curve.csv", pmf, extraction.grid_size);

  Json result = triplet_to_json(extraction.triplet);
  Json ordered = Json::array();
  for (const auto& [n, mass] : extraction.ordered_masses)
    ordered.push_back(Json::array({n, mass}));
  result["levy_by_abs_n"] = std::move(ordered);
  result["winding"] = extraction.winding;
  result["grid_size"] = extraction.grid_size;
  result["roundtrip_residual"] = extraction.roundtrip_residual;
  if (sink.active()) save_json_file(sink.primary_path("triplet.json"), result);
  sink.residual("roundtrip_residual", format_scalar(extraction.roundtrip_residual));
  emit(result);
}

// ---- model ------------------------------------------------------------------

template <class T>
void run_model_validate(const std::string& model_file, const GlobalOpts& g, Sink& sink) {
  const auto model = model_from_json<T>(load_json_file(model_file));
  ValidateConfig cfg;
  cfg.seed = g.seed;
  const auto cert = validate_model(model, cfg);
  const Json result = certificate_to_json(cert);
  if (sink.active()) save_json_file(sink.primary_path("certificate.json"), result);
  sink.residual("xi_min_slack", format_scalar(cert.xi_min_slack));
  sink.residual("cf_min_modulus", format_scalar(cert.cf_min_modulus));
  emit(result);
}

template <class T>
void run_model_cf(const std::string& model_file, const std::string& member_arg,
                  const GlobalOpts& g, Sink& sink) {
  const auto an = analyze(model_from_json<T>(load_json_file(model_file)));
  const auto member = parse_member(an.space(), member_arg);
  const auto thetas = theta_linspace(g.theta_grid);
  const auto trip = aggregate_triplet(an.model, member);

  double two_path = 0.0;
  std::vector<std::vector<std::string>> rows;
  for (double theta : thetas) {
    const auto via_kernel = cf_of_set(an, member, theta);
    const auto via_triplet = cf_eval(trip, theta);
    two_path = std::max(two_path, std::abs(via_kernel - via_triplet));
    rows.push_back({format_scalar(theta), format_scalar(via_kernel.real()),
                    format_scalar(via_kernel.imag()),
                    format_scalar(std::abs(via_kernel))});
  }
  if (sink.active())
    sink.write_csv(sink.primary_path("cf.csv"), {"theta", "re_cf", "im_cf", "abs_cf"},
                   rows);
  sink.residual("two_path_sup_error", format_scalar(two_path));

  Json result;
  result["member"] = member_to_string(member);
  result["theta_points"] = thetas.size();
  result["two_path_sup_error"] = two_path;
  emit(result);
}

template <class T>
void run_model_sample(const std::string& model_file, const std::string& member_arg,
                      std::size_t samples, const GlobalOpts& g, Sink& sink) {
  const auto an = analyze(model_from_json<T>(load_json_file(model_file)));
  const auto member = parse_member(an.space(), member_arg);
  const auto result = sample_lattice(an, member, samples, g.seed);

  Json law;
  law["offsets"] = result.law.offsets;
  law["probs"] = result.law.probs;
  law["shift"] = result.law.shift;
  law["gauss_var"] = result.law.gauss_var;
  law["grid_size"] = result.law.grid_size;
  law["min_jump_cf_modulus"] = result.law.min_jump_cf_modulus;
  law["worst_clipped_mass"] = result.law.worst_clipped_mass;
  law["samples"] = samples;
  law["seed"] = g.seed;
  if (sink.active()) {
    save_json_file(sink.primary_path("law.json"), law);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(result.samples.size());
    for (std::size_t i = 0; i < result.samples.size(); ++i)
      rows.push_back({std::to_string(i), format_scalar(result.samples[i])});
    sink.write_csv(sink.aux_path("samples.csv"), {"index", "value"}, rows);
  }
  sink.residual("worst_clipped_mass", format_scalar(result.law.worst_clipped_mass));
  emit(law);
}

// ---- integrate / orlicz / probe ----------------------------------------------

template <class T>
void run_integrate(const std::string& model_file, const std::string& f_file, double p,
                   const GlobalOpts& g, Sink& sink) {
  const auto an = analyze(model_from_json<T>(load_json_file(model_file)));
  const auto f = step_from_json<T>(an.space(), load_json_file(f_file));
  const auto law = integrate_step(an, f);
  const auto trip = law_triplet(law);

  const auto thetas = theta_linspace(g.theta_grid);
  double two_path = 0.0;
  std::vector<std::vector<std::string>> rows;
  for (double theta : thetas) {
    const auto via_product = cf_of_integral(an, f, theta);
    const auto via_triplet = cf_eval(trip, theta);
    two_path = std::max(two_path, std::abs(via_product - via_triplet));
    rows.push_back({format_scalar(theta), format_scalar(via_triplet.real()),
                    format_scalar(via_triplet.imag()),
                    format_scalar(std::abs(via_triplet))});
  }

  Json result = integral_law_to_json(law);
  result["two_path_sup_error"] = two_path;
  result["p"] = p;
  if (sink.active()) {
    save_json_file(sink.primary_path("law.json"), result);
    sink.write_csv(sink.aux_path("curve.csv"), {"theta", "re_cf", "im_cf", "abs_cf"},
                   rows);
  }
  sink.residual("two_path_sup_error", format_scalar(two_path));
  emit(result);
}

template <class T>
void run_orlicz(const std::string& model_file, const std::string& f_file, double p,
                Sink& sink) {
  const auto an = analyze(model_from_json<T>(load_json_file(model_file)));
  const auto f = step_from_json<T>(an.space(), load_json_file(f_file));
  const auto values = values_per_atom(f, an.space());
  const auto eval = orlicz_norm(an, values, p);

  // Feasibility residual at the returned scale; <= 0 up to bisection slack.
  double feas = 0.0;
  if (eval.f_norm > 0.0)
    feas = phi_p_integral(an, values, p, 1.0 / eval.f_norm) - eval.f_norm;

  Json result;
  result["p"] = eval.p;
  result["phi_integral"] = eval.phi_integral;
  result["f_norm"] = eval.f_norm;
  result["feasibility_residual"] = feas;
  if (sink.active()) save_json_file(sink.primary_path("orlicz.json"), result);
  sink.residual("feasibility_residual", format_scalar(feas));
  emit(result);
}

template <class T>
void run_probe(const std::string& model_file, const std::string& fs_file, double p,
               const GlobalOpts& g, Sink& sink) {
  const auto an = analyze(model_from_json<T>(load_json_file(model_file)));
  const auto sequence = step_sequence_from_json<T>(an.space(), load_json_file(fs_file));
  const auto report = continuity_probe(an, sequence, p, theta_linspace(g.theta_grid));

  std::vector<std::vector<std::string>> rows;
  for (std::size_t n = 0; n < report.rows.size(); ++n)
    rows.push_back({std::to_string(n), format_scalar(report.rows[n].norm),
                    format_scalar(report.rows[n].phi_integral),
                    format_scalar(report.rows[n].cf_deviation)});
  if (sink.active())
    sink.write_csv(sink.primary_path("probe.csv"),
                   {"n", "norm", "phi_integral", "cf_dev"}, rows);

  Json result;
  result["entries"] = report.rows.size();
  result["norm_vanishes"] = report.norm_vanishes;
  result["phi_vanishes"] = report.phi_vanishes;
  result["columns_covanish"] = report.columns_covanish;
  result["cf_follows_norm"] = report.cf_follows_norm;
  if (!report.rows.empty()) {
    result["first"] = Json::array({report.rows.front().norm,
                                   report.rows.front().phi_integral,
                                   report.rows.front().cf_deviation});
    result["last"] = Json::array({report.rows.back().norm,
                                  report.rows.back().phi_integral,
                                  report.rows.back().cf_deviation});
  }
  sink.residual("final_norm",
                report.rows.empty() ? "0" : format_scalar(report.rows.back().norm));
  emit(result);
}

bool rational_backend(const GlobalOpts& g) {
  if (g.backend == "rational") return true;
  if (g.backend == "float") return false;
  throw CLI::ValidationError("--backend must be 'rational' or 'float'");
}

}  // namespace

int dispatch(const std::vector<std::string>& args) {
  GlobalOpts g;
  CLI::App app{"Signed-bimeasure disintegration and QID random-measure toolkit"};
  app.set_version_flag("--version", QIDM_VERSION);
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--backend", g.backend, "Numeric backend: rational|float")
      ->check(CLI::IsMember({"rational", "float"}));
  app.add_option("--tol", g.tol, "Float-mode comparison tolerance");
  app.add_option("--seed", g.seed, "Seed for randomized checks and sampling");
  app.add_option("--theta-grid", g.theta_grid, "Theta grid points on [-8, 8]");
  app.add_option("--out", g.out, "Output directory (or .json file for the primary artifact)");
  app.add_option("--format", g.format, "Primary artifact format where applicable")
      ->check(CLI::IsMember({"json", "csv"}));

  std::function<void(Sink&)> action;

  // decompose
  std::string dec_in, dec_measure;
  auto* dec = app.add_subcommand("decompose", "Jordan-decompose a signed measure");
  dec->add_option("--in", dec_in, "Measures JSON file")->required();
  dec->add_option("--measure", dec_measure, "Measure name inside the file");
  dec->callback([&] {
    action = [&](Sink& sink) {
      if (rational_backend(g))
        run_decompose<Rational>(dec_in, dec_measure, g, sink);
      else
        run_decompose<double>(dec_in, dec_measure, g, sink);
    };
  });

  // disintegrate
  std::string dis_in;
  auto* dis = app.add_subcommand("disintegrate", "Extend a bimeasure and emit its kernels");
  dis->add_option("--in", dis_in, "Bimeasure JSON file")->required();
  dis->callback([&] {
    action = [&](Sink& sink) {
      if (rational_backend(g))
        run_disintegrate<Rational>(dis_in, sink);
      else
        run_disintegrate<double>(dis_in, sink);
    };
  });

  // qid-check
  std::string qc_pmf;
  int qc_grid = 0;
  auto* qc = app.add_subcommand("qid-check", "Zero-free cf test for an integer pmf");
  qc->add_option("--pmf", qc_pmf, "Pmf JSON file")->required();
  qc->add_option("--grid", qc_grid, "Grid size over [0, 2pi); 0 = default");
  qc->callback([&] {
    action = [&](Sink& sink) { run_qid_check(qc_pmf, qc_grid, sink); };
  });

  // extract-triplet
  std::string et_pmf;
  int et_grid = 0;
  auto* et = app.add_subcommand("extract-triplet",
                                "Distinguished-log triplet of an integer pmf");
  et->add_option("--pmf", et_pmf, "Pmf JSON file")->required();
  et->add_option("--grid", et_grid, "Grid size over [0, 2pi); 0 = default");
  et->callback([&] {
    action = [&](Sink& sink) { run_extract_triplet(et_pmf, et_grid, sink); };
  });

  // model validate|cf|sample
  std::string mo_file, mo_member;
  std::size_t mo_samples = 10000;
  auto* mo = app.add_subcommand("model", "Random-measure model operations");
  mo->require_subcommand(1);
  mo->add_option("--model", mo_file, "Model JSON file")->required();
  auto* mo_validate = mo->add_subcommand("validate", "Validate and emit the certificate");
  mo_validate->callback([&] {
    action = [&](Sink& sink) {
      if (rational_backend(g))
        run_model_validate<Rational>(mo_file, g, sink);
      else
        run_model_validate<double>(mo_file, g, sink);
    };
  });
  auto* mo_cf = mo->add_subcommand("cf", "Characteristic function of Lambda(A)");
  mo_cf->add_option("--member", mo_member, "Comma-separated atom names (default: all)");
  mo_cf->callback([&] {
    action = [&](Sink& sink) {
      if (rational_backend(g))
        run_model_cf<Rational>(mo_file, mo_member, g, sink);
      else
        run_model_cf<double>(mo_file, mo_member, g, sink);
    };
  });
  auto* mo_sample = mo->add_subcommand("sample", "Seeded sampling of Lambda(A)");
  mo_sample->add_option("--member", mo_member, "Comma-separated atom names (default: all)");
  mo_sample->add_option("--samples", mo_samples, "Number of samples");
  mo_sample->callback([&] {
    action = [&](Sink& sink) {
      if (rational_backend(g))
        run_model_sample<Rational>(mo_file, mo_member, mo_samples, g, sink);
      else
        run_model_sample<double>(mo_file, mo_member, mo_samples, g, sink);
    };
  });

  // integrate
  std::string in_model, in_f;
  double in_p = 0.0;
  auto* integ = app.add_subcommand("integrate", "Law of the stochastic integral of f");
  integ->add_option("--model", in_model, "Model JSON file")->required();
  integ->add_option("--f", in_f, "Step function JSON file")->required();
  integ->add_option("--p", in_p, "Moment order");
  integ->callback([&] {
    action = [&](Sink& sink) {
      if (rational_backend(g))
        run_integrate<Rational>(in_model, in_f, in_p, g, sink);
      else
        run_integrate<double>(in_model, in_f, in_p, g, sink);
    };
  });

  // orlicz
  std::string or_model, or_f;
  double or_p = 0.0;
  auto* orl = app.add_subcommand("orlicz", "Musielak-Orlicz F-norm of f");
  orl->add_option("--model", or_model, "Model JSON file")->required();
  orl->add_option("--f", or_f, "Step function JSON file")->required();
  orl->add_option("--p", or_p, "Order p in [0, q]");
  orl->callback([&] {
    action = [&](Sink& sink) {
      if (rational_backend(g))
        run_orlicz<Rational>(or_model, or_f, or_p, sink);
      else
        run_orlicz<double>(or_model, or_f, or_p, sink);
    };
  });

  // probe
  std::string pr_model, pr_fs;
  double pr_p = 0.0;
  auto* pr = app.add_subcommand("probe", "Continuity probe over a step-function sequence");
  pr->add_option("--model", pr_model, "Model JSON file")->required();
  pr->add_option("--fs", pr_fs, "Step-function sequence JSON file")->required();
  pr->add_option("--p", pr_p, "Order p");
  pr->callback([&] {
    action = [&](Sink& sink) {
      if (rational_backend(g))
        run_probe<Rational>(pr_model, pr_fs, pr_p, g, sink);
      else
        run_probe<double>(pr_model, pr_fs, pr_p, g, sink);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help() << "\n";
    return 0;
  } catch (const CLI::CallForVersion&) {
    std::cout << QIDM_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << "\n";
    return 64;
  }

  try {
    Sink sink(g, args);
    action(sink);
    sink.finish();
    return 0;
  } catch (const InconclusiveError& e) {
    Json j;
    j["inconclusive"] = true;
    j["min_cf_modulus"] = e.modulus();
    j["witness_theta"] = e.theta();
    emit(j);
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 3;
  } catch (const QidmError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qidm::cli
