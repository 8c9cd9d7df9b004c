#include "qdot/cli.hpp"

#include "qdot/model.hpp"
#include "qdot/point_charges.hpp"
#include "qdot/solver.hpp"
#include "qdot/spectra.hpp"
#include "qdot/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

namespace qdot::cli {

using nlohmann::json;

namespace {

// kept in sync with tools/config.schema.json (same content, embedded so the
// binary validates configs without a lookup path)
const char* kConfigSchema = R"({
  "type": "object",
  "properties": {
    "command": "string", "units": "string", "material": "string",
    "output": "string", "output_dir": "string", "format": "string",
    "seed": "number", "n": "number", "b": "number", "k": "number",
    "omega": "number", "gamma": "number", "grid_intervals": "number",
    "grid_rmax": "number", "kkt_tol": "number", "max_iterations": "number",
    "multistart": "number", "lambda": "number", "u0": "number",
    "lattice_n": "number", "l_max": "number", "ls": "array",
    "beta": "number", "w0": "number", "alpha": "number", "m": "number",
    "taut_n": "number", "omega_lo": "number", "omega_hi": "number",
    "b_list": "array", "direction": "string", "kind": "string",
    "which": "string", "model": "string", "count": "number",
    "refine": "boolean", "domain_tol": "number"
  }
})";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Settings {
  std::string units = "natural";
  std::string material = "GaAs";
  std::string output;      // empty: stdout
  std::string output_dir = "figure1_out";
  std::string format = "csv";
  std::uint64_t seed = 1;
  int n = 1;
  double b = 0.0, k = 1.0, omega = 1.0, gamma = 0.0;
  int grid_intervals = 2000;
  double grid_rmax = 0.0;  // 0: auto from the support-radius heuristic
  double kkt_tol = 5e-3;
  int max_iterations = 20000;
  double domain_tol = 0.02;
  int multistart = 12;
  // verify / exact-n extras
  double lambda = 0.5, u0 = 1.0, beta = 0.1, w0 = 0.0, alpha = 0.0;
  int lattice_n = 64, l_max = 7, m = 0, taut_n = 1;
  double omega_lo = 0.05, omega_hi = 40.0;
  std::vector<double> b_list;
  std::vector<int> ls;
  std::string direction = "b-to-infinity";
  std::string kind = "classical";
  std::string which = "exchange";
  std::string model = "harmonic";
  int count = 20;
  bool refine = true;

  Material mat = Material::gaas();
  bool natural() const { return units == "natural"; }

  // V(r) = K (r / 2 a*)^2 with K in meV: one K of energy at r = 2 a*.
  // In natural units the quadratic coefficient is K / (4 E*).
  double k_nat() const { return natural() ? k : k / mat.e_star_mev / 4.0; }
  double b_nat() const { return natural() ? b : b / mat.b_star_t; }
  double b_nat_of(double b_phys) const { return natural() ? b_phys : b_phys / mat.b_star_t; }
  double len_out(double r) const { return natural() ? r : r * mat.a_star_nm; }
  double energy_out(double e) const { return natural() ? e : e * mat.e_star_mev; }
  double field_out(double b_n) const { return natural() ? b_n : b_n * mat.b_star_t; }
  double density_out(double rho) const {
    return natural() ? rho : rho * 1e18 / (mat.a_star_nm * mat.a_star_nm);  // m^-2
  }

  DotParams dot_params() const {
    DotParams p;
    p.n_electrons = n;
    p.b_field = b_nat();
    p.coupling = k_nat();
    p.gamma = gamma;
    p.potential = PotentialSpec::quadratic();
    return p;
  }

  dft::SolveOptions solve_options() const {
    dft::SolveOptions o;
    o.kkt_tol = kkt_tol;
    o.max_iterations = max_iterations;
    o.domain_tol = domain_tol;
    return o;
  }

  json resolved_config(const std::string& command) const {
    json j;
    j["command"] = command;
    j["units_in"] = units;
    j["material"] = material;
    j["n"] = n;
    j["b_natural"] = b_nat();
    j["k_natural"] = k_nat();
    j["gamma"] = gamma;
    j["grid_intervals"] = grid_intervals;
    j["grid_rmax_natural"] = grid_rmax;
    j["kkt_tol"] = kkt_tol;
    j["max_iterations"] = max_iterations;
    j["seed"] = seed;
    j["k_convention"] = "V(r) = K (r / 2 a*)^2; natural K = K_meV / (4 E*)";
    return j;
  }

  std::vector<std::string> header_lines(const std::string& command) const {
    std::vector<std::string> out;
    json j = resolved_config(command);
    for (auto it = j.begin(); it != j.end(); ++it) {
      std::ostringstream os;
      os << "# " << it.key() << " = " << it.value();
      out.push_back(os.str());
    }
    return out;
  }
};

void apply_config_file(Settings& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config file not readable: " + path);
  json cfg = json::parse(in);
  json schema = json::parse(kConfigSchema);
  const json& props = schema["properties"];
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    if (!props.contains(it.key()))
      throw std::invalid_argument("config: unknown key '" + it.key() + "'");
    std::string want = props[it.key()].get<std::string>();
    bool ok = (want == "string" && it->is_string()) ||
              (want == "number" && it->is_number()) ||
              (want == "boolean" && it->is_boolean()) || (want == "array" && it->is_array());
    if (!ok)
      throw std::invalid_argument("config: key '" + it.key() + "' must be " + want);
  }
  auto num = [&](const char* key, auto& field) {
    if (cfg.contains(key)) field = cfg[key].get<std::decay_t<decltype(field)>>();
  };
  num("units", s.units);
  num("material", s.material);
  num("output", s.output);
  num("output_dir", s.output_dir);
  num("format", s.format);
  num("seed", s.seed);
  num("n", s.n);
  num("b", s.b);
  num("k", s.k);
  num("omega", s.omega);
  num("gamma", s.gamma);
  num("grid_intervals", s.grid_intervals);
  num("grid_rmax", s.grid_rmax);
  num("kkt_tol", s.kkt_tol);
  num("max_iterations", s.max_iterations);
  num("domain_tol", s.domain_tol);
  num("multistart", s.multistart);
  num("lambda", s.lambda);
  num("u0", s.u0);
  num("beta", s.beta);
  num("w0", s.w0);
  num("alpha", s.alpha);
  num("lattice_n", s.lattice_n);
  num("l_max", s.l_max);
  num("m", s.m);
  num("taut_n", s.taut_n);
  num("omega_lo", s.omega_lo);
  num("omega_hi", s.omega_hi);
  num("direction", s.direction);
  num("kind", s.kind);
  num("which", s.which);
  num("model", s.model);
  num("count", s.count);
  num("refine", s.refine);
  if (cfg.contains("b_list")) s.b_list = cfg["b_list"].get<std::vector<double>>();
  if (cfg.contains("ls")) s.ls = cfg["ls"].get<std::vector<int>>();
}

// ---- output plumbing -------------------------------------------------------

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file: " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows) {
  for (const auto& h : header) os << h << "\r\n";
  for (std::size_t c = 0; c < columns.size(); ++c)
    os << (c ? "," : "") << csv_field(columns[c]);
  os << "\r\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_field(row[c]);
    os << "\r\n";
  }
}

dft::FunctionalKind parse_kind(const std::string& kind) {
  if (kind == "tf") return dft::FunctionalKind::tf;
  if (kind == "mtf") return dft::FunctionalKind::mtf;
  if (kind == "classical") return dft::FunctionalKind::classical;
  throw std::invalid_argument("kind must be tf|mtf|classical");
}

std::string domain_label(const dft::Domain& d) {
  switch (d.label) {
    case dft::Domain::Label::vacuum: return "vacuum";
    case dft::Domain::Label::compressible: return "compressible";
    default: return "incompressible(" + std::to_string(d.level) + ")";
  }
}

std::string label_at(const std::vector<dft::Domain>& domains, double r) {
  for (const auto& d : domains)
    if (r >= d.r_lo && r <= d.r_hi) return domain_label(d);
  return domains.empty() ? std::string("compressible") : domain_label(domains.back());
}

// ---- subcommand bodies -----------------------------------------------------

coulomb::RadialKernelTable make_kernel(const Settings& s, const DotParams& p) {
  double r_max = s.grid_rmax > 0 ? s.grid_rmax : dft::default_box_radius(p);
  return coulomb::build_kernel(build_grid(r_max, s.grid_intervals));
}

int cmd_spectrum(const Settings& s) {
  auto lines = spectra::fock_darwin_spectrum(s.b_nat(), s.omega, s.count);
  Sink sink(s.output);
  if (s.format == "json") {
    json j;
    j["config"] = s.resolved_config("spectrum");
    j["lines"] = json::array();
    for (const auto& ln : lines)
      j["lines"].push_back({{"k", ln.k},
                            {"l", ln.l},
                            {"energy", s.energy_out(ln.energy)},
                            {"fdl", ln.fdl}});
    sink.out() << j.dump(2) << "\n";
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& ln : lines)
      rows.push_back({std::to_string(ln.k), std::to_string(ln.l),
                      fmt(s.energy_out(ln.energy)), std::to_string(ln.fdl)});
    write_csv(sink.out(), s.header_lines("spectrum"), {"k", "l", "energy", "fdl"}, rows);
  }
  return 0;
}

int cmd_taut(const Settings& s) {
  auto scan = spectra::taut_find_solutions(s.taut_n, s.m, s.omega, s.omega_lo, s.omega_hi);
  Sink sink(s.output);
  json j;
  j["config"] = s.resolved_config("taut");
  j["solutions"] = json::array();
  for (const auto& sol : scan.solutions)
    j["solutions"].push_back({{"n", sol.n},
                              {"m", sol.m},
                              {"omega_big", sol.omega_big},
                              {"b_field", sol.b_field},
                              {"e_prime", sol.e_prime},
                              {"energy", sol.energy},
                              {"coefficients", sol.coefficients}});
  j["rejected_omegas"] = scan.rejected_omegas;
  sink.out() << j.dump(2) << "\n";
  return 0;
}

int cmd_exact_n(const Settings& s) {
  json j;
  j["config"] = s.resolved_config("exact-n");
  if (s.model == "harmonic") {
    j["model"] = "harmonic-interaction";
    j["energy"] = spectra::harmonic_interaction_energy(s.n, s.b_nat(), s.omega, s.beta, s.w0);
  } else if (s.model == "inverse-square") {
    j["model"] = "inverse-square";
    j["energy"] = spectra::inverse_square_spectrum(s.taut_n, s.m, s.alpha, s.b_nat(), s.omega);
  } else {
    throw std::invalid_argument("model must be harmonic|inverse-square");
  }
  Sink sink(s.output);
  sink.out() << j.dump(2) << "\n";
  return 0;
}

int solve_to_csv(const Settings& s, dft::FunctionalKind kind, const DotParams& p,
                 const std::string& command, std::ostream& os,
                 dft::MinimizationResult* result_out = nullptr) {
  coulomb::RadialKernelTable kernel = make_kernel(s, p);
  dft::MinimizationResult r = dft::minimize(kind, p, kernel, s.solve_options());
  VectorXd veff = dft::effective_potential(r.density, p, kernel);

  std::vector<std::string> header = s.header_lines(command);
  header.push_back("# energy = " + fmt(s.energy_out(r.energy)));
  header.push_back("# mu = " + fmt(s.energy_out(r.chemical_potential)));
  header.push_back("# kkt_max_violation = " + fmt(r.kkt_max_violation));
  header.push_back("# converged = " + std::string(r.converged ? "true" : "false"));

  std::vector<std::vector<std::string>> rows;
  for (Eigen::Index i = 0; i < r.density.grid.size(); ++i) {
    double rr = r.density.grid.nodes(i);
    rows.push_back({fmt(s.len_out(rr)), fmt(s.density_out(r.density.values(i))),
                    fmt(s.energy_out(veff(i))), label_at(r.domains, rr)});
  }
  std::vector<std::string> cols = s.natural()
                                      ? std::vector<std::string>{"r", "rho", "veff", "domain"}
                                      : std::vector<std::string>{"r_nm", "rho_per_m2",
                                                                 "veff_mev", "domain"};
  write_csv(os, header, cols, rows);
  if (result_out) *result_out = r;
  return r.converged ? 0 : 3;
}

int cmd_solve(const Settings& s) {
  Sink sink(s.output);
  return solve_to_csv(s, parse_kind(s.kind), s.dot_params(), "solve", sink.out());
}

int cmd_domains(const Settings& s) {
  DotParams p = s.dot_params();
  coulomb::RadialKernelTable kernel = make_kernel(s, p);
  dft::MinimizationResult r = dft::minimize(dft::FunctionalKind::mtf, p, kernel,
                                            s.solve_options());
  Sink sink(s.output);
  std::vector<std::vector<std::string>> rows;
  for (const auto& d : r.domains)
    rows.push_back({fmt(s.len_out(d.r_lo)), fmt(s.len_out(d.r_hi)), domain_label(d),
                    std::to_string(d.level)});
  write_csv(sink.out(), s.header_lines("domains"),
            {s.natural() ? "r_lo" : "r_lo_nm", s.natural() ? "r_hi" : "r_hi_nm", "label",
             "level"},
            rows);
  return r.converged ? 0 : 3;
}

int cmd_point_charges(const Settings& s) {
  DotParams p = s.dot_params();
  charges::MultistartResult r = charges::minimize_points(s.n, p, s.multistart, s.seed);
  Sink sink(s.output);
  std::vector<std::string> header = s.header_lines("point-charges");
  header.push_back("# energy = " + fmt(s.energy_out(r.best.energy)));
  header.push_back("# gradient_norm = " + fmt(r.best.gradient_norm));
  header.push_back("# converged = " + std::string(r.converged ? "true" : "false"));
  std::vector<std::vector<std::string>> rows;
  for (Eigen::Index i = 0; i < r.best.positions.rows(); ++i)
    rows.push_back({std::to_string(i), fmt(s.len_out(r.best.positions(i, 0))),
                    fmt(s.len_out(r.best.positions(i, 1)))});
  write_csv(sink.out(), header,
            {"index", s.natural() ? "x" : "x_nm", s.natural() ? "y" : "y_nm"}, rows);
  return r.converged ? 0 : 3;
}

int cmd_scaling_check(const Settings& s) {
  DotParams p = s.dot_params();
  coulomb::RadialKernelTable kernel = make_kernel(s, p);
  dft::ScalingCheck c = dft::scaling_check(parse_kind(s.kind), p, kernel, s.solve_options());
  json j;
  j["config"] = s.resolved_config("scaling-check");
  j["energy_rel"] = c.energy_rel;
  j["density_l1_rel"] = c.density_l1_rel;
  Sink sink(s.output);
  sink.out() << j.dump(2) << "\n";
  return 0;
}

int cmd_limit_sweep(const Settings& s) {
  bool to_inf = s.direction == "b-to-infinity";
  if (!to_inf && s.direction != "b-to-zero")
    throw std::invalid_argument("direction must be b-to-infinity|b-to-zero");
  if (s.b_list.empty()) throw std::invalid_argument("limit-sweep: b_list required");
  std::vector<double> schedule;
  for (double bb : s.b_list) schedule.push_back(s.b_nat_of(bb));

  DotParams p = s.dot_params();
  coulomb::RadialKernelTable kernel = make_kernel(s, p);
  auto rows_data = dft::limit_sweep(to_inf, p, schedule, kernel, s.solve_options());

  Sink sink(s.output);
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : rows_data)
    rows.push_back({fmt(s.field_out(row.b_field)), fmt(row.energy_gap_rel),
                    fmt(row.density_l1)});
  write_csv(sink.out(), s.header_lines("limit-sweep"),
            {s.natural() ? "b" : "b_t", "energy_gap_rel", "density_l1"}, rows);
  return 0;
}

int cmd_figure1(const Settings& base) {
  // Fig. 1 defaults: GaAs, N = 50, K = 1.7 meV (decimal-comma caption),
  // B in {8, 7, 2, 0} T; B = 0 solved with the TF path.
  Settings s = base;
  s.units = "physical";
  s.material = "GaAs";
  s.n = 50;
  s.k = 1.7;

  std::vector<double> b_tesla = s.b_list.empty() ? std::vector<double>{8, 7, 2, 0}
                                                 : s.b_list;
  std::filesystem::create_directories(s.output_dir);
  DotParams p0 = s.dot_params();
  coulomb::RadialKernelTable kernel = make_kernel(s, p0);

  struct PerB {
    double b_t = 0.0;
    dft::MinimizationResult result;
    VectorXd veff;
  };
  auto solve_one = [&](double bt) {
    PerB out;
    out.b_t = bt;
    DotParams p = p0;
    p.b_field = bt / s.mat.b_star_t;
    auto kind = p.b_field > 0 ? dft::FunctionalKind::mtf : dft::FunctionalKind::tf;
    out.result = dft::minimize(kind, p, kernel, s.solve_options());
    out.veff = dft::effective_potential(out.result.density, p, kernel);
    return out;
  };
  std::vector<std::future<PerB>> futures;
  for (double bt : b_tesla)
    futures.push_back(std::async(std::launch::async, solve_one, bt));

  dft::LllThreshold thr = dft::lll_threshold(s.n, s.k_nat());
  json summary;
  summary["config"] = s.resolved_config("figure1");
  summary["threshold_b_t"] = thr.criterion_value * s.mat.b_star_t;
  summary["threshold_printed_b_t"] = thr.printed_value * s.mat.b_star_t;
  summary["profiles"] = json::array();

  int status = 0;
  for (auto& f : futures) {
    PerB pb = f.get();
    std::string path = s.output_dir + "/profile_b" + fmt(pb.b_t) + "T.csv";
    std::ofstream os(path);
    if (!os) throw std::invalid_argument("cannot open output file: " + path);

    std::vector<std::string> header = s.header_lines("figure1");
    header.push_back("# b_t = " + fmt(pb.b_t));
    header.push_back("# energy_mev = " + fmt(pb.result.energy * s.mat.e_star_mev));
    header.push_back("# mu_mev = " + fmt(pb.result.chemical_potential * s.mat.e_star_mev));
    std::vector<std::vector<std::string>> rows;
    const auto& g = pb.result.density.grid;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      double rho_1e14 = pb.result.density.values(i) * 1e18 /
                        (s.mat.a_star_nm * s.mat.a_star_nm) / 1e14;
      rows.push_back({fmt(g.nodes(i) * s.mat.a_star_nm), fmt(rho_1e14),
                      fmt(pb.veff(i) * s.mat.e_star_mev),
                      label_at(pb.result.domains, g.nodes(i))});
    }
    write_csv(os, header, {"r_nm", "rho_1e14_per_m2", "veff_mev", "domain"}, rows);

    json prof;
    prof["b_t"] = pb.b_t;
    prof["file"] = path;
    prof["energy_mev"] = pb.result.energy * s.mat.e_star_mev;
    prof["mu_mev"] = pb.result.chemical_potential * s.mat.e_star_mev;
    prof["converged"] = pb.result.converged;
    prof["plateaus_nm"] = json::array();
    for (const auto& d : pb.result.domains)
      if (d.label == dft::Domain::Label::incompressible)
        prof["plateaus_nm"].push_back({{"level", d.level},
                                       {"r_lo_nm", d.r_lo * s.mat.a_star_nm},
                                       {"r_hi_nm", d.r_hi * s.mat.a_star_nm}});
    summary["profiles"].push_back(prof);
    if (!pb.result.converged) status = 3;
  }
  std::ofstream os(s.output_dir + "/summary.json");
  if (!os) throw std::invalid_argument("cannot open output dir: " + s.output_dir);
  os << summary.dump(2) << "\n";
  return status;
}

int cmd_verify(const Settings& s) {
  json j;
  j["config"] = s.resolved_config("verify");
  int status = 0;
  auto put_report = [&](const verify::InequalityReport& r) {
    j["report"] = {{"name", r.name},       {"lhs", r.lhs},
                   {"rhs", r.rhs},         {"margin", r.margin},
                   {"pass", r.pass},       {"inconclusive", r.inconclusive},
                   {"note", r.note}};
    if (r.inconclusive) status = 4;
  };

  double b = s.b_nat();
  if (s.which == "exchange") {
    std::vector<int> ls = s.ls;
    if (ls.empty())
      for (int l = 0; l < s.n; ++l) ls.push_back(l);  // maximum density droplet
    int l_top = *std::max_element(ls.begin(), ls.end());
    RadialGrid grid = verify::lll_grid(l_top, b, 400);
    auto state = verify::make_lll_state(ls, b, grid);
    put_report(verify::exchange_inequality_check(state, coulomb::build_kernel(grid),
                                                 s.refine));
  } else if (s.which == "kinetic-bound") {
    std::vector<int> ls = s.ls;
    if (ls.empty())
      for (int l = 0; l < s.n; ++l) ls.push_back(l);
    int l_top = *std::max_element(ls.begin(), ls.end());
    RadialGrid grid = verify::lll_grid(l_top, b, 400);
    put_report(verify::kinetic_bound_check(verify::make_lll_state(ls, b, grid), s.lambda));
  } else if (s.which == "lieb-thirring") {
    double u0 = s.u0;
    verify::LtOptions opt;
    opt.n = s.lattice_n;
    opt.refine = s.refine;
    put_report(verify::lieb_thirring_check(
        [u0](double x, double y) { return u0 * std::exp(-(x * x + y * y)); }, b, s.lambda,
        opt));
  } else if (s.which == "block") {
    RadialGrid grid = verify::lll_grid(s.l_max, b, 400);
    verify::BlockReport r =
        verify::lll_block_structure(s.n, s.l_max, b, coulomb::build_kernel(grid));
    j["report"] = {{"name", "block-structure"},
                   {"sector_dimension", r.sector_dimension},
                   {"mdd_l3", r.mdd_l3},
                   {"max_cross_element", r.max_cross_element},
                   {"pass", r.pass}};
  } else {
    throw std::invalid_argument("which must be exchange|kinetic-bound|lieb-thirring|block");
  }
  Sink sink(s.output);
  sink.out() << j.dump(2) << "\n";
  return status;
}

}  // namespace

int run(int argc, const char* const* argv) {
  Settings s;
  std::string config_path;

  CLI::App app{"2D quantum dot ground states: spectra, density functionals, verification"};
  app.require_subcommand(1);
  app.add_option("--config", config_path, "JSON config file (flags override)");
  app.add_option("--units", s.units, "natural|physical")->capture_default_str();
  app.add_option("--material", s.material, "GaAs")->capture_default_str();
  app.add_option("--output", s.output, "output file (default stdout)");
  app.add_option("--format", s.format, "csv|json")->capture_default_str();
  app.add_option("--seed", s.seed, "RNG seed")->capture_default_str();
  app.add_option("--grid-intervals", s.grid_intervals)->capture_default_str();
  app.add_option("--grid-rmax", s.grid_rmax, "0: auto");
  app.add_option("--kkt-tol", s.kkt_tol)->capture_default_str();
  app.add_option("--max-iterations", s.max_iterations)->capture_default_str();
  app.add_option("--domain-tol", s.domain_tol)->capture_default_str();

  auto* spectrum = app.add_subcommand("spectrum", "Fock-Darwin / center-of-mass lines");
  spectrum->add_option("--b", s.b);
  spectrum->add_option("--omega", s.omega);
  spectrum->add_option("--count", s.count);

  auto* taut = app.add_subcommand("taut", "two-electron polynomial solutions");
  taut->add_option("--n", s.taut_n);
  taut->add_option("--m", s.m);
  taut->add_option("--omega", s.omega);
  taut->add_option("--omega-lo", s.omega_lo);
  taut->add_option("--omega-hi", s.omega_hi);

  auto* exact = app.add_subcommand("exact-n", "solvable N-body models");
  exact->add_option("--model", s.model, "harmonic|inverse-square");
  exact->add_option("--n", s.n);
  exact->add_option("--b", s.b);
  exact->add_option("--omega", s.omega);
  exact->add_option("--beta", s.beta);
  exact->add_option("--w0", s.w0);
  exact->add_option("--nr", s.taut_n);
  exact->add_option("--m", s.m);
  exact->add_option("--alpha", s.alpha);

  auto* solve = app.add_subcommand("solve", "minimize a density functional");
  solve->add_option("--kind", s.kind, "tf|mtf|classical");
  solve->add_option("--n", s.n);
  solve->add_option("--b", s.b);
  solve->add_option("--k", s.k);

  auto* points = app.add_subcommand("point-charges", "classical point configuration");
  points->add_option("--n", s.n);
  points->add_option("--k", s.k);
  points->add_option("--multistart", s.multistart);

  auto* domains = app.add_subcommand("domains", "incompressible/compressible rings");
  domains->add_option("--n", s.n);
  domains->add_option("--b", s.b);
  domains->add_option("--k", s.k);

  auto* fig1 = app.add_subcommand("figure1", "density-profile reproduction pipeline");
  fig1->add_option("--output-dir", s.output_dir)->capture_default_str();
  fig1->add_option("--grid-intervals", s.grid_intervals);

  auto* scaling = app.add_subcommand("scaling-check", "E(N,B,K) vs N^2 E(1,B/N,K/N)");
  scaling->add_option("--kind", s.kind);
  scaling->add_option("--n", s.n);
  scaling->add_option("--b", s.b);
  scaling->add_option("--k", s.k);

  auto* limit = app.add_subcommand("limit-sweep", "MTF energy gap to TF / classical");
  limit->add_option("--direction", s.direction, "b-to-infinity|b-to-zero");
  limit->add_option("--n", s.n);
  limit->add_option("--k", s.k);
  limit->add_option("--b-list", s.b_list)->delimiter(',');

  auto* verify_cmd = app.add_subcommand("verify", "inequality / structure checks");
  verify_cmd->add_option("--which", s.which, "exchange|kinetic-bound|lieb-thirring|block");
  verify_cmd->add_option("--n", s.n);
  verify_cmd->add_option("--b", s.b);
  verify_cmd->add_option("--lambda", s.lambda);
  verify_cmd->add_option("--u0", s.u0);
  verify_cmd->add_option("--lattice-n", s.lattice_n);
  verify_cmd->add_option("--l-max", s.l_max);
  verify_cmd->add_option("--ls", s.ls)->delimiter(',');
  verify_cmd->add_flag("--refine,!--no-refine", s.refine);

  try {
    app.parse(argc, argv);
    if (!config_path.empty()) {
      // config supplies defaults; re-parse so flags override it
      Settings from_file;
      apply_config_file(from_file, config_path);
      from_file.mat = Material::gaas();
      s = from_file;
      app.clear();
      app.parse(argc, argv);
    }
    if (s.units != "natural" && s.units != "physical")
      throw std::invalid_argument("units must be natural|physical");
    if (s.material != "GaAs") throw std::invalid_argument("unknown material: " + s.material);
    if (s.format != "csv" && s.format != "json")
      throw std::invalid_argument("format must be csv|json");

    if (spectrum->parsed()) return cmd_spectrum(s);
    if (taut->parsed()) return cmd_taut(s);
    if (exact->parsed()) return cmd_exact_n(s);
    if (solve->parsed()) return cmd_solve(s);
    if (points->parsed()) return cmd_point_charges(s);
    if (domains->parsed()) return cmd_domains(s);
    if (fig1->parsed()) return cmd_figure1(s);
    if (scaling->parsed()) return cmd_scaling_check(s);
    if (limit->parsed()) return cmd_limit_sweep(s);
    if (verify_cmd->parsed()) return cmd_verify(s);
    throw std::invalid_argument("no command given");
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qdot::cli
