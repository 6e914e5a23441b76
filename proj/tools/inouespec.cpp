// Command-line driver: analyze | spectrum | orbit | mode | bessel-check.
// Exit codes: 0 ok/consistent, 2 input error, 3 confirmed contradiction,
// 4 anomalies present.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "inoue/bessel.hpp"
#include "inoue/errors.hpp"
#include "inoue/report.hpp"

namespace {

using namespace inoue;

struct MatrixSource {
  std::string inline_entries;  // "0,1,0,0,1,1,1,0,1"
  std::string file;            // JSON array of arrays
  std::optional<int> cs;       // Cappell-Shaneson index
};

struct OutputOptions {
  std::string out;        // empty = stdout
  std::string format = "json";
  std::string plot_data;  // spectrum only
};

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    vals.push_back(std::stoll(item, &pos));
    if (pos != item.size()) throw std::invalid_argument("trailing characters");
  }
  return vals;
}

InoueMatrix load_matrix(const MatrixSource& src) {
  int given = (!src.inline_entries.empty() ? 1 : 0) + (!src.file.empty() ? 1 : 0) +
              (src.cs.has_value() ? 1 : 0);
  if (given != 1)
    fail(Err::BadConfig,
         "exactly one of --matrix, --matrix-file, --cs must be given");
  if (src.cs) return cappell_shaneson(*src.cs);

  Mat3i entries{};
  if (!src.inline_entries.empty()) {
    auto vals = parse_int_list(src.inline_entries);
    if (vals.size() != 9)
      fail(Err::BadConfig, "--matrix needs nine comma-separated integers");
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) entries[i][j] = vals[i * 3 + j];
  } else {
    std::ifstream in(src.file);
    if (!in) fail(Err::BadConfig, "cannot open matrix file " + src.file);
    Json j = Json::parse(in);
    if (!j.is_array() || j.size() != 3)
      fail(Err::BadConfig, "matrix file must hold a 3x3 array of arrays");
    for (int i = 0; i < 3; ++i) {
      if (!j[i].is_array() || j[i].size() != 3)
        fail(Err::BadConfig, "matrix file must hold a 3x3 array of arrays");
      for (int jj = 0; jj < 3; ++jj) entries[i][jj] = j[i][jj].get<std::int64_t>();
    }
  }
  return validate_matrix(entries);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(path);
    if (!out) fail(Err::BadConfig, "cannot open output file " + path);
    out << content;
  }
}

int emit_error(const Error& e) {
  std::cout << error_json(err_name(e.code()), e.what()).dump(2) << std::endl;
  return 2;
}

// Configuration file selected only through the environment; flags given on
// the command line win over file values, which win over defaults.
Json load_config_file() {
  const char* path = std::getenv("INOUESPEC_CONFIG");
  if (!path || !*path) return Json::object();
  std::ifstream in(path);
  if (!in) fail(Err::BadConfig, std::string("cannot open config file ") + path);
  return Json::parse(in);
}

template <typename T>
void apply_config(const Json& file_cfg, const CLI::Option* opt,
                  const char* key, T& value) {
  if (opt->count() == 0 && file_cfg.contains(key))
    value = file_cfg[key].get<T>();
}

int cmd_analyze(const MatrixSource& src, const OutputOptions& out) {
  const InoueMatrix M = load_matrix(src);
  const EigenData E = eigen_data(M);
  const LatticeBasis B = lattice_basis(E);
  write_output(out.out, analyze_json(M, E, B).dump(2));
  return 0;
}

int cmd_spectrum(const MatrixSource& src, const OutputOptions& out,
                 const ScanConfig& cfg, int delta_points) {
  if (delta_points < 2) fail(Err::BadConfig, "--delta-points must be >= 2");
  if (cfg.seed_bound < 1) fail(Err::BadConfig, "--seed-bound must be >= 1");
  if (!(cfg.tol_rel > 0) || !(cfg.tol_abs > 0) || !(cfg.flag_threshold > 0))
    fail(Err::BadConfig, "tolerances must be positive");

  const InoueMatrix M = load_matrix(src);
  const EigenData E = eigen_data(M);
  const LatticeBasis B = lattice_basis(E);
  const SpectrumReport report = annulus_scan(E, B, M, delta_grid(delta_points), cfg);

  if (out.format == "csv")
    write_output(out.out, report_csv(report));
  else
    write_output(out.out, report_json(report).dump(2));
  if (!out.plot_data.empty()) {
    std::ofstream p(out.plot_data);
    if (!p) fail(Err::BadConfig, "cannot open plot-data file " + out.plot_data);
    p << report_plot_data(report);
  }

  if (report.verdict == Verdict::contradiction) return 3;
  if (!report.anomalies.empty()) return 4;
  return 0;
}

int cmd_orbit(const MatrixSource& src, const std::string& seed_text,
              const std::string& range_text, const OutputOptions& out) {
  auto seed_vals = parse_int_list(seed_text);
  if (seed_vals.size() != 3) fail(Err::BadConfig, "--seed needs k,l,m");
  auto range_vals = parse_int_list(range_text);
  if (range_vals.size() != 2) fail(Err::BadConfig, "--range needs lo,hi");

  const InoueMatrix M = load_matrix(src);
  const EigenData E = eigen_data(M);
  const LatticeBasis B = lattice_basis(E);
  const Mode seed{seed_vals[0], seed_vals[1], seed_vals[2]};
  const OrbitSegment seg = orbit_segment(M, seed, range_vals[0], range_vals[1]);

  std::ostringstream os;
  for (std::size_t i = 0; i < seg.modes.size(); ++i) {
    const ModeCoeff c = mode_coefficients(B, seg.modes[i]);
    Json line;
    line["n"] = seg.n_lo + static_cast<std::int64_t>(i);
    line["mode"] = json_mode(seg.modes[i]);
    line["P"] = c.P;
    line["Q"] = json_complex(c.Q);
    os << line.dump() << '\n';
  }
  write_output(out.out, os.str());
  return 0;
}

int cmd_mode(const MatrixSource& src, const std::string& mode_text,
             double delta, const ScanConfig& cfg, const OutputOptions& out) {
  auto vals = parse_int_list(mode_text);
  if (vals.size() != 3) fail(Err::BadConfig, "--mode needs k,l,m");

  const InoueMatrix M = load_matrix(src);
  const EigenData E = eigen_data(M);
  const LatticeBasis B = lattice_basis(E);
  const ModeCoeff coeff = mode_coefficients(B, Mode{vals[0], vals[1], vals[2]});
  const TwistParameter tw = TwistParameter::from_delta(delta, E.log_alpha);

  Json j;
  j["mode"] = json_mode(coeff.mode);
  j["P"] = coeff.P;
  j["Q"] = json_complex(coeff.Q);
  j["delta"] = delta;
  if (std::abs(coeff.P) <= kPZeroThreshold) {
    const PZeroMembership m = p_zero_membership(std::abs(coeff.Q), delta);
    j["p_zero_branch"] = true;
    j["no_nonzero_solution"] = m.no_nonzero_solution;
  } else {
    MatchingOptions opt;
    opt.integ.rel_tol = cfg.tol_rel;
    opt.integ.abs_tol = cfg.tol_abs;
    opt.lambda = cfg.lambda;
    opt.t_floor = cfg.t_floor;
    const MatchingResult r = matching_determinant(coeff, tw, opt);
    j["det"] = json_complex(r.det);
    j["abs_det"] = std::abs(r.det);
    j["T_plus"] = r.t_plus;
    j["T_minus"] = r.t_minus;
    j["steps"] = r.steps;
    j["logmag_plus"] = r.logmag_plus;
    j["logmag_minus"] = r.logmag_minus;
    j["flagged"] = std::abs(r.det) < cfg.flag_threshold;
  }
  write_output(out.out, j.dump(2));
  return 0;
}

int cmd_bessel_check(const OutputOptions& out) {
  // Wronskian I_nu(x) K_nu'(x) - I_nu'(x) K_nu(x) = -1/x, using
  // I0' = I1, K0' = -K1, I1' = I0 - I1/x, K1' = -K0 - K1/x.
  std::ostringstream os;
  os << "# x  wronskian_rel_err_nu0  wronskian_rel_err_nu1\n";
  os.precision(3);
  double worst = 0.0;
  for (double x : {0.1, 0.5, 1.0, 2.0, 2.5, 5.0, 10.0, 15.0, 15.5, 20.0, 30.0}) {
    const double i0 = bessel_i(0, x), i1 = bessel_i(1, x);
    const double k0 = bessel_k(0, x), k1 = bessel_k(1, x);
    const double w0 = i0 * (-k1) - i1 * k0;
    const double w1 = i1 * (-k0 - k1 / x) - (i0 - i1 / x) * k1;
    const double r0 = std::abs(w0 * (-x) - 1.0);
    const double r1 = std::abs(w1 * (-x) - 1.0);
    worst = std::max({worst, r0, r1});
    os << x << "  " << r0 << "  " << r1 << '\n';
  }
  os << "# worst relative error: " << worst << '\n';
  write_output(out.out, os.str());
  return worst <= 1e-10 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral sets of twisted Dirac operators on Inoue surfaces"};
  app.require_subcommand(1);

  MatrixSource src;
  OutputOptions out;
  ScanConfig cfg;
  int delta_points = 51;
  std::string seed_text, range_text = "0,0", mode_text;
  double delta = 0.0;

  auto add_matrix_flags = [&](CLI::App* cmd) {
    cmd->add_option("--matrix", src.inline_entries,
                    "nine integers, row-major, comma-separated");
    cmd->add_option("--matrix-file", src.file, "JSON file with a 3x3 array");
    cmd->add_option("--cs", src.cs, "Cappell-Shaneson family index m");
  };
  auto add_output_flags = [&](CLI::App* cmd) {
    cmd->add_option("--out", out.out, "output path (default stdout)");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "eigen-data and lattice basis");
  add_matrix_flags(analyze);
  add_output_flags(analyze);

  CLI::App* spectrum = app.add_subcommand("spectrum", "annulus scan");
  add_matrix_flags(spectrum);
  add_output_flags(spectrum);
  auto* o_bound = spectrum->add_option("--seed-bound", cfg.seed_bound);
  auto* o_dp = spectrum->add_option("--delta-points", delta_points);
  auto* o_rel = spectrum->add_option("--tol-rel", cfg.tol_rel);
  auto* o_abs = spectrum->add_option("--tol-abs", cfg.tol_abs);
  auto* o_flag = spectrum->add_option("--flag-threshold", cfg.flag_threshold);
  auto* o_workers = spectrum->add_option("--workers", cfg.workers);
  spectrum->add_option("--format", out.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  spectrum->add_option("--plot-data", out.plot_data,
                       "write a gnuplot |det| grid here");

  CLI::App* orbit = app.add_subcommand("orbit", "orbit segment as JSON lines");
  add_matrix_flags(orbit);
  add_output_flags(orbit);
  orbit->add_option("--seed", seed_text, "k,l,m")->required();
  orbit->add_option("--range", range_text, "n_lo,n_hi")->required();

  CLI::App* mode = app.add_subcommand("mode", "matching determinant for one cell");
  add_matrix_flags(mode);
  add_output_flags(mode);
  mode->add_option("--mode", mode_text, "k,l,m")->required();
  mode->add_option("--delta", delta, "band coordinate");
  auto* o_rel2 = mode->add_option("--tol-rel", cfg.tol_rel);
  auto* o_abs2 = mode->add_option("--tol-abs", cfg.tol_abs);

  CLI::App* bessel = app.add_subcommand("bessel-check", "Wronskian residual table");
  add_output_flags(bessel);

  CLI11_PARSE(app, argc, argv);

  try {
    const Json file_cfg = load_config_file();
    if (spectrum->parsed()) {
      apply_config(file_cfg, o_bound, "seed_bound", cfg.seed_bound);
      apply_config(file_cfg, o_dp, "delta_points", delta_points);
      apply_config(file_cfg, o_rel, "tol_rel", cfg.tol_rel);
      apply_config(file_cfg, o_abs, "tol_abs", cfg.tol_abs);
      apply_config(file_cfg, o_flag, "flag_threshold", cfg.flag_threshold);
      apply_config(file_cfg, o_workers, "workers", cfg.workers);
    }
    if (mode->parsed()) {
      apply_config(file_cfg, o_rel2, "tol_rel", cfg.tol_rel);
      apply_config(file_cfg, o_abs2, "tol_abs", cfg.tol_abs);
    }

    if (analyze->parsed()) return cmd_analyze(src, out);
    if (spectrum->parsed()) return cmd_spectrum(src, out, cfg, delta_points);
    if (orbit->parsed()) return cmd_orbit(src, seed_text, range_text, out);
    if (mode->parsed()) return cmd_mode(src, mode_text, delta, cfg, out);
    if (bessel->parsed()) return cmd_bessel_check(out);
  } catch (const Error& e) {
    return emit_error(e);
  } catch (const std::exception& e) {
    std::cout << error_json("DomainError", e.what()).dump(2) << std::endl;
    return 2;
  }
  return 2;
}
