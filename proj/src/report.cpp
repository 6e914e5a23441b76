#include "inoue/report.hpp"

#include <cmath>
#include <sstream>

namespace inoue {

Json json_complex(const Complex& z) {
  return Json{{"re", z.real()}, {"im", z.imag()}};
}

Json json_mat3(const Mat3& a) {
  Json rows = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 3; ++j) row.push_back(a(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json json_mat3i(const Mat3i& a) {
  Json rows = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 3; ++j) row.push_back(a[i][j]);
    rows.push_back(row);
  }
  return rows;
}

Json json_mode(const Mode& m) {
  return Json::array({m.k, m.l, m.m});
}

Json analyze_json(const InoueMatrix& M, const EigenData& E,
                  const LatticeBasis& B) {
  // Residual diagnostics: characteristic-polynomial residuals, the
  // structural identity M Y = Y A^t, det Y and the eigenvalue product.
  const auto [c2, c1] = char_poly(M);
  const double pa = ((E.alpha - static_cast<double>(c2)) * E.alpha +
                     static_cast<double>(c1)) * E.alpha - 1.0;
  const Complex pb = ((E.beta - static_cast<double>(c2)) * E.beta +
                      static_cast<double>(c1)) * E.beta - 1.0;

  Mat3 MY{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        MY(i, j) += static_cast<double>(M.entries[i][k]) * B.Y(k, j);
  const double my_residual = max_abs_diff(MY, matmul(B.Y, transpose(B.A)));

  Json j;
  j["matrix"] = json_mat3i(M.entries);
  j["char_poly"] = {{"c2", c2}, {"c1", c1}};
  j["alpha"] = E.alpha;
  j["beta"] = json_complex(E.beta);
  j["log_alpha"] = E.log_alpha;
  j["Y"] = json_mat3(B.Y);
  j["Yinv"] = json_mat3(B.Yinv);
  j["A"] = json_mat3(B.A);
  j["residuals"] = {
      {"char_poly_alpha", std::abs(pa)},
      {"char_poly_beta", std::abs(pb)},
      {"MY_minus_YAt_max", my_residual},
      {"detY_minus_1", det3(B.Y) - 1.0},
      {"alpha_beta2_minus_1", E.alpha * std::norm(E.beta) - 1.0},
  };
  return j;
}

namespace {

const char* scale_name(OperatorScale s) {
  switch (s) {
    case OperatorScale::dolbeault: return "dolbeault";
    case OperatorScale::dminus: return "dminus";
    case OperatorScale::dplus: return "dplus";
  }
  return "?";
}

Json json_point(const SpectralPoint& p) {
  Json j;
  j["z"] = json_complex(p.z);
  j["operator"] = scale_name(p.scale);
  j["source"] = (p.source == PointSource::finite_orbit) ? "FiniteOrbit" : "ScanFlag";
  if (p.source == PointSource::scan_flag) {
    j["mode"] = json_mode(p.mode);
    j["delta"] = p.delta;
  }
  return j;
}

Json json_config(const ScanConfig& c) {
  Json j;
  j["seed_bound"] = c.seed_bound;
  j["tol_rel"] = c.tol_rel;
  j["tol_abs"] = c.tol_abs;
  j["flag_threshold"] = c.flag_threshold;
  j["lambda"] = c.lambda;
  j["t_floor"] = c.t_floor;
  j["oracle_threshold"] = c.oracle_threshold;
  j["fd_step"] = c.fd_step;
  j["workers"] = c.workers;
  return j;
}

}  // namespace

Json report_json(const SpectrumReport& r) {
  Json j;
  j["version"] = kVersion;
  j["config"] = json_config(r.config);
  j["surface"] = {
      {"matrix", json_mat3i(r.matrix)},
      {"alpha", r.alpha},
      {"beta", json_complex(r.beta)},
      {"log_alpha", r.log_alpha},
  };
  j["scan"] = {
      {"seed_bound", r.config.seed_bound},
      {"mode_count", r.representatives.size()},
      {"delta_grid", r.deltas},
  };
  Json reps = Json::array();
  for (const Mode& m : r.representatives) reps.push_back(json_mode(m));
  j["scan"]["representatives"] = reps;

  Json results = Json::array();
  for (const CellResult& cell : r.results) {
    Json c;
    c["mode"] = json_mode(cell.match.mode);
    c["delta"] = cell.match.delta;
    if (!cell.error.empty()) {
      c["error"] = cell.error;
    } else if (cell.p_zero_branch) {
      c["p_zero_branch"] = true;
      c["no_nonzero_solution"] = cell.membership.no_nonzero_solution;
    } else {
      c["det"] = json_complex(cell.match.det);
      c["T_plus"] = cell.match.t_plus;
      c["T_minus"] = cell.match.t_minus;
      c["steps"] = cell.match.steps;
      c["logmag_plus"] = cell.match.logmag_plus;
      c["logmag_minus"] = cell.match.logmag_minus;
    }
    c["flagged"] = cell.flagged;
    results.push_back(c);
  }
  j["results"] = results;

  Json flagged = Json::array();
  for (const SpectralPoint& p : r.flagged) flagged.push_back(json_point(p));
  j["flagged"] = flagged;
  j["anomalies"] = r.anomalies;

  auto points = [](const std::vector<Complex>& zs) {
    Json arr = Json::array();
    for (const Complex& z : zs) arr.push_back(json_complex(z));
    return arr;
  };
  j["finite_orbit_points"] = {
      {"dolbeault", points(r.finite_orbit.dolbeault)},
      {"dminus", points(r.finite_orbit.dminus)},
      {"dplus", points(r.finite_orbit.dplus)},
  };
  j["verdict"] = (r.verdict == Verdict::consistent_with_theorem)
                     ? "ConsistentWithTheorem"
                     : "Contradiction";
  if (r.verdict == Verdict::contradiction)
    j["contradiction_details"] = r.contradiction_details;
  return j;
}

std::string report_csv(const SpectrumReport& r) {
  std::ostringstream os;
  os << "mode_k,mode_l,mode_m,delta,det_re,det_im,flagged\n";
  os.precision(17);
  for (const CellResult& cell : r.results) {
    os << cell.match.mode.k << ',' << cell.match.mode.l << ','
       << cell.match.mode.m << ',' << cell.match.delta << ','
       << cell.match.det.real() << ',' << cell.match.det.imag() << ','
       << (cell.flagged ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string report_plot_data(const SpectrumReport& r) {
  std::ostringstream os;
  os << "# orbit_index delta abs_det\n";
  os.precision(17);
  const std::size_t nd = r.deltas.size();
  for (std::size_t i = 0; i < r.representatives.size(); ++i) {
    for (std::size_t d = 0; d < nd; ++d) {
      const CellResult& cell = r.results[i * nd + d];
      os << i << ' ' << cell.match.delta << ' ' << std::abs(cell.match.det)
         << '\n';
    }
    os << '\n';
  }
  return os.str();
}

Json error_json(const std::string& code, const std::string& message) {
  Json j;
  j["error"] = {{"code", code}, {"message", message}};
  return j;
}

}  // namespace inoue
