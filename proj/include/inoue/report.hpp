#pragma once

#include <string>

#include <json.hpp>

#include "inoue/spectral.hpp"

namespace inoue {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

Json json_complex(const Complex& z);
Json json_mat3(const Mat3& a);
Json json_mat3i(const Mat3i& a);
Json json_mode(const Mode& m);

/// analyze output: alpha, beta, Y, Yinv, A plus residual diagnostics.
Json analyze_json(const InoueMatrix& M, const EigenData& E,
                  const LatticeBasis& B);

/// Full scan report. Field order is fixed; identical reports serialize to
/// identical bytes.
Json report_json(const SpectrumReport& r);

/// One row per scan cell: mode_k,mode_l,mode_m,delta,det_re,det_im,flagged
std::string report_csv(const SpectrumReport& r);

/// gnuplot-ready |det| grid over (orbit index, delta), blocks separated by
/// blank lines.
std::string report_plot_data(const SpectrumReport& r);

Json error_json(const std::string& code, const std::string& message);

}  // namespace inoue
