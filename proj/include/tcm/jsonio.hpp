#pragma once

// Deterministic JSON reports: insertion-ordered keys, shortest
// round-trip float formatting (the library default), schema_version on
// every top-level document.

#include <json.hpp>

#include <Eigen/Dense>
#include <complex>

#include "tcm/phase.hpp"

namespace tcm {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json json_vec(const Eigen::Ref<const Eigen::VectorXd>& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline Json json_value3(const IntegralValue& v) { return json_vec(v); }

template <class Mat>
Json json_matrix(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

inline Json json_complex(std::complex<double> z) {
  return Json::array({z.real(), z.imag()});
}

inline Json report_skeleton(const std::string& kind) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

}  // namespace tcm
