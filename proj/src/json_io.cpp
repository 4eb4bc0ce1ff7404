#include "sjk/json_io.hpp"

#include <string>

#include "sjk/error.hpp"

namespace sjk::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

int dim_of(const json& j, int fallback) {
  if (j.is_object() && j.contains("n")) {
    if (!j.at("n").is_number_integer()) bad("'n' must be an integer");
    return j.at("n").get<int>();
  }
  return fallback;
}

void check_square(const CMat& M, int n, const char* name) {
  if (M.rows() != n || M.cols() != n) bad(std::string(name) + " must be n x n with n = " + std::to_string(n));
}

}  // namespace

json to_json(cplx c) { return json::array({c.real(), c.imag()}); }

json to_json(const CVec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

json to_json(const CMat& M) {
  json a = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(to_json(M(i, j)));
    a.push_back(std::move(row));
  }
  return a;
}

json to_json(const RVec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json to_json(const RMat& M) {
  json a = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    a.push_back(std::move(row));
  }
  return a;
}

cplx cplx_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    bad("complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

CVec cvec_from(const json& j) {
  if (!j.is_array()) bad("vector must be an array");
  CVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = cplx_from(j[i]);
  return v;
}

CMat cmat_from(const json& j) {
  if (!j.is_array() || j.empty()) bad("matrix must be a non-empty array of rows");
  const auto r = j.size();
  const auto c = j[0].is_array() ? j[0].size() : 0;
  CMat M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c) bad("matrix rows must have equal length");
    for (std::size_t k = 0; k < c; ++k) M(Eigen::Index(i), Eigen::Index(k)) = cplx_from(j[i][k]);
  }
  return M;
}

RVec rvec_from(const json& j) {
  if (!j.is_array()) bad("vector must be an array");
  RVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) bad("real vector entries must be numbers");
    v(Eigen::Index(i)) = j[i].get<double>();
  }
  return v;
}

RMat rmat_from(const json& j) {
  if (!j.is_array() || j.empty()) bad("matrix must be a non-empty array of rows");
  const auto r = j.size();
  const auto c = j[0].is_array() ? j[0].size() : 0;
  RMat M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c) bad("matrix rows must have equal length");
    for (std::size_t k = 0; k < c; ++k) {
      if (!j[i][k].is_number()) bad("real matrix entries must be numbers");
      M(Eigen::Index(i), Eigen::Index(k)) = j[i][k].get<double>();
    }
  }
  return M;
}

json to_json(const SiegelBallPoint& p) { return {{"n", p.n()}, {"W", to_json(p.W)}}; }
json to_json(const JacobiBallPoint& p) { return {{"n", p.n()}, {"z", to_json(p.z)}, {"W", to_json(p.W)}}; }
json to_json(const SiegelUpperPoint& p) { return {{"n", p.n()}, {"V", to_json(p.V)}}; }
json to_json(const JacobiUpperPoint& p) { return {{"n", p.n()}, {"u", to_json(p.u)}, {"V", to_json(p.V)}}; }
json to_json(const FcPoint& p) { return {{"n", p.n()}, {"eta", to_json(p.eta)}, {"W", to_json(p.W)}}; }

json to_json(const AnyPoint& p) {
  return std::visit([](const auto& x) { return to_json(x); }, p);
}

JacobiBallPoint jacobi_ball_from(const json& j) {
  CMat W = cmat_from(field(j, "W"));
  const int n = dim_of(j, static_cast<int>(W.rows()));
  check_square(W, n, "W");
  CVec z = j.contains("z") ? cvec_from(j.at("z")) : CVec::Zero(n);
  if (z.size() != n) bad("z must have n entries");
  return {std::move(z), std::move(W)};
}

JacobiUpperPoint jacobi_upper_from(const json& j) {
  CMat V = cmat_from(field(j, "V"));
  const int n = dim_of(j, static_cast<int>(V.rows()));
  check_square(V, n, "V");
  CVec u = j.contains("u") ? cvec_from(j.at("u")) : CVec::Zero(n);
  if (u.size() != n) bad("u must have n entries");
  return {std::move(u), std::move(V)};
}

FcPoint fc_from(const json& j) {
  CMat W = cmat_from(field(j, "W"));
  const int n = dim_of(j, static_cast<int>(W.rows()));
  check_square(W, n, "W");
  CVec eta = cvec_from(field(j, "eta"));
  if (eta.size() != n) bad("eta must have n entries");
  return {std::move(eta), std::move(W)};
}

json to_json(const JacobiElementC& h) {
  return {{"p", to_json(h.g.p)}, {"q", to_json(h.g.q)}, {"alpha", to_json(h.alpha)}, {"t", h.t}};
}

json to_json(const JacobiElementR& h) {
  return {{"a", to_json(h.g.a)},
          {"b", to_json(h.g.b)},
          {"c", to_json(h.g.c)},
          {"d", to_json(h.g.d)},
          {"lambda_mu", to_json(h.lambda_mu)},
          {"k_center", h.k_center}};
}

JacobiElementC jacobi_c_from(const json& j) {
  SymplecticC g = SymplecticC::make(cmat_from(field(j, "p")), cmat_from(field(j, "q")));
  CVec alpha = j.contains("alpha") ? cvec_from(j.at("alpha")) : CVec::Zero(g.n());
  if (alpha.size() != g.n()) bad("alpha must have n entries");
  const double t = j.contains("t") ? j.at("t").get<double>() : 0.0;
  return {std::move(g), std::move(alpha), t};
}

JacobiElementR jacobi_r_from(const json& j) {
  SymplecticR g = SymplecticR::make(rmat_from(field(j, "a")), rmat_from(field(j, "b")), rmat_from(field(j, "c")),
                                    rmat_from(field(j, "d")));
  RVec X = j.contains("lambda_mu") ? rvec_from(j.at("lambda_mu")) : RVec::Zero(2 * g.n());
  if (X.size() != 2 * g.n()) bad("lambda_mu must have 2n entries");
  const double k = j.contains("k_center") ? j.at("k_center").get<double>() : 0.0;
  return {std::move(g), std::move(X), k};
}

json to_json(const MetricEval& e) {
  return {{"h1", to_json(e.h1)}, {"h2", to_json(e.h2)}, {"h3", to_json(e.h3)}, {"h4", to_json(e.h4)},
          {"h", to_json(e.h)}};
}

json to_json(const MetricInverse& e) {
  return {{"inv1", to_json(e.i1)}, {"inv2", to_json(e.i2)}, {"inv3", to_json(e.i3)}, {"inv4", to_json(e.i4)},
          {"h_inv", to_json(e.h_inv)}};
}

json to_json(const Determinant& d) {
  return {{"value", d.value}, {"closed_form", d.closed_form}, {"constant_C", d.constant_C}};
}

json to_json(const CurvatureData& c) {
  return {{"ric", to_json(c.ric)}, {"scalar_curvature", c.scalar_curvature}, {"qk_lu", to_json(c.qk_lu)}};
}

}  // namespace sjk::io
