#pragma once

#include <json.hpp>

#include "sjk/domains.hpp"
#include "sjk/groups.hpp"
#include "sjk/metric.hpp"

namespace sjk::io {

using json = nlohmann::json;

// complex -> [re, im]; vectors as arrays; matrices as row-major arrays of rows.
json to_json(cplx c);
json to_json(const CVec& v);
json to_json(const CMat& M);
json to_json(const RVec& v);
json to_json(const RMat& M);

cplx cplx_from(const json& j);
CVec cvec_from(const json& j);
CMat cmat_from(const json& j);
RVec rvec_from(const json& j);
RMat rmat_from(const json& j);

json to_json(const SiegelBallPoint& p);
json to_json(const JacobiBallPoint& p);
json to_json(const SiegelUpperPoint& p);
json to_json(const JacobiUpperPoint& p);
json to_json(const FcPoint& p);
json to_json(const AnyPoint& p);

/// Accepts {"n","W"} with optional "z" (zero when absent).
JacobiBallPoint jacobi_ball_from(const json& j);
/// Accepts {"n","V"} with optional "u".
JacobiUpperPoint jacobi_upper_from(const json& j);
FcPoint fc_from(const json& j);

json to_json(const JacobiElementC& h);
json to_json(const JacobiElementR& h);
JacobiElementC jacobi_c_from(const json& j);
JacobiElementR jacobi_r_from(const json& j);

json to_json(const MetricEval& e);
json to_json(const MetricInverse& e);
json to_json(const Determinant& d);
json to_json(const CurvatureData& c);

}  // namespace sjk::io
