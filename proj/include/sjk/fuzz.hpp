#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace sjk {

struct FuzzOptions {
  int n = 2;
  double k = 4.0;
  double mu = 1.0;
  int trials = 50;
  std::uint64_t seed = 7;
  /// all | metric | inverse | curvature | laplacian | invariance | cayley |
  /// volume | kernels | parseval
  std::string category = "all";
  std::map<std::string, double> tol_overrides;
  double radius = 0.9;
  /// 0: read SJK_THREADS, else hardware concurrency.
  int threads = 0;
  /// Test hook: scales the h4 block before the inverse check.
  double corrupt_h4_scale = 1.0;
};

struct PropertyResult {
  std::string property;
  std::string category;
  int trials = 0;
  double max_error = 0.0;
  double tol = 0.0;
  bool pass = true;
  std::uint64_t worst_seed = 0;
  nlohmann::json worst_point;
  std::string failure;  // exception text from the worst trial, if any
};

struct FuzzReport {
  std::vector<PropertyResult> properties;
  bool pass() const;
  nlohmann::json to_json() const;
  const PropertyResult* find(const std::string& name) const;
};

FuzzReport fuzz_all(const FuzzOptions& opts);

/// Names of every property in a category ("all" lists everything).
std::vector<std::string> fuzz_property_names(const std::string& category);
bool is_fuzz_category(const std::string& category);

int resolve_threads(int requested);

}  // namespace sjk
