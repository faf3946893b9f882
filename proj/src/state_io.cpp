#include "gdiscord/state_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gdiscord {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

double number_at(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) fail(std::string("missing numeric field: ") + key);
  return j[key].get<double>();
}

Mat4 cov_from_json(const json& j) {
  std::vector<double> flat;
  if (j.is_array() && j.size() == 16 && j[0].is_number()) {
    flat = j.get<std::vector<double>>();
  } else if (j.is_array() && j.size() == 4 && j[0].is_array()) {
    for (const auto& row : j) {
      if (!row.is_array() || row.size() != 4) fail("cov rows must have 4 entries");
      for (const auto& v : row) flat.push_back(v.get<double>());
    }
  } else {
    fail("cov must be 16 numbers row-major or a 4x4 nested array");
  }
  Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = flat[static_cast<std::size_t>(4 * r + c)];
  double scale = m.cwiseAbs().maxCoeff();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, scale))
    fail("symmetry violation in covariance input");
  return m;
}

}  // namespace

StateSpec parse_state_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("invalid state document: ") + e.what());
  }
  if (!j.is_object()) fail("state document must be an object");

  const int present = static_cast<int>(j.contains("standard")) +
                      static_cast<int>(j.contains("cov")) + static_cast<int>(j.contains("family"));
  if (present != 1) fail("state document must contain exactly one of: standard, cov, family");

  StateSpec spec;
  try {
    if (j.contains("standard")) {
      const json& s = j["standard"];
      spec.standard = StandardFormParams(number_at(s, "a"), number_at(s, "b"), number_at(s, "c"),
                                         number_at(s, "d"));
    } else if (j.contains("cov")) {
      spec.cov = TwoModeCov::from_matrix(cov_from_json(j["cov"]));
    } else {
      const json& f = j["family"];
      if (!f.contains("variant") || !f["variant"].is_string())
        fail("family needs a string field: variant");
      std::map<std::string, double> params;
      for (const auto& [key, value] : f.items()) {
        if (key == "variant") continue;
        if (!value.is_number()) fail("family parameter " + key + " must be numeric");
        params[key] = value.get<double>();
      }
      spec.family = make_family(f["variant"].get<std::string>(), params);
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    fail(std::string("invalid state: ") + e.what());
  }
  return spec;
}

StateSpec load_state_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read state file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_spec(buf.str());
}

TwoModeCov realize_state(const StateSpec& spec) {
  TwoModeCov cov = [&]() {
    try {
      if (spec.standard) return spec.standard->to_cov();
      if (spec.cov) return *spec.cov;
      if (spec.family) return family_cov(*spec.family);
    } catch (const std::exception& e) {
      fail(std::string("invalid state: ") + e.what());
    }
    fail("empty state spec");
  }();
  if (!physicality_check(cov)) {
    double nu_min = 0.0;
    try {
      nu_min = symplectic_eigenvalues(cov).second;
    } catch (const std::exception&) {
      fail("state not physical: covariance not positive definite");
    }
    fail("state not physical: min symplectic eigenvalue " + format_g12(nu_min) + " below 1");
  }
  return cov;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::symmetric_t:
      return "symmetric_t";
    case Family::cc_ca:
      return "cc_ca";
    case Family::asymmetric:
      return "asymmetric";
  }
  return "unknown";
}

Family family_from_name(const std::string& name) {
  if (name == "symmetric_t") return Family::symmetric_t;
  if (name == "cc_ca") return Family::cc_ca;
  if (name == "asymmetric") return Family::asymmetric;
  fail("unknown family: " + name + " (expected symmetric_t, cc_ca, or asymmetric)");
}

std::vector<std::string> family_param_names(Family f) {
  switch (f) {
    case Family::symmetric_t:
      return {"a", "t"};
    case Family::cc_ca:
      return {"c", "q"};
    case Family::asymmetric:
      return {"b", "v", "s"};
  }
  return {};
}

FamilyParams make_family(const std::string& variant, const std::map<std::string, double>& params) {
  FamilyParams fp;
  fp.variant = family_from_name(variant);
  const std::vector<std::string> names = family_param_names(fp.variant);
  for (const auto& [key, value] : params) {
    bool known = false;
    for (const std::string& n : names) known = known || n == key;
    if (!known) fail("family " + variant + " does not take parameter " + key);
    (void)value;
  }
  double* slots[3] = {&fp.p1, &fp.p2, &fp.p3};
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto it = params.find(names[i]);
    if (it == params.end()) fail("family " + variant + " needs parameter " + names[i]);
    *slots[i] = it->second;
  }
  return fp;
}

std::string default_sweep_param(Family f) {
  switch (f) {
    case Family::symmetric_t:
      return "t";
    case Family::cc_ca:
      return "q";
    case Family::asymmetric:
      return "s";
  }
  return "";
}

FamilyParams with_param(FamilyParams fp, const std::string& name, double value) {
  const std::vector<std::string> names = family_param_names(fp.variant);
  double* slots[3] = {&fp.p1, &fp.p2, &fp.p3};
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) {
      *slots[i] = value;
      return fp;
    }
  }
  fail(std::string("family ") + family_name(fp.variant) + " does not take parameter " + name);
}

std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace gdiscord
