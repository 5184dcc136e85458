#include "fuchsmc/serialize.hpp"

#include <regex>

namespace fuchsmc {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const Matrix2& m) {
  return json::array({to_json(m(0, 0)), to_json(m(0, 1)), to_json(m(1, 0)),
                      to_json(m(1, 1))});
}

json to_json(const PeriodLattice& L) {
  json j;
  j["omega1"] = to_json(L.omega1());
  j["omega3"] = to_json(L.omega3());
  j["tau"] = to_json(L.tau());
  j["e1"] = to_json(L.e1());
  j["e2"] = to_json(L.e2());
  j["e3"] = to_json(L.e3());
  j["eta1"] = to_json(L.eta1());
  j["eta3"] = to_json(L.eta3());
  j["t"] = to_json(L.cross_ratio());
  return j;
}

json to_json(const FuchsianSystem& s) {
  json j;
  j["A0"] = to_json(s.A0);
  j["A1"] = to_json(s.A1);
  j["At"] = to_json(s.At);
  j["t"] = to_json(s.t);
  j["lambda"] = to_json(s.lambda);
  j["mu"] = to_json(s.mu);
  j["k"] = to_json(s.k);
  j["theta"] = json::array({to_json(s.params.th0), to_json(s.params.th1),
                            to_json(s.params.tht), to_json(s.params.thinf)});
  return j;
}

json to_json(const FuchsianSystemQ& s) {
  auto mat = [](const Eigen::Matrix<GaussRat, 2, 2>& M) {
    return json::array({M(0, 0).str(), M(0, 1).str(), M(1, 0).str(), M(1, 1).str()});
  };
  json j;
  j["A0"] = mat(s.A0);
  j["A1"] = mat(s.A1);
  j["At"] = mat(s.At);
  j["t"] = s.t.str();
  j["lambda"] = s.lambda.str();
  j["mu"] = s.mu.str();
  j["k"] = s.k.str();
  j["theta"] = json::array({s.params.th0.str(), s.params.th1.str(),
                            s.params.tht.str(), s.params.thinf.str()});
  return j;
}

json to_json(const MonodromyResult& m) {
  json j;
  j["base"] = to_json(m.base);
  j["frame"] = m.frame;
  j["error_estimate"] = m.error_estimate;
  json loops;
  for (const auto& [name, mat] : m.loops) loops[name] = to_json(mat);
  j["loops"] = loops;
  return j;
}

cplx parse_complex(const std::string& s) {
  std::string v = s;
  v.erase(std::remove_if(v.begin(), v.end(), ::isspace), v.end());
  if (v.empty()) throw Error("PARSE_COMPLEX", "empty complex literal");
  auto comma = v.find(',');
  if (comma != std::string::npos)
    return {std::stod(v.substr(0, comma)), std::stod(v.substr(comma + 1))};
  static const std::regex full(
      R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?[ij]?$)");
  // forms: "a", "bi", "a+bi", "-a-bi"
  bool has_i = v.back() == 'i' || v.back() == 'j';
  if (!has_i) return {std::stod(v), 0.0};
  std::string body = v.substr(0, v.size() - 1);
  // split at the last sign that is not an exponent sign and not leading
  size_t split = std::string::npos;
  for (size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') &&
        body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    if (body.empty() || body == "+") return {0.0, 1.0};
    if (body == "-") return {0.0, -1.0};
    return {0.0, std::stod(body)};
  }
  std::string im = body.substr(split);
  if (im == "+") im = "1";
  if (im == "-") im = "-1";
  return {std::stod(body.substr(0, split)), std::stod(im)};
}

json result_object(json value, double error_estimate, double tolerance, bool pass) {
  json j;
  j["value"] = std::move(value);
  j["error_estimate"] = error_estimate;
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  return j;
}

}  // namespace fuchsmc
