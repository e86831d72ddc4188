#include "lieq/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace lieq {

namespace {

using nlohmann::ordered_json;

// float field with an explicit accuracy attribute
ordered_json fnum(double value, double tol) {
  return ordered_json{{"value", value}, {"tol", tol}};
}

// long-double constants can underflow double (b ~ 1e-636 already at
// Lambda = 4, delta = 1/4), so the log10 rides along
ordered_json fwide(long double value, double tol) {
  ordered_json o;
  o["value"] = double(value);
  o["log10"] = value > 0 ? double(std::log10(value)) : 0.0;
  o["tol"] = tol;
  return o;
}

ordered_json coeff_array(const QVec& x) {
  ordered_json a = ordered_json::array();
  for (const QQ& c : x) a.push_back(qq_str(c));
  return a;
}

ordered_json rational_array(const std::vector<QQ>& x) {
  ordered_json a = ordered_json::array();
  for (const QQ& c : x) a.push_back(qq_str(c));
  return a;
}

ordered_json parse_or_throw(const std::string& text, const char* caller) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded())
    throw std::invalid_argument(std::string(caller) + ": malformed JSON");
  return doc;
}

QQ rational_field(const ordered_json& v, const char* caller) {
  if (v.is_string()) return qq_parse(v.get<std::string>());
  if (v.is_number_integer()) return qq_parse(v.dump());
  throw std::invalid_argument(std::string(caller) +
                              ": rationals must be \"p/q\" strings");
}

std::string coord_key(const std::vector<int>& coords) {
  std::ostringstream os;
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ',';
    os << coords[i];
  }
  return os.str();
}

}  // namespace

//---------------------------------------------------------------- elements

std::string element_to_json(const Algebra& g, const QVec& x) {
  ordered_json o;
  o["algebra"] = g.tag;
  o["coeffs"] = coeff_array(x);
  return o.dump(2) + "\n";
}

QVec element_from_json(const Algebra& g, const std::string& text) {
  ordered_json doc = parse_or_throw(text, "element_from_json");
  if (!doc.is_object() || !doc.contains("algebra") || !doc.contains("coeffs"))
    throw std::invalid_argument(
        "element_from_json: expected {\"algebra\", \"coeffs\"}");
  std::string tag = doc["algebra"].get<std::string>();
  if (Algebra::canonical_tag(tag) != g.tag)
    throw std::invalid_argument("element_from_json: algebra mismatch: " +
                                tag + " vs " + g.tag);
  const ordered_json& arr = doc["coeffs"];
  if (!arr.is_array() || int(arr.size()) != g.dim)
    throw std::invalid_argument(
        "element_from_json: coeffs must have length " +
        std::to_string(g.dim));
  QVec x = g.zero();
  for (int i = 0; i < g.dim; ++i)
    x[i] = rational_field(arr[i], "element_from_json");
  return x;
}

std::string nilpotent_to_json(const Algebra& g, const QVec& n) {
  if (!g.in_w(n))
    throw std::invalid_argument(
        "nilpotent_to_json: element is not supported on w");
  ordered_json o;
  for (int k = 0; k < g.num_pos; ++k) {
    const QQ& c = n[g.pos_basis_index(k)];
    if (c != 0) o[coord_key(g.pos_roots[k].coords)] = qq_str(c);
  }
  return o.dump(2) + "\n";
}

QVec nilpotent_from_json(const Algebra& g, const std::string& text) {
  ordered_json doc = parse_or_throw(text, "nilpotent_from_json");
  if (!doc.is_object())
    throw std::invalid_argument(
        "nilpotent_from_json: expected a {\"c1,c2,..\": \"p/q\"} map");
  std::map<std::vector<int>, QQ> m;
  for (const auto& [key, val] : doc.items()) {
    std::vector<int> coords;
    std::istringstream is(key);
    std::string part;
    while (std::getline(is, part, ','))
      coords.push_back(std::stoi(part));
    bool known = false;
    for (const Root& r : g.pos_roots)
      if (r.coords == coords) known = true;
    if (!known)
      throw std::invalid_argument(
          "nilpotent_from_json: \"" + key +
          "\" is not a positive root of " + g.tag);
    m[coords] = rational_field(val, "nilpotent_from_json");
  }
  return g.from_pos_root_map(m);
}

//---------------------------------------------------------------- reports

std::string conjugation_to_json(const Algebra& g, const ConjugationData& cd) {
  ordered_json o;
  o["algebra"] = g.tag;
  o["n"] = coeff_array(cd.n);
  o["epsilon_sq"] = qq_str(cd.epsilon_sq);
  o["epsilon"] = fnum(cd.epsilon, 1e-12);
  o["n_natural"] = coeff_array(cd.n_natural);
  o["omega"] = coeff_array(cd.omega);
  o["sigma_q"] = rational_array(cd.sigma_action.q);
  o["sigma_m_sq"] = rational_array(cd.sigma_action.m_sq);
  o["reconstruction_exact"] = jordan_reconstruction_exact(g, cd);
  o["reconstruction_error"] = fnum(jordan_reconstruction_error(g, cd), 1e-9);
  return o.dump(2) + "\n";
}

std::string limiting_to_json(const Algebra& g, const LimitingResult& res) {
  ordered_json o;
  o["algebra"] = g.tag;
  ordered_json basis = ordered_json::array();
  for (const QVec& v : res.subspace_basis) basis.push_back(coeff_array(v));
  o["basis"] = basis;
  o["leading_degree"] = res.leading_degree;
  o["c_phi"] = fnum(res.c_phi, 1e-9);
  o["is_lie_algebra"] = res.is_lie_algebra;
  o["is_abelian"] = res.is_abelian;
  o["quasi_centralizing"] = res.is_quasi_centralizing;
  o["centralizing"] = res.is_centralizing;
  o["witness"] = res.witness ? coeff_array(*res.witness) : ordered_json();
  o["epsilon"] = fnum(res.epsilon, 1e-12);
  o["pairing"] = fnum(res.pairing, 1e-9);
  o["pi_upper"] = fnum(res.pi_upper, 1e-9);
  o["pi_lower"] = fnum(res.pi_lower, 1e-9);
  return o.dump(2) + "\n";
}

std::string certificate_to_json(double lambda, double delta,
                                const GoodCertificate& c) {
  ordered_json o;
  o["lambda"] = lambda;
  o["delta"] = delta;
  o["alpha"] = fnum(double(c.alpha), 1e-15);
  o["C"] = fwide(c.C, 1e-12);
  o["b"] = fwide(c.b, 1e-12);
  o["B"] = fwide(c.B, 1e-12);
  o["eta"] = fwide(c.eta, 1e-12);
  return o.dump(2) + "\n";
}

std::string cp_to_json(const FieldInvariants& inv) {
  double general = cp_value(3, inv);
  double special = cp_n3(inv);
  ordered_json o;
  o["cp_general"] = fnum(general, 1e-12);
  o["cp_n3"] = fnum(special, 1e-12);
  o["rel_diff"] = fnum(std::abs(general - special) / special, 1e-12);
  return o.dump(2) + "\n";
}

std::string sandwich_to_json(const SandwichReport& rep) {
  ordered_json o;
  o["t"] = rep.t;
  o["v0_norm"] = fnum(rep.v0_norm, 1e-12);
  o["dim_w"] = rep.dim_w;
  o["estimate"] = fnum(rep.estimate, rep.grid_slack * rep.estimate);
  o["lower"] = fnum(rep.lower, 1e-9);
  o["upper"] = fnum(rep.upper, 1e-9);
  o["holds"] = rep.holds;
  return o.dump(2) + "\n";
}

std::string count_rows_to_csv(const std::vector<CountRow>& rows,
                              bool stable_timing) {
  std::string out = "T,N,seconds\r\n";
  char buf[96];
  for (const CountRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.10g,%lld,%.3f\r\n", r.T, r.N,
                  stable_timing ? 0.0 : r.seconds);
    out += buf;
  }
  return out;
}

}  // namespace lieq
