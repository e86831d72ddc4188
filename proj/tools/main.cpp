#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lieq/json_io.hpp"

using namespace lieq;
using nlohmann::ordered_json;

namespace {

// exit codes: 0 ok, 2 malformed flags, 3 missing files, 4 invariant failure
struct MissingFile {
  std::string path;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile{path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_out(const std::string& dest, const std::string& data) {
  if (dest == "-" || dest.empty()) {
    std::fwrite(data.data(), 1, data.size(), stdout);
    return;
  }
  std::ofstream out(dest, std::ios::binary);
  if (!out) throw MissingFile{dest};
  out << data;
}

int default_threads() {
  const char* e = std::getenv("LIEQ_THREADS");
  if (!e) return 1;
  int v = std::atoi(e);
  return v >= 1 ? v : 1;
}

double time_call(const std::function<void()>& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// check counter for --selftest; failures are collected, not fatal
struct SelfTest {
  int passed = 0;
  std::vector<std::string> failed;

  void check(bool ok, const std::string& what) {
    if (ok)
      ++passed;
    else
      failed.push_back(what);
  }

  int finish(const std::string& name, const std::string& out) {
    std::ostringstream os;
    os << "selftest " << name << ": " << passed << " passed, "
       << failed.size() << " failed\n";
    for (const std::string& f : failed) os << "  FAIL " << f << "\n";
    write_out(out, os.str());
    return failed.empty() ? 0 : 4;
  }
};

// small rational w elements, engine draws consumed in a fixed order
QVec draw_w(const Algebra& g, std::mt19937_64& rng) {
  QVec nu = g.zero();
  for (int k = 0; k < g.num_pos; ++k) {
    QQ q(long(rng() % 19) - 9, long(rng() % 2) + 1);
    q.canonicalize();
    nu[g.pos_basis_index(k)] = q;
  }
  return nu;
}

// default regular base point: diag(3,1,-4) on sl3 (root values 2, 5, 7);
// powers of ten elsewhere, since a root value is then a base-10 expansion
// with Cartan-integer digits and cannot vanish
QVec default_v0(const Algebra& g) {
  QVec v0 = g.zero();
  if (g.tag == "sl3") {
    v0[0] = 3;
    v0[1] = 4;
    return v0;
  }
  QQ p = 1;
  for (int i = 0; i < g.rank; ++i) {
    v0[i] = p;
    p *= 10;
  }
  return v0;
}

const Algebra& algebra_for(const std::string& type) {
  return Algebra::get(type);
}

//---------------------------------------------------------------- limit

int run_limit(const std::string& type, const std::string& nilpotent,
              const std::string& out, bool selftest) {
  if (selftest) {
    SelfTest st;
    const Algebra& g = algebra_for("sl3");
    QVec n = g.from_pos_root_map(
        {{{1, 0}, QQ(1)}, {{0, 1}, QQ(1)}, {{1, 1}, QQ(5)}});
    LimitingResult res = classify(g, n);
    QVec e13 = g.from_pos_root_map({{{1, 1}, QQ(1)}});
    QVec e12_e23 =
        g.from_pos_root_map({{{1, 0}, QQ(1)}, {{0, 1}, QQ(1)}});
    st.check(same_column_span(QMat::from_cols(res.subspace_basis),
                              QMat::from_cols({e12_e23, e13})),
             "sl3 limiting span");
    st.check(res.leading_degree == 3, "sl3 leading degree");
    st.check(res.is_quasi_centralizing, "sl3 quasi-centralizing");
    st.check(res.witness && *res.witness == n, "sl3 witness");
    LimitingResult bad = classify(algebra_for("g2"), g2_counterexample());
    st.check(!bad.is_quasi_centralizing, "g2 counterexample");
    st.check(bad.pairing == 0.0, "g2 pairing vanishes");
    return st.finish("limit", out);
  }
  if (nilpotent.empty()) {
    std::fprintf(stderr, "lieq limit: --nilpotent is required\n");
    return 2;
  }
  const Algebra& g = algebra_for(type);
  std::string text = read_file(nilpotent);
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded())
    throw std::invalid_argument("limit: malformed JSON in " + nilpotent);
  std::string result;
  if (doc.is_array()) {
    for (const auto& entry : doc)
      result += limiting_to_json(
          g, classify(g, nilpotent_from_json(g, entry.dump())));
  } else {
    result = limiting_to_json(g, classify(g, nilpotent_from_json(g, text)));
  }
  write_out(out, result);
  return 0;
}

//---------------------------------------------------------------- jordan

int run_jordan(const std::string& type, const std::string& nilpotent,
               const std::string& out, bool selftest) {
  if (selftest) {
    SelfTest st;
    std::mt19937_64 rng(7);
    for (const char* tag : {"sl3", "sp4"}) {
      const Algebra& g = algebra_for(tag);
      for (int i = 0; i < 3; ++i) {
        QVec n = sample_regular_nilpotent(g, rng);
        ConjugationData cd = jordan_decompose(g, n);
        st.check(jordan_reconstruction_exact(g, cd),
                 std::string(tag) + " exact reconstruction identity");
        st.check(jordan_reconstruction_error(g, cd) <= 1e-9,
                 std::string(tag) + " float reconstruction error");
      }
    }
    return st.finish("jordan", out);
  }
  if (nilpotent.empty()) {
    std::fprintf(stderr, "lieq jordan: --nilpotent is required\n");
    return 2;
  }
  const Algebra& g = algebra_for(type);
  QVec n = nilpotent_from_json(g, read_file(nilpotent));
  write_out(out, conjugation_to_json(g, jordan_decompose(g, n)));
  return 0;
}

//---------------------------------------------------------------- qcp

int run_qcp(const std::string& type, int samples, uint64_t seed,
            bool counterexample, const std::string& out, bool selftest) {
  if (selftest) {
    SelfTest st;
    std::mt19937_64 rng(7);
    for (const char* tag : {"sl2", "sl3"}) {
      const Algebra& g = algebra_for(tag);
      for (int i = 0; i < 5; ++i) {
        LimitingResult res = classify(g, sample_regular_nilpotent(g, rng));
        st.check(res.is_quasi_centralizing,
                 std::string(tag) + " sample quasi-centralizing");
      }
    }
    st.check(!classify(algebra_for("g2"), g2_counterexample())
                  .is_quasi_centralizing,
             "g2 counterexample non-quasi-centralizing");
    return st.finish("qcp", out);
  }
  if (counterexample) {
    if (!type.empty() && Algebra::canonical_tag(type) != "g2")
      throw std::invalid_argument(
          "qcp: --counterexample is the g2 construction; drop --type or "
          "pass g2");
    const Algebra& g = algebra_for("g2");
    QVec n = g2_counterexample();
    LimitingResult res = classify(g, n);
    ordered_json o;
    o["type"] = g.tag;
    o["qcp"] = res.is_quasi_centralizing;
    o["witness"] = ordered_json::parse(nilpotent_to_json(g, n));
    o["epsilon"] = ordered_json{{"value", res.epsilon}, {"tol", 1e-12}};
    o["pairing"] = ordered_json{{"value", res.pairing}, {"tol", 1e-9}};
    o["leading_degree"] = res.leading_degree;
    write_out(out, o.dump(2) + "\n");
    return 0;
  }
  if (type.empty()) {
    std::fprintf(stderr, "lieq qcp: --type is required\n");
    return 2;
  }
  const Algebra& g = algebra_for(type);
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int i = 0; i < samples; ++i)
    if (!classify(g, sample_regular_nilpotent(g, rng)).is_quasi_centralizing)
      ++failures;
  ordered_json o;
  o["type"] = g.tag;
  o["qcp"] = failures == 0;
  o["failures"] = failures;
  o["samples"] = samples;
  o["seed"] = seed;
  write_out(out, o.dump(2) + "\n");
  return 0;
}

//---------------------------------------------------------------- goodfn

int run_goodfn(double lambda, double delta, int check, uint64_t seed,
               const std::string& out, bool selftest) {
  if (selftest) {
    SelfTest st;
    GoodCertificate c = certificate(1, 1);
    st.check(std::abs(double(c.alpha) - 0.5) < 1e-15, "alpha closed form");
    st.check(std::abs(double(c.b) - 0.048112522432468814) < 1e-15,
             "b closed form");
    st.check(std::abs(double(c.C) - 308.41225290419139) < 1e-9,
             "C closed form");
    VandermondeReport v = vandermonde_floor({0, 1, 2}, 1.0);
    st.check(v.pass && v.det_abs == 2.0 && v.floor == 1.0,
             "vandermonde floor example");
    return st.finish("goodfn", out);
  }
  GoodCertificate cert = certificate(lambda, delta);
  ordered_json o =
      ordered_json::parse(certificate_to_json(lambda, delta, cert));
  if (check > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> cpos(-3.0, 3.0),
        crad(0.05, 0.5);
    int trials = 0, passes = 0;
    for (int i = 0; i < check; ++i) {
      ExpPolynomial f = sample_exp_polynomial(1, lambda, delta, rng);
      for (int j = 0; j < 5; ++j) {
        Ball ball{{cpos(rng)}, crad(rng)};
        GoodCheckReport probe = empirical_good_check(f, ball, 1.0, cert);
        if (probe.sup_abs == 0) continue;
        for (double frac : {0.5, 1e-2, 1e-4}) {
          GoodCheckReport rep =
              empirical_good_check(f, ball, frac * probe.sup_abs, cert);
          ++trials;
          if (rep.pass) ++passes;
        }
      }
    }
    ordered_json chk;
    chk["functions"] = check;
    chk["balls_per_function"] = 5;
    chk["trials"] = trials;
    chk["passes"] = passes;
    chk["failures"] = trials - passes;
    o["check"] = chk;
  }
  write_out(out, o.dump(2) + "\n");
  return 0;
}

//---------------------------------------------------------------- count

int run_count(const std::vector<long long>& poly, double tmax, double tstep,
              int threads, bool stable, const std::string& out,
              bool selftest) {
  if (selftest) {
    SelfTest st;
    CubicPoly p{-1, -2, 1};
    long long brute = brute_force_count(p, 3);
    st.check(enumerate_count(p, 3, 1) == brute, "row solve vs brute force");
    st.check(enumerate_count(p, 3, 2) == brute, "thread independence");
    return st.finish("count", out);
  }
  CubicPoly p{poly[0], poly[1], poly[2]};
  if (tstep <= 0 || tmax < tstep)
    throw std::invalid_argument("count: need 0 < tstep <= tmax");
  std::vector<CountRow> rows;
  for (double T = tstep; T <= tmax + 1e-9; T += tstep) {
    CountRow row;
    row.T = T;
    row.seconds =
        time_call([&] { row.N = enumerate_count(p, T, threads); });
    rows.push_back(row);
  }
  write_out(out, count_rows_to_csv(rows, stable));
  return 0;
}

//---------------------------------------------------------------- cp

int run_cp(long long h, double reg, double disc,
           const std::string& provenance, const std::string& out,
           bool selftest) {
  if (selftest) {
    SelfTest st;
    FieldInvariants inv = reference_invariants();
    double a = cp_value(3, inv), b = cp_n3(inv);
    st.check(std::abs(a - b) <= 1e-12 * std::abs(b),
             "closed forms agree on the reference invariants");
    st.check(std::abs(b - 12.555732255738762) < 1e-9,
             "reference constant value");
    return st.finish("cp", out);
  }
  FieldInvariants inv;
  inv.disc = disc;
  inv.h = h;
  inv.reg = reg;
  inv.provenance = provenance;
  write_out(out, cp_to_json(inv));
  return 0;
}

//---------------------------------------------------------------- psi

int run_psi(const std::string& type, uint64_t seed, int samples, int grid,
            const std::string& out, bool selftest) {
  if (selftest) {
    SelfTest st;
    const Algebra& g = algebra_for("sl3");
    QVec v0 = default_v0(g);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10; ++i) {
      QVec nu = draw_w(g, rng);
      st.check(psi_inverse(g, psi_map(g, nu, v0), v0) == nu,
               "round trip exact");
      JacobianReport jr = jacobian_check(g, nu, v0);
      st.check(jr.unit_upper_triangular && jr.det_unipotent == QQ(1),
               "jacobian unipotent");
    }
    st.check(star_ball_sandwich(g, v0, 10.0, 64).holds, "sandwich at T=10");
    return st.finish("psi-check", out);
  }
  const Algebra& g = algebra_for(type);
  QVec v0 = default_v0(g);
  std::mt19937_64 rng(seed);
  int round_trip = 0, unit_upper = 0, det_one = 0;
  for (int i = 0; i < samples; ++i) {
    QVec nu = draw_w(g, rng);
    if (psi_inverse(g, psi_map(g, nu, v0), v0) == nu) ++round_trip;
    JacobianReport jr = jacobian_check(g, nu, v0);
    if (jr.unit_upper_triangular) ++unit_upper;
    if (jr.det_unipotent == QQ(1)) ++det_one;
  }
  ordered_json o;
  o["type"] = g.tag;
  o["seed"] = seed;
  o["samples"] = samples;
  o["round_trip_exact"] = round_trip;
  o["jacobian_unit_upper"] = unit_upper;
  o["jacobian_det_one"] = det_one;
  ordered_json sw = ordered_json::array();
  for (double t : {10.0, 20.0, 40.0})
    sw.push_back(ordered_json::parse(
        sandwich_to_json(star_ball_sandwich(g, v0, t, grid))));
  o["sandwich"] = sw;
  write_out(out, o.dump(2) + "\n");
  return 0;
}

//---------------------------------------------------------------- bench

int run_bench(const std::string& out) {
  const Algebra& sl3 = algebra_for("sl3");
  QVec n = sl3.from_pos_root_map(
      {{{1, 0}, QQ(1)}, {{0, 1}, QQ(1)}, {{1, 1}, QQ(5)}});
  std::vector<std::pair<std::string, double>> rows;
  double sink = 0;  // consumed below so the loops stay live
  rows.emplace_back("bracket_sl3_x10000", time_call([&] {
    for (int i = 0; i < 10000; ++i)
      sink += qd(sl3.bracket(n, sl3.unit(i % sl3.dim))[2]);
  }));
  rows.emplace_back("jordan_sl3_x100", time_call([&] {
    for (int i = 0; i < 100; ++i) jordan_decompose(sl3, n);
  }));
  rows.emplace_back("classify_sl3", time_call([&] { classify(sl3, n); }));
  rows.emplace_back("classify_g2_counterexample", time_call([&] {
    classify(algebra_for("g2"), g2_counterexample());
  }));
  rows.emplace_back("count_T5", time_call([&] {
    enumerate_count(CubicPoly{-1, -2, 1}, 5, 1);
  }));
  rows.emplace_back("psi_roundtrip_sl3_x100", time_call([&] {
    QVec v0 = default_v0(sl3);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
      QVec nu = draw_w(sl3, rng);
      psi_inverse(sl3, psi_map(sl3, nu, v0), v0);
    }
  }));
  rows.emplace_back("certificate_x10000", time_call([&] {
    for (int i = 0; i < 10000; ++i) certificate(1, 1);
  }));
  std::string csv = "name,seconds\r\n";
  char buf[128];
  for (const auto& [name, sec] : rows) {
    std::snprintf(buf, sizeof buf, "%s,%.6f\r\n", name.c_str(), sec);
    csv += buf;
  }
  write_out(out, csv);
  return sink > 1e308 ? 4 : 0;
}

}  // namespace

//---------------------------------------------------------------- main

int main(int argc, char** argv) {
  CLI::App app{
      "lieq: limiting Lie algebras, quasi-centralizing classification, and "
      "companion-orbit counting"};
  app.require_subcommand(1);

  auto algebra_check = CLI::Validator(
      [](std::string& s) -> std::string {
        try {
          Algebra::canonical_tag(s);
          return {};
        } catch (const std::exception& e) {
          return std::string(e.what());
        }
      },
      "ALGEBRA");

  std::string type, nilpotent, out = "-", provenance;
  uint64_t seed = 7;
  int samples = 100, check = 0, grid = 96;
  int threads = default_threads();
  bool counterexample = false, stable = false, selftest = false;
  double lambda = 1, delta = 1, tmax = 10, tstep = 5;
  std::vector<long long> poly{-1, -2, 1};
  FieldInvariants ref = reference_invariants();
  long long arg_h = ref.h;
  double arg_reg = ref.reg, arg_disc = ref.disc;
  provenance = ref.provenance;
  int arg_n = 3;

  CLI::App* c_limit =
      app.add_subcommand("limit", "limiting Lie algebra of a nilpotent");
  c_limit->add_option("--type", type)->check(algebra_check);
  c_limit->add_option("--nilpotent", nilpotent,
                      "JSON map {\"c1,c2\": \"p/q\"} or an array of maps");
  c_limit->add_option("--out", out);
  c_limit->add_flag("--selftest", selftest);

  CLI::App* c_jordan =
      app.add_subcommand("jordan", "triple normal form and conjugators");
  c_jordan->add_option("--type", type)->check(algebra_check);
  c_jordan->add_option("--nilpotent", nilpotent);
  c_jordan->add_option("--out", out);
  c_jordan->add_flag("--selftest", selftest);

  CLI::App* c_qcp = app.add_subcommand(
      "qcp", "quasi-centralizing classification over seeded samples");
  c_qcp->add_option("--type", type)->check(algebra_check);
  c_qcp->add_option("--samples", samples);
  c_qcp->add_option("--seed", seed, "RNG seed (default 7)");
  c_qcp->add_flag("--counterexample", counterexample,
                  "emit the g2 failing construction");
  c_qcp->add_option("--out", out);
  c_qcp->add_flag("--selftest", selftest);

  CLI::App* c_good =
      app.add_subcommand("goodfn", "sublevel certificate constants");
  c_good->add_option("--lambda", lambda)->check(CLI::PositiveNumber);
  c_good->add_option("--delta", delta)->check(CLI::PositiveNumber);
  c_good->add_option("--check", check,
                     "sampled class members to verify empirically");
  c_good->add_option("--seed", seed);
  c_good->add_option("--out", out);
  c_good->add_flag("--selftest", selftest);

  CLI::App* c_count = app.add_subcommand(
      "count", "integer matrices with prescribed characteristic polynomial");
  c_count->add_option("--poly", poly, "a2,a1,a0 of x^3+a2x^2+a1x+a0")
      ->delimiter(',')
      ->expected(3);
  c_count->add_option("--tmax", tmax)->check(CLI::PositiveNumber);
  c_count->add_option("--tstep", tstep)->check(CLI::PositiveNumber);
  c_count->add_option("--threads", threads,
                      "workers (default LIEQ_THREADS or 1)");
  c_count->add_flag("--stable-output", stable,
                    "zero the seconds column for byte comparison");
  c_count->add_option("--out", out);
  c_count->add_flag("--selftest", selftest);

  CLI::App* c_cp =
      app.add_subcommand("cp", "leading constant from field invariants");
  c_cp->set_help_flag("--help", "print usage");  // frees -h for the option
  c_cp->add_option("--n", arg_n)->check(CLI::IsMember({3}));
  c_cp->add_option("--h", arg_h, "class number");
  c_cp->add_option("--reg", arg_reg, "regulator");
  c_cp->add_option("--disc", arg_disc, "discriminant");
  c_cp->add_option("--provenance", provenance,
                   "where the invariants came from (mandatory)");
  c_cp->add_option("--out", out);
  c_cp->add_flag("--selftest", selftest);

  CLI::App* c_psi =
      app.add_subcommand("psi-check", "displacement map diagnostics");
  c_psi->add_option("--type", type)->check(algebra_check);
  c_psi->add_option("--seed", seed);
  c_psi->add_option("--samples", samples);
  c_psi->add_option("--grid", grid, "sandwich grid points per axis");
  c_psi->add_option("--out", out);
  c_psi->add_flag("--selftest", selftest);

  CLI::App* c_bench =
      app.add_subcommand("bench", "fixed micro benchmark table");
  c_bench->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_limit->parsed()) {
      if (!selftest && type.empty()) {
        std::fprintf(stderr, "lieq limit: --type is required\n");
        return 2;
      }
      return run_limit(type, nilpotent, out, selftest);
    }
    if (c_jordan->parsed()) {
      if (!selftest && type.empty()) {
        std::fprintf(stderr, "lieq jordan: --type is required\n");
        return 2;
      }
      return run_jordan(type, nilpotent, out, selftest);
    }
    if (c_qcp->parsed())
      return run_qcp(type, samples, seed, counterexample, out, selftest);
    if (c_good->parsed())
      return run_goodfn(lambda, delta, check, seed, out, selftest);
    if (c_count->parsed())
      return run_count(poly, tmax, tstep, threads, stable, out, selftest);
    if (c_cp->parsed())
      return run_cp(arg_h, arg_reg, arg_disc, provenance, out, selftest);
    if (c_psi->parsed())
      return run_psi(type.empty() ? "sl3" : type, seed, samples, grid, out,
                     selftest);
    if (c_bench->parsed()) return run_bench(out);
  } catch (const MissingFile& m) {
    std::fprintf(stderr, "lieq: cannot open %s\n", m.path.c_str());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "lieq: %s\n", e.what());
    return 4;
  }
  return 0;
}
