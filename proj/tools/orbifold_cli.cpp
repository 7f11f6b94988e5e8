#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "orbifold/verify.hpp"

using namespace orbifold;

namespace {

struct Options {
  int k = 2;
  int cutoff = 4;
  int depth = 4;
  int mode_depth = 2;
  int max_level = 3;
  int J = 6;
  std::string format = "json";
  std::string out;
  std::string state = "omega";
  bool inverse = false;
  bool expect_obstruction = false;
  bool decimal = false;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw std::invalid_argument("not a boolean: " + v);
}

// key = value lines; '#' starts a comment. Values override command-line flags.
void apply_config(const std::string& path, Options& o) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "k") o.k = std::stoi(val);
    else if (key == "cutoff") o.cutoff = std::stoi(val);
    else if (key == "depth") o.depth = std::stoi(val);
    else if (key == "mode_depth") o.mode_depth = std::stoi(val);
    else if (key == "max_level") o.max_level = std::stoi(val);
    else if (key == "J") o.J = std::stoi(val);
    else if (key == "format") o.format = val;
    else if (key == "out") o.out = val;
    else if (key == "state") o.state = val;
    else if (key == "inverse") o.inverse = parse_bool(val);
    else if (key == "expect_obstruction") o.expect_obstruction = parse_bool(val);
    else if (key == "decimal") o.decimal = parse_bool(val);
    else throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
}

void validate(const Options& o) {
  if (o.k < 1) throw std::invalid_argument("k must be >= 1");
  if (o.cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");
  if (o.depth < 0 || o.mode_depth < 0) throw std::invalid_argument("depths must be >= 0");
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + o.out);
  f << text;
}

std::string approx(const CycScalar& c) {
  double re = 0, im = 0;
  c.embed(re, im);
  char buf[64];
  if (im == 0) std::snprintf(buf, sizeof buf, "~%.12g", re);
  else std::snprintf(buf, sizeof buf, "~%.12g%+.12gi", re, im);
  return buf;
}

int cmd_ajcoeffs(const Options& o) {
  const AjTable& t = solve_aj(o.k, o.J);
  if (!o.decimal) {
    emit(o, t.to_csv());
    return 0;
  }
  std::ostringstream s;
  s << "j,a_j,a_j_approx\n";
  for (int j = 1; j <= t.J; ++j) s << j << "," << to_string(t(j)) << "," << approx(CycScalar(t(j))) << "\n";
  emit(o, s.str());
  return 0;
}

int cmd_delta_apply(const Options& o) {
  const QVec u = named_state(o.state);
  DeltaOp op;
  op.k = o.k;
  op.direction = o.inverse ? Direction::Inverse : Direction::Forward;
  nlohmann::ordered_json j;
  j["k"] = o.k;
  j["state"] = o.state;
  j["direction"] = o.inverse ? "inverse" : "forward";
  auto rows = nlohmann::ordered_json::array();
  for (const DeltaTerm& t : apply_delta(op, u)) {
    auto st = nlohmann::ordered_json::array();
    for (const auto& [id, c] : t.state.terms()) {
      nlohmann::ordered_json e = {{"basis", FockSpace::ns().label(id)}, {"coeff", c.to_string()}};
      if (o.decimal) e["coeff_approx"] = approx(c);
      st.push_back(e);
    }
    rows.push_back({{"j", t.j}, {"exponent", t.exponent.to_string()}, {"state", st}});
  }
  j["terms"] = rows;
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_char(const Options& o) {
  require_even_order(o.k);
  TwistedModuleView M(o.k, o.cutoff);
  QSeries tw;
  CheckReport rep = check_character_correspondence(M, &tw);
  if (!rep.passed()) throw std::runtime_error("character correspondence failed: " + rep.verdict());
  const Rational c = central_charge();
  QSeries sig = sigma_L0_spectrum(Rational(1, 16) + o.cutoff);
  sig.offset -= c / 24;
  nlohmann::ordered_json j;
  j["k"] = o.k;
  j["cutoff"] = o.cutoff;
  j["sigma_character"] = sig.to_json();     // q^{L^sigma(0) - c/24}
  j["twisted_character"] = tw.to_json();    // q^{L^g(0) - kc/24}
  j["ground_exponent"] = to_string(tw.offset);
  if (o.decimal) j["ground_exponent_approx"] = approx(CycScalar(tw.offset));
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_twist_build(const Options& o) {
  require_even_order(o.k);
  TwistedModuleView M(o.k, o.cutoff);
  emit(o, M.summary().dump(2) + "\n");
  return 0;
}

int cmd_verify(const Options& o) {
  RunConfig cfg;
  cfg.k = o.k;
  cfg.cutoff = o.cutoff;
  cfg.depth = o.depth;
  cfg.modes.depth = o.mode_depth;
  cfg.modes.max_level = o.max_level;
  cfg.expect_obstruction = o.expect_obstruction;
  const auto reports = run_suite(cfg);
  if (o.format == "table") emit(o, render_table(reports));
  else if (o.format == "json") emit(o, render_json(reports).dump(2) + "\n");
  else throw std::invalid_argument("verify supports --format json|table");
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.as_expected();
  if (!o.out.empty()) {
    for (const auto& r : reports)
      if (!r.as_expected()) std::cerr << r.name << ": " << r.verdict() << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbifold twisted-module toolkit for the free fermion"};
  app.require_subcommand(1);
  Options o;
  std::string config;
  auto common = [&](CLI::App* s) {
    s->add_option("--k", o.k, "permutation order k")->check(CLI::PositiveNumber);
    s->add_option("--out", o.out, "output path (default stdout)");
    s->add_option("--format", o.format, "json|csv|table");
    s->add_flag("--decimal", o.decimal, "add approximate values, marked with ~");
    s->add_option("--config", config, "key=value file; its values override flags");
  };
  auto* aj = app.add_subcommand("ajcoeffs", "CSV table of the a_j coefficients");
  common(aj);
  aj->add_option("--J", o.J, "number of coefficients");
  auto* da = app.add_subcommand("delta-apply", "expand Delta_k(z) on an NS state");
  common(da);
  da->add_option("--state", o.state, "1, psi, omega or a basis label");
  da->add_flag("--inverse", o.inverse, "apply the inverse operator");
  auto* ch = app.add_subcommand("char", "graded dimensions of M_sigma and of its twisted module");
  common(ch);
  ch->add_option("--cutoff", o.cutoff, "sigma-level cutoff");
  auto* tb = app.add_subcommand("twist-build", "build the truncated twisted module and summarize it");
  common(tb);
  tb->add_option("--cutoff", o.cutoff, "sigma-level cutoff");
  auto* vf = app.add_subcommand("verify", "run the verification suite");
  common(vf);
  vf->add_option("--cutoff", o.cutoff, "sigma-level cutoff of the twisted module view");
  vf->add_option("--depth", o.depth, "z0 depth of the conjugation check and delta-identity radius");
  vf->add_option("--mode-depth", o.mode_depth, "mode window [-d, d] of the twisted operator checks");
  vf->add_option("--max-level", o.max_level, "sigma-level bound of the Ramond sources");
  vf->add_flag("--expect-obstruction", o.expect_obstruction, "treat the odd-k even-branch failure as expected");

  CLI11_PARSE(app, argc, argv);
  try {
    if (!config.empty()) apply_config(config, o);
    validate(o);
    if (aj->parsed()) return cmd_ajcoeffs(o);
    if (da->parsed()) return cmd_delta_apply(o);
    if (ch->parsed()) return cmd_char(o);
    if (tb->parsed()) return cmd_twist_build(o);
    return cmd_verify(o);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
