// Copyright 2026 The algdiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end. Exit status: 0 on success, 1 when an input or a
// hypothesis is rejected, 2 on an internal invariant breach.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "algdiff/algdiff.hpp"

namespace {

using namespace algdiff;

struct Common {
  std::optional<std::uint64_t> modulus;
  bool rational = false;
  std::string expr;
  std::string input;
  std::string output;
  bool json = false;
  unsigned threads = 1;
  std::optional<std::string> shift;
};

void add_field_flags(CLI::App* app, Common& c) {
  auto* m = app->add_option("--modulus", c.modulus, "work over the prime field F_p");
  auto* r = app->add_flag("--rational", c.rational, "work over the rationals");
  m->excludes(r);
}

void add_poly_flags(CLI::App* app, Common& c) {
  add_field_flags(app, c);
  auto* e = app->add_option("--expr", c.expr, "polynomial in X and Y ('-' reads stdin)");
  auto* i = app->add_option("--input", c.input, "file with a polynomial document or expression");
  e->excludes(i);
  app->add_option("--shift", c.shift, "replace P(X, Y) by P(X + a, Y) before computing");
}

void add_output_flags(CLI::App* app, Common& c) {
  app->add_option("--output", c.output, "write the result document to this file");
  app->add_flag("--json", c.json, "structured JSON on stdout");
  app->add_option("--threads", c.threads, "worker threads for parallel stages")->check(CLI::PositiveNumber);
}

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot read " + path);
  return read_all(f);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write " + path);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

/// The polynomial source as either a JSON document or an expression.
struct PolySource {
  std::optional<Json> doc;
  std::string text;
};

PolySource poly_source(const Common& c) {
  std::string raw;
  if (!c.expr.empty())
    raw = c.expr == "-" ? read_all(std::cin) : c.expr;
  else if (!c.input.empty())
    raw = c.input == "-" ? read_all(std::cin) : read_file(c.input);
  else
    throw DomainError("no polynomial given (use --expr or --input)");
  const auto first = raw.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && raw[first] == '{') {
    try {
      return {Json::parse(raw), {}};
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("polynomial document: ") + e.what());
    }
  }
  return {std::nullopt, raw};
}

FieldSpec resolve_field(const Common& c, const std::vector<const Json*>& docs) {
  if (c.modulus) return FieldSpec::prime(*c.modulus);
  if (c.rational) return FieldSpec::rational();
  for (const Json* d : docs)
    if (d)
      if (auto f = document_field(*d)) return *f;
  throw DomainError("no field given (use --modulus p or --rational)");
}

template <Field K>
BiPoly<K> load_poly(const K& k, const PolySource& src) {
  return src.doc ? poly_from_json(k, *src.doc) : parse_bipoly(k, src.text);
}

template <Field K>
typename K::Elem shift_value(const K& k, const Common& c) {
  return c.shift ? k.parse(*c.shift) : k.zero();
}

/// Operator for the original coordinate from one computed for P(X + a, Y).
template <Field K>
DiffOp<K> unshift(const DiffOp<K>& op, const typename K::Elem& a, OpVar var) {
  if (is_zero_elem(a)) return op;
  auto back = op.shift_x(a).canonical();
  return var == OpVar::theta ? back.to_theta().canonical() : back;
}

void emit(const Common& c, const Json& doc, const Json& structured, const std::string& text) {
  if (!c.output.empty()) write_file(c.output, doc.dump(2));
  if (c.json)
    std::cout << structured.dump(2) << "\n";
  else if (c.output.empty())
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text << "\n";
}

OpVar parse_var(const std::string& v) { return v == "dx" ? OpVar::dx : OpVar::theta; }

template <Field K>
Json op_summary(const DiffOp<K>& op) {
  return {{"order", op.order()}, {"degree_x", op.degree_x()}, {"text", op.to_string()}};
}

int run(int argc, char** argv) {
  CLI::App app{"Differential operators, recurrences and fast expansion for algebraic series"};
  app.require_subcommand(1);
  Common c;

  // resolvent
  std::string method = "series", var = "theta";
  std::uint64_t seed = 1;
  auto* res = app.add_subcommand("resolvent", "minimal differential resolvent");
  add_poly_flags(res, c);
  add_output_flags(res, c);
  res->add_option("--method", method)->check(CLI::IsMember({"series", "fraction"}));
  res->add_option("--var", var)->check(CLI::IsMember({"dx", "theta"}));
  res->add_option("--seed", seed);

  // telescope
  std::string tmode = "refined";
  std::optional<int> tel_d;
  auto* tel = app.add_subcommand("telescope", "creative-telescoping operators");
  add_poly_flags(tel, c);
  add_output_flags(tel, c);
  tel->add_option("--mode", tmode)->check(CLI::IsMember({"quadratic", "refined"}));
  tel->add_option("--d", tel_d, "size of the refined ansatz (default: the proven bound)");
  bool tel_min = false;
  tel->add_flag("--minimal", tel_min, "scan the refined ansatz upward for the smallest size");

  // algtodiff
  std::string preset = "2", amode = "det", avar = "theta";
  std::optional<i64> bx, bd;
  bool force_verify = false;
  auto* atd = app.add_subcommand("algtodiff", "operator by Hermite-Pade approximation");
  add_poly_flags(atd, c);
  add_output_flags(atd, c);
  atd->add_option("--preset", preset)->check(CLI::IsMember({"1", "2", "3", "thm2", "thm3"}));
  atd->add_option("--mode", amode)->check(CLI::IsMember({"det", "prob"}));
  atd->add_option("--var", avar)->check(CLI::IsMember({"dx", "theta"}));
  atd->add_option("--seed", seed);
  atd->add_option("--bx", bx, "degree bound in X (overrides --preset)");
  atd->add_option("--bd", bd, "order bound (overrides --preset)");
  atd->add_flag("--verify", force_verify, "certify the operator explicitly");

  // expand
  std::string root = "algebra", via = "recurrence", op_path, source = "resolvent";
  std::size_t terms = 0;
  auto* exp = app.add_subcommand("expand", "power-series expansion of a root");
  add_poly_flags(exp, c);
  add_output_flags(exp, c);
  exp->add_option("--root", root, "constant term y0 of the root, or 'algebra' for all conjugates");
  exp->add_option("--terms", terms)->required();
  exp->add_option("--via", via)->check(CLI::IsMember({"recurrence", "newton"}));
  exp->add_option("--op", op_path, "operator document to use instead of computing one");
  exp->add_option("--source", source)->check(CLI::IsMember({"resolvent", "algtodiff"}));

  // bounds
  i64 bdx = 0, bdy = 0;
  std::optional<i64> btot, br;
  auto* bnd = app.add_subcommand("bounds", "degree and order bounds as JSON");
  bnd->add_option("--dx", bdx)->required();
  bnd->add_option("--dy", bdy)->required();
  bnd->add_option("--d", btot, "total degree (default D_X + D_Y)");
  bnd->add_option("--r", br, "resolvent order for eta (default D_Y)");

  // verify
  std::string vop;
  auto* ver = app.add_subcommand("verify", "certify that an operator annihilates every root");
  add_poly_flags(ver, c);
  ver->add_option("--op", vop)->required();
  ver->add_flag("--json", c.json);

  // lab
  std::string experiment;
  int max_d = 5, lab_dy = 8, lab_dx = 1, draws = 5;
  std::vector<std::size_t> lab_n;
  std::vector<int> lab_list;
  std::string lab_json, lab_source = "algtodiff";
  bool no_scan = false;
  auto* lab = app.add_subcommand("lab", "reproduce the experiment tables");
  add_field_flags(lab, c);
  lab->add_option("experiment", experiment)->required()->check(CLI::IsMember({"table1", "table2", "conjectures"}));
  lab->add_option("--max-d", max_d);
  lab->add_option("--dy", lab_dy);
  lab->add_option("--dx", lab_dx);
  lab->add_option("--draws", draws, "random draws per table1 row");
  lab->add_option("--n", lab_n, "expansion lengths for table2");
  lab->add_option("--degrees", lab_list, "degrees D for the conjecture scan");
  lab->add_option("--source", lab_source)->check(CLI::IsMember({"resolvent", "algtodiff"}));
  lab->add_flag("--no-scan", no_scan, "skip the theta-operator scan in conjectures");
  lab->add_option("--seed", seed);
  lab->add_option("--json", lab_json, "also write the report as JSON to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (bnd->parsed()) {
    const i64 d = btot.value_or(bdx + bdy);
    const auto prof = DegreeProfile::make(bdx, bdy, d);
    Json out = {{"D_X", bdx}, {"D_Y", bdy}, {"D", d}};
    const i64 r = br.value_or(bdy);
    out["eta"] = {{"r", r}, {"value", eta(bdx, bdy, r)}};
    const auto q = thm2_bounds(bdx, bdy);
    out["thm2"] = {{"N_X", q.N_X}, {"N_d", q.N_d}, {"rec_order", q.rec_order}, {"rec_deg", q.rec_deg}};
    out["thm3"] = thm3_bound(prof);
    out["table"] = {{"rows", table_rows(q.N_X, q.N_d)},
                    {"cols", table_cols(bdx, bdy, q.N_X, q.N_d)},
                    {"excess", table_excess_closed_form(bdx, bdy)}};
    if (bdy >= 2) {
      Json ps = Json::array();
      for (const auto& [x, o] : thm4_presets(bdx, bdy)) {
        const auto bs = bound_set(bdx, bdy, x, o);
        ps.push_back({{"B_X", bs.B_X}, {"B_d", bs.B_d}, {"Sigma", bs.Sigma}, {"sigma", bs.sigma}});
      }
      out["thm4"] = ps;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (lab->parsed()) {
    ExperimentReport rep;
    if (experiment == "table1") {
      const FieldSpec f = c.rational ? FieldSpec::rational() : FieldSpec::prime(c.modulus.value_or(9973));
      rep = run_table1(max_d, f, seed, draws);
    } else if (experiment == "table2") {
      if (c.rational) throw DomainError("table2 runs over a prime field");
      Table2Options o;
      o.D_X = lab_dx;
      o.modulus = c.modulus.value_or(9973);
      o.source = lab_source == "resolvent" ? OperatorSource::resolvent : OperatorSource::algtodiff;
      if (lab_n.empty())
        for (int e = 10; e <= 15; ++e) lab_n.push_back(std::size_t{1} << e);
      rep = run_table2(lab_dy, lab_n, seed, o);
    } else {
      if (c.rational) throw DomainError("conjecture scans run over a prime field");
      ConjectureOptions o;
      o.modulus = c.modulus.value_or(9973);
      o.theta_scan = !no_scan;
      if (lab_list.empty()) lab_list = {2, 3};
      rep = run_conjectures(lab_list, seed, o);
    }
    std::cout << rep.to_text();
    if (!lab_json.empty()) write_file(lab_json, rep.to_json().dump(2));
    return 0;
  }

  const PolySource src = poly_source(c);
  std::optional<Json> op_doc;
  if (ver->parsed()) op_doc = Json::parse(read_file(vop));
  if (exp->parsed() && !op_path.empty()) op_doc = Json::parse(read_file(op_path));
  const FieldSpec field =
      resolve_field(c, {src.doc ? &*src.doc : nullptr, op_doc ? &*op_doc : nullptr});

  return with_field(field, [&](const auto& k) -> int {
    using K = std::decay_t<decltype(k)>;
    const BiPoly<K> original = load_poly(k, src);
    const auto a = shift_value(k, c);
    const BiPoly<K> p = is_zero_elem(a) ? original : original.shift_x(a);
    Json info = {{"command", app.get_subcommands().front()->get_name()},
                 {"field", field_to_json(field)},
                 {"shift", k.to_string(a)}};

    if (res->parsed()) {
      const OpVar v = parse_var(var);
      const auto r = resolvent(p, method == "fraction" ? ResolventMethod::fraction : ResolventMethod::series, v, seed);
      const auto op = unshift(r.op, a, v);
      info["operator"] = op_to_json(op);
      info["summary"] = op_summary(op);
      if (r.trace.lucky_a) info["lucky_point"] = k.to_string(*r.trace.lucky_a);
      emit(c, op_to_json(op), info, op.to_string());
      return 0;
    }

    if (tel->parsed()) {
      std::optional<DiffOp<K>> op;
      if (tmode == "quadratic") {
        const auto b = thm2_bounds(p.degree_x(), p.degree_y());
        const auto t = find_lambda(p, static_cast<int>(b.N_X), static_cast<int>(b.N_d), c.threads);
        op = unshift(t.A, a, OpVar::dx);
        info["bounds"] = {{"N_X", b.N_X}, {"N_d", b.N_d}};
        info["dY_power"] = t.k;
      } else {
        const int d = tel_d.value_or(static_cast<int>(thm3_bound(DegreeProfile::of(p))));
        if (tel_min) {
          const auto m = minimal_theta_operator(p, d);
          if (!m) throw DomainError("no theta operator with size up to " + std::to_string(d));
          op = unshift(m->second.op, a, OpVar::theta);
          info["d"] = m->first;
        } else {
          const auto t = find_theta_operator(p, d);
          if (!t) throw DomainError("no theta operator with size " + std::to_string(d) + "; try a larger --d");
          op = unshift(t->op, a, OpVar::theta);
          info["d"] = d;
        }
      }
      info["operator"] = op_to_json(*op);
      info["summary"] = op_summary(*op);
      emit(c, op_to_json(*op), info, op->to_string());
      return 0;
    }

    if (atd->parsed()) {
      const OpVar v = parse_var(avar);
      AlgToDiffResult<K> r{DiffOp<K>(k, v, {}), false, {}, AlgToDiffMode::deterministic, UniPoly<K>(k), 0};
      const bool prob = amode == "prob";
      if (bx || bd) {
        if (!bx || !bd) throw DomainError("--bx and --bd must be given together");
        r = prob ? alg_to_diff_prob(p, *bx, *bd, v, seed, true) : alg_to_diff(p, *bx, *bd, v, force_verify);
      } else if (preset == "thm2" || preset == "thm3") {
        r = alg_to_diff_heuristic(p, preset == "thm2" ? HeuristicFlavor::thm2 : HeuristicFlavor::thm3, v, prob, seed,
                                  true);
      } else {
        const auto pr = preset_params(p, std::stoi(preset), v);
        r = prob ? alg_to_diff_prob(p, pr.B_X, pr.B_d, v, seed, true)
                 : alg_to_diff(p, pr.B_X, pr.B_d, v, force_verify);
      }
      const auto op = unshift(r.op, a, v);
      info["operator"] = op_to_json(op);
      info["summary"] = op_summary(op);
      info["verified"] = r.verified;
      info["mode"] = mode_name(r.mode);
      info["B_X"] = r.params.B_X;
      info["B_d"] = r.params.B_d;
      info["restarts"] = r.restarts;
      emit(c, op_to_json(op), info, op.to_string() + (r.verified ? "  [verified]" : "  [not verified]"));
      return 0;
    }

    if (ver->parsed()) {
      auto op = op_from_json(k, *op_doc);
      if (!is_zero_elem(a)) op = op.shift_x(-a);
      const bool ok = verify_associated(op, p);
      if (c.json)
        std::cout << Json{{"verified", ok}}.dump(2) << "\n";
      else
        std::cout << (ok ? "verified" : "NOT associated") << "\n";
      if (!ok) std::cerr << "operator does not annihilate every root\n";
      return ok ? 0 : 1;
    }

    // expand
    ExpandOptions<K> opts;
    opts.via = via == "newton" ? ExpandVia::newton : ExpandVia::recurrence;
    opts.source = source == "algtodiff" ? OperatorSource::algtodiff : OperatorSource::resolvent;
    if (op_doc) {
      auto op = op_from_json(k, *op_doc);
      opts.op = is_zero_elem(a) ? op : op.shift_x(-a).to_theta();
    }
    std::vector<std::string> lines;
    Json values = Json::array();
    Json stats;
    auto fill_stats = [&](const auto& e) {
      stats = {{"operator_seconds", e.operator_seconds}, {"initial_seconds", e.initial_seconds},
               {"unroll_seconds", e.unroll_seconds},     {"patch_seconds", e.patch_seconds},
               {"patches", e.patches},                   {"rho", e.rho}};
      if (e.rec) stats["recurrence_order"] = e.rec->order();
    };
    if (root == "algebra") {
      const auto e = expand_algebra(p, terms, opts);
      fill_stats(e);
      for (const auto& v : e.coeffs) {
        lines.push_back(v.to_string());
        Json co = Json::array();
        if (v.has_parent())
          for (const auto& x : v.decompose()) co.push_back(k.to_string(x));
        values.push_back(co);
      }
      info["algebra"] = p.eval_x(k.zero()).to_string("y");
    } else {
      const auto e = expand_scalar(p, k.parse(root), terms, opts);
      fill_stats(e);
      for (const auto& v : e.coeffs) {
        lines.push_back(k.to_string(v));
        values.push_back(k.to_string(v));
      }
    }
    info["coefficients"] = values;
    info["stats"] = stats;
    info["powers_of"] = is_zero_elem(a) ? "X" : "X-" + k.to_string(a);
    std::ostringstream txt;
    for (const auto& l : lines) txt << l << "\n";
    if (!c.output.empty()) write_file(c.output, values.dump(2));
    if (c.json)
      std::cout << info.dump(2) << "\n";
    else
      std::cout << txt.str();
    return 0;
  });
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const algdiff::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const algdiff::HypothesisError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "json: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
