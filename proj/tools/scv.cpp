// scv: command-line front end for the semi-conformal vector toolkit.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "scv/liealg.hpp"
#include "scv/pbworacle.hpp"
#include "scv/report.hpp"
#include "scv/sceq.hpp"
#include "scv/sl2solve.hpp"
#include "scv/weight2.hpp"

namespace {

using scv::json;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kInvalid = 2;
constexpr int kNotMember = 3;

struct Options {
  std::string algebra = "sl2";
  std::string level = "0";
  std::string matrix;
  std::string matrix_b;
  std::string json_out;
  std::string backend = "exact";
  int trials = 100;
  std::uint64_t seed = 1;
};

scv::Scalar parse_level(const std::string& text) {
  if (text.find_first_of(".eE") != std::string::npos || text.find("sqrt") != std::string::npos)
    throw scv::ParseError("level must be an exact rational p/q, got '" + text + "'");
  scv::Scalar l = scv::parse_scalar(text);
  if (!l.is_rational()) throw scv::ParseError("level must be rational");
  return l;
}

scv::ExactMatrix require_matrix(const std::string& path, const char* flag) {
  if (path.empty()) throw scv::ParseError(std::string(flag) + " is required");
  return scv::load_candidate_file(path);
}

int emit(const Options& opt, const json& doc, int code) {
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!opt.json_out.empty()) {
    std::ofstream out(opt.json_out, std::ios::binary);
    if (!out) throw scv::ParseError("cannot write " + opt.json_out);
    out << text;
  }
  return code;
}

json base_inputs(const Options& opt) { return {{"algebra", opt.algebra}, {"level", opt.level}}; }

scv::AlgebraContext algebra(const Options& opt) { return scv::resolve_algebra(opt.algebra, parse_level(opt.level)); }

int run(const std::string& cmd, const Options& opt) {
  if (cmd == "validate") {
    scv::AlgebraContext ctx = opt.algebra == "sl2" || opt.algebra.rfind("so", 0) == 0
                                  ? algebra(opt)
                                  : scv::parse_algebra(scv::read_json_file(opt.algebra), parse_level(opt.level));
    const auto rep = scv::validate(ctx);
    json inputs = {{"algebra", opt.algebra}};
    return emit(opt, scv::envelope(cmd, inputs, scv::to_json(rep)), rep.ok() ? kOk : kInvalid);
  }
  if (cmd == "verify") {
    const auto ctx = algebra(opt);
    const auto a = require_matrix(opt.matrix, "--matrix");
    json inputs = base_inputs(opt);
    inputs["matrix"] = scv::matrix_json(a);
    inputs["backend"] = opt.backend;
    json result;
    bool member = false;
    if (opt.backend == "exact") {
      const auto rep = scv::is_semi_conformal(ctx, a);
      result = scv::to_json(rep);
      member = rep.is_member;
    } else if (opt.backend == "approx") {
      const long bits = scv::precision_bits_from_env();
      const auto rep = scv::is_semi_conformal_approx(ctx, a, bits);
      result = scv::to_json(rep);
      result["precision_bits"] = bits;
      member = rep.is_member;
    } else {
      throw scv::ParseError("--backend must be exact or approx");
    }
    result["readings"] = scv::to_json(scv::Readings{});
    return emit(opt, scv::envelope(cmd, inputs, result), member ? kOk : kNotMember);
  }
  if (cmd == "solve" || cmd == "classify" || cmd == "minsc") {
    const scv::Scalar l = parse_level(opt.level);
    scv::require_noncritical_sl2(l);
    json inputs = {{"level", opt.level}};
    json result;
    if (cmd == "solve")
      result = scv::to_json(scv::solve_diagonal(l));
    else if (cmd == "classify")
      result = scv::to_json(scv::classify(l));
    else {
      result = scv::to_json(scv::minimal_vectors(l));
      result["longest_chain"] = scv::longest_chain(l);
    }
    return emit(opt, scv::envelope(cmd, inputs, result), kOk);
  }
  if (cmd == "order") {
    const auto ctx = algebra(opt);
    const auto a = require_matrix(opt.matrix, "--matrix");
    const auto b = require_matrix(opt.matrix_b, "--matrix-b");
    json inputs = base_inputs(opt);
    inputs["matrix"] = scv::matrix_json(a);
    inputs["matrix_b"] = scv::matrix_json(b);
    const bool rel = scv::partial_order(ctx, a, b);
    json result = {{"a_below_b", rel}, {"diagonal_input", a.is_diagonal() && b.is_diagonal()}};
    return emit(opt, scv::envelope(cmd, inputs, result), kOk);
  }
  if (cmd == "complement") {
    const auto ctx = algebra(opt);
    const auto a = require_matrix(opt.matrix, "--matrix");
    const auto c = scv::complement(ctx, a);
    const auto f = ctx.frame();
    json inputs = base_inputs(opt);
    inputs["matrix"] = scv::matrix_json(a);
    json result = {{"matrix", scv::matrix_json(c)},
                   {"charge", scv::central_charge(f, a).str()},
                   {"complement_charge", scv::central_charge(f, c).str()},
                   {"conformal_charge", scv::central_charge(f, scv::conformal_candidate(ctx)).str()}};
    return emit(opt, scv::envelope(cmd, inputs, result), kOk);
  }
  if (cmd == "charge") {
    const auto ctx = algebra(opt);
    const auto a = scv::require_candidate(ctx, require_matrix(opt.matrix, "--matrix"));
    json inputs = base_inputs(opt);
    inputs["matrix"] = scv::matrix_json(a);
    return emit(opt, scv::envelope(cmd, inputs, {{"charge", scv::central_charge(ctx.frame(), a).str()}}), kOk);
  }
  if (cmd == "oracle-check") {
    const auto ctx = algebra(opt);
    const auto a = scv::require_candidate(ctx, require_matrix(opt.matrix, "--matrix"));
    scv::ExactOracle o(ctx.frame());
    const auto v = scv::oracle_semi_conformal(o, a, ctx.h_dual());
    const auto r = scv::oracle_residuals(o, a, ctx.h_dual());
    json inputs = base_inputs(opt);
    inputs["matrix"] = scv::matrix_json(a);
    json result = scv::to_json(v);
    result["residuals"] = {{"r34", scv::column_json(r.r34)},
                           {"r35", scv::matrix_json(r.r35)},
                           {"r36", scv::column_json(r.r36)},
                           {"r38", r.r38.str()}};
    result["weight_cap"] = o.weight_cap();
    return emit(opt, scv::envelope(cmd, inputs, result), v.member ? kOk : kNotMember);
  }
  if (cmd == "calibrate") {
    const auto ctx = scv::resolve_algebra(opt.algebra, scv::Scalar(0));
    const auto rep = scv::calibrate_equations(ctx, opt.trials, opt.seed);
    json result = scv::to_json(rep);
    const scv::Readings def;
    const auto w35 = rep.eq35_winners();
    const auto w38 = rep.eq38_winners();
    bool default_wins = false;
    for (const auto& e : w35) default_wins = default_wins || (e.final_term == def.final_term && e.trace_sign == def.trace_sign);
    bool default38 = false;
    for (const auto& e : w38) default38 = default38 || e.middle == def.middle;
    result["default_reading"] = scv::to_json(def);
    result["default_among_winners"] = default_wins && default38;
    json inputs = {{"algebra", opt.algebra}, {"trials", opt.trials}, {"seed", opt.seed}};
    return emit(opt, scv::envelope(cmd, inputs, result), kOk);
  }
  throw scv::ParseError("unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-conformal vectors of affine vertex operator algebras"};
  app.require_subcommand(1, 1);
  Options opt;

  struct Spec {
    const char* name;
    const char* help;
    bool level, matrix, matrix_b, algebra, backend, calib;
  };
  const Spec specs[] = {
      {"validate", "check the structure constants of an algebra", false, false, false, true, false, false},
      {"verify", "evaluate the semi-conformal equations for a matrix", true, true, false, true, true, false},
      {"solve", "solve the sl2 diagonal system at a level", true, false, false, false, false, false},
      {"classify", "orbit decomposition of the sl2 diagonal solutions", true, false, false, false, false, false},
      {"minsc", "minimal semi-conformal orbit representatives for sl2", true, false, false, false, false, false},
      {"order", "decide w_A <= w_B for sl2 members", true, true, true, true, false, false},
      {"complement", "complement w - w_A and its central charge", true, true, false, true, false, false},
      {"charge", "central charge 2l tr(A)", true, true, false, true, false, false},
      {"oracle-check", "decide membership from the PBW mode oracle", true, true, false, true, false, false},
      {"calibrate", "score every index-convention reading against the oracle", false, false, false, true, false, true},
  };
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    if (s.algebra) sub->add_option("--algebra", opt.algebra, "sl2, soN or a structure-constant file");
    if (s.level) sub->add_option("--level", opt.level, "level as an exact rational p/q")->required();
    if (s.matrix) sub->add_option("--matrix", opt.matrix, "candidate file {\"matrix\": [[...]]}")->required();
    if (s.matrix_b) sub->add_option("--matrix-b", opt.matrix_b, "second candidate file")->required();
    if (s.backend) sub->add_option("--backend", opt.backend, "exact or approx");
    if (s.calib) {
      sub->add_option("--trials", opt.trials, "number of random trials");
      sub->add_option("--seed", opt.seed, "random seed");
    }
    sub->add_option("--json", opt.json_out, "also write the report to this file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kError;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, opt);
  } catch (const scv::ValidationError& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
}
