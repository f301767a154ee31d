// Copyright 2026 The polyconv Authors.
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

#pragma once

// Command dispatch and JSON reports for the polyconv tool.
//
// Exit codes: 0 the command's verdict holds, 1 it fails or no witness was
// found, 2 the input could not be used (parse error, failed precondition).

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "polyconv/polyconv.hpp"

namespace polyconv::cli {

using nlohmann::json;

inline json subset_json(const GroundSet& g, Mask m) { return g.labels_of(m); }

inline json function_json(const SetFunction& f) {
  json ranks = json::array();
  for (Mask m : canonical_subsets(f.size())) {
    ranks.push_back({{"set", subset_json(f.ground(), m)}, {"rank", f(m).to_string()}});
  }
  return {{"ground", f.ground().labels()}, {"ranks", ranks}};
}

inline json pair_json(const GroundSet& g, const std::optional<FlatPair>& p) {
  if (!p) return nullptr;
  return json::array({subset_json(g, p->first), subset_json(g, p->second)});
}

inline json cut_json(const GroundSet& g, const ModularCut& cut) {
  json members = json::array();
  for (Mask m : cut.members) members.push_back(subset_json(g, m));
  return {{"members", members},
          {"principal", cut.principal},
          {"delta", cut.delta ? json(cut.delta->to_string()) : json(nullptr)},
          {"generators", pair_json(g, cut.generators)},
          {"witness_pair", pair_json(g, cut.witness_pair)}};
}

inline json check_json(const GroundSet& g, const ConditionCheck& c) {
  json out = {{"name", c.name}, {"pass", c.pass}};
  if (!c.pass) {
    out["first"] = c.first ? subset_json(g, *c.first) : json(nullptr);
    out["second"] = c.second ? subset_json(g, *c.second) : json(nullptr);
    out["detail"] = c.detail;
  }
  return out;
}

inline json conditions_json(const GroundSet& g, const ConditionReport& r) {
  json out = {{"incomparable_pairs", check_json(g, r.incomparable)},
              {"comparable_pairs", check_json(g, r.chain)},
              {"all_pass", r.all_pass()}};
  if (r.embedding) {
    json emb = json::array();
    for (const auto& c : *r.embedding) emb.push_back(check_json(g, c));
    out["embedding"] = emb;
  }
  return out;
}

inline json validation_json(const GroundSet& g, const ValidationReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"axiom", v.axiom},
                          {"first", subset_json(g, v.first)},
                          {"second", subset_json(g, v.second)},
                          {"detail", v.detail}});
  }
  return {{"nonnegative", r.nonnegative}, {"monotone", r.monotone},     {"submodular", r.submodular},
          {"violations", violations},     {"integer_valued", r.integer_valued}, {"is_matroid", r.is_matroid},
          {"modular", r.modular},         {"flat_modular", r.flat_modular},     {"polymatroid", r.valid()}};
}

inline json lattice_json(const RankedLattice& rl, const Measure& mu) {
  json members = json::array();
  for (std::size_t k = 0; k < rl.size(); ++k) {
    members.push_back({{"set", subset_json(rl.ground(), rl.members()[k])}, {"rank", rl.ranks()[k].to_string()}});
  }
  json measure = json::object();
  for (int i = 0; i < mu.ground().size(); ++i) measure[mu.ground().label(i)] = mu.weight(i).to_string();
  return {{"ground", rl.ground().labels()}, {"members", members}, {"measure", measure}};
}

struct Outcome {
  json result;
  std::string verdict;
  int code = 0;
};

class Session {
 public:
  std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    material_ += std::to_string(text.size()) + ":" + text;
    return text;
  }

  SetFunction polymatroid(const std::string& path) {
    SetFunction f = parse_polymatroid(read(path));
    if (!f.is_polymatroid()) {
      const ValidationReport r = validate_polymatroid(f);
      throw Error(ErrorCode::kNotAPolymatroid, path + ": " + r.violations.front().axiom + " violated: " + r.violations.front().detail);
    }
    return f;
  }

  /// SHA-256 over the contents of every file read, each prefixed by its length.
  std::string digest() const {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_Digest(material_.data(), material_.size(), md.data(), &len, EVP_sha256(), nullptr);
    std::string hex = "sha256:";
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
      std::snprintf(buf, sizeof(buf), "%02x", md[i]);
      hex += buf;
    }
    return hex;
  }

 private:
  std::string material_;
};

inline void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  out << text;
}

inline Mask subset_arg(const GroundSet& g, const std::string& text) {
  try {
    return parse_subset(g, text);
  } catch (const Error& e) {
    throw Error(ErrorCode::kUnknownElement, "in '" + text + "': " + e.what());
  }
}

inline Mask labels_arg(const GroundSet& g, const std::vector<std::string>& words) {
  Mask m = 0;
  for (const auto& w : words) m |= subset_arg(g, w);
  return m;
}

/// Runs one command line (without the program name). The JSON report goes to
/// `out`; diagnostics go to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact polymatroid workbench: convolution, modular cuts, extensions and obstruction certificates",
               "polyconv"};
  app.require_subcommand(1);

  std::string model;
  std::string model2;
  std::string output;
  std::string extension;
  std::string epsilon;
  std::string mode = "common-info";
  std::string name;
  std::string set_text;
  std::string closure_text;
  std::string embed;
  std::string lattice_output;
  std::string f1_output;
  std::string f2_output;
  std::vector<std::string> gen;
  std::vector<std::string> family;
  std::vector<std::string> merge;
  std::vector<std::string> blocks;
  std::optional<long long> bound;
  std::map<std::string, std::string> ineq_args = {{"a", ""}, {"b", ""}, {"p", ""}, {"q", ""}, {"y", ""}, {"e", ""}};

  auto add_model = [&](CLI::App* cmd, const char* what = "polymatroid model file") {
    cmd->add_option("model", model, what)->required();
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--output", output, "write the resulting polymatroid in model format");
  };

  auto* validate_cmd = app.add_subcommand("validate", "check the polymatroid axioms");
  add_model(validate_cmd);
  auto* flats_cmd = app.add_subcommand("flats", "list the flats");
  add_model(flats_cmd);
  flats_cmd->add_option("--closure", closure_text, "also report the closure of this subset");
  auto* cyclic_cmd = app.add_subcommand("cyclic-flats", "cyclic flats with meet and join");
  add_model(cyclic_cmd);
  auto* cut_cmd = app.add_subcommand("cut", "generate, check or search for a modular cut");
  add_model(cut_cmd);
  cut_cmd->add_option("--gen", gen, "two generating flats, e.g. --gen \"{a}\" \"{b}\"")->expected(2);
  cut_cmd->add_option("--family", family, "check whether this family of flats is a modular cut")->expected(1, -1);
  auto* convolve_cmd = app.add_subcommand("convolve", "convolve a ranked lattice with its measure");
  add_model(convolve_cmd, "ranked lattice file");
  convolve_cmd->add_option("--embed", embed, "polymatroid the convolution should reproduce");
  add_output(convolve_cmd);
  auto* factor_cmd = app.add_subcommand("factor", "merge elements into one class");
  add_model(factor_cmd);
  factor_cmd->add_option("--merge", merge, "labels of the merged class, e.g. --merge \"a b\"")->required()->expected(1, -1);
  factor_cmd->add_option("--name", name, "label of the merged class");
  add_output(factor_cmd);
  auto* contract_cmd = app.add_subcommand("contract", "contract along a subset");
  add_model(contract_cmd);
  contract_cmd->add_option("--set", set_text, "subset to contract, e.g. --set \"{c}\"")->required();
  add_output(contract_cmd);
  auto* fext_cmd = app.add_subcommand("factor-extend", "lift an extension of a factor");
  add_model(fext_cmd);
  fext_cmd->add_option("--merge", merge, "labels of the merged class")->required()->expected(1, -1);
  fext_cmd->add_option("--name", name, "label of the merged class");
  fext_cmd->add_option("--extension", extension, "extension of the factor (model file)")->required();
  add_output(fext_cmd);
  auto* cext_cmd = app.add_subcommand("contract-extend", "lift an extension of a contract");
  add_model(cext_cmd);
  cext_cmd->add_option("--set", set_text, "contracted subset")->required();
  cext_cmd->add_option("--extension", extension, "extension of the contract (model file)")->required();
  add_output(cext_cmd);
  auto* helgason_cmd = app.add_subcommand("helgason", "expand an integer polymatroid into a matroid");
  add_model(helgason_cmd);
  helgason_cmd->add_option("--block", blocks, "element=matroid.pm; default blocks are free matroids");
  add_output(helgason_cmd);
  auto* extend_cmd = app.add_subcommand("extend", "common-information or Ingleton-violating extension");
  add_model(extend_cmd);
  extend_cmd->add_option("--mode", mode, "common-info or ingleton")->check(CLI::IsMember({"common-info", "ingleton"}));
  extend_cmd->add_option("--epsilon", epsilon, "epsilon >= 0 for common-info (p/q)");
  extend_cmd->add_option("--gen", gen, "generating flats of the cut")->expected(2);
  extend_cmd->add_option("--lattice-output", lattice_output, "write the ranked lattice used");
  add_output(extend_cmd);
  auto* certify_cmd = app.add_subcommand("certify", "build a non-stickiness certificate");
  add_model(certify_cmd);
  certify_cmd->add_option("--f1-output", f1_output, "write the common-information extension");
  certify_cmd->add_option("--f2-output", f2_output, "write the Ingleton extension");
  auto* amalgam_cmd = app.add_subcommand("amalgam-search", "search for an integer amalgam of two extensions");
  amalgam_cmd->add_option("first", model, "first extension")->required();
  amalgam_cmd->add_option("second", model2, "second extension")->required();
  amalgam_cmd->add_option("--bound", bound, "largest value tried for free subsets");
  add_output(amalgam_cmd);
  auto* ineq_cmd = app.add_subcommand("ineq-check", "evaluate ING + COMM and the ten-term identity");
  add_model(ineq_cmd);
  for (auto& [key, value] : ineq_args) {
    ineq_cmd->add_option("--" + key, value, "subset " + key + " (default {})");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Session session;
  Outcome outcome;
  std::string command;
  try {
    if (*validate_cmd) {
      command = "validate";
      const SetFunction f = parse_polymatroid(session.read(model));
      const ValidationReport r = validate_polymatroid(f);
      outcome = {validation_json(f.ground(), r), r.valid() ? "Polymatroid" : "NotPolymatroid", r.valid() ? 0 : 1};
    } else if (*flats_cmd) {
      command = "flats";
      const SetFunction f = session.polymatroid(model);
      json list = json::array();
      for (Mask m : flats(f)) list.push_back({{"set", subset_json(f.ground(), m)}, {"rank", f(m).to_string()}});
      outcome.result = {{"flats", list}};
      if (!closure_text.empty()) {
        const Mask a = subset_arg(f.ground(), closure_text);
        outcome.result["closure"] = {{"of", subset_json(f.ground(), a)}, {"is", subset_json(f.ground(), closure(f, a))}};
      }
      outcome.verdict = "Ok";
    } else if (*cyclic_cmd) {
      command = "cyclic-flats";
      const SetFunction f = session.polymatroid(model);
      const CyclicFlatLattice lat = cyclic_lattice(f);
      json members = json::array();
      json ops = json::array();
      for (Mask m : lat.members()) members.push_back({{"set", subset_json(f.ground(), m)}, {"rank", f(m).to_string()}});
      for (std::size_t i = 0; i < lat.size(); ++i) {
        for (std::size_t j = i; j < lat.size(); ++j) {
          const Mask a = lat.members()[i];
          const Mask b = lat.members()[j];
          ops.push_back({{"pair", {subset_json(f.ground(), a), subset_json(f.ground(), b)}},
                         {"meet", subset_json(f.ground(), lat.meet(a, b))},
                         {"join", subset_json(f.ground(), lat.join(a, b))}});
        }
      }
      outcome = {{{"cyclic_flats", members}, {"operations", ops}}, "Ok", 0};
    } else if (*cut_cmd) {
      command = "cut";
      const SetFunction f = session.polymatroid(model);
      if (!family.empty()) {
        std::vector<Mask> fam;
        for (const auto& s : family) fam.push_back(subset_arg(f.ground(), s));
        const CutCheck check = is_modular_cut(f, fam);
        outcome.result = {{"is_modular_cut", check.ok}, {"diagnostic", check.diagnostic}};
        if (check.ok) outcome.result["cut"] = cut_json(f.ground(), make_cut(f, fam));
        outcome.verdict = check.ok ? "ModularCut" : "NotModularCut";
        outcome.code = check.ok ? 0 : 1;
      } else if (!gen.empty()) {
        const ModularCut cut = generate_cut(f, subset_arg(f.ground(), gen[0]), subset_arg(f.ground(), gen[1]));
        outcome = {{{"cut", cut_json(f.ground(), cut)}}, cut.principal ? "Principal" : "NonPrincipal", cut.principal ? 1 : 0};
      } else {
        const auto found = find_nonprincipal_cut(f);
        if (found) {
          outcome.result = {{"pair", pair_json(f.ground(), FlatPair{found->first, found->second})},
                            {"cut", cut_json(f.ground(), found->cut)}};
          outcome.verdict = "NonPrincipal";
        } else {
          outcome = {{{"pair", nullptr}, {"cut", nullptr}}, "AllPrincipal", 1};
        }
      }
    } else if (*convolve_cmd) {
      command = "convolve";
      const LatticeModel lm = parse_ranked_lattice(session.read(model));
      std::optional<SetFunction> base;
      if (!embed.empty()) base = session.polymatroid(embed);
      const ConditionReport cond = check_conditions(lm.lattice, lm.measure, base ? &*base : nullptr);
      const ConvolutionResult conv = convolve(lm.lattice, lm.measure);
      const ValidationReport vr = validate_polymatroid(conv.value);
      const GroundSet& g = lm.lattice.ground();
      json witnesses = json::array();
      for (Mask m : canonical_subsets(g.size())) {
        witnesses.push_back({{"set", subset_json(g, m)}, {"witness", subset_json(g, conv.witness[m])}});
      }
      outcome.result = {{"conditions", conditions_json(g, cond)},
                        {"value", function_json(conv.value)},
                        {"witnesses", witnesses},
                        {"raw_empty_value", conv.raw_empty_value.to_string()},
                        {"validation", validation_json(g, vr)}};
      if (base) outcome.result["reproduces_base"] = extends(conv.value, *base);
      outcome.verdict = vr.valid() ? "Polymatroid" : "NotPolymatroid";
      outcome.code = vr.valid() ? 0 : 1;
      write_text(output, serialize_polymatroid(conv.value));
    } else if (*factor_cmd || *fext_cmd) {
      const bool lift = fext_cmd->parsed();
      command = lift ? "factor-extend" : "factor";
      const SetFunction f = session.polymatroid(model);
      const Partition part = Partition::merging(f.ground(), labels_arg(f.ground(), merge), name);
      SetFunction result;
      if (lift) {
        const SetFunction gp = session.polymatroid(extension);
        const FactorExtension lifted = factor_extension_detailed(f, part, gp);
        result = lifted.g;
        outcome.result["route"] = lifted.route == FactorRoute::kLatticeConvolution ? "lattice-convolution" : "amalgam-formula";
        outcome.result["factor"] = function_json(factor(f, part));
      } else {
        result = factor(f, part);
      }
      outcome.result["function"] = function_json(result);
      outcome.verdict = "Ok";
      write_text(output, serialize_polymatroid(result));
    } else if (*contract_cmd || *cext_cmd) {
      const bool lift = cext_cmd->parsed();
      command = lift ? "contract-extend" : "contract";
      const SetFunction f = session.polymatroid(model);
      const Mask x = subset_arg(f.ground(), set_text);
      SetFunction result;
      if (lift) {
        const SetFunction gp = session.polymatroid(extension);
        result = contract_extension(f, x, gp);
        outcome.result["contract"] = function_json(contract(f, x));
      } else {
        result = contract(f, x);
      }
      outcome.result["function"] = function_json(result);
      outcome.verdict = "Ok";
      write_text(output, serialize_polymatroid(result));
    } else if (*helgason_cmd) {
      command = "helgason";
      const SetFunction f = session.polymatroid(model);
      std::map<std::string, SetFunction> given;
      for (const auto& item : blocks) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::kInvalidArgument, "--block expects element=file, got '" + item + "'");
        given.emplace(item.substr(0, eq), session.polymatroid(item.substr(eq + 1)));
      }
      const SetFunction g = helgason_expand(f, given);
      outcome = {{{"function", function_json(g)}, {"is_matroid", g.flags().is_matroid}}, "Matroid", 0};
      write_text(output, serialize_polymatroid(g));
    } else if (*extend_cmd) {
      command = "extend";
      const SetFunction f = session.polymatroid(model);
      std::optional<ModularCut> cut;
      if (!gen.empty()) {
        cut = generate_cut(f, subset_arg(f.ground(), gen[0]), subset_arg(f.ground(), gen[1]));
      } else if (auto found = find_nonprincipal_cut(f)) {
        cut = std::move(found->cut);
      }
      if (!cut) {
        outcome = {{{"cut", nullptr}}, "NoWitness", 1};
      } else {
        require_nonprincipal(*cut);
        const Mask s = cut->witness_pair->first & cut->witness_pair->second;
        const Mask f1 = cut->witness_pair->first;
        const Mask f2 = cut->witness_pair->second;
        ExtensionLattice ext;
        if (mode == "ingleton") {
          if (!epsilon.empty()) throw Error(ErrorCode::kInvalidArgument, "ingleton mode derives epsilon from the cut");
          ext = ingleton_lattice(f, *cut);
        } else {
          ext = common_info_lattice(f, *cut, epsilon.empty() ? Ratio(0) : Ratio::parse(epsilon));
        }
        const SetFunction g = mode == "ingleton" ? ingleton_extension(f, *cut) : common_info_extension(f, *cut, epsilon.empty() ? Ratio(0) : Ratio::parse(epsilon));
        const GroundSet& ng = g.ground();
        json result = {{"cut", cut_json(f.ground(), *cut)},
                       {"lattice", lattice_json(ext.lattice, ext.measure)},
                       {"conditions", conditions_json(ng, check_conditions(ext.lattice, ext.measure, &f))},
                       {"function", function_json(g)},
                       {"extends_base", extends(g, f)}};
        if (mode == "ingleton") {
          const int u = ext.new_elements[0];
          const int v = ext.new_elements[1];
          result["epsilon"] = ingleton_epsilon(f, *cut).to_string();
          result["ing"] = ing_value(g, f1, f2, bit(u), bit(v), s).to_string();
        } else {
          result["epsilon"] = (epsilon.empty() ? Ratio(0) : Ratio::parse(epsilon)).to_string();
          result["comm"] = comm_value(g, f1, f2, bit(ext.new_elements[0]), s).to_string();
        }
        outcome = {result, "Extension", 0};
        write_text(output, serialize_polymatroid(g));
        write_text(lattice_output, serialize_ranked_lattice(ext.lattice, ext.measure));
      }
    } else if (*certify_cmd) {
      command = "certify";
      const SetFunction f = session.polymatroid(model);
      const ObstructionCertificate cert = certify_nonsticky(f);
      json result = {{"base", function_json(f)}, {"verdict", to_string(cert.verdict)}};
      if (cert.obstruction) {
        const Obstruction& ob = *cert.obstruction;
        const GroundSet& g = f.ground();
        result["generators"] = {subset_json(g, ob.first), subset_json(g, ob.second)};
        result["S"] = subset_json(g, ob.meet);
        result["delta"] = ob.delta.to_string();
        result["cut"] = cut_json(g, ob.cut);
        result["common_info"] = {{"new_element", ob.common_info.ground().label(ob.a)},
                                 {"epsilon", "0"},
                                 {"function", function_json(ob.common_info)}};
        result["ingleton"] = {{"new_elements", {ob.ingleton.ground().label(ob.u), ob.ingleton.ground().label(ob.v)}},
                              {"epsilon", ob.ingleton_epsilon.to_string()},
                              {"function", function_json(ob.ingleton)}};
        result["comm"] = ob.comm.to_string();
        result["ing"] = ob.ing.to_string();
        result["ing_measure_branch"] = ob.ing_measure_branch;
        result["inequality"] = "ING(F1,F2;u,v|S) + COMM(F1,F2;a|S) >= 0 holds in every polymatroid";
        write_text(f1_output, serialize_polymatroid(ob.common_info));
        write_text(f2_output, serialize_polymatroid(ob.ingleton));
      }
      outcome = {result, to_string(cert.verdict), cert.verdict == Verdict::kNotSticky ? 0 : 1};
    } else if (*amalgam_cmd) {
      command = "amalgam-search";
      const SetFunction f1 = session.polymatroid(model);
      const SetFunction f2 = session.polymatroid(model2);
      const std::int64_t cap = bound ? static_cast<std::int64_t>(*bound) : default_amalgam_bound(f1, f2);
      AmalgamSearchStats stats;
      const auto found = amalgam_search_integer(f1, f2, cap, &stats);
      outcome.result = {{"ground", union_ground(f1.ground(), f2.ground()).labels()},
                        {"bound", cap},
                        {"free_subsets", stats.free_subsets},
                        {"nodes", stats.nodes},
                        {"amalgam", found ? function_json(*found) : json(nullptr)}};
      outcome.verdict = found ? "AmalgamFound" : "NoAmalgam";
      outcome.code = found ? 0 : 1;
      if (found) write_text(output, serialize_polymatroid(*found));
    } else if (*ineq_cmd) {
      command = "ineq-check";
      const SetFunction f = parse_polymatroid(session.read(model));
      std::map<std::string, Mask> m;
      for (const auto& [key, text] : ineq_args) m[key] = subset_arg(f.ground(), text);
      const Ratio comm = comm_value(f, m["a"], m["b"], m["y"], m["e"]);
      const Ratio ing = ing_value(f, m["a"], m["b"], m["p"], m["q"], m["e"]);
      const TenTermResult tt = ten_term_check(f, m["a"], m["b"], m["p"], m["q"], m["y"], m["e"]);
      json terms = json::array();
      for (const Ratio& t : ten_terms(f, m["a"], m["b"], m["p"], m["q"], m["y"], m["e"])) terms.push_back(t.to_string());
      const bool poly = f.is_polymatroid();
      const bool holds = tt.equal && (!poly || tt.lhs.sign() >= 0);
      json argj = json::object();
      for (const auto& [key, mask] : m) argj[key] = subset_json(f.ground(), mask);
      outcome = {{{"arguments", argj},
                  {"comm", comm.to_string()},
                  {"ing", ing.to_string()},
                  {"lhs", tt.lhs.to_string()},
                  {"rhs", tt.rhs.to_string()},
                  {"identity_holds", tt.equal},
                  {"terms", terms},
                  {"polymatroid", poly}},
                 holds ? "Holds" : "Fails",
                 holds ? 0 : 1};
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const json report = {{"command", command},
                       {"input_digest", session.digest()},
                       {"result", outcome.result},
                       {"verdict", outcome.verdict}};
  out << report.dump(2) << "\n";
  return outcome.code;
}

}  // namespace polyconv::cli
