#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "manifest.hpp"
#include "tagpcp/compiler.hpp"
#include "tagpcp/cyclic.hpp"
#include "tagpcp/errors.hpp"
#include "tagpcp/pcp.hpp"
#include "tagpcp/simulator.hpp"
#include "tagpcp/tagcore.hpp"
#include "tagpcp/text.hpp"

using namespace tagpcp;

namespace {

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse:
      return 2;
    case ErrorCode::Divergence:
    case ErrorCode::Mismatch:
      return 4;
    case ErrorCode::Budget:
      return 5;
    default:
      return 3;
  }
}

std::string render_cyclic(const cyclic::Config& c) {
  std::string s;
  for (std::size_t i = 0; i < c.program.size(); ++i) {
    if (i) s += ',';
    const std::string a = c.program[i].empty() ? "e" : c.program[i];
    s += i == c.marker ? "[" + a + "]" : a;
  }
  return s + " " + (c.dataword.empty() ? "e" : c.dataword);
}

compiler::CompiledSystem load_compiled(const std::string& path) {
  return compiler::deserialize(text::read_file(path));
}

pcp::RuleShape load_shape(const std::string& compiled, const std::string& tag) {
  if (!compiled.empty()) return pcp::RuleShape::from_compiled(load_compiled(compiled));
  return pcp::RuleShape::from_tag_system(tagcore::TagSystem::parse(text::read_file(tag)));
}

std::optional<compiler::ObjectKind> kind_by_name(const std::string& n) {
  using compiler::ObjectKind;
  for (auto k : {ObjectKind::One, ObjectKind::Zero, ObjectKind::Eps, ObjectKind::EpsPrime,
                 ObjectKind::OnePrime})
    if (n == compiler::kind_name(k)) return k;
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tag system compiler, simulator and PCP reduction toolkit"};
  app.require_subcommand(1);
  std::string manifest_path;
  std::uint64_t seed = 1;
  app.add_option("--manifest", manifest_path, "where to write the run manifest");
  app.add_option("--seed", seed, "seed recorded in the manifest")->capture_default_str();

  std::string program_file, input, system_file, compiled_file, out_file, trace_out, instance_file,
      tag_file, engine = "both", corrupt;
  std::uint64_t steps = 10, depth = 12, max_nodes = 2000000, cap = 12;
  std::optional<std::uint64_t> x, halting_index;
  std::optional<std::string> pcp_input;
  bool probe = false;

  auto* run_cts = app.add_subcommand("run-cts", "run a cyclic tag system and print each configuration");
  run_cts->add_option("--program", program_file, "program file, one appendant per line, e for empty")->required();
  run_cts->add_option("--input", input, "initial dataword")->required();
  run_cts->add_option("--steps", steps, "step budget")->capture_default_str();

  auto* run_tag = app.add_subcommand("run-tag", "run a tag system and print each dataword");
  run_tag->add_option("--system", system_file, "tag system file (beta=N, then sym -> word)")->required();
  run_tag->add_option("--input", input, "initial dataword")->required();
  run_tag->add_option("--steps", steps, "step budget")->capture_default_str();

  auto* compile = app.add_subcommand("compile", "compile a binary cyclic tag system into a tag system");
  compile->add_option("--program", program_file, "cyclic program file")->required();
  compile->add_option("--x", x, "override the parameter x (even, above 14)");
  compile->add_option("--halting-index", halting_index, "appendant replaced by a halting block");
  compile->add_option("--pcp-input", pcp_input, "build the variant used by the PCP reduction for this input");
  compile->add_option("-o,--output", out_file, "compiled system file")->required();

  auto* verify = app.add_subcommand("verify-u", "rebuild the track ledger and run all audits");
  verify->add_option("--compiled", compiled_file, "compiled system file")->required();
  verify->add_option("--corrupt", corrupt, "corrupt one row, as kind:row (e.g. 0:5)");

  auto* sim = app.add_subcommand("simulate", "simulate the compiled system on an encoded input");
  sim->add_option("--compiled", compiled_file, "compiled system file")->required();
  sim->add_option("--input", input, "cyclic dataword to encode")->required();
  sim->add_option("--steps", steps, "simulated cyclic steps")->capture_default_str();
  sim->add_option("--engine", engine, "object, symbol or both")
      ->check(CLI::IsMember({"object", "symbol", "both"}))
      ->capture_default_str();
  sim->add_option("--symbol-cap", cap, "symbol engine step cap in both mode")->capture_default_str();
  sim->add_option("--trace-out", trace_out, "per-object trace (tab separated)");

  auto* reduce = app.add_subcommand("reduce-pcp", "write the four-pair PCP instance");
  auto* reduce_src = reduce->add_option_group("source");
  reduce_src->add_option("--compiled", compiled_file, "pcp-ready compiled system");
  reduce_src->add_option("--tag", tag_file, "tag system with rules b -> b, c -> ...b");
  reduce_src->require_option(1);
  reduce->add_option("-o,--output", out_file, "instance file")->required();

  auto* match = app.add_subcommand("match-pcp", "replay the tag computation as PCP prefix matching");
  match->add_option("--instance", instance_file, "instance file")->required();
  auto* match_src = match->add_option_group("source");
  match_src->add_option("--compiled", compiled_file, "pcp-ready compiled system");
  match_src->add_option("--tag", tag_file, "tag system with rules b -> b, c -> ...b");
  match_src->require_option(1);
  match->add_option("--steps", steps, "tag step budget")->capture_default_str();
  match->add_flag("--probe", probe, "classify every alternative pair at each choice");

  auto* solve = app.add_subcommand("solve-pcp", "breadth-first search for a PCP solution");
  solve->add_option("--instance", instance_file, "instance file")->required();
  solve->add_option("--depth", depth, "maximum sequence length")->capture_default_str();
  solve->add_option("--max-nodes", max_nodes, "node budget")->capture_default_str();

  auto* bench = app.add_subcommand("bench", "growth table of the object engine");
  bench->add_option("--compiled", compiled_file, "compiled system file")->required();
  bench->add_option("--input", input, "cyclic dataword")->required();
  bench->add_option("--steps", steps, "simulated cyclic steps")->capture_default_str();
  bench->add_option("-o,--output", out_file, "growth table (tab separated)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  CLI::App* cmd = app.get_subcommands().front();
  cli::Manifest manifest(cmd->get_name());
  manifest.set_seed(seed);
  auto& params = manifest.params();
  int rc = 0;
  std::ostringstream out;

  try {
    if (cmd == run_cts) {
      manifest.input(program_file);
      params = {{"input", input}, {"steps", steps}};
      cyclic::Config cfg{cyclic::Program::parse(text::read_file(program_file)), 0, input};
      cyclic::check_binary(input, "input");
      out << "0\t" << render_cyclic(cfg) << "\n";
      std::uint64_t t = 0;
      for (; t < steps && !cfg.dataword.empty(); ++t) {
        cyclic::step_in_place(cfg);
        out << t + 1 << "\t" << render_cyclic(cfg) << "\n";
      }
      out << (cfg.dataword.empty() ? "halted" : "running") << " after " << t << " steps\n";
    } else if (cmd == run_tag) {
      manifest.input(system_file);
      params = {{"input", input}, {"steps", steps}};
      auto sys = tagcore::TagSystem::parse(text::read_file(system_file));
      auto w = tagcore::Dataword::from_text(input, sys.alphabet());
      out << "0\t" << w.to_text(sys.alphabet()) << "\n";
      std::uint64_t t = 0;
      bool halted = false;
      for (; t < steps; ++t) {
        if (!tagcore::step_in_place(sys, w)) {
          halted = true;
          break;
        }
        out << t + 1 << "\t" << w.to_text(sys.alphabet()) << "\n";
      }
      if (!halted && w.size() < sys.beta()) halted = true;
      out << (halted ? "halted" : "running") << " after " << t << " steps\n";
    } else if (cmd == compile) {
      manifest.input(program_file);
      compiler::CompileOptions o{x, halting_index, pcp_input};
      if (x) params["x"] = *x;
      if (halting_index) params["halting_index"] = *halting_index;
      if (pcp_input) params["pcp_input"] = *pcp_input;
      auto sys = compiler::compile(cyclic::Program::parse(text::read_file(program_file)), o);
      text::write_file(out_file, compiler::serialize(sys));
      manifest.output(out_file);
      const auto& p = sys.params;
      out << "x=" << p.x << " r=" << p.r << " p=" << p.p << " q=" << p.q << " beta=" << p.beta
          << " |u|=" << p.u_length << " rows=" << sys.rows
          << " conflicts: " << sys.ledger.conflicts().size() << "\n";
    } else if (cmd == verify) {
      manifest.input(compiled_file);
      params = {{"corrupt", corrupt}};
      auto sys = load_compiled(compiled_file);
      compiler::BuildOptions bo;
      bo.halting_index = sys.halting_index;
      bo.throw_on_conflict = false;
      if (!corrupt.empty()) {
        auto colon = corrupt.find(':');
        auto k = colon == std::string::npos ? std::nullopt : kind_by_name(corrupt.substr(0, colon));
        if (!k) fail(ErrorCode::Parse, "--corrupt expects kind:row, kind one of 1 0 e e' 1'");
        bo.corrupt = compiler::Corruption{*k, text::parse_u64(corrupt.substr(colon + 1), 1, colon + 2)};
      }
      auto br = compiler::build_u(sys.source, sys.params, bo);
      const auto& conflicts = br.ledger.conflicts();
      out << "rows: " << br.rows << "\nassigned: " << br.ledger.assigned_count()
          << "\nconflicts: " << conflicts.size() << "\n";
      for (std::size_t i = 0; i < conflicts.size() && i < 20; ++i)
        out << "  " << conflicts[i].describe() << "\n";
      auto track_rep = compiler::audit_tracks(sys);
      auto reader_rep = compiler::audit_readers(sys);
      auto shift_rep = compiler::audit_shifts(sys.params);
      auto sc = compiler::audit_schedule(sys.params);
      out << "track mismatches: " << track_rep.track_mismatches << "\nlength mismatches: " << track_rep.length_mismatches
          << "\nreader violations: " << reader_rep.violations << " of " << reader_rep.checked
          << "\nshift collisions: " << shift_rep.cross_m_collisions << " of " << shift_rep.shifts
          << "\nschedule mismatches: " << sc.mismatches + sc.regime_mismatches << " of " << sc.slots_checked
          << "\n";
      if (!conflicts.empty() || track_rep.track_mismatches || track_rep.length_mismatches || reader_rep.violations ||
          shift_rep.cross_m_collisions || sc.mismatches || sc.regime_mismatches)
        rc = 3;
    } else if (cmd == sim) {
      manifest.input(compiled_file);
      params = {{"input", input}, {"steps", steps}, {"engine", engine}, {"symbol_cap", cap}};
      auto sys = load_compiled(compiled_file);
      auto kind = engine == "object"   ? simulator::EngineKind::Object
                  : engine == "symbol" ? simulator::EngineKind::Symbol
                                       : simulator::EngineKind::Both;
      simulator::SimOptions so;
      so.symbol_step_cap = cap;
      auto res = simulator::simulate(sys, input, steps, kind, so);
      for (const auto& s : res.steps)
        out << "step " << s.step << "\tpayload " << (s.payload.empty() ? "e" : s.payload)
            << "\tobjects " << s.objects_total << "\ttag_steps " << s.tag_steps << "\n";
      out << "records: " << res.records.size() << (res.completed ? "\tcompleted" : "")
          << (res.halting_block ? "\thalting block" : "") << "\n";
      if (!trace_out.empty()) {
        std::string t;
        if (!res.records.empty()) {
          t = simulator::trace_header() + "\n";
          for (const auto& r : res.records) t += simulator::trace_line(r) + "\n";
        }
        text::write_file(trace_out, t);
        manifest.output(trace_out);
      }
    } else if (cmd == reduce) {
      manifest.input(compiled_file.empty() ? tag_file : compiled_file);
      auto shape = load_shape(compiled_file, tag_file);
      auto inst = pcp::reduce_to_pcp(shape);
      text::write_file(out_file, inst.to_text());
      manifest.output(out_file);
      params = {{"beta", shape.beta}};
      out << "pairs: " << inst.pairs.size() << "\tpair 1 bottom length " << inst.pairs[0].v.size()
          << "\n";
    } else if (cmd == match) {
      manifest.input(instance_file);
      manifest.input(compiled_file.empty() ? tag_file : compiled_file);
      params = {{"steps", steps}, {"probe", probe}};
      auto inst = pcp::Instance::parse(text::read_file(instance_file));
      auto shape = load_shape(compiled_file, tag_file);
      pcp::ReplayOptions ro;
      ro.probe_alternatives = probe;
      auto rep = pcp::match_replay(inst, shape, steps, ro);
      out << "tag steps: " << rep.tag_steps << "\tdecoded checks: " << rep.decoded_checks
          << "\tlength law violations: " << rep.length_law_violations << "\n";
      if (probe)
        out << "probes: " << rep.probes << "\tsurviving alternatives: " << rep.surviving_alternatives
            << "\tunexplained: " << rep.unexplained_alternatives << "\n";
      if (rep.outcome == pcp::ReplayOutcome::Match) {
        out << "MATCH at length " << rep.match_length << " with " << rep.indices.size() << " pairs\n";
      } else {
        out << "no match: " << pcp::outcome_name(rep.outcome) << "\n";
        rc = rep.outcome == pcp::ReplayOutcome::BudgetExhausted ? 5 : 4;
      }
      if (rep.length_law_violations || rep.unexplained_alternatives) rc = 3;
    } else if (cmd == solve) {
      manifest.input(instance_file);
      params = {{"depth", depth}, {"max_nodes", max_nodes}};
      auto inst = pcp::Instance::parse(text::read_file(instance_file));
      auto res = pcp::bfs_solve(inst, depth, max_nodes);
      if (res.status == pcp::SolveStatus::Found) {
        out << "solution:";
        for (auto i : res.indices) out << " " << i;
        out << "\n";
        if (!pcp::verify_solution(inst, res.indices)) fail(ErrorCode::Mismatch, "solution does not verify");
      } else {
        out << "none within depth " << depth << (res.exhausted ? " (search space exhausted)" : "") << "\n";
      }
      out << "nodes: " << res.nodes << "\n";
    } else if (cmd == bench) {
      manifest.input(compiled_file);
      params = {{"input", input}, {"steps", steps}};
      auto sys = load_compiled(compiled_file);
      auto rows = simulator::complexity_probe(sys, input, steps);
      std::string t = "step\tobjects_total\teps\teps_prime\tpayload\ttag_steps\n";
      std::vector<double> ts, obj, tag;
      for (const auto& r : rows) {
        t += std::to_string(r.step) + "\t" + std::to_string(r.objects_total) + "\t" +
             std::to_string(r.eps_count) + "\t" + std::to_string(r.eps_prime_count) + "\t" +
             std::to_string(r.payload_count) + "\t" + std::to_string(r.tag_steps) + "\n";
        ts.push_back(static_cast<double>(r.step));
        obj.push_back(static_cast<double>(r.objects_total));
        tag.push_back(static_cast<double>(r.tag_steps));
      }
      text::write_file(out_file, t);
      manifest.output(out_file);
      if (rows.size() >= 4) {
        auto f1 = simulator::fit_polynomial(ts, obj, 1);
        auto f2 = simulator::fit_polynomial(ts, tag, 2);
        out << "objects ~ linear r2=" << f1.r2 << "\ntag steps ~ quadratic r2=" << f2.r2 << "\n";
      }
    }
  } catch (const Error& e) {
    std::cout << out.str();
    std::cerr << "error: " << e.what() << "\n";
    rc = exit_code_for(e.code());
    manifest.set_exit_code(rc);
    manifest.emit(manifest_path);
    return rc;
  }
  std::cout << out.str();
  manifest.set_exit_code(rc);
  manifest.emit(manifest_path);
  return rc;
}
