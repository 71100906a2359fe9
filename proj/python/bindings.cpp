#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tagpcp/compiler.hpp"
#include "tagpcp/cyclic.hpp"
#include "tagpcp/pcp.hpp"
#include "tagpcp/simulator.hpp"
#include "tagpcp/tagcore.hpp"

namespace py = pybind11;
using namespace tagpcp;

namespace {

using PairList = std::vector<std::pair<std::string, std::string>>;

pcp::Instance instance_from(const PairList& pairs) {
  pcp::Instance inst;
  for (const auto& [r, v] : pairs) inst.pairs.push_back({pcp::Word::parse(r.empty() ? "()" : r),
                                                         pcp::Word::parse(v.empty() ? "()" : v)});
  return inst;
}

PairList pairs_of(const pcp::Instance& inst) {
  PairList out;
  for (const auto& p : inst.pairs) out.emplace_back(p.r.expand(), p.v.expand());
  return out;
}

py::dict params_dict(const compiler::Params& p) {
  py::dict d;
  d["p"] = p.p;
  d["q"] = p.q;
  d["x"] = p.x;
  d["r"] = p.r;
  d["z1"] = p.z1;
  d["z2"] = p.z2;
  d["beta"] = p.beta;
  d["u_length"] = p.u_length;
  d["program_length"] = p.program_length;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "tag system compiler, simulator and PCP reduction";
  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  m.def(
      "tag_run",
      [](std::uint64_t beta, const std::vector<std::pair<char, std::string>>& rules,
         const std::string& word, std::uint64_t steps) {
        auto sys = tagcore::TagSystem::from_rules(beta, rules);
        auto res = tagcore::tag_run(sys, tagcore::Dataword::from_text(word, sys.alphabet()), steps);
        return py::make_tuple(res.word.to_text(sys.alphabet()), res.steps, res.halted);
      },
      py::arg("beta"), py::arg("rules"), py::arg("word"), py::arg("steps"),
      "Run a tag system; returns (dataword, steps, halted).");

  m.def(
      "cyclic_trace",
      [](const std::vector<std::string>& program, const std::string& word, std::uint64_t steps) {
        cyclic::check_binary(word, "input");
        cyclic::Config c{cyclic::Program(program), 0, word};
        std::vector<std::pair<std::size_t, std::string>> out{{c.marker, c.dataword}};
        for (std::uint64_t t = 0; t < steps && cyclic::step_in_place(c); ++t)
          out.emplace_back(c.marker, c.dataword);
        return out;
      },
      py::arg("program"), py::arg("word"), py::arg("steps"),
      "Configurations (marker, dataword) of a cyclic tag system run.");

  py::class_<compiler::CompiledSystem>(m, "CompiledSystem")
      .def_property_readonly("params", [](const compiler::CompiledSystem& s) { return params_dict(s.params); })
      .def_property_readonly("pcp_ready",
                             [](const compiler::CompiledSystem& s) { return s.variant == compiler::Variant::PcpReady; })
      .def_property_readonly("halting_index", [](const compiler::CompiledSystem& s) { return s.halting_index; })
      .def_property_readonly("conflicts", [](const compiler::CompiledSystem& s) { return s.ledger.conflicts().size(); })
      .def("serialize", [](const compiler::CompiledSystem& s) { return compiler::serialize(s); })
      .def("audit", [](const compiler::CompiledSystem& s) {
        py::dict d;
        auto track_rep = compiler::audit_tracks(s);
        auto reader_rep = compiler::audit_readers(s);
        auto shift_rep = compiler::audit_shifts(s.params);
        d["conflicts"] = track_rep.conflicts;
        d["track_mismatches"] = track_rep.track_mismatches;
        d["length_mismatches"] = track_rep.length_mismatches;
        d["reader_violations"] = reader_rep.violations;
        d["shifts"] = shift_rep.shifts;
        d["shift_collisions"] = shift_rep.cross_m_collisions;
        return d;
      });

  m.def(
      "compile",
      [](const std::vector<std::string>& program, std::optional<std::uint64_t> x,
         std::optional<std::uint64_t> halting_index, std::optional<std::string> pcp_input) {
        py::gil_scoped_release release;
        return compiler::compile(cyclic::Program(program), {x, halting_index, pcp_input});
      },
      py::arg("program"), py::arg("x") = py::none(), py::arg("halting_index") = py::none(),
      py::arg("pcp_input") = py::none());
  m.def("load_compiled", [](const std::string& text) { return compiler::deserialize(text); });

  m.def(
      "simulate",
      [](const compiler::CompiledSystem& s, const std::string& word, std::uint64_t steps,
         const std::string& engine) {
        auto kind = engine == "object"   ? simulator::EngineKind::Object
                    : engine == "symbol" ? simulator::EngineKind::Symbol
                    : engine == "both"   ? simulator::EngineKind::Both
                                         : throw Error(ErrorCode::InvalidArgument, "unknown engine " + engine);
        simulator::SimResult res;
        {
          py::gil_scoped_release release;
          res = simulator::simulate(s, word, steps, kind);
        }
        py::list out;
        for (const auto& st : res.steps) {
          py::dict d;
          d["step"] = st.step;
          d["payload"] = st.payload;
          d["objects"] = st.objects_total;
          d["tag_steps"] = st.tag_steps;
          out.append(d);
        }
        return py::make_tuple(out, res.records.size());
      },
      py::arg("system"), py::arg("word"), py::arg("steps"), py::arg("engine") = "both",
      "Simulated cyclic steps and the number of consumed objects.");

  m.def(
      "reduce_to_pcp",
      [](std::uint64_t beta, const std::string& body) {
        return pairs_of(pcp::reduce_to_pcp(pcp::RuleShape::from_body(beta, body)));
      },
      py::arg("beta"), py::arg("body"),
      "Four-pair instance for the tag system b -> b, c -> body b.");

  m.def(
      "match_replay",
      [](std::uint64_t beta, const std::string& body, std::uint64_t steps) {
        auto shape = pcp::RuleShape::from_body(beta, body);
        auto rep = pcp::match_replay(pcp::reduce_to_pcp(shape), shape, steps);
        py::dict d;
        d["outcome"] = pcp::outcome_name(rep.outcome);
        d["tag_steps"] = rep.tag_steps;
        d["indices"] = rep.indices;
        d["match_length"] = rep.match_length;
        d["dataword_lengths"] = rep.dataword_lengths;
        return d;
      },
      py::arg("beta"), py::arg("body"), py::arg("steps"));

  m.def(
      "bfs_solve",
      [](const PairList& pairs, std::uint64_t depth) -> std::optional<std::vector<std::size_t>> {
        auto res = pcp::bfs_solve(instance_from(pairs), depth);
        if (res.status != pcp::SolveStatus::Found) return std::nullopt;
        return res.indices;
      },
      py::arg("pairs"), py::arg("depth"), "Shortest solution within depth, or None.");

  m.def(
      "verify_solution",
      [](const PairList& pairs, const std::vector<std::size_t>& indices) {
        return pcp::verify_solution(instance_from(pairs), indices);
      },
      py::arg("pairs"), py::arg("indices"));
}
