#include "jobs.hpp"

#include <bit>
#include <cfloat>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "qubitizer/bounds.hpp"
#include "qubitizer/circuit.hpp"
#include "qubitizer/constants.hpp"
#include "qubitizer/errors.hpp"
#include "qubitizer/spec_io.hpp"
#include "qubitizer/structured.hpp"
#include "qubitizer/synth.hpp"

namespace qubitizer::cli {

using nlohmann::json;

namespace {

const char* query_name(Query q) {
  switch (q) {
    case Query::HS:
      return "hs";
    case Query::BE:
      return "be";
    case Query::Measure:
      return "measure";
    case Query::Walk:
      return "walk";
  }
  return "?";
}

StructuredSpec load_spec(const JobConfig& cfg) {
  if (cfg.spec_path.empty()) throw Error(ErrorCode::kInvalidSpec, "--spec is required");
  StructuredSpec spec = spec_from_json(read_json_file(cfg.spec_path));
  if (!cfg.variant.empty()) spec.variant = cfg.variant;
  validate(spec);
  return spec;
}

double tolerance(const JobConfig& cfg, double fallback) {
  if (!cfg.tol) return fallback;
  if (!(*cfg.tol >= DBL_EPSILON)) {
    throw Error(ErrorCode::kOutOfRange, "tolerance below machine epsilon");
  }
  return *cfg.tol;
}

json resources_json(const Circuit& c) {
  const ResourceReport r = count_resources(c);
  json j;
  j["qubits"] = c.num_qubits();
  j["total_gates"] = r.total_gates;
  j["arbitrary_rotations"] = r.arbitrary_rotations;
  j["gates"] = r.gate_histogram;
  json ctrl = json::object();
  for (const auto& [width, count] : r.control_histogram) ctrl[std::to_string(width)] = count;
  j["controls"] = ctrl;
  j["macro_calls"] = r.macro_calls;
  return j;
}

json terms_json(const Decomposition& d) {
  json terms = json::array();
  if (d.lch) {
    const auto weighted = weighted_terms(*d.lch);
    for (std::size_t i = 0; i < d.lch->size(); ++i) {
      const LchTerm& t = d.lch->terms()[i];
      terms.push_back({{"term", to_text(t.string)}, {"alpha", weighted[i].alpha}, {"framed", !t.frame.empty()}});
    }
  } else if (d.lcu) {
    for (const LcuTerm& t : d.lcu->terms) {
      terms.push_back({{"coefficient", {t.coefficient.real(), t.coefficient.imag()}},
                       {"gates", count_resources(t.unitary).total_gates}});
    }
  }
  return terms;
}

Lcu lcu_of(const Decomposition& d) {
  if (d.lcu) return *d.lcu;
  if (d.lch) return lch_to_lcu(*d.lch);
  throw Error(ErrorCode::kInvalidSpec, "no decomposition to block-encode");
}

const Lch& lch_of(const Decomposition& d, const char* what) {
  if (!d.lch) throw Error(ErrorCode::kNotQubitized, std::string(what) + " needs a Hermitian decomposition");
  return *d.lch;
}

Circuit hs_circuit(const StructuredSpec& spec, const Decomposition& d, const JobConfig& cfg) {
  if (spec.kind == StructuredKind::DensityMatrix) return exp_projector(StateVector(spec.psi), cfg.t);
  return trotter(lch_of(d, "hs"), TrotterPlan{cfg.t, cfg.steps, cfg.order, {}});
}

std::vector<MeasurementProgram> measurement_programs(const Lch& lch) {
  std::vector<MeasurementProgram> progs;
  for (const LchTerm& t : lch.terms()) {
    progs.push_back(measurement_program(reducer_from_term(t), MeasureMode::SingleQubit));
  }
  return progs;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kParseError, "cannot write " + path);
  out << text;
}

// "dir/name.qbc" -> "dir/name_3.qbc"
std::string indexed_path(const std::string& path, std::size_t k) {
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + "_" + std::to_string(k);
  }
  return path.substr(0, dot) + "_" + std::to_string(k) + path.substr(dot);
}

json circuit_entry(const Circuit& c, const std::string& path) {
  const std::string text = export_text(c);
  json j = resources_json(c);
  j["round_trip"] = export_text(parse_text(text)) == text;
  if (!path.empty()) {
    write_text(path, text);
    j["file"] = path;
  }
  return j;
}

// Entries (y*m, x*m) of a block acting on |x>|0>: the value register action.
ComplexMatrix value_block(const ComplexMatrix& u, std::size_t m) {
  ComplexMatrix out(m, m);
  for (std::size_t y = 0; y < m; ++y) {
    for (std::size_t x = 0; x < m; ++x) out(y, x) = u(y * m, x * m);
  }
  return out;
}

struct CheckList {
  json entries = json::array();
  bool ok = true;
  double worst_excess = -INFINITY;
  json worst;

  void add(const std::string& name, double deviation, double limit) {
    const bool pass = deviation <= limit;
    json e{{"name", name}, {"deviation", deviation}, {"tolerance", limit}, {"pass", pass}};
    ok = ok && pass;
    if (deviation - limit > worst_excess) {
      worst_excess = deviation - limit;
      worst = e;
    }
    entries.push_back(std::move(e));
  }
};

std::size_t predicted_lch(const StructuredSpec& s, bool& known) {
  known = true;
  const std::size_t n = s.n;
  switch (s.kind) {
    case StructuredKind::ToeplitzDiag:
      return fusc(n);
    case StructuredKind::CirculantAdder: {
      const std::size_t w = std::bit_width(n) - 1;
      return fusc(n) + fusc((std::size_t{2} << w) - n);
    }
    case StructuredKind::Circulant:
      if (s.variant.empty() || s.variant == "recursive") return fusc(n) + fusc(s.m - n);
      break;
    default:
      break;
  }
  known = false;
  return 0;
}

std::size_t predicted_lcu(const StructuredSpec& s, bool& known) {
  if (s.kind == StructuredKind::Circulant && s.variant == "lcu") {
    known = true;
    return 2;
  }
  if (s.kind == StructuredKind::AntiCirculant && s.variant == "anti_adder") {
    known = true;
    return 1;
  }
  return 2 * predicted_lch(s, known);
}

json count_row(const StructuredSpec& s, bool& mismatch) {
  json row{{"kind", std::string(to_string(s.kind))}, {"n", s.n}, {"m", s.m}};
  const Decomposition d = build(s);
  const auto one = [&](const char* key, Representation rep, bool have, std::size_t want, bool known) {
    if (!have) return;
    const std::size_t got = summand_count(s, rep);
    json c{{"measured", got}};
    if (known) {
      c["predicted"] = want;
      c["match"] = got == want;
      if (got != want) mismatch = true;
    }
    row[key] = c;
  };
  bool known_lch = false, known_lcu = false;
  const std::size_t want_lch = predicted_lch(s, known_lch);
  const std::size_t want_lcu = predicted_lcu(s, known_lcu);
  one("lch", Representation::LCH, d.lch.has_value(), want_lch, known_lch);
  one("lcu", Representation::LCU, d.lch || d.lcu, want_lcu, known_lcu);
  return row;
}

json adder_row(std::size_t n, std::size_t m, bool& mismatch) {
  const std::size_t width = log2_exact(m);
  const ResourceReport r = count_resources(adder_qft(n, m));
  // phase gates between the two transforms, not the ones inside them
  std::size_t phases = 0;
  const auto level = r.level_histogram.find("adder_qft");
  if (level != r.level_histogram.end()) {
    const auto it = level->second.find(std::string(gate_name(GateKind::P)));
    if (it != level->second.end()) phases = it->second;
  }
  if (n != 0 && phases != width) mismatch = true;
  return {{"n", n}, {"m", m}, {"phase_gates", phases}, {"predicted", width}, {"match", n == 0 || phases == width}};
}

}  // namespace

Query parse_query(const std::string& name) {
  if (name == "hs") return Query::HS;
  if (name == "be") return Query::BE;
  if (name == "measure") return Query::Measure;
  if (name == "walk") return Query::Walk;
  throw Error(ErrorCode::kInvalidSpec, "unknown query " + name);
}

std::vector<std::vector<std::size_t>> parse_groups(const std::string& text) {
  std::vector<std::vector<std::size_t>> groups;
  std::stringstream all(text);
  std::string group;
  while (std::getline(all, group, ';')) {
    std::vector<std::size_t> members;
    std::stringstream g(group);
    std::string item;
    while (std::getline(g, item, ',')) {
      try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        members.push_back(v);
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::kInvalidSpec, "bad group member '" + item + "'");
      }
    }
    groups.push_back(std::move(members));
  }
  return groups;
}

JobResult cmd_build(const JobConfig& cfg) {
  const StructuredSpec spec = load_spec(cfg);
  const Decomposition d = build(spec);
  json rep;
  rep["spec"] = spec_to_json(spec);
  rep["query"] = query_name(cfg.query);
  rep["num_qubits"] = d.num_qubits;
  rep["terms"] = terms_json(d);
  rep["notes"] = d.notes;
  switch (cfg.query) {
    case Query::HS:
      rep["t"] = cfg.t;
      rep["steps"] = cfg.steps;
      rep["order"] = cfg.order;
      rep["circuit"] = circuit_entry(hs_circuit(spec, d, cfg), cfg.out);
      break;
    case Query::BE:
    case Query::Walk: {
      const BlockEncoding be = block_encode(lcu_of(d));
      rep["subnormalization"] = be.subnormalization;
      rep["index_qubits"] = be.index_qubits;
      const Circuit c = cfg.query == Query::BE ? be.circuit : qubitize(be);
      rep["circuit"] = circuit_entry(c, cfg.out);
      break;
    }
    case Query::Measure: {
      const auto progs = measurement_programs(lch_of(d, "measure"));
      json list = json::array();
      for (std::size_t k = 0; k < progs.size(); ++k) {
        json e = circuit_entry(progs[k].circuit, cfg.out.empty() ? "" : indexed_path(cfg.out, k));
        e["reduct_qubit"] = progs[k].reduct_qubit;
        e["projector"] = progs[k].projector;
        list.push_back(std::move(e));
      }
      rep["circuits"] = list;
      break;
    }
  }
  return {0, rep};
}

JobResult cmd_verify(const JobConfig& cfg) {
  const StructuredSpec spec = load_spec(cfg);
  const Decomposition d = build(spec);
  const ComplexMatrix target = dense_oracle(spec);
  std::mt19937_64 rng(cfg.seed);
  CheckList checks;
  json rep;
  rep["spec"] = spec_to_json(spec);
  rep["query"] = query_name(cfg.query);

  const auto budget = [](const Circuit& c) {
    if (c.num_qubits() > kVerifyQubitBudget) {
      throw Error(ErrorCode::kTooManyQubits, std::to_string(c.num_qubits()) + " qubits exceed the verify budget of " +
                                                 std::to_string(kVerifyQubitBudget));
    }
  };

  const double tol_alg = tolerance(cfg, tol::kAlgebraic);
  const double tol_unit = tolerance(cfg, tol::kUnitary);
  if (d.lch) checks.add("decomposition", max_abs_diff(materialize(*d.lch), target), tol_alg);
  if (d.lcu && spec.kind != StructuredKind::PermutationTable) {
    checks.add("decomposition_lcu", max_abs_diff(materialize(*d.lcu), target), tol_alg);
  }

  switch (cfg.query) {
    case Query::HS: {
      const Circuit c = hs_circuit(spec, d, cfg);
      budget(c);
      const double err = spectral_norm(lower(c) - expm_hermitian(target, cfg.t));
      double allowance = 0.0;
      if (d.lch && d.lch->size() >= 2) {
        const TrotterBound b = trotter_bound(*d.lch);
        allowance = cfg.t * cfg.t / static_cast<double>(cfg.steps) * b.bound;
        rep["trotter_bound"] = to_json(b);
      }
      checks.add("hs", err, allowance + tol_unit);
      if (d.lch) {
        for (std::size_t k = 0; k < d.lch->size(); ++k) {
          Lch single(d.lch->num_qubits());
          single.add(d.lch->terms()[k].string, d.lch->terms()[k].frame);
          const ComplexMatrix want = expm_hermitian(materialize(single), cfg.t);
          const Circuit ck = trotter(single, TrotterPlan{cfg.t, 1, 1, {}});
          checks.add("hs_term_" + std::to_string(k), max_abs_diff(lower(ck), want), tol_unit);
        }
      }
      break;
    }
    case Query::BE:
    case Query::Walk: {
      const BlockEncoding be = block_encode(lcu_of(d));
      budget(be.circuit);
      rep["subnormalization"] = be.subnormalization;
      ComplexMatrix blk = encoded_block(be) * cplx(be.subnormalization);
      if (spec.kind == StructuredKind::PermutationTable) blk = value_block(blk, spec.m);
      checks.add("block", max_abs_diff(blk, target), tol_unit);
      if (cfg.query == Query::Walk) {
        checks.add("reflection", reflection_defect(be.circuit), tol_unit);
        const Circuit w = qubitize(be);
        double worst = 0.0;
        for (const WalkCheck& wc : walk_eigenphase_check(be, w)) worst = std::max(worst, wc.deviation);
        checks.add("walk_eigenphase", worst, tolerance(cfg, tol::kEigenphase));
      }
      break;
    }
    case Query::Measure: {
      const Lch& lch = lch_of(d, "measure");
      const auto progs = measurement_programs(lch);
      for (const auto& p : progs) budget(p.circuit);
      const auto weighted = weighted_terms(lch);
      const StateVector psi = random_state(target.rows(), rng);
      double measured = 0.0;
      for (std::size_t k = 0; k < progs.size(); ++k) measured += weighted[k].alpha * program_moments(progs[k], psi).mean;
      const double exact = inner(psi, apply(target, psi)).real();
      rep["expectation"] = {{"measured", measured}, {"exact", exact}};
      checks.add("measurement", std::abs(measured - exact), tol_unit);
      break;
    }
  }
  rep["checks"] = checks.entries;
  rep["passed"] = checks.ok;
  if (!checks.ok) rep["worst"] = checks.worst;
  return {checks.ok ? 0 : 1, rep};
}

JobResult cmd_count(const JobConfig& cfg) {
  json rows = json::array();
  json adders = json::array();
  bool mismatch = false;
  if (cfg.sweep > 0) {
    StructuredSpec base;
    if (!cfg.spec_path.empty()) base = load_spec(cfg);
    if (!cfg.variant.empty()) base.variant = cfg.variant;
    std::size_t m = base.m;
    if (m <= cfg.sweep) m = std::bit_ceil(cfg.sweep + 1);
    for (std::size_t n = 1; n <= cfg.sweep; ++n) {
      StructuredSpec s = base;
      s.m = m;
      s.n = n;
      if (s.kind == StructuredKind::CirculantAdder) s.m = std::max(m, std::size_t{4} << (std::bit_width(n) - 1));
      rows.push_back(count_row(s, mismatch));
    }
  } else {
    const StructuredSpec s = load_spec(cfg);
    rows.push_back(count_row(s, mismatch));
    if ((s.kind == StructuredKind::Circulant || s.kind == StructuredKind::CirculantAdder) &&
        std::has_single_bit(s.m) && s.n < s.m) {
      adders.push_back(adder_row(s.n, s.m, mismatch));
    }
  }
  json rep{{"rows", rows}, {"mismatch", mismatch}};
  if (!adders.empty()) rep["adders"] = adders;
  if (!cfg.out.empty()) {
    std::ostringstream csv;
    csv << "kind,n,m,lch,lch_predicted,lcu,lcu_predicted,match\n";
    for (const json& r : rows) {
      const auto cell = [&](const char* rep_key, const char* key) -> std::string {
        if (!r.contains(rep_key) || !r[rep_key].contains(key)) return "";
        return r[rep_key][key].dump();
      };
      bool match = true;
      for (const char* k : {"lch", "lcu"}) {
        if (r.contains(k) && r[k].contains("match")) match = match && r[k]["match"].get<bool>();
      }
      csv << r["kind"].get<std::string>() << ',' << r["n"] << ',' << r["m"] << ',' << cell("lch", "measured") << ','
          << cell("lch", "predicted") << ',' << cell("lcu", "measured") << ',' << cell("lcu", "predicted") << ','
          << (match ? "yes" : "no") << '\n';
    }
    write_text(cfg.out, csv.str());
  }
  return {mismatch ? 1 : 0, rep};
}

JobResult cmd_bounds(const JobConfig& cfg) {
  const StructuredSpec spec = load_spec(cfg);
  const Decomposition d = build(spec);
  const Lch& lch = lch_of(d, "bounds");
  std::mt19937_64 rng(cfg.seed);
  const StateVector psi = random_state(std::size_t{1} << lch.num_qubits(), rng);
  BoundsReport br = variance_bound(lch, ShotPlan{cfg.shots, cfg.groups}, psi);
  bool ok = true;
  if (cfg.shots > 0) {
    const auto progs = measurement_programs(lch);
    for (std::size_t k = 0; k < progs.size(); ++k) {
      MonteCarloResult r = monte_carlo_check(progs[k], psi, cfg.shots, cfg.seed + k);
      ok = ok && r.mean_ok && r.variance_ok;
      br.monte_carlo.push_back(std::move(r));
    }
  }
  json rep = to_json(br);
  rep["spec"] = spec_to_json(spec);
  rep["seed"] = cfg.seed;
  if (cfg.shots > 0) rep["monte_carlo_ok"] = ok;
  return {ok ? 0 : 1, rep};
}

}  // namespace qubitizer::cli
