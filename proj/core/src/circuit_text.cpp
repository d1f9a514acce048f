#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "qubitizer/circuit.hpp"
#include "qubitizer/errors.hpp"

namespace qubitizer {

namespace {

std::string format_angle(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string gate_line(const Gate& g) {
  std::string line(gate_name(g.kind));
  if (has_angle(g.kind)) line += "(" + format_angle(g.theta) + ")";
  line += ' ';
  for (std::size_t i = 0; i < g.controls.size(); ++i) {
    if (i) line += ',';
    line += g.controls[i].positive ? '+' : '-';
    line += 'q' + std::to_string(g.controls[i].qubit);
  }
  line += ' ';
  for (std::size_t i = 0; i < g.targets.size(); ++i) {
    if (i) line += ',';
    line += 'q' + std::to_string(g.targets[i]);
  }
  return line + ";";
}

std::string qubit_list(const std::vector<std::size_t>& qubits) {
  std::string out;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (i) out += ',';
    out += 'q' + std::to_string(qubits[i]);
  }
  return out;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": " + what);
}

std::size_t parse_index(const std::string& tok, std::size_t line_no) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char ch) {
        return std::isdigit(static_cast<unsigned char>(ch));
      })) {
    parse_fail(line_no, "bad index '" + tok + "'");
  }
  return std::stoul(tok);
}

std::size_t parse_qubit(const std::string& tok, std::size_t line_no) {
  if (tok.size() < 2 || tok[0] != 'q') parse_fail(line_no, "bad qubit '" + tok + "'");
  return parse_index(tok.substr(1), line_no);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

GateKind parse_kind(const std::string& name, std::size_t line_no) {
  for (GateKind k : {GateKind::X, GateKind::Y, GateKind::Z, GateKind::H, GateKind::S,
                     GateKind::P, GateKind::RY, GateKind::RZ, GateKind::SWAP,
                     GateKind::GlobalPhase}) {
    if (gate_name(k) == name) return k;
  }
  parse_fail(line_no, "unknown gate '" + name + "'");
}

}  // namespace

std::string export_text(const Circuit& c, bool keep_macros) {
  std::string out = "qubits " + std::to_string(c.num_qubits()) + ";\n";
  for (const auto& [name, reg] : c.registers()) {
    out += "register " + name + " " + std::to_string(reg.start) + " " +
           std::to_string(reg.size) + ";\n";
  }
  for (const auto& op : c.ops()) {
    if (const auto* g = std::get_if<Gate>(&op)) {
      out += gate_line(*g) + "\n";
      continue;
    }
    const auto& m = std::get<MacroGate>(op);
    Circuit single(c.num_qubits());
    single.add(m);
    const Circuit flat = expand_macros(single);
    if (keep_macros) {
      out += "# begin " + std::string(macro_name(m.kind)) + " " + qubit_list(m.qubits);
      if (m.kind == MacroKind::AdderQFT || m.kind == MacroKind::AdderLadder) {
        out += " shift " + std::to_string(m.shift);
      }
      out += "\n";
    }
    for (const auto& inner : flat.ops()) out += gate_line(std::get<Gate>(inner)) + "\n";
    if (keep_macros) out += "# end " + std::string(macro_name(m.kind)) + "\n";
  }
  return out;
}

Circuit parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  bool have_width = false;
  Circuit c;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    if (tok.back() == ";") {
      tok.pop_back();
    } else if (tok.back().back() == ';') {
      tok.back().pop_back();
    } else {
      parse_fail(line_no, "missing ';'");
    }
    if (tok.empty()) parse_fail(line_no, "empty statement");

    if (tok[0] == "qubits") {
      if (have_width || tok.size() != 2) parse_fail(line_no, "bad qubits declaration");
      c = Circuit(parse_index(tok[1], line_no));
      have_width = true;
      continue;
    }
    if (!have_width) parse_fail(line_no, "statement before 'qubits'");
    if (tok[0] == "register") {
      if (tok.size() != 4) parse_fail(line_no, "bad register declaration");
      c.label(tok[1], parse_index(tok[2], line_no), parse_index(tok[3], line_no));
      continue;
    }

    Gate g;
    std::string head = tok[0];
    if (const auto open = head.find('('); open != std::string::npos) {
      if (head.back() != ')') parse_fail(line_no, "unterminated angle");
      const std::string angle = head.substr(open + 1, head.size() - open - 2);
      char* end = nullptr;
      g.theta = std::strtod(angle.c_str(), &end);
      if (angle.empty() || end != angle.c_str() + angle.size()) {
        parse_fail(line_no, "bad angle '" + angle + "'");
      }
      head = head.substr(0, open);
    }
    g.kind = parse_kind(head, line_no);
    if (has_angle(g.kind) != (tok[0].find('(') != std::string::npos)) {
      parse_fail(line_no, "angle presence does not match gate kind");
    }
    for (std::size_t i = 1; i < tok.size(); ++i) {
      for (const auto& item : split(tok[i], ',')) {
        if (item.empty()) parse_fail(line_no, "empty list item");
        if (item[0] == '+' || item[0] == '-') {
          g.controls.push_back(Control{parse_qubit(item.substr(1), line_no), item[0] == '+'});
        } else {
          g.targets.push_back(parse_qubit(item, line_no));
        }
      }
    }
    try {
      c.add(std::move(g));
    } catch (const Error& e) {
      parse_fail(line_no, e.what());
    }
  }
  if (!have_width) throw Error(ErrorCode::kParseError, "missing 'qubits' declaration");
  return c;
}

}  // namespace qubitizer
