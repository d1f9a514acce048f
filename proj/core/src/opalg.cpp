#include "qubitizer/opalg.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "qubitizer/constants.hpp"
#include "qubitizer/errors.hpp"

namespace qubitizer {

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s, std::string_view context) {
  const std::string buf(trim(s));
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size()) {
    throw Error(ErrorCode::kParseError, "bad number '" + buf + "' in '" +
                                            std::string(context) + "'");
  }
  return v;
}

Factor parse_factor(std::string_view tok, std::string_view context) {
  tok = trim(tok);
  if (tok == "I") return Factor::I;
  if (tok == "X") return Factor::X;
  if (tok == "Y") return Factor::Y;
  if (tok == "Z") return Factor::Z;
  if (tok == "n") return Factor::N;
  if (tok == "m") return Factor::M;
  if (tok == "s") return Factor::Sigma;
  if (tok == "sd") return Factor::SigmaDag;
  throw Error(ErrorCode::kParseError,
              "unknown factor '" + std::string(tok) + "' in '" + std::string(context) + "'");
}

bool near_any(double x, std::initializer_list<double> targets, double tol, double& defect) {
  double best = 1e300;
  for (double t : targets) best = std::min(best, std::abs(x - t));
  defect = std::max(defect, best);
  return best <= tol;
}

}  // namespace

ComplexMatrix factor_matrix(Factor f) {
  const cplx i{0.0, 1.0};
  switch (f) {
    case Factor::I: return ComplexMatrix::from_rows({{1, 0}, {0, 1}});
    case Factor::X: return ComplexMatrix::from_rows({{0, 1}, {1, 0}});
    case Factor::Y: return ComplexMatrix::from_rows({{0, -i}, {i, 0}});
    case Factor::Z: return ComplexMatrix::from_rows({{1, 0}, {0, -1}});
    case Factor::N: return ComplexMatrix::from_rows({{0, 0}, {0, 1}});
    case Factor::M: return ComplexMatrix::from_rows({{1, 0}, {0, 0}});
    case Factor::Sigma: return ComplexMatrix::from_rows({{0, 0}, {1, 0}});
    case Factor::SigmaDag: return ComplexMatrix::from_rows({{0, 1}, {0, 0}});
  }
  return {};
}

Factor factor_dagger(Factor f) {
  if (f == Factor::Sigma) return Factor::SigmaDag;
  if (f == Factor::SigmaDag) return Factor::Sigma;
  return f;
}

std::string_view factor_token(Factor f) {
  switch (f) {
    case Factor::I: return "I";
    case Factor::X: return "X";
    case Factor::Y: return "Y";
    case Factor::Z: return "Z";
    case Factor::N: return "n";
    case Factor::M: return "m";
    case Factor::Sigma: return "s";
    case Factor::SigmaDag: return "sd";
  }
  return "?";
}

bool is_pauli(Factor f) { return f == Factor::X || f == Factor::Y || f == Factor::Z; }
bool is_transition(Factor f) { return f == Factor::Sigma || f == Factor::SigmaDag; }
bool is_flag(Factor f) { return f == Factor::N || f == Factor::M; }

bool OperatorString::has_transition() const {
  return std::any_of(factors.begin(), factors.end(), is_transition);
}

ComplexMatrix materialize(const OperatorString& s) {
  if (s.factors.empty()) throw Error(ErrorCode::kEmptyString, "no factors");
  ComplexMatrix out = factor_matrix(s.factors.front());
  for (std::size_t k = 1; k < s.factors.size(); ++k) {
    out = kron(out, factor_matrix(s.factors[k]));
  }
  out *= s.coefficient;
  if (s.plus_hc) out += out.adjoint();
  return out;
}

double term_weight(const OperatorString& s) {
  if (s.plus_hc) return s.has_transition() ? std::abs(s.coefficient) : 2.0 * s.coefficient.real();
  return s.coefficient.real();
}

ComplexMatrix unit_term(const OperatorString& s) {
  const double alpha = term_weight(s);
  if (std::abs(alpha) < tol::kAlgebraic) {
    throw Error(ErrorCode::kNotQubitized, "zero-weight term " + to_text(s));
  }
  return materialize(s) * cplx(1.0 / alpha);
}

OperatorString string_dagger(const OperatorString& s) {
  OperatorString out = s;
  std::transform(s.factors.begin(), s.factors.end(), out.factors.begin(), factor_dagger);
  out.coefficient = std::conj(s.coefficient);
  return out;
}

std::string to_text(const OperatorString& s) {
  std::string out;
  if (s.coefficient.imag() == 0.0) {
    out = format_double(s.coefficient.real());
  } else {
    out = "(" + format_double(s.coefficient.real()) + "," +
          format_double(s.coefficient.imag()) + ")";
  }
  out += " * ";
  for (std::size_t k = 0; k < s.factors.size(); ++k) {
    if (k) out += '.';
    out += factor_token(s.factors[k]);
  }
  if (s.plus_hc) out += " + h.c.";
  return out;
}

OperatorString parse_operator_string(std::string_view text) {
  OperatorString out;
  std::string_view rest = trim(text);
  const auto hc = rest.rfind("+ h.c.");
  if (hc != std::string_view::npos && trim(rest.substr(hc + 6)).empty()) {
    out.plus_hc = true;
    rest = trim(rest.substr(0, hc));
  }
  const auto star = rest.find('*');
  std::string_view body = rest;
  if (star != std::string_view::npos) {
    std::string_view coef = trim(rest.substr(0, star));
    body = trim(rest.substr(star + 1));
    if (!coef.empty() && coef.front() == '(') {
      if (coef.back() != ')') throw Error(ErrorCode::kParseError, std::string(text));
      coef = coef.substr(1, coef.size() - 2);
      const auto comma = coef.find(',');
      if (comma == std::string_view::npos) throw Error(ErrorCode::kParseError, std::string(text));
      out.coefficient = cplx(parse_double(coef.substr(0, comma), text),
                             parse_double(coef.substr(comma + 1), text));
    } else {
      out.coefficient = parse_double(coef, text);
    }
  }
  while (!body.empty()) {
    const auto dot = body.find('.');
    out.factors.push_back(parse_factor(body.substr(0, dot), text));
    if (dot == std::string_view::npos) break;
    body = body.substr(dot + 1);
  }
  if (out.factors.empty()) throw Error(ErrorCode::kEmptyString, std::string(text));
  return out;
}

std::string_view to_string(SpectralKind k) {
  switch (k) {
    case SpectralKind::Qubitized: return "qubitized";
    case SpectralKind::Projector: return "projector";
    case SpectralKind::Unitary: return "unitary";
    case SpectralKind::Other: return "other";
  }
  return "?";
}

SpectralClass classify(const ComplexMatrix& h) {
  SpectralClass out;
  if (!h.square()) return out;
  if (hermiticity_defect(h) <= tol::kSpectral) {
    const EigenSystem es = hermitian_eig(0.5 * (h + h.adjoint()));
    out.eigenvalues = es.eigenvalues;
    double q_defect = 0.0;
    bool qubitized = std::abs(h.trace()) <= tol::kSpectral;
    bool nonzero = false;
    for (double e : es.eigenvalues) {
      qubitized = near_any(e, {-1.0, 0.0, 1.0}, tol::kSpectral, q_defect) && qubitized;
      nonzero = nonzero || std::abs(e) > tol::kSpectral;
    }
    if (qubitized && nonzero) {
      out.kind = SpectralKind::Qubitized;
      out.snap_defect = q_defect;
      return out;
    }
    double p_defect = 0.0;
    bool projector = true;
    for (double e : es.eigenvalues) {
      projector = near_any(e, {0.0, 1.0}, tol::kSpectral, p_defect) && projector;
    }
    if (projector) {
      out.kind = SpectralKind::Projector;
      out.snap_defect = p_defect;
      return out;
    }
  }
  if (unitarity_defect(h) <= tol::kSpectral) out.kind = SpectralKind::Unitary;
  return out;
}

SpectralKind classify_string(const OperatorString& s) {
  if (s.factors.empty() || std::abs(term_weight(s)) < tol::kAlgebraic) return SpectralKind::Other;
  const bool hermitian = s.plus_hc || s.coefficient.imag() == 0.0;
  if (s.has_transition()) return s.plus_hc ? SpectralKind::Qubitized : SpectralKind::Other;
  if (!hermitian) return SpectralKind::Other;
  if (std::any_of(s.factors.begin(), s.factors.end(), is_pauli)) return SpectralKind::Qubitized;
  return SpectralKind::Projector;
}

void LinearCombination::add(OperatorString s) {
  if (terms_.empty() && num_qubits_ == 0) num_qubits_ = s.num_qubits();
  if (s.num_qubits() != num_qubits_) {
    throw Error(ErrorCode::kDimMismatch, "string width " + std::to_string(s.num_qubits()) +
                                             " in a " + std::to_string(num_qubits_) +
                                             "-qubit combination");
  }
  const SpectralKind tag = classify_string(s);
  terms_.push_back({std::move(s), tag});
}

ComplexMatrix materialize(const LinearCombination& lc) {
  const std::size_t dim = std::size_t{1} << lc.num_qubits();
  ComplexMatrix out(dim, dim);
  for (const auto& t : lc.terms()) out += materialize(t.string);
  return out;
}

}  // namespace qubitizer
