// symext: command-line front end for problem files.
//
// Exit codes: 0 affirmative, 1 negative verdict, 2 input error (parse,
// frame, class mismatch), 3 unsupported input (irrational poles, window).

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "selftest.hpp"
#include "symext/serialize.hpp"

using namespace symext;

namespace {

enum Exit { kYes = 0, kNo = 1, kInputError = 2, kUnsupported = 3 };

struct Options {
  std::string file;
  std::string kind;
  std::string bounds;
  int window = 0;
  bool strict_window = false;
  bool machine = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Problem load(const Options& o) {
  Problem pr = parse_problem(read_file(o.file));
  if (!o.kind.empty()) pr.kind = parse_kind(o.kind);
  return pr;
}

SplittingOptions splitting_options(const Options& o) { return {o.window, !o.strict_window}; }

std::string matrix_text(const Matrix<RatFunc>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + to_string(m(i, j));
    s += "]";
  }
  return s + "]";
}

std::string class_text(const CohClass& c) {
  if (c.is_zero()) return "0";
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < c.coeffs.rows(); ++i)
    for (std::size_t j = 0; j < c.coeffs.cols(); ++j) {
      const auto& v = c.coeffs(i, j);
      bool zero = true;
      for (const auto& x : v) zero = zero && is_zero(x);
      if (zero) continue;
      s += first ? "" : ", ";
      s += "(" + std::to_string(i) + "," + std::to_string(j) + "): [";
      for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + to_string(v[k]);
      s += "]";
      first = false;
    }
  return s + "}";
}

std::string splitting_text(const std::vector<int>& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + std::to_string(a[i]);
  return s + ")";
}

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

int cmd_reduce_class(const Options& o) {
  Problem pr = load(o);
  CohClass c = reduce_class(pr.ext.p);
  if (o.machine) {
    Json j = result_envelope("reduce-class");
    j["class"] = class_to_json(c);
    j["coboundary"] = c.is_zero();
    emit(j);
  } else {
    std::cout << "class: " << class_text(c) << ", coboundary: " << (c.is_zero() ? "yes" : "no") << "\n";
  }
  return kYes;
}

std::optional<RatHom> structure(const Problem& pr) {
  return pr.kind == FormKind::Symplectic ? check_symplectic(pr.ext) : check_orthogonal(pr.ext);
}

int cmd_check_structure(const Options& o) {
  Problem pr = load(o);
  auto alpha = structure(pr);
  if (o.machine) {
    Json j = result_envelope("check-structure");
    j["kind"] = to_string(pr.kind);
    j["structure"] = alpha.has_value();
    if (alpha) j["alpha"] = ratfunc_matrix_to_json(alpha->entries);
    emit(j);
  } else if (alpha) {
    std::cout << to_string(pr.kind) << " structure with E isotropic\nalpha: " << matrix_text(alpha->entries) << "\n";
  } else {
    std::cout << "no structure for this representative\n";
  }
  return alpha ? kYes : kNo;
}

/// beta from the file, or from q via the bijection with elementary transformations.
RatHom beta_of(const Problem& pr) {
  if (pr.beta) return *pr.beta;
  if (pr.q) return cor6_forward(pr.ext, *pr.q).beta;
  fail(ErrorCode::ParseError, "problem file needs 'beta' or 'q'");
}

std::vector<Certificate> subbundle_certificates(const GraphSubbundle& g) {
  return {{"regularity", regularity_check(g)}, {"subbundle", subbundle_spot_check(g)}};
}

int cmd_subbundle(const Options& o) {
  Problem pr = load(o);
  GraphSubbundle g = graph_subbundle(pr.ext.p, beta_of(pr), splitting_options(o));
  auto certs = subbundle_certificates(g);
  bool ok = true;
  for (const auto& c : certs) ok = ok && c.value;
  if (o.machine) {
    Json j = result_envelope("subbundle");
    j["subbundle"] = graph_to_json(g, certs);
    emit(j);
  } else {
    std::cout << (g.q.is_zero() ? "G = F" : "G = Ker(q) in F") << "\n";
    std::cout << "q: " << to_string(g.q) << "\n";
    std::cout << "splitting: " << splitting_text(g.splitting) << ", degree: " << g.degree << "\n";
    for (const auto& c : certs) std::cout << c.test << ": " << (c.value ? "yes" : "no") << "\n";
  }
  return ok ? kYes : kNo;
}

int cmd_isotropy(const Options& o) {
  Problem pr = load(o);
  auto alpha = structure(pr);
  if (!alpha) {
    if (o.machine) {
      Json j = result_envelope("isotropy");
      j["structure"] = false;
      emit(j);
    } else {
      std::cout << "no " << to_string(pr.kind) << " structure for this representative\n";
    }
    return kNo;
  }
  const bool hypothesis = uniqueness_hypothesis(pr.ext.p);
  RatHom beta = beta_of(pr);
  GraphSubbundle g = graph_subbundle(pr.ext.p, beta, splitting_options(o));
  std::vector<Certificate> certs;
  bool direct = pr.kind == FormKind::Symplectic ? isotropy_direct(SymplecticExtension{pr.ext, *alpha}, g)
                                                : isotropy_direct(OrthogonalExtension{pr.ext, *alpha}, g);
  certs.push_back({"isotropy_prin", isotropy_prin(g.q, pr.kind)});
  certs.push_back({"isotropy_linear", isotropy_linear(beta, *alpha, pr.kind)});
  certs.push_back({"isotropy_direct", direct});
  bool agree = true;
  for (const auto& c : certs) agree = agree && c.value == direct;
  if (o.machine) {
    Json j = result_envelope("isotropy");
    j["structure"] = true;
    j["kind"] = to_string(pr.kind);
    j["hypothesis"] = hypothesis;
    j["isotropic"] = direct;
    j["subbundle"] = graph_to_json(g, certs);
    emit(j);
  } else {
    if (!hypothesis) std::cout << "warning: HypothesisUnmet: h0(Hom(F, E)) != 0, the principal-part test is not conclusive\n";
    std::cout << "isotropic: " << (direct ? "yes" : "no");
    std::cout << (agree ? " (all three tests agree)" : " (tests disagree)") << "\n";
    for (const auto& c : certs) std::cout << c.test << ": " << (c.value ? "yes" : "no") << "\n";
  }
  return direct ? kYes : kNo;
}

int cmd_search(const Options& o) {
  Problem pr = load(o);
  SearchBounds bounds = pr.bounds.value_or(SearchBounds{});
  if (!o.bounds.empty()) bounds = parse_bounds(o.bounds, bounds);
  auto alpha = structure(pr);
  if (!alpha) {
    if (o.machine) {
      Json j = result_envelope("search");
      j["structure"] = false;
      j["count"] = 0;
      emit(j);
    } else {
      std::cout << "no " << to_string(pr.kind) << " structure for this representative\n";
    }
    return kNo;
  }
  auto found = pr.kind == FormKind::Symplectic ? search_lagrangian(SymplecticExtension{pr.ext, *alpha}, bounds)
                                               : search_lagrangian(OrthogonalExtension{pr.ext, *alpha}, bounds);
  if (o.machine) {
    Json head = result_envelope("search");
    head["structure"] = true;
    head["kind"] = to_string(pr.kind);
    head["count"] = found.size();
    emit(head);
    for (const auto& c : found)
      emit(graph_to_json(c.sub, {{"isotropy_prin", c.symmetric_witness}, {"isotropy_direct", c.direct_witness}}));
  } else {
    std::cout << found.size() << " candidate" << (found.size() == 1 ? "" : "s") << "\n";
    for (const auto& c : found) {
      std::cout << "q: " << to_string(c.sub.q) << " | splitting: " << splitting_text(c.sub.splitting)
                << " | degree: " << c.sub.degree << " | certified: " << (c.symmetric_witness && c.direct_witness ? "yes" : "no")
                << "\n";
    }
  }
  return found.empty() ? kNo : kYes;
}

int cmd_selftest(const Options&) { return selftest::run(std::cout) ? kYes : kNo; }

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedPoleField:
    case ErrorCode::WindowTooSmall:
      return kUnsupported;
    default:
      return kInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extensions of vector bundles on the projective line over Q"};
  app.require_subcommand(1);
  Options o;
  if (const char* env = std::getenv("SYMEXT_WINDOW")) {
    try {
      o.window = std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "error: SYMEXT_WINDOW must be an integer\n";
      return kInputError;
    }
  }
  app.add_flag("--machine", o.machine, "Emit JSON records instead of the summary");
  app.add_option("--kind", o.kind, "Override the form kind")->check(CLI::IsMember({"symplectic", "orthogonal"}));
  app.add_option("--window", o.window, "Half-width of the h0-profile window (0 = derived)")->check(CLI::NonNegativeNumber);
  app.add_flag("--strict-window", o.strict_window, "Fail instead of widening the window");
  app.add_option("--bounds", o.bounds, "Search bounds, e.g. points=0,inf;order=2;range=1;cap=64");

  struct Sub {
    const char* name;
    const char* help;
    int (*run)(const Options&);
    bool needs_file;
  };
  const Sub subs[] = {
      {"reduce-class", "Canonical class of p and coboundary verdict", cmd_reduce_class, true},
      {"check-structure", "Symplectic or orthogonal structure with E isotropic", cmd_check_structure, true},
      {"subbundle", "Graph subbundle of beta (or of q)", cmd_subbundle, true},
      {"isotropy", "Isotropy of the graph subbundle by three tests", cmd_isotropy, true},
      {"search", "Enumerate isotropic graph subbundles within bounds", cmd_search, true},
      {"selftest", "Run the built-in invariant checks", cmd_selftest, false},
  };
  int (*chosen)(const Options&) = nullptr;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    if (s.needs_file) sub->add_option("file", o.file, "Problem file")->required();
    sub->callback([&chosen, run = s.run] { chosen = run; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  try {
    return chosen(o);
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return exit_for(err.code());
  }
}
