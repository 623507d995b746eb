#include "gqo/cli.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "gqo/serialization.hpp"

namespace gqo::cli {

namespace {

using io::Json;

struct GlobalOptions {
  double tol = kDefaultTol<double>;
  std::uint64_t seed = 0;
  bool json = false;
};

/// 15 significant digits; magnitudes below 1e-14 print as 0.
std::string num(double x) {
  if (std::abs(x) < 1e-14) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string complex_text(Complex<double> z) {
  const double re = std::abs(z.real()) < 1e-14 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 1e-14 ? 0.0 : z.imag();
  if (im == 0.0) return num(re);
  const std::string imag = (std::abs(im) == 1.0 ? "" : num(std::abs(im))) + "i";
  if (re == 0.0) return (im < 0 ? "-" : "") + imag;
  return num(re) + (im < 0 ? "-" : "+") + imag;
}

void print_matrix(std::ostream& out, const ComplexMatrixd& m, const std::string& indent = "  ") {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << indent << "[";
    for (Eigen::Index k = 0; k < m.cols(); ++k) out << (k ? ", " : "") << complex_text(m(i, k));
    out << "]\n";
  }
}

void print_real_row(std::ostream& out, const std::string& name, const RealVector<double>& v) {
  out << name << ":";
  for (Eigen::Index i = 0; i < v.size(); ++i) out << " " << num(v(i));
  out << "\n";
}

std::size_t label_width(const Labels& labels, std::size_t header) {
  std::size_t w = header;
  for (const auto& l : labels) w = std::max(w, l.size());
  return w;
}

std::string pad(const std::string& s, std::size_t width) { return s + std::string(width - std::min(width, s.size()), ' '); }

int cmd_prob(const GlobalOptions& g, const std::string& state_path, const std::string& observable_path,
             std::ostream& out) {
  const auto rho = io::state_from_document(io::read_document(state_path), g.tol);
  const Json obs_doc = io::read_document(observable_path);
  const auto family = io::observable_from_document(obs_doc, g.tol);
  const auto dist = prob_effects(family, rho);
  const double den = born_denominator(family, rho);
  const bool povm = is_povm(family, g.tol);

  if (g.json) {
    Json probs = Json::array();
    for (std::size_t j = 0; j < dist.size(); ++j) probs.push_back(dist[j]);
    out << Json{{"labels", dist.labels()}, {"probabilities", probs}, {"denominator", den}, {"is_povm", povm}}.dump(2)
        << "\n";
    return kExitOk;
  }
  out << "observable: " << io::document_kind(obs_doc) << ", dim " << family.dim() << ", " << family.size()
      << " outcomes\n";
  out << "povm: " << (povm ? "yes" : "no") << "\n";
  out << "denominator Tr(rho E(X)): " << num(den) << "\n";
  const std::size_t w = label_width(dist.labels(), 5);
  out << pad("label", w) << "  probability\n";
  for (std::size_t j = 0; j < dist.size(); ++j) out << pad(dist.labels()[j], w) << "  " << num(dist[j]) << "\n";
  return kExitOk;
}

void print_witness(std::ostream& out, const AffinityWitness<double>& w, const Labels& labels) {
  out << "witness outcome: " << labels.at(w.outcome) << "\n";
  out << "p(first): " << num(w.p_first) << "\n";
  out << "p(second): " << num(w.p_second) << "\n";
  out << "p(midpoint): " << num(w.p_midpoint) << "\n";
  out << "average of endpoints: " << num((w.p_first + w.p_second) / 2) << "\n";
  out << "midpoint gap: " << num(w.gap()) << "\n";
  out << "first state:\n";
  print_matrix(out, w.first.op());
  out << "second state:\n";
  print_matrix(out, w.second.op());
  out << "midpoint state:\n";
  print_matrix(out, w.midpoint.op());
}

void print_verdict(std::ostream& out, const RepresentabilityVerdict<double>& verdict, const Labels& labels) {
  out << "verdict: " << to_string(verdict.status) << "\n";
  if (verdict.povm) {
    for (std::size_t j = 0; j < verdict.povm->size(); ++j) {
      out << "W[" << labels.at(j) << "]:\n";
      print_matrix(out, verdict.povm->effect(j));
    }
  }
  if (verdict.certificate) {
    const auto& c = *verdict.certificate;
    out << "candidate rejected: " << to_string(c.kind) << " at outcome " << labels.at(c.outcome);
    if (c.kind == CertificateKind::ProbabilityMismatch)
      out << ", Tr(rho W) = " << num(c.actual) << " vs p_E = " << num(c.expected);
    else
      out << ", value " << num(c.actual);
    out << "\n";
    if (c.state) {
      out << "at state:\n";
      print_matrix(out, c.state->op());
    }
  }
  if (verdict.witness) print_witness(out, *verdict.witness, labels);
}

int cmd_decide(const GlobalOptions& g, const std::string& observable_path, std::ostream& out) {
  const auto family = io::observable_from_document(io::read_document(observable_path), g.tol);
  DecideOptions<double> options;
  options.seed = g.seed;
  const auto verdict = decide(family, options);
  if (g.json)
    out << io::verdict_to_json(verdict).dump(2) << "\n";
  else
    print_verdict(out, verdict, family.labels());
  return kExitOk;
}

int cmd_frame(const GlobalOptions& g, const std::string& frame_path, std::ostream& out) {
  const auto frame = io::frame_from_document(io::read_document(frame_path), g.tol);
  const auto projectors = frame_projectors(frame);
  const auto effects = frame_effects(frame);
  Json doc = io::to_document(effects);
  Json pis = Json::array();
  for (const auto& p : projectors) pis.push_back(io::matrix_to_json(p.op()));
  doc["projectors"] = pis;
  doc["total"] = io::matrix_to_json(effects.total());
  doc["total_min_eigenvalue"] = eig_hermitian(effects.total()).min_eigenvalue();
  doc["is_povm"] = is_povm(effects, g.tol);
  out << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_transition(const GlobalOptions& g, const std::string& a_path, const std::string& b_path, bool check,
                   std::ostream& out) {
  const Json a_doc = io::read_document(a_path);
  const auto b = io::pvm_from_document(io::read_document(b_path), g.tol);
  const std::string a_kind = io::document_kind(a_doc);
  std::optional<TransitionMatrixd> p;
  std::string rows;
  if (a_kind == "pvm") {
    p = transition_matrix(io::pvm_from_document(a_doc, g.tol), b);
    rows = "outcomes of A";
  } else if (a_kind == "frame") {
    p = frame_transition(io::frame_from_document(a_doc, g.tol), b);
    rows = "eigenstates of B";
  } else {
    throw Error(ErrorCode::ParseError, "transition needs A of kind pvm or frame, got \"" + a_kind + "\"");
  }
  const bool doubly = is_doubly_stochastic(*p, g.tol);

  if (g.json) {
    Json m = Json::array();
    for (Eigen::Index i = 0; i < p->size(); ++i) {
      Json row = Json::array();
      for (Eigen::Index k = 0; k < p->size(); ++k) row.push_back(p->entries()(i, k));
      m.push_back(row);
    }
    const RealVector<double> rs = p->row_sums(), cs = p->column_sums();
    Json doc{{"rows", rows},
             {"matrix", m},
             {"row_sums", std::vector<double>(rs.data(), rs.data() + rs.size())},
             {"column_sums", std::vector<double>(cs.data(), cs.data() + cs.size())}};
    if (check) doc["doubly_stochastic"] = doubly;
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "rows condition on: " << rows << "\n";
  out << "matrix:\n";
  for (Eigen::Index i = 0; i < p->size(); ++i) {
    out << " ";
    for (Eigen::Index k = 0; k < p->size(); ++k) out << " " << num(p->entries()(i, k));
    out << "\n";
  }
  print_real_row(out, "row sums", p->row_sums());
  print_real_row(out, "column sums", p->column_sums());
  if (check) out << "doubly stochastic: " << (doubly ? "yes" : "no") << "\n";
  return kExitOk;
}

int cmd_sample(const GlobalOptions& g, const std::string& observable_path, const std::string& state_path,
               std::uint64_t n, std::ostream& out) {
  const auto family = io::observable_from_document(io::read_document(observable_path), g.tol);
  const auto rho = io::state_from_document(io::read_document(state_path), g.tol);
  const auto dist = prob_effects(family, rho);
  const auto counts = sample_outcomes(family, rho, n, g.seed);
  auto empirical = [&](std::size_t j) { return n == 0 ? 0.0 : static_cast<double>(counts[j]) / static_cast<double>(n); };

  if (g.json) {
    Json emp = Json::array(), exact = Json::array();
    for (std::size_t j = 0; j < counts.size(); ++j) {
      emp.push_back(empirical(j));
      exact.push_back(dist[j]);
    }
    out << Json{{"rng", std::string(kRngAlgorithm)}, {"seed", g.seed},        {"n", n},
                {"labels", dist.labels()},           {"counts", counts},      {"empirical", emp},
                {"exact", exact}}
               .dump(2)
        << "\n";
    return kExitOk;
  }
  out << "rng: " << kRngAlgorithm << ", seed " << g.seed << "\n";
  out << "draws: " << n << "\n";
  const std::size_t w = label_width(dist.labels(), 5);
  out << pad("label", w) << "  count  empirical  exact\n";
  for (std::size_t j = 0; j < counts.size(); ++j)
    out << pad(dist.labels()[j], w) << "  " << counts[j] << "  " << num(empirical(j)) << "  " << num(dist[j]) << "\n";
  return kExitOk;
}

int cmd_demo_example(const GlobalOptions& g, std::ostream& out) {
  ComplexMatrixd e0 = ComplexMatrixd::Zero(2, 2), e1 = ComplexMatrixd::Zero(2, 2);
  e0(0, 0) = 2.0;
  e1(1, 1) = 1.0;
  const EffectFamilyd family({e0, e1});
  auto diag = [](double a, double b) {
    ComplexMatrixd m = ComplexMatrixd::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return DensityOperatord(m);
  };
  const auto rho1 = diag(1.0, 0.0), rho2 = diag(0.0, 1.0), rho3 = diag(0.5, 0.5);
  DecideOptions<double> options;
  options.seed = g.seed;
  const auto verdict = decide(family, options);
  if (g.json) {
    out << io::verdict_to_json(verdict).dump(2) << "\n";
    return kExitOk;
  }
  const auto candidate = reconstruct_candidate(family);
  const double x00 = candidate[0](0, 0).real(), x11 = candidate[0](1, 1).real();
  const double p3 = prob_effects(family, rho3)[0];
  out << "observable: E0 = 2|0><0|, E1 = |1><1| (qubit)\n";
  out << "E0 + E1 = I: " << (is_povm(family) ? "yes" : "no") << "\n";
  out << "p_E(0|rho1) = " << num(prob_effects(family, rho1)[0]) << "  (rho1 = diag(1, 0))\n";
  out << "p_E(0|rho2) = " << num(prob_effects(family, rho2)[0]) << "  (rho2 = diag(0, 1))\n";
  out << "p_E(0|rho3) = " << num(p3) << "  (rho3 = diag(1/2, 1/2))\n";
  out << "POVM candidate W0 = (x_ij): x00 = " << num(x00) << ", x11 = " << num(x11) << "\n";
  out << "affine prediction p_W(0|rho3) = (x00 + x11)/2 = " << num((x00 + x11) / 2) << " != " << num(p3) << "\n";
  print_verdict(out, verdict, family.labels());
  return kExitOk;
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateDenominator:
    case ErrorCode::SingularReconstruction:
    case ErrorCode::Indeterminate:
    case ErrorCode::NoWitnessFound:
    case ErrorCode::InvalidDistribution:
      return false;
    default:
      return true;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized quantum observables: Born-rule probabilities, POVM representability, transitions",
               "gqo"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_option("--tol", g.tol, "Validation tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "Seed for sampling and randomized checks");
  app.add_flag("--json", g.json, "Machine-readable output");

  std::string state_path, observable_path, frame_path, a_path, b_path;
  bool check_doubly = false;
  std::uint64_t n = 0;

  auto* prob = app.add_subcommand("prob", "Outcome probabilities of a state under an observable");
  prob->add_option("state", state_path, "state or state_vector document")->required();
  prob->add_option("observable", observable_path, "effect_family, frame or pvm document")->required();

  auto* dec = app.add_subcommand("decide", "Decide whether an observable's probability map is a POVM's");
  dec->add_option("observable", observable_path, "effect_family, frame or pvm document")->required();

  auto* frame = app.add_subcommand("frame", "Projectors and effects of an oblique frame");
  frame->add_option("frame", frame_path, "frame document")->required();

  auto* trans = app.add_subcommand("transition", "Transition-probability matrix between two observables");
  trans->add_option("A", a_path, "pvm or frame document")->required();
  trans->add_option("B", b_path, "pvm document")->required();
  trans->add_flag("--check-doubly-stochastic", check_doubly, "Report whether columns also sum to 1");

  auto* sample = app.add_subcommand("sample", "Draw outcome counts");
  sample->add_option("observable", observable_path, "effect_family, frame or pvm document")->required();
  sample->add_option("state", state_path, "state or state_vector document")->required();
  sample->add_option("--n", n, "Number of draws")->required();

  auto* demo = app.add_subcommand("demo-example", "Qubit observable 2|0><0|, |1><1| that no POVM reproduces");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  // Build the report aside so a failure never leaves partial output.
  std::ostringstream report;
  try {
    int code = kExitOk;
    if (*prob) code = cmd_prob(g, state_path, observable_path, report);
    else if (*dec) code = cmd_decide(g, observable_path, report);
    else if (*frame) code = cmd_frame(g, frame_path, report);
    else if (*trans) code = cmd_transition(g, a_path, b_path, check_doubly, report);
    else if (*sample) code = cmd_sample(g, observable_path, state_path, n, report);
    else if (*demo) code = cmd_demo_example(g, report);
    out << report.str();
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? kExitInput : kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace gqo::cli
