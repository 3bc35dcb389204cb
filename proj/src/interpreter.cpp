#include "chernforge/interpreter.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "chernforge/certificate.hpp"
#include "chernforge/errors.hpp"
#include "chernforge/reduction.hpp"
#include "chernforge/serialize.hpp"

namespace chernforge {

namespace {

struct GenOwner {
  enum class Kind { Bundle, Line };
  Kind kind = Kind::Bundle;
  std::string owner;
  int index = 1;  // c_index of the owner
};

struct Env {
  ModelPtr model;
  std::map<std::string, LineBundleSymbol> lines;
  std::map<std::string, FormalBundle> bundles;
  std::map<std::string, std::pair<CycleClass, ExprPtr>> lets;
  std::map<std::string, GenOwner> generator_owners;  // universal c{k}_{name} symbols
  std::vector<std::string> bundle_order, line_order;

  void reset() {
    model.reset();
    lines.clear();
    bundles.clear();
    lets.clear();
    generator_owners.clear();
    bundle_order.clear();
    line_order.clear();
  }

  bool name_taken(const std::string& n) const {
    return lines.count(n) || bundles.count(n) || lets.count(n) ||
           (model && model->generator_index(n).has_value());
  }
};

ModelPtr build_model(const ModelDecl& decl, const std::vector<Generator>& universal_gens) {
  switch (decl.which) {
    case ModelDecl::Which::Projective:
      return RingModel::projective(static_cast<int>(decl.params[0]));
    case ModelDecl::Which::Product:
      return RingModel::product_of_projectives(
          {static_cast<int>(decl.params[0]), static_cast<int>(decl.params[1])});
    case ModelDecl::Which::Grassmannian:
      return RingModel::grassmannian(static_cast<int>(decl.params[0]),
                                     static_cast<int>(decl.params[1]));
    case ModelDecl::Which::Universal:
      return RingModel::universal(static_cast<int>(decl.params[0]), universal_gens);
  }
  throw Error("unreachable model kind");
}

// Generators contributed by declarations with no explicit class bindings in a
// universal section: c1_L for lines, c1_E..cr_E for bundles.
std::vector<Generator> scan_universal_generators(const Program& program, std::size_t from) {
  std::vector<Generator> gens;
  std::set<std::string> seen;  // duplicate declarations error later, at their statement
  auto add = [&](std::string name, int degree) {
    if (seen.insert(name).second) gens.push_back({std::move(name), degree});
  };
  for (std::size_t i = from + 1; i < program.statements.size(); ++i) {
    const Statement& st = program.statements[i];
    if (std::holds_alternative<ModelDecl>(st)) break;
    if (const auto* line = std::get_if<LineDecl>(&st)) {
      if (!line->c1) add("c1_" + line->name, 1);
    } else if (const auto* bundle = std::get_if<BundleDecl>(&st)) {
      if (!bundle->has_chern)
        for (long k = 1; k <= bundle->rank; ++k)
          add("c" + std::to_string(k) + "_" + bundle->name, static_cast<int>(k));
    }
  }
  return gens;
}

class Executor {
 public:
  Executor(const Program& program, const ExecOptions& options, Report& report)
      : program_(program), options_(options), report_(report) {}

  void run() {
    for (std::size_t i = 0; i < program_.statements.size(); ++i) {
      statement_index_ = i;
      try {
        std::visit([this](const auto& st) { this->exec(st); }, program_.statements[i]);
      } catch (const Error& err) {
        diagnose(err.what(), statement_pos(program_.statements[i]));
      }
    }
  }

 private:
  void diagnose(const std::string& message, SourcePos pos) {
    report_.diagnostics.push_back({Diagnostic::Severity::Error, message, pos});
    report_.any_error = true;
    report_.text.push_back("error (" + std::to_string(pos.line) + ":" +
                           std::to_string(pos.column) + "): " + message);
  }

  void require_model(SourcePos pos) const {
    if (!env_.model) throw Error("no active model; add a 'model ...;' statement first");
    (void)pos;
  }

  // ---- ring evaluation -----------------------------------------------

  FormalBundle resolve_bundle(const BundleRef& ref) const {
    FormalBundle base = [&]() -> FormalBundle {
      if (auto it = env_.bundles.find(ref.base); it != env_.bundles.end()) return it->second;
      if (auto it = env_.lines.find(ref.base); it != env_.lines.end())
        return FormalBundle{it->first, 1, {it->second.c1}, it->second.globally_generated,
                            false};
      throw UnknownSymbol("unknown bundle '" + ref.base + "'");
    }();
    for (const auto& [line, power] : ref.twists) {
      auto it = env_.lines.find(line);
      if (it == env_.lines.end()) throw UnknownSymbol("unknown line bundle '" + line + "'");
      base = tensor_line(base, line_power(it->second, power));
    }
    return base;
  }

  CycleClass eval_ring(const Expr& e) const {
    switch (e.kind) {
      case Expr::Kind::Number:
        return CycleClass::constant(env_.model, e.number);
      case Expr::Kind::Symbol: {
        if (auto it = env_.lets.find(e.symbol); it != env_.lets.end()) return it->second.first;
        if (auto idx = env_.model->generator_index(e.symbol))
          return CycleClass::generator(env_.model, *idx);
        if (auto it = env_.lines.find(e.symbol); it != env_.lines.end())
          return it->second.c1;
        if (env_.bundles.count(e.symbol))
          throw UnknownSymbol("'" + e.symbol + "' is a bundle; use c(" + e.symbol +
                              ", k) or ctop(" + e.symbol + ")");
        throw UnknownSymbol("unknown symbol '" + e.symbol + "'");
      }
      case Expr::Kind::Schubert:
        return CycleClass::schubert(env_.model, e.partition);
      case Expr::Kind::Chern:
        return resolve_bundle(e.bundle).chern_class(e.chern_index);
      case Expr::Kind::TopChern: {
        const FormalBundle b = resolve_bundle(e.bundle);
        return top_chern(b).value;
      }
      case Expr::Kind::Neg:
        return -eval_ring(*e.a);
      case Expr::Kind::Add:
        return eval_ring(*e.a) + eval_ring(*e.b);
      case Expr::Kind::Sub:
        return eval_ring(*e.a) - eval_ring(*e.b);
      case Expr::Kind::Mul:
        return eval_ring(*e.a) * eval_ring(*e.b);
      case Expr::Kind::Pow:
        return eval_ring(*e.a).pow(e.exponent);
    }
    throw Error("unreachable expression kind");
  }

  // ---- splitting-principle evaluation --------------------------------

  OracleEnv build_oracle_env() const {
    std::vector<std::pair<std::string, int>> bundles;
    for (const auto& name : env_.bundle_order)
      bundles.emplace_back(name, env_.bundles.at(name).rank);
    return OracleEnv::build(bundles, env_.line_order);
  }

  SymPoly eval_roots(const Expr& e, const OracleEnv& oenv) const {
    switch (e.kind) {
      case Expr::Kind::Number:
        return SymPoly::constant(oenv.vars(), e.number);
      case Expr::Kind::Symbol: {
        if (auto it = env_.lets.find(e.symbol); it != env_.lets.end())
          return eval_roots(*it->second.second, oenv);
        if (auto it = env_.generator_owners.find(e.symbol);
            it != env_.generator_owners.end()) {
          const GenOwner& owner = it->second;
          if (owner.kind == GenOwner::Kind::Line) return oenv.line_c1(owner.owner);
          return oenv.chern_of(owner.owner, {}, owner.index);
        }
        if (env_.lines.count(e.symbol)) return oenv.line_c1(e.symbol);
        throw UnknownSymbol("'" + e.symbol + "' has no Chern-root expansion");
      }
      case Expr::Kind::Schubert:
        throw UnknownSymbol("Schubert classes have no Chern-root expansion");
      case Expr::Kind::Chern:
        return oenv.chern_of(e.bundle.base, e.bundle.twists, e.chern_index);
      case Expr::Kind::TopChern: {
        int rank = 1;
        if (auto it = env_.bundles.find(e.bundle.base); it != env_.bundles.end())
          rank = it->second.rank;
        else if (!env_.lines.count(e.bundle.base))
          throw UnknownSymbol("unknown bundle '" + e.bundle.base + "'");
        return oenv.chern_of(e.bundle.base, e.bundle.twists, rank);
      }
      case Expr::Kind::Neg:
        return -eval_roots(*e.a, oenv);
      case Expr::Kind::Add:
        return eval_roots(*e.a, oenv) + eval_roots(*e.b, oenv);
      case Expr::Kind::Sub:
        return eval_roots(*e.a, oenv) - eval_roots(*e.b, oenv);
      case Expr::Kind::Mul:
        return eval_roots(*e.a, oenv) * eval_roots(*e.b, oenv);
      case Expr::Kind::Pow:
        return eval_roots(*e.a, oenv).pow(e.exponent);
    }
    throw Error("unreachable expression kind");
  }

  // ---- statements ------------------------------------------------------

  void exec(const ModelDecl& decl) {
    env_.reset();
    env_.model = build_model(decl, scan_universal_generators(program_, statement_index_));
    if (decl.which == ModelDecl::Which::Universal) {
      for (const auto& gen : env_.model->generators()) {
        // c{k}_{name}: recover the owner so the oracle can map it to roots.
        const auto underscore = gen.name.find('_');
        GenOwner owner;
        owner.index = std::stoi(gen.name.substr(1, underscore - 1));
        owner.owner = gen.name.substr(underscore + 1);
        owner.kind = GenOwner::Kind::Bundle;  // refined when the line declares
        env_.generator_owners[gen.name] = owner;
      }
    }
    report_.text.push_back("model " + env_.model->id() +
                           (env_.model->convention().empty()
                                ? ""
                                : " (" + env_.model->convention() + ")"));
  }

  void exec(const LineDecl& decl) {
    require_model(decl.pos);
    if (env_.name_taken(decl.name)) throw Error("name '" + decl.name + "' is already declared");
    CycleClass c1 = CycleClass::zero(env_.model);
    if (decl.c1) {
      c1 = eval_ring(*decl.c1);
    } else if (env_.model->kind() == RingKind::UniversalTruncated) {
      auto idx = env_.model->generator_index("c1_" + decl.name);
      if (!idx) throw Error("internal: missing universal generator for line " + decl.name);
      c1 = CycleClass::generator(env_.model, *idx);
      env_.generator_owners["c1_" + decl.name] = {GenOwner::Kind::Line, decl.name, 1};
    } else {
      throw Error("line '" + decl.name + "' needs an explicit c1 = <expr> in model " +
                  env_.model->id());
    }
    env_.lines.emplace(decl.name,
                       LineBundleSymbol::make(decl.name, c1, decl.globally_generated));
    env_.line_order.push_back(decl.name);
    report_.text.push_back("line " + decl.name + (decl.globally_generated ? " gg" : "") +
                           ", c1 = " + c1.str());
  }

  void exec(const BundleDecl& decl) {
    require_model(decl.pos);
    if (env_.name_taken(decl.name)) throw Error("name '" + decl.name + "' is already declared");
    if (decl.on) {
      const std::string mnemonic = [&] {
        switch (env_.model->kind()) {
          case RingKind::ProjectiveSpace: return std::string("P");
          case RingKind::ProductOfProjectiveSpaces: return std::string("PxP");
          case RingKind::Grassmannian: return std::string("G");
          case RingKind::UniversalTruncated: return std::string("universal");
        }
        return std::string();
      }();
      if (*decl.on != mnemonic && *decl.on != env_.model->id())
        throw ModelMismatch("bundle declared on '" + *decl.on + "' but the active model is " +
                            env_.model->id());
    }
    std::vector<CycleClass> chern;
    if (decl.has_chern) {
      if (static_cast<long>(decl.chern.size()) != decl.rank)
        throw DegreeMismatch("bundle " + decl.name + " declares " +
                             std::to_string(decl.chern.size()) + " Chern classes for rank " +
                             std::to_string(decl.rank));
      for (const auto& expr : decl.chern) chern.push_back(eval_ring(*expr));
    } else if (env_.model->kind() == RingKind::UniversalTruncated) {
      for (long k = 1; k <= decl.rank; ++k) {
        auto idx = env_.model->generator_index("c" + std::to_string(k) + "_" + decl.name);
        if (!idx) throw Error("internal: missing universal generator for bundle " + decl.name);
        chern.push_back(CycleClass::generator(env_.model, *idx));
      }
    } else {
      throw Error("bundle '" + decl.name +
                  "' needs explicit chern = [...] classes in model " + env_.model->id());
    }
    env_.bundles.emplace(decl.name,
                         FormalBundle::make(decl.name, static_cast<int>(decl.rank),
                                            std::move(chern), false, decl.gg_twist));
    env_.bundle_order.push_back(decl.name);
    report_.text.push_back("bundle " + decl.name + " rank " + std::to_string(decl.rank) +
                           (decl.gg_twist ? " gg_twist" : ""));
  }

  void exec(const LetBinding& decl) {
    require_model(decl.pos);
    if (env_.name_taken(decl.name)) throw Error("name '" + decl.name + "' is already declared");
    CycleClass value = eval_ring(*decl.value);
    report_.text.push_back("let " + decl.name + " = " + value.str());
    env_.lets.emplace(decl.name, std::make_pair(std::move(value), decl.value));
  }

  void exec(const Query& q) {
    require_model(q.pos);
    switch (q.kind) {
      case Query::Kind::CertifyTop:
      case Query::Kind::CertifyXi:
        return exec_certify(q);
      case Query::Kind::Ch:
        return exec_ch(q);
      case Query::Kind::Expand:
        return exec_expand(q);
      case Query::Kind::Oracle:
        return exec_oracle(q);
      case Query::Kind::Kleiman:
        return exec_kleiman(q);
      case Query::Kind::Syzygy:
        return exec_syzygy(q);
      case Query::Kind::Express:
        return exec_express(q);
    }
  }

  const FormalBundle& find_bundle(const std::string& name) const {
    auto it = env_.bundles.find(name);
    if (it == env_.bundles.end()) throw UnknownSymbol("unknown bundle '" + name + "'");
    return it->second;
  }

  const LineBundleSymbol& find_line(const std::string& name) const {
    auto it = env_.lines.find(name);
    if (it == env_.lines.end()) throw UnknownSymbol("unknown line bundle '" + name + "'");
    return it->second;
  }

  void exec_certify(const Query& q) {
    const FormalBundle& e = find_bundle(q.bundle_name);
    const LineBundleSymbol& l = find_line(q.line_name);
    const bool top = q.kind == Query::Kind::CertifyTop;
    Certificate cert = top ? certify_top(e.rank)
                           : certify_xi(e.rank, static_cast<int>(q.index));
    const LciReport lci =
        lci_flags_report(cert, l.globally_generated, e.twist_globally_generated);

    nlohmann::json entry{{"query", top ? "certify_top" : "certify_xi"},
                         {"statement", statement_index_ + 1},
                         {"bundle", q.bundle_name},
                         {"line", q.line_name}};

    std::ostringstream text;
    text << (top ? "certify_top " : "certify_xi ") << q.bundle_name << " " << q.line_name;
    if (!top) text << " " << q.index;
    text << ": " << cert.target_str() << " =";
    bool first = true;
    for (const auto& [coeff, atom] : cert.atoms) {
      text << (first ? " " : " + ") << "(" << coeff.str() << ")*c_" << atom.rank << "("
           << q.bundle_name << "@" << q.line_name << "^" << atom.k << ")";
      first = false;
    }

    bool verified_ok = true;
    if (options_.verify) {
      const CertificateCheck ring_check = verify_certificate(cert, e, l);
      const OracleOutcome oracle = oracle_check_certificate(cert);
      const bool conclusive = env_.model->kind() != RingKind::UniversalTruncated ||
                              env_.model->truncation() >= e.rank;
      if (ring_check.ok && conclusive) cert.verified_in.push_back(env_.model->id());
      verified_ok = ring_check.ok && oracle.equal;
      entry["verified"] = verified_ok;
      entry["oracle_report"] = oracle.report;
      if (!ring_check.ok) entry["residual"] = ring_check.residual.str();
      if (!verified_ok) {
        report_.any_failed_verification = true;
        text << " [verification FAILED]";
      } else {
        text << " [verified";
        if (!cert.verified_in.empty()) text << " in " << env_.model->id();
        text << "; oracle ok]";
      }
      if (lci.conditional) text << " (conditional: missing assumptions)";
    }

    entry["certificate"] = to_json(cert);
    entry["lci_report"] = to_json(lci);
    report_.results.push_back(std::move(entry));
    report_.text.push_back(text.str());
  }

  void exec_ch(const Query& q) {
    const FormalBundle& e = find_bundle(q.bundle_name);
    const CycleClass value = chern_character(e, static_cast<int>(q.index));
    report_.results.push_back(nlohmann::json{{"query", "ch"},
                                             {"statement", statement_index_ + 1},
                                             {"bundle", q.bundle_name},
                                             {"upto", q.index},
                                             {"value", to_json(value)}});
    report_.text.push_back("ch " + q.bundle_name + " upto " + std::to_string(q.index) +
                           " = " + value.str());
  }

  void exec_expand(const Query& q) {
    const CycleClass value = eval_ring(*q.expr_a);
    const std::string expr = pretty_print(*q.expr_a);
    report_.results.push_back(nlohmann::json{{"query", "expand"},
                                             {"statement", statement_index_ + 1},
                                             {"expr", expr},
                                             {"value", to_json(value)}});
    report_.text.push_back("expand " + expr + " = " + value.str());
  }

  void exec_oracle(const Query& q) {
    const OracleEnv oenv = build_oracle_env();
    const SymPoly lhs = eval_roots(*q.expr_a, oenv);
    const SymPoly rhs = eval_roots(*q.expr_b, oenv);
    const OracleOutcome outcome = oracle_check(lhs, rhs);
    if (!outcome.equal) report_.any_failed_verification = true;
    report_.results.push_back(nlohmann::json{{"query", "oracle"},
                                             {"statement", statement_index_ + 1},
                                             {"lhs", pretty_print(*q.expr_a)},
                                             {"rhs", pretty_print(*q.expr_b)},
                                             {"equal", outcome.equal},
                                             {"oracle_report", outcome.report}});
    report_.text.push_back("oracle " + pretty_print(*q.expr_a) + " == " +
                           pretty_print(*q.expr_b) + ": " +
                           (outcome.equal ? "true" : "false"));
  }

  void exec_kleiman(const Query& q) {
    const bool verdict = kleiman_smooth_bound(q.kleiman_d, q.kleiman_i);
    report_.checks.push_back(nlohmann::json{
        {"name", "kleiman_smooth_bound"},
        {"statement", statement_index_ + 1},
        {"inputs", nlohmann::json{{"d", q.kleiman_d}, {"i", q.kleiman_i}}},
        {"verdict", verdict}});
    report_.text.push_back("kleiman d=" + std::to_string(q.kleiman_d) +
                           " i=" + std::to_string(q.kleiman_i) + ": " +
                           (verdict ? "true" : "false"));
  }

  void exec_syzygy(const Query& q) {
    const FormalBundle& e = find_bundle(q.bundle_name);
    auto hidx = env_.model->generator_index("H");
    if (!hidx)
      throw UnknownGenerator("model " + env_.model->id() +
                             " has no hyperplane generator 'H'");
    SyzygyInstance inst{eval_ring(*q.expr_a),
                        static_cast<int>(q.syzygy_p),
                        e,
                        q.syzygy_n,
                        q.syzygy_sign,
                        CycleClass::generator(env_.model, *hidx)};
    const SyzygyCheck check = verify_syzygy_identity(inst);
    if (!check.ok) report_.any_failed_verification = true;
    report_.checks.push_back(nlohmann::json{
        {"name", "verify_syzygy_identity"},
        {"statement", statement_index_ + 1},
        {"inputs", nlohmann::json{{"p", q.syzygy_p},
                                  {"n", q.syzygy_n},
                                  {"sign", q.syzygy_sign},
                                  {"E", q.bundle_name},
                                  {"z", pretty_print(*q.expr_a)}}},
        {"verdict", check.ok},
        {"residual", check.residual.str()}});
    report_.text.push_back("syzygy p=" + std::to_string(q.syzygy_p) +
                           " n=" + std::to_string(q.syzygy_n) + ": " +
                           (check.ok ? "true" : "false (residual " +
                                                    check.residual.str() + ")"));
  }

  void exec_express(const Query& q) {
    const CycleClass target = eval_ring(*q.expr_a);
    std::vector<SubalgebraGenerator> gens;
    for (const auto& name : q.express_generators) {
      if (auto idx = env_.model->generator_index(name)) {
        gens.push_back({name, CycleClass::generator(env_.model, *idx), "model generator"});
      } else if (auto it = env_.lets.find(name); it != env_.lets.end()) {
        gens.push_back({name, it->second.first, "let binding"});
      } else if (auto it2 = env_.lines.find(name); it2 != env_.lines.end()) {
        gens.push_back({name, it2->second.c1, "line bundle c1"});
      } else {
        throw UnknownSymbol("unknown generator '" + name + "' in express query");
      }
    }
    const int bound = options_.max_degree >= 0
                          ? std::min(options_.max_degree, env_.model->top_degree())
                          : env_.model->top_degree();
    const ExpressResult result = express_in_subalgebra(target, gens, bound);

    nlohmann::json coefficients = nlohmann::json::array();
    std::string rendered;
    for (const auto& term : result.combination) {
      std::string product;
      for (std::size_t i = 0; i < term.exponents.size(); ++i) {
        if (term.exponents[i] == 0) continue;
        if (!product.empty()) product += "*";
        product += q.express_generators[i];
        if (term.exponents[i] > 1) product += "^" + std::to_string(term.exponents[i]);
      }
      if (product.empty()) product = "1";
      coefficients.push_back(nlohmann::json{{"exponents", term.exponents},
                                            {"coeff", term.coeff.str()},
                                            {"product", product}});
      if (!rendered.empty()) rendered += " + ";
      rendered += "(" + term.coeff.str() + ")*" + product;
    }
    if (result.representable && rendered.empty()) rendered = "0";

    report_.checks.push_back(nlohmann::json{
        {"name", "express_in_subalgebra"},
        {"statement", statement_index_ + 1},
        {"inputs", nlohmann::json{{"target", pretty_print(*q.expr_a)},
                                  {"generators", q.express_generators},
                                  {"max_degree", bound}}},
        {"verdict", result.representable},
        {"coefficients", std::move(coefficients)},
        {"message", result.message}});
    report_.text.push_back("express " + pretty_print(*q.expr_a) + ": " +
                           (result.representable ? rendered : "NotRepresentable"));
  }

  const Program& program_;
  const ExecOptions& options_;
  Report& report_;
  Env env_;
  std::size_t statement_index_ = 0;
};

}  // namespace

nlohmann::json Report::document() const {
  nlohmann::json doc{{"results", results}};
  if (!checks.empty()) doc["checks"] = checks;
  if (!diagnostics.empty()) {
    nlohmann::json diags = nlohmann::json::array();
    for (const auto& d : diagnostics)
      diags.push_back(nlohmann::json{
          {"severity", d.severity == Diagnostic::Severity::Error ? "error" : "warning"},
          {"message", d.message},
          {"line", d.pos.line},
          {"column", d.pos.column}});
    doc["diagnostics"] = diags;
  }
  return doc;
}

Report execute(const Program& program, const ExecOptions& options) {
  Report report;
  Executor(program, options, report).run();
  return report;
}

std::string emit_json(const Report& report) { return report.document().dump(2) + "\n"; }

std::string emit_text(const Report& report, bool color) {
  const char* red = color ? "\033[31m" : "";
  const char* reset = color ? "\033[0m" : "";
  std::ostringstream os;
  for (const auto& line : report.text) {
    const bool bad = line.find("error") == 0 || line.find("FAILED") != std::string::npos;
    os << (bad ? red : "") << line << (bad ? reset : "") << "\n";
  }
  return os.str();
}

Report run_source(std::string_view source, const ExecOptions& options) {
  const ParseResult parsed = parse(source);
  if (!parsed.ok()) {
    Report report;
    report.diagnostics = parsed.diagnostics;
    report.any_error = true;
    for (const auto& d : parsed.diagnostics) report.text.push_back(d.str());
    return report;
  }
  return execute(*parsed.program, options);
}

}  // namespace chernforge
