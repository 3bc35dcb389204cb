#include "chernforge/dsl.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "chernforge/errors.hpp"

namespace chernforge {

std::string Diagnostic::str() const {
  std::ostringstream os;
  os << pos.line << ":" << pos.column << ": "
     << (severity == Severity::Error ? "error" : "warning") << ": " << message;
  return os.str();
}

namespace {

struct Token {
  enum class Kind { Ident, Int, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run(std::vector<Diagnostic>& diags) {
    std::vector<Token> tokens;
    while (true) {
      skip_ws_and_comments();
      SourcePos pos{line_, col_};
      if (at_end()) {
        tokens.push_back({Token::Kind::End, "", pos});
        break;
      }
      const char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string text;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                             peek() == '_'))
          text += advance();
        tokens.push_back({Token::Kind::Ident, std::move(text), pos});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string text;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
          text += advance();
        tokens.push_back({Token::Kind::Int, std::move(text), pos});
      } else if (c == '=' && peek(1) == '=') {
        advance();
        advance();
        tokens.push_back({Token::Kind::Punct, "==", pos});
      } else if (std::string_view(";,()[]=+-*^@/").find(c) != std::string_view::npos) {
        tokens.push_back({Token::Kind::Punct, std::string(1, advance()), pos});
      } else {
        diags.push_back({Diagnostic::Severity::Error,
                         std::string("unexpected character '") + c + "'", pos});
        advance();
      }
    }
    return tokens;
  }

 private:
  bool at_end() const { return i_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0';
  }
  char advance() {
    const char c = src_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_ws_and_comments() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else if (peek() == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "model",      "line",    "bundle",  "let",     "certify_top", "certify_xi",
      "ch",         "expand",  "oracle",  "kleiman", "syzygy",      "express",
      "in",         "upto",    "on",      "rank",    "chern",       "c1",
      "gg",         "gg_twist", "sigma",  "c",       "ctop",        "universal",
      "P",          "PxP",     "G"};
  return words;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
      : tokens_(std::move(tokens)), diags_(diags) {}

  Program run() {
    Program program;
    while (!at(Token::Kind::End)) {
      try {
        program.statements.push_back(statement());
      } catch (const SyntaxBail&) {
        recover();
      }
    }
    return program;
  }

 private:
  struct SyntaxBail {};

  [[noreturn]] void fail(const std::string& message) { fail(message, cur().pos); }
  [[noreturn]] void fail(const std::string& message, SourcePos pos) {
    diags_.push_back({Diagnostic::Severity::Error, message, pos});
    throw SyntaxBail{};
  }

  void recover() {
    while (!at(Token::Kind::End)) {
      if (cur().kind == Token::Kind::Punct && cur().text == ";") {
        ++i_;
        return;
      }
      ++i_;
    }
  }

  const Token& cur() const { return tokens_[i_]; }
  const Token& peek(std::size_t ahead = 1) const {
    return tokens_[std::min(i_ + ahead, tokens_.size() - 1)];
  }
  bool at(Token::Kind k) const { return cur().kind == k; }
  bool at_punct(std::string_view p) const {
    return cur().kind == Token::Kind::Punct && cur().text == p;
  }
  bool at_ident(std::string_view name) const {
    return cur().kind == Token::Kind::Ident && cur().text == name;
  }
  Token take() { return tokens_[i_++]; }
  void expect_punct(std::string_view p) {
    if (!at_punct(p)) fail("expected '" + std::string(p) + "'");
    ++i_;
  }
  std::string expect_ident(const std::string& what) {
    if (!at(Token::Kind::Ident)) fail("expected " + what);
    return take().text;
  }
  void expect_keyword(std::string_view word) {
    if (!at_ident(word)) fail("expected '" + std::string(word) + "'");
    ++i_;
  }
  long expect_int(const std::string& what) {
    bool negative = false;
    if (at_punct("-")) {
      negative = true;
      ++i_;
    }
    if (!at(Token::Kind::Int)) fail("expected " + what);
    const long v = std::stol(take().text);
    return negative ? -v : v;
  }

  std::string declared_name(const std::string& what) {
    SourcePos pos = cur().pos;
    std::string name = expect_ident(what);
    if (reserved_words().count(name))
      fail("'" + name + "' is a reserved word and cannot be declared", pos);
    return name;
  }

  Statement statement() {
    if (at_ident("model")) return model_decl();
    if (at_ident("line")) return line_decl();
    if (at_ident("bundle")) return bundle_decl();
    if (at_ident("let")) return let_binding();
    if (at(Token::Kind::Ident)) return query();
    fail("expected a statement");
  }

  Statement model_decl() {
    ModelDecl decl;
    decl.pos = cur().pos;
    ++i_;  // model
    if (!at(Token::Kind::Ident)) fail("expected model kind: P, PxP, G or universal");
    const std::string kind = take().text;
    expect_punct("(");
    if (kind == "P") {
      decl.which = ModelDecl::Which::Projective;
      decl.params.push_back(expect_int("projective dimension"));
    } else if (kind == "PxP") {
      decl.which = ModelDecl::Which::Product;
      decl.params.push_back(expect_int("factor dimension"));
      expect_punct(",");
      decl.params.push_back(expect_int("factor dimension"));
    } else if (kind == "G") {
      decl.which = ModelDecl::Which::Grassmannian;
      decl.params.push_back(expect_int("k"));
      expect_punct(",");
      decl.params.push_back(expect_int("n"));
    } else if (kind == "universal") {
      decl.which = ModelDecl::Which::Universal;
      decl.params.push_back(expect_int("truncation degree"));
    } else {
      fail("unknown model kind '" + kind + "'");
    }
    expect_punct(")");
    expect_punct(";");
    return decl;
  }

  Statement line_decl() {
    LineDecl decl;
    decl.pos = cur().pos;
    ++i_;  // line
    decl.name = declared_name("line bundle name");
    if (at_ident("gg")) {
      decl.globally_generated = true;
      ++i_;
    }
    if (at_ident("c1")) {
      ++i_;
      expect_punct("=");
      decl.c1 = expression();
    }
    expect_punct(";");
    return decl;
  }

  Statement bundle_decl() {
    BundleDecl decl;
    decl.pos = cur().pos;
    ++i_;  // bundle
    decl.name = declared_name("bundle name");
    expect_keyword("rank");
    SourcePos rank_pos = cur().pos;
    decl.rank = expect_int("rank");
    if (decl.rank < 1) fail("rank must be positive", rank_pos);
    if (at_ident("on")) {
      ++i_;
      decl.on = expect_ident("model tag after 'on'");
    }
    if (at_ident("gg_twist")) {
      decl.gg_twist = true;
      ++i_;
    }
    if (at_ident("chern")) {
      ++i_;
      expect_punct("=");
      expect_punct("[");
      decl.has_chern = true;
      decl.chern.push_back(expression());
      while (at_punct(",")) {
        ++i_;
        decl.chern.push_back(expression());
      }
      expect_punct("]");
    }
    expect_punct(";");
    return decl;
  }

  Statement let_binding() {
    LetBinding decl;
    decl.pos = cur().pos;
    ++i_;  // let
    decl.name = declared_name("binding name");
    expect_punct("=");
    decl.value = expression();
    expect_punct(";");
    return decl;
  }

  Statement query() {
    Query q;
    q.pos = cur().pos;
    const std::string head = take().text;
    if (head == "certify_top") {
      q.kind = Query::Kind::CertifyTop;
      q.bundle_name = expect_ident("bundle name");
      q.line_name = expect_ident("line bundle name");
    } else if (head == "certify_xi") {
      q.kind = Query::Kind::CertifyXi;
      q.bundle_name = expect_ident("bundle name");
      q.line_name = expect_ident("line bundle name");
      q.index = expect_int("index i");
    } else if (head == "ch") {
      q.kind = Query::Kind::Ch;
      q.bundle_name = expect_ident("bundle name");
      expect_keyword("upto");
      q.index = expect_int("truncation degree");
    } else if (head == "expand") {
      q.kind = Query::Kind::Expand;
      q.expr_a = expression();
    } else if (head == "oracle") {
      q.kind = Query::Kind::Oracle;
      q.expr_a = expression();
      expect_punct("==");
      q.expr_b = expression();
    } else if (head == "kleiman") {
      q.kind = Query::Kind::Kleiman;
      expect_keyword("d");
      expect_punct("=");
      q.kleiman_d = expect_int("dimension d");
      expect_keyword("i");
      expect_punct("=");
      q.kleiman_i = expect_int("cycle dimension i");
    } else if (head == "syzygy") {
      q.kind = Query::Kind::Syzygy;
      expect_keyword("p");
      expect_punct("=");
      q.syzygy_p = expect_int("codimension p");
      expect_keyword("n");
      expect_punct("=");
      q.syzygy_n = expect_int("integer n");
      expect_keyword("sign");
      expect_punct("=");
      if (at_punct("+")) {
        q.syzygy_sign = 1;
        ++i_;
      } else if (at_punct("-")) {
        q.syzygy_sign = -1;
        ++i_;
      } else {
        fail("expected '+' or '-' after sign=");
      }
      expect_keyword("E");
      expect_punct("=");
      q.bundle_name = expect_ident("bundle name");
      expect_keyword("z");
      expect_punct("=");
      q.expr_a = expression();
    } else if (head == "express") {
      q.kind = Query::Kind::Express;
      q.expr_a = expression();
      expect_keyword("in");
      expect_punct("[");
      q.express_generators.push_back(expect_ident("generator name"));
      while (at_punct(",")) {
        ++i_;
        q.express_generators.push_back(expect_ident("generator name"));
      }
      expect_punct("]");
    } else {
      fail("unknown statement '" + head + "'", q.pos);
    }
    expect_punct(";");
    return q;
  }

  // expr := term (("+"|"-") term)*
  ExprPtr expression() {
    ExprPtr lhs = term();
    while (at_punct("+") || at_punct("-")) {
      auto node = std::make_shared<Expr>();
      node->pos = cur().pos;
      node->kind = take().text == "+" ? Expr::Kind::Add : Expr::Kind::Sub;
      node->a = lhs;
      node->b = term();
      lhs = node;
    }
    return lhs;
  }

  // term := factor ("*" factor)*
  ExprPtr term() {
    ExprPtr lhs = factor();
    while (at_punct("*")) {
      auto node = std::make_shared<Expr>();
      node->pos = cur().pos;
      node->kind = Expr::Kind::Mul;
      ++i_;
      node->a = lhs;
      node->b = factor();
      lhs = node;
    }
    return lhs;
  }

  // factor := "-" factor | power
  ExprPtr factor() {
    if (at_punct("-")) {
      auto node = std::make_shared<Expr>();
      node->pos = cur().pos;
      node->kind = Expr::Kind::Neg;
      ++i_;
      node->a = factor();
      return node;
    }
    return power();
  }

  // power := primary ["^" int]
  ExprPtr power() {
    ExprPtr base = primary();
    if (at_punct("^")) {
      auto node = std::make_shared<Expr>();
      node->pos = cur().pos;
      node->kind = Expr::Kind::Pow;
      ++i_;
      SourcePos epos = cur().pos;
      const long e = expect_int("exponent");
      if (e < 0) fail("class exponents must be nonnegative", epos);
      node->a = base;
      node->exponent = static_cast<int>(e);
      return node;
    }
    return base;
  }

  ExprPtr primary() {
    auto node = std::make_shared<Expr>();
    node->pos = cur().pos;
    if (at(Token::Kind::Int)) {
      const std::string num = take().text;
      if (at_punct("/") && peek().kind == Token::Kind::Int) {
        ++i_;
        const std::string den = take().text;
        node->number = Rational(mpz_class(num), mpz_class(den));
      } else {
        node->number = Rational(mpz_class(num));
      }
      node->kind = Expr::Kind::Number;
      return node;
    }
    if (at_punct("(")) {
      ++i_;
      ExprPtr inner = expression();
      expect_punct(")");
      return inner;
    }
    if (at_ident("sigma") && peek().kind == Token::Kind::Punct && peek().text == "[") {
      node->kind = Expr::Kind::Schubert;
      ++i_;  // sigma
      ++i_;  // [
      node->partition.push_back(static_cast<int>(expect_int("partition part")));
      while (at_punct(",")) {
        ++i_;
        node->partition.push_back(static_cast<int>(expect_int("partition part")));
      }
      expect_punct("]");
      return node;
    }
    if (at_ident("c") && peek().kind == Token::Kind::Punct && peek().text == "(") {
      node->kind = Expr::Kind::Chern;
      ++i_;  // c
      ++i_;  // (
      node->bundle = bundle_ref();
      expect_punct(",");
      node->chern_index = static_cast<int>(expect_int("Chern class index"));
      expect_punct(")");
      return node;
    }
    if (at_ident("ctop") && peek().kind == Token::Kind::Punct && peek().text == "(") {
      node->kind = Expr::Kind::TopChern;
      ++i_;  // ctop
      ++i_;  // (
      node->bundle = bundle_ref();
      expect_punct(")");
      return node;
    }
    if (at(Token::Kind::Ident)) {
      node->kind = Expr::Kind::Symbol;
      node->symbol = take().text;
      return node;
    }
    fail("expected an expression");
  }

  // bundleref := ident ("@" ident ["^" int])*
  BundleRef bundle_ref() {
    BundleRef ref;
    ref.pos = cur().pos;
    ref.base = expect_ident("bundle or line name");
    while (at_punct("@")) {
      ++i_;
      std::string line = expect_ident("line bundle name after '@'");
      long power = 1;
      if (at_punct("^")) {
        ++i_;
        power = expect_int("twist power");
      }
      ref.twists.emplace_back(std::move(line), power);
    }
    return ref;
  }

  std::vector<Token> tokens_;
  std::vector<Diagnostic>& diags_;
  std::size_t i_ = 0;
};

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

void print_expr(std::ostringstream& os, const Expr& e, int parent_prec) {
  const int prec = precedence(e.kind);
  const bool parens = prec < parent_prec;
  if (parens) os << "(";
  switch (e.kind) {
    case Expr::Kind::Number:
      os << e.number.str();
      break;
    case Expr::Kind::Symbol:
      os << e.symbol;
      break;
    case Expr::Kind::Schubert: {
      os << "sigma[";
      for (std::size_t i = 0; i < e.partition.size(); ++i) {
        if (i) os << ",";
        os << e.partition[i];
      }
      os << "]";
      break;
    }
    case Expr::Kind::Chern:
    case Expr::Kind::TopChern: {
      os << (e.kind == Expr::Kind::Chern ? "c(" : "ctop(");
      os << e.bundle.base;
      for (const auto& [line, power] : e.bundle.twists) {
        os << "@" << line;
        if (power != 1) os << "^" << power;
      }
      if (e.kind == Expr::Kind::Chern) os << ", " << e.chern_index;
      os << ")";
      break;
    }
    case Expr::Kind::Neg:
      os << "-";
      print_expr(os, *e.a, prec + 1);
      break;
    case Expr::Kind::Add:
      print_expr(os, *e.a, prec);
      os << " + ";
      print_expr(os, *e.b, prec + 1);
      break;
    case Expr::Kind::Sub:
      print_expr(os, *e.a, prec);
      os << " - ";
      print_expr(os, *e.b, prec + 1);
      break;
    case Expr::Kind::Mul:
      print_expr(os, *e.a, prec);
      os << "*";
      print_expr(os, *e.b, prec + 1);
      break;
    case Expr::Kind::Pow:
      print_expr(os, *e.a, prec + 1);
      os << "^" << e.exponent;
      break;
  }
  if (parens) os << ")";
}

struct StatementPrinter {
  std::ostringstream& os;

  void operator()(const ModelDecl& m) {
    os << "model ";
    switch (m.which) {
      case ModelDecl::Which::Projective:
        os << "P(" << m.params[0] << ")";
        break;
      case ModelDecl::Which::Product:
        os << "PxP(" << m.params[0] << "," << m.params[1] << ")";
        break;
      case ModelDecl::Which::Grassmannian:
        os << "G(" << m.params[0] << "," << m.params[1] << ")";
        break;
      case ModelDecl::Which::Universal:
        os << "universal(" << m.params[0] << ")";
        break;
    }
    os << ";";
  }
  void operator()(const LineDecl& l) {
    os << "line " << l.name;
    if (l.globally_generated) os << " gg";
    if (l.c1) os << " c1 = " << pretty_print(*l.c1);
    os << ";";
  }
  void operator()(const BundleDecl& b) {
    os << "bundle " << b.name << " rank " << b.rank;
    if (b.on) os << " on " << *b.on;
    if (b.gg_twist) os << " gg_twist";
    if (b.has_chern) {
      os << " chern = [";
      for (std::size_t i = 0; i < b.chern.size(); ++i) {
        if (i) os << ", ";
        os << pretty_print(*b.chern[i]);
      }
      os << "]";
    }
    os << ";";
  }
  void operator()(const LetBinding& l) {
    os << "let " << l.name << " = " << pretty_print(*l.value) << ";";
  }
  void operator()(const Query& q) {
    switch (q.kind) {
      case Query::Kind::CertifyTop:
        os << "certify_top " << q.bundle_name << " " << q.line_name;
        break;
      case Query::Kind::CertifyXi:
        os << "certify_xi " << q.bundle_name << " " << q.line_name << " " << q.index;
        break;
      case Query::Kind::Ch:
        os << "ch " << q.bundle_name << " upto " << q.index;
        break;
      case Query::Kind::Expand:
        os << "expand " << pretty_print(*q.expr_a);
        break;
      case Query::Kind::Oracle:
        os << "oracle " << pretty_print(*q.expr_a) << " == " << pretty_print(*q.expr_b);
        break;
      case Query::Kind::Kleiman:
        os << "kleiman d = " << q.kleiman_d << " i = " << q.kleiman_i;
        break;
      case Query::Kind::Syzygy:
        os << "syzygy p = " << q.syzygy_p << " n = " << q.syzygy_n << " sign = "
           << (q.syzygy_sign >= 0 ? "+" : "-") << " E = " << q.bundle_name
           << " z = " << pretty_print(*q.expr_a);
        break;
      case Query::Kind::Express: {
        os << "express " << pretty_print(*q.expr_a) << " in [";
        for (std::size_t i = 0; i < q.express_generators.size(); ++i) {
          if (i) os << ", ";
          os << q.express_generators[i];
        }
        os << "]";
        break;
      }
    }
    os << ";";
  }
};

}  // namespace

ParseResult parse(std::string_view source) {
  ParseResult result;
  Lexer lexer(source);
  auto tokens = lexer.run(result.diagnostics);
  Parser parser(std::move(tokens), result.diagnostics);
  Program program = parser.run();
  bool any_error = false;
  for (const auto& d : result.diagnostics)
    if (d.severity == Diagnostic::Severity::Error) any_error = true;
  if (!any_error) result.program = std::move(program);
  return result;
}

std::string pretty_print(const Expr& expr) {
  std::ostringstream os;
  print_expr(os, expr, 0);
  return os.str();
}

std::string pretty_print(const Program& program) {
  std::ostringstream os;
  for (const auto& st : program.statements) {
    std::visit(StatementPrinter{os}, st);
    os << "\n";
  }
  return os.str();
}

SourcePos statement_pos(const Statement& st) {
  return std::visit([](const auto& s) { return s.pos; }, st);
}

}  // namespace chernforge
