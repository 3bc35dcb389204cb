#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chernforge/rational.hpp"

namespace chernforge {

struct SourcePos {
  int line = 1;
  int column = 1;
};

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string message;
  SourcePos pos;

  std::string str() const;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// A bundle reference inside an expression: a declared bundle or line name,
/// optionally twisted by line powers, e.g. E, E@L, E@L^3@M^-1.
struct BundleRef {
  std::string base;
  std::vector<std::pair<std::string, long>> twists;
  SourcePos pos;
};

/// Expression AST. Numbers are exact integers or fractions; symbols resolve
/// to generators, let bindings or line names at execution time.
struct Expr {
  enum class Kind {
    Number,    // number
    Symbol,    // symbol
    Schubert,  // partition (sigma[...] literal)
    Chern,     // bundle, chern_index  — c(B, k)
    TopChern,  // bundle               — ctop(B)
    Neg,
    Add,
    Sub,
    Mul,
    Pow,  // a, exponent
  };

  Kind kind = Kind::Number;
  SourcePos pos;
  Rational number;
  std::string symbol;
  std::vector<int> partition;
  BundleRef bundle;
  int chern_index = 0;
  ExprPtr a, b;
  int exponent = 0;
};

struct ModelDecl {
  enum class Which { Projective, Product, Grassmannian, Universal };
  Which which = Which::Projective;
  std::vector<long> params;
  SourcePos pos;
};

struct LineDecl {
  std::string name;
  bool globally_generated = false;
  ExprPtr c1;  // null: fresh universal generator c1_<name>
  SourcePos pos;
};

struct BundleDecl {
  std::string name;
  long rank = 0;
  std::optional<std::string> on;  // optional ambient-model tag, checked
  bool gg_twist = false;
  bool has_chern = false;
  std::vector<ExprPtr> chern;  // explicit classes; else fresh generators
  SourcePos pos;
};

struct LetBinding {
  std::string name;
  ExprPtr value;
  SourcePos pos;
};

struct Query {
  enum class Kind { CertifyTop, CertifyXi, Ch, Expand, Oracle, Kleiman, Syzygy, Express };
  Kind kind = Kind::Expand;
  SourcePos pos;

  std::string bundle_name;  // certify_*, ch, syzygy E=
  std::string line_name;    // certify_*
  long index = 0;           // certify_xi i / ch upto
  ExprPtr expr_a;           // expand / oracle lhs / express target / syzygy z
  ExprPtr expr_b;           // oracle rhs
  long kleiman_d = 0, kleiman_i = 0;
  long syzygy_p = 0, syzygy_n = 0;
  int syzygy_sign = 1;
  std::vector<std::string> express_generators;
};

using Statement = std::variant<ModelDecl, LineDecl, BundleDecl, LetBinding, Query>;

struct Program {
  std::vector<Statement> statements;
};

struct ParseResult {
  std::optional<Program> program;  // present only when there are no errors
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return program.has_value(); }
};

/// Recursive-descent parse; every error carries a (line, column) position and
/// parsing recovers at statement boundaries so all errors are reported.
ParseResult parse(std::string_view source);

/// Canonical source form; parse-then-pretty-print-then-parse is a fixed point.
std::string pretty_print(const Program& program);
std::string pretty_print(const Expr& expr);

SourcePos statement_pos(const Statement& st);

}  // namespace chernforge
