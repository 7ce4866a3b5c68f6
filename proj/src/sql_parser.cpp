#include <algorithm>
#include <array>
#include <cctype>

#include "idxminer/catalog.hpp"
#include "idxminer/error.hpp"
#include "idxminer/sql.hpp"

namespace idxminer::sql {
namespace {

enum class Tok { kIdent, kQuotedIdent, kNumber, kString, kSymbol, kEnd };

struct Token {
  Tok type;
  std::string text;  // identifiers uppercased in `upper`, raw in `text`
  std::string upper;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok t, std::string text, std::size_t pos) {
    std::string up = text;
    std::transform(up.begin(), up.end(), up.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    out.push_back({t, std::move(text), std::move(up), pos});
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '-') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const auto start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' ||
                              s[i] == '$')) {
        ++i;
      }
      push(Tok::kIdent, std::string(s.substr(start, i - start)), start);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      const auto start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      }
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        auto j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
          i = j;
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        }
      }
      push(Tok::kNumber, std::string(s.substr(start, i - start)), start);
    } else if (c == '\'') {
      const auto start = i++;
      std::string value;
      bool closed = false;
      while (i < s.size()) {
        if (s[i] == '\'') {
          if (i + 1 < s.size() && s[i + 1] == '\'') {
            value += '\'';
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        value += s[i++];
      }
      if (!closed) throw SyntaxError(start, "'", "unterminated string literal at offset " + std::to_string(start));
      push(Tok::kString, std::move(value), start);
    } else if (c == '"' || c == '`' || c == '[') {
      const char close = c == '[' ? ']' : c;
      const auto start = i++;
      const auto end = s.find(close, i);
      if (end == std::string_view::npos) {
        throw SyntaxError(start, std::string(1, c),
                          "unterminated quoted identifier at offset " + std::to_string(start));
      }
      push(Tok::kQuotedIdent, std::string(s.substr(i, end - i)), start);
      i = end + 1;
    } else {
      static constexpr std::array<std::string_view, 6> kTwo = {"<=", ">=", "<>", "!=", "||", "=="};
      const auto two = s.substr(i, 2);
      if (std::find(kTwo.begin(), kTwo.end(), two) != kTwo.end()) {
        push(Tok::kSymbol, two == "!=" ? "<>" : two == "==" ? "=" : std::string(two), i);
        i += 2;
      } else if (std::string_view("=<>(),.*+-/;%").find(c) != std::string_view::npos) {
        push(Tok::kSymbol, std::string(1, c), i);
        ++i;
      } else {
        throw SyntaxError(i, std::string(1, c),
                          "unexpected character '" + std::string(1, c) + "' at offset " +
                              std::to_string(i));
      }
    }
  }
  out.push_back({Tok::kEnd, "", "", s.size()});
  return out;
}

constexpr std::array<std::string_view, 41> kReserved = {
    "SELECT", "FROM",  "WHERE",  "GROUP",  "BY",     "HAVING",    "ORDER",  "AND",
    "OR",     "NOT",   "IN",     "BETWEEN", "LIKE",  "IS",        "NULL",   "EXISTS",
    "UPDATE", "SET",   "AS",     "ASC",    "DESC",   "DISTINCT",  "CASE",   "WHEN",
    "THEN",   "ELSE",  "END",    "JOIN",   "ON",     "INNER",     "LEFT",   "RIGHT",
    "OUTER",  "CROSS", "UNION",  "LIMIT",  "INSERT", "DELETE",    "WITH",   "INTERVAL",
    "ALL"};

bool is_reserved(const Token& t) {
  return t.type == Tok::kIdent &&
         std::find(kReserved.begin(), kReserved.end(), t.upper) != kReserved.end();
}

constexpr std::array<std::string_view, 9> kUnsupportedClause = {
    "JOIN", "INNER", "LEFT", "RIGHT", "CROSS", "UNION", "LIMIT", "INTERVAL", "ALL"};

class Parser {
 public:
  explicit Parser(std::string_view sql) : toks_(lex(sql)) {}

  Statement parse_statement() {
    Statement stmt;
    if (peek_kw("SELECT")) {
      stmt = parse_select();
    } else if (peek_kw("UPDATE")) {
      stmt = parse_update();
    } else if (peek().type == Tok::kIdent &&
               (peek().upper == "INSERT" || peek().upper == "DELETE" ||
                peek().upper == "CREATE" || peek().upper == "DROP" ||
                peek().upper == "ALTER" || peek().upper == "WITH" ||
                peek().upper == "MERGE")) {
      throw UnsupportedError(peek().upper + " statement");
    } else {
      fail("expected SELECT or UPDATE");
    }
    accept_symbol(";");
    if (peek().type != Tok::kEnd) fail("unexpected trailing input");
    return stmt;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const auto& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool peek_kw(std::string_view kw, std::size_t ahead = 0) const {
    return peek(ahead).type == Tok::kIdent && peek(ahead).upper == kw;
  }
  bool peek_symbol(std::string_view s) const {
    return peek().type == Tok::kSymbol && peek().text == s;
  }
  bool accept_kw(std::string_view kw) {
    if (!peek_kw(kw)) return false;
    next();
    return true;
  }
  bool accept_symbol(std::string_view s) {
    if (!peek_symbol(s)) return false;
    next();
    return true;
  }
  void expect_kw(std::string_view kw) {
    if (!accept_kw(kw)) fail("expected " + std::string(kw));
  }
  void expect_symbol(std::string_view s) {
    if (!accept_symbol(s)) fail("expected '" + std::string(s) + "'");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const auto& t = peek();
    const std::string shown = t.type == Tok::kEnd ? "end of input" : t.text;
    throw SyntaxError(t.pos, shown,
                      "syntax error at offset " + std::to_string(t.pos) + " near '" + shown +
                          "': " + msg);
  }

  void check_unsupported() const {
    if (peek().type == Tok::kIdent &&
        std::find(kUnsupportedClause.begin(), kUnsupportedClause.end(), peek().upper) !=
            kUnsupportedClause.end()) {
      throw UnsupportedError(peek().upper);
    }
  }

  std::string identifier(const char* what) {
    const auto& t = peek();
    if (t.type == Tok::kQuotedIdent || (t.type == Tok::kIdent && !is_reserved(t))) {
      next();
      return to_lower(t.text);
    }
    check_unsupported();
    fail(std::string("expected ") + what);
  }

  TableRef parse_table_ref() {
    if (peek_symbol("(")) throw UnsupportedError("derived table in FROM");
    TableRef ref;
    ref.name = identifier("table name");
    if (accept_symbol(".")) ref.name = identifier("table name");  // schema.table
    if (accept_kw("AS")) {
      ref.alias = identifier("alias");
    } else if (peek().type == Tok::kQuotedIdent ||
               (peek().type == Tok::kIdent && !is_reserved(peek()))) {
      ref.alias = identifier("alias");
    }
    return ref;
  }

  SelectStmt parse_select() {
    expect_kw("SELECT");
    SelectStmt s;
    if (accept_kw("DISTINCT")) s.distinct = true;
    do {
      SelectItem item;
      item.expr = parse_expr();
      if (accept_kw("AS")) {
        item.alias = identifier("alias");
      } else if (peek().type == Tok::kQuotedIdent ||
                 (peek().type == Tok::kIdent && !is_reserved(peek()))) {
        item.alias = identifier("alias");
      }
      s.select_list.push_back(std::move(item));
    } while (accept_symbol(","));
    expect_kw("FROM");
    do {
      s.from.push_back(parse_table_ref());
    } while (accept_symbol(","));
    check_unsupported();
    if (accept_kw("WHERE")) s.where = parse_expr();
    if (accept_kw("GROUP")) {
      expect_kw("BY");
      do {
        s.group_by.push_back(parse_expr());
      } while (accept_symbol(","));
    }
    if (accept_kw("HAVING")) s.having = parse_expr();
    if (accept_kw("ORDER")) {
      expect_kw("BY");
      do {
        OrderItem item{parse_expr(), false};
        if (accept_kw("DESC")) {
          item.descending = true;
        } else {
          accept_kw("ASC");
        }
        s.order_by.push_back(std::move(item));
      } while (accept_symbol(","));
    }
    check_unsupported();
    return s;
  }

  UpdateStmt parse_update() {
    expect_kw("UPDATE");
    UpdateStmt u;
    u.table = parse_table_ref();
    expect_kw("SET");
    do {
      Assignment a;
      a.column = parse_column_ref();
      expect_symbol("=");
      a.value = parse_expr();
      u.set.push_back(std::move(a));
    } while (accept_symbol(","));
    if (accept_kw("WHERE")) u.where = parse_expr();
    return u;
  }

  Expr parse_column_ref() {
    Expr e;
    e.kind = ExprKind::kColumn;
    e.position = peek().pos;
    e.text = identifier("column name");
    if (accept_symbol(".")) {
      e.qualifier = e.text;
      e.text = identifier("column name");
    }
    return e;
  }

  std::shared_ptr<const SelectStmt> parse_subquery_body() {
    // '(' already consumed
    auto sub = std::make_shared<SelectStmt>(parse_select());
    expect_symbol(")");
    return sub;
  }

  static Expr node(ExprKind kind, std::size_t pos, std::string text = {}) {
    Expr e;
    e.kind = kind;
    e.position = pos;
    e.text = std::move(text);
    return e;
  }

  Expr parse_expr() { return parse_or(); }

  Expr parse_or() {
    Expr lhs = parse_and();
    while (peek_kw("OR")) {
      const auto p = next().pos;
      Expr e = node(ExprKind::kOr, p);
      e.args.push_back(std::move(lhs));
      e.args.push_back(parse_and());
      lhs = std::move(e);
    }
    return lhs;
  }

  Expr parse_and() {
    Expr lhs = parse_not();
    while (peek_kw("AND")) {
      const auto p = next().pos;
      Expr e = node(ExprKind::kAnd, p);
      e.args.push_back(std::move(lhs));
      e.args.push_back(parse_not());
      lhs = std::move(e);
    }
    return lhs;
  }

  Expr parse_not() {
    if (peek_kw("NOT") && !peek_kw("EXISTS", 1)) {
      const auto p = next().pos;
      Expr e = node(ExprKind::kNot, p);
      e.args.push_back(parse_not());
      return e;
    }
    return parse_predicate();
  }

  Expr parse_predicate() {
    const auto start = peek().pos;
    if (peek_kw("EXISTS") || (peek_kw("NOT") && peek_kw("EXISTS", 1))) {
      Expr e = node(ExprKind::kExists, start);
      e.negated = accept_kw("NOT");
      expect_kw("EXISTS");
      expect_symbol("(");
      e.subquery = parse_subquery_body();
      return e;
    }
    Expr lhs = parse_additive();
    if (peek().type == Tok::kSymbol &&
        (peek().text == "=" || peek().text == "<" || peek().text == ">" || peek().text == "<=" ||
         peek().text == ">=" || peek().text == "<>")) {
      Expr e = node(ExprKind::kCompare, peek().pos, next().text);
      e.args.push_back(std::move(lhs));
      e.args.push_back(parse_additive());
      return e;
    }
    if (accept_kw("IS")) {
      Expr e = node(ExprKind::kIsNull, start);
      e.negated = accept_kw("NOT");
      expect_kw("NULL");
      e.args.push_back(std::move(lhs));
      return e;
    }
    bool negated = false;
    if (peek_kw("NOT") && (peek_kw("BETWEEN", 1) || peek_kw("LIKE", 1) || peek_kw("IN", 1))) {
      next();
      negated = true;
    }
    if (accept_kw("BETWEEN")) {
      Expr e = node(ExprKind::kBetween, start);
      e.negated = negated;
      e.args.push_back(std::move(lhs));
      e.args.push_back(parse_additive());
      expect_kw("AND");
      e.args.push_back(parse_additive());
      return e;
    }
    if (accept_kw("LIKE")) {
      Expr e = node(ExprKind::kLike, start);
      e.negated = negated;
      e.args.push_back(std::move(lhs));
      e.args.push_back(parse_additive());
      return e;
    }
    if (accept_kw("IN")) {
      expect_symbol("(");
      if (peek_kw("SELECT")) {
        Expr e = node(ExprKind::kInSubquery, start);
        e.negated = negated;
        e.args.push_back(std::move(lhs));
        e.subquery = parse_subquery_body();
        return e;
      }
      Expr e = node(ExprKind::kInList, start);
      e.negated = negated;
      e.args.push_back(std::move(lhs));
      do {
        e.args.push_back(parse_additive());
      } while (accept_symbol(","));
      expect_symbol(")");
      return e;
    }
    if (negated) fail("expected BETWEEN, LIKE or IN after NOT");
    return lhs;
  }

  Expr parse_additive() {
    Expr lhs = parse_multiplicative();
    while (peek_symbol("+") || peek_symbol("-") || peek_symbol("||")) {
      Expr e = node(ExprKind::kArith, peek().pos, next().text);
      e.args.push_back(std::move(lhs));
      e.args.push_back(parse_multiplicative());
      lhs = std::move(e);
    }
    return lhs;
  }

  Expr parse_multiplicative() {
    Expr lhs = parse_unary();
    while (peek_symbol("*") || peek_symbol("/") || peek_symbol("%")) {
      Expr e = node(ExprKind::kArith, peek().pos, next().text);
      e.args.push_back(std::move(lhs));
      e.args.push_back(parse_unary());
      lhs = std::move(e);
    }
    return lhs;
  }

  Expr parse_unary() {
    if (peek_symbol("-") || peek_symbol("+")) {
      const auto& t = next();
      Expr operand = parse_unary();
      if (t.text == "+") return operand;
      Expr e = node(ExprKind::kNegate, t.pos);
      e.args.push_back(std::move(operand));
      return e;
    }
    return parse_primary();
  }

  Expr parse_primary() {
    const auto& t = peek();
    switch (t.type) {
      case Tok::kNumber:
        next();
        return node(ExprKind::kNumber, t.pos, t.text);
      case Tok::kString:
        next();
        return node(ExprKind::kString, t.pos, t.text);
      case Tok::kSymbol:
        if (t.text == "*") {
          next();
          return node(ExprKind::kStar, t.pos);
        }
        if (t.text == "(") {
          next();
          if (peek_kw("SELECT")) {
            Expr e = node(ExprKind::kSubquery, t.pos);
            e.subquery = parse_subquery_body();
            return e;
          }
          Expr inner = parse_expr();
          expect_symbol(")");
          return inner;
        }
        fail("expected expression");
      case Tok::kEnd:
        fail("expected expression");
      case Tok::kQuotedIdent:
        return parse_column_ref();
      case Tok::kIdent:
        break;
    }
    if (t.upper == "NULL") {
      next();
      return node(ExprKind::kNull, t.pos);
    }
    if (t.upper == "CASE") return parse_case();
    if ((t.upper == "DATE" || t.upper == "TIMESTAMP" || t.upper == "TIME") &&
        peek(1).type == Tok::kString) {
      next();
      Expr e = node(ExprKind::kString, t.pos, next().text);
      e.qualifier = to_lower(t.text);
      return e;
    }
    if (!is_reserved(t) && peek(1).type == Tok::kSymbol && peek(1).text == "(") {
      next();
      next();
      Expr e = node(ExprKind::kFunction, t.pos, to_lower(t.text));
      if (accept_symbol(")")) return e;
      if (accept_kw("DISTINCT")) e.distinct = true;
      do {
        e.args.push_back(parse_expr());
      } while (accept_symbol(","));
      expect_symbol(")");
      return e;
    }
    check_unsupported();
    if (t.upper == "EXTRACT" || t.upper == "SUBSTRING" || t.upper == "CAST") {
      throw UnsupportedError(t.upper);
    }
    return parse_column_ref();
  }

  Expr parse_case() {
    Expr e = node(ExprKind::kCase, next().pos);
    if (!peek_kw("WHEN")) throw UnsupportedError("simple CASE");
    while (accept_kw("WHEN")) {
      e.args.push_back(parse_expr());
      expect_kw("THEN");
      e.args.push_back(parse_expr());
    }
    if (e.args.empty()) fail("expected WHEN");
    if (accept_kw("ELSE")) e.args.push_back(parse_expr());
    expect_kw("END");
    return e;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Statement parse_query(std::string_view sql) { return Parser(sql).parse_statement(); }

}  // namespace idxminer::sql
