// SPDX-License-Identifier: Apache-2.0
#include "mover/parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <stdexcept>

namespace mover {
namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int column = 1;
  int end_line = 1;
  int end_column = 1;
};

struct Failure {
  ParseError error;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= text_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          advance();
        t.kind = Tok::Ident;
        t.text = std::string(text_.substr(start, pos_ - start));
        // Mover keywords carry a hyphen: both-mover, right-mover, ...
        if ((t.text == "both" || t.text == "right" || t.text == "left" || t.text == "non") &&
            text_.substr(pos_, 6) == "-mover") {
          for (int i = 0; i < 6; ++i) advance();
          t.text += "-mover";
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          advance();
        t.kind = Tok::Int;
        t.text = std::string(text_.substr(start, pos_ - start));
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
        if (ec != std::errc()) fail(t, "integer literal out of range");
      } else {
        static const char* const kPuncts[] = {"==>", "==", "!=", "<=", ">=", "&&", "||", "~=",
                                              "::",  "(",  ")",  "{",  "}",  ";",  ",",  "=",
                                              "<",   ">",  "+",  "-",  "*",  "!"};
        bool matched = false;
        for (const char* p : kPuncts) {
          std::string_view pv(p);
          if (text_.substr(pos_, pv.size()) == pv) {
            for (std::size_t i = 0; i < pv.size(); ++i) advance();
            t.kind = Tok::Punct;
            t.text = std::string(pv);
            matched = true;
            break;
          }
        }
        if (!matched) fail(t, std::string("unexpected character '") + c + "'");
      }
      t.end_line = line_;
      t.end_column = col_;
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
        advance();
      if (text_.substr(pos_, 2) == "//") {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      if (text_.substr(pos_, 2) == "/*") {
        Token at;
        at.line = line_;
        at.column = col_;
        advance();
        advance();
        while (pos_ < text_.size() && text_.substr(pos_, 2) != "*/") advance();
        if (pos_ >= text_.size()) fail(at, "unterminated block comment");
        advance();
        advance();
        continue;
      }
      return;
    }
  }

  [[noreturn]] void fail(const Token& at, std::string msg) {
    throw Failure{{SourceSpan{file_, at.line, at.column, at.line, at.column}, std::move(msg)}};
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool is_mover_keyword(const std::string& s) { return from_keyword(s).has_value(); }

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string file) : toks_(std::move(toks)), file_(std::move(file)) {}

  Program program() {
    Program p;
    p.file = file_;
    if (peek().kind == Tok::End) fail(peek(), "empty program");
    // header
    for (;;) {
      if (accept_word("bits")) {
        p.bits = static_cast<int>(expect_int());
        p.bits_given = true;
        expect(";");
      } else if (accept_word("listdepth")) {
        p.list_depth = static_cast<int>(expect_int());
        p.depth_given = true;
        expect(";");
      } else {
        break;
      }
    }
    // declarations
    for (;;) {
      const Token& t = peek();
      if (t.kind != Tok::Ident) break;
      if (t.text == "init") break;
      if (t.text == "atomic" || t.text == "relies") {
        p.fns.push_back(fn_decl());
      } else if (t.text == "int" || t.text == "lock" || t.text == "optional" || t.text == "list" ||
                 t.text == "local") {
        p.vars.push_back(var_decl());
      } else {
        fail(t, "unknown keyword '" + t.text + "'");
      }
    }
    expect_word("init");
    expect("{");
    while (!accept("}")) {
      InitEntry e;
      e.var = expect_ident();
      expect("=");
      e.value = expr();
      expect(";");
      p.init.push_back(std::move(e));
    }
    if (accept_word("relies")) {
      p.relies = expr();
      expect(";");
    }
    if (accept_word("guarantees")) {
      p.guarantees = expr();
      expect(";");
    }
    if (!is_word(peek(), "thread")) fail(peek(), "expected 'thread'");
    while (accept_word("thread")) p.threads.push_back(block());
    if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "' after threads");
    p.number();
    return p;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    std::size_t i = std::min(pos_ + k, toks_.size() - 1);
    return toks_[i];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  static bool is_punct(const Token& t, std::string_view p) {
    return t.kind == Tok::Punct && t.text == p;
  }
  static bool is_word(const Token& t, std::string_view w) {
    return t.kind == Tok::Ident && t.text == w;
  }
  bool accept(std::string_view p) {
    if (is_punct(peek(), p)) {
      next();
      return true;
    }
    return false;
  }
  bool accept_word(std::string_view w) {
    if (is_word(peek(), w)) {
      next();
      return true;
    }
    return false;
  }
  void expect(std::string_view p) {
    if (!accept(p)) fail(peek(), "expected '" + std::string(p) + "'" + found());
  }
  void expect_word(std::string_view w) {
    if (!accept_word(w)) fail(peek(), "expected '" + std::string(w) + "'" + found());
  }
  std::string expect_ident() {
    if (peek().kind != Tok::Ident) fail(peek(), "expected identifier" + found());
    return next().text;
  }
  std::int64_t expect_int() {
    if (peek().kind != Tok::Int) fail(peek(), "expected integer" + found());
    return next().value;
  }
  std::string found() const {
    if (peek().kind == Tok::End) return ", found end of input";
    return ", found '" + peek().text + "'";
  }

  SourceSpan span_from(const Token& start) const {
    const Token& last = toks_[pos_ > 0 ? pos_ - 1 : 0];
    return SourceSpan{file_, start.line, start.column, last.end_line, last.end_column};
  }

  [[noreturn]] void fail(const Token& at, std::string msg) const {
    throw Failure{{SourceSpan{file_, at.line, at.column, at.end_line, at.end_column}, std::move(msg)}};
  }

  // ---- declarations ----

  TypeKind type_name() {
    const Token& t = peek();
    if (accept_word("int")) return TypeKind::Int;
    if (accept_word("lock")) return TypeKind::Lock;
    if (accept_word("optional")) {
      expect_word("int");
      return TypeKind::OptInt;
    }
    if (accept_word("list")) {
      expect_word("int");
      return TypeKind::ListInt;
    }
    fail(t, "expected a type" + found());
  }

  VarDecl var_decl() {
    const Token& start = peek();
    VarDecl v;
    if (accept_word("local")) {
      v.local = true;
      v.type = type_name();
      if (v.type == TypeKind::Lock) fail(start, "locks cannot be thread-local");
      v.name = expect_ident();
      if (!is_punct(peek(), ";")) fail(peek(), "thread-local variables take no mover clauses");
      expect(";");
      v.span = span_from(start);
      return v;
    }
    v.type = type_name();
    v.name = expect_ident();
    while (!accept(";")) {
      const Token& cstart = peek();
      std::optional<Access> access;
      if (accept_word("read")) access = Access::Read;
      else if (accept_word("write")) access = Access::Write;
      const Token& kw = peek();
      if (kw.kind != Tok::Ident || !is_mover_keyword(kw.text))
        fail(kw, "malformed mover clause: expected a mover keyword" + found());
      next();
      Effect eff = *from_keyword(kw.text);
      ExprPtr cond;
      if (accept_word("if")) cond = expr();
      else cond = Expr::boolean(true);
      SourceSpan sp = span_from(cstart);
      if (access) {
        v.clauses.push_back({*access, eff, cond, sp});
      } else {
        v.clauses.push_back({Access::Read, eff, cond, sp});
        v.clauses.push_back({Access::Write, eff, cond, sp});
      }
    }
    v.span = span_from(start);
    return v;
  }

  FnDecl fn_decl() {
    const Token& start = peek();
    FnDecl f;
    if (accept_word("atomic")) {
      f.atomic = true;
      const Token& kw = peek();
      if (kw.kind == Tok::Ident && is_mover_keyword(kw.text)) {
        next();
        f.effect = *from_keyword(kw.text);
        f.effect_given = true;
      }
      expect_word("requires");
      f.requires_ = expr();
      f.ensures = ensures_list();
    } else {
      expect_word("relies");
      f.atomic = false;
      f.relies = expr();
      expect_word("guarantees");
      f.guarantees = expr();
      expect_word("requires");
      f.requires_ = expr();
      f.ensures = ensures_list();
    }
    f.name = expect_ident();
    expect("(");
    expect(")");
    f.body = block();
    f.span = span_from(start);
    return f;
  }

  ExprPtr ensures_list() {
    expect_word("ensures");
    ExprPtr e = expr();
    while (accept_word("ensures")) e = Expr::binary(Op::And, e, expr(), e->span);
    return e;
  }

  // ---- statements ----

  StmtPtr make(StmtKind k, const Token& start) {
    auto s = std::make_shared<Stmt>();
    s->kind = k;
    s->span = span_from(start);
    return s;
  }

  StmtPtr block() {
    const Token& start = peek();
    expect("{");
    auto b = std::make_shared<Stmt>();
    b->kind = StmtKind::Block;
    while (!accept("}")) {
      if (peek().kind == Tok::End) fail(peek(), "unterminated block");
      b->children.push_back(stmt());
    }
    b->span = span_from(start);
    return b;
  }

  StmtPtr stmt() {
    const Token& start = peek();
    if (start.kind != Tok::Ident) fail(start, "expected a statement" + found());
    const std::string& w = start.text;
    if (w == "skip" || w == "wrong" || w == "yield") {
      next();
      expect(";");
      return make(w == "skip" ? StmtKind::Skip : w == "wrong" ? StmtKind::Wrong : StmtKind::Yield,
                  start);
    }
    if ((w == "acquire" || w == "release") && is_punct(peek(1), "(")) {
      next();
      expect("(");
      std::string lock = expect_ident();
      expect(")");
      expect(";");
      auto s = make(w == "acquire" ? StmtKind::Acquire : StmtKind::Release, start);
      s->target = lock;
      return s;
    }
    if (w == "assert") {
      next();
      ExprPtr f = expr();
      expect(";");
      auto s = make(StmtKind::If, start);
      s->from_assert = true;
      s->cond.kind = Cond::Kind::Test;
      s->cond.test = f;
      s->cond.span = s->span;
      auto skip = make(StmtKind::Skip, start);
      auto wrong = make(StmtKind::Wrong, start);
      auto then_b = make(StmtKind::Block, start);
      then_b->children.push_back(skip);
      auto else_b = make(StmtKind::Block, start);
      else_b->children.push_back(wrong);
      s->children = {then_b, else_b};
      return s;
    }
    if (w == "if") {
      next();
      expect("(");
      Cond c = cond();
      expect(")");
      StmtPtr then_b = block();
      StmtPtr else_b;
      if (accept_word("else")) {
        else_b = block();
      } else {
        else_b = std::make_shared<Stmt>();
        else_b->kind = StmtKind::Block;
        else_b->span = then_b->span;
      }
      auto s = make(StmtKind::If, start);
      s->cond = std::move(c);
      s->children = {then_b, else_b};
      return s;
    }
    if (w == "while") {
      next();
      expect("(");
      Cond c = cond();
      expect(")");
      ExprPtr inv;
      if (accept_word("invariant")) inv = expr();
      StmtPtr body = block();
      auto s = make(StmtKind::While, start);
      s->cond = std::move(c);
      s->invariant = inv;
      s->children = {body};
      return s;
    }
    // IDENT-led forms
    std::string name = next().text;
    if (accept("(")) {
      expect(")");
      expect(";");
      auto s = make(StmtKind::Call, start);
      s->target = name;
      return s;
    }
    if (accept("~=")) {
      std::string src = expect_ident();
      expect(";");
      auto s = make(StmtKind::UnstableRead, start);
      s->target = name;
      s->source = src;
      return s;
    }
    if (accept("=")) {
      ExprPtr e = expr();
      expect(";");
      auto s = make(StmtKind::Assign, start);
      s->target = name;
      s->expr = e;
      return s;
    }
    fail(start, "unknown statement starting with '" + name + "'");
  }

  Cond cond() {
    const Token& start = peek();
    bool neg = false;
    if (is_punct(peek(), "!") && is_word(peek(1), "cas") && is_punct(peek(2), "(")) {
      next();
      neg = true;
    }
    if (is_word(peek(), "cas") && is_punct(peek(1), "(")) {
      next();
      expect("(");
      Cond c;
      c.kind = Cond::Kind::Cas;
      c.negated = neg;
      c.var = expect_ident();
      expect(",");
      c.expected = expr();
      expect(",");
      c.desired = expr();
      expect(")");
      c.span = span_from(start);
      return c;
    }
    Cond c;
    c.kind = Cond::Kind::Test;
    c.test = expr();
    c.span = span_from(start);
    return c;
  }

  // ---- expressions: ==> < || < && < comparison < :: < +,- < * < unary ----

  ExprPtr expr() { return implication(); }

  ExprPtr implication() {
    const Token& start = peek();
    ExprPtr lhs = disjunction();
    if (accept("==>")) return Expr::binary(Op::Implies, lhs, implication(), span_from(start));
    return lhs;
  }

  ExprPtr disjunction() {
    const Token& start = peek();
    ExprPtr e = conjunction();
    while (accept("||")) e = Expr::binary(Op::Or, e, conjunction(), span_from(start));
    return e;
  }

  ExprPtr conjunction() {
    const Token& start = peek();
    ExprPtr e = comparison();
    while (accept("&&")) e = Expr::binary(Op::And, e, comparison(), span_from(start));
    return e;
  }

  ExprPtr comparison() {
    const Token& start = peek();
    ExprPtr e = cons();
    static const std::pair<const char*, Op> kOps[] = {{"==", Op::Eq}, {"!=", Op::Ne},
                                                      {"<=", Op::Le}, {">=", Op::Ge},
                                                      {"<", Op::Lt},  {">", Op::Gt}};
    for (const auto& [text, op] : kOps) {
      if (accept(text)) return Expr::binary(op, e, cons(), span_from(start));
    }
    return e;
  }

  ExprPtr cons() {
    const Token& start = peek();
    ExprPtr e = additive();
    if (accept("::")) return Expr::binary(Op::Cons, e, cons(), span_from(start));
    return e;
  }

  ExprPtr additive() {
    const Token& start = peek();
    ExprPtr e = multiplicative();
    for (;;) {
      if (accept("+")) e = Expr::binary(Op::Add, e, multiplicative(), span_from(start));
      else if (accept("-")) e = Expr::binary(Op::Sub, e, multiplicative(), span_from(start));
      else return e;
    }
  }

  ExprPtr multiplicative() {
    const Token& start = peek();
    ExprPtr e = unary();
    while (accept("*")) e = Expr::binary(Op::Mul, e, unary(), span_from(start));
    return e;
  }

  ExprPtr unary() {
    const Token& start = peek();
    if (accept("!")) return Expr::unary(Op::Not, unary(), span_from(start));
    if (accept("-")) {
      if (peek().kind == Tok::Int) {
        std::int64_t v = next().value;
        return Expr::integer(-v, span_from(start));
      }
      return Expr::unary(Op::Neg, unary(), span_from(start));
    }
    return primary();
  }

  ExprPtr primary() {
    const Token& start = peek();
    if (start.kind == Tok::Int) {
      next();
      return Expr::integer(start.value, span_from(start));
    }
    if (accept("(")) {
      ExprPtr e = expr();
      expect(")");
      return e;
    }
    if (start.kind != Tok::Ident) fail(start, "expected an expression" + found());
    const std::string& w = start.text;
    if (w == "true" || w == "false") {
      next();
      return Expr::boolean(w == "true", span_from(start));
    }
    if (w == "None") {
      next();
      return Expr::leaf(ExprKind::None, span_from(start));
    }
    if (w == "Nil") {
      next();
      return Expr::leaf(ExprKind::Nil, span_from(start));
    }
    if (w == "tid") {
      next();
      return Expr::leaf(ExprKind::Tid, span_from(start));
    }
    if (w == "old" && is_punct(peek(1), "(")) {
      next();
      expect("(");
      std::string n = expect_ident();
      expect(")");
      return Expr::old(n, span_from(start));
    }
    if ((w == "even" || w == "head" || w == "tail") && is_punct(peek(1), "(")) {
      next();
      expect("(");
      ExprPtr a = expr();
      expect(")");
      Op op = w == "even" ? Op::Even : w == "head" ? Op::Head : Op::Tail;
      return Expr::call(op, a, span_from(start));
    }
    if (is_reserved(w)) fail(start, "unexpected keyword '" + w + "' in expression");
    next();
    return Expr::var(w, span_from(start));
  }

  static bool is_reserved(const std::string& w) {
    static const char* const kWords[] = {
        "if",    "else",   "while",   "skip",     "wrong",    "yield",      "assert",
        "read",  "write",  "init",    "thread",   "atomic",   "relies",     "guarantees",
        "requires", "ensures", "invariant", "local", "int", "lock", "optional", "list", "cas",
        "acquire", "release", "bits", "listdepth"};
    for (const char* k : kWords)
      if (w == k) return true;
    return is_mover_keyword(w);
  }

  std::vector<Token> toks_;
  std::string file_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseResult parse(std::string_view text, std::string file) {
  try {
    Lexer lex(text, file);
    Parser p(lex.run(), file);
    return p.program();
  } catch (const Failure& f) {
    return std::vector<ParseError>{f.error};
  }
}

}  // namespace mover
