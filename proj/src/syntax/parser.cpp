// SPDX-License-Identifier: Apache-2.0
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "prodsynth/syntax.hpp"

namespace prodsynth {

namespace {

enum class Tok {
  Ident, Ctor, Num, Hash, LParen, RParen, LBrack, RBrack, LBrace, RBrace, Comma, Semi,
  Bar, Colon, Eq, Star, Arrow, FatArrow, Pipe, Question, Eof
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

const char* const kNil = "$nil";
const char* const kCons = "$cons";

bool is_keyword(const std::string& s) {
  return s == "type" || s == "of" || s == "let" || s == "val" || s == "fix" ||
         s == "match" || s == "with";
}

struct Lexed {
  std::vector<Token> toks;
  std::vector<std::string> comments;
};

Lexed lex(const std::string& src) {
  Lexed r;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto adv = [&](std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto push = [&](Tok k, std::string t, int l, int c) { r.toks.push_back({k, std::move(t), l, c}); };
  while (i < src.size()) {
    char c = src[i];
    int l = line, cl = col;
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv();
      continue;
    }
    if (c == '(' && i + 1 < src.size() && src[i + 1] == '*') {
      int depth = 0;
      std::size_t start = i;
      do {
        if (i + 1 < src.size() && src[i] == '(' && src[i + 1] == '*') {
          ++depth;
          adv(2);
        } else if (i + 1 < src.size() && src[i] == '*' && src[i + 1] == ')') {
          --depth;
          adv(2);
        } else if (i >= src.size()) {
          throw ParseError("unterminated comment", l, cl);
        } else {
          adv();
        }
      } while (depth > 0 && i <= src.size());
      if (depth > 0) throw ParseError("unterminated comment", l, cl);
      r.comments.push_back(src.substr(start + 2, i - start - 4));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
        ++j;
      std::string w = src.substr(i, j - i);
      adv(j - i);
      push(std::isupper(static_cast<unsigned char>(w[0])) ? Tok::Ctor : Tok::Ident, w, l, cl);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      push(Tok::Num, src.substr(i, j - i), l, cl);
      adv(j - i);
      continue;
    }
    if (c == '#') {
      std::size_t j = i + 1;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j == i + 1) throw ParseError("expected projection index after '#'", l, cl);
      push(Tok::Hash, src.substr(i + 1, j - i - 1), l, cl);
      adv(j - i);
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == "->") { push(Tok::Arrow, two, l, cl); adv(2); continue; }
    if (two == "=>") { push(Tok::FatArrow, two, l, cl); adv(2); continue; }
    if (two == "|>") { push(Tok::Pipe, two, l, cl); adv(2); continue; }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBrack; break;
      case ']': k = Tok::RBrack; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case ',': k = Tok::Comma; break;
      case ';': k = Tok::Semi; break;
      case '|': k = Tok::Bar; break;
      case ':': k = Tok::Colon; break;
      case '=': k = Tok::Eq; break;
      case '*': k = Tok::Star; break;
      case '?': k = Tok::Question; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
    push(k, std::string(1, c), l, cl);
    adv();
  }
  r.toks.push_back({Tok::Eof, "", line, col});
  return r;
}

const char* tok_name(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Ctor: return "constructor";
    case Tok::Num: return "number";
    case Tok::Hash: return "projection";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Bar: return "'|'";
    case Tok::Colon: return "':'";
    case Tok::Eq: return "'='";
    case Tok::Star: return "'*'";
    case Tok::Arrow: return "'->'";
    case Tok::FatArrow: return "'=>'";
    case Tok::Pipe: return "'|>'";
    case Tok::Question: return "'?'";
    case Tok::Eof: return "end of input";
  }
  return "?";
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const ConstructorContext* sigma)
      : t_(std::move(toks)), sigma_(sigma) {}

  const Token& peek(std::size_t k = 0) const { return t_[std::min(p_ + k, t_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }
  Token take() { return t_[std::min(p_++, t_.size() - 1)]; }
  std::size_t pos() const { return p_; }
  void seek(std::size_t p) { p_ = p; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " (found " + describe(peek()) + ")", peek().line, peek().col);
  }
  static std::string describe(const Token& t) {
    if (t.kind == Tok::Eof) return "end of input";
    return "'" + t.text + "'";
  }
  Token expect(Tok k) {
    if (!at(k)) fail(std::string("expected ") + tok_name(k));
    return take();
  }
  void expect_word(const char* w) {
    if (!at_word(w)) fail(std::string("expected '") + w + "'");
    take();
  }
  std::string ident() {
    if (!at(Tok::Ident) || is_keyword(peek().text)) fail("expected identifier");
    return take().text;
  }

  // type := prod ('->' type)?
  Type type() {
    Type lhs = product();
    if (at(Tok::Arrow)) {
      take();
      return Type::arrow(lhs, type());
    }
    return lhs;
  }
  Type product() {
    std::vector<Type> cs{type_atom()};
    while (at(Tok::Star)) {
      take();
      cs.push_back(type_atom());
    }
    return cs.size() == 1 ? cs[0] : Type::product(std::move(cs));
  }
  Type type_atom() {
    if (at(Tok::LParen)) {
      take();
      Type t = type();
      expect(Tok::RParen);
      return t;
    }
    if (at(Tok::Ident) && !is_keyword(peek().text)) {
      auto w = take().text;
      if (w == "unit") return Type::unit();
      return Type::base(w);
    }
    fail("expected type");
  }

  bool starts_item() const {
    switch (peek().kind) {
      case Tok::Ident: return !is_keyword(peek().text);
      case Tok::Ctor:
      case Tok::Num:
      case Tok::Hash:
      case Tok::LParen:
      case Tok::LBrack:
      case Tok::LBrace:
        return true;
      default:
        return false;
    }
  }

  Expr expr() {
    const Token& s = peek();
    if (at_word("fix")) {
      take();
      std::string f = ident();
      expect(Tok::LParen);
      std::string x = ident();
      expect(Tok::Colon);
      Type dom = type();
      expect(Tok::RParen);
      expect(Tok::Colon);
      Type cod = type();
      expect(Tok::Eq);
      return mark(Expr::fix(f, x, dom, cod, expr()), s);
    }
    if (at_word("match")) {
      take();
      Expr scrut = expr();
      expect_word("with");
      if (at(Tok::Bar)) take();
      std::vector<Branch> bs;
      for (;;) {
        std::string c = expect(Tok::Ctor).text;
        std::string v = ident();
        expect(Tok::Arrow);
        Expr body = expr();
        for (auto& b : bs)
          if (b.ctor == c) fail("duplicate branch for " + c);
        bs.push_back({c, v, body});
        if (!at(Tok::Bar)) break;
        take();
      }
      return mark(Expr::match(scrut, std::move(bs)), s);
    }
    if (!starts_item()) fail("expected expression");
    Expr e = item();
    while (starts_item()) e = mark(Expr::app(e, item()), s);
    return e;
  }

  Expr item() {
    const Token& s = peek();
    if (at(Tok::Hash)) {
      int k = std::stoi(take().text);
      if (k < 1) fail("projection index must be at least 1");
      return mark(Expr::proj(k, item()), s);
    }
    if (at(Tok::Ctor)) {
      std::string c = take().text;
      if (starts_item()) return mark(Expr::ctor(c, item()), s);
      return mark(Expr::ctor(c, Expr::unit()), s);
    }
    return atom();
  }

  Expr atom() {
    const Token& s = peek();
    switch (s.kind) {
      case Tok::Ident:
        return mark(Expr::var(ident()), s);
      case Tok::Num: {
        if (!sigma_ || !sigma_->nat_type()) fail("numeral used without a nat type (O of unit | S of nat)");
        if (s.text.size() > 5 || std::stol(s.text) > 10000) fail("numeral too large");
        long n = std::stol(take().text);
        Expr e = Expr::ctor("O", Expr::unit());
        for (long k = 0; k < n; ++k) e = Expr::ctor("S", e);
        return mark(e, s);
      }
      case Tok::LParen: {
        take();
        if (at(Tok::RParen)) {
          take();
          return mark(Expr::unit(), s);
        }
        std::vector<Expr> cs{expr()};
        while (at(Tok::Comma)) {
          take();
          cs.push_back(expr());
        }
        expect(Tok::RParen);
        if (cs.size() == 1) return cs[0];
        return mark(Expr::tuple(std::move(cs)), s);
      }
      case Tok::LBrack: {
        take();
        std::vector<Expr> els;
        if (!at(Tok::RBrack)) {
          els.push_back(expr());
          while (at(Tok::Semi)) {
            take();
            els.push_back(expr());
          }
        }
        expect(Tok::RBrack);
        Expr e = mark(Expr::ctor(kNil, Expr::unit()), s);
        for (auto it = els.rbegin(); it != els.rend(); ++it)
          e = mark(Expr::ctor(kCons, Expr::tuple({*it, e})), s);
        return e;
      }
      case Tok::LBrace: {
        take();
        std::vector<Case> cs;
        if (!at(Tok::RBrace)) {
          cs.push_back(case_());
          while (at(Tok::Semi)) {
            take();
            if (at(Tok::RBrace)) break;
            cs.push_back(case_());
          }
        }
        expect(Tok::RBrace);
        return mark(Expr::partial(std::move(cs)), s);
      }
      default:
        fail("expected expression");
    }
  }

  Case case_() {
    Expr in = expr();
    const Token& s = peek();
    expect(Tok::FatArrow);
    Expr out = expr();
    if (at(Tok::FatArrow)) {
      // a => b => c nests to the right
      std::vector<Expr> chain{in, out};
      while (at(Tok::FatArrow)) {
        take();
        chain.push_back(expr());
      }
      Expr acc = chain.back();
      for (std::size_t k = chain.size() - 1; k-- > 1;)
        acc = mark(Expr::partial({Case{chain[k], acc}}), s);
      return {chain[0], acc};
    }
    return {in, out};
  }

  Expr mark(Expr e, const Token& t) {
    pos_.emplace(e.raw(), std::make_pair(t.line, t.col));
    return e;
  }

  std::pair<int, int> where(const Expr& e) const {
    auto it = pos_.find(e.raw());
    if (it != pos_.end()) return it->second;
    return {peek().line, peek().col};
  }

  // Resolves list literals and checks examples against the expected type.
  Expr elaborate(const Expr& e, const Type& t) {
    auto err = [&](const std::string& msg) -> ParseError {
      auto [l, c] = where(e);
      return ParseError(msg, l, c);
    };
    switch (e.kind()) {
      case ExprKind::Unit:
        if (!t.is_unit()) throw err("() does not have type " + t.str());
        return e;
      case ExprKind::Tuple: {
        if (!t.is_product() || t.components().size() != e.components().size())
          throw err("tuple does not have type " + t.str());
        std::vector<Expr> cs;
        for (std::size_t i = 0; i < e.components().size(); ++i)
          cs.push_back(elaborate(e.components()[i], t.components()[i]));
        return Expr::tuple(std::move(cs));
      }
      case ExprKind::Ctor: {
        if (!t.is_base()) throw err("constructor value does not have type " + t.str());
        std::string name = e.name();
        if (name == kNil || name == kCons) {
          auto* shape = sigma_->list_by_type(t.name());
          if (!shape) throw err("list literal at non-list type " + t.str());
          if (name == kNil) return Expr::ctor(shape->nil, Expr::unit());
          auto& parts = e.arg().components();
          return Expr::ctor(shape->cons,
                            Expr::tuple({elaborate(parts[0], shape->elem), elaborate(parts[1], t)}));
        }
        auto* info = sigma_->ctor(name);
        if (!info) throw err("unknown constructor " + name);
        if (info->result != t.name()) throw err("constructor " + name + " does not build " + t.str());
        return Expr::ctor(name, elaborate(e.arg(), info->arg));
      }
      case ExprKind::PartialFn: {
        if (!t.is_arrow()) throw err("partial function does not have type " + t.str());
        std::vector<Case> cs;
        for (auto& c : e.cases())
          cs.push_back({elaborate(c.input, t.domain()), elaborate(c.output, t.codomain())});
        return Expr::partial(std::move(cs));
      }
      default:
        throw err("examples must be values");
    }
  }

  // Resolves list literals without type information.
  Expr resolve(const Expr& e) {
    switch (e.kind()) {
      case ExprKind::Var:
      case ExprKind::Unit:
        return e;
      case ExprKind::Tuple: {
        std::vector<Expr> cs;
        for (auto& c : e.components()) cs.push_back(resolve(c));
        return Expr::tuple(std::move(cs));
      }
      case ExprKind::Proj:
        return Expr::proj(e.index(), resolve(e.target()));
      case ExprKind::Ctor: {
        std::string name = e.name();
        if (name == kNil || name == kCons) {
          if (!sigma_ || sigma_->list_types().size() != 1) {
            auto [l, c] = where(e);
            throw ParseError("list literal needs exactly one list-shaped type", l, c);
          }
          auto& shape = sigma_->list_types()[0];
          name = name == kNil ? shape.nil : shape.cons;
        }
        return Expr::ctor(name, resolve(e.arg()));
      }
      case ExprKind::Fix:
        return Expr::fix(e.name(), e.param(), e.domain(), e.codomain(), resolve(e.body()));
      case ExprKind::App:
        return Expr::app(resolve(e.fn()), resolve(e.arg()));
      case ExprKind::Match: {
        std::vector<Branch> bs;
        for (auto& b : e.branches()) bs.push_back({b.ctor, b.var, resolve(b.body)});
        return Expr::match(resolve(e.scrutinee()), std::move(bs));
      }
      case ExprKind::PartialFn: {
        std::vector<Case> cs;
        for (auto& c : e.cases()) cs.push_back({resolve(c.input), resolve(c.output)});
        return Expr::partial(std::move(cs));
      }
    }
    return e;
  }

 private:
  std::vector<Token> t_;
  std::size_t p_ = 0;
  const ConstructorContext* sigma_;
  std::unordered_map<const ExprNode*, std::pair<int, int>> pos_;
};

bool top_keyword(const Token& t) {
  return t.kind == Tok::Ident && (t.text == "type" || t.text == "val" || t.text == "let");
}

std::vector<DataDecl> parse_decls(Parser& p) {
  std::vector<DataDecl> out;
  while (!p.at(Tok::Eof)) {
    if (!p.at_word("type")) {
      p.take();
      while (!p.at(Tok::Eof) && !top_keyword(p.peek())) p.take();
      continue;
    }
    p.take();
    DataDecl d;
    d.name = p.ident();
    if (d.name == "unit") p.fail("cannot redefine unit");
    p.expect(Tok::Eq);
    if (p.at(Tok::Bar)) p.take();
    for (;;) {
      CtorDecl c;
      c.name = p.expect(Tok::Ctor).text;
      if (p.at_word("of")) {
        p.take();
        c.arg = p.type();
      }
      d.ctors.push_back(c);
      if (!p.at(Tok::Bar)) break;
      p.take();
    }
    out.push_back(std::move(d));
  }
  return out;
}

bool pf_equal_keys(const Expr& a, const Expr& b) { return a == b; }

int count_leaves(const Expr& pf) {
  int n = 0;
  for (auto& c : pf.cases())
    n += c.output.kind() == ExprKind::PartialFn ? count_leaves(c.output) : 1;
  return n;
}

}  // namespace

Expr normalize_examples(const Expr& pf) {
  if (pf.kind() != ExprKind::PartialFn) return pf;
  std::vector<Case> out;
  for (auto& c : pf.cases()) {
    Expr o = normalize_examples(c.output);
    bool merged = false;
    for (auto& prev : out) {
      if (!pf_equal_keys(prev.input, c.input)) continue;
      merged = true;
      if (prev.output == o) break;
      if (prev.output.kind() == ExprKind::PartialFn && o.kind() == ExprKind::PartialFn) {
        std::vector<Case> both = prev.output.cases();
        both.insert(both.end(), o.cases().begin(), o.cases().end());
        prev.output = normalize_examples(Expr::partial(std::move(both)));
        break;
      }
      throw ContradictoryExamples("contradictory examples for input " + pretty_print(c.input));
    }
    if (!merged) out.push_back({c.input, o});
  }
  return Expr::partial(std::move(out));
}

int SynthesisProblem::example_count() const { return count_leaves(examples); }

SynthesisProblem parse_problem(const std::string& text) {
  Lexed lx = lex(text);
  SynthesisProblem prob;
  {
    Parser p(lx.toks, nullptr);
    prob.sigma = ConstructorContext(parse_decls(p));
  }
  for (auto& c : lx.comments) {
    auto k = c.find("expected:");
    if (k == std::string::npos) continue;
    std::istringstream in(c.substr(k + 9));
    in >> prob.tier;
  }
  Parser p(lx.toks, &prob.sigma);
  bool have_goal = false;
  while (!p.at(Tok::Eof)) {
    if (p.at_word("type")) {
      p.take();
      while (!p.at(Tok::Eof) && !top_keyword(p.peek())) p.take();
      continue;
    }
    bool is_let = p.at_word("let");
    if (!is_let && !p.at_word("val")) p.fail("expected 'type', 'val' or 'let'");
    Token head = p.take();
    std::string name = p.ident();
    p.expect(Tok::Colon);
    Token tstart = p.peek();
    Type t = p.type();
    if (!prob.sigma.closed(t)) throw UnknownType("unknown type in " + t.str() + " at line " + std::to_string(tstart.line));
    if (!t.is_arrow()) throw ParseError("examples need a function type", tstart.line, tstart.col);
    p.expect(Tok::Pipe);
    if (!p.at(Tok::LBrace)) p.fail("expected '{'");
    Expr raw = p.atom();
    Expr ex = normalize_examples(p.elaborate(raw, t));
    if (is_let) {
      if (have_goal) throw ParseError("more than one goal", head.line, head.col);
      have_goal = true;
      p.expect(Tok::Eq);
      p.expect(Tok::Question);
      prob.name = name;
      prob.type = t;
      prob.examples = ex;
    } else {
      prob.aux.push_back({name, t, ex});
    }
  }
  if (!have_goal) p.fail("missing 'let' goal");
  return prob;
}

SynthesisProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

Expr parse_expr(const std::string& text, const ConstructorContext& sigma) {
  Parser p(lex(text).toks, &sigma);
  Expr e = p.expr();
  if (!p.at(Tok::Eof)) p.fail("unexpected trailing input");
  Expr r = p.resolve(e);
  return r.kind() == ExprKind::PartialFn ? normalize_examples(r) : r;
}

Expr parse_value(const std::string& text, const ConstructorContext& sigma, const Type& expected) {
  Parser p(lex(text).toks, &sigma);
  Expr e = p.expr();
  if (!p.at(Tok::Eof)) p.fail("unexpected trailing input");
  return normalize_examples(p.elaborate(e, expected));
}

Type parse_type(const std::string& text) {
  Parser p(lex(text).toks, nullptr);
  Type t = p.type();
  if (!p.at(Tok::Eof)) p.fail("unexpected trailing input");
  return t;
}

}  // namespace prodsynth
