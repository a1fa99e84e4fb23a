// SPDX-License-Identifier: Apache-2.0
#include "prodsynth/census.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace prodsynth {

namespace {

using u64 = std::uint64_t;

struct Arith {
  u64 ceiling;
  u64 add(u64 a, u64 b) const {
    u64 r;
    if (__builtin_add_overflow(a, b, &r) || r > ceiling) throw BudgetExceeded("census count exceeds ceiling");
    return r;
  }
  u64 mul(u64 a, u64 b) const {
    u64 r;
    if (__builtin_mul_overflow(a, b, &r) || r > ceiling) throw BudgetExceeded("census count exceeds ceiling");
    return r;
  }
};

int widest(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Product: {
      int w = static_cast<int>(t.components().size());
      for (auto& c : t.components()) w = std::max(w, widest(c));
      return w;
    }
    case Type::Kind::Arrow:
      return std::max(widest(t.domain()), widest(t.codomain()));
    default:
      return 0;
  }
}

std::size_t ctor_count(const ConstructorContext& sigma) {
  std::size_t c = 0;
  for (auto& d : sigma.decls()) c += d.ctors.size();
  return c;
}

// ---- all closed terms: recurrence over size and number of bound variables

class AllCounter {
 public:
  AllCounter(const ConstructorContext& sigma, int proj, Arith ar) : sigma_(sigma), proj_(proj), ar_(ar) {}

  u64 terms(int n, int k) {
    if (n < 1) return 0;
    auto key = std::make_pair(n, k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    u64 c = 0;
    if (n == 1) {
      c = static_cast<u64>(k) + 1;
    } else {
      c = ar_.add(c, ar_.mul(ctor_count(sigma_), terms(n - 1, k)));
      c = ar_.add(c, eliminations(n, k));
      c = ar_.add(c, terms(n - 1, k + 2));
      for (int m = 2; m <= n - 1; ++m) c = ar_.add(c, seq(n - 1, m, k));
    }
    memo_[key] = c;
    return c;
  }

  // Projections, applications and matches of exactly n nodes.
  u64 eliminations(int n, int k) {
    u64 c = ar_.mul(static_cast<u64>(proj_), terms(n - 1, k));
    for (int a = 1; a <= n - 2; ++a) c = ar_.add(c, ar_.mul(terms(a, k), terms(n - 1 - a, k)));
    for (auto& d : sigma_.decls()) {
      int r = static_cast<int>(d.ctors.size());
      for (int s = 1; s <= n - 1 - r; ++s) c = ar_.add(c, ar_.mul(terms(s, k), seq(n - 1 - s, r, k + 1)));
    }
    return c;
  }

  // Sequences of m terms with total size n.
  u64 seq(int n, int m, int k) {
    if (m == 0) return n == 0 ? 1 : 0;
    if (n < m) return 0;
    auto key = std::make_tuple(n, m, k);
    if (auto it = seq_memo_.find(key); it != seq_memo_.end()) return it->second;
    u64 c = 0;
    for (int a = 1; a <= n - (m - 1); ++a) c = ar_.add(c, ar_.mul(terms(a, k), seq(n - a, m - 1, k)));
    seq_memo_[key] = c;
    return c;
  }

  u64 rooted(const Type& tau, int n) {
    if (n < 1) return 0;
    u64 c = n >= 2 ? eliminations(n, 0) : 0;
    switch (tau.kind()) {
      case Type::Kind::Unit:
        if (n == 1) c = ar_.add(c, 1);
        break;
      case Type::Kind::Arrow:
        if (n >= 2) c = ar_.add(c, terms(n - 1, 2));
        break;
      case Type::Kind::Product:
        if (n >= 2) c = ar_.add(c, seq(n - 1, static_cast<int>(tau.components().size()), 0));
        break;
      case Type::Kind::Base:
        if (auto* d = sigma_.data(tau.name()); d && n >= 2)
          c = ar_.add(c, ar_.mul(d->ctors.size(), terms(n - 1, 0)));
        break;
    }
    return c;
  }

 private:
  const ConstructorContext& sigma_;
  int proj_;
  Arith ar_;
  std::map<std::pair<int, int>, u64> memo_;
  std::map<std::tuple<int, int, int>, u64> seq_memo_;
};

// ---- typeable terms: enumeration with incremental unification and undo

class TypedCounter {
 public:
  TypedCounter(const ConstructorContext& sigma, int proj, u64 ceiling)
      : sigma_(sigma), proj_(proj), ceiling_(ceiling) {
    unit_ = ground(Type::unit());
    for (auto& d : sigma.decls())
      for (auto& c : d.ctors) ctor_arg_.emplace_back(c.name, ground(c.arg)), ctor_res_.push_back(ground(Type::base(d.name)));
  }

  u64 count(const Type& tau, int n) {
    int root = ground(tau);
    std::vector<int> scope;
    gen(n, root, scope, [&] {
      if (++found_ > ceiling_) throw BudgetExceeded("census count exceeds ceiling");
    });
    return found_;
  }

 private:
  enum Kind { kVar, kUnit, kBase, kArrow, kProd, kPartial };
  struct Node {
    Kind kind;
    int link = -1;
    std::string name;
    std::vector<int> kids;                   // arrow: {dom, cod}; product: components
    std::vector<std::pair<int, int>> fields;  // partial product: index -> type
  };

  int fresh(Kind k) {
    nodes_.push_back(Node{k, -1, {}, {}, {}});
    return static_cast<int>(nodes_.size()) - 1;
  }

  int ground(const Type& t) {
    int id;
    switch (t.kind()) {
      case Type::Kind::Unit:
        return fresh(kUnit);
      case Type::Kind::Base:
        id = fresh(kBase);
        nodes_[static_cast<std::size_t>(id)].name = t.name();
        return id;
      case Type::Kind::Arrow: {
        int a = ground(t.domain()), b = ground(t.codomain());
        id = fresh(kArrow);
        nodes_[static_cast<std::size_t>(id)].kids = {a, b};
        return id;
      }
      case Type::Kind::Product: {
        std::vector<int> ks;
        for (auto& c : t.components()) ks.push_back(ground(c));
        id = fresh(kProd);
        nodes_[static_cast<std::size_t>(id)].kids = ks;
        return id;
      }
    }
    return -1;
  }

  int find(int i) const {
    while (nodes_[static_cast<std::size_t>(i)].link >= 0) i = nodes_[static_cast<std::size_t>(i)].link;
    return i;
  }

  struct Mark {
    std::size_t nodes, trail;
  };
  Mark mark() const { return {nodes_.size(), trail_.size()}; }
  void undo(Mark m) {
    while (trail_.size() > m.trail) {
      nodes_[static_cast<std::size_t>(trail_.back().first)] = std::move(trail_.back().second);
      trail_.pop_back();
    }
    nodes_.resize(m.nodes);
  }
  Node& edit(int i) {
    trail_.emplace_back(i, nodes_[static_cast<std::size_t>(i)]);
    return nodes_[static_cast<std::size_t>(i)];
  }

  bool occurs(int v, int t) const {
    t = find(t);
    if (t == v) return true;
    auto& n = nodes_[static_cast<std::size_t>(t)];
    for (int k : n.kids)
      if (occurs(v, k)) return true;
    for (auto& f : n.fields)
      if (occurs(v, f.second)) return true;
    return false;
  }

  bool unify(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return true;
    Kind ka = nodes_[static_cast<std::size_t>(a)].kind, kb = nodes_[static_cast<std::size_t>(b)].kind;
    if (kb == kVar) std::swap(a, b), std::swap(ka, kb);
    if (ka == kVar) {
      if (occurs(a, b)) return false;
      edit(a).link = b;
      return true;
    }
    if (kb == kPartial) std::swap(a, b), std::swap(ka, kb);
    if (ka == kPartial) {
      auto fields = nodes_[static_cast<std::size_t>(a)].fields;
      if (kb == kProd) {
        auto comps = nodes_[static_cast<std::size_t>(b)].kids;
        for (auto& f : fields)
          if (f.first > static_cast<int>(comps.size())) return false;
        if (occurs(a, b)) return false;
        edit(a).link = b;
        for (auto& f : fields)
          if (!unify(f.second, comps[static_cast<std::size_t>(f.first - 1)])) return false;
        return true;
      }
      if (kb != kPartial) return false;
      for (auto& f : fields)
        if (occurs(b, f.second)) return false;
      for (auto& f : nodes_[static_cast<std::size_t>(b)].fields)
        if (occurs(a, f.second)) return false;
      edit(a).link = b;
      for (auto& f : fields) {
        auto& bf = nodes_[static_cast<std::size_t>(b)].fields;
        auto it = std::find_if(bf.begin(), bf.end(), [&](auto& g) { return g.first == f.first; });
        if (it != bf.end()) {
          if (!unify(f.second, it->second)) return false;
        } else {
          edit(b).fields.push_back(f);
        }
      }
      return true;
    }
    if (ka != kb) return false;
    auto& na = nodes_[static_cast<std::size_t>(a)];
    auto& nb = nodes_[static_cast<std::size_t>(b)];
    switch (ka) {
      case kUnit:
        return true;
      case kBase:
        return na.name == nb.name;
      case kArrow:
      case kProd: {
        if (na.kids.size() != nb.kids.size()) return false;
        auto ak = na.kids, bk = nb.kids;
        for (std::size_t i = 0; i < ak.size(); ++i)
          if (!unify(ak[i], bk[i])) return false;
        return true;
      }
      default:
        return false;
    }
  }

  using Cont = std::function<void()>;

  void tick() {
    if (++work_ > ceiling_) throw BudgetExceeded("census enumeration exceeds ceiling");
  }

  // Sequences of terms with the given types and total size n.
  void gen_seq(int n, const std::vector<int>& types, std::size_t i, const std::vector<std::vector<int>>& scopes,
               const Cont& k) {
    if (i == types.size()) {
      if (n == 0) k();
      return;
    }
    int rest = static_cast<int>(types.size() - i - 1);
    for (int a = 1; a <= n - rest; ++a)
      gen(a, types[i], scopes[i], [&] { gen_seq(n - a, types, i + 1, scopes, k); });
  }

  void gen(int n, int t, const std::vector<int>& scope, const Cont& k) {
    tick();
    if (n < 1) return;
    if (n == 1) {
      for (int v : scope) {
        Mark m = mark();
        if (unify(t, v)) k();
        undo(m);
      }
      Mark m = mark();
      if (unify(t, unit_)) k();
      undo(m);
      return;
    }
    for (std::size_t c = 0; c < ctor_arg_.size(); ++c) {
      Mark m = mark();
      if (unify(t, ctor_res_[c])) gen(n - 1, ctor_arg_[c].second, scope, k);
      undo(m);
    }
    for (int j = 1; j <= proj_; ++j) {
      Mark m = mark();
      int a = fresh(kPartial);
      nodes_[static_cast<std::size_t>(a)].fields = {{j, t}};
      gen(n - 1, a, scope, k);
      undo(m);
    }
    {
      Mark m = mark();
      int a = fresh(kVar), b = fresh(kVar);
      int f = fresh(kArrow);
      nodes_[static_cast<std::size_t>(f)].kids = {a, b};
      if (unify(t, f)) {
        auto inner = scope;
        inner.push_back(f);
        inner.push_back(a);
        gen(n - 1, b, inner, k);
      }
      undo(m);
    }
    for (int a = 1; a <= n - 2; ++a) {
      Mark m = mark();
      int x = fresh(kVar);
      int f = fresh(kArrow);
      nodes_[static_cast<std::size_t>(f)].kids = {x, t};
      gen(a, f, scope, [&] { gen(n - 1 - a, x, scope, k); });
      undo(m);
    }
    for (int arity = 2; arity <= n - 1; ++arity) {
      Mark m = mark();
      std::vector<int> comps;
      for (int i = 0; i < arity; ++i) comps.push_back(fresh(kVar));
      int p = fresh(kProd);
      nodes_[static_cast<std::size_t>(p)].kids = comps;
      if (unify(t, p)) gen_seq(n - 1, comps, 0, std::vector<std::vector<int>>(comps.size(), scope), k);
      undo(m);
    }
    std::size_t c0 = 0;
    for (auto& d : sigma_.decls()) {
      int r = static_cast<int>(d.ctors.size());
      int base = ctor_res_[c0];
      std::vector<int> types(d.ctors.size(), t);
      std::vector<std::vector<int>> scopes;
      for (std::size_t i = 0; i < d.ctors.size(); ++i) {
        auto s = scope;
        s.push_back(ctor_arg_[c0 + i].second);
        scopes.push_back(std::move(s));
      }
      for (int s = 1; s <= n - 1 - r; ++s)
        gen(s, base, scope, [&] { gen_seq(n - 1 - s, types, 0, scopes, k); });
      c0 += d.ctors.size();
    }
  }

  const ConstructorContext& sigma_;
  int proj_;
  u64 ceiling_;
  u64 found_ = 0;
  u64 work_ = 0;
  int unit_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::pair<int, Node>> trail_;
  std::vector<std::pair<std::string, int>> ctor_arg_;
  std::vector<int> ctor_res_;
};

// ---- beta-normal eta-long terms: recurrence over (type, size, context)

class NormalCounter {
 public:
  NormalCounter(const ConstructorContext& sigma, Arith ar) : sigma_(sigma), ar_(ar) {}

  u64 intro(const Type& t, int n, const std::vector<Type>& ctx) {
    if (n < 1) return 0;
    auto key = std::make_tuple(0, t.str(), n, ctx_id(ctx));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    u64 c = 0;
    switch (t.kind()) {
      case Type::Kind::Unit:
        c = n == 1 ? 1 : 0;
        break;
      case Type::Kind::Arrow:
        if (n >= 2) c = intro(t.codomain(), n - 1, extend(ctx, {t, t.domain()}));
        break;
      case Type::Kind::Product: {
        std::vector<std::vector<Type>> scopes(t.components().size(), ctx);
        c = ar_.add(seq(t.components(), scopes, 0, n - 1), matches(t, n, ctx));
        break;
      }
      case Type::Kind::Base:
        if (auto* d = sigma_.data(t.name()))
          for (auto& ctor : d->ctors) c = ar_.add(c, intro(ctor.arg, n - 1, ctx));
        c = ar_.add(c, elim(t, n, ctx));
        c = ar_.add(c, matches(t, n, ctx));
        break;
    }
    memo_[key] = c;
    return c;
  }

 private:
  static std::vector<Type> extend(std::vector<Type> ctx, std::initializer_list<Type> add) {
    for (auto& t : add) ctx.push_back(t);
    return ctx;
  }

  int ctx_id(std::vector<Type> ctx) {
    std::vector<std::string> key;
    for (auto& t : ctx) key.push_back(t.str());
    std::sort(key.begin(), key.end());
    auto it = ctx_ids_.find(key);
    if (it != ctx_ids_.end()) return it->second;
    int id = static_cast<int>(ctx_ids_.size());
    ctx_ids_.emplace(std::move(key), id);
    return id;
  }

  u64 seq(const std::vector<Type>& ts, const std::vector<std::vector<Type>>& scopes, std::size_t i, int n) {
    if (i == ts.size()) return n == 0 ? 1 : 0;
    u64 c = 0;
    int rest = static_cast<int>(ts.size() - i - 1);
    for (int a = 1; a <= n - rest; ++a) {
      u64 head = intro(ts[i], a, scopes[i]);
      if (head) c = ar_.add(c, ar_.mul(head, seq(ts, scopes, i + 1, n - a)));
    }
    return c;
  }

  u64 matches(const Type& t, int n, const std::vector<Type>& ctx) {
    u64 c = 0;
    for (auto& d : sigma_.decls()) {
      int r = static_cast<int>(d.ctors.size());
      std::vector<Type> ts(d.ctors.size(), t);
      std::vector<std::vector<Type>> scopes;
      for (auto& ctor : d.ctors) scopes.push_back(extend(ctx, {ctor.arg}));
      for (int s = 1; s <= n - 1 - r; ++s) {
        u64 sc = elim(Type::base(d.name), s, ctx);
        if (sc) c = ar_.add(c, ar_.mul(sc, seq(ts, scopes, 0, n - 1 - s)));
      }
    }
    return c;
  }

  // Types reachable from the context by projection and application.
  std::vector<Type> reachable(const std::vector<Type>& ctx) {
    std::set<std::string> seen;
    std::vector<Type> out;
    std::function<void(const Type&)> visit = [&](const Type& t) {
      if (!seen.insert(t.str()).second) return;
      out.push_back(t);
      if (t.is_product())
        for (auto& c : t.components()) visit(c);
      if (t.is_arrow()) visit(t.codomain());
    };
    for (auto& t : ctx) visit(t);
    return out;
  }

  u64 elim(const Type& t, int n, const std::vector<Type>& ctx) {
    if (n < 1) return 0;
    auto key = std::make_tuple(1, t.str(), n, ctx_id(ctx));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    u64 c = 0;
    if (n == 1) {
      c = static_cast<u64>(std::count(ctx.begin(), ctx.end(), t));
    } else {
      for (auto& r : reachable(ctx)) {
        if (r.is_product())
          for (auto& comp : r.components())
            if (comp == t) c = ar_.add(c, elim(r, n - 1, ctx));
        if (r.is_arrow() && r.codomain() == t)
          for (int a = 1; a <= n - 2; ++a) {
            u64 head = elim(r, a, ctx);
            if (head) c = ar_.add(c, ar_.mul(head, intro(r.domain(), n - 1 - a, ctx)));
          }
      }
    }
    memo_[key] = c;
    return c;
  }

  const ConstructorContext& sigma_;
  Arith ar_;
  std::map<std::tuple<int, std::string, int, int>, u64> memo_;
  std::map<std::vector<std::string>, int> ctx_ids_;
};

}  // namespace

int projection_bound(const ConstructorContext& sigma, const Type& tau) {
  int w = std::max(2, widest(tau));
  for (auto& d : sigma.decls())
    for (auto& c : d.ctors) w = std::max(w, widest(c.arg));
  return w;
}

std::uint64_t count_asts(const ConstructorContext& sigma, const Type& tau, int n, CensusMode mode,
                         std::uint64_t ceiling) {
  if (n < 1) throw InputError("node count must be positive");
  if (!sigma.closed(tau)) throw UnknownType("census type mentions an undeclared datatype: " + tau.str());
  Arith ar{ceiling};
  switch (mode) {
    case CensusMode::All:
      return AllCounter(sigma, projection_bound(sigma, tau), ar).rooted(tau, n);
    case CensusMode::Typed:
      return TypedCounter(sigma, projection_bound(sigma, tau), ceiling).count(tau, n);
    case CensusMode::Normal:
      return NormalCounter(sigma, ar).intro(tau, n, {});
  }
  return 0;
}

const ConstructorContext& nat_context() {
  static const ConstructorContext sigma(
      {DataDecl{"nat", {CtorDecl{"O", Type::unit()}, CtorDecl{"S", Type::base("nat")}}}});
  return sigma;
}

CensusMode parse_census_mode(const std::string& s) {
  if (s == "all") return CensusMode::All;
  if (s == "typed") return CensusMode::Typed;
  if (s == "normal") return CensusMode::Normal;
  throw InputError("unknown census mode: " + s);
}

const char* census_mode_name(CensusMode m) {
  switch (m) {
    case CensusMode::All:
      return "all";
    case CensusMode::Typed:
      return "typed";
    case CensusMode::Normal:
      return "normal";
  }
  return "?";
}

}  // namespace prodsynth
