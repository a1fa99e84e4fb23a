// SPDX-License-Identifier: Apache-2.0
#include "prodsynth/synthesis.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <memory>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "prodsynth/typecheck.hpp"

namespace prodsynth {

namespace {

using Clock = std::chrono::steady_clock;

struct TimedOut {};

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull ^ v.size();
    for (int x : v) {
      h ^= static_cast<std::uint32_t>(x);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

template <class V>
using VecMap = std::unordered_map<std::vector<int>, V, VecHash>;

enum Tag { kUnit, kTuple, kCtor, kPartial, kOpaque };

// Hash-consed example values. Id -1 stands for an undefined result.
class ValueStore {
 public:
  ValueStore(const ConstructorContext& sigma, std::uint64_t fuel) : sigma_(sigma), fuel_(fuel) {
    unit_ = make({kUnit, 0});
  }

  int unit() const { return unit_; }

  int intern(const Expr& v) {
    switch (v.kind()) {
      case ExprKind::Unit:
        return unit_;
      case ExprKind::Tuple: {
        std::vector<int> ks;
        for (auto& c : v.components()) ks.push_back(intern(c));
        return tuple(ks);
      }
      case ExprKind::Ctor:
        return ctor(name_id(v.name()), intern(v.arg()));
      case ExprKind::PartialFn: {
        std::vector<int> key{kPartial, 0};
        for (auto& c : v.cases()) {
          key.push_back(intern(c.input));
          key.push_back(intern(c.output));
        }
        return make(std::move(key));
      }
      default: {
        auto it = opaque_.find(v);
        if (it != opaque_.end()) return it->second;
        int id = make({kOpaque, static_cast<int>(opaque_.size())});
        opaque_.emplace(v, id);
        exprs_.resize(keys_.size());
        exprs_[static_cast<std::size_t>(id)] = v;
        return id;
      }
    }
  }

  int tuple(const std::vector<int>& ks) {
    std::vector<int> key{kTuple, 0};
    key.insert(key.end(), ks.begin(), ks.end());
    return make(std::move(key));
  }
  int ctor(int name, int arg) { return make({kCtor, name, arg}); }

  int tag(int id) const { return keys_[static_cast<std::size_t>(id)][0]; }
  int name(int id) const { return keys_[static_cast<std::size_t>(id)][1]; }
  int kid(int id, std::size_t j) const { return keys_[static_cast<std::size_t>(id)][2 + j]; }
  std::size_t arity(int id) const { return keys_[static_cast<std::size_t>(id)].size() - 2; }

  int name_id(const std::string& n) {
    auto it = names_.find(n);
    if (it != names_.end()) return it->second;
    int id = static_cast<int>(name_list_.size());
    names_.emplace(n, id);
    name_list_.push_back(n);
    return id;
  }
  const std::string& name_str(int id) const { return name_list_[static_cast<std::size_t>(id)]; }

  const Expr& expr(int id) {
    exprs_.resize(keys_.size());
    auto& slot = exprs_[static_cast<std::size_t>(id)];
    if (slot) return slot;
    Expr built;
    switch (tag(id)) {
      case kUnit:
        built = Expr::unit();
        break;
      case kTuple: {
        std::vector<Expr> cs;
        for (std::size_t j = 0; j < arity(id); ++j) cs.push_back(expr(kid(id, j)));
        built = Expr::tuple(std::move(cs));
        break;
      }
      case kCtor:
        built = Expr::ctor(name_str(name(id)), expr(kid(id, 0)));
        break;
      case kPartial: {
        std::vector<Case> cs;
        for (std::size_t j = 0; j + 1 < arity(id); j += 2) cs.push_back({expr(kid(id, j)), expr(kid(id, j + 1))});
        built = Expr::partial(std::move(cs));
        break;
      }
      default:
        break;
    }
    exprs_.resize(keys_.size());
    exprs_[static_cast<std::size_t>(id)] = built;
    return exprs_[static_cast<std::size_t>(id)];
  }

  int apply(int fn, int arg) {
    if (fn < 0 || arg < 0) return -1;
    std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(fn)) << 32) |
                        static_cast<std::uint32_t>(arg);
    auto it = apply_cache_.find(key);
    if (it != apply_cache_.end()) return it->second;
    int out = -1;
    if (tag(fn) == kPartial) {
      for (std::size_t j = 0; j + 1 < arity(fn); j += 2)
        if (kid(fn, j) == arg) {
          out = kid(fn, j + 1);
          break;
        }
    } else if (tag(fn) == kOpaque) {
      Expr f = expr(fn);
      Expr a = expr(arg);
      auto r = eval(sigma_, Expr::app(f, a), fuel_, PartialApp::Lookup);
      if (r.ok()) out = intern(r.value);
    }
    apply_cache_.emplace(key, out);
    return out;
  }

 private:
  int make(std::vector<int> key) {
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(keys_.size());
    index_.emplace(key, id);
    keys_.push_back(std::move(key));
    return id;
  }

  const ConstructorContext& sigma_;
  std::uint64_t fuel_;
  int unit_ = 0;
  std::vector<std::vector<int>> keys_;
  VecMap<int> index_;
  std::vector<Expr> exprs_;
  std::unordered_map<Expr, int, ExprHash> opaque_;
  std::unordered_map<std::string, int> names_;
  std::vector<std::string> name_list_;
  std::unordered_map<std::uint64_t, int> apply_cache_;
};

struct VarInfo {
  std::string name;
  Type type;
  std::vector<int> desc;  // parameters this variable structurally descends from
  bool param = false;
  int fix_param = -1;  // for fixpoint-bound names: index of the parameter
};

struct Entry {
  Expr elim;
  Type type;
  int size;
  int root;
  std::vector<int> path;
};

struct Scope {
  int id = 0;
  std::vector<VarInfo> vars;
  std::vector<Entry> gamma;
  std::vector<std::string> log;  // focusing events of the latest extension
};

using Rows = std::vector<std::vector<int>>;

struct Goal {
  const Scope* scope;
  int env;      // interned Rows
  int targets;  // interned per-world goals
  Type type;
  int depth;
};

struct Solution {
  Expr program;
  int size;
  std::vector<std::string> trace;
};
using SolPtr = std::shared_ptr<const Solution>;

struct Cand {
  Expr term;
  Type type;
  int tid;
  int size;
  std::vector<int> vals;
  int desc;       // interned descent set
  int fix_param;  // for a bare fixpoint-bound name
  int root;       // variable index for projection chains, -1 otherwise
  const char* rule;
};

struct Intro {
  Expr term;
  std::vector<int> vals;
};

struct NewVar {
  VarInfo info;
  std::vector<int> vals;  // per world
};

void indent_into(std::vector<std::string>& out, const std::vector<std::string>& lines) {
  for (auto& l : lines) out.push_back("  " + l);
}

class Engine {
 public:
  Engine(const SynthesisProblem& p, const SearchLimits& lim, const SynthOptions& opt)
      : problem_(p),
        limits_(lim),
        opt_(opt),
        store_(p.sigma, lim.eval_fuel),
        start_(Clock::now()),
        order_(opt.eager_focus ? FocusOrder::Fifo : FocusOrder::Lifo) {}

  SynthResult run() {
    SynthResult res;
    try {
      Scope empty;
      empty.id = 0;
      scopes_.push_back(std::make_unique<Scope>(empty));
      std::vector<NewVar> aux;
      for (auto& a : problem_.aux) {
        NewVar v;
        v.info.name = a.name;
        v.info.type = a.type;
        v.vals.push_back(store_.intern(a.examples));
        aux.push_back(v);
      }
      int root_env = intern_rows(Rows{std::vector<int>{}});
      auto [scope, env] = extend(scopes_[0].get(), root_env, aux);
      root_scope_ = scope;
      Goal g{scope, env, intern_vec({store_.intern(problem_.examples)}), problem_.type, limits_.max_match_depth};
      for (int b = 1; b <= limits_.max_total_size; ++b) {
        res.stats.budget_reached = b;
        if (auto s = solve(g, b)) {
          res.status = SynthStatus::Solved;
          res.program = s->program;
          res.size = s->size;
          res.trace = s->trace;
          break;
        }
      }
    } catch (const TimedOut&) {
      res.status = SynthStatus::Timeout;
    }
    stats_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    stats_.budget_reached = res.stats.budget_reached;
    res.stats = stats_;
    if (opt_.on_trace)
      for (auto& l : res.trace) opt_.on_trace(l);
    return res;
  }

 private:
  bool nofocus() const { return opt_.mode == EngineMode::NoFocus; }

  void tick() {
    if ((++ticks_ & 1023) == 0 && limits_.timeout_seconds > 0 &&
        std::chrono::duration<double>(Clock::now() - start_).count() > limits_.timeout_seconds)
      throw TimedOut{};
  }

  int intern_vec(const std::vector<int>& v) {
    auto it = vecs_.find(v);
    if (it != vecs_.end()) return it->second;
    int id = static_cast<int>(vec_list_.size());
    vecs_.emplace(v, id);
    vec_list_.push_back(v);
    return id;
  }
  const std::vector<int>& vec(int id) const { return vec_list_[static_cast<std::size_t>(id)]; }

  int intern_rows(const Rows& r) {
    std::vector<int> key{static_cast<int>(r.size())};
    for (auto& row : r) {
      key.push_back(static_cast<int>(row.size()));
      key.insert(key.end(), row.begin(), row.end());
    }
    auto it = rows_index_.find(key);
    if (it != rows_index_.end()) return it->second;
    int id = static_cast<int>(rows_.size());
    rows_index_.emplace(std::move(key), id);
    rows_.push_back(r);
    return id;
  }
  const Rows& rows(int id) const { return rows_[static_cast<std::size_t>(id)]; }

  int type_id(const Type& t) {
    auto it = type_ids_.find(t);
    if (it != type_ids_.end()) return it->second;
    int id = static_cast<int>(type_ids_.size());
    type_ids_.emplace(t, id);
    return id;
  }

  static std::vector<int> proj_path(const Expr& e) {
    std::vector<int> path;
    const Expr* cur = &e;
    while (cur->kind() == ExprKind::Proj) {
      path.push_back(cur->index());
      cur = &cur->target();
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

  int descend(int v, const std::vector<int>& path) const {
    for (int j : path) v = store_.kid(v, static_cast<std::size_t>(j - 1));
    return v;
  }

  // Adds variables to the scope, focusing them (or not, without focusing),
  // and extends each world's row with the values of the new entries.
  std::pair<const Scope*, int> extend(const Scope* s, int env, const std::vector<NewVar>& vars) {
    std::vector<int> key{s->id};
    for (auto& v : vars) {
      key.push_back(store_.name_id(v.info.name));
      key.push_back(type_id(v.info.type));
      key.push_back(intern_vec(v.info.desc));
      key.push_back(v.info.param);
      key.push_back(v.info.fix_param);
    }
    const Scope* next;
    auto it = extensions_.find(key);
    if (it != extensions_.end()) {
      next = it->second;
    } else {
      auto sc = std::make_unique<Scope>(*s);
      sc->id = static_cast<int>(scopes_.size());
      sc->log.clear();
      std::vector<Entry> added;
      int base = static_cast<int>(s->vars.size());
      for (std::size_t k = 0; k < vars.size(); ++k) sc->vars.push_back(vars[k].info);
      if (nofocus()) {
        for (std::size_t k = 0; k < vars.size(); ++k) {
          Expr v = Expr::var(vars[k].info.name);
          added.push_back({v, vars[k].info.type, 1, base + static_cast<int>(k), {}});
        }
      } else {
        FocusState st;
        for (auto& v : vars) st.omega.push_back({Expr::var(v.info.name), v.info.type});
        std::vector<FocusEvent> events;
        st = focus_closure(st, &events, order_);
        stats_.focus_steps += events.size();
        for (auto& ev : events) sc->log.push_back(describe(ev));
        for (auto& b : st.gamma) {
          const Expr* r = elim_root(b.elim);
          int root = base;
          for (std::size_t k = 0; k < vars.size(); ++k)
            if (vars[k].info.name == r->name()) root = base + static_cast<int>(k);
          added.push_back({b.elim, b.type, ast_size(b.elim), root, proj_path(b.elim)});
        }
        std::stable_sort(added.begin(), added.end(), [](const Entry& a, const Entry& b) {
          return std::tie(a.root, a.path) < std::tie(b.root, b.path);
        });
      }
      for (auto& e : added) sc->gamma.push_back(e);
      next = sc.get();
      extensions_.emplace(key, next);
      scopes_.push_back(std::move(sc));
    }
    Rows r = rows(env);
    int base = static_cast<int>(s->vars.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t k = s->gamma.size(); k < next->gamma.size(); ++k) {
        auto& e = next->gamma[k];
        r[i].push_back(descend(vars[static_cast<std::size_t>(e.root - base)].vals[i], e.path));
      }
    return {next, intern_rows(r)};
  }

  // ---- bottom-up generation of elimination forms and example-free arguments

  struct Bank {
    const Scope* scope;
    int env;
    int built = 0;
    std::vector<Cand> elims;
    std::vector<std::vector<std::size_t>> by_size{1};
    VecMap<char> seen;
    VecMap<std::size_t> by_value;  // (type, values) -> first elimination form
    std::map<int, std::vector<Cand>> scheduled;
    std::map<std::pair<int, int>, std::vector<Intro>> intros;
    VecMap<char> seen_intro;
  };

  Bank& bank(const Goal& g) {
    std::uint64_t key = (static_cast<std::uint64_t>(g.scope->id) << 32) | static_cast<std::uint32_t>(g.env);
    auto it = banks_.find(key);
    if (it != banks_.end()) return *it->second;
    auto b = std::make_unique<Bank>();
    b->scope = g.scope;
    b->env = g.env;
    auto& ref = *b;
    banks_.emplace(key, std::move(b));
    return ref;
  }

  std::size_t worlds(const Bank& b) const { return rows(b.env).size(); }

  void add_elim(Bank& b, Cand c) {
    tick();
    ++stats_.candidates;
    std::vector<int> key{c.tid, c.desc, c.fix_param};
    key.insert(key.end(), c.vals.begin(), c.vals.end());
    if (!b.seen.emplace(std::move(key), 1).second) return;
    std::vector<int> vkey{c.tid};
    vkey.insert(vkey.end(), c.vals.begin(), c.vals.end());
    b.by_value.emplace(std::move(vkey), b.elims.size());
    b.by_size[static_cast<std::size_t>(c.size)].push_back(b.elims.size());
    b.elims.push_back(std::move(c));
  }

  void ensure(Bank& b, int size) {
    while (b.built < size) build(b, ++b.built);
  }

  void build(Bank& b, int s) {
    b.by_size.resize(static_cast<std::size_t>(s) + 1);
    const Scope& sc = *b.scope;
    const Rows& rw = rows(b.env);
    int empty_desc = intern_vec({});
    for (std::size_t k = 0; k < sc.gamma.size(); ++k) {
      auto& e = sc.gamma[k];
      if (e.size != s) continue;
      auto& info = sc.vars[static_cast<std::size_t>(e.root)];
      Cand c{e.elim, e.type, type_id(e.type), s, {}, intern_vec(info.desc),
             e.path.empty() ? info.fix_param : -1, e.root, "EGuess-Ctx"};
      for (auto& row : rw) c.vals.push_back(row[k]);
      add_elim(b, std::move(c));
    }
    if (nofocus() && s > 1) {
      auto prev = b.by_size[static_cast<std::size_t>(s - 1)];
      for (std::size_t idx : prev) {
        if (!b.elims[idx].type.is_product()) continue;
        auto& comps = b.elims[idx].type.components();
        for (std::size_t j = 0; j < comps.size(); ++j) {
          const Cand& p = b.elims[idx];
          Cand c{Expr::proj(static_cast<int>(j + 1), p.term), comps[j], type_id(comps[j]), s, {}, p.desc, -1,
                 p.root, "EGuess-Proj"};
          for (int v : p.vals) c.vals.push_back(store_.kid(v, j));
          add_elim(b, std::move(c));
        }
      }
    }
    if (auto it = b.scheduled.find(s); it != b.scheduled.end()) {
      auto pending = std::move(it->second);
      b.scheduled.erase(it);
      for (auto& c : pending) add_elim(b, std::move(c));
    }
    int empty = empty_desc;
    for (int sf = 1; sf <= s - 2; ++sf) {
      int sa = s - 1 - sf;
      auto fns = b.by_size[static_cast<std::size_t>(sf)];
      for (std::size_t fi : fns) {
        if (!b.elims[fi].type.is_arrow()) continue;
        Type dom = b.elims[fi].type.domain();
        Type cod = b.elims[fi].type.codomain();
        std::vector<Intro> args;
        if (b.elims[fi].fix_param >= 0) {
          int p = b.elims[fi].fix_param;
          for (std::size_t ai : b.by_size[static_cast<std::size_t>(sa)]) {
            auto& a = b.elims[ai];
            if (a.root < 0 || a.type != dom) continue;
            auto& d = vec(a.desc);
            if (std::find(d.begin(), d.end(), p) == d.end()) continue;
            args.push_back({a.term, a.vals});
          }
        } else {
          args = intros(b, dom, sa);
        }
        for (auto& a : args) {
          const Cand& f = b.elims[fi];
          std::vector<int> vals;
          bool defined = true;
          for (std::size_t i = 0; i < f.vals.size(); ++i) {
            int v = store_.apply(f.vals[i], a.vals[i]);
            if (v < 0) {
              defined = false;
              break;
            }
            vals.push_back(v);
          }
          ++stats_.candidates;
          tick();
          if (!defined) continue;
          Expr app = Expr::app(f.term, a.term);
          if (cod.is_product() && !nofocus()) {
            FocusState st;
            st.omega.push_back({app, cod});
            std::vector<FocusEvent> events;
            st = focus_closure(st, &events, order_);
            stats_.focus_steps += events.size();
            std::vector<Cand> outs;
            for (auto& g : st.gamma) {
              auto path = proj_path(g.elim);
              Cand c{g.elim, g.type, type_id(g.type), s + static_cast<int>(path.size()), {}, empty, -1, -1,
                     "EGuess-Focus"};
              for (int v : vals) c.vals.push_back(descend(v, path));
              outs.push_back(std::move(c));
            }
            std::stable_sort(outs.begin(), outs.end(),
                             [&](const Cand& x, const Cand& y) { return proj_path(x.term) < proj_path(y.term); });
            for (auto& c : outs) b.scheduled[c.size].push_back(std::move(c));
          } else {
            add_elim(b, Cand{app, cod, type_id(cod), s, std::move(vals), empty, -1, -1, "EGuess-App"});
          }
        }
      }
    }
  }

  void add_intro(Bank& b, std::vector<Intro>& out, int tid, Intro in) {
    ++stats_.candidates;
    tick();
    std::vector<int> key{tid};
    key.insert(key.end(), in.vals.begin(), in.vals.end());
    if (!b.seen_intro.emplace(std::move(key), 1).second) return;
    out.push_back(std::move(in));
  }

  // Example-free first-order introduction forms of exactly this size, one per
  // distinct value vector (smallest first).
  std::vector<Intro> intros(Bank& b, const Type& t, int s) {
    int tid = type_id(t);
    if (s < 1) return {};
    auto key = std::make_pair(tid, s);
    if (auto it = b.intros.find(key); it != b.intros.end()) return it->second;
    for (int k = 1; k < s; ++k) intros(b, t, k);
    std::vector<Intro> out;
    std::size_t n = worlds(b);
    switch (t.kind()) {
      case Type::Kind::Unit:
        if (s == 1) add_intro(b, out, tid, {Expr::unit(), std::vector<int>(n, store_.unit())});
        break;
      case Type::Kind::Base: {
        ensure(b, s);
        for (std::size_t idx : b.by_size[static_cast<std::size_t>(s)]) {
          auto& c = b.elims[idx];
          if (c.tid == tid) add_intro(b, out, tid, {c.term, c.vals});
        }
        if (auto* d = problem_.sigma.data(t.name()))
          for (auto& ctor : d->ctors) {
            int nid = store_.name_id(ctor.name);
            for (auto& a : intros(b, ctor.arg, s - 1)) {
              Intro in{Expr::ctor(ctor.name, a.term), {}};
              for (int v : a.vals) in.vals.push_back(store_.ctor(nid, v));
              add_intro(b, out, tid, std::move(in));
            }
          }
        break;
      }
      case Type::Kind::Product: {
        auto& comps = t.components();
        std::vector<Intro> chosen(comps.size());
        auto rec = [&](auto&& self, std::size_t j, int left) -> void {
          if (j == comps.size()) {
            if (left != 0) return;
            std::vector<Expr> terms;
            Intro in;
            for (auto& c : chosen) terms.push_back(c.term);
            in.term = Expr::tuple(std::move(terms));
            for (std::size_t i = 0; i < n; ++i) {
              std::vector<int> ks;
              for (auto& c : chosen) ks.push_back(c.vals[i]);
              in.vals.push_back(store_.tuple(ks));
            }
            add_intro(b, out, tid, std::move(in));
            return;
          }
          int rest = static_cast<int>(comps.size() - j - 1);
          for (int k = 1; k <= left - rest; ++k)
            for (auto& c : intros(b, comps[j], k)) {
              chosen[j] = c;
              self(self, j + 1, left - k);
            }
        };
        rec(rec, 0, s - 1);
        break;
      }
      case Type::Kind::Arrow:
        break;
    }
    b.intros[key] = out;
    return out;
  }

  // ---- goal-directed search for the smallest satisfying introduction form

  struct MemoEntry {
    int lb = 0;  // no solution of size <= lb
    SolPtr best;
  };

  SolPtr make_sol(Expr program, std::vector<std::string> trace) {
    auto s = std::make_shared<Solution>();
    s->size = ast_size(program);
    s->program = std::move(program);
    s->trace = std::move(trace);
    return s;
  }

  void fired(const char* rule) { ++stats_.rules[rule]; }

  std::vector<std::string> elim_trace(const Bank& b, const Expr& e) {
    std::vector<std::string> out;
    for (auto& c : b.elims)
      if (c.term == e) {
        out.push_back(std::string(c.rule) + " " + pretty_print(e, popts_) + " : " + c.type.str());
        if (e.kind() == ExprKind::App) indent_into(out, elim_trace(b, e.fn()));
        return out;
      }
    out.push_back("EGuess-Focus " + pretty_print(e, popts_));
    return out;
  }

  Goal subgoal(const Goal& g, int targets, const Type& t, int depth) const {
    return Goal{g.scope, g.env, targets, t, depth};
  }

  SolPtr solve(const Goal& g, int limit) {
    if (limit < 1) return nullptr;
    tick();
    std::vector<int> key{g.scope->id, g.env, g.targets, type_id(g.type), g.depth};
    {
      auto it = memo_.find(key);
      if (it != memo_.end()) {
        auto& m = it->second;
        if (m.best) {
          ++stats_.memo_hits;
          return m.best->size <= limit ? m.best : nullptr;
        }
        if (m.lb >= limit) {
          ++stats_.memo_hits;
          return nullptr;
        }
      }
    }
    ++stats_.goals;
    SolPtr best;
    auto consider = [&](SolPtr s) {
      if (s && (!best || s->size < best->size)) {
        best = s;
        limit = best->size - 1;
      }
    };
    const auto& tg = vec(g.targets);
    switch (g.type.kind()) {
      case Type::Kind::Unit:
        fired("IRefine-Unit");
        consider(make_sol(Expr::unit(), {"IRefine-Unit ()"}));
        break;
      case Type::Kind::Product:
        consider(rule_tuple(g, tg, limit));
        consider(rule_match(g, limit));
        break;
      case Type::Kind::Base:
        consider(rule_ctor(g, tg, limit));
        consider(rule_guess(g, tg, limit));
        consider(rule_match(g, limit));
        break;
      case Type::Kind::Arrow:
        consider(rule_fix(g, tg, limit));
        break;
    }
    auto& m = memo_[key];
    if (best) {
      m.best = best;
    } else {
      m.lb = std::max(m.lb, limit);
    }
    return best;
  }

  SolPtr rule_tuple(const Goal& g, const std::vector<int>& tg, int limit) {
    auto& comps = g.type.components();
    std::size_t m = comps.size();
    if (limit < 1 + static_cast<int>(m)) return nullptr;
    std::vector<std::vector<int>> sub(m);
    for (int v : tg) {
      if (store_.tag(v) != kTuple || store_.arity(v) != m) return nullptr;
      for (std::size_t j = 0; j < m; ++j) sub[j].push_back(store_.kid(v, j));
    }
    std::vector<Expr> parts;
    std::vector<std::string> trace{"IRefine-Tuple : " + g.type.str()};
    int used = 1;
    for (std::size_t j = 0; j < m; ++j) {
      int budget = limit - used - static_cast<int>(m - j - 1);
      auto s = solve(subgoal(g, intern_vec(sub[j]), comps[j], g.depth), budget);
      if (!s) return nullptr;
      used += s->size;
      parts.push_back(s->program);
      indent_into(trace, s->trace);
    }
    fired("IRefine-Tuple");
    return make_sol(Expr::tuple(std::move(parts)), std::move(trace));
  }

  SolPtr rule_ctor(const Goal& g, const std::vector<int>& tg, int limit) {
    if (limit < 2) return nullptr;
    auto* d = problem_.sigma.data(g.type.name());
    if (!d) return nullptr;
    SolPtr best;
    for (auto& ctor : d->ctors) {
      int nid = store_.name_id(ctor.name);
      std::vector<int> sub;
      bool ok = true;
      for (int v : tg) {
        if (store_.tag(v) != kCtor || store_.name(v) != nid) {
          ok = false;
          break;
        }
        sub.push_back(store_.kid(v, 0));
      }
      if (!ok) continue;
      int budget = best ? best->size - 2 : limit - 1;
      auto s = solve(subgoal(g, intern_vec(sub), ctor.arg, g.depth), budget);
      if (!s) continue;
      fired("IRefine-Ctor");
      std::vector<std::string> trace{"IRefine-Ctor " + ctor.name};
      indent_into(trace, s->trace);
      best = make_sol(Expr::ctor(ctor.name, s->program), std::move(trace));
    }
    return best;
  }

  SolPtr rule_fix(const Goal& g, const std::vector<int>& tg, int limit) {
    if (limit < 2) return nullptr;
    for (int v : tg)
      if (store_.tag(v) != kPartial) return nullptr;
    int n = static_cast<int>(g.scope->vars.size());
    std::string fname = g.scope == root_scope_ ? problem_.name : "f" + std::to_string(n);
    std::string xname = "x" + std::to_string(n + 1);
    NewVar f, x;
    f.info = {fname, g.type, {}, false, n + 1};
    x.info = {xname, g.type.domain(), {}, true, -1};
    const Rows& rw = rows(g.env);
    Rows nr;
    std::vector<int> sub;
    for (std::size_t i = 0; i < tg.size(); ++i) {
      int pf = tg[i];
      for (std::size_t j = 0; j + 1 < store_.arity(pf); j += 2) {
        nr.push_back(rw[i]);
        f.vals.push_back(pf);
        x.vals.push_back(store_.kid(pf, j));
        sub.push_back(store_.kid(pf, j + 1));
      }
    }
    auto [scope, env] = extend(g.scope, intern_rows(nr), {f, x});
    auto s = solve(Goal{scope, env, intern_vec(sub), g.type.codomain(), g.depth}, limit - 1);
    if (!s) return nullptr;
    fired("IRefine-Fix");
    std::vector<std::string> trace{"IRefine-Fix " + fname + " " + xname + " : " + g.type.str()};
    for (auto& l : scope->log) trace.push_back("  IRefine-Focus " + l);
    indent_into(trace, s->trace);
    return make_sol(Expr::fix(fname, xname, g.type.domain(), g.type.codomain(), s->program), std::move(trace));
  }

  SolPtr rule_guess(const Goal& g, const std::vector<int>& tg, int limit) {
    Bank& b = bank(g);
    ensure(b, limit);
    std::vector<int> key{type_id(g.type)};
    key.insert(key.end(), tg.begin(), tg.end());
    auto it = b.by_value.find(key);
    if (it == b.by_value.end()) return nullptr;
    const Cand& c = b.elims[it->second];
    if (c.size > limit) return nullptr;
    fired("IRefine-Guess");
    std::vector<std::string> trace{"IRefine-Guess " + pretty_print(c.term, popts_)};
    indent_into(trace, elim_trace(b, c.term));
    return make_sol(c.term, std::move(trace));
  }

  SolPtr rule_match(const Goal& g, int limit) {
    if (g.depth <= 0) return nullptr;
    const Rows& rw = rows(g.env);
    if (rw.size() < 2) return nullptr;
    Bank& b = bank(g);
    int cap = std::min(limit - 3, limits_.max_scrutinee_size);
    if (cap < 1) return nullptr;
    ensure(b, cap);
    SolPtr best;
    VecMap<char> tried;
    for (int ss = 1; ss <= cap; ++ss) {
      for (std::size_t ci = 0; ci < b.by_size[static_cast<std::size_t>(ss)].size(); ++ci) {
        std::size_t idx = b.by_size[static_cast<std::size_t>(ss)][ci];
        if (!b.elims[idx].type.is_base()) continue;
        auto* d = problem_.sigma.data(b.elims[idx].type.name());
        if (!d) continue;
        int nb = static_cast<int>(d->ctors.size());
        int room = (best ? best->size - 1 : limit) - 1 - ss;
        if (room < nb) continue;
        const Cand c = b.elims[idx];
        std::vector<int> ydesc;
        if (c.root >= 0) {
          auto& info = g.scope->vars[static_cast<std::size_t>(c.root)];
          ydesc = info.desc;
          if (info.param && std::find(ydesc.begin(), ydesc.end(), c.root) == ydesc.end()) ydesc.push_back(c.root);
          std::sort(ydesc.begin(), ydesc.end());
        }
        std::vector<int> tkey = c.vals;
        tkey.push_back(intern_vec(ydesc));
        if (!tried.emplace(std::move(tkey), 1).second) continue;
        std::vector<int> counts(static_cast<std::size_t>(nb), 0);
        std::vector<int> which;
        for (int v : c.vals) {
          int k = 0;
          while (k < nb && store_.name_id(d->ctors[static_cast<std::size_t>(k)].name) != store_.name(v)) ++k;
          if (k == nb) throw InternalError("scrutinee value outside its datatype");
          ++counts[static_cast<std::size_t>(k)];
          which.push_back(k);
        }
        ++stats_.rules["match-candidates"];
        if (!informative(counts)) continue;
        auto sol = match_on(g, c, *d, which, ydesc, room);
        if (sol && (!best || sol->size < best->size)) best = sol;
      }
    }
    return best;
  }

  SolPtr match_on(const Goal& g, const Cand& c, const DataDecl& d, const std::vector<int>& which,
                  const std::vector<int>& ydesc, int room) {
    const Rows& rw = rows(g.env);
    const auto& tg = vec(g.targets);
    int n = static_cast<int>(g.scope->vars.size());
    std::string yname = "y" + std::to_string(n);
    std::vector<Branch> branches;
    std::vector<std::string> trace{"IRefine-Match " + pretty_print(c.term, popts_)};
    int nb = static_cast<int>(d.ctors.size());
    int used = 0;
    for (int k = 0; k < nb; ++k) {
      auto& ctor = d.ctors[static_cast<std::size_t>(k)];
      NewVar y;
      y.info = {yname, ctor.arg, ydesc, false, -1};
      Rows nr;
      std::vector<int> sub;
      for (std::size_t i = 0; i < rw.size(); ++i) {
        if (which[i] != k) continue;
        nr.push_back(rw[i]);
        y.vals.push_back(store_.kid(c.vals[i], 0));
        sub.push_back(tg[i]);
      }
      auto [scope, env] = extend(g.scope, intern_rows(nr), {y});
      int budget = room - used - (nb - k - 1);
      auto s = solve(Goal{scope, env, intern_vec(sub), g.type, g.depth - 1}, budget);
      if (!s) return nullptr;
      used += s->size;
      branches.push_back({ctor.name, yname, s->program});
      trace.push_back("  | " + ctor.name + " " + yname + " (" + std::to_string(sub.size()) + " worlds)");
      for (auto& l : scope->log) trace.push_back("    IRefine-Focus " + l);
      for (auto& l : s->trace) trace.push_back("    " + l);
    }
    fired("IRefine-Match");
    return make_sol(Expr::match(c.term, std::move(branches)), std::move(trace));
  }

  const SynthesisProblem& problem_;
  SearchLimits limits_;
  SynthOptions opt_;
  ValueStore store_;
  Clock::time_point start_;
  FocusOrder order_;
  PrintOptions popts_ = PrintOptions::from(problem_.sigma);
  SynthStats stats_;
  std::uint64_t ticks_ = 0;
  std::vector<std::unique_ptr<Scope>> scopes_;
  const Scope* root_scope_ = nullptr;
  VecMap<const Scope*> extensions_;
  VecMap<int> vecs_;
  std::deque<std::vector<int>> vec_list_;
  VecMap<int> rows_index_;
  std::deque<Rows> rows_;
  std::unordered_map<Type, int, TypeHash> type_ids_;
  std::unordered_map<std::uint64_t, std::unique_ptr<Bank>> banks_;
  VecMap<MemoEntry> memo_;
};

struct VarMeta {
  std::set<std::string> desc;
  bool param = false;
  std::string fix_param;
};
using MetaEnv = std::map<std::string, VarMeta>;

const Expr* chain_root(const Expr& e) {
  const Expr* cur = &e;
  while (cur->kind() == ExprKind::Proj) cur = &cur->target();
  return cur->kind() == ExprKind::Var ? cur : nullptr;
}

bool structural(const Expr& e, const MetaEnv& env) {
  switch (e.kind()) {
    case ExprKind::Var: {
      auto it = env.find(e.name());
      return it == env.end() || it->second.fix_param.empty();
    }
    case ExprKind::App: {
      std::vector<const Expr*> args;
      const Expr* head = &e;
      while (head->kind() == ExprKind::App) {
        args.push_back(&head->arg());
        head = &head->fn();
      }
      std::reverse(args.begin(), args.end());
      if (head->kind() == ExprKind::Var) {
        auto it = env.find(head->name());
        if (it != env.end() && !it->second.fix_param.empty()) {
          const Expr* r = chain_root(*args[0]);
          if (!r) return false;
          auto rt = env.find(r->name());
          if (rt == env.end() || !rt->second.desc.count(it->second.fix_param)) return false;
          for (std::size_t k = 1; k < args.size(); ++k)
            if (!structural(*args[k], env)) return false;
          return true;
        }
      }
      if (!structural(*head, env)) return false;
      for (auto* a : args)
        if (!structural(*a, env)) return false;
      return true;
    }
    case ExprKind::Fix: {
      MetaEnv inner = env;
      inner[e.name()] = VarMeta{{}, false, e.param()};
      inner[e.param()] = VarMeta{{}, true, ""};
      return structural(e.body(), inner);
    }
    case ExprKind::Match: {
      if (!structural(e.scrutinee(), env)) return false;
      VarMeta y;
      if (const Expr* r = chain_root(e.scrutinee())) {
        auto it = env.find(r->name());
        if (it != env.end()) {
          y.desc = it->second.desc;
          if (it->second.param) y.desc.insert(r->name());
        }
      }
      for (auto& br : e.branches()) {
        MetaEnv inner = env;
        inner[br.var] = y;
        if (!structural(br.body, inner)) return false;
      }
      return true;
    }
    case ExprKind::Proj:
      return structural(e.target(), env);
    case ExprKind::Ctor:
      return structural(e.arg(), env);
    case ExprKind::Tuple:
      for (auto& c : e.components())
        if (!structural(c, env)) return false;
      return true;
    case ExprKind::PartialFn:
      for (auto& c : e.cases())
        if (!structural(c.input, env) || !structural(c.output, env)) return false;
      return true;
    case ExprKind::Unit:
      return true;
  }
  return true;
}

bool has_partial(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::PartialFn:
      return true;
    case ExprKind::Fix:
      return has_partial(e.body());
    case ExprKind::Match:
      if (has_partial(e.scrutinee())) return true;
      for (auto& b : e.branches())
        if (has_partial(b.body)) return true;
      return false;
    case ExprKind::App:
      return has_partial(e.fn()) || has_partial(e.arg());
    case ExprKind::Proj:
      return has_partial(e.target());
    case ExprKind::Ctor:
      return has_partial(e.arg());
    case ExprKind::Tuple:
      for (auto& c : e.components())
        if (has_partial(c)) return true;
      return false;
    default:
      return false;
  }
}

}  // namespace

bool informative(const std::vector<int>& counts) {
  return std::count_if(counts.begin(), counts.end(), [](int c) { return c > 0; }) >= 2;
}

bool check_structural(const Expr& program) { return structural(program, {}); }

SynthResult synthesize(const SynthesisProblem& problem, const SearchLimits& limits, const SynthOptions& options) {
  return Engine(problem, limits, options).run();
}

SynthResult synthesize_nofocus(const SynthesisProblem& problem, const SearchLimits& limits) {
  SynthOptions o;
  o.mode = EngineMode::NoFocus;
  return Engine(problem, limits, o).run();
}

Verification verify(const SynthesisProblem& problem, const Expr& program, std::uint64_t fuel) {
  Verification v;
  VarContext vars;
  for (auto& a : problem.aux) vars.emplace_back(a.name, a.type);
  v.typechecks = check(problem.sigma, vars, program, problem.type);
  v.normal = is_normal_intro(program) && !has_partial(program);
  v.structural = check_structural(program);
  Expr closed = program;
  for (auto it = problem.aux.rbegin(); it != problem.aux.rend(); ++it) closed = subst(closed, it->name, it->examples);
  v.satisfies = v.typechecks && satisfies(problem.sigma, closed, problem.examples, fuel);
  if (!v.typechecks) v.detail = "program does not typecheck at " + problem.type.str();
  else if (!v.satisfies) v.detail = "program does not satisfy the examples";
  else if (!v.normal) v.detail = "program is not in normal form";
  else if (!v.structural) v.detail = "recursion is not structural";
  return v;
}

const char* status_name(SynthStatus s) {
  switch (s) {
    case SynthStatus::Solved:
      return "Solved";
    case SynthStatus::NoSolution:
      return "NoSolution";
    case SynthStatus::Timeout:
      return "Timeout";
  }
  return "?";
}

}  // namespace prodsynth
