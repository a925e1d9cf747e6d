#include "minred/weights.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "minred/errors.hpp"

namespace minred {

namespace {

Int floor_rat(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

template <class A>
std::string join(const A& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

std::string join_ineqs(const std::vector<StandardInequality>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? "; " : "") + format_inequality(v[i]);
  return out.empty() ? "-" : out;
}

// Drops every inequality implied by another one in the conjunction.
std::vector<StandardInequality> normalise_conjunction(std::vector<StandardInequality> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<StandardInequality> out;
  for (size_t a = 0; a < v.size(); ++a) {
    bool redundant = false;
    for (size_t b = 0; b < v.size() && !redundant; ++b)
      if (a != b && implies(v[b], v[a])) redundant = true;
    if (!redundant) out.push_back(v[a]);
  }
  return out;
}

bool conjunction_implies(const std::vector<StandardInequality>& conj, const StandardInequality& q) {
  for (const auto& x : conj)
    if (implies(x, q)) return true;
  return false;
}

std::vector<Rat> ineq_row(const StandardInequality& q) {
  std::vector<Rat> a(10, Rat(0));
  a[q.i] += 1;
  a[q.j] += 1;
  a[5 + q.k] -= 1;
  return a;
}

std::vector<Rat> balance_objective() {
  std::vector<Rat> c(10, Rat(0));
  for (int i = 0; i < 5; ++i) {
    c[i] = 2;
    c[5 + i] = -1;
  }
  return c;
}

bool satisfies_integer(const Weight& w, const StandardInequality& q) {
  return w.r[q.i] + w.r[q.j] <= w.s[q.k] + q.m;
}

struct BranchOutcome {
  bool open = false;
  std::vector<StandardInequality> constraints;
  BranchRecord record;
};

// One LP branch: close it when sum(2r - s) < 1, tightening at an optimum of 1.
BranchOutcome process_branch(std::vector<StandardInequality> cons) {
  BranchOutcome out;
  for (int round = 0;; ++round) {
    LPResult res = simplex_maximize(weight_lp(cons));
    out.record.basis = res.basis;
    out.record.optimum.reset();
    if (res.status == LPStatus::Infeasible) throw MathError("weight LP infeasible at the origin");
    if (res.status == LPStatus::Optimal) {
      out.record.optimum = res.value;
      if (res.value < 1) {
        out.open = false;
        break;
      }
    }
    if (res.status != LPStatus::Optimal || res.value != 1 || round >= 4) {
      out.open = true;
      break;
    }
    // On sum(2r - s) = 1, bound each r_i + r_j - s_k and record the
    // resulting standard inequality.
    LPProblem lp = weight_lp(cons);
    lp.constraints.push_back({balance_objective(), Sense::EQ, Rat(1)});
    std::vector<std::vector<Rat>> objs;
    std::vector<StandardInequality> shapes;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j)
        for (int k = 0; k < 5; ++k) {
          StandardInequality q{i, j, k, 0};
          objs.push_back(ineq_row(q));
          shapes.push_back(q);
        }
    auto many = simplex_maximize_many(10, lp.constraints, objs);
    bool added = false;
    for (size_t t = 0; t < many.size(); ++t) {
      if (many[t].status != LPStatus::Optimal) continue;
      StandardInequality q = shapes[t];
      Int f = floor_rat(many[t].value);
      q.m = f > 0 ? f.get_si() : 0;
      if (conjunction_implies(cons, q)) continue;
      cons.push_back(q);
      out.record.tightened.push_back(q);
      added = true;
    }
    cons = normalise_conjunction(cons);
    if (!added) {
      out.open = true;
      break;
    }
  }
  out.constraints = cons;
  out.record.constraints = cons;
  out.record.status = out.open ? "open" : "closed";
  return out;
}

void parallel_for(int n, int jobs, const std::function<void(int)>& f) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min(jobs, n); ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

Weight make_weight(const std::array<long, 5>& r, const std::array<long, 5>& s) {
  Weight w{r, s};
  if (!is_valid_weight(w)) throw MathError("not a weight: " + format_weight(w));
  return w;
}

bool is_valid_weight(const Weight& w) {
  long sr = 0, ss = 0;
  for (int i = 0; i < 5; ++i) {
    if (i > 0 && (w.r[i] < w.r[i - 1] || w.s[i] < w.s[i - 1])) return false;
    sr += w.r[i];
    ss += w.s[i];
  }
  return 2 * sr == 1 + ss;
}

Weight shift(const Weight& w, long lambda) {
  Weight out = w;
  for (int i = 0; i < 5; ++i) {
    out.r[i] += lambda;
    out.s[i] += 2 * lambda;
  }
  return out;
}

std::string format_weight(const Weight& w) { return "(" + join(w.r) + ";" + join(w.s) + ")"; }

bool implies(const StandardInequality& x, const StandardInequality& y) {
  return y.i <= x.i && y.j <= x.j && y.k >= x.k && y.m >= x.m;
}

std::string format_inequality(const StandardInequality& q) {
  std::ostringstream os;
  os << "r" << q.i + 1 << "+r" << q.j + 1 << "<=s" << q.k + 1;
  if (q.m) os << "+" << q.m;
  return os.str();
}

bool is_weight_for(const Model5& m, const Int& p, const Weight& w) {
  if (!is_valid_weight(w)) throw MathError("not a weight");
  for (int e = 0; e < 10; ++e) {
    const int i = kPairs[e][0], j = kPairs[e][1];
    for (int k = 0; k < 5; ++k) {
      const Rat& c = m.e[e][k];
      if (c.get_den() != 1) throw MathError("is_weight_for needs an integral model");
      long need = std::max(w.r[i] + w.r[j] - w.s[k], 0L);
      if (need > 0 && c != 0 && valuation(c, p) < need) return false;
    }
  }
  return true;
}

bool dominates(const Weight& w, const Weight& w2) {
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      for (int k = 0; k < 5; ++k) {
        long a = std::max(w.r[i] + w.r[j] - w.s[k], 0L);
        long b = std::max(w2.r[i] + w2.r[j] - w2.s[k], 0L);
        if (a < b) return false;
      }
  return true;
}

std::vector<StandardInequality> non_domination_disjunction(const Weight& w) {
  std::vector<StandardInequality> all;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      for (int k = 0; k < 5; ++k) {
        long t = w.r[i] + w.r[j] - w.s[k];
        if (t > 0) all.push_back({i, j, k, t - 1});
      }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  // In a disjunction the weaker inequality absorbs the stronger one.
  std::vector<StandardInequality> out;
  for (size_t a = 0; a < all.size(); ++a) {
    bool redundant = false;
    for (size_t b = 0; b < all.size() && !redundant; ++b)
      if (a != b && implies(all[a], all[b])) redundant = true;
    if (!redundant) out.push_back(all[a]);
  }
  return out;
}

LPProblem weight_lp(const std::vector<StandardInequality>& ineqs) {
  LPProblem lp;
  lp.n = 10;
  lp.objective = balance_objective();
  for (int base : {0, 5})
    for (int i = 0; i < 4; ++i) {
      std::vector<Rat> a(10, Rat(0));
      a[base + i] = 1;
      a[base + i + 1] = -1;
      lp.constraints.push_back({a, Sense::LE, Rat(0)});
    }
  for (const auto& q : ineqs) lp.constraints.push_back({ineq_row(q), Sense::LE, Rat(q.m)});
  return lp;
}

VerificationCertificate verify_domination_table(const std::vector<Weight>& table,
                                                const std::vector<StandardInequality>& side_conditions,
                                                const VerifyOptions& opt) {
  for (const auto& w : table)
    if (!is_valid_weight(w)) throw MathError("table entry is not a weight: " + format_weight(w));
  VerificationCertificate cert;
  std::vector<std::vector<StandardInequality>> cases{normalise_conjunction(side_conditions)};
  for (size_t nu = 0; nu < table.size(); ++nu) {
    auto disj = non_domination_disjunction(table[nu]);
    cert.disjunction_sizes.push_back(static_cast<int>(disj.size()));
    // Expand: a case implying one of the alternatives passes unchanged.
    struct Job {
      size_t parent;
      std::optional<StandardInequality> extra;
    };
    std::vector<Job> jobs;
    for (size_t c = 0; c < cases.size(); ++c) {
      bool pass_through = false;
      for (const auto& d : disj)
        if (conjunction_implies(cases[c], d)) pass_through = true;
      if (pass_through) {
        jobs.push_back({c, std::nullopt});
        continue;
      }
      for (const auto& d : disj) jobs.push_back({c, d});
    }
    std::vector<BranchOutcome> results(jobs.size());
    parallel_for(static_cast<int>(jobs.size()), opt.jobs, [&](int t) {
      const Job& job = jobs[t];
      if (!job.extra) {
        BranchOutcome o;
        o.open = true;
        o.constraints = cases[job.parent];
        o.record.constraints = o.constraints;
        o.record.status = "implied";
        results[t] = o;
        return;
      }
      auto cons = cases[job.parent];
      cons.push_back(*job.extra);
      results[t] = process_branch(normalise_conjunction(cons));
    });
    std::vector<std::vector<StandardInequality>> next;
    std::set<std::vector<StandardInequality>> seen;
    for (size_t t = 0; t < results.size(); ++t) {
      auto& r = results[t];
      r.record.nu = static_cast<int>(nu + 1);
      r.record.index = static_cast<int>(t);
      cert.branches.push_back(r.record);
      if (r.open && seen.insert(r.constraints).second) next.push_back(r.constraints);
    }
    cases = std::move(next);
    cert.remaining.push_back(static_cast<int>(cases.size()));
  }
  cert.pass = cases.empty();
  cert.surviving = cases;
  if (!cert.pass) {
    for (const auto& c : cases) {
      cert.witness = find_undominated_weight(table, c, opt.witness_bound);
      if (cert.witness) break;
    }
  }
  return cert;
}

std::optional<Weight> find_undominated_weight(const std::vector<Weight>& table,
                                              const std::vector<StandardInequality>& ineqs, int bound) {
  std::optional<Weight> found;
  Weight w;
  w.r[0] = 0;
  auto check = [&] {
    for (const auto& q : ineqs)
      if (!satisfies_integer(w, q)) return;
    for (const auto& t : table)
      if (dominates(w, t)) return;
    found = w;
  };
  // s non-decreasing in [-bound, 2*bound + 1] with prescribed sum.
  std::function<void(int, long)> rec_s2 = [&](int k, long remaining) {
    if (found) return;
    const long lo = k == 0 ? -bound : w.s[k - 1];
    const long hi = 2L * bound + 1;
    if (k == 4) {
      if (remaining >= lo && remaining <= hi) {
        w.s[4] = remaining;
        check();
      }
      return;
    }
    for (long v = lo; v <= hi; ++v) {
      if (remaining - v < v * (4 - k)) break;  // the rest must be at least v each
      w.s[k] = v;
      rec_s2(k + 1, remaining - v);
      if (found) return;
    }
  };
  std::function<void(int)> rec_r = [&](int i) {
    if (found) return;
    if (i == 5) {
      long sr = 0;
      for (long x : w.r) sr += x;
      rec_s2(0, 2 * sr - 1);
      return;
    }
    for (long v = w.r[i - 1]; v <= bound; ++v) {
      w.r[i] = v;
      rec_r(i + 1);
    }
  };
  rec_r(1);
  return found;
}

std::string VerificationCertificate::to_text() const {
  std::ostringstream os;
  os << "table_rows = " << disjunction_sizes.size() << "\n";
  for (size_t nu = 0; nu < disjunction_sizes.size(); ++nu)
    os << "row " << nu + 1 << " disjunction_size = " << disjunction_sizes[nu] << " remaining = " << remaining[nu]
       << "\n";
  for (const auto& b : branches) {
    os << "branch " << b.nu << "." << b.index << " status = " << b.status;
    if (b.status != "implied") {
      os << " max = " << (b.optimum ? b.optimum->get_str() : std::string("unbounded"));
      os << " basis = [" << join(b.basis) << "]";
    }
    os << " constraints = " << join_ineqs(b.constraints);
    if (!b.tightened.empty()) os << " tightened = " << join_ineqs(b.tightened);
    os << "\n";
  }
  for (const auto& c : surviving) os << "surviving " << join_ineqs(c) << "\n";
  if (witness) os << "witness = " << format_weight(*witness) << "\n";
  os << "result = " << (pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

const std::vector<Weight>& seven_weight_table() {
  static const std::vector<Weight> t = {
      make_weight({0, 0, 0, 0, 1}, {0, 0, 0, 0, 1}), make_weight({0, 0, 1, 1, 1}, {1, 1, 1, 1, 1}),
      make_weight({0, 0, 1, 1, 2}, {1, 1, 1, 2, 2}), make_weight({0, 1, 1, 2, 2}, {2, 2, 2, 2, 3}),
      make_weight({0, 1, 1, 2, 3}, {2, 2, 2, 3, 4}), make_weight({0, 1, 1, 2, 3}, {2, 2, 3, 3, 3}),
      make_weight({0, 1, 2, 3, 4}, {3, 3, 4, 4, 5}),
  };
  return t;
}

const std::vector<Weight>& twenty_nine_weight_table() {
  static const std::vector<Weight> t = {
      make_weight({0, 0, 0, 0, 0}, {-1, 0, 0, 0, 0}), make_weight({0, 0, 0, 0, 1}, {0, 0, 0, 0, 1}),
      make_weight({0, 0, 1, 1, 1}, {1, 1, 1, 1, 1}),  make_weight({0, 1, 1, 1, 1}, {1, 1, 1, 2, 2}),
      make_weight({0, 0, 0, 1, 1}, {0, 0, 1, 1, 1}),  make_weight({0, 0, 0, 1, 1}, {0, 0, 0, 1, 2}),
      make_weight({0, 0, 1, 1, 1}, {0, 0, 1, 2, 2}),  make_weight({0, 0, 1, 1, 1}, {0, 1, 1, 1, 2}),
      make_weight({0, 1, 1, 2, 2}, {2, 2, 2, 2, 3}),  make_weight({0, 0, 1, 1, 2}, {1, 1, 1, 2, 2}),
      make_weight({0, 0, 1, 1, 2}, {0, 0, 2, 2, 3}),  make_weight({0, 0, 1, 1, 2}, {0, 1, 2, 2, 2}),
      make_weight({0, 0, 1, 1, 2}, {0, 1, 1, 2, 3}),  make_weight({0, 1, 1, 1, 2}, {1, 2, 2, 2, 2}),
      make_weight({0, 1, 1, 1, 2}, {1, 1, 2, 2, 3}),  make_weight({0, 1, 1, 2, 2}, {1, 2, 2, 3, 3}),
      make_weight({0, 1, 1, 2, 2}, {1, 2, 2, 2, 4}),  make_weight({0, 1, 1, 2, 2}, {1, 1, 2, 3, 4}),
      make_weight({0, 1, 1, 2, 3}, {2, 2, 3, 3, 3}),  make_weight({0, 1, 1, 2, 3}, {2, 2, 2, 3, 4}),
      make_weight({0, 1, 1, 2, 3}, {1, 2, 3, 3, 4}),  make_weight({0, 1, 1, 2, 3}, {1, 2, 2, 3, 5}),
      make_weight({0, 1, 2, 2, 3}, {2, 3, 3, 3, 4}),  make_weight({0, 1, 2, 2, 3}, {2, 2, 3, 4, 4}),
      make_weight({0, 1, 2, 2, 3}, {1, 3, 3, 4, 4}),  make_weight({0, 1, 2, 2, 3}, {1, 2, 3, 4, 5}),
      make_weight({0, 1, 2, 3, 4}, {3, 3, 4, 4, 5}),  make_weight({0, 1, 2, 3, 4}, {2, 3, 4, 5, 5}),
      make_weight({0, 1, 2, 3, 4}, {1, 3, 4, 5, 6}),
  };
  return t;
}

const std::vector<int>& twenty_nine_lambda() {
  static const std::vector<int> l = {1, 1, 1, 1, 3, 3, 3, 3, 3, 4, 5, 8, 8, 4, 4,
                                     7, 6, 7, 6, 7, 13, 12, 9, 9, 10, 15, 12, 20, 22};
  return l;
}

std::vector<StandardInequality> seven_weight_side_conditions() { return {{0, 3, 0, 0}, {1, 2, 0, 0}}; }

}  // namespace minred
