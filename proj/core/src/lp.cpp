#include "minred/lp.hpp"

#include "minred/errors.hpp"

namespace minred {

namespace {

class Tableau {
 public:
  Tableau(int n, const std::vector<LinearConstraint>& cons) : n_(n) {
    const int m = static_cast<int>(cons.size());
    int slacks = 0, arts = 0;
    std::vector<Sense> sense(m);
    std::vector<bool> flip(m, false);
    for (int i = 0; i < m; ++i) {
      if (static_cast<int>(cons[i].a.size()) != n) throw MathError("constraint has the wrong length");
      sense[i] = cons[i].sense;
      if (cons[i].b < 0) {
        flip[i] = true;
        if (sense[i] == Sense::LE) sense[i] = Sense::GE;
        else if (sense[i] == Sense::GE) sense[i] = Sense::LE;
      }
      if (sense[i] != Sense::EQ) ++slacks;
      if (sense[i] != Sense::LE) ++arts;
    }
    art_begin_ = n + slacks;
    cols_ = art_begin_ + arts;
    rows_.assign(m, std::vector<Rat>(cols_ + 1, Rat(0)));
    basis_.assign(m, -1);
    int s = n, a = art_begin_;
    for (int i = 0; i < m; ++i) {
      auto& row = rows_[i];
      for (int j = 0; j < n; ++j) row[j] = flip[i] ? Rat(-cons[i].a[j]) : cons[i].a[j];
      row[cols_] = flip[i] ? Rat(-cons[i].b) : cons[i].b;
      if (sense[i] == Sense::LE) {
        row[s] = 1;
        basis_[i] = s++;
      } else {
        if (sense[i] == Sense::GE) row[s++] = -1;
        row[a] = 1;
        basis_[i] = a++;
      }
    }
  }

  // Returns false when infeasible.
  bool phase_one() {
    if (cols_ == art_begin_) {
      allowed_ = cols_;
      return true;
    }
    std::vector<Rat> c(cols_, Rat(0));
    for (int j = art_begin_; j < cols_; ++j) c[j] = -1;
    allowed_ = cols_;
    set_objective(c);
    if (run() != LPStatus::Optimal) throw MathError("phase one cannot be unbounded");
    if (obj_[cols_] < 0) return false;
    // Drive remaining artificials out of the basis; drop redundant rows.
    for (int i = 0; i < static_cast<int>(rows_.size());) {
      if (basis_[i] < art_begin_) {
        ++i;
        continue;
      }
      int piv = -1;
      for (int j = 0; j < art_begin_ && piv < 0; ++j)
        if (rows_[i][j] != 0) piv = j;
      if (piv >= 0) {
        pivot(i, piv);
        ++i;
      } else {
        rows_.erase(rows_.begin() + i);
        basis_.erase(basis_.begin() + i);
      }
    }
    allowed_ = art_begin_;
    return true;
  }

  LPResult maximise(const std::vector<Rat>& objective) {
    std::vector<Rat> c(cols_, Rat(0));
    for (int j = 0; j < n_; ++j) c[j] = objective[j];
    set_objective(c);
    LPResult r;
    r.status = run();
    r.basis = basis_;
    r.pivots = pivots_;
    if (r.status == LPStatus::Optimal) {
      r.value = obj_[cols_];
      r.x.assign(n_, Rat(0));
      for (size_t i = 0; i < rows_.size(); ++i)
        if (basis_[i] < n_) r.x[basis_[i]] = rows_[i][cols_];
    }
    return r;
  }

 private:
  void set_objective(const std::vector<Rat>& c) {
    obj_.assign(cols_ + 1, Rat(0));
    for (int j = 0; j < cols_; ++j) obj_[j] = -c[j];
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Rat& cb = c[basis_[i]];
      if (cb == 0) continue;
      for (int j = 0; j <= cols_; ++j)
        if (rows_[i][j] != 0) obj_[j] += cb * rows_[i][j];
    }
  }

  void pivot(int r, int c) {
    ++pivots_;
    auto& pr = rows_[r];
    Rat inv = 1 / pr[c];
    for (auto& x : pr)
      if (x != 0) x *= inv;
    std::vector<int> nz;
    for (int j = 0; j <= cols_; ++j)
      if (pr[j] != 0) nz.push_back(j);
    auto elim = [&](std::vector<Rat>& row) {
      if (row[c] == 0) return;
      Rat f = row[c];
      for (int j : nz) row[j] -= f * pr[j];
    };
    for (size_t i = 0; i < rows_.size(); ++i)
      if (static_cast<int>(i) != r) elim(rows_[i]);
    elim(obj_);
    basis_[r] = c;
  }

  LPStatus run() {
    for (long guard = 0;; ++guard) {
      if (guard > 1000000) throw Inconclusive("simplex did not terminate");
      int enter = -1;
      for (int j = 0; j < allowed_; ++j)
        if (obj_[j] < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return LPStatus::Optimal;
      int leave = -1;
      Rat best;
      for (size_t i = 0; i < rows_.size(); ++i) {
        const Rat& a = rows_[i][enter];
        if (a <= 0) continue;
        Rat ratio = rows_[i][cols_] / a;
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = static_cast<int>(i);
          best = ratio;
        }
      }
      if (leave < 0) return LPStatus::Unbounded;
      pivot(leave, enter);
    }
  }

  int n_;
  int cols_ = 0;
  int art_begin_ = 0;
  int allowed_ = 0;
  int pivots_ = 0;
  std::vector<std::vector<Rat>> rows_;
  std::vector<int> basis_;
  std::vector<Rat> obj_;
};

}  // namespace

LPResult simplex_maximize(const LPProblem& lp) {
  return simplex_maximize_many(lp.n, lp.constraints, {lp.objective}).front();
}

std::vector<LPResult> simplex_maximize_many(int n, const std::vector<LinearConstraint>& constraints,
                                            const std::vector<std::vector<Rat>>& objectives) {
  for (const auto& c : objectives)
    if (static_cast<int>(c.size()) != n) throw MathError("objective has the wrong length");
  Tableau t(n, constraints);
  std::vector<LPResult> out;
  if (!t.phase_one()) {
    out.assign(objectives.size(), LPResult{});
    return out;
  }
  for (const auto& c : objectives) out.push_back(t.maximise(c));
  return out;
}

bool satisfies(const LinearConstraint& c, const std::vector<Rat>& x) {
  Rat s = 0;
  for (size_t j = 0; j < c.a.size(); ++j) s += c.a[j] * x[j];
  switch (c.sense) {
    case Sense::LE: return s <= c.b;
    case Sense::GE: return s >= c.b;
    case Sense::EQ: return s == c.b;
  }
  return false;
}

}  // namespace minred
