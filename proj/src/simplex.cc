#include <stdexcept>
#include <vector>

#include "walras/errors.h"
#include "walras/feasibility.h"

namespace walras {
namespace {

// Dense phase-1 tableau. Columns are laid out as structural columns (one
// per nonnegative variable part), one surplus column per inequality row, and
// one artificial column per row. The last row holds reduced costs and the
// last column the right-hand side.
class PhaseOneTableau {
 public:
  explicit PhaseOneTableau(const LinearSystem& system) : system_(system) {
    const int vars = system.variable_count;
    // A variable needs a negative part unless some row forces it >= c >= 0.
    sign_row_.assign(vars, -1);
    for (std::size_t r = 0; r < system.constraints.size(); ++r) {
      const LinearConstraint& c = system.constraints[r];
      if (c.terms.size() == 1 && c.terms[0].second > 0 && c.bound >= 0 &&
          sign_row_[c.terms[0].first] < 0) {
        sign_row_[c.terms[0].first] = static_cast<int>(r);
      }
    }
    for (int v = 0; v < vars; ++v) {
      positive_col_.push_back(cols_++);
      negative_col_.push_back(sign_row_[v] >= 0 ? -1 : cols_++);
    }
    rows_ = static_cast<int>(system.constraints.size());
    std::vector<int> surplus_col(rows_, -1);
    for (int r = 0; r < rows_; ++r) {
      if (system.constraints[r].relation == Relation::kGreaterEqual) {
        surplus_col[r] = cols_++;
      }
    }
    artificial_begin_ = cols_;
    cols_ += rows_;
    rhs_ = cols_;

    tableau_.assign(rows_ + 1, std::vector<Rational>(cols_ + 1));
    basis_.resize(rows_);
    for (int r = 0; r < rows_; ++r) {
      const LinearConstraint& c = system.constraints[r];
      std::vector<Rational>& row = tableau_[r];
      for (const auto& [var, coef] : c.terms) {
        row[positive_col_[var]] = static_cast<long>(coef);
        if (negative_col_[var] >= 0) row[negative_col_[var]] = -static_cast<long>(coef);
      }
      if (surplus_col[r] >= 0) row[surplus_col[r]] = -1;
      row[rhs_] = static_cast<long>(c.bound);
      if (c.bound < 0) {
        for (int j = 0; j < rhs_; ++j) row[j] = -row[j];
        row[rhs_] = -row[rhs_];
      }
      row[artificial_begin_ + r] = 1;
      basis_[r] = artificial_begin_ + r;
    }
    // Reduced costs of minimizing the sum of artificials with the
    // artificials basic.
    std::vector<Rational>& cost = tableau_[rows_];
    for (int j = 0; j <= rhs_; ++j) {
      Rational sum = 0;
      for (int r = 0; r < rows_; ++r) sum += tableau_[r][j];
      cost[j] = -sum;
    }
    for (int r = 0; r < rows_; ++r) cost[artificial_begin_ + r] = 0;
  }

  // Bland's rule: lowest-index improving column, lowest-index leaving basic
  // variable among ratio ties. Terminates without cycling.
  void Optimize() {
    while (true) {
      int enter = -1;
      for (int j = 0; j < rhs_; ++j) {
        if (sgn(tableau_[rows_][j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;
      int leave = -1;
      Rational best_ratio;
      for (int r = 0; r < rows_; ++r) {
        if (sgn(tableau_[r][enter]) <= 0) continue;
        Rational ratio = tableau_[r][rhs_] / tableau_[r][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leave < 0) {
        // The phase-1 objective is bounded below by zero.
        throw std::logic_error("phase-1 simplex reported an unbounded ray");
      }
      Pivot(leave, enter);
    }
  }

  bool Feasible() const { return sgn(tableau_[rows_][rhs_]) == 0; }

  std::vector<Rational> Point() const {
    std::vector<Rational> value(cols_);
    for (int r = 0; r < rows_; ++r) value[basis_[r]] = tableau_[r][rhs_];
    std::vector<Rational> point(system_.variable_count);
    for (int v = 0; v < system_.variable_count; ++v) {
      point[v] = value[positive_col_[v]];
      if (negative_col_[v] >= 0) point[v] -= value[negative_col_[v]];
    }
    return point;
  }

  // Rows with a nonzero Farkas multiplier (the reduced cost of row r's
  // artificial column is 1 - y_r), plus the row that made each touched
  // variable nonnegative, since the certificate may lean on that bound.
  std::vector<std::size_t> Witness() const {
    std::vector<bool> in(rows_, false);
    for (int r = 0; r < rows_; ++r) {
      in[r] = tableau_[rows_][artificial_begin_ + r] != 1;
    }
    std::vector<bool> extra(rows_, false);
    for (int r = 0; r < rows_; ++r) {
      if (!in[r]) continue;
      for (const auto& [var, coef] : system_.constraints[r].terms) {
        if (sign_row_[var] >= 0) extra[sign_row_[var]] = true;
      }
    }
    std::vector<std::size_t> rows;
    for (int r = 0; r < rows_; ++r) {
      if (in[r] || extra[r]) rows.push_back(r);
    }
    return rows;
  }

 private:
  void Pivot(int leave, int enter) {
    std::vector<Rational>& pivot_row = tableau_[leave];
    const Rational pivot = pivot_row[enter];
    for (int j = 0; j <= rhs_; ++j) {
      if (sgn(pivot_row[j]) != 0) pivot_row[j] /= pivot;
    }
    std::vector<int> nonzero;
    for (int j = 0; j <= rhs_; ++j) {
      if (sgn(pivot_row[j]) != 0) nonzero.push_back(j);
    }
    for (int r = 0; r <= rows_; ++r) {
      if (r == leave) continue;
      std::vector<Rational>& row = tableau_[r];
      if (sgn(row[enter]) == 0) continue;
      const Rational factor = row[enter];
      for (int j : nonzero) row[j] -= factor * pivot_row[j];
    }
    basis_[leave] = enter;
  }

  const LinearSystem& system_;
  int rows_ = 0;
  int cols_ = 0;
  int artificial_begin_ = 0;
  int rhs_ = 0;
  std::vector<int> positive_col_;
  std::vector<int> negative_col_;
  std::vector<int> sign_row_;  // row forcing the variable >= c >= 0, or -1
  std::vector<int> basis_;
  std::vector<std::vector<Rational>> tableau_;
};

}  // namespace

FeasibilityResult LpFeasibility(const LinearSystem& system) {
  CheckSystem(system);
  PhaseOneTableau tableau(system);
  tableau.Optimize();
  if (!tableau.Feasible()) return Infeasible{tableau.Witness()};
  Pricing point{tableau.Point()};
  if (const int bad = system.FirstViolated(point.prices); bad >= 0) {
    throw std::logic_error("simplex point violates constraint " +
                           std::to_string(bad + 1));
  }
  return Feasible{std::move(point)};
}

}  // namespace walras
