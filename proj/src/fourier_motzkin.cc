#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "walras/errors.h"
#include "walras/feasibility.h"

namespace walras {
namespace {

// coefficients . x >= bound, scaled so the first nonzero coefficient is +-1.
struct Row {
  std::vector<Rational> coefficients;
  Rational bound;
};

// Working set keyed by coefficient vector; a duplicate keeps the tighter bound.
class RowSet {
 public:
  // Returns false if the row is the contradiction 0 >= positive.
  bool Add(Row row) {
    const auto lead = std::find_if(
        row.coefficients.begin(), row.coefficients.end(),
        [](const Rational& c) { return sgn(c) != 0; });
    if (lead == row.coefficients.end()) return sgn(row.bound) <= 0;
    const Rational scale = abs(*lead);
    if (scale != 1) {
      for (Rational& c : row.coefficients) c /= scale;
      row.bound /= scale;
    }
    auto [it, inserted] =
        rows_.try_emplace(std::move(row.coefficients), row.bound);
    if (!inserted && row.bound > it->second) it->second = std::move(row.bound);
    return true;
  }

  std::size_t size() const { return rows_.size(); }

  std::vector<Row> Take() {
    std::vector<Row> out;
    out.reserve(rows_.size());
    for (auto& [coefficients, bound] : rows_) {
      out.push_back({coefficients, std::move(bound)});
    }
    rows_.clear();
    return out;
  }

 private:
  std::map<std::vector<Rational>, Rational> rows_;
};

// Variables the rows force to be nonnegative through a row x_v >= c, c >= 0.
std::vector<bool> NonnegativeVariables(const std::vector<Row>& rows, int vars) {
  std::vector<bool> nonnegative(vars, false);
  for (const Row& r : rows) {
    int only = -1;
    bool single = true;
    for (int v = 0; v < vars && single; ++v) {
      if (sgn(r.coefficients[v]) == 0) continue;
      if (only >= 0) single = false;
      only = v;
    }
    if (single && only >= 0 && sgn(r.coefficients[only]) > 0 &&
        sgn(r.bound) >= 0) {
      nonnegative[only] = true;
    }
  }
  return nonnegative;
}

// a . x >= b implies c . x >= d when d <= b and c - a is zero on free
// variables and nonnegative on nonnegative ones.
bool Implies(const Row& a, const Row& c, const std::vector<bool>& nonnegative) {
  if (c.bound > a.bound) return false;
  for (std::size_t v = 0; v < nonnegative.size(); ++v) {
    const int s = cmp(c.coefficients[v], a.coefficients[v]);
    if (s < 0 || (s > 0 && !nonnegative[v])) return false;
  }
  return true;
}

// Drops rows implied by one other row plus the sign rows. Sign rows are kept
// since the implication relies on them.
std::vector<Row> Prune(std::vector<Row> rows, int vars) {
  const std::vector<bool> nonnegative = NonnegativeVariables(rows, vars);
  auto is_sign_row = [&](const Row& r) {
    int count = 0;
    for (int v = 0; v < vars; ++v) count += sgn(r.coefficients[v]) != 0;
    return count == 1 && sgn(r.bound) >= 0;
  };
  std::vector<bool> dropped(rows.size(), false);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (is_sign_row(rows[i])) continue;
    // Holds for every nonnegative point: c >= 0 on nonnegative variables,
    // zero elsewhere, bound <= 0.
    if (sgn(rows[i].bound) <= 0 &&
        Implies(Row{std::vector<Rational>(vars), Rational(0)}, rows[i],
                nonnegative)) {
      dropped[i] = true;
      continue;
    }
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j == i || dropped[j]) continue;
      if (Implies(rows[j], rows[i], nonnegative)) {
        dropped[i] = true;
        break;
      }
    }
  }
  std::vector<Row> kept;
  kept.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!dropped[i]) kept.push_back(std::move(rows[i]));
  }
  return kept;
}

}  // namespace

FmVerdict FmEliminate(const LinearSystem& system, const FmOptions& options) {
  CheckSystem(system);
  const int vars = system.variable_count;
  if (vars > options.max_variables) {
    throw BudgetExceeded("Fourier-Motzkin allows at most " +
                         std::to_string(options.max_variables) +
                         " variables, system has " + std::to_string(vars));
  }
  RowSet set;
  for (const LinearConstraint& c : system.constraints) {
    Row row{std::vector<Rational>(vars), Rational(static_cast<long>(c.bound))};
    for (const auto& [var, coef] : c.terms) {
      row.coefficients[var] = static_cast<long>(coef);
    }
    if (c.relation == Relation::kEqual) {
      Row negated = row;
      for (Rational& x : negated.coefficients) x = -x;
      negated.bound = -negated.bound;
      if (!set.Add(std::move(negated))) return FmVerdict::kInfeasible;
    }
    if (!set.Add(std::move(row))) return FmVerdict::kInfeasible;
  }

  std::vector<bool> eliminated(vars, false);
  for (int round = 0; round < vars; ++round) {
    const std::vector<Row> rows = Prune(set.Take(), vars);
    // Eliminate the variable producing the fewest combinations.
    int pick = -1;
    std::size_t pick_cost = 0;
    for (int v = 0; v < vars; ++v) {
      if (eliminated[v]) continue;
      std::size_t pos = 0, neg = 0;
      for (const Row& r : rows) {
        const int s = sgn(r.coefficients[v]);
        if (s > 0) ++pos;
        if (s < 0) ++neg;
      }
      const std::size_t cost = pos * neg;
      if (pick < 0 || cost < pick_cost) {
        pick = v;
        pick_cost = cost;
      }
    }
    eliminated[pick] = true;

    std::vector<const Row*> positive, negative;
    for (const Row& r : rows) {
      const int s = sgn(r.coefficients[pick]);
      if (s > 0) {
        positive.push_back(&r);
      } else if (s < 0) {
        negative.push_back(&r);
      } else {
        set.Add(r);
      }
    }
    for (const Row* p : positive) {
      for (const Row* n : negative) {
        // a * x_pick + ... >= b and -c * x_pick + ... >= d with a, c > 0:
        // c * P + a * N cancels x_pick.
        const Rational a = p->coefficients[pick];
        const Rational c = -n->coefficients[pick];
        Row combined{std::vector<Rational>(vars), c * p->bound + a * n->bound};
        for (int v = 0; v < vars; ++v) {
          combined.coefficients[v] =
              c * p->coefficients[v] + a * n->coefficients[v];
        }
        combined.coefficients[pick] = 0;
        if (!set.Add(std::move(combined))) return FmVerdict::kInfeasible;
        if (set.size() > options.max_constraints) {
          throw BudgetExceeded("Fourier-Motzkin working set exceeded " +
                               std::to_string(options.max_constraints) +
                               " constraints");
        }
      }
    }
  }
  return FmVerdict::kFeasible;
}

}  // namespace walras
