#pragma once

// Reduction, overlaps, S-polynomials, confluence and completion.

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "diop/presentation.hpp"

namespace diop {

constexpr long kDefaultBudget = 1000000;

struct ReduceResult {
  Polynomial poly;
  bool applied = false;
};

struct NormalFormResult {
  Polynomial poly;
  long steps = 0;
  bool budget_hit = false;
  long violations = 0;  // steps that did not decrease the certificate
};

// Precomputed rule patterns over one presentation. The presentation must
// outlive the rewriter.
class Rewriter {
 public:
  explicit Rewriter(const Presentation& p);

  const Presentation& presentation() const { return *p_; }

  // First reducible embedding in m (lexicographically smallest sorted image),
  // or nullopt. Returns the rule index through `rule`.
  std::optional<Embedding> find_redex(const Monomial& m, int* rule) const;
  bool is_reducible(const Monomial& m) const;
  // Is some lhs rooted at the root of m?
  bool reducible_at_root(const TreeView& v) const;

  ReduceResult reduce_step(const Polynomial& p) const;
  NormalFormResult normal_form(const Polynomial& p, long budget = kDefaultBudget) const;

  // Process-wide count of certificate violations seen by normal_form.
  static long total_violations();

 private:
  const Presentation* p_;
  std::vector<std::unique_ptr<TreeView>> lhs_views_;
  std::vector<std::vector<int>> rules_by_root_;  // generator -> rule indices
};

struct Overlap {
  Monomial host;
  int rule_a = -1, rule_b = -1;
  Embedding emb_a, emb_b;
};

std::vector<Overlap> enumerate_overlaps(const Presentation& p, int rule_a, int rule_b);

Polynomial s_polynomial(const Presentation& p, const Overlap& o);

struct ConfluenceFailure {
  Overlap overlap;
  Polynomial residual;
  bool budget_hit = false;
};

struct ConfluenceReport {
  long overlaps_checked = 0;
  std::vector<ConfluenceFailure> failures;
  bool step_budget_hit = false;

  bool confluent() const { return failures.empty(); }
};

ConfluenceReport check_confluence(const Presentation& p, long budget = kDefaultBudget, unsigned threads = 0);

struct CompletionResult {
  Presentation presentation;
  bool closed = false;  // no residual was skipped by the weight bound
  int rounds = 0;
  int added = 0;
};

// Throws GuardExceeded when maxRounds is exceeded.
CompletionResult complete(const Presentation& p, int max_weight, int max_rounds);

Presentation leading_monomial_operad(const Presentation& p);

// Complement among all weight-2 monomials of the signatures that carry
// relations or can be formed; requires lhs weight 2 and rhs 0.
Presentation monomial_quadratic_dual(const Presentation& p);

}  // namespace diop
