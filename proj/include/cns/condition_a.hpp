#pragma once

#include <map>
#include <string>
#include <vector>

namespace cns {

// Exponent sextuple (p1, p2, p3, alpha1, alpha2, alpha3).  p2 may be
// infinite.
struct IndexSet {
  double p1 = 0, p2 = 0, p3 = 0;
  double alpha1 = 0, alpha2 = 0, alpha3 = 0;
};

struct ConditionItem {
  std::string name;
  bool pass = false;
  double margin = 0.0;  // distance to the boundary, negative when violated
};

struct ConditionReport {
  bool admissible = false;
  std::vector<ConditionItem> items;
};

// The admissibility conditions, checked exactly as stated; the three
// scaling equalities use a 1e-12 tolerance, every inequality keeps its
// printed strictness.
ConditionReport validate_indices(const IndexSet& idx);

// Euler Beta via lgamma.  Throws unless both arguments are positive.
double beta_fn(double a, double b);

// Smallness threshold for the chemical: min{1/(24p), 1/96}.
double c0_threshold(double p);

enum class OpId { B112, B113, B223, B212, B333, L13 };

const char* op_name(OpId op);

// Endpoint exponents of the Duhamel integrand for each operator:
// |integrand(s)| ~ s^-a near 0 and (t-s)^-b near t in the working norms.
struct OpExponents {
  double a = 0.0;
  double b = 0.0;
};
OpExponents op_exponents(OpId op, const IndexSet& idx);

// Contraction budget of the fixed-point lemma.  All operator constants are
// Beta values scaled by the single master constant; the linear term also
// carries ||grad phi||_2.
struct ContractionBudget {
  double c112 = 0, c113 = 0, c223 = 0, c212 = 0, c333 = 0;
  double alpha_lin = 0;
  double k1 = 0, k2 = 0;
  double eps_max = 0;  // 1/(4 K1 K2)
  bool finite = false; // every Beta argument was positive
  std::map<std::string, double> beta_args;  // flattened, for reporting
};

ContractionBudget contraction_budget(const IndexSet& idx, double grad_phi_l2,
                                     double c_master = 1.0);

}  // namespace cns
