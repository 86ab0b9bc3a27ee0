#include "cns/condition_a.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cns {

namespace {

constexpr double kEqTol = 1e-12;

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

void check_raw(const IndexSet& idx) {
  auto bad = [](double p) { return !(p >= 1.0); };  // catches NaN too
  if (bad(idx.p1) || bad(idx.p2) || bad(idx.p3))
    throw std::invalid_argument("integrability exponents must be >= 1");
  if (!(idx.alpha1 >= 0.0) || !(idx.alpha2 >= 0.0) || !(idx.alpha3 >= 0.0))
    throw std::invalid_argument("time exponents must be nonnegative");
}

}  // namespace

ConditionReport validate_indices(const IndexSet& idx) {
  check_raw(idx);
  const double q1 = inv(idx.p1), q2 = inv(idx.p2), q3 = inv(idx.p3);

  ConditionReport rep;
  auto eq = [&](const std::string& name, double lhs, double rhs) {
    const double m = kEqTol - std::abs(lhs - rhs);
    rep.items.push_back({name, m >= 0.0, m});
  };
  auto le = [&](const std::string& name, double lhs, double rhs) {  // lhs <= rhs
    const double m = rhs - lhs;
    rep.items.push_back({name, m >= -kEqTol, m});
  };
  auto lt = [&](const std::string& name, double lhs, double rhs) {  // lhs < rhs
    const double m = rhs - lhs;
    rep.items.push_back({name, m > kEqTol, m});
  };

  eq("A1: alpha1 + 1/p1 = 1", idx.alpha1 + q1, 1.0);
  eq("A1: alpha2 + 1/p2 = 1/2", idx.alpha2 + q2, 0.5);
  eq("A1: alpha3 + 1/p3 = 1", idx.alpha3 + q3, 1.0);

  le("A2: 1/p1 + 1/p2 <= 1", q1 + q2, 1.0);
  lt("A2: p2 > 2", q2, 0.5);
  le("A2: p3 >= 4/3", q3, 0.75);
  lt("A2: p3 < 2", 0.5, q3);
  le("A2: 1/p1 + 1/p3 <= 3/2", q1 + q3, 1.5);

  lt("A3: 1/p2 + 1/p3 < 3/2", q2 + q3, 1.5);
  le("A3: p1 >= 2", q1, 0.5);
  le("A3: 1/p1 - 1/p2 >= 0", 0.0, q1 - q2);
  lt("A3: 1/p1 - 1/p2 < 1/2", q1 - q2, 0.5);
  lt("A3: 1/p3 - 1/p1 > 0", 0.0, q3 - q1);
  le("A3: 1/p3 - 1/p1 <= 1/2", q3 - q1, 0.5);

  lt("A4: alpha1 + alpha2 < 1", idx.alpha1 + idx.alpha2, 1.0);
  lt("A4: alpha1 + alpha3 < 1", idx.alpha1 + idx.alpha3, 1.0);
  lt("A4: alpha2 + alpha3 < 1", idx.alpha2 + idx.alpha3, 1.0);
  lt("A4: alpha3 < 1/2", idx.alpha3, 0.5);

  rep.admissible = true;
  for (const auto& it : rep.items) rep.admissible = rep.admissible && it.pass;
  return rep;
}

double beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("beta_fn needs positive arguments");
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double c0_threshold(double p) {
  if (!(p > 0.0)) throw std::invalid_argument("c0_threshold needs p > 0");
  return std::min(1.0 / (24.0 * p), 1.0 / 96.0);
}

const char* op_name(OpId op) {
  switch (op) {
    case OpId::B112: return "B112";
    case OpId::B113: return "B113";
    case OpId::B223: return "B223";
    case OpId::B212: return "B212";
    case OpId::B333: return "B333";
    case OpId::L13: return "L13";
  }
  return "?";
}

OpExponents op_exponents(OpId op, const IndexSet& idx) {
  check_raw(idx);
  const double q1 = inv(idx.p1), q2 = inv(idx.p2), q3 = inv(idx.p3);
  switch (op) {
    case OpId::B112: return {idx.alpha1 + idx.alpha2, 0.5 + q2};
    case OpId::B113: return {idx.alpha1 + idx.alpha3, q3};
    case OpId::B223: return {idx.alpha2 + idx.alpha3, q2 + q3 - 0.5};
    case OpId::B212: return {idx.alpha1, q1};
    case OpId::B333: return {2.0 * idx.alpha3, q3};
    case OpId::L13: return {idx.alpha1, 1.0 + q1 - q3};
  }
  throw std::logic_error("unknown operator");
}

ContractionBudget contraction_budget(const IndexSet& idx, double grad_phi_l2, double c_master) {
  check_raw(idx);
  if (!(grad_phi_l2 >= 0.0)) throw std::invalid_argument("||grad phi||_2 must be nonnegative");
  if (!(c_master > 0.0)) throw std::invalid_argument("master constant must be positive");
  const double q1 = inv(idx.p1), q2 = inv(idx.p2), q3 = inv(idx.p3);

  ContractionBudget bud;
  bud.finite = true;
  const double inf = std::numeric_limits<double>::infinity();
  auto record = [&](const std::string& name, double x, double y, bool required) -> double {
    bud.beta_args[name + ".x"] = x;
    bud.beta_args[name + ".y"] = y;
    if (x > 0.0 && y > 0.0) return beta_fn(x, y);
    if (required) bud.finite = false;
    return inf;
  };

  bud.c112 = c_master * record("C112", 0.5 - q2, 1.0 - idx.alpha1 - idx.alpha2, true);
  bud.c113 = c_master * record("C113", 1.0 - q3, 1.0 - idx.alpha1 - idx.alpha3, true);
  bud.c223 = c_master * (record("C223.sup", 1.5 - q2 - q3, 1.0 - idx.alpha2 - idx.alpha3, true) +
                         record("C223.grad", 1.0 - q3, 1.0 - idx.alpha2 - idx.alpha3, true));
  bud.c212 = c_master * (record("C212.sup", 1.0 - q1, 1.0 - idx.alpha1, true) +
                         record("C212.grad", 0.5 - q1 + q2, 1.0 - idx.alpha1, true));
  bud.c333 = c_master * record("C333", 1.0 - q3, 1.0 - 2.0 * idx.alpha3, true);

  const double beta_lin = record("L13", q3 - q1, 1.0 - idx.alpha1, grad_phi_l2 > 0.0);
  bud.alpha_lin = grad_phi_l2 > 0.0 ? c_master * grad_phi_l2 * beta_lin : 0.0;

  if (bud.finite) {
    const double cn = bud.c112 + bud.c113;
    bud.k1 = 1.0 + bud.alpha_lin;
    bud.k2 = bud.alpha_lin * cn + (cn + bud.c223 + bud.c212 + bud.c333);
    bud.eps_max = 1.0 / (4.0 * bud.k1 * bud.k2);
  } else {
    bud.k1 = bud.k2 = inf;
    bud.eps_max = 0.0;
  }
  return bud;
}

}  // namespace cns
