#pragma once

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wn/f2.hpp"
#include "wn/subgroup.hpp"
#include "wn/tree_automorphism.hpp"

namespace wn {

enum class ConjMode { kElementwise, kGlobal };

// Witnesses for a positive verdict, or the obstruction for a negative one.
// Positive certificates re-verify by direct conjugation; a global witness
// also serves as an elementwise witness for every element.
struct ConjugacyCertificate {
  ConjMode mode;
  bool verdict = false;
  // Elementwise: one kernel vector per element of H (paired with it).
  std::vector<std::pair<Aut, F2Vec>> element_witnesses;
  // Global: the single b = (u, 1).
  std::optional<F2Vec> global_witness;
  // Negative elementwise verdicts name the element with no witness.
  std::optional<Aut> failure_witness;
  // Negative global verdicts certify the whole candidate space was searched.
  bool search_exhausted = false;
};

struct PropertyPReport {
  bool elementwise = false;
  bool global = false;
  bool p_holds = false;  // elementwise == global
  // Hypothesis flags of interest to the sweeps.
  bool same_order = false;
  bool trivial_kernel_intersection = false;  // of H
  bool h_cyclic = false;
  bool h_has_transitive = false;
  std::optional<F2Vec> global_witness;
};

// All u with h^{(u,1)} in G: writing h = (w, t), the union over g = (w', t)
// in G of the solution cosets of u + t(u) = w + w'.
std::vector<F2AffineSet> elementwise_witnesses(const Aut& h, const Subgroup& G);

ConjugacyCertificate is_elementwise_conjugate(const Subgroup& H,
                                              const Subgroup& G);
ConjugacyCertificate is_globally_conjugate(const Subgroup& H,
                                           const Subgroup& G);
PropertyPReport property_p(const Subgroup& H, const Subgroup& G);

enum class Verdict { kHolds, kCounterexample, kVacuous };

struct TheoremCheck {
  bool hyp_same_order = false;
  bool hyp_trivial_kernel = false;
  bool elementwise = false;
  bool global = false;
  Verdict verdict = Verdict::kVacuous;
  std::optional<F2Vec> global_witness;
};

// Hypotheses: |H| = |G| and H meets the kernel trivially. When they hold,
// elementwise conjugacy must imply global conjugacy; a violation is a
// counterexample record.
TheoremCheck theorem_1_4_check(const Subgroup& H, const Subgroup& G);

struct CriterionResult {
  bool hypotheses_ok = false;
  bool criterion = false;
};

// The product-set criterion: with G = <H1, H2^a>, global conjugacy holds iff
// a lies in C_{K_n}(H1) C_{K_n}(x) for some x in H2 \ H1.
CriterionResult lemma_3_3_criterion(const Subgroup& H, const Subgroup& G,
                                    const Subgroup& H1, const Subgroup& H2,
                                    const Aut& a);

// Both sides of the identity s(u) + st(u) = z + st(z) derived from
// x y^a = (xy)^b. Throws if the relation precondition fails.
std::pair<F2Vec, F2Vec> lemma_3_6_residual(const Aut& x, const Aut& y,
                                           const Aut& a, const Aut& b);

struct PropCheck {
  bool conditions_hold = false;   // hypothesis conditions on v (and u_map)
  bool conclusion_holds = false;  // v in Fix(alpha) + Fix(X)
  std::optional<std::pair<F2Vec, F2Vec>> witness;  // the decompose pair
};

// Conditions (a), (b), (c) on v, then the membership conclusion with a
// verified decompose witness. alpha must lie outside X.
PropCheck prop_4_1_check(const Subgroup& X, const Aut& alpha, F2Vec v);

using KernelVectorMap = std::unordered_map<Aut, F2Vec, AutHash>;

// Conditions (1), (2) on v and the per-beta auxiliary vectors, then the same
// membership conclusion. u_map must supply a vector for every beta in X.
PropCheck prop_4_4_check(const Subgroup& X, const Aut& alpha, F2Vec v,
                         const KernelVectorMap& u_map);

// The subspace of vectors constant on each coset block (A_t union alpha A_t
// applied to an orbit representative). Requires alpha outside X, X containing
// Phi(<X, alpha>) and of index 2 in <X, alpha>; throws otherwise. Every
// member is fixed by alpha and lies in Fix(Phi(Y)).
F2Subspace v_y_subspace(const Subgroup& X, const Aut& alpha);

}  // namespace wn
