#pragma once

// Real roots of a Cartan graph by fixpoint saturation, the finiteness
// verdict, and checks of the root-system axioms.

#include "nichols/cartan_graph.hpp"

#include <set>
#include <string>
#include <variant>
#include <vector>

namespace nichols {

using Root = std::vector<int>;

struct RootLimits {
    std::size_t max_pos_roots = 512;
};

struct RootSystemData {
    std::vector<std::set<Root>> positive;  // indexed by point id
    std::size_t iterations = 0;
    RootLimits limits;
};

struct ExceededLimits {
    std::string stage;
    int point = -1;
    std::size_t count = 0;
};

struct MixedSignRoot {
    int point = 0;
    Root root;
};

using FinitenessVerdict = std::variant<RootSystemData, ExceededLimits, MixedSignRoot>;

/// s_i^X(beta) = beta - (sum_j a_ij beta_j) alpha_i
Root reflect_root(const GeneralizedCartanMatrix &a, int i, const Root &beta);

/// Saturates {+-alpha_i} at every point under the reflections s_i^X.
FinitenessVerdict enumerate_roots(const CartanGraph &g, RootLimits limits = {});

struct ReducedWordRoots {
    std::set<Root> positive;
    std::size_t longest_length = 0;
    std::size_t morphisms = 0;
    bool pairwise_distinct = true;  // along every explored reduced word
    bool inversion_sets_consistent = true;
};

/// Positive roots at `point` collected as beta_n along reduced words
/// id_X s_{i1} ... s_{im}.  Independent of enumerate_roots.  Returns
/// ExceededLimits when more than max_morphisms morphisms are visited.
std::variant<ReducedWordRoots, ExceededLimits> roots_by_reduced_words(const CartanGraph &g, int point,
                                                                    std::size_t max_morphisms = 200000);

struct CheckFailure {
    std::string axiom;
    std::string witness;
};

struct CheckReport {
    std::vector<CheckFailure> failures;
    std::size_t checks = 0;
    bool ok() const { return failures.empty(); }
};

/// The four root-system axioms and the two Cartan-graph axioms.
CheckReport check_root_axioms(const CartanGraph &g, const RootSystemData &r);

/// alpha_j + k alpha_i is a root iff 0 <= k <= -a_ij, for k = -1 .. -a_ij + 2.
CheckReport check_lemma_jik(const CartanGraph &g, const RootSystemData &r);

std::string root_to_string(const Root &r);

}  // namespace nichols
