#pragma once

#include <map>
#include <vector>

#include "tbc/model.hpp"

namespace tbc {

// Weighting parameters a_c of the evaluation criteria. Must sum to 1.
struct WeightSet {
    std::map<std::string, double> weights;

    // Throws INVALID_WEIGHTS unless all a_c >= 0 and sum == 1 within 1e-9.
    void validate() const;
};

struct CostedConfiguration {
    TestBenchConfiguration tbc;
    double cost{0.0};                         // K_TBC
    std::map<std::string, double> breakdown;  // element id -> K_TB,e; empty under override
};

// K_TB,e = sum_c a_c * K_TB,e,c. Every weighted criterion must have a cost
// entry on the element; throws MISSING_CRITERION_COST otherwise.
double element_cost(const Element& element, const WeightSet& weights);

// K_TBC = sum over selected elements of K_TB,e, unless the configuration
// carries an expert cost override, which then stands alone (empty breakdown).
CostedConfiguration configuration_cost(const TestBenchConfiguration& tbc,
                                       const TestBench& bench,
                                       const WeightSet& weights);

// argmin over K_TBC; ties broken by ascending configuration id.
// Throws EMPTY_SET on an empty input (assignment must abort).
TestBenchConfiguration select_optimal(const std::vector<CostedConfiguration>& costed);

// Schuldt-style evaluation function for comparison. Indices are 1-based
// inclusive: stages i in 1..3, dimensions j in 1..J, criteria n in 1..N.
class SchuldtCostMatrix {
public:
    SchuldtCostMatrix(int dimensions, int criteria);

    int dimensions() const { return j_count_; }
    int criteria() const { return n_count_; }

    double& k(int stage, int dimension, int criterion);
    double k(int stage, int dimension, int criterion) const;

    void set_weight(int criterion, double a);
    double weight(int criterion) const;

    // Throws INVALID_WEIGHTS / INDEX_OUT_OF_RANGE / on non-finite or negative entries.
    void validate() const;

private:
    std::size_t index(int stage, int dimension, int criterion) const;

    int j_count_;
    int n_count_;
    std::vector<double> k_;
    std::vector<double> a_;
};

// G = sum_{n=1..N} a_n * sum_{j=1..J} k[stage_choice(j)][j][n].
// stage_choice must cover every dimension 1..J.
double schuldt_overall_cost(const SchuldtCostMatrix& matrix,
                            const std::map<int, int>& stage_choice);

}  // namespace tbc
