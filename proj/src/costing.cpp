#include "tbc/costing.hpp"

#include <algorithm>
#include <cmath>

namespace tbc {

void WeightSet::validate() const {
    if (weights.empty()) {
        throw Error("INVALID_WEIGHTS", "weight set is empty");
    }
    double sum = 0.0;
    for (const auto& [criterion, a] : weights) {
        if (!std::isfinite(a) || a < 0.0) {
            throw Error("INVALID_WEIGHTS", "weight for " + criterion + " must be finite and >= 0");
        }
        sum += a;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw Error("INVALID_WEIGHTS",
                    "weights must sum to 1, got " + std::to_string(sum));
    }
}

double element_cost(const Element& element, const WeightSet& weights) {
    weights.validate();
    double cost = 0.0;
    for (const auto& [criterion, a] : weights.weights) {
        auto it = element.criterion_costs.find(criterion);
        if (it == element.criterion_costs.end()) {
            throw Error("MISSING_CRITERION_COST",
                        "element " + element.id + " has no cost for criterion " + criterion);
        }
        cost += a * it->second;
    }
    return cost;
}

CostedConfiguration configuration_cost(const TestBenchConfiguration& tbc,
                                       const TestBench& bench,
                                       const WeightSet& weights) {
    CostedConfiguration out;
    out.tbc = tbc;
    if (tbc.cost_override) {
        out.cost = *tbc.cost_override;
        return out;
    }
    for (const auto& [dim, element_id] : tbc.selection) {
        const Element* e = bench.find_element(element_id);
        if (!e) {
            throw Error("UNKNOWN_ELEMENT",
                        "configuration " + tbc.id + " selects unknown element " + element_id);
        }
        const double k = element_cost(*e, weights);
        out.breakdown[element_id] = k;
        out.cost += k;
    }
    return out;
}

TestBenchConfiguration select_optimal(const std::vector<CostedConfiguration>& costed) {
    if (costed.empty()) {
        throw Error("EMPTY_SET", "no sufficiently valid test bench configuration");
    }
    const CostedConfiguration* best = &costed.front();
    for (const auto& c : costed) {
        if (c.cost < best->cost || (c.cost == best->cost && c.tbc.id < best->tbc.id)) {
            best = &c;
        }
    }
    return best->tbc;
}

SchuldtCostMatrix::SchuldtCostMatrix(int dimensions, int criteria)
    : j_count_(dimensions), n_count_(criteria) {
    if (dimensions < 1 || criteria < 1) {
        throw Error("INDEX_OUT_OF_RANGE", "matrix needs at least one dimension and criterion");
    }
    k_.assign(static_cast<std::size_t>(3) * dimensions * criteria, 0.0);
    a_.assign(static_cast<std::size_t>(criteria), 0.0);
}

std::size_t SchuldtCostMatrix::index(int stage, int dimension, int criterion) const {
    if (stage < 1 || stage > 3 || dimension < 1 || dimension > j_count_ ||
        criterion < 1 || criterion > n_count_) {
        throw Error("INDEX_OUT_OF_RANGE", "schuldt matrix index out of range");
    }
    return (static_cast<std::size_t>(stage - 1) * j_count_ + (dimension - 1)) * n_count_ +
           (criterion - 1);
}

double& SchuldtCostMatrix::k(int stage, int dimension, int criterion) {
    return k_[index(stage, dimension, criterion)];
}

double SchuldtCostMatrix::k(int stage, int dimension, int criterion) const {
    return k_[index(stage, dimension, criterion)];
}

void SchuldtCostMatrix::set_weight(int criterion, double a) {
    if (criterion < 1 || criterion > n_count_) {
        throw Error("INDEX_OUT_OF_RANGE", "criterion index out of range");
    }
    a_[criterion - 1] = a;
}

double SchuldtCostMatrix::weight(int criterion) const {
    if (criterion < 1 || criterion > n_count_) {
        throw Error("INDEX_OUT_OF_RANGE", "criterion index out of range");
    }
    return a_[criterion - 1];
}

void SchuldtCostMatrix::validate() const {
    for (double v : k_) {
        if (!std::isfinite(v) || v < 0.0) {
            throw Error("INVALID_WEIGHTS", "cost entries must be finite and >= 0");
        }
    }
    double sum = 0.0;
    for (double a : a_) {
        if (!std::isfinite(a) || a < 0.0) {
            throw Error("INVALID_WEIGHTS", "weights must be finite and >= 0");
        }
        sum += a;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw Error("INVALID_WEIGHTS", "weights must sum to 1");
    }
}

double schuldt_overall_cost(const SchuldtCostMatrix& matrix,
                            const std::map<int, int>& stage_choice) {
    matrix.validate();
    for (int j = 1; j <= matrix.dimensions(); ++j) {
        if (!stage_choice.count(j)) {
            throw Error("INDEX_OUT_OF_RANGE",
                        "stage choice missing dimension " + std::to_string(j));
        }
    }
    double g = 0.0;
    for (int n = 1; n <= matrix.criteria(); ++n) {
        double inner = 0.0;
        for (int j = 1; j <= matrix.dimensions(); ++j) {
            inner += matrix.k(stage_choice.at(j), j, n);
        }
        g += matrix.weight(n) * inner;
    }
    return g;
}

}  // namespace tbc
