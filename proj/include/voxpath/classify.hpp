#pragma once

#include <cstdint>

#include "voxpath/common.hpp"

namespace voxpath {

struct Dataset {
    std::vector<std::vector<double>> x;
    std::vector<int> y;  // 0 / 1

    std::size_t size() const { return x.size(); }
};

// Euclidean k-NN with majority vote; equal distances prefer the smaller
// train index, a tied vote prefers the smaller label.
std::vector<int> classify_knn(const Dataset& train, const Dataset& test, std::size_t k = 5);

struct ForestResult {
    std::vector<int> predictions;
    double oob_accuracy = 0.0;  // out-of-bag estimate on the train set
};

// CART random forest: Gini impurity, ceil(sqrt(d)) features per split,
// bootstrap rows, depth <= 16, majority vote over trees. Deterministic for
// a fixed seed.
ForestResult classify_forest(const Dataset& train, const Dataset& test,
                             std::size_t n_trees = 100, std::uint64_t seed = 0);

}  // namespace voxpath
