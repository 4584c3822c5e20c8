#include "voxpath/classify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace voxpath {

std::vector<int> classify_knn(const Dataset& train, const Dataset& test, std::size_t k) {
    if (train.size() == 0) throw InsufficientDataError("knn needs a nonempty train set");
    k = std::min(k, train.size());

    std::vector<int> pred(test.size(), 0);
    std::vector<std::pair<double, std::size_t>> dist(train.size());

    for (std::size_t t = 0; t < test.size(); ++t) {
        const auto& q = test.x[t];
        for (std::size_t i = 0; i < train.size(); ++i) {
            double acc = 0.0;
            const auto& v = train.x[i];
            for (std::size_t f = 0; f < q.size(); ++f) {
                const double d = q[f] - v[f];
                acc += d * d;
            }
            dist[i] = {acc, i};
        }
        std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
        int votes = 0;
        for (std::size_t i = 0; i < k; ++i) votes += train.y[dist[i].second] ? 1 : -1;
        pred[t] = votes > 0 ? 1 : (votes < 0 ? 0 : 0);  // tie -> smaller label
    }
    return pred;
}

namespace {

struct TreeNode {
    int feature = -1;       // -1 marks a leaf
    double threshold = 0.0;
    int left = -1, right = -1;
    int label = 0;
};

struct Tree {
    std::vector<TreeNode> nodes;

    int predict(const std::vector<double>& x) const {
        int i = 0;
        while (nodes[i].feature >= 0)
            i = (x[nodes[i].feature] <= nodes[i].threshold) ? nodes[i].left : nodes[i].right;
        return nodes[i].label;
    }
};

constexpr int kMaxDepth = 16;

double gini(std::size_t c0, std::size_t c1) {
    const double total = static_cast<double>(c0 + c1);
    if (total == 0.0) return 0.0;
    const double p0 = c0 / total, p1 = c1 / total;
    return 1.0 - p0 * p0 - p1 * p1;
}

struct TreeBuilder {
    const Dataset& data;
    const std::vector<std::size_t>& sample;  // bootstrap row indices
    std::mt19937_64& rng;
    std::size_t mtry;
    Tree tree;

    int build(std::vector<std::size_t> rows, int depth) {
        std::size_t c1 = 0;
        for (std::size_t r : rows) c1 += static_cast<std::size_t>(data.y[r]);
        const std::size_t c0 = rows.size() - c1;

        const int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes[node_id].label = (c1 > c0) ? 1 : 0;

        if (c0 == 0 || c1 == 0 || depth >= kMaxDepth || rows.size() < 2) return node_id;

        const std::size_t d = data.x[0].size();
        // sample mtry distinct features
        std::vector<std::size_t> feats(d);
        for (std::size_t i = 0; i < d; ++i) feats[i] = i;
        for (std::size_t i = 0; i < mtry; ++i) {
            const std::size_t j = i + rng() % (d - i);
            std::swap(feats[i], feats[j]);
        }

        double best_impurity = gini(c0, c1);
        int best_feat = -1;
        double best_thr = 0.0;
        std::vector<std::pair<double, int>> vals;

        for (std::size_t fi = 0; fi < mtry; ++fi) {
            const std::size_t f = feats[fi];
            vals.clear();
            for (std::size_t r : rows) vals.emplace_back(data.x[r][f], data.y[r]);
            std::sort(vals.begin(), vals.end());

            std::size_t l0 = 0, l1 = 0, r0 = c0, r1 = c1;
            for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
                if (vals[i].second) {
                    ++l1;
                    --r1;
                } else {
                    ++l0;
                    --r0;
                }
                if (vals[i].first == vals[i + 1].first) continue;
                const double nl = static_cast<double>(l0 + l1);
                const double nr = static_cast<double>(r0 + r1);
                const double impurity =
                    (nl * gini(l0, l1) + nr * gini(r0, r1)) / static_cast<double>(vals.size());
                if (impurity < best_impurity - 1e-12) {
                    best_impurity = impurity;
                    best_feat = static_cast<int>(f);
                    best_thr = 0.5 * (vals[i].first + vals[i + 1].first);
                }
            }
        }

        if (best_feat < 0) return node_id;

        std::vector<std::size_t> left, right;
        for (std::size_t r : rows)
            (data.x[r][best_feat] <= best_thr ? left : right).push_back(r);
        if (left.empty() || right.empty()) return node_id;

        tree.nodes[node_id].feature = best_feat;
        tree.nodes[node_id].threshold = best_thr;
        const int l = build(std::move(left), depth + 1);
        tree.nodes[node_id].left = l;
        const int r = build(std::move(right), depth + 1);
        tree.nodes[node_id].right = r;
        return node_id;
    }
};

}  // namespace

ForestResult classify_forest(const Dataset& train, const Dataset& test, std::size_t n_trees,
                             std::uint64_t seed) {
    if (train.size() == 0) throw InsufficientDataError("forest needs a nonempty train set");
    bool has0 = false, has1 = false;
    for (int y : train.y) (y ? has1 : has0) = true;
    if (!has0 || !has1) throw InsufficientDataError("forest train set needs both classes");

    const std::size_t n = train.size();
    const std::size_t d = train.x[0].size();
    const auto mtry = static_cast<std::size_t>(
        std::max(1.0, std::ceil(std::sqrt(static_cast<double>(d)))));

    std::vector<Tree> trees;
    trees.reserve(n_trees);
    std::vector<std::vector<int>> oob_votes(n);  // per-row votes from trees not trained on it

    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < n_trees; ++t) {
        std::vector<std::size_t> sample(n);
        std::vector<bool> in_bag(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            sample[i] = rng() % n;
            in_bag[sample[i]] = true;
        }
        TreeBuilder builder{train, sample, rng, mtry, {}};
        builder.build(sample, 0);
        trees.push_back(std::move(builder.tree));

        for (std::size_t i = 0; i < n; ++i)
            if (!in_bag[i]) oob_votes[i].push_back(trees.back().predict(train.x[i]));
    }

    ForestResult out;
    std::size_t oob_correct = 0, oob_total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (oob_votes[i].empty()) continue;
        int ones = 0;
        for (int v : oob_votes[i]) ones += v;
        const int pred = (2 * ones > static_cast<int>(oob_votes[i].size())) ? 1 : 0;
        ++oob_total;
        if (pred == train.y[i]) ++oob_correct;
    }
    out.oob_accuracy = oob_total ? static_cast<double>(oob_correct) / oob_total : 0.0;

    out.predictions.resize(test.size());
    for (std::size_t i = 0; i < test.size(); ++i) {
        int ones = 0;
        for (const auto& tree : trees) ones += tree.predict(test.x[i]);
        out.predictions[i] = (2 * ones > static_cast<int>(n_trees)) ? 1 : 0;
    }
    return out;
}

}  // namespace voxpath
