#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fpa {

// Online empirical CDF of competitor bids on [a, b]. Backed by a treap keyed
// by value with multiplicity counts, so insert and rank queries are both
// O(log n). Before the first sample the estimate is identically 1 (the
// policy's optimistic initialization).
class EmpiricalCdf {
public:
    EmpiricalCdf(double a, double b);

    // Adds one observed bid. Out-of-range samples are rejected
    // (std::out_of_range) with the offending value in the message.
    void insert(double m);

    // Right-continuous step value #{samples <= x} / n; 1 when empty.
    double query(double x) const;

    std::size_t count_at_most(double x) const;
    std::size_t size() const { return n_; }
    double lower() const { return a_; }
    double upper() const { return b_; }

    // Sorted distinct sample values (the candidate set for the bid optimizer).
    std::vector<double> jump_points() const;

    // In-order visit of (value, cumulative count): F(value) = cumulative / n.
    template <class Fn>
    void for_each_step(Fn&& fn) const {
        std::size_t cum = 0;
        std::vector<int> stack;
        int cur = root_;
        while (cur != -1 || !stack.empty()) {
            while (cur != -1) {
                stack.push_back(cur);
                cur = nodes_[static_cast<std::size_t>(cur)].left;
            }
            cur = stack.back();
            stack.pop_back();
            const Node& nd = nodes_[static_cast<std::size_t>(cur)];
            cum += nd.count;
            fn(nd.value, cum);
            cur = nd.right;
        }
    }

private:
    struct Node {
        double value;
        std::uint64_t prio;
        int left = -1;
        int right = -1;
        std::size_t count = 1;    // multiplicity of `value`
        std::size_t subtree = 1;  // total samples in this subtree
    };

    int insert_rec(int node, double value, std::uint64_t prio);
    int rotate_left(int node);
    int rotate_right(int node);
    void pull(int node);

    std::vector<Node> nodes_;
    int root_ = -1;
    std::size_t n_ = 0;
    double a_;
    double b_;
};

// Two-sided DKW radius: sup-norm deviation eps with P[sup |G_n - G| >= eps]
// bounded by delta, i.e. eps = sqrt(ln(2/delta) / (2n)).
double dkw_bound(std::size_t n, double delta);

// Estimation-error envelope after t-1 samples when the failure probability is
// split as 1/T across the horizon: sqrt((ln 2 + 2 ln T) / (2t)).
double err_envelope(int t, int T);

}  // namespace fpa
