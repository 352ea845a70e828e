#include "fpa/ecdf.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fpa/rng.hpp"

namespace fpa {

EmpiricalCdf::EmpiricalCdf(double a, double b) : a_(a), b_(b) {
    if (!(a <= b)) throw std::invalid_argument("EmpiricalCdf needs a <= b");
}

void EmpiricalCdf::pull(int node) {
    Node& nd = nodes_[static_cast<std::size_t>(node)];
    nd.subtree = nd.count;
    if (nd.left != -1) nd.subtree += nodes_[static_cast<std::size_t>(nd.left)].subtree;
    if (nd.right != -1) nd.subtree += nodes_[static_cast<std::size_t>(nd.right)].subtree;
}

int EmpiricalCdf::rotate_right(int node) {
    Node& nd = nodes_[static_cast<std::size_t>(node)];
    int l = nd.left;
    nd.left = nodes_[static_cast<std::size_t>(l)].right;
    nodes_[static_cast<std::size_t>(l)].right = node;
    pull(node);
    pull(l);
    return l;
}

int EmpiricalCdf::rotate_left(int node) {
    Node& nd = nodes_[static_cast<std::size_t>(node)];
    int r = nd.right;
    nd.right = nodes_[static_cast<std::size_t>(r)].left;
    nodes_[static_cast<std::size_t>(r)].left = node;
    pull(node);
    pull(r);
    return r;
}

int EmpiricalCdf::insert_rec(int node, double value, std::uint64_t prio) {
    if (node == -1) {
        nodes_.push_back(Node{value, prio});
        return static_cast<int>(nodes_.size()) - 1;
    }
    Node& nd = nodes_[static_cast<std::size_t>(node)];
    if (value == nd.value) {
        ++nd.count;
        ++nd.subtree;
        return node;
    }
    if (value < nd.value) {
        int l = insert_rec(nd.left, value, prio);
        nodes_[static_cast<std::size_t>(node)].left = l;
        pull(node);
        if (nodes_[static_cast<std::size_t>(l)].prio <
            nodes_[static_cast<std::size_t>(node)].prio)
            return rotate_right(node);
    } else {
        int r = insert_rec(nd.right, value, prio);
        nodes_[static_cast<std::size_t>(node)].right = r;
        pull(node);
        if (nodes_[static_cast<std::size_t>(r)].prio <
            nodes_[static_cast<std::size_t>(node)].prio)
            return rotate_left(node);
    }
    return node;
}

void EmpiricalCdf::insert(double m) {
    if (!(m >= a_ && m <= b_))
        throw std::out_of_range("sample " + std::to_string(m) + " outside [" +
                                std::to_string(a_) + ", " + std::to_string(b_) + "]");
    // Priorities hash the value bits: deterministic across runs, balanced with
    // high probability for non-adversarial inputs.
    const std::uint64_t prio = hash64(std::bit_cast<std::uint64_t>(m));
    root_ = insert_rec(root_, m, prio);
    ++n_;
}

std::size_t EmpiricalCdf::count_at_most(double x) const {
    std::size_t cum = 0;
    int cur = root_;
    while (cur != -1) {
        const Node& nd = nodes_[static_cast<std::size_t>(cur)];
        if (x < nd.value) {
            cur = nd.left;
        } else {
            cum += nd.count;
            if (nd.left != -1) cum += nodes_[static_cast<std::size_t>(nd.left)].subtree;
            cur = nd.right;
        }
    }
    return cum;
}

double EmpiricalCdf::query(double x) const {
    if (n_ == 0) return 1.0;
    return static_cast<double>(count_at_most(x)) / static_cast<double>(n_);
}

std::vector<double> EmpiricalCdf::jump_points() const {
    std::vector<double> out;
    out.reserve(nodes_.size());
    for_each_step([&](double v, std::size_t) { out.push_back(v); });
    return out;
}

double dkw_bound(std::size_t n, double delta) {
    if (n == 0) throw std::invalid_argument("dkw_bound needs n >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("dkw_bound needs delta in (0,1)");
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

double err_envelope(int t, int T) {
    if (t < 1 || t > T) throw std::invalid_argument("err_envelope needs 1 <= t <= T");
    return std::sqrt((std::log(2.0) + 2.0 * std::log(static_cast<double>(T))) /
                     (2.0 * static_cast<double>(t)));
}

}  // namespace fpa
