#pragma once

#include <algorithm>
#include <memory>
#include <vector>

namespace localizer {

/// Centered interval tree over closed intervals [lo, hi].
template <class T>
class IntervalTree {
 public:
  struct Entry {
    double lo, hi;
    T value;
  };

  IntervalTree() = default;
  explicit IntervalTree(std::vector<Entry> entries) : size_(entries.size()) { root_ = build(std::move(entries)); }

  size_t size() const { return size_; }

  /// Entries with lo <= x <= hi, in no particular order.
  template <class F>
  void stab(double x, F&& f) const {
    const Node* n = root_.get();
    while (n) {
      if (x < n->center) {
        for (const Entry* e : n->by_lo) {
          if (e->lo > x) break;
          f(*e);
        }
        n = n->left.get();
      } else {
        for (const Entry* e : n->by_hi) {
          if (e->hi < x) break;
          f(*e);
        }
        n = n->right.get();
      }
    }
  }

  std::vector<Entry> stab(double x) const {
    std::vector<Entry> out;
    stab(x, [&](const Entry& e) { out.push_back(e); });
    return out;
  }

 private:
  struct Node {
    double center;
    std::vector<Entry> here;
    std::vector<const Entry*> by_lo, by_hi;
    std::unique_ptr<Node> left, right;
  };

  static std::unique_ptr<Node> build(std::vector<Entry> entries) {
    if (entries.empty()) return nullptr;
    std::vector<double> ends;
    for (const auto& e : entries) {
      ends.push_back(e.lo);
      ends.push_back(e.hi);
    }
    std::nth_element(ends.begin(), ends.begin() + ends.size() / 2, ends.end());
    auto node = std::make_unique<Node>();
    node->center = ends[ends.size() / 2];
    std::vector<Entry> l, r;
    for (auto& e : entries) {
      if (e.hi < node->center)
        l.push_back(std::move(e));
      else if (e.lo > node->center)
        r.push_back(std::move(e));
      else
        node->here.push_back(std::move(e));
    }
    for (const auto& e : node->here) {
      node->by_lo.push_back(&e);
      node->by_hi.push_back(&e);
    }
    std::sort(node->by_lo.begin(), node->by_lo.end(), [](const Entry* a, const Entry* b) { return a->lo < b->lo; });
    std::sort(node->by_hi.begin(), node->by_hi.end(), [](const Entry* a, const Entry* b) { return a->hi > b->hi; });
    node->left = build(std::move(l));
    node->right = build(std::move(r));
    return node;
  }

  std::unique_ptr<Node> root_;
  size_t size_ = 0;
};

}  // namespace localizer
