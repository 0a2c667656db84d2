#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mscluster {

// Assignment of n nodes into c non-overlapping groups, kept in canonical form:
// groups are numbered 0..c-1 by order of first appearance, every id occupied.
// Canonical form makes equality mean "same partition up to relabeling".
class Partition {
public:
    Partition() = default;

    // Canonicalizes an arbitrary integer labeling.
    static Partition from_assignment(std::span<const int> raw);
    static Partition from_assignment(const std::vector<int>& raw) {
        return from_assignment(std::span<const int>(raw));
    }

    static Partition singletons(int n);
    static Partition all_in_one(int n);

    const std::vector<int>& assignment() const { return assignment_; }
    int size() const { return static_cast<int>(assignment_.size()); }
    int num_groups() const { return c_; }

    std::vector<std::vector<int>> groups() const;
    std::vector<int> group_sizes() const;

    bool operator==(const Partition& other) const {
        return assignment_ == other.assignment_;
    }

    std::uint64_t hash() const;

private:
    std::vector<int> assignment_;
    int c_ = 0;
};

} // namespace mscluster
